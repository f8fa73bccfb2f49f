"""Abelian covers of blown-up planes branched along line configurations.

A :class:`CoverSpec` records the branch components with their divisor
classes and their images under the cover homomorphism, together with the
points where several components meet.  From it we compute smoothness,
blow-ups, eigensheaves, numerical invariants and the eigensheaf tables of
the tangent and bicanonical sheaves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .errors import (
    ConfigurationError,
    InconsistentCoverError,
    PreconditionError,
    SubgroupError,
)
from .groups import (
    Character,
    GroupVector,
    Quotient,
    Subgroup,
    characters_of,
    span,
)
from .picard import (
    DivisorClass,
    PicLattice,
    chi_line_bundle,
    chi_log_rank2,
    h0,
    h1,
)


@dataclass(frozen=True)
class BranchComponent:
    name: str
    cls: DivisorClass
    phi: GroupVector
    unramified: bool = False

    def __post_init__(self):
        if self.phi.is_zero() and not self.unramified:
            raise ConfigurationError(f"component {self.name} has trivial image but is not flagged unramified")

    @property
    def ramified(self) -> bool:
        return not self.unramified


@dataclass(frozen=True)
class IncidencePoint:
    name: str
    components: tuple[str, ...]
    exceptional: bool = False

    def __post_init__(self):
        if len(self.components) < 2:
            raise ConfigurationError(f"point {self.name} needs at least two incident components")


@dataclass(frozen=True)
class CoverSpec:
    n: int
    k: int
    components: tuple[BranchComponent, ...]
    incidences: tuple[IncidencePoint, ...]
    lattice: PicLattice
    resolved: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ConfigurationError("duplicate component names")
        known = set(names)
        for p in self.incidences:
            missing = [c for c in p.components if c not in known]
            if missing:
                raise ConfigurationError(f"point {p.name} refers to unknown components {missing}")
        for c in self.components:
            if c.cls.r != self.lattice.r:
                raise ConfigurationError(f"component {c.name} lives on the wrong lattice")
            if c.phi.ambient != (self.n, self.k):
                raise ConfigurationError(f"component {c.name} has image outside (Z/{self.n})^{self.k}")

    def component(self, name: str) -> BranchComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise ConfigurationError(f"unknown component {name}")

    def point(self, name: str) -> IncidencePoint:
        for p in self.incidences:
            if p.name == name:
                return p
        if name in self.resolved:
            raise ConfigurationError(f"point {name} has already been blown up")
        raise ConfigurationError(f"unknown point {name}")

    @property
    def branch(self) -> tuple[BranchComponent, ...]:
        return tuple(c for c in self.components if c.ramified)

    @property
    def total_branch_class(self) -> DivisorClass:
        total = self.lattice.zero
        for c in self.branch:
            total = total + c.cls
        return total

    @property
    def group(self) -> Subgroup:
        """The image of the cover homomorphism."""
        return span([c.phi for c in self.branch], ambient=(self.n, self.k))

    def characters(self) -> list[Character]:
        return characters_of(self.group)


# -- configuration files ------------------------------------------------------


def spec_from_dict(data: dict[str, Any]) -> CoverSpec:
    try:
        n, k = int(data["modulus"]), int(data["dimension"])
        lattice = PicLattice(int(data.get("lattice", {}).get("r", 0)))
        components = tuple(
            BranchComponent(
                c["name"],
                lattice.cls(c["class"]),
                GroupVector(tuple(c["phi"]), n),
                bool(c.get("unramified", False)),
            )
            for c in data["components"]
        )
        incidences = tuple(
            IncidencePoint(p["name"], tuple(p["components"]), bool(p.get("exceptional", False)))
            for p in data.get("incidences", [])
        )
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed cover description: {exc}") from exc
    return CoverSpec(n, k, components, incidences, lattice, name=data.get("name", ""))


def spec_to_dict(spec: CoverSpec) -> dict[str, Any]:
    return {
        "name": spec.name,
        "modulus": spec.n,
        "dimension": spec.k,
        "lattice": {"r": spec.lattice.r},
        "components": [
            {"name": c.name, "class": c.cls.to_json(), "phi": c.phi.to_json(), "unramified": c.unramified}
            for c in spec.components
        ],
        "incidences": [
            {"name": p.name, "components": list(p.components), "exceptional": p.exceptional}
            for p in spec.incidences
        ],
        "resolved": list(spec.resolved),
    }


def load_config(path: str | Path) -> dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_spec(path: str | Path, apply_blowups: bool = True) -> CoverSpec:
    """Read a cover description and perform its ``blow_up`` directives."""
    data = load_config(path)
    spec = spec_from_dict(data)
    if apply_blowups:
        for p in data.get("blow_up", []):
            spec = blowup_extend(spec, p)
    return spec


# -- smoothness and blow-ups ---------------------------------------------------


@dataclass(frozen=True)
class PointVerdict:
    point: str
    smooth: bool
    reason: str


def smoothness_report(spec: CoverSpec) -> list[PointVerdict]:
    """Check the cover over every recorded intersection point.

    Only ramified components count: over a point lying on one branch
    component the cover is smooth; over two it is smooth iff the two
    images generate their direct sum; three or more is always singular.
    """
    out = []
    for p in spec.incidences:
        comps = [spec.component(c) for c in p.components]
        ram = [c for c in comps if c.ramified]
        if len(ram) <= 1:
            out.append(PointVerdict(p.name, True, "at most one branch component"))
        elif len(ram) >= 3:
            names = ",".join(c.name for c in ram)
            out.append(PointVerdict(p.name, False, f"{len(ram)} branch components meet ({names})"))
        else:
            a, b = ram[0].phi, ram[1].phi
            both = span([a, b])
            if both.order == a.order * b.order:
                out.append(PointVerdict(p.name, True, "transverse double point, direct sum"))
            else:
                out.append(
                    PointVerdict(p.name, False, f"images {a} and {b} do not span a direct sum")
                )
    return out


def singular_points(spec: CoverSpec) -> list[str]:
    return [v.point for v in smoothness_report(spec) if not v.smooth]


def blowup_extend(spec: CoverSpec, point: str) -> CoverSpec:
    """Blow up ``point``; the new component gets image the sum of the incident images."""
    p = spec.point(point)
    lat = PicLattice(spec.lattice.r + 1)
    e_cls = lat.E(lat.r)
    e_name = f"E{lat.r}"
    if any(c.name == e_name for c in spec.components):
        e_name = f"E_{point}"
    phi_e = GroupVector.zero(spec.n, spec.k)
    comps = []
    for c in spec.components:
        cls = c.cls.extend()
        if c.name in p.components:
            cls = cls - e_cls
            if c.ramified:
                phi_e = phi_e + c.phi
        comps.append(replace(c, cls=cls))
    comps.append(BranchComponent(e_name, e_cls, phi_e, unramified=phi_e.is_zero()))
    incid = [q for q in spec.incidences if q.name != point]
    # the strict transforms now meet E at distinct points
    for c in p.components:
        incid.append(IncidencePoint(f"{e_name}^{c}", (e_name, c), exceptional=True))
    return CoverSpec(
        spec.n, spec.k, tuple(comps), tuple(incid), lat, spec.resolved + (point,), spec.name
    )


# -- eigensheaves ----------------------------------------------------------------


def eigensheaf(spec: CoverSpec, chi: Character) -> DivisorClass:
    """L_chi, determined by n L = sum <chi, Phi(D_i)> D_i with values in [0, n)."""
    total = spec.lattice.zero
    for c in spec.branch:
        total = total + c.cls * chi(c.phi)
    if any(x % spec.n for x in total.coeffs):
        raise InconsistentCoverError(f"{total.pretty()} is not divisible by {spec.n} (character {chi})")
    return total // spec.n


def local_exponent(chi: Character, g: GroupVector) -> int:
    """The value of chi on <g>, read in Z/m where m is the order of g.

    This identifies the dual of <g> with Z/m so that the dual of g is 1.
    """
    m = g.order
    return (chi(g) * m // chi.n) % m


def tangent_support(chi: Character, g: GroupVector) -> bool:
    """g in S_chi for the tangent sheaf decomposition."""
    return local_exponent(chi, g) != g.order - 1


def bicanonical_support(chi: Character, g: GroupVector) -> bool:
    """g in S_chi for the bicanonical decomposition, (m/d) chi(g) != m - 1."""
    return local_exponent(chi, g) != g.order - 1


def delta_classes(spec: CoverSpec) -> dict[GroupVector, DivisorClass]:
    """Delta_g for every g hit by a ramified component."""
    out: dict[GroupVector, DivisorClass] = {}
    for c in spec.branch:
        out[c.phi] = out.get(c.phi, spec.lattice.zero) + c.cls
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class SurfaceInvariants:
    K2: int
    chi: int
    pg: int
    q: int

    def to_json(self) -> dict[str, int]:
        return {"K2": self.K2, "chi": self.chi, "pg": self.pg, "q": self.q}


def require_smooth(spec: CoverSpec) -> None:
    bad = singular_points(spec)
    if bad:
        raise PreconditionError(f"cover is singular over {', '.join(bad)}")


def canonical_square(spec: CoverSpec) -> int:
    """K_X^2 = |G| (K_Y + sum (1 - 1/d_i) D_i)^2, asserted integral."""
    return _formal_canonical_square(spec, check=True)


def _formal_canonical_square(spec: CoverSpec, check: bool = False) -> Any:
    coeffs = [Fraction(x) for x in spec.lattice.K.coeffs]
    for c in spec.branch:
        w = 1 - Fraction(1, c.phi.order)
        for i, x in enumerate(c.cls.coeffs):
            coeffs[i] += w * x
    sq = coeffs[0] ** 2 - sum(x * x for x in coeffs[1:])
    value = spec.group.order * sq
    if check:
        if value.denominator != 1:
            raise InconsistentCoverError(f"K^2 = {value} is not an integer")
        return int(value)
    return value


def invariants(spec: CoverSpec) -> SurfaceInvariants:
    require_smooth(spec)
    K = spec.lattice.K
    chi = pg = q = 0
    for ch in spec.characters():
        L = eigensheaf(spec, ch)
        chi += chi_line_bundle(-L)
        pg += h0(K + L)
        q += h1(K + L)
    return SurfaceInvariants(canonical_square(spec), chi, pg, q)


# -- eigensheaf tables -------------------------------------------------------------


@dataclass(frozen=True)
class EigensheafRow:
    """One character's summand.

    For the tangent table ``A = K_Y + L``; for the bicanonical table ``A``
    is the whole summand 2K_Y + sum Delta_g + L_{chi^-1} and ``L`` is
    L_{chi^-1}.  ``components`` are the branch curves carrying log poles
    (tangent) or added to 2K_Y (bicanonical).
    """

    character: Character
    L: DivisorClass
    A: DivisorClass
    support: tuple[GroupVector, ...]
    delta_classes: dict[GroupVector, DivisorClass] = field(compare=False)
    components: tuple[str, ...]
    delta_sum: DivisorClass
    euler: int | None = None

    def to_json(self) -> dict[str, Any]:
        out = {
            "character": self.character.vector.to_json(),
            "L": self.L.to_json(),
            "A": self.A.to_json(),
            "A_pretty": self.A.pretty(),
            "support": [g.to_json() for g in self.support],
            "components": list(self.components),
            "delta_sum": self.delta_sum.to_json(),
        }
        if self.euler is not None:
            out["euler"] = self.euler
        return out


def _support(spec: CoverSpec, chi: Character, member) -> tuple:
    deltas = delta_classes(spec)
    support = tuple(g for g in deltas if member(chi, g))
    comps = tuple(c.name for c in spec.branch if c.phi in support)
    dsum = spec.lattice.zero
    for g in support:
        dsum = dsum + deltas[g]
    return support, {g: deltas[g] for g in support}, comps, dsum


def tangent_table(spec: CoverSpec) -> list[EigensheafRow]:
    require_smooth(spec)
    K = spec.lattice.K
    rows = []
    for chi in spec.characters():
        L = eigensheaf(spec, chi)
        A = K + L
        support, dcls, comps, dsum = _support(spec, chi, tangent_support)
        curves = [spec.component(c).cls for c in comps]
        rows.append(EigensheafRow(chi, L, A, support, dcls, comps, dsum, chi_log_rank2(A, curves)))
    return rows


def bicanonical_table(spec: CoverSpec) -> list[EigensheafRow]:
    require_smooth(spec)
    K = spec.lattice.K
    rows = []
    for chi in spec.characters():
        inv = _canonical_lift(spec, -chi)
        L = eigensheaf(spec, inv)
        support, dcls, comps, dsum = _support(spec, inv, bicanonical_support)
        rows.append(EigensheafRow(chi, L, K * 2 + dsum + L, support, dcls, comps, dsum))
    return rows


def _canonical_lift(spec: CoverSpec, chi: Character) -> Character:
    key = tuple(chi(b) for b in spec.group.basis)
    for c in spec.characters():
        if tuple(c(b) for b in spec.group.basis) == key:
            return c
    raise AssertionError("character lift not found")


@dataclass(frozen=True)
class BicanonicalAnalysis:
    with_sections: tuple[Character, ...]
    sections: dict[str, int]
    generates: bool
    h0_total: int

    def to_json(self) -> dict[str, Any]:
        return {
            "characters_with_sections": [c.vector.to_json() for c in self.with_sections],
            "sections": self.sections,
            "generates": self.generates,
            "h0_2K": self.h0_total,
        }


def bicanonical_analysis(spec: CoverSpec) -> BicanonicalAnalysis:
    rows = bicanonical_table(spec)
    counts = {str(r.character): h0(r.A) for r in rows}
    with_sec = tuple(r.character for r in rows if counts[str(r.character)] > 0)
    grp = spec.group
    # the characters generate G* iff nothing nonzero in G is killed by all of them
    killed = [g for g in grp.elements if all(c(g) == 0 for c in with_sec)]
    return BicanonicalAnalysis(with_sec, counts, len(killed) == 1, sum(counts.values()))


# -- quotients -----------------------------------------------------------------------


def quotient_branch_data(
    spec: CoverSpec, h: Subgroup, basis_hint: Sequence[GroupVector] = ()
) -> CoverSpec:
    """The G/H-cover obtained by composing Phi with G -> G/H.

    Quotient coordinates follow :class:`Quotient` with the same ``basis_hint``.
    """
    grp = spec.group
    if not h.issubset(grp):
        raise SubgroupError("subgroup is not contained in the cover's group")
    quot = Quotient(grp, h, basis_hint)
    comps = []
    for c in spec.components:
        if c.ramified:
            val = quot.classify(c.phi)
        else:
            val = GroupVector.zero(spec.n, quot.dim)
        comps.append(replace(c, phi=val, unramified=val.is_zero()))
    new = CoverSpec(
        spec.n, quot.dim, tuple(comps), spec.incidences, spec.lattice, spec.resolved, spec.name
    )
    return new
