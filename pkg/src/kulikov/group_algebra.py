"""The rational group algebra Q[G] of G = G^1 and exact ideal membership.

G^1 is realised as (Z/3)^5 on the basis (w1, w2, w3, xi1, xi2); the third
translation xi3 is eliminated through xi1 xi2 xi3 = 1.  Monomials such as
``"xi3^2*w2"`` are parsed into this basis.

In a finite-dimensional commutative algebra the ideal generated by
elements f_i is the linear span of the products f_i * h for h in G, so
membership is a rank question, settled by exact integer elimination.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from .constants import omega, xi
from .errors import DimensionError, WordParseError
from .groups import GroupHom, GroupVector, Subgroup, all_vectors, span


class GroupAlgebra:
    """Q[(Z/n)^k] with elements indexed by the lexicographic order of vectors."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.elements = all_vectors(n, k)
        self.index = {v: i for i, v in enumerate(self.elements)}

    @property
    def dim(self) -> int:
        return len(self.elements)

    @cached_property
    def _add_table(self) -> list[list[int]]:
        idx, els = self.index, self.elements
        return [[idx[a + b] for b in els] for a in els]

    def basis_element(self, g: GroupVector) -> GroupAlgebraElement:
        return GroupAlgebraElement(self, {self.index[g]: Fraction(1)})

    def one(self) -> GroupAlgebraElement:
        return self.basis_element(GroupVector.zero(self.n, self.k))

    def zero(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self, {})

    def element(self, coeffs: Mapping[GroupVector, object]) -> GroupAlgebraElement:
        return GroupAlgebraElement(self, {self.index[g]: Fraction(c) for g, c in coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebra) and (self.n, self.k) == (other.n, other.k)

    def __hash__(self):
        return hash((self.n, self.k))


class GroupAlgebraElement:
    """A finitely supported Q-combination of group elements."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: GroupAlgebra, coeffs: Mapping[int, Fraction]):
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def _check(self, other: GroupAlgebraElement) -> None:
        if self.algebra != other.algebra:
            raise DimensionError("elements of different group algebras")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return GroupAlgebraElement(self.algebra, out)

    def __neg__(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.algebra, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return self + (-other)

    def __mul__(self, other) -> GroupAlgebraElement:
        if not isinstance(other, GroupAlgebraElement):
            c = Fraction(other)
            return GroupAlgebraElement(self.algebra, {i: c * x for i, x in self.coeffs.items()})
        self._check(other)
        table = self.algebra._add_table
        out: dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            row = table[i]
            for j, b in other.coeffs.items():
                k = row[j]
                out[k] = out.get(k, 0) + a * b
        return GroupAlgebraElement(self.algebra, out)

    def __rmul__(self, other) -> GroupAlgebraElement:
        return self * other

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[GroupVector]:
        return [self.algebra.elements[i] for i in sorted(self.coeffs)]

    def coefficient(self, g: GroupVector) -> Fraction:
        return self.coeffs.get(self.algebra.index[g], Fraction(0))

    def dense(self) -> list[Fraction]:
        return [self.coeffs.get(i, Fraction(0)) for i in range(self.algebra.dim)]

    def __repr__(self):
        return f"GroupAlgebraElement({len(self.coeffs)} terms)"


@dataclass(frozen=True, eq=False)
class SubgroupSum:
    subgroup: Subgroup
    element: GroupAlgebraElement


# -- the group G^1 ----------------------------------------------------------------

G1_ALGEBRA = GroupAlgebra(3, 5)
_BASIS_NAMES = ("w1", "w2", "w3", "xi1", "xi2")


def _unit(i: int) -> GroupVector:
    return GroupVector(tuple(int(j == i) for j in range(5)), 3)


SYMBOLS: dict[str, GroupVector] = {name: _unit(i) for i, name in enumerate(_BASIS_NAMES)}
SYMBOLS["xi3"] = -(SYMBOLS["xi1"] + SYMBOLS["xi2"])

# basis coordinates -> the six-coordinate model of G^1 inside (Z/3)^6
TO_SIX = GroupHom.from_columns([omega(1), omega(2), omega(3), xi(1), xi(2)])

_FACTOR = re.compile(r"\s*(w[123]|xi[123])\s*(?:\^\s*(-?\d+))?\s*")


def parse_monomial(text: str) -> GroupVector:
    """Parse a product like ``"xi2^2*w3"`` (``1`` is the identity)."""
    text = text.strip()
    out = GroupVector.zero(3, 5)
    if text == "1":
        return out
    for part in text.split("*"):
        m = _FACTOR.fullmatch(part)
        if not m:
            raise WordParseError(f"cannot parse monomial factor {part!r} in {text!r}")
        out = out + SYMBOLS[m.group(1)] * int(m.group(2) or 1)
    return out


def format_monomial(v: GroupVector) -> str:
    parts = []
    for name, c in zip(_BASIS_NAMES, v.coords):
        if c:
            parts.append(name if c == 1 else f"{name}^{c}")
    return "*".join(parts) or "1"


def z(generators: Sequence[GroupVector], algebra: GroupAlgebra = G1_ALGEBRA) -> SubgroupSum:
    """z(H), the sum of all elements of H = <generators>."""
    sub = span(generators, ambient=(algebra.n, algebra.k))
    el = GroupAlgebraElement(algebra, {algebra.index[h]: Fraction(1) for h in sub.elements})
    return SubgroupSum(sub, el)


def cyclic_product(generators: Sequence[GroupVector], algebra: GroupAlgebra = G1_ALGEBRA) -> GroupAlgebraElement:
    """prod_i (1 + a_i + a_i^2): the polynomial form of z used for order-3 generators."""
    out = algebra.one()
    for a in generators:
        out = out * (algebra.one() + algebra.basis_element(a) + algebra.basis_element(a * 2))
    return out


@dataclass(frozen=True)
class SubgroupTriple:
    label: tuple[str, str, str]

    @property
    def generators(self) -> tuple[GroupVector, ...]:
        return tuple(parse_monomial(s) for s in self.label)

    @property
    def family(self) -> str:
        return "extra" if self == EXTRA_TRIPLE else "listed"

    def __str__(self):
        return "[" + ",".join(self.label) + "]"


def _mono(pre: str, i: int, w: str) -> str:
    if i == 0:
        return w
    return f"{pre}*{w}" if i == 1 else f"{pre}^{i}*{w}"


EXTRA_TRIPLE = SubgroupTriple(("xi3*w1", "xi2*w2", "xi2*w3"))

# (fixed omega, xi used as twist, the two twisted omegas)
_FAMILIES = (
    ("w1", "xi1", "w2", "w3"),
    ("w1", "xi3", "w2", "w3"),
    ("w2", "xi1", "w3", "w1"),
    ("w2", "xi2", "w3", "w1"),
    ("w3", "xi2", "w1", "w2"),
    ("w3", "xi3", "w1", "w2"),
)


@lru_cache(maxsize=None)
def bloch_subgroup_list(include_extra: bool = True) -> tuple[SubgroupTriple, ...]:
    """The 54 triples <w_i, xi_n^l w_j, xi_n^m w_k> plus the extra triple."""
    out = []
    for fixed, x, wj, wk in _FAMILIES:
        for i, j in itertools.product(range(3), repeat=2):
            out.append(SubgroupTriple((fixed, _mono(x, i, wj), _mono(x, j, wk))))
    if include_extra:
        out.append(EXTRA_TRIPLE)
    return tuple(out)


def g2_generators() -> list[GroupVector]:
    return [parse_monomial(s) for s in ("w1*xi1", "w2*xi2", "w3*xi3")]


# -- ideal membership -------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    rank: int
    generators: int
    target: str = ""

    def to_json(self) -> dict:
        return {"target": self.target, "member": self.member, "rank": self.rank, "generators": self.generators}


def _integer_row(el: GroupAlgebraElement) -> dict[int, int]:
    den = 1
    for c in el.coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    row = {i: int(c * den) for i, c in el.coeffs.items()}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {i: v // g for i, v in row.items()}
    if row and row[min(row)] < 0:
        row = {i: -v for i, v in row.items()}
    return row


class RowSpace:
    """Echelon basis of an integer row space, kept fraction free.

    Each stored row is primitive with a positive leading entry.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        while row:
            lead = min(row)
            basis = self.pivots.get(lead)
            if basis is None:
                return row
            a, b = basis[lead], row[lead]
            # a*row - b*basis clears column `lead`
            new = {i: a * v for i, v in row.items()}
            for i, v in basis.items():
                x = new.get(i, 0) - b * v
                if x:
                    new[i] = x
                else:
                    new.pop(i, None)
            row = _primitive(new)
        return row

    def add(self, row: dict[int, int]) -> bool:
        red = self.reduce(row)
        if not red:
            return False
        self.pivots[min(red)] = red
        return True


def ideal_membership(
    target: GroupAlgebraElement,
    gens: Iterable[GroupAlgebraElement],
    label: str = "",
) -> MembershipResult:
    """Decide whether ``target`` lies in the ideal generated by ``gens``."""
    gens = list(gens)
    if not gens:
        return MembershipResult(target.is_zero(), 0, 0, label)
    algebra = target.algebra
    space = RowSpace()
    seen: set[tuple] = set()
    for f in gens:
        f._check(target)
        for h in algebra.elements:
            row = _integer_row(f * algebra.basis_element(h))
            key = tuple(sorted(row.items()))
            # translates by elements of a stabiliser repeat rows
            if key in seen:
                continue
            seen.add(key)
            space.add(row)
            if space.rank == algebra.dim:
                break
    rest = space.reduce(_integer_row(target)) if not target.is_zero() else {}
    return MembershipResult(not rest, space.rank, len(gens), label)


def bloch_ideal_generators(triples: Sequence[SubgroupTriple]) -> list[GroupAlgebraElement]:
    return [z(t.generators).element for t in triples]


def bloch_check(triples: Sequence[SubgroupTriple]) -> MembershipResult:
    """Is z(G^2) in the ideal generated by z(H) for the given triples?"""
    return _bloch_check(tuple(triples))


@lru_cache(maxsize=16)
def _bloch_check(triples: tuple[SubgroupTriple, ...]) -> MembershipResult:
    target = z(g2_generators()).element
    return ideal_membership(target, bloch_ideal_generators(triples), label="z(G2)")


def parse_triples(text: str) -> list[SubgroupTriple]:
    """Parse ``"w1,w2,w3; xi3*w1,xi2*w2,xi2*w3"`` into triples (empty text gives [])."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("[]")
        if not chunk:
            continue
        parts = tuple(p.strip() for p in chunk.split(","))
        if len(parts) != 3:
            raise WordParseError(f"expected three generators in {chunk!r}")
        for part in parts:
            parse_monomial(part)
        out.append(SubgroupTriple(parts))
    return out
