"""Divisor classes on the blow-up of P^2 in r general points.

A class is stored as its coefficient vector on the basis (H, E1, ..., Er),
so ``H - E1`` is ``(1, -1, 0, 0)``.  The intersection form is
diag(1, -1, ..., -1) and K = -3H + E1 + ... + Er.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, NonTerminationError


@dataclass(frozen=True)
class PicLattice:
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= 8:
            raise DimensionError(f"only del Pezzo blow-ups (r <= 8) are supported, got r={self.r}")

    def cls(self, coeffs: Sequence[int]) -> DivisorClass:
        return DivisorClass(tuple(coeffs), self.r)

    @property
    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * (self.r + 1), self.r)

    @property
    def H(self) -> DivisorClass:
        return self.cls((1,) + (0,) * self.r)

    def E(self, i: int) -> DivisorClass:
        if not 1 <= i <= self.r:
            raise DimensionError(f"no exceptional class E{i} on r={self.r}")
        return self.cls(tuple(int(j == i) for j in range(self.r + 1)))

    @property
    def K(self) -> DivisorClass:
        return self.cls((-3,) + (1,) * self.r)

    @property
    def euler_number(self) -> int:
        return 3 + self.r

    @cached_property
    def negative_curves(self) -> tuple[DivisorClass, ...]:
        return tuple(self.cls(v) for v in _minus_one_curves(self.r))

    def parse(self, text: str) -> DivisorClass:
        return parse_class(text, self)


@lru_cache(maxsize=None)
def _minus_one_curves(r: int) -> tuple[tuple[int, ...], ...]:
    """All (-1)-curves of the degree 9-r del Pezzo surface.

    Besides the E_i these are the classes dH - sum m_i E_i with m_i >= 0,
    sum m_i^2 = d^2 + 1 and sum m_i = 3d - 1; d <= 6 for r <= 8.
    """
    out = [tuple(int(j == i) for j in range(r + 1)) for i in range(1, r + 1)]
    for d in range(1, 7):
        target_sq, target_sum = d * d + 1, 3 * d - 1

        def rec(prefix, sq, sm):
            if len(prefix) == r:
                if sq == target_sq and sm == target_sum:
                    out.append((d,) + tuple(-m for m in prefix))
                return
            hi = min(d, prefix[-1] if prefix else d)
            for m in range(hi, -1, -1):
                if sq + m * m <= target_sq and sm + m <= target_sum:
                    rec(prefix + (m,), sq + m * m, sm + m)

        before = len(out)
        rec((), 0, 0)
        # expand the sorted multiplicity patterns to all orderings
        patterns = out[before:]
        del out[before:]
        for pat in patterns:
            for perm in _distinct_permutations(pat[1:]):
                out.append((d,) + perm)
    return tuple(sorted(set(out)))


def _distinct_permutations(items):
    items = sorted(items)
    used = [False] * len(items)
    cur = []

    def rec():
        if len(cur) == len(items):
            yield tuple(cur)
            return
        prev = None
        for i, x in enumerate(items):
            if used[i] or x == prev:
                continue
            prev = x
            used[i] = True
            cur.append(x)
            yield from rec()
            cur.pop()
            used[i] = False

    yield from rec()


@dataclass(frozen=True, order=True)
class DivisorClass:
    coeffs: tuple[int, ...]
    r: int

    def __post_init__(self):
        if len(self.coeffs) != self.r + 1:
            raise DimensionError(f"class {self.coeffs} has wrong length for r={self.r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def lattice(self) -> PicLattice:
        return PicLattice(self.r)

    @property
    def degree(self) -> int:
        return self.coeffs[0]

    def _check(self, other: DivisorClass) -> None:
        if self.r != other.r:
            raise DimensionError(f"lattice mismatch: r={self.r} vs r={other.r}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.r)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.r)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coeffs), self.r)

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(k * a for a in self.coeffs), self.r)

    __rmul__ = __mul__

    def __floordiv__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(a // k for a in self.coeffs), self.r)

    def dot(self, other: DivisorClass) -> int:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def extend(self, extra: int = 1) -> DivisorClass:
        """Pull back to a lattice with ``extra`` more exceptional classes."""
        return DivisorClass(self.coeffs + (0,) * extra, self.r + extra)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def pretty(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            name = "H" if i == 0 else f"E{i}"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(("-" if c < 0 else "+", mag + name))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def __str__(self):
        return self.pretty()


def parse_class(text: str, lattice: PicLattice) -> DivisorClass:
    """Parse the pretty form, e.g. ``"2H - E2 - E3"`` or ``"-3H + E1 + E2 + E3"``."""
    import re

    s = text.replace(" ", "").replace("−", "-")
    if s in ("", "0"):
        return lattice.zero
    coeffs = [0] * (lattice.r + 1)
    for sign, mag, name in re.findall(r"([+-]?)(\d*)(H|E\d+)", s):
        c = int(mag) if mag else 1
        c = -c if sign == "-" else c
        idx = 0 if name == "H" else int(name[1:])
        if idx > lattice.r:
            raise DimensionError(f"{name} not on r={lattice.r}")
        coeffs[idx] += c
    out = lattice.cls(coeffs)
    if out.pretty().replace(" ", "") != s:
        raise ValueError(f"cannot parse divisor class {text!r}")
    return out


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    return a.dot(b)


def chi_line_bundle(d: DivisorClass) -> int:
    """Riemann-Roch on a rational surface: 1 + D.(D - K)/2."""
    k = d.lattice.K
    twice = d.dot(d - k)
    assert twice % 2 == 0, "D.(D-K) is always even"
    return 1 + twice // 2


@dataclass(frozen=True)
class Reduction:
    """Outcome of stripping fixed (-1)-curves off a class.

    ``nef_part`` is None when the class was shown not to be effective.
    """

    nef_part: DivisorClass | None
    fixed: tuple[tuple[DivisorClass, int], ...]


def reduce_to_nef(d: DivisorClass) -> Reduction:
    lat = d.lattice
    anti = -lat.K
    bound = 10 * abs(d.dot(anti)) + 10
    fixed: list[tuple[DivisorClass, int]] = []
    steps = 0
    while True:
        if d.dot(anti) < 0:
            return Reduction(None, tuple(fixed))
        neg = next((c for c in lat.negative_curves if d.dot(c) < 0), None)
        if neg is None:
            return Reduction(d, tuple(fixed))
        mult = -d.dot(neg)
        d = d - neg * mult
        fixed.append((neg, mult))
        steps += 1
        if steps > bound:
            raise NonTerminationError(f"negative-curve reduction did not stop after {bound} steps")


def h0(d: DivisorClass) -> int:
    red = reduce_to_nef(d)
    if red.nef_part is None:
        return 0
    # nef on a del Pezzo: P - K is ample, so higher cohomology vanishes
    return chi_line_bundle(red.nef_part)


def h2(d: DivisorClass) -> int:
    return h0(d.lattice.K - d)


def h1(d: DivisorClass) -> int:
    return h0(d) + h2(d) - chi_line_bundle(d)


def cohomology(d: DivisorClass) -> tuple[int, int, int]:
    return h0(d), h1(d), h2(d)


def chi_cotangent_twist(a: DivisorClass) -> int:
    """chi(Omega_Y(A)) by rank-2 Riemann-Roch."""
    lat = a.lattice
    k = lat.K
    c1 = k + a * 2
    c2 = lat.euler_number + k.dot(a) + a.dot(a)
    twice = c1.dot(c1 - k)
    return 2 + twice // 2 - c2


def chi_log_rank2(a: DivisorClass, components: Iterable[DivisorClass]) -> int:
    """chi(Omega_Y(log D)(A)) for D a disjoint union of smooth rational curves.

    Uses the residue sequence: each component C contributes chi(O_C(A)) = 1 + A.C.
    """
    return chi_cotangent_twist(a) + sum(1 + a.dot(c) for c in components)
