"""Finite abelian groups of the form (Z/n)^k.

Everything here is written additively: the zero vector is the identity and
``a + b`` is the group law.  Multiplicative identities such as
``xi1 * xi2 * xi3 = 1`` therefore read ``xi1 + xi2 + xi3 == 0``.

Subgroups are small (the largest ambient group used is (Z/3)^6 with 729
elements), so they are stored with their full element set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError, MembershipError, UnsupportedModulusError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


@dataclass(frozen=True, order=True)
class GroupVector:
    """An element of (Z/n)^k, coordinates reduced into [0, n)."""

    coords: tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"modulus must be positive, got {self.n}")
        object.__setattr__(self, "coords", tuple(int(c) % self.n for c in self.coords))

    @classmethod
    def zero(cls, n: int, k: int) -> GroupVector:
        return cls((0,) * k, n)

    @property
    def k(self) -> int:
        return len(self.coords)

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.n, self.k)

    def _check(self, other: GroupVector) -> None:
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other: GroupVector) -> GroupVector:
        self._check(other)
        return GroupVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.n)

    def __neg__(self) -> GroupVector:
        return GroupVector(tuple(-a for a in self.coords), self.n)

    def __sub__(self, other: GroupVector) -> GroupVector:
        return self + (-other)

    def __mul__(self, scalar: int) -> GroupVector:
        return GroupVector(tuple(scalar * a for a in self.coords), self.n)

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        g = self.n
        for c in self.coords:
            g = gcd(g, c)
        return self.n // g

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def vec(coords: Iterable[int], n: int = 3) -> GroupVector:
    return GroupVector(tuple(coords), n)


def all_vectors(n: int, k: int) -> list[GroupVector]:
    return [GroupVector(c, n) for c in itertools.product(range(n), repeat=k)]


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism (Z/n)^k -> (Z/n)^k' given by a k' x k matrix."""

    matrix: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.n for x in row) for row in self.matrix)
        if len({len(r) for r in rows}) > 1:
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_columns(cls, columns: Sequence[GroupVector]) -> GroupHom:
        n = columns[0].n
        rows = tuple(zip(*(c.coords for c in columns)))
        return cls(rows, n)

    @classmethod
    def zero(cls, n: int, source: int, target: int) -> GroupHom:
        return cls(tuple((0,) * source for _ in range(target)), n)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def columns(self) -> list[GroupVector]:
        return [GroupVector(col, self.n) for col in zip(*self.matrix)]

    def __call__(self, v: GroupVector) -> GroupVector:
        if v.n != self.n or v.k != self.source_dim:
            raise DimensionError(f"cannot apply {self.target_dim}x{self.source_dim} map to {v.ambient}")
        return GroupVector(tuple(sum(a * b for a, b in zip(row, v.coords)) for row in self.matrix), self.n)

    def compose(self, other: GroupHom) -> GroupHom:
        """Return ``self o other`` (apply ``other`` first)."""
        if other.target_dim != self.source_dim or other.n != self.n:
            raise DimensionError("composition dimension mismatch")
        cols = list(zip(*other.matrix))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.matrix
        )
        return GroupHom(rows, self.n)

    def image(self) -> Subgroup:
        return span(self.columns(), ambient=(self.n, self.target_dim))

    def kernel(self) -> Subgroup:
        return kernel_image_intersect(self, full_group(self.n, self.source_dim))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of (Z/n)^k with its enumerated elements."""

    ambient: tuple[int, int]
    generators: tuple[GroupVector, ...]
    elements: frozenset[GroupVector] = field(repr=False)
    basis: tuple[GroupVector, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v: GroupVector) -> bool:
        return v in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def issubset(self, other: Subgroup) -> bool:
        return self.ambient == other.ambient and self.elements <= other.elements

    def intersection(self, other: Subgroup) -> Subgroup:
        if self.ambient != other.ambient:
            raise DimensionError("ambient mismatch")
        return subgroup_from_elements(self.elements & other.elements, self.ambient)

    def join(self, other: Subgroup) -> Subgroup:
        return span(self.basis + other.basis, ambient=self.ambient)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for b in self.basis:
            e = e * b.order // gcd(e, b.order)
        return e


def _close(start: set[GroupVector], g: GroupVector) -> set[GroupVector]:
    out = set()
    multiples = [g * j for j in range(g.order)]
    for e in start:
        for m in multiples:
            out.add(e + m)
    return out


def span(generators: Sequence[GroupVector], ambient: tuple[int, int] | None = None) -> Subgroup:
    """Smallest subgroup containing ``generators``.

    ``ambient`` is required when ``generators`` is empty.
    """
    generators = tuple(generators)
    if ambient is None:
        if not generators:
            raise DimensionError("span of no generators needs an explicit ambient")
        ambient = generators[0].ambient
    for g in generators:
        if g.ambient != ambient:
            raise DimensionError(f"generator {g} not in (Z/{ambient[0]})^{ambient[1]}")
    n, k = ambient
    elements = {GroupVector.zero(n, k)}
    basis = []
    for g in generators:
        if g in elements:
            continue
        elements = _close(elements, g)
        basis.append(g)
    return Subgroup(ambient, generators, frozenset(elements), tuple(basis))


def subgroup_from_elements(elements: Iterable[GroupVector], ambient: tuple[int, int]) -> Subgroup:
    """Wrap an element set already known to be a subgroup; a basis is picked greedily."""
    elements = frozenset(elements)
    sub = span(sorted(elements), ambient=ambient)
    if sub.elements != elements:
        raise MembershipError("element set is not closed under addition")
    return Subgroup(ambient, sub.basis, elements, sub.basis)


def full_group(n: int, k: int) -> Subgroup:
    units = [GroupVector(tuple(int(i == j) for j in range(k)), n) for i in range(k)]
    return span(units, ambient=(n, k))


def trivial_group(n: int, k: int) -> Subgroup:
    return span([], ambient=(n, k))


def kernel_image_intersect(h: GroupHom, s: Subgroup) -> Subgroup:
    """Return Ker(h) ∩ s."""
    if s.ambient != (h.n, h.source_dim):
        raise DimensionError(f"map source {(h.n, h.source_dim)} differs from subgroup ambient {s.ambient}")
    return subgroup_from_elements((v for v in s.elements if h(v).is_zero()), s.ambient)


class Quotient:
    """The quotient ``ambient_sub / h`` for prime n, with fixed coordinates.

    A complement to ``h`` inside ``ambient_sub`` is chosen greedily, first
    from ``basis_hint`` then from the sorted basis of ``ambient_sub``; the
    class of ``v`` is its coordinate vector along that complement.
    """

    def __init__(self, ambient_sub: Subgroup, h: Subgroup, basis_hint: Sequence[GroupVector] = ()):
        n, _ = ambient_sub.ambient
        if not _is_prime(n):
            raise UnsupportedModulusError(f"quotient coordinates need a prime modulus, got {n}")
        if not h.issubset(ambient_sub):
            raise MembershipError("h is not contained in the ambient subgroup")
        self.ambient_sub = ambient_sub
        self.h = h
        self.n = n
        complement: list[GroupVector] = []
        current = h
        for c in list(basis_hint) + sorted(ambient_sub.basis):
            if c not in ambient_sub:
                raise MembershipError(f"basis hint {c} not in the ambient subgroup")
            if c not in current:
                complement.append(c)
                current = span(current.basis + (c,), ambient=h.ambient)
        self.complement = tuple(complement)
        self.dim = len(complement)
        table = {}
        for coeffs in itertools.product(range(n), repeat=self.dim):
            base = GroupVector.zero(*h.ambient)
            for a, c in zip(coeffs, complement):
                base = base + c * a
            cls = GroupVector(coeffs, n)
            for e in h.elements:
                table[base + e] = cls
        self._table = table

    @property
    def order(self) -> int:
        return self.n**self.dim

    def classify(self, v: GroupVector) -> GroupVector:
        try:
            return self._table[v]
        except KeyError:
            raise MembershipError(f"{v} is not in the ambient subgroup") from None


def quotient_classes(
    ambient_sub: Subgroup,
    h: Subgroup,
    probes: Sequence[GroupVector],
    basis_hint: Sequence[GroupVector] = (),
) -> list[GroupVector]:
    """Canonical classes of ``probes`` in ``ambient_sub / h``."""
    q = Quotient(ambient_sub, h, basis_hint)
    return [q.classify(p) for p in probes]


@dataclass(frozen=True, order=True)
class Character:
    """A character of (Z/n)^k, given by a dual coordinate vector.

    The value on ``g`` is the dot product mod n.
    """

    vector: GroupVector

    @property
    def n(self) -> int:
        return self.vector.n

    @property
    def order(self) -> int:
        return self.vector.order

    def __call__(self, g: GroupVector) -> int:
        return pairing(self.vector, g)

    def __neg__(self) -> Character:
        return Character(-self.vector)

    def __add__(self, other: Character) -> Character:
        return Character(self.vector + other.vector)

    def is_trivial_on(self, sub: Subgroup) -> bool:
        return all(self(b) == 0 for b in sub.basis)

    def __str__(self):
        return str(self.vector)


def pairing(chi: GroupVector, g: GroupVector) -> int:
    chi._check(g)
    return sum(a * b for a, b in zip(chi.coords, g.coords)) % chi.n


def characters_of(sub: Subgroup) -> list[Character]:
    """One ambient lift per character of ``sub`` (the lexicographically smallest)."""
    n, k = sub.ambient
    seen: dict[tuple[int, ...], Character] = {}
    for v in all_vectors(n, k):
        key = tuple(pairing(v, b) for b in sub.basis)
        if key not in seen:
            seen[key] = Character(v)
    return sorted(seen.values())


# -- integer linear algebra ------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U * m * V == diag(diagonal)`` with U, V unimodular."""

    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix.

    ``ncols`` is only needed when ``m`` has no rows.
    """
    A = [list(map(int, row)) for row in m]
    rows = len(A)
    cols = len(A[0]) if A else (ncols or 0)
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        for M in (A, U):
            rs, rd = M[src], M[dst]
            for c in range(len(rd)):
                rd[c] += q * rs[c]

    def add_col(src, dst, q):  # col_dst += q * col_src
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t into the pivot
                cands = [(abs(A[i][t]), i, "r") for i in range(t + 1, rows) if A[i][t]]
                cands += [(abs(A[t][j]), j, "c") for j in range(t + 1, cols) if A[t][j]]
                _, idx, kind = min(cands)
                if kind == "r":
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            # pivot must divide the rest of the lower-right block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            for c in range(cols):
                A[t][c] = -A[t][c]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(min(rows, cols)))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def invariant_factors(m: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[int]]:
    """Free rank and nontrivial torsion of Z^ncols / rowspace(m)."""
    snf = smith_normal_form(m, ncols=ncols)
    torsion = [d for d in snf.diagonal if d > 1]
    free = ncols - snf.rank
    return free, torsion


def matrix_rank_mod_n(m: GroupHom) -> int:
    """Rank over the field Z/n; n must be prime."""
    p = m.n
    if not _is_prime(p):
        raise UnsupportedModulusError(f"rank mod {p} is not well defined")
    A = [list(row) for row in m.matrix]
    rank = 0
    cols = m.source_dim
    for c in range(cols):
        pivot = next((r for r in range(rank, len(A)) if A[r][c] % p), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank
