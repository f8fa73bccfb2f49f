"""Finite presentations, abelianization and index-3 subgroups of Gamma.

Words are lists of ``(generator, +-1)`` letters, as in :mod:`.eisenstein`.
Coset tables are built from a homomorphism to Z/m rather than by general
coset enumeration: the subgroups of interest are kernels of such maps.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    NotAHomomorphismError,
    PreconditionError,
    RelatorVerificationError,
    WordParseError,
)
from .eisenstein import (
    GENERATOR_NAMES,
    Letter,
    conjugation_table,
    evaluate,
    format_word,
    invert,
    parse_word,
    relation_suite,
)
from .groups import invariant_factors


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[Letter, ...], ...]

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in gens or e not in (1, -1):
                    raise WordParseError(f"relator letter {(g, e)} is not a generator or inverse")

    @classmethod
    def from_strings(cls, generators: Sequence[str], relators: Sequence[str]) -> Presentation:
        return cls(tuple(generators), tuple(tuple(parse_word(r)) for r in relators))

    def relator_matrix(self) -> list[list[int]]:
        index = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for g, e in r:
                row[index[g]] += e
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [format_word(r) for r in self.relators],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def abelianization(p: Presentation) -> Abelianization:
    free, torsion = invariant_factors(p.relator_matrix(), ncols=len(p.generators))
    return Abelianization(free, tuple(torsion))


def gamma_relator_strings() -> list[str]:
    """Relators of Gamma, each of the form ``lhs rhs^-1``."""
    rels = []
    trans = ("t1", "t2", "t3", "tp1", "tp2", "tp3")
    for i, a in enumerate(trans):
        for b in trans[i + 1:]:
            rels.append(f"{a} {b} {a}^-1 {b}^-1")
    for (gi, s), word in conjugation_table().items():
        rels.append(f"{gi} {s} {gi}^-1 ({format_word(word)})^-1")
    for lhs, rhs in relation_suite():
        rels.append(f"{lhs} ({rhs})^-1")
    return rels


def gamma_presentation() -> Presentation:
    """A presentation of Gamma whose relators are all checked in the affine model.

    Families: commutators of the six translations, conjugation of each
    translation by each gamma_i, then every identity of the relation suite
    (commutators of the gamma_i, their action on t_j, and the cubes).
    """
    rels = []
    seen = set()
    for text in gamma_relator_strings():
        word = tuple(parse_word(text))
        if not evaluate(list(word)).is_identity():
            raise RelatorVerificationError(text)
        if word not in seen:
            seen.add(word)
            rels.append(word)
    return Presentation(GENERATOR_NAMES, tuple(rels))


# -- coset tables ---------------------------------------------------------------


@dataclass(frozen=True)
class CosetTable:
    """Right action of the generators on cosets 0..size-1."""

    size: int
    action: Mapping[str, tuple[int, ...]]

    def act(self, coset: int, letter: Letter) -> int:
        g, e = letter
        perm = self.action[g]
        if e > 0:
            return perm[coset]
        return perm.index(coset)

    def trace(self, coset: int, word: Sequence[Letter]) -> int:
        for letter in word:
            coset = self.act(coset, letter)
        return coset

    def is_permutation_table(self) -> bool:
        return all(sorted(p) == list(range(self.size)) for p in self.action.values())

    def is_consistent(self, p: Presentation) -> bool:
        return all(self.trace(c, r) == c for r in p.relators for c in range(self.size))


def coset_table_from_hom(p: Presentation, phi: Mapping[str, int], modulus: int = 3) -> CosetTable:
    """Cosets of Ker(phi) where phi sends generators to Z/modulus.

    Cosets are labelled by the values of phi that actually occur.
    """
    values = {g: phi.get(g, 0) % modulus for g in p.generators}
    for r in p.relators:
        if sum(values[g] * e for g, e in r) % modulus:
            raise NotAHomomorphismError(f"phi does not vanish on {format_word(r)}")
    size = 1
    for v in values.values():
        if v:
            size = max(size, modulus // _gcd(v, modulus))
    # the image is a subgroup of Z/modulus generated by the values
    step = modulus // size
    action = {
        g: tuple(((c * step + values[g]) % modulus) // step for c in range(size)) for g in p.generators
    }
    return CosetTable(size, action)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def schreier_transversal(table: CosetTable, prefer: Sequence[str] = ()) -> dict[int, list[Letter]]:
    """Spanning tree of the coset graph.

    Positive powers of the preferred generators come first, so a cyclic
    quotient gets the transversal {1, g, g^2, ...}; BFS covers the rest.
    """
    order = list(prefer) + [g for g in table.action if g not in prefer]
    reps: dict[int, list[Letter]] = {0: []}
    for g in prefer:
        for c in list(reps):
            d = table.act(c, (g, 1))
            while d not in reps:
                reps[d] = reps[c] + [(g, 1)]
                c, d = d, table.act(d, (g, 1))
    queue = deque(sorted(reps))
    while queue:
        c = queue.popleft()
        for g in order:
            for e in (1, -1):
                d = table.act(c, (g, e))
                if d not in reps:
                    reps[d] = reps[c] + [(g, e)]
                    queue.append(d)
    if len(reps) != table.size:
        raise PreconditionError("coset table is not connected")
    return reps


def reidemeister_schreier(
    p: Presentation, table: CosetTable, prefer: Sequence[str] = ()
) -> Presentation:
    """Presentation of the subgroup of coset 0 on Schreier generators.

    Generators are the pairs (coset, generator) whose Schreier element is
    not freely trivial; they are named ``"g@c"``.
    """
    if set(table.action) != set(p.generators) or not table.is_permutation_table():
        raise PreconditionError("coset table is incomplete")
    if not table.is_consistent(p):
        raise PreconditionError("coset table is not consistent with the relators")
    reps = schreier_transversal(table, prefer)
    tree = set()
    for c, w in reps.items():
        if w:
            parent = table.trace(0, w[:-1])
            g, e = w[-1]
            tree.add((parent, g) if e > 0 else (c, g))
    gens = [f"{g}@{c}" for c in range(table.size) for g in p.generators if (c, g) not in tree]

    def rewrite(word: Sequence[Letter], start: int) -> list[Letter]:
        out = []
        c = start
        for g, e in word:
            if e > 0:
                if (c, g) not in tree:
                    out.append((f"{g}@{c}", 1))
                c = table.act(c, (g, 1))
            else:
                c = table.act(c, (g, -1))
                if (c, g) not in tree:
                    out.append((f"{g}@{c}", -1))
        assert c == start
        return out

    rels = tuple(tuple(rewrite(r, c)) for r in p.relators for c in range(table.size))
    return Presentation(tuple(gens), rels)


def schreier_element(name: str, table: CosetTable, reps: Mapping[int, list[Letter]]) -> list[Letter]:
    """The word rep(c) g rep(c.g)^-1 behind a Schreier generator ``"g@c"``."""
    g, c = name.split("@")
    c = int(c)
    return reps[c] + [(g, 1)] + invert(reps[table.act(c, (g, 1))])


SIGMA_MAPS = {
    "sigma1": {"g3": 1},
    "sigma2": {"g1": 1},
    "sigma3": {"g2": 1},
}


def sigma_subgroup(name: str) -> tuple[CosetTable, Presentation]:
    gp = gamma_presentation()
    phi = SIGMA_MAPS[name]
    table = coset_table_from_hom(gp, phi)
    return table, reidemeister_schreier(gp, table, prefer=tuple(phi))


def is_normal_kernel(p: Presentation, table: CosetTable, prefer: Sequence[str] = ()) -> bool:
    """Check that conjugates of every Schreier element stay in the subgroup."""
    reps = schreier_transversal(table, prefer)
    sub = reidemeister_schreier(p, table, prefer)
    for s in sub.generators:
        w = schreier_element(s, table, reps)
        for g in p.generators:
            for e in (1, -1):
                conj = [(g, e)] + w + [(g, -e)]
                if table.trace(0, conj) != 0:
                    return False
    return True
