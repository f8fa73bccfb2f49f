"""Affine maps of C^3 with Eisenstein data, and the group they generate.

Points and translations are numbers (a + b*w)/3 with w a primitive cube
root of unity, so all the 3-torsion of E = C / Z[w] is representable with
integer arithmetic.  Linear parts are diagonal powers of w.

Words are composed left to right as functions: ``"g1 g2"`` is g1 o g2, i.e.
g2 acts first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import PreconditionError, WordParseError

SCALE = 3


@dataclass(frozen=True, order=True)
class EisensteinScaled:
    """The number (a + b*w) / 3."""

    a: int
    b: int

    @classmethod
    def integer(cls, x: int, y: int = 0) -> EisensteinScaled:
        """The Eisenstein integer x + y*w."""
        return cls(SCALE * x, SCALE * y)

    def __add__(self, other: EisensteinScaled) -> EisensteinScaled:
        return EisensteinScaled(self.a + other.a, self.b + other.b)

    def __sub__(self, other: EisensteinScaled) -> EisensteinScaled:
        return EisensteinScaled(self.a - other.a, self.b - other.b)

    def __neg__(self) -> EisensteinScaled:
        return EisensteinScaled(-self.a, -self.b)

    def __mul__(self, k: int) -> EisensteinScaled:
        return EisensteinScaled(k * self.a, k * self.b)

    __rmul__ = __mul__

    def times_omega(self, power: int = 1) -> EisensteinScaled:
        a, b = self.a, self.b
        for _ in range(power % 3):
            # w (a + b w) = -b + (a - b) w
            a, b = -b, a - b
        return EisensteinScaled(a, b)

    def times_integer(self, x: int, y: int) -> EisensteinScaled:
        """Multiply by the Eisenstein integer x + y*w."""
        return self * x + self.times_omega() * y

    def in_lattice(self) -> bool:
        return self.a % SCALE == 0 and self.b % SCALE == 0

    def mod_lattice(self) -> EisensteinScaled:
        return EisensteinScaled(self.a % SCALE, self.b % SCALE)

    def lattice_coords(self) -> tuple[int, int]:
        if not self.in_lattice():
            raise ValueError(f"{self} is not a lattice vector")
        return self.a // SCALE, self.b // SCALE

    def __str__(self):
        if self.in_lattice():
            x, y = self.lattice_coords()
            return f"{x}+{y}w"
        return f"({self.a}+{self.b}w)/3"


ZERO = EisensteinScaled(0, 0)
ONE = EisensteinScaled.integer(1)
OMEGA = EisensteinScaled.integer(0, 1)
ETA = EisensteinScaled(2, 1)  # (2 e + e') / 3
TWO_ETA = EisensteinScaled(1, 2)  # (e + 2 e') / 3

Point = tuple[EisensteinScaled, EisensteinScaled, EisensteinScaled]
ORIGIN: Point = (ZERO, ZERO, ZERO)


@dataclass(frozen=True)
class AffineMap:
    """z -> diag(w^rot) z + trans."""

    rot: tuple[int, int, int]
    trans: tuple[EisensteinScaled, EisensteinScaled, EisensteinScaled]

    def __post_init__(self):
        object.__setattr__(self, "rot", tuple(r % 3 for r in self.rot))

    @classmethod
    def identity(cls) -> AffineMap:
        return cls((0, 0, 0), ORIGIN)

    @classmethod
    def translation(cls, t: Sequence[EisensteinScaled]) -> AffineMap:
        return cls((0, 0, 0), tuple(t))

    def __call__(self, z: Point) -> Point:
        return tuple(zi.times_omega(r) + b for zi, r, b in zip(z, self.rot, self.trans))

    def __matmul__(self, other: AffineMap) -> AffineMap:
        """Composition ``self o other``."""
        rot = tuple(r1 + r2 for r1, r2 in zip(self.rot, other.rot))
        trans = tuple(b2.times_omega(r1) + b1 for r1, b1, b2 in zip(self.rot, self.trans, other.trans))
        return AffineMap(rot, trans)

    def inverse(self) -> AffineMap:
        rot = tuple(-r for r in self.rot)
        trans = tuple((-b).times_omega(-r) for r, b in zip(self.rot, self.trans))
        return AffineMap(rot, trans)

    def __pow__(self, k: int) -> AffineMap:
        base = self if k >= 0 else self.inverse()
        out = AffineMap.identity()
        for _ in range(abs(k)):
            out = out @ base
        return out

    def is_identity(self) -> bool:
        return self == AffineMap.identity()

    def is_translation(self) -> bool:
        return self.rot == (0, 0, 0)

    def mod_lattice(self) -> AffineMap:
        return AffineMap(self.rot, tuple(b.mod_lattice() for b in self.trans))

    def equal_mod_lattice(self, other: AffineMap) -> bool:
        return self.mod_lattice() == other.mod_lattice()

    def __str__(self):
        parts = []
        for i, (r, b) in enumerate(zip(self.rot, self.trans), 1):
            lin = f"z{i}" if r == 0 else f"w^{r} z{i}"
            parts.append(f"{lin} + {b}")
        return "(" + ", ".join(parts) + ")"


def _unit(i: int, value: EisensteinScaled) -> tuple:
    t = [ZERO, ZERO, ZERO]
    t[i - 1] = value
    return tuple(t)


@lru_cache(maxsize=None)
def make_generators() -> dict[str, AffineMap]:
    """gamma_i lifting g_i, and the lattice translations t_i, t'_i."""
    gens = {
        "g1": AffineMap((0, 1, 0), (ZERO, TWO_ETA, ETA)),
        "g2": AffineMap((0, 0, 1), (ETA, ZERO, TWO_ETA)),
        "g3": AffineMap((1, 0, 0), (TWO_ETA, ETA, ZERO)),
    }
    for i in (1, 2, 3):
        gens[f"t{i}"] = AffineMap.translation(_unit(i, ONE))
        gens[f"tp{i}"] = AffineMap.translation(_unit(i, OMEGA))
    return gens


GENERATOR_NAMES = ("g1", "g2", "g3", "t1", "t2", "t3", "tp1", "tp2", "tp3")
_ALIASES = {f"gamma{i}": f"g{i}" for i in (1, 2, 3)} | {f"t'{i}": f"tp{i}" for i in (1, 2, 3)}

# -- words ---------------------------------------------------------------------

Letter = tuple[str, int]  # (generator, +1 | -1)

_TOKEN = re.compile(r"\s*(?:(gamma[123]|g[123]|tp[123]|t'[123]|t[123])|(\^)\s*(-?\d+)|(\()|(\))|(\*)|(1))")


def parse_word(text: str) -> list[Letter]:
    """Parse a word such as ``"g1 g2 (t3 tp3)^-1"`` into free-group letters."""
    pos = 0
    stack: list[list[Letter]] = [[]]
    last: list[Letter] | None = None
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordParseError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        name, caret, exp, lpar, rpar, star, one = m.groups()
        if name:
            last = [(_ALIASES.get(name, name), 1)]
            stack[-1].extend(last)
        elif caret:
            if last is None:
                raise WordParseError(f"exponent without a base in {text!r}")
            del stack[-1][len(stack[-1]) - len(last):]
            stack[-1].extend(power(last, int(exp)))
            last = None
        elif lpar:
            stack.append([])
            last = None
        elif rpar:
            if len(stack) == 1:
                raise WordParseError(f"unbalanced parenthesis in {text!r}")
            group = stack.pop()
            stack[-1].extend(group)
            last = group
        else:
            last = None  # '*' separators and the empty word '1'
    if len(stack) != 1:
        raise WordParseError(f"unbalanced parenthesis in {text!r}")
    return free_reduce(stack[0])


def power(word: Sequence[Letter], k: int) -> list[Letter]:
    if k < 0:
        word = invert(word)
        k = -k
    return list(word) * k


def invert(word: Sequence[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(word)]


def free_reduce(word: Iterable[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    parts = []
    for (g, e), run in itertools.groupby(word):
        k = len(list(run)) * e
        parts.append(g if k == 1 else f"{g}^{k}")
    return " ".join(parts)


def evaluate(word: Sequence[Letter] | str) -> AffineMap:
    if isinstance(word, str):
        word = parse_word(word)
    gens = make_generators()
    out = AffineMap.identity()
    for g, e in word:
        out = out @ (gens[g] if e > 0 else gens[g].inverse())
    return out


def verify_relation(lhs: str, rhs: str, mod_lattice: bool = False) -> bool:
    """Compare two words as maps of C^3, or of E^3 when ``mod_lattice``."""
    a, b = evaluate(lhs), evaluate(rhs)
    return a.equal_mod_lattice(b) if mod_lattice else a == b


def relation_suite() -> list[tuple[str, str]]:
    """The commutator, conjugation and cube relations of the lifted action."""
    rels = []
    for i in (1, 2, 3):
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        # gamma_i gamma_j = t_k gamma_j gamma_i = gamma_j gamma_i (t_k t'_k)^-1
        rels.append((f"g{i} g{j}", f"t{k} g{j} g{i}"))
        rels.append((f"g{i} g{j}", f"g{j} g{i} (t{k} tp{k})^-1"))
        # gamma_i^3 = t_{i+2}^2 t'_{i+2}
        rels.append((f"g{i}^3", f"t{k}^2 tp{k}"))
        for m in (1, 2, 3):
            if m == j:
                rels.append((f"g{i} t{m}", f"(t{m} g{i}) t{m}^2 tp{m}"))
                rels.append((f"g{i} t{m}", f"tp{m} t{m}^-1 (t{m} g{i})"))
            else:
                rels.append((f"g{i} t{m}", f"t{m} g{i}"))
    return rels


# -- conjugation of translations -------------------------------------------------


def translation_word(m: AffineMap) -> list[Letter]:
    """Express a lattice translation as t^x t'^y letters, coordinate by coordinate."""
    if not m.is_translation():
        raise PreconditionError("not a translation")
    word: list[Letter] = []
    for i, b in enumerate(m.trans, 1):
        x, y = b.lattice_coords()
        word += power([(f"t{i}", 1)], x) + power([(f"tp{i}", 1)], y)
    return word


def conjugation_table() -> dict[tuple[str, str], list[Letter]]:
    """gamma_i s gamma_i^-1 for every translation generator s, as a translation word."""
    gens = make_generators()
    out = {}
    for i in (1, 2, 3):
        gi = gens[f"g{i}"]
        for s in ("t1", "t2", "t3", "tp1", "tp2", "tp3"):
            conj = gi @ gens[s] @ gi.inverse()
            word = translation_word(conj)
            assert evaluate(word) == conj
            out[(f"g{i}", s)] = word
    return out


# -- fixed points ------------------------------------------------------------------


@dataclass(frozen=True)
class FixedLocus:
    """Fixed points of an affine map acting on E^3.

    ``dimension`` counts coordinates where the map is the identity (each
    contributes a whole curve); ``count`` is the number of isolated choices
    in the remaining coordinates.
    """

    empty: bool
    dimension: int = 0
    count: int = 0
    witness: Point | None = None

    @property
    def everything(self) -> bool:
        return self.dimension == 3


_THIRD_LATTICE = [EisensteinScaled(a, b) for a in range(3) for b in range(3)]


def fixed_locus(m: AffineMap) -> FixedLocus:
    witness = []
    dim = 0
    count = 1
    for r, b in zip(m.rot, m.trans):
        if r == 0:
            if not b.in_lattice():
                return FixedLocus(empty=True)
            dim += 1
            witness.append(ZERO)
            continue
        # w^r z + b = z mod lattice
        sols = [z for z in _THIRD_LATTICE if (z.times_omega(r) + b - z).in_lattice()]
        if not sols:
            raise PreconditionError(f"translation {b} lies outside the 3-torsion range handled here")
        count *= len(sols)
        witness.append(min(sols, key=lambda z: (z != ZERO, z)))
    return FixedLocus(False, dim, count, tuple(witness))


def fixes(m: AffineMap, p: Point) -> bool:
    return all((x - y).in_lattice() for x, y in zip(m(p), p))


def g2_classes() -> list[tuple[tuple[int, int, int], AffineMap]]:
    """The 27 maps gamma1^a gamma2^b gamma3^c, reduced mod the lattice."""
    gens = make_generators()
    out = []
    for a, b, c in itertools.product(range(3), repeat=3):
        m = (gens["g1"] ** a) @ (gens["g2"] ** b) @ (gens["g3"] ** c)
        out.append(((a, b, c), m.mod_lattice()))
    return out


def stabilizer(point: Point, group: Sequence[AffineMap]) -> list[AffineMap]:
    return [m for m in group if fixes(m, point)]
