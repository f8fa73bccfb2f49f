import cmath
import itertools

import pytest

from kulikov.eisenstein import (
    ETA,
    ONE,
    ORIGIN,
    TWO_ETA,
    ZERO,
    AffineMap,
    EisensteinScaled,
    conjugation_table,
    evaluate,
    fixed_locus,
    fixes,
    format_word,
    free_reduce,
    g2_classes,
    invert,
    make_generators,
    parse_word,
    relation_suite,
    stabilizer,
    verify_relation,
)
from kulikov.errors import PreconditionError, WordParseError

W = cmath.exp(2j * cmath.pi / 3)


def to_complex(x: EisensteinScaled) -> complex:
    return (x.a + x.b * W) / 3


def numeric(m: AffineMap):
    rot = [W**r for r in m.rot]
    trans = [to_complex(b) for b in m.trans]
    return lambda z: [r * zi + t for r, zi, t in zip(rot, z, trans)]


def test_scaled_arithmetic():
    assert ETA + TWO_ETA == EisensteinScaled.integer(1, 1)
    assert ETA.times_omega() == ETA - ONE
    assert ETA.times_omega().mod_lattice() == ETA
    assert TWO_ETA.times_omega().mod_lattice() == TWO_ETA
    assert (ETA * 3).in_lattice()
    assert not ETA.in_lattice()


def test_times_omega_matches_complex():
    for a, b in itertools.product(range(-4, 5), repeat=2):
        x = EisensteinScaled(a, b)
        assert abs(to_complex(x.times_omega()) - W * to_complex(x)) < 1e-12
        assert x.times_omega(3) == x


def test_composition_matches_complex():
    gens = make_generators()
    z = [0.3 + 0.1j, -0.7 + 0.2j, 1.1 - 0.4j]
    for a, b in itertools.product(gens.values(), repeat=2):
        lhs = numeric(a @ b)(z)
        rhs = numeric(a)(numeric(b)(z))
        assert all(abs(x - y) < 1e-12 for x, y in zip(lhs, rhs))


def test_inverse_and_power():
    for m in make_generators().values():
        assert (m @ m.inverse()).is_identity()
        assert (m ** -2) @ (m ** 2) == AffineMap.identity()


def test_generator_cubes_are_translations():
    for name in ("g1", "g2", "g3"):
        assert (make_generators()[name] ** 3).is_translation()


def test_parse_word_grammar():
    assert parse_word("g1 g2^-1") == [("g1", 1), ("g2", -1)]
    assert parse_word("gamma1*t'2") == [("g1", 1), ("tp2", 1)]
    assert parse_word("(t3 tp3)^-1") == [("tp3", -1), ("t3", -1)]
    assert parse_word("1") == []
    assert parse_word("t1^3") == [("t1", 1)] * 3
    with pytest.raises(WordParseError):
        parse_word("g4")
    with pytest.raises(WordParseError):
        parse_word("(g1")


def test_word_helpers():
    w = parse_word("g1 t2 tp3^-1")
    assert free_reduce(w + invert(w)) == []
    assert parse_word(format_word(w)) == w


def test_relation_suite_holds_exactly():
    suite = relation_suite()
    assert len(suite) == 21
    for lhs, rhs in suite:
        assert verify_relation(lhs, rhs), (lhs, rhs)


def test_relation_suite_numerically():
    z = [0.21 + 0.37j, -0.5 + 0.11j, 0.9 - 0.3j]
    for lhs, rhs in relation_suite():
        a, b = numeric(evaluate(lhs))(z), numeric(evaluate(rhs))(z)
        assert all(abs(x - y) < 1e-9 for x, y in zip(a, b))


def test_false_relation_detected():
    assert not verify_relation("g1 g2", "g2 g1")
    assert verify_relation("g1 g2", "g2 g1", mod_lattice=True)


def test_conjugation_examples():
    table = conjugation_table()
    assert format_word(table[("g1", "t2")]) == "tp2"
    assert evaluate(table[("g1", "tp2")]) == evaluate("t2^-1 tp2^-1")
    assert evaluate(table[("g1", "t3")]) == evaluate("t3")


def test_g2_classes_distinct():
    classes = g2_classes()
    assert len(classes) == 27
    assert len({m for _, m in classes}) == 27


def test_fixed_locus_shapes():
    gens = make_generators()
    # a single gamma_i translates two factors by 3-torsion: no fixed points
    for name in ("g1", "g2", "g3"):
        assert fixed_locus(gens[name]).empty
    assert fixed_locus(AffineMap.identity()).everything
    assert fixed_locus(gens["t1"]).dimension == 3


def test_fixed_points_of_full_rotations():
    """Rotating every factor gives 3 fixed points per factor."""
    for exps, m in g2_classes():
        loc = fixed_locus(m)
        if all(exps):
            assert loc.count == 27 and not loc.empty
            assert fixes(m, loc.witness)


def test_fixed_locus_outside_torsion_range():
    m = AffineMap((1, 0, 0), (ETA, ZERO, ZERO))
    assert fixed_locus(m).count == 3
    # the fixed point of z -> w z + 1/3 is a 9-torsion point
    bad = AffineMap((1, 0, 0), (EisensteinScaled(1, 0), ZERO, ZERO))
    with pytest.raises(PreconditionError):
        fixed_locus(bad)


def test_stabilizers():
    group = [m for _, m in g2_classes()]
    assert len(stabilizer(ORIGIN, group)) == 3
    # (0, 0, eta) is fixed by the same two nontrivial classes as the origin
    assert len(stabilizer((ZERO, ZERO, ETA), group)) == 3
    assert len(stabilizer((EisensteinScaled(1, 0), ZERO, ZERO), group)) == 1
