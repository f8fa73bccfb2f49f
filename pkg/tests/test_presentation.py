import json
import random

import pytest

from kulikov.eisenstein import evaluate, parse_word
from kulikov.errors import NotAHomomorphismError, PreconditionError, WordParseError
from kulikov.presentation import (
    CosetTable,
    Presentation,
    SIGMA_MAPS,
    abelianization,
    coset_table_from_hom,
    gamma_presentation,
    is_normal_kernel,
    reidemeister_schreier,
    schreier_element,
    schreier_transversal,
    sigma_subgroup,
)


@pytest.fixture(scope="module")
def gamma():
    return gamma_presentation()


def test_relator_families_present(gamma):
    assert len(gamma.generators) == 9
    assert len(gamma.relators) >= 15 + 12 + 3 + 3
    for r in gamma.relators:
        assert evaluate(list(r)).is_identity()


def test_gamma_abelianization(gamma):
    ab = abelianization(gamma)
    assert (ab.free_rank, ab.torsion) == (0, (3, 3, 3))
    assert str(ab) == "Z/3 + Z/3 + Z/3"


def test_translations_die_in_abelianization(gamma):
    """Adding t_j = 1 and t'_j = 1 does not change the abelianization."""
    extra = Presentation.from_strings(gamma.generators, ["t1", "t2", "t3", "tp1", "tp2", "tp3"])
    both = Presentation(gamma.generators, gamma.relators + extra.relators)
    assert abelianization(both) == abelianization(gamma)


def test_free_abelianization():
    p = Presentation.from_strings(("t1", "t2"), [])
    ab = abelianization(p)
    assert ab.free_rank == 2 and ab.torsion == ()
    assert str(ab) == "Z^2"


def test_abelianization_independent_of_order(gamma):
    rng = random.Random(3)
    rels = list(gamma.relators)
    ref = abelianization(gamma)
    for _ in range(3):
        rng.shuffle(rels)
        assert abelianization(Presentation(gamma.generators, tuple(rels))) == ref
    gens = list(gamma.generators)
    rng.shuffle(gens)
    assert abelianization(Presentation(tuple(gens), gamma.relators)) == ref


def test_presentation_rejects_unknown_letters():
    with pytest.raises(WordParseError):
        Presentation(("g1",), ((("g2", 1),),))


def test_presentation_json(gamma):
    data = json.loads(gamma.dumps())
    assert data["generators"] == list(gamma.generators)
    again = Presentation.from_strings(data["generators"], data["relators"])
    assert again.relators == gamma.relators


def test_coset_table_sigma1(gamma):
    table = coset_table_from_hom(gamma, {"g3": 1})
    assert table.size == 3
    assert table.is_permutation_table()
    assert table.is_consistent(gamma)
    assert table.trace(0, parse_word("g3^3")) == 0
    assert table.trace(0, parse_word("g3")) != 0
    assert table.trace(0, parse_word("t1 g1 t2 g2 t3")) == 0


def test_trivial_hom_gives_one_coset(gamma):
    table = coset_table_from_hom(gamma, {})
    assert table.size == 1


def test_non_homomorphism_rejected(gamma):
    with pytest.raises(NotAHomomorphismError):
        coset_table_from_hom(gamma, {"t1": 1})


def test_incomplete_table_rejected(gamma):
    bad = CosetTable(3, {g: (0, 1, 2) for g in gamma.generators[:-1]})
    with pytest.raises(PreconditionError):
        reidemeister_schreier(gamma, bad)


@pytest.mark.parametrize("name", sorted(SIGMA_MAPS))
def test_sigma_homology(gamma, name):
    table, sub = sigma_subgroup(name)
    assert len(sub.generators) == 3 * 9 - 2
    ab = abelianization(sub)
    assert (ab.free_rank, ab.torsion) == (2, (3, 3))
    assert is_normal_kernel(gamma, table, prefer=tuple(SIGMA_MAPS[name]))


def test_transversal_uses_preferred_generator(gamma):
    table = coset_table_from_hom(gamma, {"g3": 1})
    reps = schreier_transversal(table, prefer=("g3",))
    assert reps == {0: [], 1: [("g3", 1)], 2: [("g3", 1), ("g3", 1)]}


def test_schreier_elements_lie_in_subgroup(gamma):
    table, sub = sigma_subgroup("sigma1")
    reps = schreier_transversal(table, prefer=("g3",))
    for s in sub.generators:
        assert table.trace(0, schreier_element(s, table, reps)) == 0


def test_index_one_is_identity_on_homology(gamma):
    table = coset_table_from_hom(gamma, {})
    sub = reidemeister_schreier(gamma, table)
    assert abelianization(sub) == abelianization(gamma)
    assert len(sub.generators) == 9
