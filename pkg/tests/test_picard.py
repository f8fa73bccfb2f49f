import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kulikov.cover import bicanonical_table, load_spec, tangent_table
from kulikov.errors import DimensionError
from kulikov.picard import (
    PicLattice,
    chi_cotangent_twist,
    chi_line_bundle,
    chi_log_rank2,
    cohomology,
    h0,
    h1,
    h2,
    parse_class,
    reduce_to_nef,
)
from kulikov.report import data_path


def monomial_h0(d, mults):
    """h^0(dH - sum m_i E_i) for r <= 3, using the coordinate points.

    A monomial x^a y^b z^c has order d - a at [1:0:0] (and so on), and
    distinct monomials stay independent, so counting them is exact.
    """
    if d < 0:
        return 0
    m = [max(x, 0) for x in mults] + [0] * (3 - len(mults))
    count = 0
    for a in range(d + 1):
        for b in range(d + 1 - a):
            c = d - a - b
            if d - a >= m[0] and d - b >= m[1] and d - c >= m[2]:
                count += 1
    return count


def test_lattice_basics():
    lat = PicLattice(3)
    assert lat.K == lat.cls((-3, 1, 1, 1))
    assert lat.K.dot(lat.K) == 6
    assert lat.H.dot(lat.H) == 1
    assert lat.E(2).dot(lat.E(2)) == -1
    assert lat.euler_number == 6


def test_lattice_rejects_large_r():
    with pytest.raises(DimensionError):
        PicLattice(9)
    with pytest.raises(DimensionError):
        PicLattice(2).E(3)


@pytest.mark.parametrize("r,count", [(0, 0), (1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)])
def test_minus_one_curve_counts(r, count):
    lat = PicLattice(r)
    curves = lat.negative_curves
    assert len(curves) == count
    for c in curves:
        assert c.dot(c) == -1
        assert c.dot(lat.K) == -1


def test_pretty_and_parse_round_trip():
    lat = PicLattice(3)
    for coeffs in itertools.product(range(-2, 3), repeat=4):
        d = lat.cls(coeffs)
        assert parse_class(d.pretty(), lat) == d
    assert lat.cls((2, 0, -1, -1)).pretty() == "2H - E2 - E3"
    assert lat.zero.pretty() == "0"
    assert lat.parse("-3H + E1 + E2 + E3") == lat.K


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_class("2H + X", PicLattice(1))
    with pytest.raises(DimensionError):
        parse_class("H - E4", PicLattice(3))


def test_chi_line_bundle_values():
    lat = PicLattice(0)
    for d in range(0, 6):
        assert chi_line_bundle(lat.H * d) == (d + 1) * (d + 2) // 2
    assert chi_line_bundle(PicLattice(3).zero) == 1


@pytest.mark.parametrize("coeffs", list(itertools.product(range(-2, 5), range(-2, 3), range(-2, 3), range(-2, 3))))
def test_h0_matches_monomial_count(coeffs):
    lat = PicLattice(3)
    d = lat.cls(coeffs)
    assert h0(d) == monomial_h0(coeffs[0], [-m for m in coeffs[1:]])


def test_reduce_strips_fixed_curves():
    lat = PicLattice(3)
    red = reduce_to_nef(lat.parse("H + E1"))
    assert red.nef_part == lat.H
    assert red.fixed == ((lat.E(1), 1),)
    assert reduce_to_nef(lat.parse("-H")).nef_part is None


def test_cohomology_small_cases():
    lat = PicLattice(3)
    assert cohomology(lat.zero) == (1, 0, 0)
    assert cohomology(lat.K) == (0, 0, 1)
    assert cohomology(lat.parse("-H + E1")) == (0, 0, 0)
    assert cohomology(lat.parse("-2H")) == (0, 0, 0)
    assert h1(lat.parse("-E1 - E2")) == 1


ints = st.integers(-6, 6)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 8).flatmap(lambda r: st.lists(ints, min_size=r + 1, max_size=r + 1)))
def test_serre_duality_and_riemann_roch(coeffs):
    lat = PicLattice(len(coeffs) - 1)
    d = lat.cls(coeffs)
    a, b, c = cohomology(d)
    assert a - b + c == chi_line_bundle(d)
    assert min(a, b, c) >= 0
    assert h2(d) == h0(lat.K - d)
    assert h1(d) == h1(lat.K - d)


def _table_classes():
    spec = load_spec(data_path("kulikov.json"))
    out = []
    for row in tangent_table(spec) + bicanonical_table(spec):
        out += [row.A, row.L, row.delta_sum]
    return out


@pytest.mark.parametrize("d", _table_classes(), ids=lambda d: d.pretty())
def test_serre_identity_on_table_classes(d):
    a, b, c = cohomology(d)
    assert a - b + c == chi_line_bundle(d)


def test_chi_cotangent_plane():
    # chi(Omega_P2) = -1 and chi(Omega_P2(1)) = 0
    lat = PicLattice(0)
    assert chi_cotangent_twist(lat.zero) == -1
    assert chi_cotangent_twist(lat.H) == 0
    assert chi_cotangent_twist(lat.H * 2) == 3


def test_chi_log_residue_sum():
    lat = PicLattice(0)
    line = lat.H
    # Omega(log L) on P2 with one line: chi = chi(Omega) + chi(O_L) = -1 + 1
    assert chi_log_rank2(lat.zero, [line]) == 0
    assert chi_log_rank2(lat.zero, [line, line, line]) == 2
