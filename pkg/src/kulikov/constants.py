"""The concrete groups attached to the Kulikov configuration.

Indices are cyclic on {1, 2, 3}: ``delta(0) is delta(3)``, ``omega(4) is
omega(1)``.  All vectors live in (Z/3)^6 unless stated otherwise.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import GroupHom, GroupVector, Subgroup, kernel_image_intersect, span, vec

# rows grouped in pairs, one pair per elliptic factor
PHI = GroupHom(
    (
        (0, 1, 0, 2, 0, 0),
        (0, 0, 1, 2, 0, 0),
        (0, 0, 1, 0, 2, 0),
        (1, 0, 0, 0, 2, 0),
        (1, 0, 0, 0, 0, 2),
        (0, 1, 0, 0, 0, 2),
    ),
    3,
)

# the (Z/3)^2 Kulikov cover, one column per line D1..D6
PSI = GroupHom(((1, 1, 1, 0, 1, 2), (0, 0, 0, 1, 1, 1)), 3)

# (Z/3)^6 -> (Z/3)^2 with PSI = PSI_TILDE o PHI
PSI_TILDE = GroupHom(((0, 0, 1, 1, 0, 1), (1, 1, 2, 0, 0, 2)), 3)

# the (Z/3)^2 cover of P^1 by the Fermat cubic
CURVE_ETA = vec((1, 2))
CURVE_OMEGA = vec((2, 2))

_COLUMNS = PHI.columns()


def _cyc(i: int) -> int:
    return (i - 1) % 3 + 1


def delta(i: int) -> GroupVector:
    return _COLUMNS[_cyc(i) - 1]


def omega(i: int) -> GroupVector:
    return _COLUMNS[_cyc(i) + 2]


def xi(i: int) -> GroupVector:
    """xi_i = delta_{i-1}^2 omega_i omega_{i+1}."""
    return delta(i - 1) * 2 + omega(i) + omega(i + 1)


def g(i: int) -> GroupVector:
    """Generators of G^2 as printed for the free quotient."""
    return {
        1: vec((0, 0, 1, 0, 1, 2)),
        2: vec((1, 2, 0, 0, 1, 0)),
        3: vec((1, 0, 1, 2, 0, 0)),
    }[_cyc(i)]


def eta_factor(i: int) -> GroupVector:
    """Translation by the 3-torsion point eta on the i-th elliptic factor."""
    coords = [0] * 6
    j = _cyc(i) - 1
    coords[2 * j], coords[2 * j + 1] = CURVE_ETA.coords
    return vec(coords)


@lru_cache(maxsize=None)
def G1() -> Subgroup:
    return PHI.image()


@lru_cache(maxsize=None)
def G2() -> Subgroup:
    return kernel_image_intersect(PSI_TILDE, G1())


@lru_cache(maxsize=None)
def G0() -> Subgroup:
    return span([xi(1), xi(2), xi(3)])


def quotient_example_subgroup() -> Subgroup:
    """H = <w1, xi3^2 w2, xi3 w3>, a subgroup of G^1 with rational quotient."""
    return span([omega(1), xi(3) * 2 + omega(2), xi(3) + omega(3)])


# with this basis hint the quotient coordinates put delta1 at (1,0) and w3 at (0,1)
QUOTIENT_EXAMPLE_HINT = (delta(1), omega(3))
