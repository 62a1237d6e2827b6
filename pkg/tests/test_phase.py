from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hqft.group import build_cyclic, build_product, dihedral_group_4
from hqft.phase import (Cyclotomic, OneCochain, Phase, TwoCocycle, coboundary, cocycle_from_json,
                        cocycle_to_json, cohomologous, is_cocycle, klein_cocycle, normalize, random_cochain,
                        random_cocycle, to_complex, zero_cocycle)


def test_phase_arithmetic():
    assert Phase(3, 4) + Phase(1, 2) == Phase(1, 4)
    assert -Phase(1, 3) == Phase(2, 3)
    assert Phase(2, 4) == Phase(1, 2)
    assert Phase(5, 8) * 2 == Phase(1, 4)
    assert Phase(7, 7) == Phase(0)


def test_to_complex():
    assert to_complex(Phase(0)) == 1.0
    assert to_complex(Phase(1, 2)) == -1.0
    assert abs(to_complex(Phase(1, 4)) - 1j) <= 1e-15
    assert abs(to_complex(Phase(1, 3)) - np.exp(2j * np.pi / 3)) <= 1e-15


def test_cyclotomic_zero_test():
    z3 = Cyclotomic.root(Phase(1, 3))
    one = Cyclotomic.root(Phase(0))
    assert (one + z3 + z3 * z3).is_zero()
    assert not (one + z3).is_zero()
    assert Cyclotomic.root(Phase(1, 4)) * Cyclotomic.root(Phase(1, 4)) == -one
    assert complex(Cyclotomic({Phase(1, 2): Fraction(3)})) == -3


def test_is_cocycle_examples(klein):
    assert is_cocycle(zero_cocycle(klein))
    assert is_cocycle(coboundary(random_cochain(klein, 8, 3)))
    t = klein_cocycle(klein)
    assert is_cocycle(t)
    bad = TwoCocycle(klein, 2, np.eye(4, dtype=int) * 0 + np.array([[0, 1, 0, 0]] + [[0] * 4] * 3))
    assert not is_cocycle(bad)


def test_coboundary_examples(z2):
    assert coboundary(OneCochain(z2, 3, [0, 0])) == zero_cocycle(z2)
    d = coboundary(OneCochain(z2, 4, [0, 1]))
    assert d(1, 1) == Phase(1, 2)


def test_normalize_examples(z2, klein):
    t = random_cocycle(klein, 4, 5)
    cert = normalize(cert_in := normalize(t).normalized)
    assert cert.normalized == cert_in and not cert.shift.values.any()
    b = OneCochain(z2, 5, [2, 3])
    out = normalize(coboundary(b)).normalized
    assert out.is_normalized()
    k = klein_cocycle(klein)
    assert normalize(k).normalized == k


def test_cohomologous_examples(z2, klein):
    t = random_cocycle(klein, 8, 11)
    b0 = random_cochain(klein, 6, 2)
    beta = cohomologous(t + coboundary(b0), t)
    assert beta is not None and coboundary(beta) == coboundary(b0)

    half = TwoCocycle(z2, 2, [[0, 0], [0, 1]])
    beta = cohomologous(half, zero_cocycle(z2))
    assert beta is not None and beta(1) in (Phase(1, 4), Phase(3, 4)) and beta(0) == Phase(0)
    assert cohomologous(half, zero_cocycle(z2), max_denominator_factor=1) is None

    assert cohomologous(klein_cocycle(klein), zero_cocycle(klein)) is None


def test_s3_cohomology_trivial(s3):
    for seed in range(5):
        t = random_cocycle(s3, 6, seed)
        assert cohomologous(t, zero_cocycle(s3)) is not None


def test_random_cocycle_determinism(d4):
    a, b = random_cocycle(d4, 8, 42), random_cocycle(d4, 8, 42)
    assert np.array_equal(a.values, b.values) and is_cocycle(a)
    assert random_cocycle(build_cyclic(1), 8, 3) == zero_cocycle(build_cyclic(1))
    with pytest.raises(ValueError):
        random_cocycle(d4, 65, 0)


def test_json_round_trip(klein):
    t = random_cocycle(klein, 6, 1)
    assert cocycle_from_json(cocycle_to_json(t)) == t


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.integers(1, 8), st.integers(0, 10 ** 6))
def test_delta_squared_zero(n, den, seed):
    g = build_product(build_cyclic(n), build_cyclic(2))
    assert is_cocycle(coboundary(random_cochain(g, den, seed)))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 10 ** 6))
def test_solver_finds_planted_coboundaries(d1, d2, seed):
    g = dihedral_group_4()
    t = random_cocycle(g, d1, seed)
    b = random_cochain(g, d2, seed + 1)
    beta = cohomologous(t, t + coboundary(b))
    assert beta is not None and coboundary(beta) == -coboundary(b)
