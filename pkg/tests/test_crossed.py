import numpy as np
import pytest

from hqft.crossed import (AXIOMS, CrossedAlgebra, DegenerateFormError, algebra_from_json, algebra_to_json,
                          change_basis, direct_sum, dual_bases, from_cocycle, group_algebra, intertwiner_residual,
                          random_basis_change, rescaling, restrict_to_point, verify)
from hqft.group import build_cyclic
from hqft.phase import (OneCochain, TwoCocycle, coboundary, klein_cocycle, random_cochain, random_cocycle,
                        to_complex, zero_cocycle)


def test_zero_cocycle_structure(s3):
    v = from_cocycle(zero_cocycle(s3)).numeric()
    for (a, b), m in v.mult.items():
        assert m.shape == (1, 1, 1) and m[0, 0, 0] == 1
    for (b, a), p in v.phi.items():
        assert p[0, 0] == 1
    ga = group_algebra(s3)
    for k in v.mult:
        assert np.array_equal(ga.mult[k], v.mult[k])
    for k in v.phi:
        assert np.array_equal(ga.phi[k], v.phi[k])
    for k in v.eta:
        assert np.array_equal(ga.eta[k], v.eta[k])


def test_klein_action_sign(klein):
    v = from_cocycle(klein_cocycle(klein)).numeric()
    x, y = klein.index("x"), klein.index("y")
    assert v.phi[x, y][0, 0] == -1
    rep = verify(from_cocycle(klein_cocycle(klein)), 0.0)
    assert rep.passed and rep.residual == 0


@pytest.mark.parametrize("seed", range(4))
def test_exact_verify_random(s3, d4, seed):
    for g in (s3, d4):
        rep = verify(from_cocycle(random_cocycle(g, 8, seed)), 0.0)
        assert rep.passed and rep.residual == 0
        assert [c.name for c in rep.checks] == list(AXIOMS)


def test_unnormalized_input_is_accepted(klein):
    t = random_cocycle(klein, 4, 3) + coboundary(OneCochain(klein, 4, [1, 1, 1, 1]))
    assert not t.is_normalized()
    assert verify(from_cocycle(t), 0.0).passed


def test_group_algebras(z2, d4):
    assert verify(group_algebra(z2)).passed
    assert verify(group_algebra(d4), 1e-9).passed
    triv = group_algebra(build_cyclic(1))
    assert triv.dims == (1,) and triv.counit(triv.unit) == 1


def test_zeroed_eta_fails_nondegenerate(s3):
    v = group_algebra(s3)
    v.eta[3][0, 0] = 0
    rep = verify(v)
    check = rep["eta-nondegenerate"]
    assert not rep.passed and not check.passed and check.witness == (3,)
    with pytest.raises(DegenerateFormError) as exc:
        dual_bases(v)
    assert exc.value.element == 3


def test_broken_associativity_has_witness(klein):
    v = group_algebra(klein)
    v.mult[1, 2][0, 0, 0] = 2
    rep = verify(v)
    assert not rep["associativity"].passed and rep["associativity"].witness is not None
    assert rep["associativity"].residual == pytest.approx(1.0)


def test_dual_bases_rank_one(d4):
    t = random_cocycle(d4, 8, 9)
    v = from_cocycle(t)
    duals = dual_bases(v)
    for a in d4:
        ai = d4.inv(a)
        # f^{a^-1} = exp(-2 pi i theta(a, a^-1)) v_{a^-1}
        assert abs(duals.duals[a][0, 0] - to_complex(-t(a, ai))) <= 1e-12
    assert duals.pairing_residual(v) <= 1e-12


def test_dual_bases_identity_eta(klein):
    duals = dual_bases(group_algebra(klein))
    assert all(np.allclose(d, np.eye(1)) for d in duals.duals.values())


def test_restrict_to_point(z2, klein):
    t = random_cocycle(klein, 8, 4)
    p = restrict_to_point(from_cocycle(t))
    assert p.dim == 1 and p.counit_of_unit == 1 and p.normalised
    assert restrict_to_point(group_algebra(z2)).dim == 1
    b = random_cochain(klein, 8, 5)
    b = OneCochain(klein, 8, b.values - b.values[0])
    q = restrict_to_point(from_cocycle(t + coboundary(b)))
    assert np.allclose(p.mult, q.mult) and np.allclose(p.eta, q.eta)


def test_rescaling_isomorphism(d4):
    t = random_cocycle(d4, 6, 2)
    b = random_cochain(d4, 8, 3)
    b = OneCochain(d4, 8, b.values - b.values[d4.identity])
    assert intertwiner_residual(from_cocycle(t), from_cocycle(t + coboundary(b)), rescaling(b)) <= 1e-12


def test_higher_rank_algebra(klein):
    v = direct_sum(from_cocycle(klein_cocycle(klein)), group_algebra(klein))
    T = random_basis_change(v, np.random.default_rng(1))
    w = change_basis(v, T)
    assert w.dims == (2, 2, 2, 2)
    assert verify(w, 1e-9).passed
    assert intertwiner_residual(v, w, T) <= 1e-12


def test_shape_validation(z2):
    with pytest.raises(ValueError):
        CrossedAlgebra(z2, (1, 1), [1], {(0, 0): np.ones((2, 1, 1))}, {}, {})
    with pytest.raises(ValueError):
        CrossedAlgebra(z2, (1,), [1], {}, {}, {})


def test_json_round_trip(d4):
    v = from_cocycle(random_cocycle(d4, 8, 1))
    w = algebra_from_json(algebra_to_json(v))
    n = v.numeric()
    assert all(np.allclose(n.mult[k], w.mult[k]) for k in n.mult)
    assert all(np.allclose(n.phi[k], w.phi[k]) for k in n.phi)
    assert verify(w, 1e-9).passed
