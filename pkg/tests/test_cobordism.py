import random

import numpy as np
import pytest

from hqft.cobordism import (BoundaryMismatch, Compose, Gen, GSurface, Interpreter, ParseError, Tensor, compose,
                            evaluate, genus_surface_expr, invariant_closed, parse, surface_from_json, to_text,
                            typecheck)
from hqft.crossed import from_cocycle, group_algebra
from hqft.generate import random_expr, random_signature
from hqft.group import build_cyclic
from hqft.oracles import torus_trace
from hqft.phase import klein_cocycle, random_cocycle, zero_cocycle


def test_parse_examples(klein):
    assert parse("id[e]", klein) == Gen("id", (0,))
    x, y = klein.index("x"), klein.index("y")
    assert parse("counit . mult[x,y]", klein) == Compose(Gen("counit"), Gen("mult", (x, y)))
    with pytest.raises(ParseError) as exc:
        parse("mult[x", klein)
    assert exc.value.line == 1 and exc.value.col >= 6


def test_parse_errors(klein):
    for bad in ("mult[q,e]", "frob[e]", "id[e] .", "(id[e]", "id[e,e]", "id[e] $"):
        with pytest.raises(ParseError):
            parse(bad, klein)


def test_precedence_and_indices(klein):
    e = parse("mult[1,2] . id[1] * id[2]", klein)
    assert e == Compose(Gen("mult", (1, 2)), Tensor(Gen("id", (1,)), Gen("id", (2,))))
    assert parse("act[x; y]", klein) == Gen("act", (klein.index("x"), klein.index("y")))


def test_round_trip_text(s3):
    rng = random.Random(3)
    for _ in range(50):
        e = random_expr(s3, random_signature(s3, rng), 2, rng)
        assert parse(to_text(e, s3), s3) == e


def test_typecheck_examples(klein, s3):
    x = klein.index("x")
    assert typecheck(Gen("id", (x,)), klein) == ((x,), (x,))
    assert typecheck(compose(Gen("counit"), Gen("mult", (x, klein.inv(x)))), klein) == ((x, x), ())
    y = klein.index("y")
    with pytest.raises(BoundaryMismatch):
        typecheck(compose(Gen("counit"), Gen("mult", (x, y))), klein)
    c = s3.index("c")
    ci = s3.inv(c)
    loop = compose(Gen("pair", (ci,)), Gen("swap", (c, ci)), Gen("copair", (c,)))
    assert typecheck(loop, s3) == ((), ())


def test_mismatch_position(klein):
    x, y = klein.index("x"), klein.index("y")
    with pytest.raises(BoundaryMismatch) as exc:
        typecheck(compose(Gen("mult", (x, y)), Tensor(Gen("id", (x,)), Gen("id", (x,)))), klein)
    assert exc.value.position == 1


def test_evaluate_identity_exact(d4):
    v = from_cocycle(random_cocycle(d4, 8, 1))
    for a in d4:
        assert np.array_equal(evaluate(Gen("id", (a,)), v), np.eye(1))


def test_compose_is_product(s3):
    v = from_cocycle(random_cocycle(s3, 6, 2))
    interp = Interpreter(v)
    rng = random.Random(5)
    for _ in range(30):
        e1 = random_expr(s3, random_signature(s3, rng), 1, rng)
        e2 = random_expr(s3, typecheck(e1, s3)[1], 1, rng)
        assert np.allclose(interp(Compose(e2, e1)), interp(e2) @ interp(e1), atol=1e-12)


def test_group_algebra_mult(z2):
    M = evaluate(Gen("mult", (1, 1)), group_algebra(z2))
    assert M.shape == (1, 1) and M[0, 0] == 1


def test_genus_zero_and_one():
    triv = build_cyclic(1)
    v = group_algebra(triv)
    assert genus_surface_expr(GSurface(triv, ())) == Compose(Gen("counit"), Gen("unit"))
    assert invariant_closed(v, GSurface(triv, ())) == 1
    assert invariant_closed(v, GSurface(triv, ((0, 0),))) == pytest.approx(1)


def test_z2_torus_values(z2):
    v = group_algebra(z2)
    # fixed holonomy (e, e): one sector, value dim V_e
    assert invariant_closed(v, GSurface(z2, ((0, 0),))) == pytest.approx(1)
    # summing over the second holonomy gives 2
    total = sum(invariant_closed(v, GSurface(z2, ((0, b),))) for b in z2)
    assert total == pytest.approx(2)
    for a in z2:
        for b in z2:
            assert invariant_closed(v, GSurface(z2, ((a, b),))) == pytest.approx(torus_trace(v, a, b))


def test_klein_torus(klein):
    x, y = klein.index("x"), klein.index("y")
    s = GSurface(klein, ((x, y),))
    assert invariant_closed(from_cocycle(klein_cocycle(klein)), s) == pytest.approx(-1)
    assert invariant_closed(from_cocycle(zero_cocycle(klein)), s) == pytest.approx(1)


def test_zero_cocycle_any_surface(s3):
    v = from_cocycle(zero_cocycle(s3))
    rng = random.Random(1)
    from hqft.statesum import random_handles
    for genus in (1, 2, 3):
        s = GSurface(s3, tuple(random_handles(s3, genus, rng)))
        assert invariant_closed(v, s) == pytest.approx(1)


def test_surface_validation(s3, klein):
    t, c = s3.index("t0"), s3.index("c")
    with pytest.raises(ValueError):
        GSurface(s3, ((t, c),))
    s = surface_from_json({"genus": 2, "handles": [["x", "y"], [0, 0]]}, klein)
    assert s.genus == 2
    with pytest.raises(ValueError):
        surface_from_json({"genus": 3, "handles": [["x", "y"]]}, klein)


def test_frobenius_snake_higher_rank(klein):
    from hqft.acceptance import _frobenius_snake
    from hqft.crossed import change_basis, direct_sum, random_basis_change
    v = direct_sum(from_cocycle(klein_cocycle(klein)), group_algebra(klein))
    v = change_basis(v, random_basis_change(v, np.random.default_rng(7)))
    assert _frobenius_snake(Interpreter(v), klein) <= 1e-9
