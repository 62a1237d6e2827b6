import random

import numpy as np
import pytest

from hqft import statesum as ss
from hqft.group import build_cyclic, build_product
from hqft.phase import OneCochain, Phase, TwoCocycle, coboundary, klein_cocycle, random_cochain, random_cocycle, \
    zero_cocycle
from hqft.statesum import (BranchedSurface, FlatLabeling, MoveUnavailable, Pairing, SurfaceError, build_genus_g,
                           build_sphere, build_torus, evaluate, move_13, move_22, move_31, reverse_orientation,
                           validate)


def test_torus_valid(klein):
    d = validate(*build_torus(klein, 1, 2))
    assert d.valid and d.genus == 1 and (d.vertices, d.edges, d.faces) == (1, 3, 2)


def test_flatness_violation(s3):
    t, c = s3.index("t0"), s3.index("c")
    with pytest.raises(ValueError):
        build_torus(s3, t, c)
    s, _ = build_torus(s3, 0, 0)
    d = validate(s, FlatLabeling(s3, (t, c), (c, t)))
    assert not d.valid and any(p.kind == "flatness" for p in d.errors)


def test_unpaired_slot(klein):
    s, l = build_torus(klein, 0, 0)
    d = validate(BranchedSurface(s.signs, s.pairings[:2]), l)
    assert not d.valid and any(p.kind == "closedness" for p in d.errors)
    with pytest.raises(SurfaceError):
        evaluate(zero_cocycle(klein), BranchedSurface(s.signs, s.pairings[:2]), l)


def test_zero_cocycle_phase(s3):
    rng = random.Random(0)
    for genus in range(4):
        s, l = build_genus_g(s3, ss.random_handles(s3, genus, rng) if genus else [])
        assert evaluate(zero_cocycle(s3), s, l) == Phase(0)


def test_klein_examples(klein):
    x, y, e = klein.index("x"), klein.index("y"), klein.identity
    t = klein_cocycle(klein)
    assert evaluate(t, *build_torus(klein, x, y)) == Phase(1, 2)
    # hand count: triangles (x, y) and (y, x) with signs +1, -1
    assert t(x, y) - t(y, x) == Phase(1, 2)
    assert evaluate(t, *build_genus_g(klein, [(x, y), (e, e)])) == Phase(1, 2)
    # a second triangulation: other handle order, then a few moves
    s, l = build_genus_g(klein, [(e, e), (x, y)])
    assert evaluate(t, s, l) == Phase(1, 2)
    rng = random.Random(2)
    for _ in range(10):
        s, l, _ = ss.random_move(s, l, rng)
    assert evaluate(t, s, l) == Phase(1, 2)


def test_genus_one_builders_agree(d4):
    rng = random.Random(4)
    t = random_cocycle(d4, 8, 3)
    for a in d4:
        for b in d4:
            if d4.mul(a, b) == d4.mul(b, a):
                assert evaluate(t, *build_torus(d4, a, b)) == evaluate(t, *build_genus_g(d4, [(a, b)]))


def test_sphere(klein):
    assert evaluate(random_cocycle(klein, 8, 2), *build_sphere(klein)) == Phase(0)
    assert validate(*build_sphere(klein)).genus == 0


def test_moves_on_torus(klein):
    t = klein_cocycle(klein)
    s, l = build_torus(klein, klein.index("x"), klein.index("y"))
    s2, l2 = move_13(s, l, 0)
    assert s2.n_triangles == 4 and evaluate(t, s2, l2) == Phase(1, 2)
    s3_, l3 = move_13(s, l, 1, position=0, label=2)
    assert evaluate(t, s3_, l3) == Phase(1, 2)
    # the torus diagonal is the 02 pairing
    diag = next(i for i, p in enumerate(s.pairings) if p.s1 == 2 and p.s2 == 2)
    s4, l4 = move_22(s, l, diag)
    assert evaluate(t, s4, l4) == Phase(1, 2)


def test_31_undoes_13(d4):
    t = random_cocycle(d4, 8, 6)
    s, l = build_genus_g(d4, [(1, 1)])
    before = evaluate(t, s, l)
    s2, l2 = move_13(s, l, 0, label=3)
    new_vertices = ss.degree_three_vertices(s2)
    assert new_vertices
    s3_, l3 = move_31(s2, l2, new_vertices[0])
    assert s3_.n_triangles == s.n_triangles and evaluate(t, s3_, l3) == before


def test_unavailable_moves(klein):
    s, l = build_torus(klein, 0, 0)
    with pytest.raises(MoveUnavailable):
        move_31(s, l, (0, 0))


def test_reverse_orientation(klein):
    s, l = build_torus(klein, 0, 0)
    assert evaluate(random_cocycle(klein, 8, 1), *reverse_orientation(s, l)) == Phase(0)
    x, y = klein.index("x"), klein.index("y")
    tor = build_torus(klein, x, y)
    assert evaluate(klein_cocycle(klein), *reverse_orientation(*tor)) == Phase(1, 2)


def test_reverse_quarter_phase():
    # every closed-surface phase vanishes for a cyclic group, so use Z/4 x Z/4
    g = build_product(build_cyclic(4), build_cyclic(4))
    i = np.arange(16)
    t = TwoCocycle(g, 4, np.outer(i % 4, i // 4))
    tor = build_torus(g, 1, 4)
    assert evaluate(t, *tor) == Phase(1, 4)
    assert evaluate(t, *reverse_orientation(*tor)) == Phase(3, 4)


def test_coboundary_invariance(s3):
    rng = random.Random(9)
    t = random_cocycle(s3, 6, 1)
    b = random_cochain(s3, 8, 2)
    for genus in (1, 2, 3):
        tri = build_genus_g(s3, ss.random_handles(s3, genus, rng))
        assert evaluate(t, *tri) == evaluate(t + coboundary(b), *tri)


def test_flipped_pairing_required_for_polygon(klein):
    s, _ = build_genus_g(klein, [(1, 2), (0, 0)])
    assert any(p.flip for p in s.pairings)


def test_fuzz_small(d4):
    t = random_cocycle(d4, 8, 1)
    cases = ss.pachner_fuzz(t, seed=3, moves=20, cases=40)
    assert all(c.constant for c in cases)
    again = ss.pachner_fuzz(t, seed=3, moves=20, cases=40)
    assert [c.to_json() for c in cases] == [c.to_json() for c in again]
    att = sum(c.attempted for c in cases)
    assert sum(c.skipped for c in cases) / att < 0.5


def test_disjoint_union_adds(klein):
    t = klein_cocycle(klein)
    x, y = klein.index("x"), klein.index("y")
    a = build_torus(klein, x, y)
    both = ss.disjoint_union(a, a)
    d = validate(*both)
    assert d.components == 2 and evaluate(t, *both) == Phase(0)


def test_bad_pairing_rejected(klein):
    s = BranchedSurface((1, -1), (Pairing(0, 0, 1, 0), Pairing(0, 1, 1, 1), Pairing(0, 2, 1, 2, True)))
    l = FlatLabeling(klein, (0, 0), (0, 0))
    assert not validate(s, l).valid
