import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hqft.group import (GroupError, build_cyclic, build_from_table, build_permutation_group, build_product,
                        group_arithmetic, group_from_json, group_to_json, surface_relation_holds)


def test_trivial_group():
    g = build_cyclic(1)
    assert g.order == 1 and g.identity == 0 and g.inverse.tolist() == [0]


def test_cyclic_tables():
    assert build_cyclic(4).cayley[1][3] == 0
    assert build_cyclic(2).inverse[1] == 1


def test_product_klein():
    k = build_product(build_cyclic(2), build_cyclic(2))
    assert k.order == 4 and k.is_abelian()
    assert all(k.element_order(a) <= 2 for a in k)


def test_product_with_trivial_is_same_table():
    g = build_cyclic(5)
    assert np.array_equal(build_product(build_cyclic(1), g).cayley, g.cayley)


def test_product_element_order_six():
    g = build_product(build_cyclic(2), build_cyclic(3))
    assert g.element_order(1 * 3 + 1) == 6


def test_from_table_valid_and_errors():
    build_from_table([[0, 1], [1, 0]])
    with pytest.raises(GroupError, match="no inverse for element 1"):
        build_from_table([[0, 1], [1, 1]])
    with pytest.raises(GroupError) as exc:
        build_from_table([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    assert exc.value.axiom == "associativity" and len(exc.value.witness) == 3
    with pytest.raises(ValueError):
        build_from_table([[0, 1], [1]])


def test_s3_table_nonabelian(s3):
    again = build_from_table(s3.cayley.tolist(), s3.names)
    assert not again.is_abelian()
    assert any(again.cayley[a][b] != again.cayley[b][a] for a in again for b in again)


def test_arithmetic(klein, s3):
    for a, b in itertools.product(klein, klein):
        assert group_arithmetic(klein, "conjugate", b, a) == a
    for a in s3:
        assert group_arithmetic(s3, "commutator", a, a) == s3.identity
    t, c = s3.index("t0"), s3.index("c")
    assert group_arithmetic(s3, "conjugate", t, c) == s3.inv(c)
    with pytest.raises(ValueError):
        group_arithmetic(s3, "power", c)


def test_surface_relation(klein, s3):
    assert surface_relation_holds(s3, [])
    assert surface_relation_holds(klein, [(1, 2), (3, 3), (2, 1)])
    t, c = s3.index("t0"), s3.index("c")
    assert s3.comm(t, c) != s3.identity
    assert not surface_relation_holds(s3, [(t, c)])


def test_permutation_group_matches_s3(s3):
    perms = list(itertools.permutations(range(3)))
    g = build_permutation_group(perms)
    assert g.order == 6 and not g.is_abelian()


def test_json_round_trip(d4):
    assert group_from_json(group_to_json(d4)) == d4


def test_order_limit():
    with pytest.raises(ValueError):
        build_cyclic(65)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(1, 5))
def test_products_are_groups(n, m):
    g = build_product(build_cyclic(n), build_cyclic(m))
    g.check(*range(g.order))
    for a, b, x in itertools.islice(itertools.product(g, g, g), 200):
        assert g.mul(g.mul(a, b), x) == g.mul(a, g.mul(b, x))
