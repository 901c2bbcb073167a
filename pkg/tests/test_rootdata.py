from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satake_params.dualdata import center_char_group
from satake_params.rootdata import (
    BasedRootDatum,
    RootDatumError,
    dual,
    gl,
    levi_subdatum,
    pair,
    product as P,
    rho,
    semisimple,
    torus,
    weyl_group,
)

# |roots| and |W| for irreducible types, from the classification tables
TABLE = [
    ("A", 1, 2, 2), ("A", 2, 6, 6), ("A", 3, 12, 24), ("A", 4, 20, 120),
    ("B", 2, 8, 8), ("B", 3, 18, 48), ("C", 3, 18, 48), ("D", 4, 24, 192),
    ("G", 2, 12, 12), ("F", 4, 48, 1152),
]


def matrix_closure(d):
    # brute-force Weyl group: close the simple reflections under multiplication
    gens = [tuple(map(tuple, d.reflection_matrix(i))) for i in d.simple]
    n = d.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen, todo = {ident}, [ident]
    while todo:
        m = todo.pop()
        for g in gens:
            p = tuple(tuple(sum(g[i][k] * m[k][j] for k in range(n)) for j in range(n)) for i in range(n))
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


@pytest.mark.parametrize("kind,n,nroots,order", TABLE)
def test_root_counts_and_weyl_orders(kind, n, nroots, order):
    for form in ("adjoint", "sc"):
        d = semisimple(kind, n, form)
        assert len(d.roots) == nroots
        assert len(d.positive) == nroots // 2
        assert weyl_group(d).order == order


@pytest.mark.parametrize("kind,n", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("C", 3)])
def test_weyl_group_matches_matrix_closure(kind, n):
    d = semisimple(kind, n)
    w = weyl_group(d)
    assert set(w.matrices()) == matrix_closure(d)


def test_e6_weyl_order():
    assert weyl_group(semisimple("E", 6)).order == 51840


def test_gl_is_self_dual():
    d = gl(3)
    assert dual(d) == d
    assert len(d.roots) == 6
    assert weyl_group(d).order == 6


def test_dual_swaps_types():
    b3 = semisimple("B", 3)
    c3 = dual(b3)
    assert sorted(map(sorted, c3.cartan_matrix)) == sorted(map(sorted, semisimple("C", 3).cartan_matrix))
    assert dual(c3) == b3


def test_dual_of_adjoint_is_simply_connected():
    # X / Z.roots is trivial for the adjoint form and Z/3 for its dual
    a = semisimple("A", 2, "adjoint")
    assert center_char_group(a).is_trivial()
    assert center_char_group(dual(a)).torsion == (3,)
    assert center_char_group(semisimple("A", 2, "sc")).torsion == (3,)


@pytest.mark.parametrize("kind,n", [("A", 3), ("B", 3), ("G", 2), ("D", 4)])
def test_rho_pairs_to_one_with_simple_coroots(kind, n):
    d = semisimple(kind, n)
    r = rho(d)
    for c in d.simple_coroots:
        assert pair(r.value, c) == 1


def test_rho_of_gl3():
    assert rho(gl(3)).twice == (2, 0, -2)
    assert rho(gl(3)).value == (Fraction(1), Fraction(0), Fraction(-1))


def test_levi_subdatum():
    d = gl(4)
    m = levi_subdatum(d, [0, 2])
    assert len(m.roots) == 4
    assert weyl_group(m).order == 4
    assert len(levi_subdatum(d, []).roots) == 0
    with pytest.raises(RootDatumError):
        levi_subdatum(d, [5])


def test_torus_and_product():
    assert weyl_group(torus(2)).order == 1
    d = P(semisimple("A", 1), semisimple("A", 1))
    assert d.rank == 2
    assert weyl_group(d).order == 4
    assert len(d.components()) == 2


def test_validation_rejects_bad_pairing():
    with pytest.raises(RootDatumError):
        BasedRootDatum(1, ((1,), (-1,)), ((1,), (-1,)), (0,))


def test_json_round_trip():
    d = semisimple("B", 2)
    assert BasedRootDatum.from_json(d.to_json()) == d


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("G", 2), ("C", 2)]), st.data())
def test_weyl_elements_preserve_roots_and_pairings(kn, data):
    d = semisimple(*kn)
    w = weyl_group(d)
    k = data.draw(st.integers(0, w.order - 1))
    m = w.matrix(k)
    roots = set(d.roots)
    images = {tuple(sum(m[i][j] * r[j] for j in range(d.rank)) for i in range(d.rank)) for r in d.roots}
    assert images == roots
    assert w.index_of_matrix(m) == k
    # the word evaluates to the same element
    prod = [[int(i == j) for j in range(d.rank)] for i in range(d.rank)]
    for s in w.word(k):
        r = d.reflection_matrix(d.simple[s])
        prod = [[sum(prod[i][t] * r[t][j] for t in range(d.rank)) for j in range(d.rank)]
                for i in range(d.rank)]
    assert tuple(map(tuple, prod)) == m
