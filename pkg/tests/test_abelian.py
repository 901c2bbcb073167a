import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satake_params.abelian import (
    FinAbGroup,
    GroupActionOnLattice,
    coinvariants,
    determinant,
    enumerate_box,
    hermite_rows,
    identity,
    invariants,
    inverse_unimodular,
    is_surjective,
    kernel_basis,
    map_matrix,
    matmul,
    smith_normal_form,
    solve_integer,
    subquotient,
)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def unimodular(n):
    # products of elementary matrices
    ops = st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-3, 3)),
                   max_size=6)

    def build(steps):
        m = identity(n)
        for i, j, k in steps:
            if i != j:
                e = identity(n)
                e[i][j] = k
                m = matmul(e, m)
        return m
    return ops.map(build)


def brute_divisors(m):
    # d_1 * ... * d_k = gcd of the k x k minors
    from math import gcd
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = gcd(g, determinant([[m[i][j] for j in c] for i in r]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_smith_small_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).divisors == (1, 6)
    assert smith_normal_form([[0, 0], [0, 0]]).divisors == (0, 0)
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).divisors == (2, 6, 12)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_smith_matches_minors(m):
    snf = smith_normal_form(m)
    nonzero = [d for d in snf.divisors if d]
    assert nonzero == brute_divisors(m)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    prod = matmul(matmul(snf.left, m), snf.right)
    for i, row in enumerate(prod):
        for j, x in enumerate(row):
            assert x == (snf.divisors[i] if i == j else 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    unimodular(n), unimodular(n))))
def test_smith_invariant_under_unimodular(data):
    m, u, v = data
    assert smith_normal_form(matmul(matmul(u, m), v)).divisors == smith_normal_form(m).divisors


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(unimodular))
def test_inverse_unimodular(u):
    assert abs(determinant(u)) == 1
    assert matmul(u, inverse_unimodular(u)) == identity(len(u))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_kernel_and_solve(m):
    ncols = len(m[0])
    for k in kernel_basis(m, ncols):
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in m)
    b = [sum(row) for row in m]
    sol = solve_integer(m, b, ncols)
    assert sol is not None
    assert [sum(a * s for a, s in zip(row, sol)) for row in m] == b


def test_solve_integer_detects_non_integral():
    assert solve_integer([[2]], [1], 1) is None


def test_hermite_rows_spans_same_lattice():
    rows = [(2, 4), (6, 8)]
    h = hermite_rows(rows, 2)
    assert smith_normal_form(h).divisors == smith_normal_form(rows).divisors


def test_group_basics():
    g = FinAbGroup(2, ((2, 0), (0, 3)))
    assert g.divisors == (6,)
    assert g.order == 6
    assert g.free_rank == 0
    assert g.is_zero((2, 3))
    assert not g.is_zero((1, 0))
    assert g.equal((3, 1), (1, 4))
    assert FinAbGroup.free(3).free_rank == 3


def test_subquotient():
    # Z^2 / (2, 2) restricted to the span of (1, 1) is Z/2
    g = subquotient([(1, 1)], [(2, 2)], 2)
    assert g.torsion == (2,)
    assert g.free_rank == 0


def test_swap_coinvariants_and_invariants():
    swap = GroupActionOnLattice.generate([[[0, 1], [1, 0]]], 2)
    q, _ = coinvariants(FinAbGroup.free(2), swap)
    assert (q.free_rank, q.torsion) == (1, ())
    inv = invariants(FinAbGroup.free(2), swap)
    assert inv.free_rank == 1
    assert inv.ambient((1,)) in ((1, 1), (-1, -1))


def test_negation_coinvariants():
    neg = GroupActionOnLattice.generate([[[-1]]], 1)
    q, _ = coinvariants(FinAbGroup.free(1), neg)
    assert q.torsion == (2,)
    assert invariants(FinAbGroup.free(1), neg).is_trivial()


def brute_invariant_rank(gens, n, radius=2):
    # rank of the span of fixed vectors inside a box
    from satake_params._linalg import rank
    fixed = [v for v in enumerate_box(n, radius)
             if all(tuple(sum(g[i][j] * v[j] for j in range(n)) for i in range(n)) == tuple(v)
                    for g in gens)]
    return rank([list(v) for v in fixed]) if fixed else 0


perm_actions = st.sampled_from([
    [[[0, 1, 0], [1, 0, 0], [0, 0, 1]]],
    [[[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
    [[[-1, 0, 0], [0, 0, 1], [0, 1, 0]]],
    [[[0, 0, -1], [0, -1, 0], [-1, 0, 0]]],
    [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]],
])


@settings(max_examples=20, deadline=None)
@given(perm_actions)
def test_invariants_and_coinvariants_have_equal_rank(gens):
    a = GroupActionOnLattice.generate(gens, 3)
    lat = FinAbGroup.free(3)
    q, _ = coinvariants(lat, a)
    inv = invariants(lat, a)
    assert q.free_rank == inv.free_rank == brute_invariant_rank(gens, 3)


def test_closure_of_generated_action():
    a = GroupActionOnLattice.generate([[[0, 0, 1], [1, 0, 0], [0, 1, 0]]], 3)
    assert len(a) == 3
    assert sorted(a.orbit((1, 0, 0))) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_surjectivity_report():
    z = FinAbGroup.free(1)
    z2 = FinAbGroup(1, ((2,),))
    rep = is_surjective([[1]], z, z2)
    assert rep.surjective
    rep = is_surjective([[2]], z, z)
    assert not rep.surjective
    assert map_matrix(z, z2) == [[1]]


def test_infinite_group_hits_closure_bound():
    from satake_params.abelian import ClosureError
    with pytest.raises(ClosureError):
        GroupActionOnLattice.generate([[[1, 1], [0, 1]]], 2, bound=50)
