"""p-operations, [p]-closures, chief series and primitivity."""

from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rlie.errors import InputError
from rlie.ff_linalg import Subspace, field_make, mat_mul, mat_pow, unit_vec
from rlie.lie_core import (
    Representation, center, enumerate_subalgebras, frattini, lie_make, trivial_rep,
)
from rlie.restricted import (
    RestrictedAlgebra, enumerate_p_operations, enumerate_p_subalgebras, evaluate_p,
    is_p_module, is_p_subnormal, is_primitive, is_restrictable, jacobson_construct,
    jacobson_correction, minimal_p_ideals, null_on_ideal_pop, p_chief_series, p_closed_check,
    p_closure, p_frattini, p_ideals, p_quotient, primitive_quotients, restricted_split_extension,
    restrictable_images,
)


def der(p=3):
    L = lie_make(field_make(p), 3, {(0, 1): (0, 1, 0)}, "abc")
    return jacobson_construct(L, [(1, 0, 0), (0, 0, 1), (0, 0, 0)])


def nilder(p=3):
    L = lie_make(field_make(p), 4, {(0, 1): (0, 0, 1, 0)}, "abcd")
    return jacobson_construct(L, [(0,) * 4, (0,) * 4, (0, 0, 0, 1), (0,) * 4])


def borel(n, F):
    """Upper triangular n x n matrices: basis E_ij (i <= j), p-map = matrix p-th power."""
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {e: k for k, e in enumerate(idx)}
    d = len(idx)

    def mat(k):
        i, j = idx[k]
        return [tuple(1 if (r, c) == (i, j) else 0 for c in range(n)) for r in range(n)]

    def coords(M):
        return tuple(M[i][j] for (i, j) in idx)

    sc = {}
    for a in range(d):
        for b in range(a + 1, d):
            A, B = mat(a), mat(b)
            C = [tuple(F.sub(x, y) for x, y in zip(r1, r2))
                 for r1, r2 in zip(mat_mul(A, B, F), mat_mul(B, A, F))]
            if any(any(r) for r in C):
                sc[(a, b)] = coords(C)
    L = lie_make(F, d, sc)
    images = [coords(mat_pow(mat(k), F.p, F)) for k in range(d)]
    return jacobson_construct(L, images), idx, coords


def test_jacobson_construct_examples():
    der(3), nilder(3)
    L = lie_make(field_make(3), 2, {})
    jacobson_construct(L, [(0, 0), (1, 0)])
    with pytest.raises(InputError):
        jacobson_construct(der(3).algebra, [(0, 0, 0), (0, 0, 1), (0, 0, 0)])


def test_evaluate_p_examples():
    F = field_make(2)
    null = RestrictedAlgebra(lie_make(F, 2, {}), [(0, 0), (0, 0)])
    assert all(evaluate_p(null, x) == (0, 0) for x in product(range(2), repeat=2))
    assert evaluate_p(nilder(), (0, 0, 1, 0)) == (0, 0, 0, 1)
    R = der(3)
    v = evaluate_p(R, (1, 1, 0))
    # ad(v) = ad(a+b)^3 is checked inside evaluate_p; the value differs from a+b by a central element
    assert v == (1, 1, 1)
    assert center(R.algebra).contains(tuple((x - y) % 3 for x, y in zip(v, (1, 1, 0))))


def test_correction_closed_forms():
    # p = 2: S(x,y) = [x,y];  p = 3: S(x,y) = [x,[x,y]] + [y,[y,x]]
    for p in (2, 3):
        R, _, _ = borel(2, field_make(p))
        L = R.algebra
        for x in product(range(p), repeat=3):
            for y in product(range(p), repeat=3):
                S = jacobson_correction(L, x, y)
                if p == 2:
                    assert S == L.bracket(x, y)
                else:
                    xy = L.bracket(x, y)
                    want = tuple((a + b) % 3 for a, b in zip(L.bracket(x, xy), L.bracket(y, L.bracket(y, x))))
                    assert S == want


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1, 3), (3, 1, 3), (5, 1, 2), (2, 2, 2), (3, 1, 2)]), st.data())
def test_evaluate_p_matches_matrix_power(cfg, data):
    p, m, n = cfg
    F = field_make(p, m)
    R, idx, coords = borel(n, F)
    x = tuple(data.draw(st.integers(0, F.q - 1)) for _ in idx)
    M = [[0] * n for _ in range(n)]
    for c, (i, j) in zip(x, idx):
        M[i][j] = c
    assert evaluate_p(R, x) == coords(mat_pow([tuple(r) for r in M], p, F))
    lam = data.draw(st.integers(0, F.q - 1))
    scaled = tuple(F.mul(lam, c) for c in x)
    assert evaluate_p(R, scaled) == tuple(F.mul(F.frob(lam), c) for c in evaluate_p(R, x))


def test_restrictability():
    F2 = field_make(2)
    A = lie_make(F2, 2, {})
    assert is_restrictable(A)
    assert len(enumerate_p_operations(A)) == 16
    # oracle: Frobenius-semilinear maps GF(2)^2 -> Z = GF(2)^2 are all linear maps: 2^4
    R = der(3)
    assert restrictable_images(R.algebra) == [(1, 0, 0), (0, 0, 0), (0, 0, 0)]
    ops = enumerate_p_operations(R.algebra)
    assert len(ops) == 27 and R in ops


def test_p_closure_examples():
    R = der(3)
    b = R.span([(0, 1, 0)])
    assert not p_closed_check(R, b, "ideal")
    assert p_closure(R, b, "ideal") == R.span([(0, 1, 0), (0, 0, 1)])
    N = nilder(3)
    assert not p_closed_check(N, N.span([(0, 0, 1, 0)]), "ideal")
    assert p_closure(R, R.zero()) == R.zero()


def test_chief_series_der():
    R = der(3)
    cs = p_chief_series(R)
    assert [t.dim for t in cs.terms] == [3, 2, 1, 0]
    assert cs.terms[1] == R.span([(0, 1, 0), (0, 0, 1)]) and cs.terms[2] == R.span([(0, 0, 1)])
    kinds = [(f.null, f.central, f.atom) for f in cs.factors]
    assert kinds == [(False, True, True), (True, False, True), (True, True, True)]


def test_chief_series_trivial_cases():
    F = field_make(2)
    null = RestrictedAlgebra(lie_make(F, 3, {}), [(0,) * 3] * 3)
    assert all(f.null for f in p_chief_series(null).factors)
    atom = RestrictedAlgebra(lie_make(F, 1, {}), [(1,)])
    cs = p_chief_series(atom)
    assert len(cs.factors) == 1 and not cs.factors[0].null and cs.factors[0].atom


def test_p_ideals_match_filtered_scan():
    from rlie.ff_linalg import all_subspaces
    from rlie.lie_core import is_ideal
    for R in (der(2), der(3), nilder(2)):
        brute = [S for S in all_subspaces(R.dim, R.field)
                 if is_ideal(R.algebra, S) and all(S.contains(evaluate_p(R, b)) for b in S.basis)]
        assert p_ideals(R) == sorted(brute, key=lambda S: S.key())


def test_p_frattini():
    F = field_make(2)
    assert p_frattini(RestrictedAlgebra(lie_make(F, 1, {}), [(0,)])).is_zero()
    for R in (der(3), nilder(3), der(2), nilder(2)):
        psi, phi = p_frattini(R), frattini(R.algebra)
        assert phi < psi


def test_p_subalgebra_enumeration_matches_filter():
    for R in (der(2), der(3), nilder(2)):
        want = [S for S in enumerate_subalgebras(R.algebra) if p_closed_check(R, S)]
        assert enumerate_p_subalgebras(R) == want


def test_primitivity():
    F = field_make(3)
    atom = RestrictedAlgebra(lie_make(F, 1, {}), [(1,)])
    assert is_primitive(atom) == atom.whole()
    assert is_primitive(nilder(3)) is None
    assert is_primitive(der(3)) is None
    # R/<c> is primitive with socle <b,c>/<c>
    pq = primitive_quotients(der(3))
    assert [(K.dim, A.dim) for K, A in pq] == [(1, 2), (2, 3)]


def test_null_on_ideal_pop():
    R = der(3)
    A = R.span([(0, 1, 0), (0, 0, 1)])
    R2 = null_on_ideal_pop(R, A)
    assert evaluate_p(R2, (0, 1, 0)) == (0, 0, 0) and evaluate_p(R2, (0, 0, 1)) == (0, 0, 0)
    assert null_on_ideal_pop(R, R.zero()) == R
    F2 = field_make(2)
    ab = RestrictedAlgebra(lie_make(F2, 2, {}), [(1, 0), (1, 1)])
    assert null_on_ideal_pop(ab, ab.whole()).images == ((0, 0), (0, 0))
    with pytest.raises(InputError):
        null_on_ideal_pop(R, R.whole())


def test_p_subnormal():
    R = der(3)
    assert is_p_subnormal(R, R.whole()) == [R.whole()]
    K = R.span([(0, 1, 0), (0, 0, 1)])
    assert is_p_subnormal(R, K) == [R.whole(), K]
    assert is_p_subnormal(R, R.span([(1, 0, 0), (0, 0, 1)])) is None


def test_quotient_and_split_extension():
    R = der(3)
    Q, pi = p_quotient(R, R.span([(0, 1, 0), (0, 0, 1)]))
    assert Q.dim == 1 and Q.images == ((1,),)
    null = RestrictedAlgebra(lie_make(field_make(2), 1, {}), [(0,)])
    assert is_p_module(null, trivial_rep(null.algebra, 1))
    X = restricted_split_extension(R, trivial_rep(R.algebra, 2))
    assert X.dim == 5 and evaluate_p(X, unit_vec(5, 0)) == (0,) * 5
