"""Finite fields, polynomials and canonical linear algebra."""

from __future__ import annotations

from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from rlie.errors import InputError
from rlie.ff_linalg import (
    Echelon, Subspace, all_subspaces, char_poly, companion, embedding, field_from_json,
    field_make, image, inverse, kernel, mat_mul, poly_divmod, poly_map, poly_mul, rank,
    rref, roots_in, solve, subspace_combine, subspace_count, identity,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (7, 1)]


# -- oracles ---------------------------------------------------------------

def brute_det(M, F):
    """Leibniz expansion."""
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, M[i][perm[i]])
        total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return total


def brute_kernel_vectors(A, F, n):
    return {v for v in product(range(F.q), repeat=n)
            if all(sum_(F, (F.mul(a, x) for a, x in zip(row, v))) == 0 for row in A)}


def sum_(F, xs):
    acc = 0
    for x in xs:
        acc = F.add(acc, x)
    return acc


def matrices(q, max_n=4, square=False):
    dims = st.integers(1, max_n)

    @st.composite
    def build(draw):
        r = draw(dims)
        c = r if square else draw(dims)
        return [tuple(draw(st.integers(0, q - 1)) for _ in range(c)) for _ in range(r)]
    return build()


# -- fields ----------------------------------------------------------------

def test_field_make_moduli():
    assert field_make(2, 1).modulus == (0, 1)
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(3, 1).inv(2) == 2


def test_gf4_modulus_is_the_unique_irreducible_quadratic():
    # oracle: a monic quadratic over GF(2) is irreducible iff it has no root
    irreducible = [(c0, c1, 1) for c0, c1 in product(range(2), repeat=2)
                   if all((c0 + c1 * x + x * x) % 2 for x in range(2))]
    assert irreducible == [(1, 1, 1)]
    assert field_make(2, 2).modulus == irreducible[0]


def test_modulus_is_lexicographically_least_low_to_high():
    # GF(8): the candidates are t^3+t+1 -> (1,1,0,1) and t^3+t^2+1 -> (1,0,1,1)
    assert field_make(2, 3).modulus == (1, 0, 1, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,m", [(4, 1), (1, 1), (0, 2), (2, 0), (9, 1)])
def test_field_make_rejects(p, m):
    with pytest.raises(InputError):
        field_make(p, m)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, m):
    F = field_make(p, m)
    els = list(F.elements())
    assert len(els) == p ** m
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    if F.q <= 27:
        for a, b, c in product(els, repeat=3):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


@pytest.mark.parametrize("p,m", [(p, m) for p, m in SMALL_FIELDS if p ** m <= 64])
def test_frobenius_is_automorphism(p, m):
    F = field_make(p, m)
    els = list(F.elements())
    images = set()
    for x in els:
        images.add(F.frob(x))
        assert F.frob(x) == F.pow(x, p)
        for y in els:
            assert F.frob(F.add(x, y)) == F.add(F.frob(x), F.frob(y))
            assert F.frob(F.mul(x, y)) == F.mul(F.frob(x), F.frob(y))
    assert len(images) == F.q
    assert all(F.frob(x) == x for x in range(p))
    assert all(F.frob_power(x, m) == x for x in els)


def test_extension_multiplication_matches_polynomial_reduction():
    F = field_make(3, 2)  # t^2 + 1
    t = F.from_coeffs([0, 1])
    assert F.mul(t, t) == F.from_coeffs([2, 0])


def test_serialization_round_trip():
    for p, m in SMALL_FIELDS:
        F = field_make(p, m)
        assert field_from_json(F.to_json()) is F
        for a in F.elements():
            assert F.from_coeffs(F.to_coeffs(a)) == a
    with pytest.raises(InputError):
        field_from_json({"p": 2, "m": 2, "modulus": [1, 0, 1]})


@pytest.mark.parametrize("small,big", [((2, 2), (2, 6)), ((2, 1), (2, 3)), ((3, 1), (3, 2)), ((2, 2), (2, 4))])
def test_embedding_is_homomorphism(small, big):
    F, G = field_make(*small), field_make(*big)
    e = embedding(F, G)
    assert len(set(e)) == F.q
    for a, b in product(F.elements(), repeat=2):
        assert e[F.add(a, b)] == G.add(e[a], e[b])
        assert e[F.mul(a, b)] == G.mul(e[a], e[b])


# -- polynomials -----------------------------------------------------------

def test_poly_divmod_round_trip():
    F = field_make(5)
    a, b = (1, 2, 3, 4, 1), (2, 0, 1)
    qt, r = poly_divmod(a, b, F)
    assert len(r) < len(b)
    back = poly_mul(qt, b, F)
    from rlie.ff_linalg import poly_add
    assert poly_add(back, r, F) == a


def test_char_poly_examples():
    F3 = field_make(3)
    assert char_poly([(0, 0, 0)] * 3, F3) == (0, 0, 0, 1)
    assert roots_in(char_poly([(0, 0, 0)] * 3, F3), F3) == [0, 0, 0]
    cp = char_poly([(1, 0), (0, 2)], F3)
    assert cp == poly_mul((2, 1), (1, 1), F3)
    assert roots_in(cp, F3) == [1, 2]


def test_t_cubed_minus_c_over_gf4():
    F, G = field_make(2, 2), field_make(2, 6)
    c = 2  # the generator t of GF(4): a non-cube
    f = (F.neg(c), 0, 0, 1)
    assert char_poly(companion(f, F), F) == f
    assert roots_in(f, F) == []
    e = embedding(F, G)
    roots = roots_in(poly_map(f, e), G)
    # oracle: direct scan of GF(64) for x^3 == c
    scan = [x for x in G.elements() if G.pow(x, 3) == e[c]]
    assert roots == scan and len(roots) == 3


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.data())
def test_char_poly_matches_leibniz(fm, data):
    F = field_make(*fm)
    M = data.draw(matrices(F.q, 4, square=True))
    n = len(M)
    cp = char_poly(M, F)
    assert len(cp) == n + 1 and cp[-1] == 1
    for lam in F.elements():
        shifted = [tuple(F.sub(lam if i == j else 0, M[i][j]) for j in range(n)) for i in range(n)]
        from rlie.ff_linalg import poly_eval
        assert poly_eval(cp, lam, F) == brute_det(shifted, F)


# -- rref / subspaces ------------------------------------------------------

def test_rref_examples():
    F2 = field_make(2)
    r = rref([(0, 0, 0), (0, 0, 0)], F2)
    assert r.rank == 0 and r.space.basis == ()
    r = rref(identity(3), F2)
    assert r.rank == 3 and list(r.space.basis) == identity(3)
    r = rref([(1, 1, 0), (0, 1, 1), (1, 0, 1)], F2)
    assert r.rank == 2
    assert r.space.basis == ((1, 0, 1), (0, 1, 1))
    assert r.row_coords == [(1, 1), (0, 1), (1, 0)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
def test_rref_canonical_and_rank_nullity(fm, data):
    F = field_make(*fm)
    A = data.draw(matrices(F.q, 4))
    n = len(A[0])
    r = rref(A, F)
    assert rref(list(r.space.basis), F, n).space.basis == r.space.basis
    assert list(r.space.pivots) == sorted(set(r.space.pivots))
    K, Im = kernel(A, F), image(A, F)
    assert K.dim + Im.dim == n
    assert K.dim + rank(A, F) == n
    if F.q ** n <= 256:
        assert set(K.vectors()) == brute_kernel_vectors(A, F, n)


def test_jordan_block_kernel_image():
    F3 = field_make(3)
    J = [(0, 1), (0, 0)]
    assert len(brute_kernel_vectors(J, F3, 2)) == 3
    assert kernel(J, F3).dim == 1 and image(J, F3).dim == 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
def test_solve_is_lexicographically_least(fm, data):
    F = field_make(*fm)
    A = data.draw(matrices(F.q, 3))
    n = len(A[0])
    b = tuple(data.draw(st.integers(0, F.q - 1)) for _ in A)
    sols = sorted(v for v in product(range(F.q), repeat=n)
                  if tuple(sum_(F, (F.mul(a, x) for a, x in zip(row, v))) for row in A) == b)
    got = solve(A, b, F)
    assert (got is None) == (not sols)
    if sols:
        assert got == sols[0]


def test_solve_trivial_cases():
    F = field_make(5)
    assert solve([(0, 0), (0, 0)], (0, 0), F) == (0, 0)
    assert solve(identity(3), (4, 1, 2), F) == (4, 1, 2)
    assert solve([(0, 0)], (1,), F) is None


def test_inverse():
    F = field_make(2, 2)
    A = [(1, 2), (3, 3)]
    Ai = inverse(A, F)
    assert mat_mul(A, Ai, F) == identity(2)
    assert inverse([(1, 1), (1, 1)], F) is None


def test_subspace_combine_examples():
    F2 = field_make(2)
    U = Subspace.span([(1, 0)], 2, F2)
    V = Subspace.span([(1, 1)], 2, F2)
    assert subspace_combine(U, U, "sum") == U == subspace_combine(U, U, "intersection")
    assert (U + V).is_full() and (U & V).is_zero()
    for A in all_subspaces(3, F2, 2):
        for B in all_subspaces(3, F2, 2):
            common = set(A.vectors()) & set(B.vectors())
            assert len(common) == 2 ** (A & B).dim >= 2
    with pytest.raises(InputError):
        subspace_combine(U, Subspace.zero(3, F2), "sum")


def test_subspace_enumeration_and_modular_law_gf2_4():
    F2 = field_make(2)
    subs = list(all_subspaces(4, F2))
    assert len(subs) == subspace_count(4, 2) == len(set(subs))
    vecs = {S: frozenset(S.vectors()) for S in subs}
    for U in subs:
        for V in subs:
            assert (U + V).dim + (U & V).dim == U.dim + V.dim
            assert vecs[U & V] == vecs[U] & vecs[V]
    # modular law: U <= W implies U + (V & W) = (U + V) & W
    for U in subs:
        for W in subs:
            if U <= W:
                for V in subs:
                    assert U + (V & W) == (U + V) & W


def test_echelon_matches_span():
    F = field_make(3)
    vecs = [(1, 2, 0, 1), (2, 1, 0, 2), (0, 0, 1, 1), (1, 1, 1, 1)]
    E = Echelon(F, 4)
    grew = [E.add(v) for v in vecs]
    assert grew == [True, False, True, True]
    assert E.space() == Subspace.span(vecs, 4, F)


def test_coords_and_reduce():
    F = field_make(3)
    S = Subspace.span([(1, 2, 0), (0, 1, 1)], 3, F)
    v = S.combine((2, 1))
    assert S.coords(v) == (2, 1)
    assert S.contains(v) and not S.contains((0, 0, 1))
    with pytest.raises(InputError):
        S.coords((0, 0, 1))
