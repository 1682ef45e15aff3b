"""Named examples, their recorded facts, and the small-algebra enumeration."""

from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rlie import catalog
from rlie.errors import InputError
from rlie.ff_linalg import field_make, mat_pow
from rlie.lie_core import LieAlgebra, ad_matrix, center, invertible_matrices
from rlie.restricted import RestrictedAlgebra, is_p_module, p_closed_check


def _raw_bracket(table, n, F, x, y):
    """Bracket straight from a structure table, without LieAlgebra."""
    out = [0] * n
    for (i, j), v in table.items():
        for a, b, s in ((i, j, 1), (j, i, -1)):
            c = F.mul(x[a], y[b])
            if s < 0:
                c = F.neg(c)
            if c:
                for k in range(n):
                    out[k] = F.add(out[k], F.mul(c, v[k]))
    return tuple(out)


def _jacobi_oracle(table, n, F):
    e = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    br = lambda x, y: _raw_bracket(table, n, F, x, y)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = [0] * n
                for x, y, z in ((e[i], e[j], e[k]), (e[j], e[k], e[i]), (e[k], e[i], e[j])):
                    t = br(x, br(y, z))
                    s = [F.add(a, b) for a, b in zip(s, t)]
                if any(s):
                    return False
    return True


def _count_valid_tables(p, n):
    F = field_make(p)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count = 0
    for vals in product(range(p), repeat=n * len(pairs)):
        table = {pr: vals[t * n:(t + 1) * n] for t, pr in enumerate(pairs)}
        if _jacobi_oracle(table, n, F):
            count += 1
    return count


def _count_p_maps(L):
    """Image tuples with ad(e_i)^p = ad(image_i), by brute force."""
    F, n = L.field, L.dim
    count = 0
    for vals in product(range(F.q), repeat=n * n):
        imgs = [vals[i * n:(i + 1) * n] for i in range(n)]
        if all(mat_pow(ad_matrix(L, L.basis()[i]), F.p, F) == ad_matrix(L, imgs[i])
               for i in range(n)):
            count += 1
    return count


# -- recorded facts ---------------------------------------------------------

@pytest.mark.parametrize("fact", catalog.EXPECTED_FACTS,
                         ids=[f"{f.key}-{f.check}-{sorted(f.params.items())}-{i}"
                              for i, f in enumerate(catalog.EXPECTED_FACTS)])
def test_recorded_fact(fact):
    res = catalog.check_fact(fact)
    assert res.error == ""
    assert res.value == fact.expect


def test_unknown_key_rejected():
    with pytest.raises(InputError):
        catalog.build_example("nope")


def test_notpn_parameters_validated():
    with pytest.raises(InputError):
        catalog.notpn(2, 2, 5)
    with pytest.raises(InputError):
        catalog.notpn(4, 1, 3)


@pytest.mark.parametrize("key", ["der", "nilder", "nocomp", "atom_null", "atom_nonnull",
                                 "noform_X", "noform_Y", "P", "Qstar", "T", "T_literal"])
@pytest.mark.parametrize("p", [2, 3])
def test_restricted_examples_are_valid(key, p):
    R = catalog.build_example(key, p=p)
    assert isinstance(R, RestrictedAlgebra)
    assert R.algebra.jacobi_violation() is None
    # rebuilding with checks enabled revalidates the p-map
    RestrictedAlgebra(R.algebra, R.images, check=True)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_T_dimension(p):
    assert catalog.T(p).dim == p * p + 5
    assert catalog.T_literal(p).dim == p * p + 6


def test_T_literal_centre_is_c_minus_z():
    R = catalog.T_literal(3)
    Z = center(R.algebra)
    labels = R.algebra.labels
    v = [0] * R.dim
    v[labels.index("c")], v[labels.index("z")] = 1, 2
    assert Z.dim == 1 and Z.contains(tuple(v))
    assert p_closed_check(R, Z, "ideal")


def test_noform_modules_are_p_modules():
    for p in (2, 3, 5):
        F, U, V, W = catalog._noform_modules(p)
        RU = catalog.jacobson_construct(U, [(1, 0, 0), (0, 0, 1), (0, 0, 1)])
        assert is_p_module(RU, V)
        RY = catalog.jacobson_construct(U, [(1, 0, 0), (0, 0, 0), (0, 0, 1)])
        assert is_p_module(RY, W)


def test_check_facts_filters_by_key():
    res = catalog.check_facts(keys={"nocomp"})
    assert res and all(r.fact.key == "nocomp" and r.ok for r in res)


# -- enumeration ------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_orbit_sizes_account_for_every_table(p, n):
    """Sum over representatives of |GL| / |Aut| equals the number of Lie tables."""
    F = field_make(p)
    gl = list(invertible_matrices(n, F))
    reps = [e.lie for e in catalog.enumerate_small(p, n) if e.lie.dim == n]
    total = 0
    for L in reps:
        auts = catalog.automorphisms(L, gl)
        assert len(gl) % len(auts) == 0
        total += len(gl) // len(auts)
    assert total == _count_valid_tables(p, n)


def test_class_counts_frozen():
    # counts checked against the orbit-size identity above
    assert [e.lie.dim for e in catalog.enumerate_small(2, 3)].count(3) == 7
    assert len(catalog.enumerate_small(2, 2)) == 3
    assert len(catalog.enumerate_small(3, 2)) == 3


def test_no_two_representatives_isomorphic():
    F = field_make(2)
    gl = list(invertible_matrices(3, F))
    reps = [e.lie for e in catalog.enumerate_small(2, 3) if e.lie.dim == 3]
    keys = [catalog._sc_key(L.sc()) for L in reps]
    for i, L in enumerate(reps):
        orbit = {catalog._sc_key(catalog.transform_algebra(L, g)) for g in gl}
        assert not any(keys[j] in orbit for j in range(len(reps)) if j != i)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_p_operation_counts_match_brute_force(p, n):
    for e in catalog.enumerate_small(p, n):
        if e.lie.dim == n:
            assert e.n_operations == _count_p_maps(e.lie)


def test_p_operation_orbits_cover_all_operations():
    """Each operation lies in the Aut-orbit of exactly one representative."""
    from rlie.ff_linalg import inverse, mat_vec
    from rlie.restricted import enumerate_p_operations, evaluate_p
    for e in catalog.enumerate_small(2, 3):
        L = e.lie
        if not e.p_operations:
            continue
        auts = catalog.automorphisms(L)
        F, n = L.field, L.dim

        def orbit(R):
            out = set()
            for g in auts:
                gi = inverse(g, F)
                out.add(tuple(mat_vec(g, evaluate_p(R, tuple(r[i] for r in gi)), F)
                              for i in range(n)))
            return out
        orbits = [orbit(R) for R in e.p_operations]
        for i in range(len(orbits)):
            for j in range(i + 1, len(orbits)):
                assert not orbits[i] & orbits[j]
        allops = {tuple(map(tuple, R.images)) for R in enumerate_p_operations(L)}
        assert set().union(*orbits) == allops


def test_unrestrictable_and_non_soluble_flags():
    es = catalog.enumerate_small(2, 3)
    assert sum(not e.soluble for e in es) == 1
    for e in es:
        assert e.restrictable == bool(e.p_operations)


def test_sampled_dimension_four_is_seeded():
    a = catalog.enumerate_small(2, 4)
    catalog.enumerate_small.cache_clear()
    b = catalog.enumerate_small(2, 4)
    assert [catalog._sc_key(e.lie.sc()) for e in a] == [catalog._sc_key(e.lie.sc()) for e in b]
    assert all(e.sampled for e in a if e.lie.dim == 4)
    assert all(e.lie.jacobi_violation() is None for e in a)


def test_samples():
    rs = catalog.restricted_sample(2, 2)
    assert all(isinstance(R, RestrictedAlgebra) for R in rs)
    assert len(catalog.default_sample()) > len(rs)
    assert all(isinstance(L, LieAlgebra) for L in catalog.ordinary_sample(3, 2))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.sampled_from(["der", "nilder", "P", "Qstar"]))
def test_builders_for_several_primes(p, key):
    R = catalog.build_example(key, p=p)
    for i in range(R.dim):
        x = R.algebra.basis()[i]
        assert mat_pow(ad_matrix(R.algebra, x), p, R.field) == ad_matrix(R.algebra, R.images[i])
