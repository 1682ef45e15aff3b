"""Minimal p-envelopes, restricted maps and the enveloped class map."""

from __future__ import annotations

from itertools import product

import pytest

from rlie import catalog, envelopes, schunck
from rlie.errors import InputError
from rlie.ff_linalg import Subspace, field_make, mat_flatten, mat_mul, mat_pow, mat_sub, unit_vec
from rlie.lie_core import ad_matrix, center, is_nilpotent, lie_make
from rlie.restricted import evaluate_p, is_restrictable

ORDINARY = (catalog.ordinary_sample(2, 3) + catalog.ordinary_sample(3, 2)
            + [catalog.Q(3), catalog.noform_L(2), catalog.noform_L(3)])


def oracle_closure_dim(L):
    """Closure of ad L under brackets and p-th powers of every element of the span."""
    F, n = L.field, L.dim
    mats = [ad_matrix(L, x) for x in L.basis()]
    while True:
        S = Subspace.span([mat_flatten(M) for M in mats], n * n, F)
        elems = [[list(v[r * n:(r + 1) * n]) for r in range(n)] for v in S.vectors()]
        new = [mat_pow(X, F.p, F) for X in elems]
        new += [mat_sub(mat_mul(X, Y, F), mat_mul(Y, X, F), F) for X in S_basis(S, n)
                for Y in S_basis(S, n)]
        S2 = Subspace.span([mat_flatten(M) for M in mats + new], n * n, F)
        if S2.dim == S.dim:
            return S.dim
        mats = [[list(v[r * n:(r + 1) * n]) for r in range(n)] for v in S2.basis]


def S_basis(S, n):
    return [[list(v[r * n:(r + 1) * n]) for r in range(n)] for v in S.basis]


def _ad_rank(L):
    return Subspace.span([mat_flatten(ad_matrix(L, x)) for x in L.basis()],
                         L.dim * L.dim, L.field).dim


@pytest.mark.parametrize("i", range(len(ORDINARY)))
def test_envelope_dimension_and_certificates(i):
    U = ORDINARY[i]
    env = envelopes.minimal_p_envelope(U)
    extra = oracle_closure_dim(U) - _ad_rank(U) if U.field.q ** (U.dim ** 2) <= 2 ** 16 else None
    cert = envelopes.envelope_certificates(env, extra)
    assert all(cert.values())
    assert env.minimal
    if is_restrictable(U):
        assert env.target.dim == U.dim


def test_heisenberg_envelope_is_itself():
    for p in (2, 3):
        U = lie_make(field_make(p), 3, {(0, 1): (0, 0, 1)}, "abc")
        env = envelopes.minimal_p_envelope(U)
        assert env.target.dim == 3
        assert center(env.target.algebra) <= env.image()


def test_Q_envelope_is_Qstar():
    for p in (3, 5):
        assert catalog.envelope_matches_qstar(p)


def test_restricted_map_check():
    R = catalog.der(3)
    ident = [unit_vec(3, i) for i in range(3)]
    assert envelopes.restricted_map_check(R, R, ident)
    swapped = [ident[1], ident[0], ident[2]]
    assert not envelopes.restricted_map_check(R, R, swapped)
    # bracket-preserving but not p-compatible: rescale c by 2
    scaled = [ident[0], ident[1], (0, 0, 2)]
    assert not envelopes.restricted_map_check(R, R, scaled)


def test_null_ideal_envelope():
    U = catalog.Q(3)
    labels = U.labels
    A = Subspace.span([unit_vec(U.dim, labels.index(f"v{i}")) for i in range(3)], U.dim, U.field)
    env = envelopes.null_ideal_envelope(U, A)
    for a in A.basis:
        assert not any(evaluate_p(env.target, env.embed(a)))
    with pytest.raises(InputError):
        envelopes.null_ideal_envelope(U, U.whole())


def test_envd_pN_is_nilpotency():
    H = envelopes.envd(schunck.class_pN())
    for U in ORDINARY:
        assert H(U) == is_nilpotent(U)


@pytest.mark.parametrize("name", ["pN", "pU", "pC"])
def test_envd_closure(name):
    H = envelopes.envd(schunck.make_class(name))
    rep = envelopes.ordinary_closure_check(H, catalog.ordinary_sample(2, 3)
                                           + catalog.ordinary_sample(3, 2))
    assert not any(rep["failures"].values())
    assert rep["checked"]["quot"] > 0


def test_matrix_closure_adds_p_power():
    U = catalog.Q(3)
    basis = envelopes.matrix_p_closure([ad_matrix(U, x) for x in U.basis()], U.field, U.dim)
    assert len(basis) == _ad_rank(U) + 1
