"""Class membership, residuals, projectors, chief factors and eigenvalue spaces."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from rlie import catalog, schunck
from rlie.errors import HypothesisViolation, InputError
from rlie.ff_linalg import Subspace, all_subspaces, field_make, is_prime, unit_vec
from rlie.lie_core import Representation, adjoint, lie_make, normalizer
from rlie.restricted import (
    evaluate_p, is_nilpotent, jacobson_construct, p_quotient, p_subalgebra,
)

SAMPLE = catalog.default_sample()
CLASSES = ["pN", "pA", "pU", "pC", "pN^2", "pN_2", "ploc:pA", "ploc:pU"]


def span(R, *labels):
    L = R.algebra
    return Subspace.span([unit_vec(L.dim, L.labels.index(s)) for s in labels], L.dim, L.field)


def _bracket_closed(L, V, W):
    return all(W.contains(L.bracket(x, y)) for x in L.basis() for y in V.basis)


def oracle_p_ideals(R):
    """Every subspace closed under brackets with L and under the p-map."""
    L = R.algebra
    out = []
    for d in range(R.dim + 1):
        for V in all_subspaces(R.dim, R.field, d):
            if _bracket_closed(L, V, V) and all(V.contains(evaluate_p(R, v)) for v in V.basis):
                out.append(V)
    return out


def oracle_residual(R, C):
    good = [K for K in oracle_p_ideals(R)
            if C.test(R if K.is_zero() else p_quotient(R, K)[0])]
    res = R.whole()
    for K in good:
        res = res & K
    return res


def oracle_nilradical(L):
    """Sum of every nilpotent ideal, nilpotency by iterated brackets."""
    def nilpotent(V):
        cur = V
        for _ in range(V.dim + 1):
            cur = Subspace.span([L.bracket(x, y) for x in V.basis for y in cur.basis],
                                L.dim, L.field)
        return cur.is_zero()
    out = L.zero()
    for d in range(L.dim + 1):
        for V in all_subspaces(L.dim, L.field, d):
            if _bracket_closed(L, V, V) and nilpotent(V):
                out = out + V
    return out


# -- membership -------------------------------------------------------------

@pytest.mark.parametrize("name", ["pN", "pU", "pC", "ploc:pA", "ploc:pU", "pN^2"])
def test_direct_test_agrees_with_primitive_quotients(name):
    C = schunck.make_class(name)
    schunck.clear_caches()
    for R in SAMPLE:
        assert (schunck.membership(R, C).verdict
                == schunck.membership(R, C, via_primitives=True).verdict)


def test_pA_membership_equals_pN():
    A, N = schunck.class_pA(), schunck.class_pN()
    for R in SAMPLE:
        assert schunck.is_member(R, A) == schunck.is_member(R, N)


def test_literal_class_uses_its_test():
    C = schunck.literal_class("dim<=1", lambda R: R.dim <= 1)
    assert not C.prim_closed and not C.schunck
    assert schunck.is_member(catalog.atom_null(2), C)
    assert not schunck.is_member(catalog.nocomp(2), C)


@pytest.mark.parametrize("name", CLASSES + ["pS", "M", "pEv", "join:pN,pU", "meet:pU,(ploc:pA)",
                                            "res:pN*pA", "resord:N", "resord:M"])
def test_make_class_names(name):
    C = schunck.make_class(name)
    assert isinstance(C, schunck.ClassDescriptor)
    assert schunck.is_member(catalog.atom_null(2), C)


@pytest.mark.parametrize("name", ["pQ", "pN^x", "resord:Z", "join:pN"])
def test_make_class_rejects(name):
    with pytest.raises((InputError, ValueError)):
        schunck.make_class(name)


def test_pEv_requires_p_normal(tmp_path):
    lam = catalog.notpn(2, 2, 3)
    with pytest.raises(InputError):
        schunck.class_pEv(lam)
    good = catalog.notpn(3, 1, 2)
    f = tmp_path / "lam.json"
    f.write_text(json.dumps(good.to_json()))
    assert schunck.make_class(f"pEv:{f}").name.startswith("pEv(")


# -- residuals and nilradicals ---------------------------------------------

@pytest.mark.parametrize("name", ["pN", "pA", "pU", "pC", "pN_2"])
def test_residual_matches_subspace_scan(name):
    C = schunck.make_class(name)
    for R in SAMPLE:
        if R.dim <= 3:
            assert schunck.residual(R, C) == oracle_residual(R, C)


def test_residual_of_der():
    R = catalog.der(3)
    assert schunck.residual(R, schunck.class_pN()) == span(R, "b", "c")
    assert schunck.residual(R, schunck.class_pC()) == R.zero()


def test_residual_rejects_non_formation():
    with pytest.raises(InputError):
        schunck.residual(catalog.der(3), schunck.join(schunck.class_pN(), schunck.class_pU()))


def test_nilradical_matches_scan():
    for R in SAMPLE:
        assert schunck.nilradical(R) == oracle_nilradical(R.algebra)


def test_p_nilradical_contains_nilradical_on_sample():
    for R in SAMPLE:
        if not schunck.series(R.algebra, "derived").reaches_zero:
            continue
        N = schunck.p_nilradical(R)
        assert schunck.nilradical(R) <= N
        assert is_nilpotent(p_subalgebra(R, N)[0])


# -- projectors -------------------------------------------------------------

def _soluble(R):
    return schunck.series(R.algebra, "derived").reaches_zero


def test_pN_projectors_are_cartan_subalgebras():
    C = schunck.class_pN()
    for R in SAMPLE + [catalog.der(3), catalog.nilder(2)]:
        if not _soluble(R):
            continue
        U = schunck.projector(R, C)
        assert is_nilpotent(p_subalgebra(R, U)[0])
        assert normalizer(R.algebra, U) == U


@pytest.mark.parametrize("name", ["pN", "pU", "pC", "ploc:pA"])
def test_projectors_conjugate(name):
    C = schunck.make_class(name)
    for R in SAMPLE + [catalog.der(3)]:
        if not _soluble(R):
            continue
        U = schunck.projector(R, C)
        allp = schunck.all_projectors(R, C)
        assert U in allp
        for V in allp:
            assert schunck.projector_conjugate(R, U, V) is not None
            assert schunck.is_covering(R, V, C)


def test_der_projector():
    R = catalog.der(3)
    assert schunck.projector(R, schunck.class_pN()) == span(R, "a", "c")


def test_projector_needs_schunck_class():
    C = schunck.literal_class("dim<=1", lambda R: R.dim <= 1)
    with pytest.raises(InputError):
        schunck.projector(catalog.der(3), C)


# -- chief factors and hypercentral decomposition --------------------------

def test_classify_chief_factors_of_der():
    R = catalog.der(3)
    N = schunck.class_pN()
    c, bc = span(R, "c"), span(R, "b", "c")
    assert schunck.classify_chief_factor(R, c, R.zero(), N).central
    assert not schunck.classify_chief_factor(R, bc, c, N).central
    assert schunck.classify_chief_factor(R, R.whole(), bc, N).central


def test_hypercentral_split_of_diagonal_module():
    F = field_make(3)
    R = jacobson_construct(lie_make(F, 1, None, "a"), [(1,)])
    rep = Representation(R.algebra, 2, [[[0, 0], [0, 1]]])
    out = schunck.hypercentral_decomposition(R, R.whole(), rep, schunck.class_pN())
    assert out.central == Subspace.span([(1, 0)], 2, F)
    assert out.eccentric == Subspace.span([(0, 1)], 2, F)
    assert sorted(out.factor_kinds) == ["central", "eccentric"]


def test_hypercentral_rejects_non_member():
    R = catalog.der(3)
    rep = adjoint(R.algebra)
    with pytest.raises(HypothesisViolation):
        schunck.hypercentral_decomposition(R, R.whole(), rep, schunck.class_pN())


# -- eigenvalues ------------------------------------------------------------

def test_eigenvalues_of_der_fill_the_field():
    rep = schunck.eigenvalue_set(catalog.der(3))
    assert rep.complete and not rep.sampled
    assert rep.values == frozenset(range(3))


def test_P_lambda_eigenvalues_leave_the_prime_field():
    R = catalog.P_lambda(2)
    assert not schunck.eigenvalues_in(R, None)
    rep = schunck.eigenvalue_set(R)
    assert rep.field.q == 4 and len(rep.values) == 4
    whole = schunck.LambdaSpace(field_make(2), 2, [1, 2])
    assert whole.is_p_normal()
    assert schunck.eigenvalues_in(R, whole)


def test_lambda_json_roundtrip():
    lam = catalog.notpn(3, 1, 2)
    back = schunck.LambdaSpace.from_json(lam.to_json())
    assert sorted(back.elements()) == sorted(lam.elements())


def _oracle_qn(p):
    n = 1
    while True:
        qs = [q for q in range(p + 1, p ** n) if is_prime(q) and (p ** n - 1) % q == 0]
        if qs:
            return n, qs[0]
        n += 1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_find_qn_matches_search(p):
    assert schunck.find_qn(p) == _oracle_qn(p)


@pytest.mark.parametrize("lam", [2, 3])
def test_minimal_polynomial_roots(lam):
    F, big = field_make(2), field_make(2, 2)
    m = schunck.minimal_polynomial(lam, F, big)
    assert len(m) == 3 and m[-1] == 1


# -- closure ----------------------------------------------------------------

@pytest.mark.parametrize("name", ["pN", "pU", "pC", "ploc:pA"])
def test_saturated_formations_pass_closure(name):
    rep = schunck.closure_check(schunck.make_class(name), SAMPLE)
    assert all(rep.ok(k) for k in ("quot", "sdir", "frat"))
    assert rep.checked["quot"] > 0


def test_literal_class_fails_subdirect_closure():
    C = schunck.literal_class("dim<=1", lambda R: R.dim <= 1)
    rep = schunck.closure_check(C, [catalog.nocomp(2), catalog.atom_null(2)])
    sample_abelian = jacobson_construct(lie_make(field_make(2), 2, None, "ab"),
                                        [(0, 0), (0, 0)])
    rep2 = schunck.closure_check(C, [sample_abelian])
    assert rep.ok("quot")
    assert not rep2.ok("sdir")


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=len(SAMPLE) - 1), st.sampled_from(["pN", "pU", "pC"]))
def test_quotients_of_members_are_members(i, name):
    R = SAMPLE[i]
    C = schunck.make_class(name)
    if not _soluble(R) or not schunck.is_member(R, C):
        return
    for K in schunck.p_ideals(R):
        if not K.is_zero():
            assert schunck.is_member(p_quotient(R, K)[0], C)
