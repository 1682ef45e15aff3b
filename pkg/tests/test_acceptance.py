"""Acceptance criteria 1-9, exact, one PASS/FAIL line per criterion.

Each test runs the relevant suites at default budgets, prints a summary
line straight to the terminal and then asserts zero counterexamples, that
every law met its hypotheses at least once, and the runtime bound.
"""

from __future__ import annotations

import time

import pytest

from rlie import catalog, cli, laws, schunck
from rlie.restricted import is_primitive

TEN_MINUTES = 600.0


def _emit(capsys, n: int, ok: bool, detail: str):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


def _run(names):
    t0 = time.perf_counter()
    reps = [laws.run_suite(n) for n in names]
    return reps, time.perf_counter() - t0


def _summary(reps, elapsed) -> tuple:
    checked = sum(law.checked for r in reps for law in r.laws)
    failures = [(law.name, law.failures[:3]) for r in reps for law in r.laws if law.failures]
    vacuous = [law.name for r in reps for law in r.laws if law.checked == 0]
    ok = not failures and not vacuous and elapsed < TEN_MINUTES
    detail = (f"{len([x for r in reps for x in r.laws])} laws, {checked} instances, "
              f"{len(failures)} failing, {len(vacuous)} vacuous, {elapsed:.0f}s")
    return ok, detail, failures, vacuous


def _check_suites(capsys, n, names, expected_laws=None):
    reps, elapsed = _run(names)
    ok, detail, failures, vacuous = _summary(reps, elapsed)
    names_seen = {law.name for r in reps for law in r.laws}
    missing = set(expected_laws or ()) - names_seen
    ok = ok and not missing
    _emit(capsys, n, ok, detail)
    assert not failures, failures
    assert not vacuous, vacuous
    assert not missing, missing
    assert elapsed < TEN_MINUTES
    return reps


def test_criterion_1_recorded_facts(capsys):
    t0 = time.perf_counter()
    code, rep = cli.run(["reproduce-paper", "--facts-only"])
    elapsed = time.perf_counter() - t0
    law = rep["results"]["suites"][0]["laws"][0]
    required = {
        ("der", "derived_is_p_ideal", 2), ("der", "derived_is_p_ideal", 3),
        ("nilder", "derived_is_p_ideal", 2), ("nilder", "derived_is_p_ideal", 3),
        ("der", "psi_strictly_contains_phi", 3), ("nilder", "psi_strictly_contains_phi", 3),
        ("nocomp", "vector_complement", 2), ("nocomp", "p_complement", 2),
        ("noform_L", "restrictable", 3), ("noform_X", "restrictable", 3),
        ("noform_Y", "restrictable", 3), ("notpn", "p_normal", 2), ("notpn", "p_normal", 3),
    }
    present = {(f.key, f.check, f.params.get("p")) for f in catalog.EXPECTED_FACTS}
    qn = {tuple(catalog.check_fact(f).value) for f in catalog.EXPECTED_FACTS if f.key == "find_qn"}
    ok = (code == 0 and not law["failures"] and required <= present
          and qn == {(2, 3), (3, 13)} and elapsed < 30)
    _emit(capsys, 1, ok, f"{law['checked']} facts, {len(law['failures'])} failing, {elapsed:.1f}s")
    assert code == 0, law["failures"]
    assert required <= present, required - present
    assert qn == {(2, 3), (3, 13)}
    assert elapsed < 30


def test_criterion_2_exhaustive_laws(capsys):
    expected = {
        "soluble-has-abelian-p-ideal", "chief-factor-null-or-central-atom", "complement-is-maximal",
        "p-frattini-is-p-ideal", "p-frattini-nilpotent", "p-frattini-contains-frattini",
        "engel-subalgebra-p-closed", "maximal-ideals-force-nilpotent",
        "subnormal-over-p-frattini-nilpotent", "non-null-factors-force-abelian",
        "null-ideal-has-maximal-complement", "primitive-kernel-p-closed", "quotient-restrictable",
        "abelian-ideal-null-for-some-operation",
    }
    # every p-operation of every algebra is scanned, not one per orbit
    total = sum(e.n_operations for q, d in laws.DEFAULT_REGIMES for e in catalog.enumerate_small(q, d))
    assert len(laws.restricted_instances()) == total
    _check_suites(capsys, 2, ["chief", "frattini", "restrictability"], expected)


def test_criterion_3_projectors(capsys):
    assert laws.PROJECTOR_CLASSES == ("pN", "pA", "pU", "pC", "pEv")
    _check_suites(capsys, 3, ["projectors"], {
        "projector-matches-definition", "projectors-are-covering",
        "primitive-covering-are-complements", "covering-conjugate-by-ideal-elements",
        "membership-independent-of-operation"})


def test_criterion_4_formations(capsys):
    names = {C.name for C, _q in laws.formation_classes()}
    assert {"res(pN*pA)", "res(pN*pU)", "res(pN*pC)", "pU", "pEv(F)"} <= names
    _check_suites(capsys, 4, ["formations"], {
        "closed-under-quotients", "closed-under-subdirect-products",
        "closed-under-frattini-extensions", "der-abelian-residual",
        "abelian-residual-is-closed-derived-algebra"})


def test_criterion_5_cohomology(capsys):
    _check_suites(capsys, 5, ["cohomology"], {
        "primitive-cohomology-vanishes", "primitive-complements-maximal",
        "primitive-complements-conjugate", "covering-complements-and-h1"})


def test_criterion_6_modules(capsys):
    assert all(m.dim <= laws.MODULE_DIM_LIMIT for _n, _R, mods in laws.module_triples() for m in mods)
    _check_suites(capsys, 6, ["modules"], {
        "hypercentral-decomposition-direct", "hypercentral-tensor-and-hom",
        "irreducible-modules-hypercentral"})


def test_criterion_7_intravariance(capsys):
    _check_suites(capsys, 7, ["intravariance"], {"covering-subalgebra-intravariant"})


def test_criterion_8_envelopes(capsys):
    _check_suites(capsys, 8, ["envelopes"], {
        "envelope-certificates", "envelope-of-Q-is-Qstar", "primitive-envelope",
        "envelope-primitive-source-primitive", "enveloped-pC-closure"})


def test_criterion_9_primitive_T(capsys):
    t0 = time.perf_counter()
    R = catalog.T(3)
    prim = is_primitive(R) is not None
    in_n2 = schunck.is_member(R, schunck.make_class("ploc:pN_2"))
    in_m = schunck.is_member(R, schunck.make_class("ploc:M"))
    ok = R.dim == 14 and prim and not in_n2 and not in_m
    _emit(capsys, 9, ok, f"dim {R.dim}, primitive {prim}, in pLoc(pN_2) {in_n2}, "
                         f"in pLoc(M) {in_m}, {time.perf_counter() - t0:.1f}s")
    assert R.dim == 14
    assert prim
    assert in_n2 is False
    assert in_m is False
