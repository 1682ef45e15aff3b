"""Executable law suites over the small-algebra sample and the named examples.

Every law is checked instance by instance.  A suite returns a
:class:`SuiteReport` listing, for each law, how many instances met its
hypotheses and a description of every counterexample found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog, schunck
from .cohomology import (
    all_complements, apply_alpha, cohomology_dim, conjugating_element, image_under,
    quotient_action,
)
from .envelopes import envd, envelope_certificates, minimal_p_envelope, ordinary_closure_check
from .errors import InputError
from .ff_linalg import Subspace
from .lie_core import (
    LieAlgebra, Representation, ad_matrix, adjoint, bracket_span, center, centralizer, engel,
    frattini, hom, ideals, is_ideal, is_nilpotent, minimal_invariant_subspaces, normalizer,
    quotient, series, tensor, trivial_rep,
)
from .restricted import (
    RestrictedAlgebra, enumerate_p_subalgebras, evaluate_p, factor_is_atom, is_p_module,
    is_p_subnormal, is_primitive, is_restrictable, minimal_p_ideals, p_chief_series,
    p_closed_check, p_closure, p_frattini, p_ideals, p_quotient, p_subalgebra,
)

DEFAULT_REGIMES = ((2, 3), (3, 2))
PROJECTOR_CLASSES = ("pN", "pA", "pU", "pC", "pEv")
SATURATED = ("pN", "pU", "pC")


@dataclass
class LawResult:
    """Outcome of one law: instances meeting the hypotheses and counterexamples."""

    name: str
    statement: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, where: str) -> bool:
        self.checked += 1
        if not cond:
            self.failures.append(where)
        return bool(cond)

    def to_json(self) -> dict:
        return {"law": self.name, "statement": self.statement, "checked": self.checked,
                "failures": list(self.failures), "ok": self.ok}


@dataclass
class SuiteReport:
    name: str
    laws: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(law.ok for law in self.laws)

    def law(self, name: str, statement: str) -> LawResult:
        res = LawResult(name, statement)
        self.laws.append(res)
        return res

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "laws": [x.to_json() for x in self.laws],
                "notes": list(self.notes)}


# ---------------------------------------------------------------------------
# samples and descriptions
# ---------------------------------------------------------------------------

def regimes(p: int | None = None, max_dim: int | None = None) -> list:
    """(p, max_dim) pairs to scan; defaults cover GF(2) up to 3 and GF(3) up to 2."""
    if p is None:
        if max_dim is None:
            return list(DEFAULT_REGIMES)
        return [(q, min(d, max_dim)) for q, d in DEFAULT_REGIMES]
    if max_dim is None:
        max_dim = dict(DEFAULT_REGIMES).get(p, 2)
    return [(p, max_dim)]


def entries(p=None, max_dim=None) -> list:
    out = []
    for q, d in regimes(p, max_dim):
        out.extend(catalog.enumerate_small(q, d))
    return out


def restricted_instances(p=None, max_dim=None, all_ops: bool = True) -> list:
    out = []
    for q, d in regimes(p, max_dim):
        out.extend(catalog.restricted_sample(q, d, soluble_only=False, all_ops=all_ops))
    return out


def describe(X) -> str:
    """Compact deterministic name: field, dimension, brackets and p-images."""
    L = X.algebra if isinstance(X, RestrictedAlgebra) else X
    br = ",".join(f"[{L.labels[i]},{L.labels[j]}]={L.fmt(v)}" for (i, j), v in sorted(L.sc().items()))
    s = f"GF({L.field.q}) dim {L.dim} {{{br}}}"
    if isinstance(X, RestrictedAlgebra):
        s += " p:" + ",".join(L.fmt(v) for v in X.images)
    return s


def _soluble(L: LieAlgebra) -> bool:
    return series(L, "derived").reaches_zero


def _abelian_space(L, A: Subspace) -> bool:
    return bracket_span(L, A, A).is_zero()


def _central_in(L, A: Subspace, B: Subspace) -> bool:
    """[L, A] lies in B."""
    return bracket_span(L, L.whole(), A) <= B


def _ordinary_primitive(L: LieAlgebra) -> bool:
    return _soluble(L) and any(M.is_zero() for M, _A in schunck.ordinary_primitive_quotients(L))


def _maximal_over(R: RestrictedAlgebra, M: Subspace, A: Subspace) -> bool:
    """With L = M + A, A an ideal: no [p]-subalgebra lies strictly between M and L.

    Any larger [p]-subalgebra meets A in a nonzero ad(M)-invariant subspace,
    hence contains a minimal one.
    """
    L = R.algebra
    if not p_closed_check(R, M):
        return False
    mats = [ad_matrix(L, m) for m in M.basis]
    if not mats:
        return A.dim == 1 or all(p_closure(R, Subspace.span([v], L.dim, L.field)) == L.whole()
                                 for v in A.vectors() if any(v))
    for W in minimal_invariant_subspaces(mats, L.dim, L.field, within=A):
        if p_closure(R, M + W) != L.whole():
            return False
    return True


def class_for(name: str, p: int) -> schunck.ClassDescriptor:
    """Descriptor for a class name; pEv means eigenvalues in the prime field."""
    if name == "pEv":
        return schunck.class_pEv(None)
    return schunck.make_class(name)


# ---------------------------------------------------------------------------
# chief factors, complements
# ---------------------------------------------------------------------------

def suite_chief(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("chief")
    has_ab = rep.law("soluble-has-abelian-p-ideal",
                     "a nonzero soluble restricted algebra has a nonzero abelian [p]-ideal")
    kinds = rep.law("chief-factor-null-or-central-atom",
                    "a [p]-chief factor is abelian and either null or a central atom")
    comp = rep.law("complement-is-maximal",
                   "a complement to a non-central abelian minimal [p]-ideal is a maximal [p]-subalgebra")
    nonnull = rep.law("non-null-factors-force-abelian",
                      "if every [p]-chief factor is non-null the algebra is abelian")
    nullc = rep.law("null-ideal-has-maximal-complement",
                    "a null minimal [p]-ideal under a quotient with only non-null factors "
                    "is complemented by a maximal [p]-subalgebra")
    for R in restricted_instances(p, max_dim):
        L = R.algebra
        if R.dim == 0 or not _soluble(L):
            continue
        name = describe(R)
        lat = p_ideals(R)
        has_ab.check(any(not K.is_zero() and _abelian_space(L, K) for K in lat), name)
        cs = p_chief_series(R)
        all_nonnull = True
        for f in cs.factors:
            A, B = f.upper, f.lower
            abel = bracket_span(L, A, A) <= B
            null = all(B.contains(evaluate_p(R, v)) for v in A.vectors())
            central = _central_in(L, A, B)
            atom = central and factor_is_atom(R, A, B)
            kinds.check(abel and (null or atom), f"{name} factor {L.fmt_space(A)}/{L.fmt_space(B)}")
            all_nonnull = all_nonnull and not null
        if all_nonnull:
            nonnull.check(L.is_abelian(), name)
        maximal = None
        for A in minimal_p_ideals(R):
            if _abelian_space(L, A) and not _central_in(L, A, L.zero()):
                for M in all_complements(L, A):
                    comp.check(_maximal_over(R, M, A), f"{name} M={L.fmt_space(M)}")
            null_A = all(not any(evaluate_p(R, a)) for a in A.basis) and _abelian_space(L, A)
            if not null_A:
                continue
            Q = p_quotient(R, A)[0]
            if Q.dim and not all(not f.null for f in p_chief_series(Q).factors):
                continue
            if maximal is None:
                maximal = enumerate_p_subalgebras(R, "maximal")
            nullc.check(any((M & A).is_zero() and (M + A) == L.whole() for M in maximal),
                        f"{name} A={L.fmt_space(A)}")
    return rep


# ---------------------------------------------------------------------------
# [p]-Frattini subalgebra and Engel subalgebras
# ---------------------------------------------------------------------------

def suite_frattini(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("frattini")
    is_id = rep.law("p-frattini-is-p-ideal",
                    "the [p]-Frattini subalgebra of a soluble algebra is a [p]-ideal")
    nil = rep.law("p-frattini-nilpotent",
                  "the [p]-Frattini subalgebra of a soluble algebra is nilpotent")
    contains = rep.law("p-frattini-contains-frattini",
                       "the [p]-Frattini subalgebra contains the Frattini subalgebra")
    eng = rep.law("engel-subalgebra-p-closed", "every Engel subalgebra E_L(a) is a [p]-subalgebra")
    cor = rep.law("maximal-ideals-force-nilpotent",
                  "if every maximal [p]-subalgebra is an ideal the algebra is nilpotent")
    sub = rep.law("subnormal-over-p-frattini-nilpotent",
                  "a [p]-subnormal A with A/B nilpotent for a [p]-ideal B of A inside "
                  "the [p]-Frattini subalgebra is nilpotent")
    for R in restricted_instances(p, max_dim):
        L = R.algebra
        name = describe(R)
        for a in L.whole().vectors():
            E = engel(L, a)
            eng.check(all(E.contains(evaluate_p(R, b)) for b in E.vectors()),
                      f"{name} a={L.fmt(a)}")
        maxs = enumerate_p_subalgebras(R, "maximal")
        if R.dim and all(is_ideal(L, M) for M in maxs):
            cor.check(is_nilpotent(L), name)
        psi = R.whole()
        for M in maxs:
            psi = psi & M
        if _soluble(L):
            is_id.check(p_closed_check(R, psi, "ideal"), name)
            nil.check(is_nilpotent(L, psi), name)
            contains.check(frattini(L) <= psi, name)
        for A in enumerate_p_subalgebras(R):
            if A.is_zero() or is_p_subnormal(R, A) is None:
                continue
            RA, inc = p_subalgebra(R, A)
            inside = inc.pull_space(A & psi)
            for B in p_ideals(RA):
                if not B <= inside:
                    continue
                Q = RA.algebra if B.is_zero() else quotient(RA.algebra, B)[0]
                if is_nilpotent(Q):
                    sub.check(is_nilpotent(RA.algebra), f"{name} A={L.fmt_space(A)}")
    return rep


# ---------------------------------------------------------------------------
# restrictability
# ---------------------------------------------------------------------------

def suite_restrictability(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("restrictability")
    prim = rep.law("primitive-kernel-p-closed",
                   "the kernel of a non-abelian primitive quotient is a [p]-ideal")
    quo = rep.law("quotient-restrictable",
                  "quotients of a soluble restrictable algebra are restrictable")
    nullop = rep.law("abelian-ideal-null-for-some-operation",
                     "each abelian ideal is a null ideal for some p-operation")
    for R in restricted_instances(p, max_dim):
        L = R.algebra
        if not _soluble(L):
            continue
        for M, _A in schunck.ordinary_primitive_quotients(L):
            if not bracket_span(L, L.whole(), L.whole()) <= M:
                prim.check(p_closed_check(R, M, "ideal"), f"{describe(R)} K={L.fmt_space(M)}")
    for e in entries(p, max_dim):
        L = e.lie
        if not (e.soluble and e.restrictable):
            continue
        ops = e.all_operations
        for K in ideals(L):
            if not K.is_zero():
                quo.check(is_restrictable(quotient(L, K)[0]), f"{describe(L)} K={L.fmt_space(K)}")
            if not K.is_zero() and _abelian_space(L, K):
                nullop.check(any(all(not any(evaluate_p(S, a)) for a in K.vectors()) for S in ops),
                             f"{describe(L)} A={L.fmt_space(K)}")
    return rep


# ---------------------------------------------------------------------------
# projectors and covering subalgebras
# ---------------------------------------------------------------------------

def _catalog_small(p_list=(2, 3)) -> list:
    out = []
    for q in p_list:
        out.extend(catalog.catalog_restricted(q))
    return out


def suite_projectors(p=None, max_dim=None, classes=PROJECTOR_CLASSES) -> SuiteReport:
    rep = SuiteReport("projectors")
    exists = rep.law("projector-matches-definition",
                     "the descent projector exists and is a projector by definition")
    cover = rep.law("projectors-are-covering", "every projector is a covering subalgebra")
    primc = rep.law("primitive-covering-are-complements",
                    "for primitive L outside X with L/soc in X, covering subalgebras, "
                    "projectors and complements to the socle coincide")
    conj = rep.law("covering-conjugate-by-ideal-elements",
                   "covering subalgebras are conjugate under 1 + ad(a) for a in an abelian "
                   "[p]-ideal A with L/A in X")
    anyop = rep.law("membership-independent-of-operation",
                    "membership does not depend on the chosen p-operation")
    inst = restricted_instances(p, max_dim) + _catalog_small([p] if p else (2, 3))
    for cname in classes:
        for R in inst:
            L = R.algebra
            if not _soluble(L):
                continue
            C = class_for(cname, R.field.p)
            name = f"{cname} {describe(R)}"
            subs = enumerate_p_subalgebras(R)
            U = schunck.projector(R, C, validate=False)
            projs = schunck.all_projectors(R, C)
            exists.check(U in projs, name)
            cov = [V for V in subs if schunck.is_covering(R, V, C, subs)]
            for V in projs:
                cover.check(V in cov, f"{name} U={L.fmt_space(V)}")
            soc = is_primitive(R)
            if soc is not None and soc != L.whole() and not C(R) and C(p_quotient(R, soc)[0]):
                comps = set(all_complements(L, soc))
                primc.check(set(cov) == set(projs) == comps, name)
            for A in p_ideals(R):
                if A.is_zero() or not _abelian_space(L, A):
                    continue
                if not C(p_quotient(R, A)[0]):
                    continue
                for U2 in cov[1:]:
                    a = conjugating_element(L, A, cov[0], U2)
                    conj.check(a is not None and image_under(apply_alpha(L, a), cov[0]) == U2,
                               f"{name} A={L.fmt_space(A)}")
        for e in entries(p, max_dim):
            if not e.soluble or len(e.all_operations) < 2:
                continue
            C = class_for(cname, e.lie.field.p)
            verdicts = {bool(C(S)) for S in e.all_operations}
            anyop.check(len(verdicts) == 1, f"{cname} {describe(e.lie)}")
    return rep


# ---------------------------------------------------------------------------
# formations and residuals
# ---------------------------------------------------------------------------

def formation_classes(p: int | None = None) -> list:
    """(descriptor, prime it applies to or None) for the formation suite."""
    out = [(schunck.residual_product(schunck.class_pN(), schunck.make_class(f)), None)
           for f in ("pA", "pU", "pC", "M")]
    out.append((schunck.class_pU(), None))
    out.append((schunck.class_pEv(None), None))
    for q in ([p] if p else (2, 3)):
        out.append((schunck.class_pEv(whole_quadratic(q)), q))
    return out


def whole_quadratic(q: int) -> schunck.LambdaSpace:
    """GF(q^2) as a subspace of itself over GF(q); x is encoded by the integer q."""
    from .ff_linalg import field_make
    return schunck.LambdaSpace(field_make(q), 2, [1, q])


def formation_sample(p=None, max_dim=None) -> list:
    """Small sample, seeded dimension-4 algebras over GF(2), named examples and
    direct sums of them (which supply trivially meeting ideal pairs)."""
    out = [R for R in restricted_instances(p, max_dim, all_ops=False) if _soluble(R.algebra)]
    primes = [p] if p else (2, 3)
    if max_dim is None and 2 in primes:
        out += catalog.sampled_restricted(2, 4)
    for q in primes:
        named = catalog.catalog_restricted(q)
        out += named
        small = [R for R in named if R.dim <= 3]
        for i, R1 in enumerate(small):
            for R2 in small[i:]:
                out.append(catalog.restricted_direct_sum(R1, R2))
    return out


def suite_formations(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("formations")
    closure = {prop: rep.law(f"closed-under-{word}", f"each listed class is closed under {word}")
               for prop, word in (("quot", "quotients"), ("sdir", "subdirect-products"),
                                  ("frat", "frattini-extensions"))}
    derres = rep.law("der-abelian-residual", "the pA-residual of der over GF(3) is <b, c>")
    cres = rep.law("abelian-residual-is-closed-derived-algebra",
                   "the [p]-abelian residual is the [p]-closure of L', and L is completely "
                   "soluble exactly when that closure is nilpotent")
    sample = formation_sample(p, max_dim)
    for C, q in formation_classes(p):
        out = schunck.closure_check(C, [R for R in sample if q is None or R.field.p == q])
        for prop, law in closure.items():
            law.checked += out.checked[prop]
            law.failures.extend(f"{C.name} {describe(x[0])}" for x in out.failures[prop])
    R = catalog.der(3)
    derres.check(schunck.residual(R, schunck.class_pA()) == catalog._span(R, ("b", "c")), "der p=3")
    pA = schunck.class_pA()
    for R in sample:
        L = R.algebra
        if R.dim > 4:
            continue
        closed = p_closure(R, bracket_span(L, L.whole(), L.whole()))
        cres.check(schunck.residual(R, pA) == closed
                   and schunck.completely_soluble(R) == is_nilpotent(L, closed), describe(R))
    return rep


# ---------------------------------------------------------------------------
# cohomology of primitive algebras
# ---------------------------------------------------------------------------

WITNESS_LIMIT = 729


def primitive_instances(p=None, max_dim=None) -> list:
    out = [R for R in restricted_instances(p, max_dim)
           if R.dim and _soluble(R.algebra) and is_primitive(R) is not None]
    extra = _catalog_small([p] if p else (2, 3))
    extra += [catalog.T(q) for q in ([p] if p else (2, 3))]
    return out + [R for R in extra if is_primitive(R) is not None]


def suite_cohomology(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("cohomology")
    van = rep.law("primitive-cohomology-vanishes",
                  "H^n(L/soc, soc) = 0 for n = 0, 1, 2 on a primitive algebra")
    split = rep.law("primitive-complements-maximal",
                    "the socle of a primitive algebra has complements, each a maximal [p]-subalgebra")
    conj = rep.law("primitive-complements-conjugate",
                   "complements to the socle are conjugate under 1 + ad(a), a in the socle")
    h1 = rep.law("covering-complements-and-h1",
                 "for a minimal [p]-ideal A with L/A in X, L outside X and covering subalgebras "
                 "present, these are the complements to A and H^1(L/A, A) = 0")
    for R in primitive_instances(p, max_dim):
        L = R.algebra
        A = is_primitive(R)
        name = describe(R) if R.dim <= 6 else f"GF({R.field.q}) dim {R.dim} {','.join(L.labels)}"
        if A == L.whole():
            continue
        Q, _pi, act = quotient_action(L, A)
        for n in range(3):
            van.check(cohomology_dim(Q, act, n) == 0, f"{name} n={n}")
        if R.field.q ** A.dim > WITNESS_LIMIT:
            rep.notes.append(f"{name}: complement witnesses skipped, socle has "
                             f"{R.field.q ** A.dim} elements")
            continue
        comps = all_complements(L, A)
        split.check(bool(comps) and all(_maximal_over(R, M, A) for M in comps), name)
        for M in comps[1:]:
            a = conjugating_element(L, A, comps[0], M)
            conj.check(a is not None and image_under(apply_alpha(L, a), comps[0]) == M,
                       f"{name} M={L.fmt_space(M)}")
    for cname in SATURATED:
        C = schunck.make_class(cname)
        for R in restricted_instances(p, max_dim, all_ops=False):
            L = R.algebra
            if not R.dim or not _soluble(L) or C(R):
                continue
            subs = None
            for A in minimal_p_ideals(R):
                if not C(p_quotient(R, A)[0]):
                    continue
                if subs is None:
                    subs = enumerate_p_subalgebras(R)
                    cov = {V for V in subs if schunck.is_covering(R, V, C, subs)}
                if not cov:
                    continue
                Q, _pi, act = quotient_action(L, A)
                h1.check(cov == set(all_complements(L, A)) and cohomology_dim(Q, act, 1) == 0,
                         f"{cname} {describe(R)} A={L.fmt_space(A)}")
    return rep


# ---------------------------------------------------------------------------
# modules: hypercentral decomposition, tensor products, irreducibles
# ---------------------------------------------------------------------------

MODULE_DIM_LIMIT = 6


def _one_dim_modules(R: RestrictedAlgebra, max_dim: int = 2) -> list:
    """Every p-module structure on F^d, d <= max_dim, of a 1-dimensional algebra."""
    from itertools import product
    F = R.field
    out = []
    for d in range(1, max_dim + 1):
        for vals in product(range(F.q), repeat=d * d):
            m = [list(vals[i * d:(i + 1) * d]) for i in range(d)]
            rep = Representation(R.algebra, d, [m], check=False)
            if is_p_module(R, rep):
                out.append(rep)
    return out


def _adjoint_family(R: RestrictedAlgebra) -> list:
    """Adjoint module, its [p]-ideal submodules and quotients, and the trivial module."""
    L = R.algebra
    ad = adjoint(L)
    out = [trivial_rep(L, 1), ad]
    for K in p_ideals(R):
        if 0 < K.dim < L.dim:
            out.append(ad.subrep(K))
            out.append(ad.quotient_rep(K))
    return [m for m in out if m.dim <= MODULE_DIM_LIMIT]


def module_triples(p=None, max_dim=None) -> list:
    """(name, R, modules) drawn from the named examples and the small sample."""
    primes = [p] if p else (2, 3)
    out = []
    for q in primes:
        for key in ("der", "nilder", "nocomp"):
            R = catalog.build_example(key, p=q)
            out.append((f"{key} p={q}", R, _adjoint_family(R)))
        for key in ("atom_null", "atom_nonnull"):
            R = catalog.build_example(key, p=q)
            out.append((f"{key} p={q}", R, _one_dim_modules(R)))
        F, U, V, W = catalog._noform_modules(q)
        RV = catalog.jacobson_construct(U, [(1, 0, 0), (0, 0, 1), (0, 0, 1)])
        RW = catalog.jacobson_construct(U, [(1, 0, 0), (0, 0, 0), (0, 0, 1)])
        mods = [m for m in (V, W) if m.dim <= MODULE_DIM_LIMIT]
        out.append((f"noform U p={q} on V", RV, [m for m in mods if is_p_module(RV, m)]
                    + _adjoint_family(RV)))
        out.append((f"noform U p={q} on W", RW, [m for m in mods if is_p_module(RW, m)]))
    for R in restricted_instances(p, max_dim, all_ops=False):
        if _soluble(R.algebra) and R.dim >= 2:
            out.append((describe(R), R, _adjoint_family(R)))
    return out


def _irreducible(rep: Representation) -> bool:
    return len(rep.composition_factors()) == 1


def suite_modules(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("modules")
    comp = rep.law("hypercentral-decomposition-direct",
                   "for [p]-subnormal S in F a module is the direct sum of an S-hypercentral "
                   "and an S-hypereccentric submodule")
    tens = rep.law("hypercentral-tensor-and-hom",
                   "tensor products and Hom spaces of hypercentral modules are hypercentral")
    irr = rep.law("irreducible-modules-hypercentral",
                  "with a null centre, irreducible modules are S-hypercentral for nonzero "
                  "[p]-subnormal S in F")
    for name, R, mods in module_triples(p, max_dim):
        L = R.algebra
        subn = [S for S in enumerate_p_subalgebras(R) if is_p_subnormal(R, S) is not None]
        null_centre = all(not any(evaluate_p(R, z)) for z in center(L).basis)
        irreducibles = []
        for m in mods:
            for f in m.composition_factors():
                if not any(f.dim == g.dim and f.action == g.action for g in irreducibles):
                    irreducibles.append(f)
        for cname in SATURATED:
            C = schunck.make_class(cname)
            whole = R.whole()
            in_F = [S for S in subn if C(R if S == whole else p_subalgebra(R, S)[0])]
            for mi, m in enumerate(mods):
                for S in in_F:
                    if S.is_zero():
                        continue
                    where = f"{cname} {name} module#{mi} S={L.fmt_space(S)}"
                    sp = schunck.hypercentral_decomposition(R, S, m, C)
                    ok = ((sp.central & sp.eccentric).is_zero()
                          and sp.central.dim + sp.eccentric.dim == m.dim
                          and m.is_submodule(sp.central) and m.is_submodule(sp.eccentric)
                          and schunck.all_factors_central(R, S, m.subrep(sp.central), C)
                          and schunck.all_factors_central(R, S, m.subrep(sp.eccentric), C, False))
                    comp.check(ok, where)
            hyper = [m for m in mods if schunck.all_factors_central(R, R.whole(), m, C)]
            for i, V in enumerate(hyper):
                for W in hyper[i:]:
                    if V.dim * W.dim > MODULE_DIM_LIMIT:
                        continue
                    for prod in (tensor(V, W), hom(V, W)):
                        tens.check(schunck.all_factors_central(R, R.whole(), prod, C),
                                   f"{cname} {name} dims {V.dim}x{W.dim}")
            if null_centre:
                for f in irreducibles:
                    for S in in_F:
                        if not S.is_zero():
                            irr.check(schunck.all_factors_central(R, S, f, C),
                                      f"{cname} {name} S={L.fmt_space(S)} dim {f.dim}")
    return rep


# ---------------------------------------------------------------------------
# intravariance of covering subalgebras
# ---------------------------------------------------------------------------

def suite_intravariance(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("intravariance")
    law = rep.law("covering-subalgebra-intravariant",
                  "for a [p]-ideal K and a covering subalgebra S of K, L = K + N_L(S)")
    inst = restricted_instances(p, max_dim) + _catalog_small([p] if p else (2, 3))
    for cname in ("pN", "pU"):
        C = schunck.make_class(cname)
        for R in inst:
            L = R.algebra
            if not _soluble(L):
                continue
            for K in p_ideals(R):
                if K.is_zero():
                    continue
                RK, inc = p_subalgebra(R, K)
                subs = enumerate_p_subalgebras(RK)
                for S in subs:
                    if not schunck.is_covering(RK, S, C, subs):
                        continue
                    Sl = inc.push_space(S)
                    law.check(K + normalizer(L, Sl) == L.whole(),
                              f"{cname} {describe(R)} K={L.fmt_space(K)} S={L.fmt_space(Sl)}")
    return rep


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------

def ordinary_instances(p=None, max_dim=None) -> list:
    out = []
    for q, d in regimes(p, max_dim):
        out.extend(catalog.ordinary_sample(q, d))
    for q in ([p] if p else (2, 3)):
        out.append(catalog.noform_L(q))
        if q > 2:
            out.append(catalog.Q(q))
    return out


def suite_envelopes(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("envelopes")
    cert = rep.law("envelope-certificates",
                   "the minimal envelope is an injective homomorphic image whose [p]-closure "
                   "is everything and whose centre lies in the image")
    qstar = rep.law("envelope-of-Q-is-Qstar", "the minimal envelope of Q is Q* as a restricted algebra")
    p1 = rep.law("primitive-envelope", "a minimal envelope of a primitive algebra is primitive")
    p2 = rep.law("envelope-primitive-source-primitive",
                 "a non-abelian algebra with a primitive envelope is primitive")
    clo = rep.law("enveloped-pC-closure",
                  "the algebras with an envelope in pC are closed under quotients and "
                  "Frattini extensions")
    sample = ordinary_instances(p, max_dim)
    for U in sample:
        name = describe(U) if U.dim <= 4 else f"GF({U.field.q}) dim {U.dim} {','.join(U.labels)}"
        env = minimal_p_envelope(U)
        c = envelope_certificates(env)
        cert.check(all(c.values()) and env.minimal, name)
        target_prim = is_primitive(env.target) is not None
        if _ordinary_primitive(U):
            p1.check(target_prim, name)
        if target_prim and not U.is_abelian():
            p2.check(_ordinary_primitive(U), name)
    for q in ([p] if p and p > 2 else (3, 5)):
        qstar.check(catalog.envelope_matches_qstar(q), f"p={q}")
    out = ordinary_closure_check(envd(schunck.class_pC()), [U for U in sample if U.dim <= 4])
    for prop in ("quot", "frat"):
        clo.checked += out["checked"][prop]
        clo.failures.extend(f"{prop} {describe(x[0])}" for x in out["failures"][prop])
    return rep


# ---------------------------------------------------------------------------
# named examples
# ---------------------------------------------------------------------------

def suite_explus(p=None, max_dim=None) -> SuiteReport:
    """The primitive split extension T: primitive, outside both local formations."""
    rep = SuiteReport("explus")
    facts = [f for f in catalog.EXPECTED_FACTS if f.key == "T"]
    for f in facts:
        law = rep.law(f"T-{f.check}-{f.args.get('cls', '')}".rstrip("-"),
                      f"T at p={f.params['p']}: {f.check} {f.args} is {f.expect}")
        r = catalog.check_fact(f)
        law.check(r.ok, f"got {r.value!r} {r.error}".strip())
    return rep


def suite_facts(p=None, max_dim=None) -> SuiteReport:
    rep = SuiteReport("facts")
    law = rep.law("recorded-facts", "every recorded fact about a named example holds")
    for r in catalog.check_facts():
        f = r.fact
        law.check(r.ok, f"{f.key} {f.check} {f.params} {f.args}: expected {f.expect!r}, "
                        f"got {r.value!r} {r.error}".strip())
    return rep


SUITES = {
    "chief": suite_chief,
    "frattini": suite_frattini,
    "restrictability": suite_restrictability,
    "projectors": suite_projectors,
    "formations": suite_formations,
    "cohomology": suite_cohomology,
    "modules": suite_modules,
    "intravariance": suite_intravariance,
    "envelopes": suite_envelopes,
    "explus": suite_explus,
}


def run_suite(name: str, p: int | None = None, max_dim: int | None = None) -> SuiteReport:
    if name == "facts":
        return suite_facts()
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if p is not None and p not in (2, 3, 5, 7):
        raise InputError("suites run over GF(p) for small primes only")
    return SUITES[name](p, max_dim)
