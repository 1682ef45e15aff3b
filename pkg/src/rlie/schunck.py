"""Classes of soluble restricted algebras: membership, residuals, projectors.

A class is described by a predicate on primitive restricted algebras (its
skeleton).  Membership of an arbitrary soluble algebra means that every
primitive quotient satisfies the skeleton, which makes every descriptor a
Schunck class automatically.  Descriptors that also know a predicate valid
on all algebras (``test``) and are closed under quotients and subdirect
products support residuals.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Callable

from .errors import CapacityError, ConsistencyError, HypothesisViolation, InputError
from .ff_linalg import (
    Field, Subspace, _prime_factors, all_subspaces, char_poly, companion, embedding,
    field_make, gaussian_binomial, is_prime, mat_mul, mat_pow, mat_vec, poly_mul, poly_trim,
    roots_in, transpose, unit_vec,
)
from .lie_core import (
    DEFAULT_BUDGET, LieAlgebra, Representation, ad_matrix, centralizer, closure, ideals,
    intersect_all, is_nilpotent as _lie_nilpotent, lie_make, minimal_ideals, nilpotency_class,
    normalizer, quotient, series,
)
from .restricted import (
    RestrictedAlgebra, enumerate_p_operations, enumerate_p_subalgebras, evaluate_p,
    is_p_module, is_p_subnormal, jacobson_construct, minimal_p_ideals, p_chief_series,
    p_closed_check, p_closure, p_frattini, p_ideals, p_quotient, p_subalgebra,
    primitive_quotients, restricted_split_extension,
)

EIGEN_SCAN_LIMIT = 10 ** 5
VALIDATE_LIMIT = 400

_SKELETON_CACHE: dict = {}
_MEMBER_CACHE: dict = {}


def clear_caches():
    _SKELETON_CACHE.clear()
    _MEMBER_CACHE.clear()


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassDescriptor:
    """A class of soluble restricted algebras.

    ``skeleton`` decides primitive algebras.  When ``prim_closed`` is false
    the class is taken literally: membership is ``test`` on the algebra
    itself, which is how homomorphs that are not Schunck classes are
    modelled.
    """

    name: str
    skeleton: Callable
    test: Callable | None = None
    homomorph: bool = True
    formation: bool = False
    saturated: bool = False
    schunck: bool = True
    prim_closed: bool = True
    doc: str = ""

    @property
    def supports_residual(self) -> bool:
        return self.formation and self.test is not None

    def __call__(self, R: RestrictedAlgebra) -> bool:
        return is_member(R, self)

    def __repr__(self):
        return f"ClassDescriptor({self.name})"


@dataclass
class MembershipResult:
    verdict: bool
    checked: int = 0
    failing: Subspace | None = None
    note: str = ""

    def __bool__(self):
        return self.verdict


def _skeleton(C: ClassDescriptor, P: RestrictedAlgebra) -> bool:
    key = (C.name, P.fingerprint())
    hit = _SKELETON_CACHE.get(key)
    if hit is None:
        hit = bool(C.skeleton(P))
        _SKELETON_CACHE[key] = hit
    return hit


def membership(R: RestrictedAlgebra, C: ClassDescriptor,
               via_primitives: bool = False) -> MembershipResult:
    """Decide R in C; for prim-closed classes, via every primitive quotient.

    A saturated formation with a direct test is a Schunck class whose
    members are exactly the algebras passing the test, so the test is used
    unless ``via_primitives`` is set.
    """
    if not C.prim_closed:
        return MembershipResult(bool(C.test(R)), note="direct test")
    if R.dim == 0:
        return MembershipResult(True)
    if not series(R.algebra, "derived").reaches_zero:
        return MembershipResult(False, note="not soluble")
    if C.saturated and C.test is not None and not via_primitives:
        return MembershipResult(bool(C.test(R)), note="saturated formation test")
    key = (C.name, R.fingerprint())
    hit = _MEMBER_CACHE.get(key)
    if hit is not None:
        return hit
    prims = primitive_quotients(R)
    result = MembershipResult(True, len(prims))
    for K, _A in prims:
        P = R if K.is_zero() else p_quotient(R, K)[0]
        if not _skeleton(C, P):
            result = MembershipResult(False, len(prims), K)
            break
    _MEMBER_CACHE[key] = result
    return result


def is_member(R: RestrictedAlgebra, C: ClassDescriptor) -> bool:
    return membership(R, C).verdict


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def _abelian(R) -> bool:
    return R.algebra.is_abelian()


def _nilpotent(R) -> bool:
    return _lie_nilpotent(R.algebra)


def nilpotent_residual(R: RestrictedAlgebra, S: Subspace | None = None) -> Subspace:
    """[p]-closure of the stable lower central term of the [p]-subalgebra S."""
    L = R.algebra
    S = L.whole() if S is None else S
    T = series(L, "lower_central", S).terms[-1]
    return p_closure(R, T, "ideal", within=S)


def nilpotent_length(R: RestrictedAlgebra) -> int:
    """Length of the shortest [p]-ideal series with nilpotent factors."""
    if not series(R.algebra, "derived").reaches_zero:
        raise HypothesisViolation("nilpotent length of a non-soluble algebra")
    S = R.whole()
    k = 0
    while not S.is_zero():
        S = nilpotent_residual(R, S)
        k += 1
    return k


def _class_at_most(k):
    def pred(R):
        return _lie_nilpotent(R.algebra) and nilpotency_class(R.algebra) <= k
    return pred


def _length_at_most(k):
    def pred(R):
        return series(R.algebra, "derived").reaches_zero and nilpotent_length(R) <= k
    return pred


def completely_soluble(R) -> bool:
    L = R.algebra
    der = series(L, "derived")
    if not der.reaches_zero:
        return False
    return _lie_nilpotent(L, der.terms[1] if len(der.terms) > 1 else L.zero())


def supersoluble(R) -> bool:
    """Every [p]-chief factor is an atom."""
    if not series(R.algebra, "derived").reaches_zero:
        return False
    return all(f.atom for f in p_chief_series(R).factors)


def metabelian_nilsub_abelian(L: LieAlgebra, budget: int = 10 ** 6) -> bool:
    """L'' = 0 and every nilpotent subalgebra of L is abelian.

    A non-abelian nilpotent subalgebra contains two elements with nonzero
    bracket, and the subalgebra they generate is again nilpotent, so the
    scan over 2-dimensional subspaces is complete.
    """
    der = series(L, "derived")
    if not der.reaches_zero or len(der.terms) > 3:
        return False
    if gaussian_binomial(L.dim, 2, L.field.q) > budget:
        raise CapacityError("too many planes to scan for nilpotent subalgebras")
    for U in all_subspaces(L.dim, L.field, 2):
        x, y = U.basis
        if any(L.bracket(x, y)) and _lie_nilpotent(L, closure(L, U)):
            return False
    return True


# ---------------------------------------------------------------------------
# built-in classes
# ---------------------------------------------------------------------------

def _always(_R):
    return True


def class_pS() -> ClassDescriptor:
    return ClassDescriptor("pS", _always, test=lambda R: series(R.algebra, "derived").reaches_zero,
                           formation=True, saturated=True, doc="all soluble algebras")


def class_pN() -> ClassDescriptor:
    return ClassDescriptor("pN", _nilpotent, test=_nilpotent, formation=True, saturated=True,
                           doc="nilpotent algebras")


def class_pA() -> ClassDescriptor:
    # the class generated by abelian primitives coincides with pN; residuals
    # are taken with respect to the formation of abelian algebras
    return ClassDescriptor("pA", _abelian, test=_abelian, formation=True, saturated=False,
                           doc="abelian skeleton; residuals for the abelian formation")


def class_pN_upper(k: int) -> ClassDescriptor:
    pred = _length_at_most(k)
    return ClassDescriptor(f"pN^{k}", pred, test=pred, formation=True, saturated=True,
                           doc=f"nilpotent length at most {k}")


def class_pN_lower(k: int) -> ClassDescriptor:
    pred = _class_at_most(k)
    # not saturated, so not a Schunck class: taken literally
    return ClassDescriptor(f"pN_{k}", pred, test=pred, formation=True, saturated=False,
                           schunck=False, prim_closed=False,
                           doc=f"nilpotent of class at most {k}")


def class_pC() -> ClassDescriptor:
    return ClassDescriptor("pC", completely_soluble, test=completely_soluble, formation=True,
                           saturated=True, doc="derived algebra nilpotent")


def class_pU() -> ClassDescriptor:
    return ClassDescriptor("pU", supersoluble, test=supersoluble, formation=True, saturated=True,
                           doc="every [p]-chief factor an atom")


def class_M() -> ClassDescriptor:
    pred = lambda R: metabelian_nilsub_abelian(R.algebra)
    return ClassDescriptor("M", pred, test=pred, formation=True, saturated=False,
                           schunck=False, prim_closed=False,
                           doc="metabelian, nilpotent subalgebras abelian")


def class_pEv(lam: "LambdaSpace | None" = None) -> ClassDescriptor:
    """All eigenvalues of every ad x lie in Lambda (default: the base field)."""
    if lam is not None and not lam.is_p_normal():
        raise InputError(f"{lam.name} is not p-normal; pEv is only defined for p-normal spaces")
    name = "pEv(F)" if lam is None else f"pEv({lam.name})"
    pred = lambda R: eigenvalues_in(R, lam)
    return ClassDescriptor(name, pred, test=pred, formation=True, saturated=True,
                           doc="eigenvalues of ad x in a fixed space")


def residual_product(K: ClassDescriptor, F: ClassDescriptor) -> ClassDescriptor:
    """{L : L_F in K}, with L_F the F-residual."""
    if not F.supports_residual:
        raise InputError(f"{F.name} does not support residuals")

    def pred(R):
        Rf = residual(R, F)
        return is_member(p_subalgebra(R, Rf)[0], K)
    return ClassDescriptor(f"res({K.name}*{F.name})", pred, test=pred,
                           formation=K.formation and F.formation,
                           saturated=K.saturated and F.formation,
                           doc=f"{F.name}-residual lies in {K.name}")


def class_pLoc(F: ClassDescriptor) -> ClassDescriptor:
    C = residual_product(class_pN(), F)
    return ClassDescriptor(f"pLoc({F.name})", C.skeleton, test=C.test, formation=F.formation,
                           saturated=F.formation, doc=f"nilpotent {F.name}-residual")


def join(C1: ClassDescriptor, C2: ClassDescriptor) -> ClassDescriptor:
    pred = lambda P: _skeleton(C1, P) or _skeleton(C2, P)
    return ClassDescriptor(f"join({C1.name},{C2.name})", pred, doc="join of skeletons")


def meet(C1: ClassDescriptor, C2: ClassDescriptor) -> ClassDescriptor:
    pred = lambda P: _skeleton(C1, P) and _skeleton(C2, P)
    test = None
    if C1.test is not None and C2.test is not None:
        test = lambda R: C1.test(R) and C2.test(R)
    return ClassDescriptor(f"meet({C1.name},{C2.name})", pred, test=test,
                           formation=C1.formation and C2.formation,
                           saturated=C1.saturated and C2.saturated, doc="meet of skeletons")


def literal_class(name: str, test: Callable, formation: bool = False) -> ClassDescriptor:
    """A homomorph taken literally (membership = test), not closed up to a Schunck class."""
    return ClassDescriptor(name, test, test=test, formation=formation, schunck=False,
                           prim_closed=False, doc="literal class")


# ---------------------------------------------------------------------------
# ordinary classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OrdinaryClass:
    """A class of ordinary (unrestricted) soluble Lie algebras."""

    name: str
    predicate: Callable
    formation: bool = False
    saturated: bool = False

    def __call__(self, L: LieAlgebra) -> bool:
        return bool(self.predicate(L))


def ordinary_nilpotent() -> OrdinaryClass:
    return OrdinaryClass("N", lambda L: _lie_nilpotent(L), True, True)


def ordinary_soluble() -> OrdinaryClass:
    return OrdinaryClass("S", lambda L: series(L, "derived").reaches_zero, True, True)


def ordinary_abelian() -> OrdinaryClass:
    return OrdinaryClass("A", lambda L: L.is_abelian(), True, False)


def ordinary_M() -> OrdinaryClass:
    return OrdinaryClass("M", metabelian_nilsub_abelian, True, False)


def ordinary_primitive_quotients(L: LieAlgebra, lattice=None) -> list:
    """Pairs (M, A): L/M primitive with socle A/M."""
    lat = ideals(L) if lattice is None else lattice
    out = []
    for M in lat:
        if M == L.whole():
            continue
        above = [A for A in lat if M < A]
        covers = [A for A in above if not any(M < B < A for B in above)]
        for A in covers:
            if centralizer(L, A, modulo=M) == A:
                out.append((M, A))
                break
    return out


def und_membership(L: LieAlgebra, K: ClassDescriptor) -> bool:
    """Is L the underlying algebra of some member of K?"""
    return any(is_member(R, K) for R in enumerate_p_operations(L))


def ord_class(K: ClassDescriptor) -> OrdinaryClass:
    """Soluble L all of whose ordinary primitive quotients lie in Und(K)."""

    def pred(L):
        if not series(L, "derived").reaches_zero:
            return False
        for M, _A in ordinary_primitive_quotients(L):
            Q = L if M.is_zero() else quotient(L, M)[0]
            if not und_membership(Q, K):
                return False
        return True
    return OrdinaryClass(f"ord({K.name})", pred)


def res_class(H: OrdinaryClass) -> ClassDescriptor:
    """Restricted algebras whose underlying algebra lies in H."""
    pred = lambda R: H(R.algebra)
    return ClassDescriptor(f"res({H.name})", pred, test=pred if H.formation else None,
                           formation=H.formation, saturated=H.saturated)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _split_top(s: str, seps: str):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in seps:
            return s[:i], s[i + 1:]
    raise InputError(f"expected one of {seps!r} in {s!r}")


def make_class(name, lambda_space=None) -> ClassDescriptor:
    """Build a descriptor from a short name.

    Names: pS, pN, pA, pC, pU, M, pN^k, pN_k, pEv (base field), pEv:<json file>,
    ploc:<C>, res:<K>*<F>, join:<C1>,<C2>, meet:<C1>,<C2>, resord:<N|S|A|M>.
    Parentheses group nested names.
    """
    if isinstance(name, ClassDescriptor):
        return name
    s = str(name).strip()
    if s.startswith("(") and s.endswith(")"):
        return make_class(s[1:-1], lambda_space)
    simple = {"pS": class_pS, "pN": class_pN, "pA": class_pA, "pC": class_pC,
              "pU": class_pU, "M": class_M}
    if s in simple:
        return simple[s]()
    if s.startswith("pN^") and s[3:].isdigit():
        return class_pN_upper(int(s[3:]))
    if s.startswith("pN_") and s[3:].isdigit():
        return class_pN_lower(int(s[3:]))
    if s == "pEv":
        return class_pEv(lambda_space)
    if s.startswith("pEv:"):
        with open(s[4:]) as fh:
            return class_pEv(LambdaSpace.from_json(json.load(fh)))
    if s.startswith("ploc:"):
        return class_pLoc(make_class(s[5:], lambda_space))
    if s.startswith("res:"):
        a, b = _split_top(s[4:], "*")
        return residual_product(make_class(a, lambda_space), make_class(b, lambda_space))
    if s.startswith("join:") or s.startswith("meet:"):
        a, b = _split_top(s[5:], ",")
        op = join if s.startswith("join:") else meet
        return op(make_class(a, lambda_space), make_class(b, lambda_space))
    if s.startswith("resord:"):
        ords = {"N": ordinary_nilpotent, "S": ordinary_soluble, "A": ordinary_abelian,
                "M": ordinary_M}
        if s[7:] not in ords:
            raise InputError(f"unknown ordinary class {s[7:]!r}")
        return res_class(ords[s[7:]]())
    raise InputError(f"unknown class {name!r}")


# ---------------------------------------------------------------------------
# residuals and nilradicals
# ---------------------------------------------------------------------------

def residual(R: RestrictedAlgebra, F: ClassDescriptor, lattice=None) -> Subspace:
    """Smallest [p]-ideal K with R/K in the formation F.

    The candidates are scanned over the [p]-ideal lattice and intersected;
    the intersection is certified to have its quotient in F.
    """
    if not F.supports_residual:
        raise InputError(f"{F.name} is not a formation with a usable test")
    lat = p_ideals(R) if lattice is None else lattice
    good = []
    for K in lat:
        Q = R if K.is_zero() else p_quotient(R, K)[0]
        if F.test(Q):
            good.append(K)
    res = intersect_all(good, R.whole())
    Q = R if res.is_zero() else p_quotient(R, res)[0]
    if not F.test(Q):
        raise ConsistencyError(f"{F.name} is not closed under subdirect products here")
    return res


def ordinary_chief_series(L: LieAlgebra) -> list:
    """Ideal chain 0 < I_1 < ... < L, least minimal ideal of each quotient."""
    chain = [L.zero()]
    while chain[-1].dim < L.dim:
        Q, pi = quotient(L, chain[-1])
        A = minimal_ideals(Q)[0]
        chain.append(pi.lift(A))
    return chain


def nilradical(L) -> Subspace:
    """Intersection of the centralizers of the ordinary chief factors."""
    L = L.algebra if isinstance(L, RestrictedAlgebra) else L
    chain = ordinary_chief_series(L)
    out = L.whole()
    for lo, up in zip(chain, chain[1:]):
        out = out & centralizer(L, up, modulo=lo)
    return out


def p_nilradical(R: RestrictedAlgebra) -> Subspace:
    """Intersection of the centralizers of the [p]-chief factors."""
    L = R.algebra
    out = L.whole()
    for f in p_chief_series(R).factors:
        out = out & centralizer(L, f.upper, modulo=f.lower)
    return out


# ---------------------------------------------------------------------------
# projectors and covering subalgebras
# ---------------------------------------------------------------------------

class _QuotientOracle:
    """Caches 'V/K in C' for [p]-subalgebras V and [p]-ideals K of V."""

    def __init__(self, R: RestrictedAlgebra, member: Callable):
        self.R = R
        self.member = member
        self._subs = {}
        self._ans = {}
        self._ideals = {}

    def sub(self, V: Subspace):
        hit = self._subs.get(V)
        if hit is None:
            hit = p_subalgebra(self.R, V)
            self._subs[V] = hit
        return hit

    def ideals_of(self, V: Subspace) -> list:
        hit = self._ideals.get(V)
        if hit is None:
            S, inc = self.sub(V)
            hit = [inc.push_space(K) for K in p_ideals(S)]
            self._ideals[V] = hit
        return hit

    def __call__(self, V: Subspace, K: Subspace) -> bool:
        key = (V, K)
        hit = self._ans.get(key)
        if hit is None:
            S, inc = self.sub(V)
            Kc = inc.pull_space(K)
            Q = S if Kc.is_zero() else p_quotient(S, Kc)[0]
            hit = bool(self.member(Q))
            self._ans[key] = hit
        return hit


def _member_fn(C) -> Callable:
    if isinstance(C, ClassDescriptor):
        return lambda R: is_member(R, C)
    if callable(C):
        return C
    raise InputError("expected a class descriptor or a predicate")


def all_projectors(R: RestrictedAlgebra, C, budget: int = 10 ** 4) -> list:
    """Every C-projector of R, straight from the definition.

    U is a projector when, for every [p]-ideal K, (U + K)/K lies in C and no
    [p]-subalgebra V > U + K has V/K in C.
    """
    member = _member_fn(C)
    subs = enumerate_p_subalgebras(R, budget=budget)
    if len(subs) > budget:
        raise CapacityError("too many [p]-subalgebras for the definitional search")
    lat = p_ideals(R)
    orc = _QuotientOracle(R, member)
    zero = R.zero()
    out = []
    for U in subs:
        if not orc(U, zero):
            continue
        ok = True
        for K in lat:
            UK = U + K
            if not orc(UK, K):
                ok = False
                break
            if any(V > UK and orc(V, K) for V in subs if K <= V):
                ok = False
                break
        if ok:
            out.append(U)
    return out


def is_covering(R: RestrictedAlgebra, U: Subspace, C, subs=None) -> bool:
    """U in C and U + K = V whenever U <= V and V/K in C (K a [p]-ideal of V)."""
    member = _member_fn(C)
    orc = _QuotientOracle(R, member)
    if not p_closed_check(R, U) or not orc(U, R.zero()):
        return False
    subs = enumerate_p_subalgebras(R) if subs is None else subs
    for V in subs:
        if not U <= V:
            continue
        for K in orc.ideals_of(V):
            if orc(V, K) and U + K != V:
                return False
    return True


def projector(R: RestrictedAlgebra, C: ClassDescriptor, validate: bool = True,
              validate_limit: int = VALIDATE_LIMIT) -> Subspace:
    """A C-projector by descent through a minimal [p]-ideal.

    With A the least minimal [p]-ideal, lift a projector of R/A to U.  If U
    is proper, recurse inside U; otherwise R/A lies in C while R does not,
    so A is non-central and its least [p]-closed complement is returned.
    When the [p]-subalgebra lattice is small the answer is checked against
    the definitional search.
    """
    if not C.schunck:
        raise InputError(f"{C.name} is not a Schunck class; use all_projectors")
    if not series(R.algebra, "derived").reaches_zero:
        raise HypothesisViolation("projectors need a soluble algebra")
    U = _projector_rec(R, C)
    if validate:
        try:
            brute = all_projectors(R, C, budget=validate_limit)
        except CapacityError:
            brute = None
        if brute is not None and U not in brute:
            raise ConsistencyError("descent projector fails the definitional check")
    return U


def _projector_rec(R: RestrictedAlgebra, C: ClassDescriptor) -> Subspace:
    from .cohomology import complement_abelian_ideal
    L = R.algebra
    if R.dim == 0 or is_member(R, C):
        return L.whole()
    A = minimal_p_ideals(R)[0]
    Q, pi = p_quotient(R, A)
    U = pi.lift(_projector_rec(Q, C))
    if U != L.whole():
        S, inc = p_subalgebra(R, U)
        return inc.push_space(_projector_rec(S, C))
    M = complement_abelian_ideal(R, A)
    if M is None:
        raise ConsistencyError("no [p]-closed complement where one must exist")
    return M


def projector_conjugate(R: RestrictedAlgebra, U1: Subspace, U2: Subspace):
    """Elements a_1, ..., a_k of abelian [p]-ideals with
    (1 + ad a_k)...(1 + ad a_1) U1 = U2, found breadth first; None if none."""
    from .cohomology import apply_alpha, image_under
    L = R.algebra
    cands = []
    for A in p_ideals(R):
        if not A.is_zero() and _is_abelian(L, A):
            cands.extend(a for a in A.vectors() if any(a))
    autos = []
    for a in sorted(set(cands)):
        try:
            autos.append((a, apply_alpha(L, a)))
        except ConsistencyError:
            continue
    seen = {U1}
    frontier = [(U1, [])]
    while frontier:
        nxt = []
        for V, path in frontier:
            if V == U2:
                return path
            for a, M in autos:
                W = image_under(M, V)
                if W not in seen:
                    seen.add(W)
                    nxt.append((W, path + [a]))
        frontier = nxt
    return None


def _is_abelian(L: LieAlgebra, A: Subspace) -> bool:
    B = A.basis
    return not any(any(L.bracket(B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B)))


# ---------------------------------------------------------------------------
# chief factors and hypercentrality
# ---------------------------------------------------------------------------

@dataclass
class ChiefFactorReport:
    upper: Subspace
    lower: Subspace
    centralizer: Subspace
    extension: RestrictedAlgebra = dc_field(repr=False)
    central: bool = False


def module_extension(R: RestrictedAlgebra, rep: Representation) -> RestrictedAlgebra:
    """Split extension of V by R/C_R(V), null on V."""
    F = R.field
    kern = _rep_kernel(R, rep)
    if not p_closed_check(R, kern, "ideal"):
        raise ConsistencyError("kernel of a p-module is not a [p]-ideal")
    Q, pi = p_quotient(R, kern) if not kern.is_zero() else (R, None)
    if pi is None:
        repQ = rep
    else:
        repQ = Representation(Q.algebra, rep.dim,
                              [rep.rho(pi.section(unit_vec(Q.dim, s))) for s in range(Q.dim)],
                              check=False)
    if not is_p_module(Q, repQ):
        raise InputError("module is not a p-module")
    return restricted_split_extension(Q, repQ)


def _rep_kernel(R: RestrictedAlgebra, rep: Representation) -> Subspace:
    from .ff_linalg import kernel, mat_flatten
    F = R.field
    cols = [mat_flatten(rep.action[i]) for i in range(R.dim)]
    rows = transpose(cols, R.dim) if cols else []
    if not rows:
        return R.zero()
    return kernel(rows, F, R.dim)


def module_is_central(R: RestrictedAlgebra, rep: Representation, F: ClassDescriptor) -> bool:
    """Is the irreducible p-module V F-central (its extension by R/C_R(V) in F)?"""
    return is_member(module_extension(R, rep), F)


def classify_chief_factor(R: RestrictedAlgebra, upper: Subspace, lower: Subspace,
                          F: ClassDescriptor) -> ChiefFactorReport:
    L = R.algebra
    C = centralizer(L, upper, modulo=lower)
    if not p_closed_check(R, C, "ideal"):
        raise ConsistencyError("centralizer of a [p]-chief factor is not a [p]-ideal")
    from .lie_core import adjoint
    rep = adjoint(L).slice(lower, upper)
    X = module_extension(R, rep)
    return ChiefFactorReport(upper, lower, C, X, is_member(X, F))


@dataclass
class HypercentralSplit:
    central: Subspace
    eccentric: Subspace
    factor_kinds: list


def hypercentral_decomposition(R: RestrictedAlgebra, S: Subspace, rep: Representation,
                               F: ClassDescriptor) -> HypercentralSplit:
    """V = V0 + V1 with V0 (V1) the largest S-submodule whose composition
    factors are all F-central (all F-eccentric).

    Each part is grown greedily through minimal submodules of the quotient;
    a hypercentral submodule not yet reached would map onto a nonzero
    hypercentral submodule of the quotient, so the greedy result is the
    largest one.
    """
    if is_p_subnormal(R, S) is None:
        raise HypothesisViolation("S is not [p]-subnormal")
    RS, inc = p_subalgebra(R, S)
    if not is_member(RS, F):
        raise HypothesisViolation(f"S is not in {F.name}")
    if not is_p_module(R, rep):
        raise InputError("V is not a p-module")
    repS = Representation(RS.algebra, rep.dim, [rep.rho(b) for b in S.basis], check=False)
    kinds = []
    cache = {}

    def central(factor_rep):
        key = tuple(tuple(map(tuple, m)) for m in factor_rep.action)
        if key not in cache:
            cache[key] = module_is_central(RS, factor_rep, F)
        return cache[key]

    def grow(want: bool) -> Subspace:
        cur = Subspace.zero(rep.dim, rep.field)
        while cur.dim < rep.dim:
            Qrep = repS.quotient_rep(cur)
            comp = cur.nonpivots()
            step = None
            for W in Qrep.minimal_submodules():
                if central(Qrep.subrep(W)) == want:
                    step = W
                    break
            if step is None:
                break
            lifted = [_lift_vec(b, comp, rep.dim) for b in step.basis]
            cur = cur.extend(lifted)
        return cur

    V0, V1 = grow(True), grow(False)
    if (V0 & V1).dim or V0.dim + V1.dim != rep.dim:
        raise HypothesisViolation("V is not the direct sum of its hypercentral and hypereccentric parts")
    if not (rep.is_submodule(V0) and rep.is_submodule(V1)):
        raise HypothesisViolation("the components are not L-submodules")
    for fr in repS.composition_factors():
        kinds.append("central" if central(fr) else "eccentric")
    return HypercentralSplit(V0, V1, kinds)


def _lift_vec(u, comp, n):
    v = [0] * n
    for j, a in zip(comp, u):
        v[j] = a
    return tuple(v)


def all_factors_central(R: RestrictedAlgebra, S: Subspace, rep: Representation,
                        F: ClassDescriptor, want: bool = True) -> bool:
    RS, _inc = p_subalgebra(R, S)
    repS = Representation(RS.algebra, rep.dim, [rep.rho(b) for b in S.basis], check=False)
    return all(module_is_central(RS, fr, F) == want for fr in repS.composition_factors())


# ---------------------------------------------------------------------------
# eigenvalue spaces
# ---------------------------------------------------------------------------

class LambdaSpace:
    """An F-subspace of GF(q^d), F = GF(q), given by an F-basis."""

    def __init__(self, base: Field, ext_degree: int, basis):
        if ext_degree < 1:
            raise InputError("extension degree must be positive")
        self.base = base
        self.ext_degree = ext_degree
        self.big = field_make(base.p, base.m * ext_degree)
        self.emb = embedding(base, self.big)
        prime = field_make(base.p)
        big = self.big
        gens = []
        for b in basis:
            if not 0 <= b < big.q:
                raise InputError(f"{b} is not an element of {big}")
            for k in range(base.m):
                gens.append(tuple(big.to_coeffs(big.mul(self.emb[base.p ** k], b))))
        self.space = Subspace.span(gens, big.m, prime)
        self.basis = tuple(self._reduced_basis(basis))

    def _reduced_basis(self, basis):
        out, prime = [], field_make(self.base.p)
        acc = Subspace.zero(self.big.m, prime)
        for b in basis:
            if not acc.contains(tuple(self.big.to_coeffs(b))):
                out.append(b)
                acc = acc + Subspace.span(
                    [tuple(self.big.to_coeffs(self.big.mul(self.emb[self.base.p ** k], b)))
                     for k in range(self.base.m)], self.big.m, prime)
        return out

    @property
    def dim(self) -> int:
        return self.space.dim // self.base.m

    @property
    def name(self) -> str:
        b = ",".join(str(x) for x in self.basis)
        return f"GF({self.base.q})^{self.ext_degree}<{b}>"

    def contains(self, x) -> bool:
        return self.space.contains(tuple(self.big.to_coeffs(x)))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def elements(self) -> list:
        return sorted(self.big.from_coeffs(v) for v in self.space.vectors())

    def is_p_normal(self) -> bool:
        """b^p and b^(p^m) lie in Lambda for every basis element b."""
        big, q = self.big, self.base.q
        return all(self.contains(big.pow(b, big.p)) and self.contains(big.pow(b, q))
                   for b in self.basis)

    def to_json(self) -> dict:
        return {"p": self.base.p, "m": self.base.m, "ext_degree": self.ext_degree,
                "basis": [self.big.to_coeffs(b) for b in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "LambdaSpace":
        base = field_make(int(data["p"]), int(data.get("m", 1)))
        d = int(data.get("ext_degree", 1))
        big = field_make(base.p, base.m * d)
        basis = [big.from_coeffs(b) if isinstance(b, list) else int(b) for b in data["basis"]]
        return cls(base, d, basis)

    def __repr__(self):
        return f"LambdaSpace({self.name}, dim={self.dim})"


def _poly_roots_ok(chi, lam: LambdaSpace | None, F: Field, cache: dict) -> bool:
    hit = cache.get(chi)
    if hit is not None:
        return hit
    deg = len(chi) - 1
    if lam is None:
        ok = len(roots_in(chi, F)) == deg
    else:
        chiB = tuple(lam.emb[c] for c in chi)
        roots = roots_in(chiB, lam.big)
        ok = len(roots) == deg and all(lam.contains(r) for r in roots)
    cache[chi] = ok
    return ok


def eigenvalues_in(R, lam: LambdaSpace | None, limit: int = EIGEN_SCAN_LIMIT) -> bool:
    """Every eigenvalue of every ad x lies in Lambda (default: in F itself)."""
    L = R.algebra if isinstance(R, RestrictedAlgebra) else R
    F = L.field
    if lam is not None and lam.base != F:
        raise InputError("Lambda is over a different base field")
    if F.q ** L.dim > limit:
        raise CapacityError(f"eigenvalue scan over {F.q}^{L.dim} elements exceeds {limit}")
    cache = {}
    for x in product(range(F.q), repeat=L.dim):
        if not _poly_roots_ok(char_poly(ad_matrix(L, x), F), lam, F, cache):
            return False
    return True


@dataclass
class EigenvalueReport:
    values: frozenset
    field: Field
    complete: bool
    sampled: bool


def eigenvalue_set(R, ext_degree: int | None = None, limit: int = EIGEN_SCAN_LIMIT,
                   seed: int = 0) -> EigenvalueReport:
    """Eigenvalues of ad x over x in L, inside GF(q^d).

    Beyond ``limit`` elements a seeded sample is used and flagged.  With no
    degree given, the least d <= 6 splitting every characteristic
    polynomial met is chosen.
    """
    L = R.algebra if isinstance(R, RestrictedAlgebra) else R
    F = L.field
    sampled = F.q ** L.dim > limit
    if sampled:
        rng = random.Random(seed)
        xs = [tuple(rng.randrange(F.q) for _ in range(L.dim)) for _ in range(limit)]
        xs += list(L.basis())
    else:
        xs = list(product(range(F.q), repeat=L.dim))
    polys = sorted({char_poly(ad_matrix(L, x), F) for x in xs})
    degrees = [ext_degree] if ext_degree else list(range(1, 7))
    for d in degrees:
        big = field_make(F.p, F.m * d)
        emb = embedding(F, big)
        vals, complete = set(), True
        for chi in polys:
            rts = roots_in(tuple(emb[c] for c in chi), big)
            vals.update(rts)
            if len(rts) < len(chi) - 1:
                complete = False
        if complete or ext_degree:
            return EigenvalueReport(frozenset(vals), big, complete, sampled)
    return EigenvalueReport(frozenset(vals), big, False, sampled)


def minimal_polynomial(lam: int, base: Field, big: Field) -> tuple:
    """Minimal polynomial over ``base`` of an element of ``big``."""
    emb = embedding(base, big)
    back = {v: i for i, v in enumerate(emb)}
    conj = [lam]
    while True:
        nxt = big.pow(conj[-1], base.q)
        if nxt == lam:
            break
        conj.append(nxt)
    poly = (1,)
    for c in conj:
        poly = poly_mul(poly, (big.neg(c), 1), big)
    try:
        return tuple(back[c] for c in poly)
    except KeyError as exc:
        raise ConsistencyError("minimal polynomial has coefficients outside the base") from exc


def build_P_lambda(minpoly, F: Field, labels_prefix: str = "v") -> RestrictedAlgebra:
    """V + A with V = F[t]/(m), A = span of a^(p^i) for a the companion of m,
    p-map given by matrix p-th powers on A and null on V."""
    mp = poly_trim(tuple(minpoly))
    a = companion(mp, F)
    k = len(a)
    mats = []
    cur = a
    from .ff_linalg import Echelon, mat_flatten
    E = Echelon(F, k * k)
    while E.add(mat_flatten(cur)):
        mats.append(cur)
        cur = mat_pow(cur, F.p, F)
    A_alg = lie_make(F, len(mats), None, [f"a{i}" for i in range(len(mats))])
    basis_space = E.space()
    # p-images of the A basis in A coordinates
    imgs = []
    for M in mats:
        Mp = mat_flatten(mat_pow(M, F.p, F))
        imgs.append(_coords_in(Mp, [mat_flatten(X) for X in mats], F))
    RA = RestrictedAlgebra(A_alg, imgs)
    rep = Representation(A_alg, k, mats)
    labels = [f"{labels_prefix}{i}" for i in range(k)] + list(A_alg.labels)
    return restricted_split_extension(RA, rep, labels=labels)


def _coords_in(v, vecs, F: Field) -> tuple:
    from .ff_linalg import solve
    A = transpose(vecs, len(vecs))
    c = solve(A, v, F, len(vecs))
    if c is None:
        raise ConsistencyError("p-power left the span")
    return tuple(c)


def build_P_lambda_of(lam: int, base: Field, big: Field) -> RestrictedAlgebra:
    return build_P_lambda(minimal_polynomial(lam, base, big), base)


def find_qn(p: int, bound: int = 64) -> tuple:
    """Least n, then least prime q > p, with q dividing p^n - 1."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    for n in range(1, bound + 1):
        qs = [q for q in _prime_factors(p ** n - 1) if q > p]
        if qs:
            return n, min(qs)
    raise CapacityError("no suitable (n, q) below the bound")


# ---------------------------------------------------------------------------
# closure checks on samples
# ---------------------------------------------------------------------------

@dataclass
class ClosureReport:
    name: str
    checked: dict = dc_field(default_factory=dict)
    failures: dict = dc_field(default_factory=dict)

    def ok(self, prop: str) -> bool:
        return not self.failures.get(prop)


def closure_check(C, sample, props=("quot", "sdir", "frat")) -> ClosureReport:
    """Check quotient, subdirect-product and Frattini closure on a sample.

    ``checked`` counts the instances meeting each hypothesis: members for
    "quot", pairs of trivially meeting [p]-ideals with both quotients in the
    class for "sdir", nonzero [p]-ideals inside the [p]-Frattini subalgebra
    with quotient in the class for "frat".  ``C`` is a descriptor
    (membership semantics) or a plain predicate.
    """
    member = _member_fn(C)
    name = C.name if isinstance(C, ClassDescriptor) else getattr(C, "__name__", "class")
    rep = ClosureReport(name, {p: 0 for p in props}, {p: [] for p in props})
    for R in sample:
        lat = p_ideals(R)
        quo = {}
        for K in lat:
            Q = R if K.is_zero() else p_quotient(R, K)[0]
            quo[K] = member(Q)
        mem = quo[R.zero()]
        if "quot" in props and mem:
            for K in lat:
                rep.checked["quot"] += 1
                if not quo[K]:
                    rep.failures["quot"].append((R, K))
        if "sdir" in props:
            nz = [K for K in lat if not K.is_zero()]
            for i, K1 in enumerate(nz):
                for K2 in nz[i + 1:]:
                    if (K1 & K2).is_zero() and quo[K1] and quo[K2]:
                        rep.checked["sdir"] += 1
                        if not mem:
                            rep.failures["sdir"].append((R, K1, K2))
        if "frat" in props:
            psi = p_frattini(R)
            for K in lat:
                if not K.is_zero() and K <= psi and quo[K]:
                    rep.checked["frat"] += 1
                    if not mem:
                        rep.failures["frat"].append((R, K))
    return rep
