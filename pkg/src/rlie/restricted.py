"""p-operations on Lie algebras and the structure theory built on them.

A restricted algebra is a Lie algebra together with the images of its basis
under the p-map.  By Jacobson's theorem those images determine the p-map
everywhere; :func:`evaluate_p` reconstructs it through the additive law
with the correction terms s_i(x, y), and checks ad(x^[p]) = ad(x)^p on
every value it returns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import CapacityError, ConsistencyError, HypothesisViolation, InputError, NotRestrictable
from .ff_linalg import (
    Echelon, Subspace, identity, kernel, lin_comb, mat_eq, mat_flatten, mat_mul, mat_pow,
    mat_vec, projective_points, solve, subspace_count, transpose, unit_vec, vec_add,
    vec_scale, zeros,
)
from .lie_core import (
    DEFAULT_BUDGET, LieAlgebra, Representation, adjoint, ad_matrix, center, centralizer,
    closure, ideals, is_ideal, is_subalgebra, lie_from_json, maximal_elements,
    parse_vector, proper_invariant_subspace, quotient, series, split_extension,
)

FULL_SCAN_LIMIT = 10 ** 4


@dataclass(frozen=True)
class POperation:
    """Basis images e_i -> e_i^[p] of a p-operation."""

    algebra: LieAlgebra
    images: tuple


class RestrictedAlgebra:
    """A Lie algebra with a p-operation, validated on construction."""

    def __init__(self, algebra: LieAlgebra, images, check: bool = True):
        self.algebra = algebra
        self.images = tuple(tuple(v) for v in images)
        if len(self.images) != algebra.dim or any(len(v) != algebra.dim for v in self.images):
            raise InputError("need one p-image of length dim per basis element")
        self.pop = POperation(algebra, self.images)
        self._cache = {}
        if check:
            bad = basis_violation(algebra, self.images)
            if bad is not None:
                raise InputError(f"ad(e_{bad})^p != ad(image of e_{bad}); not a p-operation")

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def p(self):
        return self.algebra.field.p

    def pmap(self, x) -> tuple:
        return evaluate_p(self, x)

    def bracket(self, x, y):
        return self.algebra.bracket(x, y)

    def whole(self):
        return self.algebra.whole()

    def zero(self):
        return self.algebra.zero()

    def span(self, vectors):
        return self.algebra.span(vectors)

    def is_null(self) -> bool:
        return self.algebra.is_abelian() and not any(any(v) for v in self.images)

    def __eq__(self, other):
        return (isinstance(other, RestrictedAlgebra) and self.algebra == other.algebra
                and self.images == other.images)

    def __hash__(self):
        return hash((self.algebra, self.images))

    def __repr__(self):
        return f"RestrictedAlgebra(dim={self.dim}, field={self.field!r})"

    def fingerprint(self):
        return (self.field.p, self.field.m, self.dim, self.algebra.table, self.images)

    def to_json(self) -> dict:
        data = self.algebra.to_json()
        F = self.field
        data["p_images"] = [[F.to_coeffs(c) for c in v] for v in self.images]
        return data


def restricted_from_json(data: dict):
    """RestrictedAlgebra when p_images are given or the zero images work, else LieAlgebra."""
    L = lie_from_json(data)
    imgs = data.get("p_images")
    if imgs is not None:
        vecs = [parse_vector(L.field, v, L.dim) for v in imgs]
        if len(vecs) != L.dim:
            raise InputError("p_images must list one vector per basis element")
        return jacobson_construct(L, vecs)
    zero = [(0,) * L.dim] * L.dim
    if basis_violation(L, zero) is None:
        return RestrictedAlgebra(L, zero, check=False)
    return L


# ---------------------------------------------------------------------------
# construction and evaluation
# ---------------------------------------------------------------------------

def _ad_power(L: LieAlgebra, x) -> list:
    return mat_pow(ad_matrix(L, x), L.field.p, L.field)


def basis_violation(L: LieAlgebra, images):
    for i in range(L.dim):
        if not mat_eq(_ad_power(L, unit_vec(L.dim, i)), ad_matrix(L, images[i])):
            return i
    return None


def jacobson_construct(L: LieAlgebra, images) -> RestrictedAlgebra:
    """The unique p-operation with the given basis images (validated)."""
    images = [tuple(v) for v in images]
    bad = basis_violation(L, images)
    if bad is not None:
        raise InputError(f"ad({L.labels[bad]})^p is not ad of the proposed image")
    return RestrictedAlgebra(L, images, check=False)


def jacobson_correction(L: LieAlgebra, x, y) -> tuple:
    """S(x, y) = sum_i s_i(x, y), with i*s_i the t^(i-1) coefficient of ad(tx+y)^(p-1)(x)."""
    F = L.field
    p = F.p
    n = L.dim
    zero = (0,) * n
    w = [tuple(x)]
    for _ in range(p - 1):
        new = [zero] * (len(w) + 1)
        for d, wd in enumerate(w):
            if any(wd):
                new[d + 1] = vec_add(new[d + 1], L.bracket(x, wd), F)
                new[d] = vec_add(new[d], L.bracket(y, wd), F)
        w = new
    total = zero
    for i in range(1, p):
        if any(w[i - 1]):
            total = vec_add(total, vec_scale(F.inv(i), w[i - 1], F), F)
    return total


def evaluate_p(R: RestrictedAlgebra, x, verify: bool = True) -> tuple:
    """x^[p], built up one basis coordinate at a time with the additive law."""
    x = tuple(x)
    hit = R._cache.get(x)
    if hit is not None:
        return hit
    L, F = R.algebra, R.field
    n = L.dim
    acc = (0,) * n
    partial = (0,) * n
    for i, c in enumerate(x):
        if not c:
            continue
        term = vec_scale(F.frob(c), R.images[i], F)
        y = vec_scale(c, unit_vec(n, i), F)
        if any(partial):
            acc = vec_add(vec_add(acc, term, F), jacobson_correction(L, partial, y), F)
        else:
            acc = term
        partial = vec_add(partial, y, F)
    if verify and not mat_eq(ad_matrix(L, acc), _ad_power(L, x)):
        raise ConsistencyError(f"evaluate_p produced a value whose ad is not ad(x)^p for x={x}")
    R._cache[x] = acc
    return acc


# ---------------------------------------------------------------------------
# restrictability
# ---------------------------------------------------------------------------

def restrictable_images(L: LieAlgebra, cross_check: bool = True):
    """Lexicographically least basis images making L restricted, or None.

    Checking the basis suffices: x -> ad(x)^p - ad(x^[p]) differs from a
    p-semilinear map by inner derivations built from brackets, so if each
    ad(e_i)^p is inner then so is ad(x)^p for every x.
    """
    F, n = L.field, L.dim
    cols = [mat_flatten(L.ad_basis[j]) for j in range(n)]
    A = transpose(cols, n * n) if n else []
    images = []
    for i in range(n):
        target = mat_flatten(_ad_power(L, unit_vec(n, i)))
        sol = solve(A, target, F, n) if n else ()
        if sol is None:
            images = None
            break
        images.append(sol)
    if cross_check and F.q ** n <= FULL_SCAN_LIMIT:
        scan = all(solve(A, mat_flatten(_ad_power(L, x)), F, n) is not None
                   for x in product(range(F.q), repeat=n))
        if scan != (images is not None):
            raise ConsistencyError("basis restrictability test disagrees with the full element scan")
    return images


def is_restrictable(L: LieAlgebra) -> bool:
    return restrictable_images(L) is not None


def make_restricted(L: LieAlgebra) -> RestrictedAlgebra:
    images = restrictable_images(L)
    if images is None:
        raise NotRestrictable("the algebra is not restrictable")
    return RestrictedAlgebra(L, images, check=False)


def enumerate_p_operations(L, budget: int = DEFAULT_BUDGET) -> list:
    """Every p-operation on L: base images shifted by arbitrary images in Z(L).

    Two p-operations differ by a p-semilinear map into the centre, which is
    determined by its (arbitrary) values on the basis.
    """
    if isinstance(L, RestrictedAlgebra):
        L = L.algebra
    base = restrictable_images(L)
    if base is None:
        return []
    Z = center(L)
    F = L.field
    count = F.q ** (Z.dim * L.dim)
    if count > budget:
        raise CapacityError(f"{count} p-operations exceed the budget {budget}")
    zvecs = list(Z.vectors())
    out = []
    for shift in product(zvecs, repeat=L.dim):
        imgs = [vec_add(b, z, F) for b, z in zip(base, shift)]
        out.append(RestrictedAlgebra(L, imgs, check=False))
    return out


# ---------------------------------------------------------------------------
# [p]-closures and lattices
# ---------------------------------------------------------------------------

def p_closure(R: RestrictedAlgebra, U: Subspace, kind: str = "subalgebra",
              within: Subspace | None = None) -> Subspace:
    """Smallest [p]-subalgebra (or [p]-ideal of L, or of ``within``) containing U."""
    L = R.algebra
    mode = "subalgebra" if kind == "subalgebra" else "ideal"
    if kind not in ("subalgebra", "ideal"):
        raise InputError(f"unknown closure kind {kind!r}")
    S = closure(L, U, mode, within) if mode == "ideal" else closure(L, U, mode)
    while True:
        E = Echelon(L.field, L.dim, S)
        grew = False
        for b in S.basis:
            if E.add(evaluate_p(R, b)):
                grew = True
        if not grew:
            return S
        S = E.space()
        S = closure(L, S, mode, within) if mode == "ideal" else closure(L, S, mode)


def p_closed_check(R: RestrictedAlgebra, U: Subspace, kind: str = "subalgebra",
                   within: Subspace | None = None) -> bool:
    """Basis-image test; for a subalgebra U the correction terms already lie in U."""
    L = R.algebra
    if kind == "subalgebra":
        if not is_subalgebra(L, U):
            return False
    elif kind == "ideal":
        if not is_ideal(L, U, within):
            return False
    else:
        raise InputError(f"unknown kind {kind!r}")
    return all(U.contains(evaluate_p(R, b)) for b in U.basis)


def enumerate_p_subalgebras(R: RestrictedAlgebra, filter="all", budget: int = DEFAULT_BUDGET,
                            within: Subspace | None = None) -> list:
    """All [p]-subalgebras of R (or inside the [p]-subalgebra ``within``)."""
    L, F = R.algebra, R.field
    top = L.whole() if within is None else within
    if subspace_count(top.dim, F.q) > budget:
        raise CapacityError("subspace count exceeds the enumeration budget")
    zero = L.zero()
    found = {zero}
    frontier = [zero]
    steps = 0
    from .lie_core import _complement_points
    while frontier:
        nxt = []
        for U in frontier:
            for v in _complement_points(top, U):
                steps += 1
                if steps > budget:
                    raise CapacityError("[p]-subalgebra search exceeded the budget")
                W = p_closure(R, U.extend([v]))
                if W not in found:
                    found.add(W)
                    nxt.append(W)
        frontier = nxt
    subs = sorted(found, key=lambda S: S.key())
    if filter == "all":
        return subs
    if filter == "maximal":
        return maximal_elements([S for S in subs if S != top])
    if filter == "ideals":
        return [S for S in subs if is_ideal(L, S, top)]
    if callable(filter):
        return [S for S in subs if filter(S)]
    raise InputError(f"unknown filter {filter!r}")


def p_ideals(R: RestrictedAlgebra, budget: int = DEFAULT_BUDGET) -> list:
    """The [p]-ideal lattice, sorted by (dim, basis).

    For a primitive algebra every nonzero [p]-ideal contains the socle, so
    the lattice is {0} plus the lifted lattice of R/soc; otherwise the ideal
    lattice is filtered by the basis-image test.
    """
    soc = is_primitive(R)
    L = R.algebra
    if soc is not None and soc != L.whole() and not soc.is_zero():
        Q, pi = p_quotient(R, soc)
        lifted = [pi.lift(K) for K in p_ideals(Q, budget)]
        return sorted([L.zero()] + lifted, key=lambda S: S.key())
    return [K for K in ideals(L, budget) if all(K.contains(evaluate_p(R, b)) for b in K.basis)]


def _p_ideal_generated(R: RestrictedAlgebra, v) -> Subspace:
    return p_closure(R, R.span([v]), "ideal")


def minimal_p_ideals(R: RestrictedAlgebra) -> list:
    """All minimal [p]-ideals, sorted by (dim, basis)."""
    L, F = R.algebra, R.field
    if L.dim == 0:
        return []
    soc = is_primitive(R)
    if soc is not None:
        return [soc]
    found = []
    for v in projective_points(L.dim, F):
        if any(M.contains(v) for M in found):
            continue
        S = _p_ideal_generated(R, v)
        if any(M <= S for M in found):
            continue
        found.append(_descend_p_ideal(R, S))
    return sorted(found, key=lambda S: S.key())


def _descend_p_ideal(R: RestrictedAlgebra, S: Subspace) -> Subspace:
    F = R.field
    while True:
        for c in projective_points(S.dim, F):
            T = _p_ideal_generated(R, S.combine(c))
            if T != S:
                S = T
                break
        else:
            return S


def _ops_on(R: RestrictedAlgebra, W: Subspace) -> list:
    """Matrices (in W-coordinates) of ad(e_i) and of the p-map on an abelian [p]-ideal W.

    On an abelian [p]-ideal over a prime field the p-map is additive and
    fixes scalars, hence linear.
    """
    L, F = R.algebra, R.field
    mats = []
    for M in L.ad_basis:
        cols = [W.coords(mat_vec(M, w, F)) for w in W.basis]
        mats.append(transpose(cols, W.dim))
    cols = [W.coords(evaluate_p(R, w)) for w in W.basis]
    mats.append(transpose(cols, W.dim))
    return mats


def _minimal_in_abelian(R: RestrictedAlgebra, W: Subspace) -> Subspace:
    """One minimal [p]-ideal of L contained in the abelian [p]-ideal W."""
    F = R.field
    if F.m > 1:
        v = W.basis[0]
        return _descend_p_ideal(R, _p_ideal_generated(R, v))
    S = W
    while True:
        mats = _ops_on(R, S)
        U = proper_invariant_subspace(mats, S.dim, F)
        if U is None:
            return S
        S = Subspace.span([S.combine(b) for b in U.basis], R.dim, F)


def is_primitive(R: RestrictedAlgebra):
    """The socle when R is primitive, else None.

    Let D be the last nonzero derived term; W = D_[p] is an abelian
    [p]-ideal.  A primitive algebra has a unique minimal [p]-ideal, lying in
    every nonzero [p]-ideal and so in W; and a minimal [p]-ideal A with
    C_L(A) = A is automatically the unique one.  So it is enough to test a
    single minimal [p]-ideal found inside W.
    """
    L = R.algebra
    if L.dim == 0:
        return None
    der = series(L, "derived")
    if not der.reaches_zero:
        return None
    D = der.terms[-2]
    W = p_closure(R, D, "ideal")
    A = _minimal_in_abelian(R, W)
    if centralizer(L, A) == A:
        return A
    return None


def socle(R: RestrictedAlgebra) -> Subspace:
    """Sum of the minimal [p]-ideals."""
    out = R.zero()
    for A in minimal_p_ideals(R):
        out = out + A
    return out


# ---------------------------------------------------------------------------
# quotients, extensions, modules
# ---------------------------------------------------------------------------

class PQuotientMap:
    """Projection R -> R/K for a [p]-ideal K (wraps the ordinary quotient map)."""

    def __init__(self, inner, target: RestrictedAlgebra):
        self.inner = inner
        self.source = inner.source
        self.ideal = inner.ideal
        self.target = target
        self.indices = inner.indices

    def project(self, v):
        return self.inner.project(v)

    def section(self, u):
        return self.inner.section(u)

    def lift(self, S):
        return self.inner.lift(S)

    def image(self, S):
        return self.inner.image(S)


def p_quotient(R: RestrictedAlgebra, K: Subspace):
    """(R/K, projection) with the induced p-operation."""
    if not p_closed_check(R, K, "ideal"):
        raise InputError("quotient by a subspace that is not a [p]-ideal")
    Q, pi = quotient(R.algebra, K)
    imgs = [pi.project(evaluate_p(R, pi.section(unit_vec(Q.dim, s)))) for s in range(Q.dim)]
    RQ = RestrictedAlgebra(Q, imgs, check=True)
    return RQ, PQuotientMap(pi, RQ)


def p_subalgebra(R: RestrictedAlgebra, S: Subspace):
    """A [p]-subalgebra as a restricted algebra on its RREF basis."""
    from .lie_core import subalgebra
    if not p_closed_check(R, S, "subalgebra"):
        raise InputError("subspace is not a [p]-subalgebra")
    A, inc = subalgebra(R.algebra, S)
    imgs = [inc.pull(evaluate_p(R, b)) for b in S.basis]
    return RestrictedAlgebra(A, imgs, check=False), inc


def is_p_module(R: RestrictedAlgebra, rep: Representation) -> bool:
    """rho(e_i^[p]) = rho(e_i)^p on the basis (the defect is p-semilinear)."""
    F = R.field
    for i in range(R.dim):
        lhs = rep.rho(R.images[i])
        rhs = mat_pow(rep.action[i], F.p, F)
        if not mat_eq(lhs, rhs):
            return False
    return True


def restricted_split_extension(R: RestrictedAlgebra, rep: Representation,
                               module_pop=None, labels=None) -> RestrictedAlgebra:
    """V + L carrying [p] on L and the null map (or ``module_pop``) on V."""
    if not is_p_module(R, rep):
        raise InputError("the module is not a p-module")
    F = R.field
    X = split_extension(R.algebra, rep, labels)
    d = rep.dim
    inv = rep.invariants()
    imgs = []
    for i in range(d):
        v = tuple(module_pop[i]) if module_pop is not None else (0,) * d
        if not inv.contains(v):
            raise InputError("module p-images must be L-invariant vectors")
        imgs.append(v + (0,) * R.dim)
    for i in range(R.dim):
        imgs.append((0,) * d + tuple(R.images[i]))
    return jacobson_construct(X, imgs)


def null_on_ideal_pop(R: RestrictedAlgebra, A: Subspace) -> RestrictedAlgebra:
    """A p-operation vanishing on the abelian ideal A, old images on the pivot complement."""
    L = R.algebra
    if not is_ideal(L, A) or not series(L, "derived", A).terms[-1].is_zero() \
            or any(any(L.bracket(a, b)) for a in A.basis for b in A.basis):
        raise InputError("null_on_ideal_pop needs an abelian ideal")
    F = R.field
    n = L.dim
    imgs = [None] * n
    # new basis: A's RREF rows (images 0) plus unit vectors at non-pivots (old images)
    comp = A.nonpivots()
    basis = list(A.basis) + [unit_vec(n, j) for j in comp]
    new_imgs = [(0,) * n] * A.dim + [evaluate_p(R, unit_vec(n, j)) for j in comp]
    # translate to images of the standard basis via the semilinear extension
    Bmat = transpose(basis, n)  # columns = new basis
    from .ff_linalg import inverse
    Binv = inverse(Bmat, F)
    for i in range(n):
        coeffs = mat_vec(Binv, unit_vec(n, i), F)  # e_i = sum c_k basis_k
        # (sum c_k b_k)^[p] = sum c_k^p b_k^[p] + correction terms
        val = (0,) * n
        partial = (0,) * n
        for c, b, img in zip(coeffs, basis, new_imgs):
            if not c:
                continue
            y = vec_scale(c, b, F)
            term = vec_scale(F.frob(c), img, F)
            if any(partial):
                val = vec_add(vec_add(val, term, F), jacobson_correction(L, partial, y), F)
            else:
                val = term
            partial = vec_add(partial, y, F)
        imgs[i] = val
    return jacobson_construct(L, imgs)


# ---------------------------------------------------------------------------
# chief series
# ---------------------------------------------------------------------------

@dataclass
class ChiefFactor:
    upper: Subspace
    lower: Subspace
    dim: int
    null: bool
    central: bool
    atom: bool
    module: Representation = field(repr=False, default=None)

    @property
    def kind(self) -> str:
        if self.central and self.atom and not self.null:
            return "central_atom"
        if self.null and self.central:
            return "null_central"
        if self.null:
            return "null"
        return "other"


@dataclass
class ChiefSeries:
    terms: list
    factors: list


def factor_is_atom(R: RestrictedAlgebra, upper: Subspace, lower: Subspace) -> bool:
    """Is upper/lower, viewed as an abelian restricted algebra, free of proper [p]-subalgebras?"""
    F = R.field
    L = R.algebra
    idx = [i for i in range(upper.dim)]
    # coordinates of upper/lower: reduce upper's basis modulo lower
    low_in_up = Subspace.span([upper.coords(b) for b in lower.basis], upper.dim, F)
    comp = low_in_up.nonpivots()
    k = len(comp)
    if k == 0:
        return False

    def to_factor(v):
        r = low_in_up.reduce(upper.coords(v))
        return tuple(r[j] for j in comp)

    def from_factor(u):
        c = [0] * upper.dim
        for j, a in zip(comp, u):
            c[j] = a
        return upper.combine(c)

    for u in projective_points(k, F):
        # span of u, u^[p], u^[p^2], ... in the factor
        E = Echelon(F, k)
        E.add(u)
        cur = u
        while True:
            nxt = to_factor(evaluate_p(R, from_factor(cur)))
            if not E.add(nxt):
                break
            cur = nxt
        if E.dim < k:
            return False
    return True


def classify_factor(R: RestrictedAlgebra, upper: Subspace, lower: Subspace) -> ChiefFactor:
    L = R.algebra
    null = all(lower.contains(evaluate_p(R, b)) for b in upper.basis)
    central = all(lower.contains(L.bracket(x, a)) for x in L.basis() for a in upper.basis)
    atom = factor_is_atom(R, upper, lower) if (central or upper.dim - lower.dim == 1) else False
    module = adjoint(L).slice(lower, upper)
    return ChiefFactor(upper, lower, upper.dim - lower.dim, null, central, atom, module)


def p_chief_series(R: RestrictedAlgebra) -> ChiefSeries:
    """Bottom-up, taking the lexicographically least minimal [p]-ideal of each quotient."""
    L = R.algebra
    chain = [L.zero()]
    cur_R, pi = R, None
    while chain[-1].dim < L.dim:
        mins = minimal_p_ideals(cur_R)
        if not mins:
            raise HypothesisViolation("no minimal [p]-ideal in a nonzero quotient")
        A = mins[0]
        lifted = A if pi is None else _lift_chain(pi, A)
        chain.append(lifted)
        cur_R, pi = p_quotient(R, lifted)
    terms = list(reversed(chain))
    factors = [classify_factor(R, terms[i], terms[i + 1]) for i in range(len(terms) - 1)]
    return ChiefSeries(terms, factors)


def _lift_chain(pi, A):
    return pi.lift(A)


# ---------------------------------------------------------------------------
# [p]-Frattini, subnormality
# ---------------------------------------------------------------------------

def p_frattini(R: RestrictedAlgebra, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Intersection of the maximal [p]-subalgebras."""
    out = R.whole()
    for M in enumerate_p_subalgebras(R, "maximal", budget):
        out = out & M
    return out


def is_p_subnormal(R: RestrictedAlgebra, S: Subspace):
    """The chain L = T_0 > T_1 > ... > S when S is [p]-subnormal, else None."""
    L = R.algebra
    chain = [L.whole()]
    while True:
        T = chain[-1]
        if T == S:
            return chain
        nxt = p_closure(R, closure(L, S, "ideal", within=T), "ideal", within=T)
        if nxt == T:
            return None
        chain.append(nxt)


def is_nilpotent(R: RestrictedAlgebra, S: Subspace | None = None) -> bool:
    from .lie_core import is_nilpotent as _nil
    return _nil(R.algebra, S)


def is_soluble(R: RestrictedAlgebra) -> bool:
    return series(R.algebra, "derived").reaches_zero


def is_atom(R: RestrictedAlgebra) -> bool:
    """No proper nonzero [p]-subalgebra."""
    if R.dim == 0 or not R.algebra.is_abelian():
        return False
    return factor_is_atom(R, R.whole(), R.zero())


def primitive_quotients(R: RestrictedAlgebra, lattice=None) -> list:
    """Pairs (K, A) with R/K primitive and A/K its socle.

    R/K is primitive iff some cover A of K in the [p]-ideal lattice has
    {x : [x, A] in K} = A.
    """
    L = R.algebra
    lat = p_ideals(R) if lattice is None else lattice
    out = []
    for K in lat:
        if K == L.whole():
            continue
        above = [A for A in lat if K < A]
        covers = [A for A in above if not any(K < B < A for B in above)]
        for A in sorted(covers, key=lambda S: S.key()):
            if centralizer(L, A, modulo=K) == A:
                out.append((K, A))
                break
    return out
