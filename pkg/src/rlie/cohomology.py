"""Chevalley-Eilenberg cohomology, complements to abelian ideals, and the
inner automorphisms 1 + ad(a).

An n-cochain is stored as a flat vector indexed by (I, k), where I runs over
the strictly increasing n-tuples of basis indices in lexicographic order and
k over the basis of the module.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb

from .errors import CapacityError, ConsistencyError, HypothesisViolation, InputError
from .ff_linalg import (
    Subspace, identity, kernel, mat_add, mat_mul, mat_vec, rank, solve, transpose,
    unit_vec, vec_add, zeros,
)
from .lie_core import (
    LieAlgebra, Representation, _mod_matrix, ad_matrix, is_ideal, quotient,
)

DEFAULT_MAX_ENTRIES = 4 * 10 ** 6


class CochainComplex:
    """Cochains C^n = Hom(wedge^n L, V) with their differentials, built on demand."""

    def __init__(self, algebra: LieAlgebra, rep: Representation, n_max: int = 3,
                 max_entries: int = DEFAULT_MAX_ENTRIES):
        if rep.algebra is not algebra and rep.algebra != algebra:
            raise InputError("module is over a different algebra")
        self.algebra = algebra
        self.rep = rep
        self.n_max = n_max
        self.max_entries = max_entries
        self._d = {}
        self._index = {}

    def tuples(self, n: int) -> list:
        return list(combinations(range(self.algebra.dim), n))

    def cochain_dim(self, n: int) -> int:
        if n < 0 or n > self.algebra.dim:
            return 0
        return comb(self.algebra.dim, n) * self.rep.dim

    def _idx(self, n: int) -> dict:
        if n not in self._index:
            self._index[n] = {I: t for t, I in enumerate(self.tuples(n))}
        return self._index[n]

    def differential(self, n: int) -> list:
        """Matrix of d^n : C^n -> C^{n+1} (rows indexed by (J, k))."""
        if n in self._d:
            return self._d[n]
        if n > self.n_max:
            raise CapacityError(f"degree {n} exceeds n_max={self.n_max}")
        rows_n, cols_n = self.cochain_dim(n + 1), self.cochain_dim(n)
        if rows_n * cols_n > self.max_entries:
            raise CapacityError(f"d^{n} would have {rows_n * cols_n} entries")
        L, F, d = self.algebra, self.algebra.field, self.rep.dim
        src = self._idx(n)
        M = [[0] * cols_n for _ in range(rows_n)]
        for r, J in enumerate(self.tuples(n + 1)):
            base = r * d
            # sum_i (-1)^i x_i . f(..., x_i omitted, ...)
            for i, ji in enumerate(J):
                rest = J[:i] + J[i + 1:]
                col = src[rest] * d
                act = self.rep.action[ji]
                for k in range(d):
                    for l in range(d):
                        c = act[k][l]
                        if c:
                            M[base + k][col + l] = F.add(M[base + k][col + l],
                                                         c if i % 2 == 0 else F.neg(c))
            # sum_{i<j} (-1)^{i+j} f([x_i, x_j], ... omitted ...)
            for i in range(len(J)):
                for j in range(i + 1, len(J)):
                    rest = J[:i] + J[i + 1:j] + J[j + 1:]
                    br = L.table[J[i]][J[j]]
                    for m, c in enumerate(br):
                        if not c or m in rest:
                            continue
                        pos = sum(1 for t in rest if t < m)
                        I = rest[:pos] + (m,) + rest[pos:]
                        sign = (i + j + pos) % 2
                        val = F.neg(c) if sign else c
                        col = src[I] * d
                        for k in range(d):
                            M[base + k][col + k] = F.add(M[base + k][col + k], val)
        M = [tuple(row) for row in M]
        self._d[n] = M
        return M

    def cocycles(self, n: int) -> Subspace:
        F = self.algebra.field
        dim = self.cochain_dim(n)
        if n + 1 > self.algebra.dim or self.cochain_dim(n + 1) == 0:
            return Subspace.full(dim, F)
        return kernel(self.differential(n), F, dim)

    def coboundary_rank(self, n: int) -> int:
        """Rank of d^{n-1}, i.e. dim B^n."""
        if n <= 0 or self.cochain_dim(n - 1) == 0 or self.cochain_dim(n) == 0:
            return 0
        return rank(self.differential(n - 1), self.algebra.field)

    def coboundaries(self, n: int) -> Subspace:
        F = self.algebra.field
        dim = self.cochain_dim(n)
        if n <= 0 or self.cochain_dim(n - 1) == 0 or dim == 0:
            return Subspace.zero(dim, F)
        D = self.differential(n - 1)
        cols = transpose(D, self.cochain_dim(n - 1)) if D else []
        return Subspace.span([tuple(c) for c in cols], dim, F)

    def h_dim(self, n: int) -> int:
        return self.cocycles(n).dim - self.coboundary_rank(n)

    def check_dd(self, n: int) -> bool:
        """d^{n+1} d^n = 0."""
        if self.cochain_dim(n + 2) == 0 or self.cochain_dim(n) == 0:
            return True
        F = self.algebra.field
        P = mat_mul(self.differential(n + 1), self.differential(n), F)
        return not any(any(r) for r in P)

    def euler_check(self) -> bool:
        """sum (-1)^n dim C^n = sum (-1)^n dim H^n over all degrees."""
        top = self.algebra.dim
        if top > self.n_max:
            raise CapacityError("Euler check needs every degree up to dim L")
        lhs = sum((-1) ** n * self.cochain_dim(n) for n in range(top + 1))
        rhs = sum((-1) ** n * self.h_dim(n) for n in range(top + 1))
        return lhs == rhs


def cohomology_dim(L: LieAlgebra, rep: Representation, n: int, n_max: int = 3,
                   with_basis: bool = False):
    """dim H^n(L, V); with ``with_basis`` also a cocycle basis of a complement to B^n."""
    if n < 0:
        raise InputError("negative degree")
    if n > n_max:
        raise CapacityError(f"degree {n} exceeds n_max={n_max}")
    C = CochainComplex(L, rep, max(n, 1))
    if n > L.dim:
        return (0, []) if with_basis else 0
    h = C.h_dim(n)
    if not with_basis:
        return h
    Z = C.cocycles(n)
    B = C.coboundaries(n)
    reps = []
    cur = B
    for z in Z.basis:
        if not cur.contains(z):
            reps.append(z)
            cur = cur.extend([z])
    return h, reps


# ---------------------------------------------------------------------------
# quotient actions and complements
# ---------------------------------------------------------------------------

def _abelian_ideal_check(L: LieAlgebra, A: Subspace):
    if not is_ideal(L, A):
        raise InputError("A is not an ideal")
    B = A.basis
    if any(any(L.bracket(B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B))):
        raise InputError("A is not abelian")


def quotient_action(L: LieAlgebra, A: Subspace):
    """(Q = L/A, projection, representation of Q on the abelian ideal A)."""
    _abelian_ideal_check(L, A)
    Q, pi = quotient(L, A)
    F = L.field
    mats = []
    for s in range(Q.dim):
        M = ad_matrix(L, pi.section(unit_vec(Q.dim, s)))
        cols = [A.coords(mat_vec(M, a, F)) for a in A.basis]
        mats.append(transpose(cols, A.dim) if cols else [])
    return Q, pi, Representation(Q, A.dim, mats, check=False)


def _complement_system(L: LieAlgebra, A: Subspace):
    """Data for complements {sigma(u) + f(u)}: the differential d^1 and the target -a."""
    Q, pi, rho = quotient_action(L, A)
    F = L.field
    C = CochainComplex(Q, rho, 1)
    d = A.dim
    target = []
    for s, t in combinations(range(Q.dim), 2):
        br = L.bracket(pi.section(unit_vec(Q.dim, s)), pi.section(unit_vec(Q.dim, t)))
        a = vec_add(br, tuple(F.neg(c) for c in pi.section(pi.project(br))), F)
        ac = A.coords(a)
        target.extend(F.neg(c) for c in ac)
    D = C.differential(1) if Q.dim >= 2 and d else []
    return Q, pi, rho, C, D, tuple(target)


def _graph(L: LieAlgebra, A: Subspace, pi, Q, f) -> Subspace:
    F = L.field
    d = A.dim
    vecs = []
    for s in range(Q.dim):
        v = pi.section(unit_vec(Q.dim, s))
        fs = A.combine(f[s * d:(s + 1) * d]) if d else (0,) * L.dim
        vecs.append(vec_add(v, fs, F))
    return Subspace.span(vecs, L.dim, F)


def complement_abelian_ideal(L, A: Subspace, budget: int = 10 ** 5):
    """Least complement (by subspace key) to the abelian ideal A, or None.

    Complements are graphs of f : L/A -> A with d^1 f = -a, where a is the
    2-cocycle of the vector-space section on the non-pivot columns of A.
    For a restricted algebra only [p]-closed complements count, and when A
    is a non-central minimal [p]-ideal the result is also certified maximal
    among [p]-subalgebras.
    """
    from .restricted import RestrictedAlgebra, p_closed_check
    R = L if isinstance(L, RestrictedAlgebra) else None
    Lie = R.algebra if R is not None else L
    _abelian_ideal_check(Lie, A)
    try:
        family = all_complements(Lie, A, budget)
    except CapacityError:
        if R is not None:
            raise
        family = [_particular_complement(Lie, A)]
        family = [M for M in family if M is not None]
    for M in family:
        if not _is_complement(Lie, A, M):
            raise ConsistencyError("complement construction produced a non-complement")
        if R is None:
            return M
        if p_closed_check(R, M):
            _certify_p_complement(R, A, M)
            return M
    return None


def _particular_complement(L: LieAlgebra, A: Subspace):
    Q, pi, rho, C, D, target = _complement_system(L, A)
    ncols = Q.dim * A.dim
    if D:
        f = solve(D, target, L.field, ncols)
        if f is None:
            return None
    else:
        f = (0,) * ncols
    return _graph(L, A, pi, Q, f)


def _is_complement(L: LieAlgebra, A: Subspace, M: Subspace) -> bool:
    from .lie_core import is_subalgebra
    return is_subalgebra(L, M) and (M & A).dim == 0 and M.dim + A.dim == L.dim


def _certify_p_complement(R, A: Subspace, M: Subspace):
    """For a non-central minimal [p]-ideal A: M is [p]-closed and maximal."""
    from .lie_core import center
    from .restricted import minimal_p_ideals, p_closed_check, p_closure
    L = R.algebra
    if not p_closed_check(R, A, "ideal") or A not in minimal_p_ideals(R):
        return
    if A <= center(L):
        return
    if not p_closed_check(R, M):
        raise ConsistencyError("complement of a non-central minimal [p]-ideal is not [p]-closed")
    for v in A.vectors():
        if any(v) and p_closure(R, M.extend([v])) != L.whole():
            raise ConsistencyError("complement is not a maximal [p]-subalgebra")


def all_complements(L: LieAlgebra, A: Subspace, budget: int = 10 ** 5) -> list:
    """Every complement to the abelian ideal A (affine family f_0 + Z^1), sorted."""
    F = L.field
    if A.dim == 0:
        return [L.whole()]
    if A.dim == L.dim:
        return [L.zero()]
    Q, pi, rho, C, D, target = _complement_system(L, A)
    ncols = Q.dim * A.dim
    if D:
        f0 = solve(D, target, F, ncols)
        if f0 is None:
            return []
        Z = kernel(D, F, ncols)
    else:
        f0 = (0,) * ncols
        Z = Subspace.full(ncols, F)
    if F.q ** Z.dim > budget:
        raise CapacityError("too many complements to enumerate")
    out = set()
    for z in Z.vectors():
        out.add(_graph(L, A, pi, Q, vec_add(f0, z, F)))
    return sorted(out, key=lambda S: S.key())


def extension_class_nonzero(L: LieAlgebra, A: Subspace) -> bool:
    """Is the class of the section cocycle nonzero in H^2(L/A, A)?"""
    Q, pi, rho, C, D, target = _complement_system(L, A)
    F = L.field
    a = tuple(F.neg(c) for c in target)
    if not any(a):
        return False
    return not C.coboundaries(2).contains(a) if Q.dim >= 2 else False


# ---------------------------------------------------------------------------
# alpha_a = 1 + ad(a)
# ---------------------------------------------------------------------------

def apply_alpha(L: LieAlgebra, a) -> list:
    """Matrix of 1 + ad(a), certified to be an automorphism of L."""
    F = L.field
    M = mat_add(identity(L.dim), ad_matrix(L, a), F)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = mat_vec(M, L.table[i][j], F)
            rhs = L.bracket(mat_vec(M, unit_vec(L.dim, i), F), mat_vec(M, unit_vec(L.dim, j), F))
            if lhs != rhs:
                raise ConsistencyError("1 + ad(a) is not an automorphism")
    return M


def image_under(M, S: Subspace) -> Subspace:
    F = S.field
    return Subspace.span([mat_vec(M, b, F) for b in S.basis], S.n, F)


def conjugating_element(L: LieAlgebra, A: Subspace, U1: Subspace, U2: Subspace):
    """Least a in A with (1 + ad a)(U1) = U2, or None."""
    F = L.field
    if U1.dim != U2.dim:
        return None
    if U1 == U2:
        return (0,) * L.dim
    N = _mod_matrix(U2)
    rows, rhs = [], []
    for u in U1.basis:
        # u + [a, u] in U2  <=>  N(-ad(u) A c) = -N u
        Mu = ad_matrix(L, u)
        cols = [tuple(F.neg(x) for x in mat_vec(N, mat_vec(Mu, b, F), F)) for b in A.basis]
        block = transpose(cols, len(N)) if cols else [() for _ in N]
        rows.extend(block)
        rhs.extend(F.neg(x) for x in mat_vec(N, u, F))
    if not A.dim:
        return None
    c = solve(rows, tuple(rhs), F, A.dim)
    if c is None:
        return None
    a = A.combine(c)
    if image_under(apply_alpha(L, a), U1) != U2:
        raise ConsistencyError("conjugating element does not map U1 onto U2")
    return a
