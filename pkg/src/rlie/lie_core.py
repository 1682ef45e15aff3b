"""Ordinary finite-dimensional Lie algebras given by structure constants.

An algebra stores the full bracket table of its basis, plus the basis
ad-matrices.  Everything else (closures, series, quotients, modules,
subalgebra enumeration) is linear algebra over those tables, with
subspaces always in canonical RREF form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CapacityError, InputError
from .ff_linalg import (
    Echelon, Field, Subspace, field_from_json, identity, image, inverse, kernel, kron,
    lin_comb, mat_add, mat_mul, mat_scale, mat_sub, mat_vec, projective_points,
    subspace_count, transpose, unit_vec, zeros,
)

DEFAULT_BUDGET = 10 ** 7


class LieAlgebra:
    """A Lie algebra over a finite field, defined by structure constants.

    Parameters
    ----------
    field : Field
    dim : int
    sc : dict
        Maps ``(i, j)`` with ``i < j`` to the coefficient vector of
        ``[e_i, e_j]``.  Missing pairs bracket to zero.
    labels : sequence of str, optional
    """

    def __init__(self, field: Field, dim: int, sc=None, labels=None, check: bool = True):
        self.field = field
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise InputError(f"{len(self.labels)} labels for dimension {dim}")
        zero = (0,) * dim
        T = [[zero] * dim for _ in range(dim)]
        for (i, j), v in (sc or {}).items():
            v = tuple(v)
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise InputError(f"bad bracket index pair ({i}, {j})")
            if len(v) != dim or any(not 0 <= c < field.q for c in v):
                raise InputError(f"bracket value for ({i}, {j}) has wrong shape or entries")
            if i > j:
                i, j = j, i
                v = tuple(field.neg(c) for c in v)
            T[i][j] = v
            T[j][i] = tuple(field.neg(c) for c in v)
        self.table = tuple(tuple(r) for r in T)
        self._sparse = []
        for i in range(dim):
            for j in range(i + 1, dim):
                v = T[i][j]
                nz = tuple((k, c) for k, c in enumerate(v) if c)
                if nz:
                    self._sparse.append((i, j, nz))
        # ad_basis[i][k][j] = coefficient of e_k in [e_i, e_j]
        self.ad_basis = tuple(
            tuple(tuple(T[i][j][k] for j in range(dim)) for k in range(dim)) for i in range(dim))
        if check:
            bad = self.jacobi_violation()
            if bad is not None:
                raise InputError(f"Jacobi identity fails on basis triple {bad}")

    # -- structure ---------------------------------------------------------
    def sc(self) -> dict:
        return {(i, j): self.table[i][j] for i, j, _ in self._sparse}

    def bracket(self, x, y) -> tuple:
        F = self.field
        n = self.dim
        if F.m == 1:
            p = F.p
            acc = [0] * n
            for i, j, nz in self._sparse:
                c = x[i] * y[j] - x[j] * y[i]
                if c % p:
                    for k, a in nz:
                        acc[k] += c * a
            return tuple(a % p for a in acc)
        add, sub, mul = F.add, F.sub, F.mul
        acc = [0] * n
        for i, j, nz in self._sparse:
            c = sub(mul(x[i], y[j]), mul(x[j], y[i]))
            if c:
                for k, a in nz:
                    acc[k] = add(acc[k], mul(c, a))
        return tuple(acc)

    def jacobi_violation(self):
        T, F, n = self.table, self.field, self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = self.bracket(unit_vec(n, i), T[j][k])
                    s = tuple(F.add(a, b) for a, b in zip(s, self.bracket(unit_vec(n, j), T[k][i])))
                    s = tuple(F.add(a, b) for a, b in zip(s, self.bracket(unit_vec(n, k), T[i][j])))
                    if any(s):
                        return (i, j, k)
        return None

    def ad(self, x) -> list:
        """Matrix of y -> [x, y]."""
        return ad_matrix(self, x)

    def basis(self) -> list:
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    def whole(self) -> Subspace:
        return Subspace.full(self.dim, self.field)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim, self.field)

    def span(self, vectors) -> Subspace:
        return Subspace.span(vectors, self.dim, self.field)

    def is_abelian(self) -> bool:
        return not self._sparse

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.dim, self.table))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field!r}, labels={list(self.labels)})"

    def fmt(self, v) -> str:
        """Human-readable vector in terms of the basis labels."""
        terms = []
        for c, lab in zip(v, self.labels):
            if c:
                terms.append(lab if c == 1 else f"{c}{lab}")
        return " + ".join(terms) or "0"

    def fmt_space(self, S: Subspace) -> str:
        return "<" + ", ".join(self.fmt(b) for b in S.basis) + ">"

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "dim": self.dim,
            "labels": list(self.labels),
            "brackets": [{"i": i, "j": j, "value": [F.to_coeffs(c) for c in self.table[i][j]]}
                         for i, j, _ in self._sparse],
        }


def lie_make(field: Field, dim: int, sc=None, labels=None) -> LieAlgebra:
    """Validated algebra from structure constants (raises on Jacobi failure)."""
    return LieAlgebra(field, dim, sc, labels)


def parse_element(F: Field, value):
    if isinstance(value, int):
        if not 0 <= value < F.q:
            raise InputError(f"element {value} out of range for {F!r}")
        return value
    return F.from_coeffs(value)


def parse_vector(F: Field, values, dim: int) -> tuple:
    if len(values) != dim:
        raise InputError(f"vector of length {len(values)}, expected {dim}")
    return tuple(parse_element(F, x) for x in values)


def lie_from_json(data: dict) -> LieAlgebra:
    try:
        F = field_from_json(data["field"])
        dim = int(data["dim"])
        sc = {}
        for br in data.get("brackets", []):
            i, j = int(br["i"]), int(br["j"])
            if i >= j:
                raise InputError(f"bracket entries need i < j, got ({i}, {j})")
            sc[(i, j)] = parse_vector(F, br["value"], dim)
        return LieAlgebra(F, dim, sc, data.get("labels"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra description: {exc}") from exc


def ad_matrix(L: LieAlgebra, x) -> list:
    F = L.field
    n = L.dim
    coeffs = [c for c in x]
    if F.m == 1:
        p = F.p
        acc = [[0] * n for _ in range(n)]
        for i, c in enumerate(coeffs):
            if c:
                for k, row in enumerate(L.ad_basis[i]):
                    r = acc[k]
                    for j, a in enumerate(row):
                        if a:
                            r[j] += c * a
        return [tuple(a % p for a in r) for r in acc]
    acc = zeros(n, n)
    for i, c in enumerate(coeffs):
        if c:
            acc = mat_add(acc, mat_scale(c, L.ad_basis[i], F), F)
    return acc


def bracket_span(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """[A, B] = span of all brackets [a, b]."""
    E = Echelon(L.field, L.dim)
    for a in A.basis:
        for b in B.basis:
            E.add(L.bracket(a, b))
    return E.space()


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    B = S.basis
    return all(S.contains(L.bracket(B[i], B[j]))
               for i in range(len(B)) for j in range(i + 1, len(B)))


def is_ideal(L: LieAlgebra, S: Subspace, within: Subspace | None = None) -> bool:
    """[within, S] is contained in S (within defaults to L)."""
    outer = L.basis() if within is None else within.basis
    return all(S.contains(L.bracket(x, s)) for x in outer for s in S.basis)


def closure(L: LieAlgebra, S: Subspace, mode: str = "subalgebra",
            within: Subspace | None = None) -> Subspace:
    """Smallest subalgebra (or ideal of L, or of ``within``) containing S."""
    if mode == "subalgebra":
        E = Echelon(L.field, L.dim, S)
        gens = list(S.basis)
        queue = list(gens)
        while queue:
            v = queue.pop(0)
            for w in list(gens):
                z = L.bracket(v, w)
                if any(z) and E.add(z):
                    gens.append(z)
                    queue.append(z)
        return E.space()
    if mode == "ideal":
        if within is None:
            return spin(L.ad_basis, S.basis, L.dim, L.field, S)
        mats = [ad_matrix(L, x) for x in within.basis]
        return spin(mats, S.basis, L.dim, L.field, S)
    raise InputError(f"unknown closure mode {mode!r}")


def spin(mats, vectors, n: int, F: Field, start: Subspace | None = None) -> Subspace:
    """Smallest subspace containing ``vectors`` (and ``start``) stable under ``mats``."""
    E = Echelon(F, n, start)
    queue = [tuple(v) for v in vectors]
    for v in queue:
        E.add(v)
    while queue:
        v = queue.pop()
        for M in mats:
            w = mat_vec(M, v, F)
            if any(w) and E.add(w):
                queue.append(w)
    return E.space()


def _mod_matrix(U: Subspace) -> list:
    """Rows of the linear map v -> (nonpivot coordinates of v reduced mod U)."""
    F = U.field
    rows = []
    for j in U.nonpivots():
        r = [0] * U.n
        r[j] = 1
        for brow, c in zip(U.basis, U.pivots):
            if brow[j]:
                r[c] = F.neg(brow[j])
        rows.append(tuple(r))
    return rows


def centralizer(L: LieAlgebra, A: Subspace, modulo: Subspace | None = None,
                within: Subspace | None = None) -> Subspace:
    """{x : [x, A] in modulo} (modulo defaults to 0), optionally intersected with within."""
    F = L.field
    rows = []
    N = _mod_matrix(modulo) if modulo is not None else None
    for a in A.basis:
        M = ad_matrix(L, a)  # [a, x] = M x, and [x, a] = -M x
        rows.extend(mat_mul(N, M, F) if N is not None else M)
    K = kernel(rows, F, L.dim) if rows else L.whole()
    if within is not None:
        K = K & within
    return K


def normalizer(L: LieAlgebra, U: Subspace, within: Subspace | None = None) -> Subspace:
    return centralizer(L, U, modulo=U, within=within)


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, L.whole())


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple
    stabilized: bool = True

    @property
    def reaches_zero(self) -> bool:
        return self.terms[-1].is_zero()

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def series(L: LieAlgebra, kind: str = "derived", start: Subspace | None = None) -> SeriesReport:
    """Derived or lower central series of L (or of the subalgebra ``start``)."""
    top = L.whole() if start is None else start
    terms = [top]
    while True:
        cur = terms[-1]
        if kind == "derived":
            nxt = bracket_span(L, cur, cur)
        elif kind == "lower_central":
            nxt = bracket_span(L, top, cur)
        else:
            raise InputError(f"unknown series kind {kind!r}")
        if nxt == cur:
            return SeriesReport(kind, tuple(terms))
        terms.append(nxt)


def is_soluble(L: LieAlgebra, S: Subspace | None = None) -> bool:
    return series(L, "derived", S).reaches_zero


def is_nilpotent(L: LieAlgebra, S: Subspace | None = None) -> bool:
    return series(L, "lower_central", S).reaches_zero


def is_abelian(L: LieAlgebra, S: Subspace | None = None) -> bool:
    S = L.whole() if S is None else S
    return bracket_span(L, S, S).is_zero()


def derived_algebra(L: LieAlgebra, S: Subspace | None = None) -> Subspace:
    S = L.whole() if S is None else S
    return bracket_span(L, S, S)


def nilpotency_class(L: LieAlgebra, S: Subspace | None = None):
    """Length of the lower central series, or None when not nilpotent."""
    rep = series(L, "lower_central", S)
    return rep.length if rep.reaches_zero else None


def engel(L: LieAlgebra, a) -> Subspace:
    """Fitting null component of ad(a): the kernel of ad(a)^dim."""
    A = ad_matrix(L, a)
    P = identity(L.dim)
    for _ in range(L.dim):
        P = mat_mul(P, A, L.field)
    return kernel(P, L.field, L.dim)


# ---------------------------------------------------------------------------
# quotients and subalgebras as algebras
# ---------------------------------------------------------------------------

class QuotientMap:
    """Projection L -> L/I on the pivot-complement basis of I."""

    def __init__(self, source: LieAlgebra, ideal: Subspace, target: LieAlgebra):
        self.source = source
        self.ideal = ideal
        self.target = target
        self.indices = ideal.nonpivots()

    def project(self, v) -> tuple:
        r = self.ideal.reduce(v)
        return tuple(r[i] for i in self.indices)

    def section(self, u) -> tuple:
        v = [0] * self.source.dim
        for i, c in zip(self.indices, u):
            v[i] = c
        return tuple(v)

    def lift(self, S: Subspace) -> Subspace:
        """Full preimage of a subspace of the quotient."""
        return Subspace.span([self.section(b) for b in S.basis] + list(self.ideal.basis),
                             self.source.dim, self.source.field)

    def image(self, S: Subspace) -> Subspace:
        return Subspace.span([self.project(b) for b in S.basis], self.target.dim, self.target.field)

    def matrix(self) -> list:
        cols = [self.project(unit_vec(self.source.dim, j)) for j in range(self.source.dim)]
        return transpose(cols, self.target.dim) if cols else zeros(self.target.dim, 0)


def quotient(L: LieAlgebra, I: Subspace):
    """(L/I, projection) with the quotient basis on the non-pivot columns of I."""
    if not is_ideal(L, I):
        raise InputError("quotient by a subspace that is not an ideal")
    idx = I.nonpivots()
    sc = {}
    for s in range(len(idx)):
        for t in range(s + 1, len(idx)):
            r = I.reduce(L.table[idx[s]][idx[t]])
            v = tuple(r[i] for i in idx)
            if any(v):
                sc[(s, t)] = v
    Q = LieAlgebra(L.field, len(idx), sc, [L.labels[i] for i in idx], check=False)
    return Q, QuotientMap(L, I, Q)


class Inclusion:
    """Embedding of a subalgebra algebra S (on the RREF basis of ``space``) into L."""

    def __init__(self, source: LieAlgebra, space: Subspace, sub: LieAlgebra):
        self.ambient = source
        self.space = space
        self.sub = sub

    def push(self, u) -> tuple:
        return self.space.combine(u)

    def pull(self, v) -> tuple:
        return self.space.coords(v)

    def push_space(self, S: Subspace) -> Subspace:
        return Subspace.span([self.push(b) for b in S.basis], self.ambient.dim, self.ambient.field)

    def pull_space(self, S: Subspace) -> Subspace:
        """Coordinates of a subspace contained in ``space``."""
        return Subspace.span([self.pull(b) for b in S.basis], self.sub.dim, self.sub.field)


def subalgebra(L: LieAlgebra, S: Subspace):
    """S as a Lie algebra in its own right, on its RREF basis."""
    if not is_subalgebra(L, S):
        raise InputError("subspace is not a subalgebra")
    B = S.basis
    sc = {}
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            v = S.coords(L.bracket(B[i], B[j]))
            if any(v):
                sc[(i, j)] = v
    labels = [L.fmt(b) for b in B]
    A = LieAlgebra(L.field, len(B), sc, labels, check=False)
    return A, Inclusion(L, S, A)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    if L1.field != L2.field:
        raise InputError("field mismatch in direct sum")
    n1, n2 = L1.dim, L2.dim
    sc = {}
    for (i, j), v in L1.sc().items():
        sc[(i, j)] = tuple(v) + (0,) * n2
    for (i, j), v in L2.sc().items():
        sc[(n1 + i, n1 + j)] = (0,) * n1 + tuple(v)
    return LieAlgebra(L1.field, n1 + n2, sc, list(L1.labels) + list(L2.labels), check=False)


def split_extension(L: LieAlgebra, rep: "Representation", labels=None) -> LieAlgebra:
    """V + L with [x, v] = rho(x)v and [v, w] = 0; V comes first in the basis."""
    F = L.field
    d, n = rep.dim, L.dim
    sc = {}
    for (i, j), v in L.sc().items():
        sc[(d + i, d + j)] = (0,) * d + tuple(v)
    for i in range(d):
        for x in range(n):
            col = tuple(row[i] for row in rep.action[x])  # rho(e_x) v_i
            if any(col):
                # [v_i, e_x] = -rho(e_x) v_i
                sc[(i, d + x)] = tuple(F.neg(c) for c in col) + (0,) * n
    if labels is None:
        labels = [f"v{i}" for i in range(d)] + list(L.labels)
    return LieAlgebra(F, d + n, sc, labels)


def build(kind: str, *args, **kw) -> LieAlgebra:
    if kind == "direct_sum":
        return direct_sum(*args)
    if kind == "split_extension":
        return split_extension(*args, **kw)
    raise InputError(f"unknown construction {kind!r}")


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

def derivations(L: LieAlgebra) -> list:
    """Basis of Der(L) as matrices acting on column vectors."""
    F, n, T = L.field, L.dim, L.table
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                # D[e_i,e_j]_k - [D e_i, e_j]_k - [e_i, D e_j]_k = 0
                r = [0] * (n * n)
                for c in range(n):
                    a = T[i][j][c]
                    if a:
                        r[k * n + c] = F.add(r[k * n + c], a)
                for s in range(n):
                    a = T[s][j][k]
                    if a:
                        r[s * n + i] = F.sub(r[s * n + i], a)
                    b = T[i][s][k]
                    if b:
                        r[s * n + j] = F.sub(r[s * n + j], b)
                rows.append(tuple(r))
    K = kernel(rows, F, n * n) if rows else Subspace.full(n * n, F)
    return [[tuple(b[r * n:(r + 1) * n]) for r in range(n)] for b in K.basis]


def is_derivation(L: LieAlgebra, D) -> bool:
    F = L.field
    for x in L.basis():
        for y in L.basis():
            lhs = mat_vec(D, L.bracket(x, y), F)
            rhs = tuple(F.add(a, b) for a, b in zip(L.bracket(mat_vec(D, x, F), y),
                                                     L.bracket(x, mat_vec(D, y, F))))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

class Representation:
    """A finite-dimensional L-module given by one matrix per basis element of L."""

    def __init__(self, algebra: LieAlgebra, dim: int, action, check: bool = True):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(tuple(tuple(r) for r in M) for M in action)
        if len(self.action) != algebra.dim:
            raise InputError("need one action matrix per basis element")
        for M in self.action:
            if len(M) != dim or any(len(r) != dim for r in M):
                raise InputError("action matrix has the wrong shape")
        if check:
            bad = self.violation()
            if bad is not None:
                raise InputError(f"not a representation: fails on basis pair {bad}")

    @property
    def field(self):
        return self.algebra.field

    def violation(self):
        L, F = self.algebra, self.algebra.field
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = self.rho(L.table[i][j])
                rhs = mat_sub(mat_mul(self.action[i], self.action[j], F),
                              mat_mul(self.action[j], self.action[i], F), F)
                if [tuple(r) for r in lhs] != [tuple(r) for r in rhs]:
                    return (i, j)
        return None

    def rho(self, x) -> list:
        F, d = self.field, self.dim
        acc = zeros(d, d)
        for c, M in zip(x, self.action):
            if c:
                acc = mat_add(acc, mat_scale(c, M, F), F)
        return acc

    def act(self, x, v) -> tuple:
        return mat_vec(self.rho(x), v, self.field)

    def is_trivial(self) -> bool:
        return all(not any(any(r) for r in M) for M in self.action)

    def space(self) -> Subspace:
        return Subspace.full(self.dim, self.field)

    def invariants(self) -> Subspace:
        """V^L = {v : rho(x) v = 0 for all x}."""
        rows = [r for M in self.action for r in M]
        return kernel(rows, self.field, self.dim) if rows else self.space()

    def spin(self, vectors, start=None) -> Subspace:
        return spin(self.action, vectors, self.dim, self.field, start)

    def is_submodule(self, W: Subspace) -> bool:
        return all(W.contains(mat_vec(M, w, self.field)) for M in self.action for w in W.basis)

    def submodules(self, budget: int = DEFAULT_BUDGET) -> list:
        return invariant_subspaces(self.action, self.dim, self.field, budget)

    def minimal_submodules(self, within: Subspace | None = None) -> list:
        return minimal_invariant_subspaces(self.action, self.dim, self.field, within)

    def subrep(self, W: Subspace) -> "Representation":
        F = self.field
        mats = []
        for M in self.action:
            cols = [W.coords(mat_vec(M, w, F)) for w in W.basis]
            mats.append(transpose(cols, W.dim) if cols else [])
        return Representation(self.algebra, W.dim, mats, check=False)

    def quotient_rep(self, W: Subspace) -> "Representation":
        F = self.field
        idx = W.nonpivots()
        mats = []
        for M in self.action:
            cols = []
            for j in idx:
                r = W.reduce(mat_vec(M, unit_vec(self.dim, j), F))
                cols.append(tuple(r[i] for i in idx))
            mats.append(transpose(cols, len(idx)) if cols else [])
        return Representation(self.algebra, len(idx), mats, check=False)

    def slice(self, lower: Subspace, upper: Subspace) -> "Representation":
        """The factor module upper/lower (lower <= upper, both submodules)."""
        sub = self.subrep(upper)
        low = Subspace.span([upper.coords(b) for b in lower.basis], upper.dim, self.field)
        return sub.quotient_rep(low)

    def is_irreducible(self) -> bool:
        if self.dim == 0:
            return False
        mins = self.minimal_submodules()
        return len(mins) == 1 and mins[0].dim == self.dim

    def composition_series(self) -> list:
        """0 = V_0 < V_1 < ... < V = V_r via lexicographically least minimal submodules."""
        F = self.field
        chain = [Subspace.zero(self.dim, F)]
        cur = chain[0]
        while cur.dim < self.dim:
            Q = self.quotient_rep(cur)
            idx = cur.nonpivots()
            m = min(Q.minimal_submodules(), key=lambda S: S.key())
            lifted = Subspace.span(
                [tuple(b[idx.index(i)] if i in idx else 0 for i in range(self.dim)) for b in m.basis]
                + list(cur.basis), self.dim, F)
            chain.append(lifted)
            cur = lifted
        return chain

    def composition_factors(self) -> list:
        chain = self.composition_series()
        return [self.slice(a, b) for a, b in zip(chain, chain[1:])]

    def restrict(self, S: Subspace) -> "Representation":
        sub, inc = subalgebra(self.algebra, S)
        mats = [self.rho(b) for b in S.basis]
        return Representation(sub, self.dim, mats, check=False)

    def direct_sum(self, other: "Representation") -> "Representation":
        from .ff_linalg import block_diag
        return Representation(self.algebra, self.dim + other.dim,
                              [block_diag(A, B) for A, B in zip(self.action, other.action)],
                              check=False)

    def __repr__(self):
        return f"Representation(dim={self.dim}, algebra_dim={self.algebra.dim})"


def adjoint(L: LieAlgebra) -> Representation:
    return Representation(L, L.dim, L.ad_basis, check=False)


def trivial_rep(L: LieAlgebra, d: int = 1) -> Representation:
    return Representation(L, d, [zeros(d, d)] * L.dim, check=False)


def tensor(r1: Representation, r2: Representation) -> Representation:
    """x(v (x) w) = xv (x) w + v (x) xw, on the basis v_i (x) w_j ordered (i, j)."""
    if r1.algebra != r2.algebra:
        raise InputError("tensor product needs modules over the same algebra")
    F = r1.field
    I1, I2 = identity(r1.dim), identity(r2.dim)
    mats = [mat_add(kron(A, I2, F), kron(I1, B, F), F) for A, B in zip(r1.action, r2.action)]
    return Representation(r1.algebra, r1.dim * r2.dim, mats, check=False)


def dual(r: Representation) -> Representation:
    F = r.field
    mats = [[tuple(F.neg(c) for c in row) for row in transpose(M, r.dim)] for M in r.action]
    return Representation(r.algebra, r.dim, mats, check=False)


def hom(r1: Representation, r2: Representation) -> Representation:
    """Hom(V, W) with (xf)(v) = x f(v) - f(x v).

    A map f is a dim W x dim V matrix flattened row by row.
    """
    if r1.algebra != r2.algebra:
        raise InputError("Hom needs modules over the same algebra")
    F = r1.field
    dv, dw = r1.dim, r2.dim
    mats = []
    for A, B in zip(r1.action, r2.action):
        # f -> B f - f A ; vec(B f) = (B kron I) vec f ; vec(f A) = (I kron A^T) vec f
        left = kron(B, identity(dv), F)
        right = kron(identity(dw), transpose(A, dv), F)
        mats.append(mat_sub(left, right, F))
    return Representation(r1.algebra, dv * dw, mats, check=False)


def intertwiners(r1: Representation, r2: Representation) -> Subspace:
    """{T : rho1(x) T = T rho2(x)} with T a dim1 x dim2 matrix flattened row-wise."""
    F = r1.field
    d1, d2 = r1.dim, r2.dim
    rows = []
    for A, B in zip(r1.action, r2.action):
        M = mat_sub(kron(A, identity(d2), F), kron(identity(d1), transpose(B, d2), F), F)
        rows.extend(M)
    if not rows:
        return Subspace.full(d1 * d2, F)
    return kernel(rows, F, d1 * d2)


def modules_isomorphic(r1: Representation, r2: Representation, budget: int = 10 ** 6) -> bool:
    if r1.dim != r2.dim:
        return False
    if r1.dim == 0:
        return True
    S = intertwiners(r1, r2)
    if S.dim == 0:
        return False
    if r1.field.q ** S.dim > budget:
        raise CapacityError("intertwiner space too large for exhaustive search")
    d = r1.dim
    for coeffs in product(range(r1.field.q), repeat=S.dim):
        if not any(coeffs):
            continue
        T = [tuple(row) for row in _unflat(S.combine(coeffs), d, d)]
        if inverse(T, r1.field) is not None:
            return True
    return False


def _unflat(v, r, c):
    return [v[i * c:(i + 1) * c] for i in range(r)]


# ---------------------------------------------------------------------------
# lattices of invariant subspaces
# ---------------------------------------------------------------------------

def cyclic_subspaces(mats, n: int, F: Field, within: Subspace | None = None) -> list:
    """Distinct cyclic invariant subspaces generated by points of ``within`` (default F^n)."""
    seen = set()
    out = []
    if within is None:
        points = projective_points(n, F)
    else:
        points = (within.combine(c) for c in projective_points(within.dim, F))
    for v in points:
        S = spin(mats, [v], n, F)
        if S not in seen:
            seen.add(S)
            out.append(S)
    return out


def minimal_invariant_subspaces(mats, n: int, F: Field, within: Subspace | None = None) -> list:
    """All minimal nonzero invariant subspaces contained in ``within`` (itself invariant).

    Distinct minimal subspaces meet in 0, so a point lying in a confirmed
    minimal subspace can be skipped, and a point whose cyclic span contains
    a confirmed minimal subspace lies in no minimal subspace at all.
    """
    if within is None:
        within = Subspace.full(n, F)
    if within.dim == 0:
        return []

    def descend(S):
        while True:
            for c in projective_points(S.dim, F):
                T = spin(mats, [S.combine(c)], n, F)
                if T != S:
                    S = T
                    break
            else:
                return S

    confirmed = []
    for c in projective_points(within.dim, F):
        v = within.combine(c)
        if any(M.contains(v) for M in confirmed):
            continue
        S = spin(mats, [v], n, F)
        if any(M <= S for M in confirmed):
            continue
        confirmed.append(descend(S))
    return sorted(confirmed, key=lambda S: S.key())


def invariant_subspaces(mats, n: int, F: Field, budget: int = DEFAULT_BUDGET,
                        within: Subspace | None = None) -> list:
    """Every invariant subspace (of ``within``), sorted by (dim, basis)."""
    npts = (F.q ** (within.dim if within is not None else n) - 1) // (F.q - 1)
    if npts > budget:
        raise CapacityError(f"{npts} projective points exceed the budget {budget}")
    cyc = cyclic_subspaces(mats, n, F, within)
    zero = Subspace.zero(n, F)
    lattice = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for X in frontier:
            for C in cyc:
                if C <= X:
                    continue
                Y = X + C
                if Y not in lattice:
                    lattice.add(Y)
                    nxt.append(Y)
                    if len(lattice) > budget:
                        raise CapacityError("invariant subspace lattice exceeds the budget")
        frontier = nxt
    return sorted(lattice, key=lambda S: S.key())


def ideals(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> list:
    return invariant_subspaces(L.ad_basis, L.dim, L.field, budget)


def minimal_ideals(L: LieAlgebra, within: Subspace | None = None) -> list:
    return minimal_invariant_subspaces(L.ad_basis, L.dim, L.field, within)


# ---------------------------------------------------------------------------
# subalgebra enumeration
# ---------------------------------------------------------------------------

def enumerate_subalgebras(L: LieAlgebra, filter="all", budget: int = DEFAULT_BUDGET,
                          within: Subspace | None = None) -> list:
    """All subalgebras of L (or of the subalgebra ``within``) matching ``filter``.

    Every subalgebra is reached from 0 by repeatedly closing U + <v>, so a
    breadth-first search over those steps is complete.  ``filter`` is one of
    "all", "ideals", "maximal" or a predicate on Subspaces.
    """
    F, n = L.field, L.dim
    top = L.whole() if within is None else within
    if subspace_count(top.dim, F.q) > budget:
        raise CapacityError(f"subspace count of a {top.dim}-dim space over GF({F.q}) exceeds the budget")
    zero = L.zero()
    found = {zero}
    frontier = [zero]
    steps = 0
    while frontier:
        nxt = []
        for U in frontier:
            # representatives of projective points of top/U
            reps = _complement_points(top, U)
            for v in reps:
                steps += 1
                if steps > budget:
                    raise CapacityError("subalgebra search exceeded the budget")
                W = closure(L, U.extend([v]), "subalgebra")
                if W not in found:
                    found.add(W)
                    nxt.append(W)
        frontier = nxt
    subs = sorted(found, key=lambda S: S.key())
    if filter == "all":
        return subs
    if filter == "ideals":
        return [S for S in subs if is_ideal(L, S, top)]
    if filter == "maximal":
        return maximal_elements([S for S in subs if S != top])
    if callable(filter):
        return [S for S in subs if filter(S)]
    raise InputError(f"unknown filter {filter!r}")


def _complement_points(top: Subspace, U: Subspace):
    """Points of top whose reduction mod U is a canonical projective representative."""
    F = top.field
    out = []
    seen = set()
    for c in projective_points(top.dim, F):
        v = U.reduce(top.combine(c))
        if not any(v):
            continue
        lead = next(x for x in v if x)
        if lead != 1:
            inv = F.inv(lead)
            v = tuple(F.mul(inv, x) for x in v)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def maximal_elements(spaces) -> list:
    spaces = sorted(spaces, key=lambda S: S.key())
    out = []
    for S in spaces:
        if not any(S < T for T in spaces):
            out.append(S)
    return out


def minimal_elements(spaces) -> list:
    spaces = sorted(spaces, key=lambda S: S.key())
    return [S for S in spaces if not any(T < S for T in spaces)]


def intersect_all(spaces, default: Subspace) -> Subspace:
    out = default
    for S in spaces:
        out = out & S
    return out


def frattini(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Intersection of the maximal subalgebras (L itself when there are none)."""
    return intersect_all(enumerate_subalgebras(L, "maximal", budget), L.whole())


# ---------------------------------------------------------------------------
# isomorphism (tiny dimensions only)
# ---------------------------------------------------------------------------

def transform_algebra(L: LieAlgebra, g) -> dict:
    """Structure constants of L in the basis f_i = g e_i (columns of g)."""
    F, n = L.field, L.dim
    ginv = inverse(g, F)
    cols = transpose(g, n)
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = mat_vec(ginv, L.bracket(cols[i], cols[j]), F)
            if any(v):
                sc[(i, j)] = v
    return sc


def invertible_matrices(n: int, F: Field):
    """GL(n, F), columns chosen outside the span of the previous ones."""
    def rec(cols, E):
        if len(cols) == n:
            yield transpose(cols, n)
            return
        for v in product(range(F.q), repeat=n):
            if any(v) and not E.contains(v):
                E2 = Echelon(F, n, E.space())
                E2.add(v)
                yield from rec(cols + [v], E2)
    yield from rec([], Echelon(F, n))


def isomorphic(L1: LieAlgebra, L2: LieAlgebra, max_dim: int = 4):
    """A matrix g with L2 = L1 in the basis given by the columns of g, or None."""
    if L1.field != L2.field or L1.dim != L2.dim:
        return None
    if L1.dim > max_dim:
        raise CapacityError(f"isomorphism search limited to dimension {max_dim}")
    if _invariants(L1) != _invariants(L2):
        return None
    target = L2.sc()
    for g in invertible_matrices(L1.dim, L1.field):
        if transform_algebra(L1, g) == target:
            return g
    return None


def _invariants(L: LieAlgebra):
    der = series(L, "derived")
    lc = series(L, "lower_central")
    return (tuple(t.dim for t in der.terms), tuple(t.dim for t in lc.terms), center(L).dim)


def _annihilator(U: Subspace) -> Subspace:
    """{v : u . v = 0 for every u in U}."""
    if U.dim == 0:
        return Subspace.full(U.n, U.field)
    return kernel(list(U.basis), U.field, U.n)


def _norton_candidates(mats, n: int, F: Field):
    """Deterministic singular elements of the enveloping algebra, smallest nullity first."""
    from .ff_linalg import char_poly, roots_in
    words = list(mats)
    for i, A in enumerate(mats):
        for B in mats[i + 1:]:
            words.append(mat_add(A, B, F))
            words.append(mat_mul(A, B, F))
    seen = set()
    out = []
    for W in words:
        for lam in sorted(set(roots_in(char_poly(W, F), F))):
            theta = [tuple(F.sub(x, lam) if r == c else x for c, x in enumerate(row))
                     for r, row in enumerate(W)]
            key = tuple(theta)
            if key in seen:
                continue
            seen.add(key)
            K = kernel(theta, F, n)
            out.append((K.dim, len(out), theta, K))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def proper_invariant_subspace(mats, n: int, F: Field, scan_limit: int = 10 ** 4):
    """A proper nonzero subspace of F^n invariant under ``mats``, or None if irreducible.

    Norton's test: for a singular theta in the enveloping algebra, a proper
    submodule U either meets ker(theta) or its annihilator meets
    ker(theta^T).  Spinning every point of both kernels therefore decides
    irreducibility.  Falls back to spinning every point of F^n.
    """
    if n <= 1:
        return None
    for nullity, _, theta, K in _norton_candidates(mats, n, F):
        if F.q ** nullity > scan_limit:
            break
        for c in projective_points(K.dim, F):
            U = spin(mats, [K.combine(c)], n, F)
            if U.dim < n:
                return U
        thetaT = transpose(theta, n)
        Kt = kernel(thetaT, F, n)
        matsT = [transpose(M, n) for M in mats]
        for c in projective_points(Kt.dim, F):
            U = spin(matsT, [Kt.combine(c)], n, F)
            if U.dim < n:
                return _annihilator(U)
        return None
    for v in projective_points(n, F):
        U = spin(mats, [v], n, F)
        if U.dim < n:
            return U
    return None
