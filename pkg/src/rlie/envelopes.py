"""Minimal p-envelopes of ordinary Lie algebras and the enveloped class map.

Let M be the p-closure of ad(U) inside gl(U) (closed under commutators and
matrix p-th powers).  For centreless U the minimal envelope is M itself,
which is the quotient of U + M by {(x, -ad x)}.  In general the envelope is
a central extension of M by Z(U), restricting on ad(U) to the extension
Z(U) -> U -> ad(U); its 2-cocycle is found by linear algebra and the result
is certified before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import CapacityError, ConsistencyError, HypothesisViolation, InputError
from .ff_linalg import (
    Echelon, Subspace, kernel, mat_eq, mat_flatten, mat_mul, mat_pow, mat_sub, mat_unflatten,
    mat_vec, solve, transpose, unit_vec, vec_add, vec_sub,
)
from .lie_core import (
    LieAlgebra, ad_matrix, center, closure, ideals, is_ideal, lie_make, quotient, series,
)
from .restricted import (
    RestrictedAlgebra, is_primitive, null_on_ideal_pop, p_closure, p_subalgebra,
)
from .schunck import ClassDescriptor, OrdinaryClass, is_member, ordinary_primitive_quotients


@dataclass
class Envelope:
    source: LieAlgebra
    target: RestrictedAlgebra
    embedding: list  # target.dim x source.dim, columns are images of the source basis
    minimal: bool
    certificates: dict = field(default_factory=dict)

    def embed(self, x) -> tuple:
        return mat_vec(self.embedding, x, self.target.field)

    def image(self) -> Subspace:
        return Subspace.span([self.embed(unit_vec(self.source.dim, i))
                              for i in range(self.source.dim)], self.target.dim, self.target.field)


def matrix_p_closure(mats, F, n: int) -> list:
    """Basis of the smallest space containing ``mats`` that is closed under
    commutators and p-th powers; the spanning members of ``mats`` come first."""
    E = Echelon(F, n * n)
    basis = []

    def add(X):
        if E.add(mat_flatten(X)):
            basis.append(X)
            return True
        return False

    for X in mats:
        add(X)
    grew = True
    while grew:
        grew = False
        cur = list(basis)
        for X, Y in combinations(cur, 2):
            if add(mat_sub(mat_mul(X, Y, F), mat_mul(Y, X, F), F)):
                grew = True
        for X in cur:
            if add(mat_pow(X, F.p, F)):
                grew = True
    return basis


def _coords(vec, basis_flat, F) -> tuple:
    A = transpose(basis_flat, len(basis_flat)) if basis_flat else []
    c = solve(A, vec, F, len(basis_flat)) if basis_flat else ()
    if c is None:
        raise ConsistencyError("element left the closed span")
    return tuple(c)


def minimal_p_envelope(U: LieAlgebra, budget: int = 3 ** 8) -> Envelope:
    """A minimal p-envelope of U with its certificates checked."""
    F, n = U.field, U.dim
    if n == 0:
        R = RestrictedAlgebra(U, [], check=False)
        return Envelope(U, R, [], True, {"injective": True})
    ads = [ad_matrix(U, x) for x in U.basis()]
    Mb = matrix_p_closure(ads, F, n)
    flat = [mat_flatten(X) for X in Mb]
    # U basis elements whose ad's were kept give the section ad(U) -> U
    sec_idx = []
    Eu = Echelon(F, n * n)
    for i, X in enumerate(ads):
        if Eu.add(mat_flatten(X)):
            sec_idx.append(i)
    k, r = len(sec_idx), len(Mb)
    Z = center(U)
    zd = Z.dim
    if k + zd != n:
        raise ConsistencyError("rank of ad plus centre dimension differs from dim U")
    Mstruct = {}
    for i, j in combinations(range(r), 2):
        c = _coords(mat_flatten(mat_sub(mat_mul(Mb[i], Mb[j], F), mat_mul(Mb[j], Mb[i], F), F)),
                    flat, F)
        Mstruct[(i, j)] = c

    def section(coords_k):
        v = (0,) * n
        for c, idx in zip(coords_k, sec_idx):
            if c:
                v = vec_add(v, tuple(F.mul(c, t) for t in unit_vec(n, idx)), F)
        return v

    # cocycle on ad(U) x ad(U) with values in Z(U)
    fixed = {}
    for i, j in combinations(range(k), 2):
        br = U.bracket(unit_vec(n, sec_idx[i]), unit_vec(n, sec_idx[j]))
        c = Mstruct[(i, j)]
        if any(c[k:]):
            raise ConsistencyError("ad(U) is not a subalgebra of its closure")
        fixed[(i, j)] = Z.coords(vec_sub(br, section(c[:k]), F))
    pairs = list(combinations(range(r), 2))
    pos = {pq: t for t, pq in enumerate(pairs)}
    nunk = len(pairs) * zd

    def omega_index(i, j):
        if i == j:
            return None, 0
        if i < j:
            return pos[(i, j)], 1
        return pos[(j, i)], -1

    rows, rhs = [], []
    for (i, j), val in fixed.items():
        for s in range(zd):
            row = [0] * nunk
            row[pos[(i, j)] * zd + s] = 1
            rows.append(row)
            rhs.append(val[s])
    # trivial-coefficient cocycle: w([i,j],l) - w([i,l],j) + w([j,l],i) = 0
    for i, j, l in combinations(range(r), 3):
        for s in range(zd):
            row = [0] * nunk
            for (a, b, c_, sign) in ((i, j, l, 1), (i, l, j, -1), (j, l, i, 1)):
                br = Mstruct[(a, b)]
                for m, coef in enumerate(br):
                    if not coef:
                        continue
                    t, sg = omega_index(m, c_)
                    if t is None:
                        continue
                    val = F.mul(coef, F.from_int(sign * sg))
                    row[t * zd + s] = F.add(row[t * zd + s], val)
            rows.append(row)
            rhs.append(0)
    if nunk:
        w0 = solve(rows, tuple(rhs), F, nunk)
        if w0 is None:
            raise ConsistencyError("no central extension of the closure restricts to U")
        W = kernel(rows, F, nunk)
        if F.q ** W.dim > budget:
            raise CapacityError("too many cocycle choices to search")
        choices = (vec_add(w0, w, F) for w in sorted(W.vectors()))
    else:
        choices = iter([()])
    failure = "no cocycle choice gave a restrictable minimal envelope"
    for w in choices:
        env = _assemble(U, Mb, Mstruct, sec_idx, Z, w, pairs, pos)
        if env is None:
            continue
        return env
    raise ConsistencyError(failure)


def _assemble(U, Mb, Mstruct, sec_idx, Z, w, pairs, pos):
    F, n = U.field, U.dim
    r, zd, k = len(Mb), Z.dim, len(sec_idx)
    dim = r + zd
    sc = {}
    for (i, j) in pairs:
        v = list(Mstruct[(i, j)]) + [0] * zd
        for s in range(zd):
            v[r + s] = w[pos[(i, j)] * zd + s]
        if any(v):
            sc[(i, j)] = tuple(v)
    labels = [f"m{i}" for i in range(r)] + [f"z{s}" for s in range(zd)]
    try:
        G = LieAlgebra(F, dim, sc, labels)
    except InputError:
        return None
    # images: m_i -> (m_i^p, 0), z -> 0; valid iff ad(m_i^p) = ad(m_i)^p
    flat = [mat_flatten(X) for X in Mb]
    imgs = []
    for i in range(r):
        c = _coords(mat_flatten(mat_pow(Mb[i], F.p, F)), flat, F)
        imgs.append(tuple(c) + (0,) * zd)
    imgs += [(0,) * dim] * zd
    for i in range(r):
        if not mat_eq(ad_matrix(G, imgs[i]), mat_pow(G.ad_basis[i], F.p, F)):
            return None
    R = RestrictedAlgebra(G, imgs, check=False)
    # embedding x -> (ad x coords, x - s(ad x) in Z coords)
    flat_k = flat[:k]
    cols = []
    for t in range(n):
        x = unit_vec(n, t)
        a = _coords(mat_flatten(ad_matrix(U, x)), flat_k, F) if k else ()
        s = (0,) * n
        for c, idx in zip(a, sec_idx):
            if c:
                s = vec_add(s, tuple(F.mul(c, e) for e in unit_vec(n, idx)), F)
        zc = Z.coords(vec_sub(x, s, F))
        cols.append(tuple(a) + (0,) * (r - k) + tuple(zc))
    emb = transpose(cols, dim) if cols else [[] for _ in range(dim)]
    env = Envelope(U, R, emb, False)
    cert = envelope_certificates(env, len(Mb) - k)
    env.certificates = cert
    if not cert["center_in_image"]:
        return None
    bad = [name for name, ok in cert.items() if not ok]
    if bad:
        raise ConsistencyError(f"envelope certificates failed: {bad}")
    env.minimal = True
    return env


def envelope_certificates(env: Envelope, extra_dim: int | None = None) -> dict:
    """Homomorphism, injectivity, [p]-closure, dimension formula, centre containment."""
    U, R = env.source, env.target
    F, n = U.field, U.dim
    G = R.algebra
    hom = all(env.embed(U.bracket(unit_vec(n, i), unit_vec(n, j)))
              == G.bracket(env.embed(unit_vec(n, i)), env.embed(unit_vec(n, j)))
              for i in range(n) for j in range(i + 1, n))
    img = env.image()
    out = {
        "homomorphism": hom,
        "injective": img.dim == n,
        "closure_is_whole": p_closure(R, img) == G.whole(),
        "center_in_image": center(G) <= img,
    }
    if extra_dim is not None:
        out["dimension_formula"] = R.dim == n + extra_dim
    return out


def null_ideal_envelope(U: LieAlgebra, A: Subspace) -> Envelope:
    """An envelope in which the image of the abelian ideal A is a null [p]-ideal."""
    if not is_ideal(U, A) or any(any(U.bracket(a, b)) for a in A.basis for b in A.basis):
        raise InputError("A must be an abelian ideal")
    env = minimal_p_envelope(U)
    R, G = env.target, env.target.algebra
    Ai = Subspace.span([env.embed(a) for a in A.basis], R.dim, R.field)
    if not is_ideal(G, Ai):
        raise ConsistencyError("image of an ideal of U is not an ideal of the envelope")
    R2 = null_on_ideal_pop(R, Ai)
    T = p_closure(R2, env.image())
    S, inc = p_subalgebra(R2, T)
    cols = [inc.pull(env.embed(unit_vec(U.dim, i))) for i in range(U.dim)]
    emb = transpose(cols, S.dim)
    out = Envelope(U, S, emb, False)
    out.certificates = envelope_certificates(out)
    out.minimal = out.certificates["center_in_image"]
    return out


def envd_membership(U: LieAlgebra, K: ClassDescriptor) -> bool:
    """Does U have a p-envelope in K?  Decided on the minimal envelope."""
    return is_member(minimal_p_envelope(U).target, K)


def envd(K: ClassDescriptor) -> OrdinaryClass:
    return OrdinaryClass(f"envd({K.name})", lambda U: envd_membership(U, K),
                         formation=K.formation)


def restricted_map_check(R1: RestrictedAlgebra, R2: RestrictedAlgebra, images) -> bool:
    """Is e_i -> images[i] an isomorphism of restricted algebras R1 -> R2?"""
    F = R1.field
    if R1.dim != R2.dim or len(images) != R1.dim:
        return False
    Mt = transpose([tuple(v) for v in images], R2.dim)
    if Subspace.span(images, R2.dim, F).dim != R1.dim:
        return False
    n = R1.dim
    for i in range(n):
        for j in range(i + 1, n):
            if mat_vec(Mt, R1.algebra.table[i][j], F) != R2.bracket(images[i], images[j]):
                return False
    from .restricted import evaluate_p
    return all(mat_vec(Mt, R1.images[i], F) == evaluate_p(R2, images[i]) for i in range(n))


def ordinary_closure_check(H: OrdinaryClass, sample, props=("quot", "frat")) -> dict:
    """Quotient and Frattini closure of an ordinary class on a sample."""
    from .lie_core import frattini
    fails = {p: [] for p in props}
    checked = {p: 0 for p in props}
    for L in sample:
        lat = ideals(L)
        quo = {K: H(L if K.is_zero() else quotient(L, K)[0]) for K in lat}
        mem = quo[L.zero()]
        if "quot" in props and mem:
            for K in lat:
                checked["quot"] += 1
                if not quo[K]:
                    fails["quot"].append((L, K))
        if "frat" in props:
            phi = frattini(L)
            for K in lat:
                if not K.is_zero() and K <= phi and quo[K]:
                    checked["frat"] += 1
                    if not mem:
                        fails["frat"].append((L, K))
    return {"checked": checked, "failures": fails}
