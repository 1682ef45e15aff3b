"""Named example algebras and exhaustive enumeration of small restricted algebras.

Every named entry carries a list of expected facts stored as plain data;
:func:`check_facts` evaluates them.  :func:`enumerate_small` lists Lie
algebras of small dimension over GF(p) up to isomorphism, each with all of
its p-operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import CapacityError, InputError
from .ff_linalg import (
    Subspace, embedding, field_make, identity, inverse, is_prime, kron, mat_vec, unit_vec,
)
from .lie_core import (
    LieAlgebra, Representation, center, direct_sum, frattini, invertible_matrices,
    split_extension, transform_algebra,
)
from .restricted import (
    RestrictedAlgebra, enumerate_p_operations, evaluate_p, is_restrictable, jacobson_construct,
    p_closed_check, p_quotient, restricted_split_extension,
)

SAMPLE_SEED = 20240517


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"p must be prime, got {p!r}")
    return field_make(p)


def _der_lie(F):
    return LieAlgebra(F, 3, {(0, 1): (0, 1, 0)}, "abc")


def der(p: int = 3) -> RestrictedAlgebra:
    """<a, b, c>, ab = b, c central; a -> a, b -> c, c -> 0."""
    F = _prime(p)
    return jacobson_construct(_der_lie(F), [(1, 0, 0), (0, 0, 1), (0, 0, 0)])


def nilder(p: int = 3) -> RestrictedAlgebra:
    """<a, b, c, d>, ab = c; c -> d, everything else -> 0."""
    F = _prime(p)
    L = LieAlgebra(F, 4, {(0, 1): (0, 0, 1, 0)}, "abcd")
    return jacobson_construct(L, [(0,) * 4, (0,) * 4, (0, 0, 0, 1), (0,) * 4])


def nocomp(p: int = 2) -> RestrictedAlgebra:
    """Abelian <a, b> with a -> 0, b -> a: <a> has no [p]-closed complement."""
    F = _prime(p)
    return jacobson_construct(LieAlgebra(F, 2, None, "ab"), [(0, 0), (1, 0)])


def atom_null(p: int = 2) -> RestrictedAlgebra:
    return jacobson_construct(LieAlgebra(_prime(p), 1, None, "a"), [(0,)])


def atom_nonnull(p: int = 2) -> RestrictedAlgebra:
    return jacobson_construct(LieAlgebra(_prime(p), 1, None, "a"), [(1,)])


def _shift(p, F):
    """v_i -> v_{i+1}, indices mod p (columns are images)."""
    M = [[0] * p for _ in range(p)]
    for i in range(p):
        M[(i + 1) % p][i] = 1
    return M


def _diag_index(p, F):
    return [[F.from_int(i) if i == j else 0 for j in range(p)] for i in range(p)]


def _noform_modules(p):
    F = _prime(p)
    U = _der_lie(F)
    V = Representation(U, p, [_diag_index(p, F), _shift(p, F), identity(p)])
    m1 = F.neg(1)
    W = Representation(U, 2, [[[0, 0], [0, 1]], [[0, 0], [m1, 0]], identity(2)])
    return F, U, V, W


def noform_U(p: int = 3) -> LieAlgebra:
    return _der_lie(_prime(p))


def noform_X(p: int = 3) -> RestrictedAlgebra:
    """V + U with a -> a, b -> c, c -> c, null on V.

    b acts on V as the cyclic shift, whose p-th power is the identity, so
    c = b^[p] must act as the identity on V.
    """
    F, U, V, W = _noform_modules(p)
    RU = jacobson_construct(U, [(1, 0, 0), (0, 0, 1), (0, 0, 1)])
    return restricted_split_extension(RU, V, labels=[f"v{i}" for i in range(p)] + list("abc"))


def noform_Y(p: int = 3) -> RestrictedAlgebra:
    """W + U with a -> a, b -> 0, c -> c, null on W."""
    F, U, V, W = _noform_modules(p)
    RU = jacobson_construct(U, [(1, 0, 0), (0, 0, 0), (0, 0, 1)])
    return restricted_split_extension(RU, W, labels=["w0", "w1"] + list("abc"))


def noform_L(p: int = 3) -> LieAlgebra:
    """(V + W) + U; not restrictable."""
    F, U, V, W = _noform_modules(p)
    labels = [f"v{i}" for i in range(p)] + ["w0", "w1"] + list("abc")
    return split_extension(U, V.direct_sum(W), labels)


def _heisenberg_restricted(F):
    N = LieAlgebra(F, 3, {(0, 1): (0, 0, 1)}, "abc")
    return jacobson_construct(N, [(0, 0, 0), (0, 0, 1), (0, 0, 1)])


def _k_module(N, p, F):
    """a k_i = i k_{i-1}, b k_i = k_{i+1}, c k_i = k_i."""
    A = [[0] * p for _ in range(p)]
    for i in range(p):
        A[(i - 1) % p][i] = F.from_int(i)
    return Representation(N, p, [A, _shift(p, F), identity(p)])


def P(p: int = 3) -> RestrictedAlgebra:
    """K + N with N Heisenberg (a -> 0, b -> c, c -> c), null on K."""
    F = _prime(p)
    RN = _heisenberg_restricted(F)
    K = _k_module(RN.algebra, p, F)
    return restricted_split_extension(RN, K, labels=[f"k{i}" for i in range(p)] + list("abc"))


def _S(F):
    return LieAlgebra(F, 2, {(0, 1): (0, 1)}, "xy")


def _S_star(F):
    S = LieAlgebra(F, 3, {(0, 1): (0, 1, 0)}, "xyz")
    return jacobson_construct(S, [(1, 0, 0), (0, 0, 1), (0, 0, 1)])


def Q(p: int = 3) -> LieAlgebra:
    """V + S with S = <x, y>, xy = y, x v_i = i v_i, y v_i = v_{i+1}."""
    F = _prime(p)
    S = _S(F)
    V = Representation(S, p, [_diag_index(p, F), _shift(p, F)])
    return split_extension(S, V, [f"v{i}" for i in range(p)] + ["x", "y"])


def Qstar(p: int = 3) -> RestrictedAlgebra:
    """V + (S + <z>), z acting as the identity; x -> x, y -> z, z -> z, null on V."""
    F = _prime(p)
    RS = _S_star(F)
    V = Representation(RS.algebra, p, [_diag_index(p, F), _shift(p, F), identity(p)])
    return restricted_split_extension(RS, V, labels=[f"v{i}" for i in range(p)] + list("xyz"))


def _T_parts(p):
    F = _prime(p)
    RN = _heisenberg_restricted(F)
    RS = _S_star(F)
    G = direct_sum(RN.algebra, RS.algebra)
    imgs = [tuple(v) + (0,) * 3 for v in RN.images] + [(0,) * 3 + tuple(v) for v in RS.images]
    RG = jacobson_construct(G, imgs)
    K = _k_module(RN.algebra, p, F)
    V = Representation(RS.algebra, p, [_diag_index(p, F), _shift(p, F), identity(p)])
    I = identity(p)
    mats = [kron(K.action[i], I, F) for i in range(3)] + [kron(I, V.action[i], F) for i in range(3)]
    rep = Representation(G, p * p, mats)
    labels = [f"k{i}v{j}" for i in range(p) for j in range(p)]
    return F, RG, rep, labels


def T_literal(p: int = 3) -> RestrictedAlgebra:
    """(K tensor V) + (N + S*) taken literally; c - z is central here."""
    F, RG, rep, labels = _T_parts(p)
    return restricted_split_extension(RG, rep, labels=labels + list(RG.algebra.labels))


def T(p: int = 3) -> RestrictedAlgebra:
    """(K tensor V) + (N + S*)/<c - z>.

    c - z acts as zero on K tensor V and is its own p-th power, so the
    module descends to the quotient, where it becomes faithful.
    """
    F, RG, rep, labels = _T_parts(p)
    G = RG.algebra
    cz = G.span([(0, 0, 1, 0, 0, F.neg(1))])
    if not p_closed_check(RG, cz, "ideal"):
        raise InputError("c - z does not span a [p]-ideal")
    RQ, pi = p_quotient(RG, cz)
    mats = [rep.rho(pi.section(unit_vec(RQ.dim, s))) for s in range(RQ.dim)]
    repQ = Representation(RQ.algebra, rep.dim, mats)
    return restricted_split_extension(RQ, repQ, labels=labels + list(RQ.algebra.labels))


def P_lambda(p: int = 2, minpoly=None) -> RestrictedAlgebra:
    """P_lambda for lambda a root of ``minpoly`` (default: the GF(p^2) modulus)."""
    from .schunck import build_P_lambda
    F = _prime(p)
    if minpoly is None:
        minpoly = field_make(p, 2).modulus
    return build_P_lambda(tuple(minpoly), F)


def notpn(p: int = 2, n: int = 2, q: int = 3, scan_limit: int = 10 ** 6):
    """Lambda = F-span of the conjugates of a root u of t^q - c, F = GF(p^n).

    c is the least element of F without a q-th root in F.
    """
    from .schunck import LambdaSpace
    _prime(p)
    if not is_prime(q) or (p ** n - 1) % q:
        raise InputError(f"q={q} must be a prime dividing {p}^{n} - 1")
    F = field_make(p, n)
    big_q = p ** (n * q)
    if big_q > scan_limit:
        raise CapacityError(f"GF({p}^{n * q}) is too large to scan for a q-th root")
    big = field_make(p, n * q)
    emb = embedding(F, big)
    e = (F.q - 1) // q
    c = next(x for x in F.nonzero() if F.pow(x, e) != 1)
    target = emb[c]
    u = next(x for x in big.nonzero() if big.pow(x, q) == target)
    conj, cur = [], u
    while cur not in conj:
        conj.append(cur)
        cur = big.pow(cur, F.q)
    return LambdaSpace(F, q, conj)


BUILDERS = {
    "der": der, "nilder": nilder, "nocomp": nocomp, "atom_null": atom_null,
    "atom_nonnull": atom_nonnull, "noform_U": noform_U, "noform_X": noform_X,
    "noform_Y": noform_Y, "noform_L": noform_L, "P": P, "Q": Q, "Qstar": Qstar,
    "P_lambda": P_lambda, "T": T, "T_literal": T_literal, "notpn": notpn,
}


def build_example(key: str, **params):
    if key not in BUILDERS:
        raise InputError(f"unknown catalog key {key!r}; known: {sorted(BUILDERS)}")
    return BUILDERS[key](**params)


def list_examples() -> list:
    return sorted(BUILDERS)


# ---------------------------------------------------------------------------
# expected facts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fact:
    key: str
    check: str
    expect: object
    params: dict = field(default_factory=dict)
    args: dict = field(default_factory=dict)


def _span(A, labels):
    L = A.algebra if isinstance(A, RestrictedAlgebra) else A
    vecs = [unit_vec(L.dim, L.labels.index(s)) for s in labels]
    return Subspace.span(vecs, L.dim, L.field)


def _vec(A, coeffs: dict):
    L = A.algebra if isinstance(A, RestrictedAlgebra) else A
    v = [0] * L.dim
    for s, c in coeffs.items():
        v[L.labels.index(s)] = L.field.from_int(c)
    return tuple(v)


def _c_derived_is_p_ideal(A):
    from .lie_core import derived_algebra
    return p_closed_check(A, derived_algebra(A.algebra), "ideal")


def _c_psi_strictly_contains_phi(A):
    from .restricted import p_frattini
    psi, phi = p_frattini(A), frattini(A.algebra)
    return phi < psi


def _c_vector_complement(A, ideal):
    from .cohomology import complement_abelian_ideal
    return complement_abelian_ideal(A.algebra, _span(A, ideal)) is not None


def _c_p_complement(A, ideal):
    from .cohomology import complement_abelian_ideal
    return complement_abelian_ideal(A, _span(A, ideal)) is not None


def _c_restrictable(A):
    return True if isinstance(A, RestrictedAlgebra) else is_restrictable(A)


def _c_center_dim(A):
    L = A.algebra if isinstance(A, RestrictedAlgebra) else A
    return center(L).dim


def _c_member(A, cls):
    from .schunck import is_member, make_class
    return is_member(A, make_class(cls))


def _c_primitive(A):
    from .restricted import is_primitive
    return is_primitive(A) is not None


def _c_residual(A, cls):
    from .schunck import make_class, residual
    return sorted(A.algebra.fmt(b) for b in residual(A, make_class(cls)).basis)


def _c_projector(A, cls):
    from .schunck import make_class, projector
    return sorted(A.algebra.fmt(b) for b in projector(A, make_class(cls)).basis)


def _c_nilradical(A):
    from .schunck import nilradical
    return sorted(A.algebra.fmt(b) for b in nilradical(A).basis)


def _c_p_image(A, x):
    return A.algebra.fmt(evaluate_p(A, _vec(A, x)))


def _c_p_normal(lam):
    return lam.is_p_normal()


def _c_lambda_dim(lam):
    return lam.dim


def _c_und_member(A, cls):
    from .schunck import make_class, und_membership
    return und_membership(A, make_class(cls))


def _c_is_atom(A):
    from .restricted import is_atom
    return is_atom(A)


def _c_is_null(A):
    return A.is_null()


def _c_dim(A):
    return A.dim


def _c_envelope_is_qstar(A):
    p = A.field.p
    return envelope_matches_qstar(p)


def _c_find_qn(_A, p):
    from .schunck import find_qn
    return list(find_qn(p))


def envelope_matches_qstar(p: int) -> bool:
    """The minimal envelope of Q is Q* under v_i, x, y -> images, z -> y^[p]."""
    from .envelopes import minimal_p_envelope, restricted_map_check
    Qo, Qs = Q(p), Qstar(p)
    env = minimal_p_envelope(Qo)
    if env.target.dim != Qs.dim:
        return False
    imgs = [env.embed(unit_vec(Qo.dim, i)) for i in range(Qo.dim)]
    y = imgs[Qo.labels.index("y")]
    imgs.append(evaluate_p(env.target, y))
    return restricted_map_check(Qs, env.target, imgs)


CHECKS = {
    "derived_is_p_ideal": _c_derived_is_p_ideal,
    "psi_strictly_contains_phi": _c_psi_strictly_contains_phi,
    "vector_complement": _c_vector_complement,
    "p_complement": _c_p_complement,
    "restrictable": _c_restrictable,
    "center_dim": _c_center_dim,
    "member": _c_member,
    "primitive": _c_primitive,
    "residual": _c_residual,
    "projector": _c_projector,
    "nilradical": _c_nilradical,
    "p_image": _c_p_image,
    "p_normal": _c_p_normal,
    "lambda_dim": _c_lambda_dim,
    "und_member": _c_und_member,
    "is_atom": _c_is_atom,
    "is_null": _c_is_null,
    "dim": _c_dim,
    "envelope_is_qstar": _c_envelope_is_qstar,
    "find_qn": _c_find_qn,
}


def _facts():
    F = Fact
    out = []
    for p in (2, 3):
        out += [
            F("der", "derived_is_p_ideal", False, {"p": p}),
            F("der", "psi_strictly_contains_phi", True, {"p": p}),
            F("nilder", "derived_is_p_ideal", False, {"p": p}),
            F("nilder", "psi_strictly_contains_phi", True, {"p": p}),
        ]
    out += [
        F("der", "p_image", "a + b + c", {"p": 3}, {"x": {"a": 1, "b": 1}}),
        F("der", "residual", ["b", "c"], {"p": 3}, {"cls": "pA"}),
        F("der", "residual", ["b", "c"], {"p": 3}, {"cls": "pN"}),
        F("der", "projector", ["a", "c"], {"p": 3}, {"cls": "pN"}),
        F("der", "nilradical", ["b", "c"], {"p": 3}),
        F("der", "member", True, {"p": 3}, {"cls": "pC"}),
        F("nocomp", "vector_complement", True, {"p": 2}, {"ideal": ["a"]}),
        F("nocomp", "p_complement", False, {"p": 2}, {"ideal": ["a"]}),
        F("nocomp", "vector_complement", True, {"p": 3}, {"ideal": ["a"]}),
        F("nocomp", "p_complement", False, {"p": 3}, {"ideal": ["a"]}),
        F("atom_null", "is_atom", True, {"p": 2}),
        F("atom_null", "is_null", True, {"p": 2}),
        F("atom_nonnull", "is_atom", True, {"p": 2}),
        F("atom_nonnull", "is_null", False, {"p": 2}),
        F("find_qn", "find_qn", [2, 3], {}, {"p": 2}),
        F("find_qn", "find_qn", [3, 13], {}, {"p": 3}),
        F("notpn", "lambda_dim", 1, {"p": 2, "n": 2, "q": 3}),
        F("notpn", "p_normal", False, {"p": 2, "n": 2, "q": 3}),
        F("notpn", "lambda_dim", 1, {"p": 3, "n": 1, "q": 2}),
        F("notpn", "p_normal", True, {"p": 3, "n": 1, "q": 2}),
        F("notpn", "p_normal", True, {"p": 7, "n": 1, "q": 3}),
        F("P", "member", True, {"p": 3}, {"cls": "ploc:pN_2"}),
        F("Q", "restrictable", False, {"p": 3}),
        F("Qstar", "member", True, {"p": 3}, {"cls": "ploc:M"}),
        F("Qstar", "member", False, {"p": 3}, {"cls": "pN"}),
        F("Qstar", "envelope_is_qstar", True, {"p": 3}),
        F("Qstar", "envelope_is_qstar", True, {"p": 5}),
        F("T", "dim", 14, {"p": 3}),
        F("T", "primitive", True, {"p": 3}),
        F("T", "member", False, {"p": 3}, {"cls": "ploc:pN_2"}),
        F("T", "member", False, {"p": 3}, {"cls": "ploc:M"}),
        F("T_literal", "center_dim", 1, {"p": 3}),
        F("T_literal", "primitive", False, {"p": 3}),
        F("P_lambda", "primitive", True, {"p": 2}),
        F("P_lambda", "member", True, {"p": 2}, {"cls": "pC"}),
    ]
    for p in (2, 3):
        out += [
            F("noform_L", "restrictable", False, {"p": p}),
            F("noform_X", "center_dim", 0, {"p": p}),
            F("noform_Y", "center_dim", 0, {"p": p}),
            F("noform_X", "restrictable", True, {"p": p}),
            F("noform_Y", "restrictable", True, {"p": p}),
        ]
    out += [
        F("noform_L", "und_member", False, {"p": 3}, {"cls": "pS"}),
        F("noform_X", "member", True, {"p": 3}, {"cls": "resord:S"}),
    ]
    return tuple(out)


EXPECTED_FACTS = _facts()


@dataclass
class FactResult:
    fact: Fact
    value: object
    ok: bool
    error: str = ""


def check_fact(fact: Fact) -> FactResult:
    fn = CHECKS[fact.check]
    try:
        obj = None if fact.key == "find_qn" else build_example(fact.key, **fact.params)
        value = fn(obj, **fact.args)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        return FactResult(fact, None, False, f"{type(exc).__name__}: {exc}")
    return FactResult(fact, value, value == fact.expect)


def check_facts(keys=None) -> list:
    return [check_fact(f) for f in EXPECTED_FACTS if keys is None or f.key in keys]


# ---------------------------------------------------------------------------
# small algebras
# ---------------------------------------------------------------------------

@dataclass
class SmallEntry:
    lie: LieAlgebra
    soluble: bool
    restrictable: bool
    p_operations: list
    sampled: bool = False
    n_operations: int = 0
    all_operations: list = field(default_factory=list)


def _sc_key(sc) -> tuple:
    return tuple(sorted((k, tuple(v)) for k, v in sc.items() if any(v)))


def _tables(F, n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in product(range(F.q), repeat=n * len(pairs)):
        sc = {}
        for t, pr in enumerate(pairs):
            v = vals[t * n:(t + 1) * n]
            if any(v):
                sc[pr] = tuple(v)
        yield sc


def _lie_algebras(p: int, n: int, gl=None):
    F = field_make(p)
    seen = set()
    out = []
    for sc in _tables(F, n):
        key = _sc_key(sc)
        if key in seen:
            continue
        L = LieAlgebra(F, n, sc, check=False)
        if L.jacobi_violation() is not None:
            continue
        out.append(L)
        if gl is not None:
            for g in gl:
                seen.add(_sc_key(transform_algebra(L, g)))
    return out


def automorphisms(L: LieAlgebra, gl=None) -> list:
    """Aut(L) as matrices, by scanning GL(n, F)."""
    key = _sc_key(L.sc())
    gl = invertible_matrices(L.dim, L.field) if gl is None else gl
    return [g for g in gl if _sc_key(transform_algebra(L, g)) == key]


def _op_orbits(ops: list, auts: list) -> list:
    """One p-operation per Aut(L)-orbit; g moves x -> x^[p] to x -> g((g^-1 x)^[p])."""
    if not ops:
        return []
    L = ops[0].algebra
    F, n = L.field, L.dim
    pairs = [(g, inverse(g, F)) for g in auts]
    seen, reps = set(), []
    for R in ops:
        k = tuple(map(tuple, R.images))
        if k in seen:
            continue
        reps.append(R)
        for g, gi in pairs:
            imgs = tuple(mat_vec(g, evaluate_p(R, tuple(r[i] for r in gi)), F) for i in range(n))
            seen.add(imgs)
    return reps


def _entry(L: LieAlgebra, budget: int, rng=None, gl=None) -> SmallEntry:
    from .lie_core import series
    sol = series(L, "derived").reaches_zero
    sampled = False
    try:
        every = enumerate_p_operations(L, budget)
        n_ops = len(every)
        ops = every if gl is None else _op_orbits(every, automorphisms(L, gl))
    except CapacityError:
        if rng is None:
            raise
        ops = every = _sampled_ops(L, budget, rng)
        n_ops, sampled = len(ops), True
    return SmallEntry(L, sol, bool(ops) or is_restrictable(L), ops, sampled, n_ops, list(every))


def _sampled_ops(L, count, rng):
    from .restricted import restrictable_images
    base = restrictable_images(L)
    if base is None:
        return []
    F = L.field
    zv = list(center(L).vectors())
    out = []
    for _ in range(count):
        shift = [rng.choice(zv) for _ in range(L.dim)]
        imgs = [tuple(F.add(a, b) for a, b in zip(bv, s)) for bv, s in zip(base, shift)]
        out.append(RestrictedAlgebra(L, imgs, check=False))
    return out


@lru_cache(maxsize=None)
def enumerate_small(p: int, max_dim: int, budget: int = 4096, sample: int = 60) -> tuple:
    """Lie algebras over GF(p) of dimension 1..max_dim with all p-operations.

    Up to dimension 3 every structure table passing Jacobi is scanned and
    one representative per isomorphism class is kept (the first met in the
    scan order), with one p-operation per orbit of its automorphism group.  Beyond dimension 3 a seeded sample of valid tables is
    drawn instead, without deduplication, and marked as sampled.
    """
    if not is_prime(p) or max_dim < 1:
        raise InputError("need prime p and max_dim >= 1")
    F = field_make(p)
    out = []
    for n in range(1, max_dim + 1):
        if n <= 3:
            if F.q ** (n * n * (n - 1) // 2) > 10 ** 6:
                raise CapacityError(f"structure-table scan for GF({p}) dimension {n} is too large")
            gl = list(invertible_matrices(n, F))
            for L in _lie_algebras(p, n, gl):
                out.append(_entry(L, budget, gl=gl))
        else:
            rng = random.Random(SAMPLE_SEED + 1000 * p + n)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            found, tries = 0, 0
            while found < sample and tries < 200 * sample:
                tries += 1
                sc = {}
                for pr in pairs:
                    v = tuple(rng.randrange(F.q) if rng.random() < 0.3 else 0 for _ in range(n))
                    if any(v):
                        sc[pr] = v
                L = LieAlgebra(F, n, sc, check=False)
                if L.jacobi_violation() is None:
                    e = _entry(L, budget, rng)
                    e.sampled = True
                    out.append(e)
                    found += 1
    return tuple(out)


def restricted_sample(p: int, max_dim: int, soluble_only: bool = True,
                      all_ops: bool = False) -> list:
    """(algebra, p-operation) pairs from :func:`enumerate_small`.

    By default one p-operation per automorphism orbit; ``all_ops`` keeps
    every p-operation of every representative.
    """
    out = []
    for e in enumerate_small(p, max_dim):
        if soluble_only and not e.soluble:
            continue
        out.extend(e.all_operations if all_ops else e.p_operations)
    return out


def ordinary_sample(p: int, max_dim: int, soluble_only: bool = True) -> list:
    return [e.lie for e in enumerate_small(p, max_dim) if e.soluble or not soluble_only]


def default_sample() -> list:
    """Restricted algebras of dimension <= 3 over GF(2) and <= 2 over GF(3)."""
    return restricted_sample(2, 3) + restricted_sample(3, 2)


def restricted_direct_sum(R1: RestrictedAlgebra, R2: RestrictedAlgebra) -> RestrictedAlgebra:
    """R1 + R2 with the p-operation acting coordinatewise."""
    n1, n2 = R1.dim, R2.dim
    imgs = [tuple(v) + (0,) * n2 for v in R1.images] + [(0,) * n1 + tuple(v) for v in R2.images]
    return RestrictedAlgebra(direct_sum(R1.algebra, R2.algebra), imgs, check=False)


def sampled_restricted(p: int, dim: int, per_algebra: int = 2) -> list:
    """The first few p-operations of each seeded sampled algebra of the given dimension."""
    return [R for e in enumerate_small(p, dim) if e.lie.dim == dim and e.soluble
            for R in e.p_operations[:per_algebra]]


def catalog_restricted(p: int = 3) -> list:
    """Named restricted algebras small enough for lattice scans."""
    out = [der(p), nilder(p), nocomp(p), atom_null(p), atom_nonnull(p)]
    if p == 2:
        out.append(P_lambda(2))
    return out
