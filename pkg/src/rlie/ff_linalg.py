"""Exact arithmetic over GF(p^m) and the linear algebra built on it.

Field elements are plain ints in ``range(q)``: the base-p digits of the
int are the coefficients (low to high) of the residue polynomial.  For a
prime field this is just the residue mod p, and in every field the ints
``0..p-1`` are the prime subfield.

Vectors are tuples of ints, matrices are lists (or tuples) of row tuples
acting on column vectors.  Subspaces are stored in reduced row echelon
form, which makes equality of subspaces equality of basis grids.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import InputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomials over GF(p) with int coefficients (only used to pick moduli)
# ---------------------------------------------------------------------------

def _prime_poly_mod(a, b, p):
    """Remainder of a by monic b over GF(p); both low-to-high lists."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        f = a[-1]
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible_prime(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _prime_poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple:
    """Lexicographically least monic irreducible of degree m over GF(p).

    Candidates are compared as coefficient tuples listed low to high, so
    for m = 1 the answer is ``t`` itself.
    """
    for tail in product(range(p), repeat=m):
        poly = list(tail) + [1]
        if _is_irreducible_prime(poly, p):
            return tuple(poly)
    raise InputError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """The finite field GF(p^m) with a fixed modulus.

    Arithmetic is exposed as plain functions stored on the instance
    (``F.add(a, b)``, ``F.mul(a, b)`` and so on) so hot loops can bind
    them to locals.
    """

    __slots__ = ("p", "m", "q", "modulus", "add", "sub", "neg", "mul",
                 "inv", "frob", "_exp", "_log", "_zech")

    def __init__(self, p: int, m: int, modulus):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        if m == 1:
            self._init_prime()
        else:
            self._init_extension()

    def _init_prime(self):
        p = self.p
        inv = [0] * p
        for a in range(1, p):
            inv[a] = pow(a, p - 2, p)
        self._exp = self._log = self._zech = None
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: (-a) % p
        self.mul = lambda a, b: (a * b) % p

        def _inv(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return inv[a]
        self.inv = _inv
        self.frob = lambda a: a

    def _slow_mul(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        da = _digits(a, p, m)
        db = _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _prime_poly_mod(prod, mod, p)
        return _undigits(rem, p)

    def _init_extension(self):
        p, q = self.p, self.q
        order = q - 1
        # smallest primitive element by int order
        factors = _prime_factors(order)
        gen = None
        for g in range(2, q):
            ok = True
            for f in factors:
                if self._slow_pow(g, order // f) == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        exp = [0] * order
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
        zech = [0] * order
        for n in range(order):
            y = exp[n]
            low = y % p
            s = y - low + (low + 1) % p
            zech[n] = -1 if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech

        if p == 2:
            def add(a, b):
                return a ^ b
            sub = add

            def neg(a):
                return a
        else:
            half = order // 2

            def add(a, b):
                if a == 0:
                    return b
                if b == 0:
                    return a
                la = log[a]
                z = zech[(log[b] - la) % order]
                if z < 0:
                    return 0
                return exp[(la + z) % order]

            def neg(a):
                if a == 0:
                    return 0
                return exp[(log[a] + half) % order]

            def sub(a, b):
                return add(a, neg(b))

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % order]

        def inv(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return exp[(-log[a]) % order]

        def frob(a):
            if a == 0:
                return 0
            return exp[(log[a] * p) % order]

        self.add, self.sub, self.neg = add, sub, neg
        self.mul, self.inv, self.frob = mul, inv, frob

    def _slow_pow(self, a, k):
        r = 1
        base = a
        while k:
            if k & 1:
                r = self._slow_mul(r, base)
            base = self._slow_mul(base, base)
            k >>= 1
        return r

    # -- conveniences -----------------------------------------------------
    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a = self.inv(a)
            k = -k
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def frob_power(self, a, k: int):
        """a^(p^k)."""
        for _ in range(k):
            a = self.frob(a)
        return a

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def to_coeffs(self, a: int) -> list:
        return _digits(a, self.p, self.m)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise InputError(f"bad element {coeffs} for GF({self.p}^{self.m})")
        return _undigits(coeffs, self.p)

    def is_prime_field(self) -> bool:
        return self.m == 1

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.m == other.m and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_make, (self.p, self.m))


def _digits(a, p, m):
    out = []
    for _ in range(m):
        out.append(a % p)
        a //= p
    return out


def _undigits(coeffs, p):
    r = 0
    for c in reversed(list(coeffs)):
        r = r * p + c
    return r


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1) -> Field:
    """GF(p^m) with the lexicographically least monic irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"{p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"extension degree must be >= 1, got {m}")
    return Field(p, m, smallest_irreducible(p, m))


def field_from_json(data: dict) -> Field:
    F = field_make(int(data["p"]), int(data.get("m", 1)))
    if "modulus" in data and tuple(data["modulus"]) != F.modulus:
        raise InputError(f"unsupported modulus {data['modulus']}; expected {list(F.modulus)}")
    return F


@lru_cache(maxsize=None)
def embedding(small: Field, big: Field) -> tuple:
    """Field embedding GF(p^m) -> GF(p^M) (m | M) as a lookup tuple.

    The generator t of the small field goes to the least root (as an int)
    of its modulus inside the big field.
    """
    if small.p != big.p or big.m % small.m:
        raise InputError(f"{small} does not embed in {big}")
    if small.m == 1:
        return tuple(range(small.q))
    mod = small.modulus
    root = None
    for r in big.elements():
        if poly_eval(mod, r, big) == 0:
            root = r
            break
    powers = [1]
    for _ in range(small.m - 1):
        powers.append(big.mul(powers[-1], root))
    table = []
    for a in small.elements():
        acc = 0
        for c, w in zip(small.to_coeffs(a), powers):
            if c:
                acc = big.add(acc, big.mul(c, w))
        table.append(acc)
    return tuple(table)


# ---------------------------------------------------------------------------
# polynomials over a Field: tuples low-to-high, trailing zeros trimmed
# ---------------------------------------------------------------------------

def poly_trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_deg(a) -> int:
    return len(poly_trim(a)) - 1


def poly_add(a, b, F: Field) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F.add(x, y))
    return poly_trim(out)


def poly_sub(a, b, F: Field) -> tuple:
    return poly_add(a, tuple(F.neg(c) for c in b), F)


def poly_scale(a, c, F: Field) -> tuple:
    return poly_trim(F.mul(x, c) for x in a)


def poly_mul(a, b, F: Field) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_divmod(a, b, F: Field):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(poly_trim(a))
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        f = F.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        quot[shift] = f
        for i, c in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(f, c))
        while a and a[-1] == 0:
            a.pop()
    return poly_trim(quot), poly_trim(a)


def poly_eval(a, x, F: Field):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_map(a, table) -> tuple:
    """Push coefficients through a field embedding table."""
    return poly_trim(table[c] for c in a)


def poly_str(a, var: str = "t") -> str:
    terms = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
    return " + ".join(reversed(terms)) or "0"


# ---------------------------------------------------------------------------
# vectors and matrices
# ---------------------------------------------------------------------------

def zero_vec(n: int) -> tuple:
    return (0,) * n


def unit_vec(n: int, i: int) -> tuple:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def vec_add(u, v, F: Field) -> tuple:
    if F.m == 1:
        p = F.p
        return tuple((a + b) % p for a, b in zip(u, v))
    add = F.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_sub(u, v, F: Field) -> tuple:
    if F.m == 1:
        p = F.p
        return tuple((a - b) % p for a, b in zip(u, v))
    sub = F.sub
    return tuple(sub(a, b) for a, b in zip(u, v))


def vec_scale(c, v, F: Field) -> tuple:
    if F.m == 1:
        p = F.p
        return tuple((c * a) % p for a in v)
    mul = F.mul
    return tuple(mul(c, a) for a in v)


def vec_neg(v, F: Field) -> tuple:
    return tuple(F.neg(a) for a in v)


def vec_axpy(c, x, y, F: Field) -> tuple:
    """y + c*x."""
    if F.m == 1:
        p = F.p
        return tuple((b + c * a) % p for a, b in zip(x, y))
    add, mul = F.add, F.mul
    return tuple(add(b, mul(c, a)) for a, b in zip(x, y))


def lin_comb(coeffs, vectors, F: Field, n: int) -> tuple:
    """sum_i coeffs[i] * vectors[i], as a length-n tuple."""
    if F.m == 1:
        p = F.p
        acc = [0] * n
        for c, v in zip(coeffs, vectors):
            if c:
                for k, a in enumerate(v):
                    if a:
                        acc[k] += c * a
        return tuple(x % p for x in acc)
    add, mul = F.add, F.mul
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    acc[k] = add(acc[k], mul(c, a))
    return tuple(acc)


def is_zero(v) -> bool:
    return not any(v)


def zeros(r: int, c: int) -> list:
    return [(0,) * c for _ in range(r)]


def identity(n: int) -> list:
    return [unit_vec(n, i) for i in range(n)]


def transpose(A, ncols: int | None = None) -> list:
    if not A:
        return [() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*A)]


def mat_vec(A, v, F: Field) -> tuple:
    if F.m == 1:
        p = F.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in A)
    add, mul = F.add, F.mul
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(A, B, F: Field) -> list:
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    if not Bt:
        return [() for _ in A]
    if F.m == 1:
        p = F.p
        return [tuple(sum(a * b for a, b in zip(row, col)) % p for col in Bt) for row in A]
    return [mat_vec(Bt, row, F) for row in A]


def mat_add(A, B, F: Field) -> list:
    return [vec_add(a, b, F) for a, b in zip(A, B)]


def mat_sub(A, B, F: Field) -> list:
    return [vec_sub(a, b, F) for a, b in zip(A, B)]


def mat_scale(c, A, F: Field) -> list:
    return [vec_scale(c, row, F) for row in A]


def mat_pow(A, k: int, F: Field) -> list:
    n = len(A)
    result = identity(n)
    base = [tuple(r) for r in A]
    while k:
        if k & 1:
            result = mat_mul(result, base, F)
        base = mat_mul(base, base, F)
        k >>= 1
    return result


def mat_eq(A, B) -> bool:
    return len(A) == len(B) and all(tuple(a) == tuple(b) for a, b in zip(A, B))


def mat_is_zero(A) -> bool:
    return all(not any(r) for r in A)


def mat_flatten(A) -> tuple:
    return tuple(x for row in A for x in row)


def mat_unflatten(v, n: int, m: int | None = None) -> list:
    m = n if m is None else m
    return [tuple(v[i * m:(i + 1) * m]) for i in range(n)]


def commutator(A, B, F: Field) -> list:
    return mat_sub(mat_mul(A, B, F), mat_mul(B, A, F), F)


def block_diag(A, B) -> list:
    a, b = len(A), len(B)
    rows = [tuple(r) + (0,) * b for r in A]
    rows += [(0,) * a + tuple(r) for r in B]
    return rows


def kron(A, B, F: Field) -> list:
    rows = []
    for ra in A:
        for rb in B:
            rows.append(tuple(F.mul(x, y) for x in ra for y in rb))
    return rows


# ---------------------------------------------------------------------------
# row reduction and subspaces
# ---------------------------------------------------------------------------

def _rref_prime(rows, p):
    M = [list(r) for r in rows if any(r)]
    pivots = []
    if not M:
        return [], pivots
    ncols = len(M[0])
    r = 0
    nrows = len(M)
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        row = M[r]
        lead = row[c]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            row = [(x * inv) % p for x in row]
            M[r] = row
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(M[i]) for i in range(r)], pivots


def _rref_generic(rows, F):
    M = [list(r) for r in rows if any(r)]
    pivots = []
    if not M:
        return [], pivots
    ncols = len(M[0])
    sub, mul = F.sub, F.mul
    r = 0
    nrows = len(M)
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        row = M[r]
        lead = row[c]
        if lead != 1:
            inv = F.inv(lead)
            row = [mul(x, inv) for x in row]
            M[r] = row
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    M[i] = [sub(a, mul(f, b)) for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(M[i]) for i in range(r)], pivots


def rref_rows(rows, F: Field):
    """RREF of the given rows: (nonzero rows, pivot columns)."""
    if F.m == 1:
        return _rref_prime(rows, F.p)
    return _rref_generic(rows, F)


class RrefResult:
    """Outcome of :func:`rref`.

    ``row_coords[i]`` expresses original row i in the echelon basis; for an
    RREF basis those coordinates are simply the entries at the pivot columns.
    """

    __slots__ = ("space", "rank", "row_coords")

    def __init__(self, space, rank, row_coords):
        self.space = space
        self.rank = rank
        self.row_coords = row_coords


def rref(rows, F: Field, ncols: int | None = None) -> RrefResult:
    rows = [tuple(r) for r in rows]
    n = len(rows[0]) if rows else (ncols or 0)
    space = Subspace.span(rows, n, F)
    coords = [tuple(r[c] for c in space.pivots) for r in rows]
    for r, c in zip(rows, coords):
        if space.combine(c) != r:
            raise AssertionError("row not recovered from echelon basis")
    return RrefResult(space, space.dim, coords)


class Subspace:
    """A subspace of F^n held as a canonical RREF basis."""

    __slots__ = ("field", "n", "basis", "pivots", "_hash")

    def __init__(self, field: Field, n: int, basis, pivots):
        self.field = field
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def span(cls, vectors, n: int, F: Field) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise InputError(f"vector of length {len(v)} in ambient dimension {n}")
        basis, pivots = rref_rows(vectors, F)
        return cls(F, n, basis, pivots)

    @classmethod
    def zero(cls, n: int, F: Field) -> "Subspace":
        return cls(F, n, (), ())

    @classmethod
    def full(cls, n: int, F: Field) -> "Subspace":
        return cls(F, n, identity(n), range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n

    def reduce(self, v) -> tuple:
        """Reduce v modulo this subspace (zero out the pivot coordinates)."""
        F = self.field
        v = list(v)
        if F.m == 1:
            p = F.p
            for row, c in zip(self.basis, self.pivots):
                f = v[c]
                if f:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
        else:
            sub, mul = F.sub, F.mul
            for row, c in zip(self.basis, self.pivots):
                f = v[c]
                if f:
                    v = [sub(a, mul(f, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coords(self, v) -> tuple:
        """Coordinates of v (which must lie in the subspace) in the basis."""
        c = tuple(v[p] for p in self.pivots)
        if self.combine(c) != tuple(v):
            raise InputError("vector is not in the subspace")
        return c

    def combine(self, coeffs) -> tuple:
        return lin_comb(coeffs, self.basis, self.field, self.n)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.basis))
        return self._hash

    def key(self):
        """Deterministic sort key: dimension, then the basis grid."""
        return (self.dim, self.basis)

    def __repr__(self):
        return f"Subspace(n={self.n}, basis={[list(b) for b in self.basis]})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "sum")

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "intersection")

    def extend(self, vectors) -> "Subspace":
        return Subspace.span(list(self.basis) + [tuple(v) for v in vectors], self.n, self.field)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.n

    def nonpivots(self) -> tuple:
        piv = set(self.pivots)
        return tuple(i for i in range(self.n) if i not in piv)

    def vectors(self):
        """Every vector of the subspace (q^dim of them)."""
        F = self.field
        for coeffs in product(range(F.q), repeat=self.dim):
            yield self.combine(coeffs)

    def to_json(self):
        return [[list(self.field.to_coeffs(x)) for x in row] for row in self.basis]


class Echelon:
    """Incrementally maintained RREF basis, used by closure loops."""

    __slots__ = ("F", "n", "rows", "pivots")

    def __init__(self, F: Field, n: int, space: Subspace | None = None):
        self.F = F
        self.n = n
        self.rows = list(space.basis) if space is not None else []
        self.pivots = list(space.pivots) if space is not None else []

    def reduce(self, v):
        F = self.F
        v = list(v)
        if F.m == 1:
            p = F.p
            for row, c in zip(self.rows, self.pivots):
                f = v[c]
                if f:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
        else:
            sub, mul = F.sub, F.mul
            for row, c in zip(self.rows, self.pivots):
                f = v[c]
                if f:
                    v = [sub(a, mul(f, b)) for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Add v; True when the span grew."""
        F = self.F
        r = self.reduce(v)
        c = next((i for i, x in enumerate(r) if x), -1)
        if c < 0:
            return False
        inv = F.inv(r[c])
        r = tuple(F.mul(x, inv) for x in r)
        # clear column c from existing rows
        new_rows = []
        for row in self.rows:
            f = row[c]
            if f:
                row = vec_axpy(F.neg(f), r, row, F)
            new_rows.append(row)
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < c:
            idx += 1
        new_rows.insert(idx, r)
        self.pivots.insert(idx, c)
        self.rows = new_rows
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)

    def space(self) -> Subspace:
        return Subspace(self.F, self.n, [tuple(r) for r in self.rows], self.pivots)


def subspace_combine(U: Subspace, V: Subspace, mode: str) -> Subspace:
    """Sum or intersection of two subspaces of the same ambient space."""
    if U.n != V.n:
        raise InputError(f"ambient mismatch: {U.n} vs {V.n}")
    F = U.field
    if mode == "sum":
        return Subspace.span(list(U.basis) + list(V.basis), U.n, F)
    if mode != "intersection":
        raise InputError(f"unknown mode {mode!r}")
    if U.is_zero() or V.is_zero():
        return Subspace.zero(U.n, F)
    # x = sum a_i u_i = sum b_j v_j  <=>  [U^T | -V^T] (a, b) = 0
    cols = list(U.basis) + [vec_neg(v, F) for v in V.basis]
    A = transpose(cols)
    K = kernel(A, F)
    vecs = [U.combine(k[:U.dim]) for k in K.basis]
    return Subspace.span(vecs, U.n, F)


def kernel(A, F: Field, ncols: int | None = None) -> Subspace:
    """{x : A x = 0} as a canonical subspace of F^cols."""
    A = [tuple(r) for r in A]
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return Subspace.full(n, F)
    rows, pivots = rref_rows(A, F)
    piv_set = set(pivots)
    vecs = []
    for f in range(n):
        if f in piv_set:
            continue
        x = [0] * n
        x[f] = 1
        for row, c in zip(rows, pivots):
            x[c] = F.neg(row[f])
        vecs.append(tuple(x))
    return Subspace.span(vecs, n, F)


def image(A, F: Field, nrows: int | None = None) -> Subspace:
    """Column space of A."""
    A = [tuple(r) for r in A]
    m = len(A) if A else (nrows or 0)
    if not A or not A[0]:
        return Subspace.zero(m, F)
    return Subspace.span(transpose(A), m, F)


def rank(A, F: Field) -> int:
    return len(rref_rows(A, F)[0])


def solve(A, b, F: Field, ncols: int | None = None):
    """Lexicographically least x with A x = b, or None when inconsistent."""
    A = [tuple(r) for r in A]
    b = tuple(b)
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return (0,) * n
    aug = [row + (bi,) for row, bi in zip(A, b)]
    rows, pivots = rref_rows(aug, F)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for row, c in zip(rows, pivots):
        x[c] = row[n]
    K = kernel(A, F, n)
    return K.reduce(x)


def inverse(A, F: Field):
    """Inverse of a square matrix, or None when singular."""
    n = len(A)
    aug = [tuple(row) + unit_vec(n, i) for i, row in enumerate(A)]
    rows, pivots = rref_rows(aug, F)
    if len(rows) < n or pivots[n - 1] != n - 1:
        return None
    return [tuple(r[n:]) for r in rows]


def all_subspaces(n: int, F: Field, dim: int | None = None):
    """Every subspace of F^n in RREF, ordered by dimension then pivots/entries."""
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for pivots in _combinations(range(n), k):
            free = []
            for i, c in enumerate(pivots):
                for j in range(c + 1, n):
                    if j not in pivots:
                        free.append((i, j))
            for vals in product(range(F.q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                yield Subspace(F, n, [tuple(r) for r in rows], pivots)


def _combinations(seq, k):
    from itertools import combinations
    return combinations(seq, k)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def projective_points(n: int, F: Field, positions=None):
    """Vectors of F^n (supported on ``positions``) whose first nonzero entry is 1."""
    positions = list(range(n)) if positions is None else list(positions)
    k = len(positions)
    for lead in range(k):
        rest = positions[lead + 1:]
        for vals in product(range(F.q), repeat=len(rest)):
            v = [0] * n
            v[positions[lead]] = 1
            for pos, x in zip(rest, vals):
                v[pos] = x
            yield tuple(v)


# ---------------------------------------------------------------------------
# characteristic polynomials and roots
# ---------------------------------------------------------------------------

def char_poly(M, F: Field) -> tuple:
    """Monic det(tI - M) via reduction to upper Hessenberg form."""
    n = len(M)
    if n == 0:
        return (1,)
    H = [list(r) for r in M]
    add, sub, mul = F.add, F.sub, F.mul
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j]:
                f = mul(H[i][j], inv)
                H[i] = [sub(a, mul(f, b)) for a, b in zip(H[i], H[j + 1])]
                for row in H:
                    row[j + 1] = add(row[j + 1], mul(f, row[i]))
    polys = [(1,)]
    for k in range(1, n + 1):
        pk = poly_mul((F.neg(H[k - 1][k - 1]), 1), polys[k - 1], F)
        prod_sub = 1
        for i in range(k - 1, 0, -1):
            prod_sub = mul(prod_sub, H[i][i - 1])
            if prod_sub == 0:
                break
            coeff = mul(H[i - 1][k - 1], prod_sub)
            if coeff:
                pk = poly_sub(pk, poly_scale(polys[i - 1], coeff, F), F)
        polys.append(pk)
    return polys[n]


def roots_in(poly, F: Field) -> list:
    """Roots of poly (coefficients in F) found by scanning F, with multiplicity."""
    poly = poly_trim(poly)
    if not poly:
        raise InputError("the zero polynomial has every element as a root")
    out = []
    for x in F.elements():
        g = poly
        while len(g) > 1 and poly_eval(g, x, F) == 0:
            out.append(x)
            g, _ = poly_divmod(g, (F.neg(x), 1), F)
    return out


def companion(poly, F: Field) -> list:
    """Companion matrix of a monic polynomial (acts on column vectors)."""
    poly = poly_trim(poly)
    n = len(poly) - 1
    if n < 1 or poly[-1] != 1:
        raise InputError("companion matrix needs a monic polynomial of degree >= 1")
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = F.neg(poly[i])
    return [tuple(r) for r in C]


def mat_poly_eval(poly, A, F: Field) -> list:
    n = len(A)
    acc = zeros(n, n)
    for c in reversed(poly):
        acc = mat_mul(acc, A, F)
        if c:
            acc = [tuple(F.add(x, c) if i == j else x for j, x in enumerate(row))
                   for i, row in enumerate(acc)]
    return acc
