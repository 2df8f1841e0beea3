"""Exact arithmetic in finite field towers F_p < F_q < F_{q^n}.

A context models F_{p^D} with D = e*n, viewed as F_{q^n} for q = p^e.  Elements
are plain Python ints: the little-endian base-p packing of the coefficient
vector in the power basis of a deterministically chosen modulus, so results are
bit-reproducible across runs and processes.  Subfields are not separate
structures; membership in F_{q^m} is a Frobenius fixed-point test inside the
big field.

Two engines back the arithmetic.  Fields with at most ``table_cap`` elements
get exp/log tables over a minimal primitive element plus a Zech-logarithm
table, which is what makes the exhaustive scans elsewhere in this package
near-linear.  Larger fields (up to ``arith_cap``) fall back to generic packed
polynomial arithmetic with lazily built Frobenius matrices.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional, Sequence

from .errors import (
    BadTowerLevel,
    DegreeOverflow,
    NonMonic,
    NotInSubfield,
    NotPrime,
    ScanCapExceeded,
    ZeroInput,
)

DEFAULT_ARITH_CAP = 1 << 40
DEFAULT_TABLE_CAP = 1 << 20
DEFAULT_SCAN_CAP = 1 << 28

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(m: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond the 2^40 arithmetic cap
    if m < 2:
        return False
    for sp in _MR_BASES:
        if m % sp == 0:
            return m == sp
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (little-endian coefficient lists)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    return _ptrim(a)


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        k >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        mon = [(c * inv_lead) % p for c in b]
        a, b = b, _pmod(a, mon, p)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Whether a monic polynomial over F_p is irreducible.

    Uses the Rabin test: x^{p^d} = x mod f, and gcd(x^{p^{d/l}} - x, f) = 1 for
    every prime l dividing d.  Raises NonMonic unless the leading coefficient
    is 1.
    """
    coeffs = _ptrim(list(c % p for c in coeffs))
    if not coeffs or coeffs[-1] != 1:
        raise NonMonic("irreducibility test requires a monic polynomial")
    d = len(coeffs) - 1
    if d == 0:
        raise NonMonic("constant polynomials are not tested")
    if d == 1:
        return True
    x = [0, 1]

    def minus_x(poly: Sequence[int]) -> list[int]:
        out = [((poly[i] if i < len(poly) else 0) - (1 if i == 1 else 0)) % p
               for i in range(max(len(poly), 2))]
        return _ptrim(out)

    if minus_x(_ppowmod(x, p**d, coeffs, p)):
        return False
    for ell in _prime_factors(d):
        g = _pgcd(minus_x(_ppowmod(x, p ** (d // ell), coeffs, p)), coeffs, p)
        if len(g) != 1:
            return False
    return True


def _first_irreducible(p: int, d: int) -> tuple[int, ...]:
    # candidates (c_0, .., c_{d-1}) in ascending tuple order, last digit fastest
    if d == 1:
        return (0, 1)
    for m in range(p**d):
        digits = []
        v = m
        for _ in range(d):
            digits.append(v % p)
            v //= p
        digits.reverse()  # m's base-p big-endian digits are (c_0, .., c_{d-1})
        cand = digits + [1]
        if cand[0] == 0:
            continue  # divisible by t
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("at least one irreducible polynomial of each degree exists")


# ---------------------------------------------------------------------------


class FieldCtx:
    """Immutable context for F_{q^n} = F_{p^{e*n}}; see the module docstring.

    All element-level methods take and return packed ints.  Instances are
    safely shareable across workers; every operation is pure.
    """

    __slots__ = (
        "p", "e", "n", "d", "q", "size", "order", "modulus",
        "use_tables", "table_cap", "arith_cap", "scan_cap",
        "_exp", "_log", "_zech", "_gen", "_qpow",
        "_frob_cols", "_fq_basis_cache", "_normal_cache", "_mod_mults",
    )

    def __init__(self, p: int, e: int, n: int, *, table_cap: int, arith_cap: int, scan_cap: int):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("tower degrees must be positive")
        d = e * n
        if p**d > arith_cap:
            raise DegreeOverflow(f"p^(e*n) = {p}^{d} exceeds the arithmetic cap {arith_cap}")
        self.p = p
        self.e = e
        self.n = n
        self.d = d
        self.q = p**e
        self.size = p**d
        self.order = self.size - 1
        self.table_cap = table_cap
        self.arith_cap = arith_cap
        self.scan_cap = scan_cap
        self.modulus = _first_irreducible(p, d)
        self._qpow = [pow(self.q, k, self.order) if self.order > 1 else 0 for k in range(n)]
        self._frob_cols: Optional[list[list[int]]] = None
        self._fq_basis_cache: Optional[list[int]] = None
        self._normal_cache: Optional[int] = None
        # c * modulus-tail for c in 0..p-1, used by the shift-reduce multiply
        tail = self.modulus[:-1]
        self._mod_mults = [self._pack([(c * t) % p for t in tail]) for c in range(p)]
        self.use_tables = self.size <= table_cap
        if self.use_tables:
            self._build_tables()
        else:
            self._exp = self._log = self._zech = None
            self._gen = None

    # -- encoding ----------------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Little-endian coefficient vector of x in the power basis."""
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.d:
            raise ValueError(f"at most {self.d} coefficients expected")
        v = 0
        for c in reversed([c % self.p for c in cs]):
            v = v * self.p + c
        return v

    def _pack(self, ds: Sequence[int]) -> int:
        v = 0
        for c in reversed(ds):
            v = v * self.p + c
        return v

    @property
    def signature(self) -> tuple:
        return (self.p, self.e, self.n, self.modulus)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n}, modulus={list(self.modulus)})"

    def header(self) -> dict:
        """Serializable description embedded in all CLI outputs."""
        return {"p": self.p, "e": self.e, "n": self.n, "q": self.q,
                "modulus": list(self.modulus), "engine": "tables" if self.use_tables else "generic"}

    # -- table engine ------------------------------------------------------

    def _mul_by_t(self, x: int) -> int:
        y = x * self.p
        hi, lo = divmod(y, self.size)
        return lo if hi == 0 else self.sub(lo, self._mod_mults[hi])

    def _build_tables(self) -> None:
        size, order, p = self.size, self.order, self.p
        if order == 1:
            self._gen = 1
            self._exp = [1]
            self._log = [-1, 0]
            self._zech = [-1]
            return
        fac = _prime_factors(order)
        mod = list(self.modulus)
        gen = None
        for g in range(2, size):
            gd = list(self.coeffs(g))
            if all(_ptrim(_ppowmod(gd, order // r, mod, p)) != [1] for r in fac):
                gen = g
                break
        assert gen is not None
        self._gen = gen
        gdig = self.coeffs(gen)
        nonzero = [(i, c) for i, c in enumerate(gdig) if c]
        exp = [0] * order
        exp[0] = 1
        cur = 1
        for k in range(1, order):
            acc = 0
            tmp = cur
            pos = 0
            for i, c in nonzero:
                while pos < i:
                    tmp = self._mul_by_t(tmp)
                    pos += 1
                term = tmp
                for _ in range(c - 1):
                    term = self.add(term, tmp)
                acc = self.add(acc, term)
            cur = acc
            exp[k] = cur
        log = [-1] * size
        for k, v in enumerate(exp):
            log[v] = k
        zech = [log[self.add(1, exp[k])] for k in range(order)]
        self._exp = exp
        self._log = log
        self._zech = zech

    @property
    def generator(self) -> int:
        """Minimal primitive element (table engine only)."""
        if self._gen is None:
            raise ScanCapExceeded("no multiplicative tables for this field size")
        return self._gen

    # -- ring operations ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        res = 0
        mult = 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            s = da + db
            if s >= p:
                s -= p
            res += s * mult
            mult *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        res = 0
        mult = 1
        while a:
            a, da = divmod(a, p)
            if da:
                res += (p - da) * mult
            mult *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b)) if self.p != 2 else a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.use_tables:
            return self._exp[(self._log[a] + self._log[b]) % self.order]
        prod = _pmulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p)
        return self._pack(prod)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInput("zero has no multiplicative inverse")
        if self.use_tables:
            return self._exp[(-self._log[a]) % self.order]
        return self.pow_(a, self.order - 1)

    def pow_(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroInput("zero has no negative powers")
            return 0
        if self.use_tables:
            return self._exp[(self._log[a] * k) % self.order]
        k %= self.order
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- Frobenius and tower maps -----------------------------------------

    def _frob_matrices(self) -> list[list[int]]:
        # columns of x -> x^{q^k} as packed digit vectors, for k = 0..n-1
        if self._frob_cols is None:
            p, d = self.p, self.d
            mod = list(self.modulus)
            # columns of x -> x^p
            mp_packed = [self._pack_poly(_ppowmod([0] * j + [1], p, mod, p)) for j in range(d)]
            mq = mp_packed
            for _ in range(self.e - 1):
                mq = [self._apply_cols(mp_packed, col) for col in mq]
            cols = [[self._pack([1 if i == j else 0 for i in range(d)]) for j in range(d)]]
            cur = cols[0]
            for _ in range(1, self.n):
                cur = [self._apply_cols(mq, col) for col in cur]
                cols.append(cur)
            self._frob_cols = cols
        return self._frob_cols

    def _pack_poly(self, poly: Sequence[int]) -> int:
        return self._pack(list(poly) + [0] * (self.d - len(poly)))

    def _apply_cols(self, cols: Sequence[int], x: int) -> int:
        p = self.p
        out = 0
        j = 0
        while x:
            x, c = divmod(x, p)
            if c:
                term = cols[j]
                for _ in range(c - 1):
                    term = self.add(term, cols[j])
                out = self.add(out, term)
            j += 1
        return out

    @property
    def frobenius_tables(self) -> list[list[int]]:
        """Packed columns of x -> x^{q^k}, built on demand when D <= 64."""
        if self.d > 64:
            raise DegreeOverflow("Frobenius matrices are only precomputed for D <= 64")
        return self._frob_matrices()

    def frobenius(self, x: int, k: int) -> int:
        """x^{q^k}, with k taken modulo n."""
        k %= self.n
        if x == 0 or k == 0:
            return x
        if self.use_tables:
            return self._exp[(self._log[x] * self._qpow[k]) % self.order]
        if self.d <= 64:
            return self._apply_cols(self._frob_matrices()[k], x)
        return self.pow_(x, pow(self.q, k, self.order))

    def norm(self, x: int, m: int = 1) -> int:
        """N_{q^n/q^m}(x), the product of the q^m-power conjugates."""
        if self.n % m:
            raise BadTowerLevel(f"{m} does not divide n={self.n}")
        out = 1
        for i in range(self.n // m):
            out = self.mul(out, self.frobenius(x, m * i))
        return out

    def trace(self, x: int, m: int = 1) -> int:
        """Tr_{q^n/q^m}(x), the sum of the q^m-power conjugates."""
        if self.n % m:
            raise BadTowerLevel(f"{m} does not divide n={self.n}")
        out = 0
        for i in range(self.n // m):
            out = self.add(out, self.frobenius(x, m * i))
        return out

    def in_subfield(self, x: int, m: int) -> bool:
        """Whether x lies in F_{q^m}, i.e. x^{q^m} = x."""
        if self.n % m:
            raise BadTowerLevel(f"{m} does not divide n={self.n}")
        return self.frobenius(x, m) == x

    def subfield_elements(self, m: int) -> Iterator[int]:
        """All elements of F_{q^m}, zero first (table engine only)."""
        if self.n % m:
            raise BadTowerLevel(f"{m} does not divide n={self.n}")
        if not self.use_tables:
            raise ScanCapExceeded("subfield enumeration needs the table engine")
        yield 0
        sub_order = self.q**m - 1
        step = self.order // sub_order
        for k in range(sub_order):
            yield self._exp[k * step]

    # -- derived predicates --------------------------------------------------

    def _fq_fp_basis(self) -> list[int]:
        # an F_p-basis of the subfield F_q, chosen deterministically
        if self._fq_basis_cache is None:
            basis: list[int] = []
            rows: list[list[int]] = []  # row-echelon scratch
            src = self.subfield_elements(1) if self.use_tables else range(self.size)
            for x in src:
                if x == 0:
                    continue
                if not self.use_tables and not self.in_subfield(x, 1):
                    continue
                if self._extends_rank(rows, list(self.coeffs(x))):
                    basis.append(x)
                    if len(basis) == self.e:
                        break
            assert len(basis) == self.e
            self._fq_basis_cache = basis
        return self._fq_basis_cache

    def _extends_rank(self, rows: list[list[int]], vec: list[int]) -> bool:
        # Gaussian elimination step mod p; mutates rows when independent
        p = self.p
        v = vec[:]
        for r in rows:
            pivot = next(i for i, c in enumerate(r) if c)
            if v[pivot]:
                f = (v[pivot] * pow(r[pivot], p - 2, p)) % p
                v = [(a - f * b) % p for a, b in zip(v, r)]
        if any(v):
            rows.append(v)
            return True
        return False

    def find_normal_element(self) -> int:
        """Smallest xi whose conjugates xi^{q^i} form an F_q-basis of F_{q^n}."""
        if self._normal_cache is None:
            wbasis = self._fq_fp_basis()
            for xi in range(1, self.size):
                rows: list[list[int]] = []
                ok = True
                conj = [self.frobenius(xi, i) for i in range(self.n)]
                for c in conj:
                    for w in wbasis:
                        if not self._extends_rank(rows, list(self.coeffs(self.mul(w, c)))):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    self._normal_cache = xi
                    break
            assert self._normal_cache is not None
        return self._normal_cache

    def quadratic_splits_in_subfield(self, b: int, c: int, m: int) -> bool:
        """Whether Y^2 + bY + c has both roots (with multiplicity) in F_{q^m}.

        Odd p: discriminant square test.  p = 2: Artin-Schreier, with b = 0
        split unconditionally since squaring is onto.
        """
        if self.n % m:
            raise BadTowerLevel(f"{m} does not divide n={self.n}")
        if not self.in_subfield(b, m) or not self.in_subfield(c, m):
            raise NotInSubfield("coefficients must lie in the target subfield")
        if self.p == 2:
            if b == 0:
                return True
            w = self.mul(c, self.inv(self.mul(b, b)))
            t = 0
            cur = w
            for _ in range(self.e * m):
                t = self.add(t, cur)
                cur = self.mul(cur, cur)
            return t == 0
        delta = self.sub(self.mul(b, b), self._four(c))
        if delta == 0:
            return True
        return self.pow_(delta, (self.q**m - 1) // 2) == 1

    def _four(self, c: int) -> int:
        c2 = self.add(c, c)
        return self.add(c2, c2)

    def is_power_residue(self, v: int, G: int) -> bool:
        """Whether v is a (q^K - 1)-th power for any K with gcd(K, n) = G."""
        if v == 0:
            raise ZeroInput("power residue test is undefined at zero")
        if self.n % G:
            raise BadTowerLevel(f"{G} does not divide n={self.n}")
        return self.pow_(v, self.order // (self.q**G - 1)) == 1

    def solve_kth_root(self, v: int, K: int) -> Optional[int]:
        """Some z with z^{q^K - 1} = v, or None (table engine only)."""
        if v == 0:
            raise ZeroInput("no root of zero")
        if not self.use_tables:
            raise ScanCapExceeded("root solving needs the table engine")
        k = pow(self.q, K % self.n, self.order) - 1 if K % self.n else 0
        if k == 0:
            return 1 if v == 1 else None
        lv = self._log[v]
        d = math.gcd(k, self.order)
        if lv % d:
            return None
        mo = self.order // d
        t0 = (lv // d) * pow(k // d, -1, mo) % mo
        return self._exp[t0]

    def rand_element(self, rng) -> int:
        return rng.randrange(self.size)

    def check_scan(self, work: int) -> None:
        if work > self.scan_cap:
            raise ScanCapExceeded(f"scan of size {work} exceeds cap {self.scan_cap}")


def make_field(p: int, e: int, n: int, *, table_cap: int = DEFAULT_TABLE_CAP,
               arith_cap: int = DEFAULT_ARITH_CAP, scan_cap: int = DEFAULT_SCAN_CAP) -> FieldCtx:
    """Build F_{q^n} with q = p^e over a deterministic lex-first modulus."""
    return FieldCtx(p, e, n, table_cap=table_cap, arith_cap=arith_cap, scan_cap=scan_cap)


# free-function aliases; the methods above are the primary API


def frobenius(ctx: FieldCtx, x: int, k: int) -> int:
    return ctx.frobenius(x, k)


def norm(ctx: FieldCtx, x: int, m: int = 1) -> int:
    return ctx.norm(x, m)


def trace(ctx: FieldCtx, x: int, m: int = 1) -> int:
    return ctx.trace(x, m)


def in_subfield(ctx: FieldCtx, x: int, m: int) -> bool:
    return ctx.in_subfield(x, m)


def find_normal_element(ctx: FieldCtx) -> int:
    return ctx.find_normal_element()


def quadratic_splits_in_subfield(ctx: FieldCtx, b: int, c: int, m: int) -> bool:
    return ctx.quadratic_splits_in_subfield(b, c, m)


def is_power_residue(ctx: FieldCtx, v: int, G: int) -> bool:
    return ctx.is_power_residue(v, G)
