"""F_q-linearized polynomials over F_{q^n} and binomial canonical forms.

A linearized polynomial sum(a_i X^{q^i}) is kept as its coefficient vector of
length exactly n, i.e. as a class modulo X^{q^n} - X, which is all that
matters for the induced map on F_{q^n}.  Binomials x^{q^I} + alpha x^{q^J}
get their own lightweight type plus a canonicalization that records which
scatteredness-preserving transforms were applied.
"""

from __future__ import annotations

import math
import re
from typing import Optional, Sequence

from .errors import CtxMismatch, DegenerateBinomial, ZeroInput
from .field import FieldCtx


class LinearizedPoly:
    """sum(a_i X^{q^i}) for i < n, acting F_q-linearly on F_{q^n}."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence[int]):
        if len(coeffs) != ctx.n:
            raise ValueError(f"need exactly n={ctx.n} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    def __repr__(self) -> str:
        terms = [f"({c})X^q^{i}" for i, c in enumerate(self.coeffs) if c]
        return "LinearizedPoly(" + (" + ".join(terms) or "0") + ")"

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearizedPoly)
                and self.ctx.signature == other.ctx.signature
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ctx.signature, self.coeffs))

    def evaluate(self, x: int) -> int:
        ctx = self.ctx
        out = 0
        for i, a in enumerate(self.coeffs):
            if a:
                out = ctx.add(out, ctx.mul(a, ctx.frobenius(x, i)))
        return out

    __call__ = evaluate

    def adjoint(self) -> "LinearizedPoly":
        """The map g with Tr(f(x) y) = Tr(x g(y)); coefficient k is a_{n-k}^{q^k}."""
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for k in range(n):
            a = self.coeffs[(n - k) % n]
            out[k] = ctx.frobenius(a, k)
        return LinearizedPoly(ctx, out)

    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        """self after other, reduced modulo X^{q^n} - X."""
        ctx = self.ctx
        if ctx.signature != other.ctx.signature:
            raise CtxMismatch("polynomials live over different fields")
        n = ctx.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(a, ctx.frobenius(b, i)))
        return LinearizedPoly(ctx, out)

    def kernel_dim(self) -> int:
        """dim over F_q of the kernel of the induced map on F_{q^n}.

        Works with the matrix of the map in the normal basis xi^{q^i}: its rank
        equals the rank of the F_q-valued pairing table Tr(xi^{q^i} f(xi^{q^j}))
        because the basis Gram matrix is invertible.
        """
        ctx = self.ctx
        n = ctx.n
        xi = ctx.find_normal_element()
        basis = [ctx.frobenius(xi, i) for i in range(n)]
        images = [self.evaluate(b) for b in basis]
        rows = [[ctx.trace(ctx.mul(basis[i], images[j])) for j in range(n)] for i in range(n)]
        return n - _rank_fq(ctx, rows)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _rank_fq(ctx: FieldCtx, rows: list[list[int]]) -> int:
    # Gaussian elimination; all entries lie in F_q, and F_q is closed under
    # the ops used, so packed full-field arithmetic is safe here
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    rows = [r[:] for r in rows]
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class Binomial:
    """x^{q^I} + alpha x^{q^J} over a fixed context.

    The normalized flag reports the strict shape 0 < I < J < n with
    gcd(I, J, n) = 1 and I not in {J, n - J}; constructions that fall outside
    it are still usable wherever an operation documents weaker requirements.
    """

    __slots__ = ("ctx", "I", "J", "alpha", "normalized")

    def __init__(self, ctx: FieldCtx, I: int, J: int, alpha: int):
        if (I - J) % ctx.n == 0:
            raise DegenerateBinomial(f"exponents {I} and {J} coincide mod n={ctx.n}")
        if alpha == 0:
            raise ZeroInput("binomial coefficient must be nonzero")
        self.ctx = ctx
        self.I = I
        self.J = J
        self.alpha = alpha
        n = ctx.n
        self.normalized = (0 < I < J < n and math.gcd(I, J, n) == 1
                           and I != J and I != (n - J) % n)

    @property
    def n(self) -> int:
        return self.ctx.n

    def __repr__(self) -> str:
        return f"Binomial(I={self.I}, J={self.J}, alpha={self.alpha}, n={self.n})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Binomial) and self.ctx.signature == other.ctx.signature
                and (self.I, self.J, self.alpha) == (other.I, other.J, other.alpha))

    def __hash__(self) -> int:
        return hash((self.ctx.signature, self.I, self.J, self.alpha))

    def evaluate(self, x: int) -> int:
        ctx = self.ctx
        return ctx.add(ctx.frobenius(x, self.I), ctx.mul(self.alpha, ctx.frobenius(x, self.J)))

    __call__ = evaluate

    def to_poly(self) -> LinearizedPoly:
        coeffs = [0] * self.n
        coeffs[self.I % self.n] = 1
        coeffs[self.J % self.n] = self.alpha
        return LinearizedPoly(self.ctx, coeffs)

    def adjoint(self) -> "Binomial":
        """x^{q^{n-I}} + alpha^{q^{n-J}} x^{q^{n-J}}; preserves scatteredness."""
        ctx, n = self.ctx, self.n
        return Binomial(ctx, (n - self.I) % n, (n - self.J) % n,
                        ctx.frobenius(self.alpha, (n - self.J) % n))


def normalize_binomial(ctx: FieldCtx, I: int, J: int, alpha: int) -> tuple[Binomial, tuple[str, ...]]:
    """Canonical representative with I < J and I < n/2 (and I <= n/4 when
    J - I = n/2), reached through scatteredness-preserving transforms.

    Returns the binomial together with the list of transforms applied: "swap"
    divides by alpha and reorders the terms, "adjoint" replaces f by its
    adjoint.  Raises DegenerateBinomial when the exponents coincide mod n.
    """
    n = ctx.n
    I %= n
    J %= n
    if I == J:
        raise DegenerateBinomial(f"exponents coincide mod n={n}")
    if I == 0 or J == 0:
        raise DegenerateBinomial("exponent 0 gives a term linear over F_{q^n}, not handled")
    if alpha == 0:
        raise ZeroInput("binomial coefficient must be nonzero")
    note: list[str] = []
    if I > J:
        # x^{q^I} + a x^{q^J} = a (a^{-1} x^{q^I} + x^{q^J}), same linear set
        I, J, alpha = J, I, ctx.inv(alpha)
        note.append("swap")
    if 2 * I >= n:
        # then J > n/2 too, so the adjoint lands at I' = n - J < n/2.  The
        # adjoint itself is x^{q^{n-I}} + alpha^{q^{n-J}} x^{q^{n-J}}: its unit
        # coefficient sits on the high exponent, so rewriting back to the
        # unit-low shape divides by the coefficient, hence the inversion.
        I, J, alpha = n - J, n - I, ctx.inv(ctx.frobenius(alpha, n - J))
        note.append("adjoint")
    if n % 2 == 0 and (J - I) % n == n // 2 and 4 * I > n:
        # half-spread shape: push I below n/4; fixed point when 4I = n
        I, J, alpha = n - J, n - I, ctx.inv(ctx.frobenius(alpha, n - J))
        note.append("adjoint")
    return Binomial(ctx, I, J, alpha), tuple(note)


# -- textual element / binomial format (CLI round-trip) ----------------------

_BINOMIAL_RE = re.compile(r"^x\^q\^(\d+) \+ \(([0-9a-fA-F]+)\) x\^q\^(\d+)$")


def format_element(ctx: FieldCtx, x: int) -> str:
    """Fixed-width little-endian base-p digit string, one hex char per digit."""
    if not 0 <= x < ctx.size:
        raise ValueError(f"element {x} out of range for field of size {ctx.size}")
    return "".join(format(d, "x") for d in ctx.coeffs(x))


def parse_element(ctx: FieldCtx, s: str) -> int:
    digits = [int(ch, 16) for ch in s.strip()]
    if len(digits) > ctx.d or any(d >= ctx.p for d in digits):
        raise ValueError(f"{s!r} is not a base-{ctx.p} digit string of length <= {ctx.d}")
    return ctx.from_coeffs(digits)


def format_binomial(b: Binomial) -> str:
    return f"x^q^{b.I} + ({format_element(b.ctx, b.alpha)}) x^q^{b.J}"


def parse_binomial(ctx: FieldCtx, s: str) -> Binomial:
    m = _BINOMIAL_RE.match(s.strip())
    if not m:
        raise ValueError(f"cannot parse binomial from {s!r}")
    return Binomial(ctx, int(m.group(1)), int(m.group(3)), parse_element(ctx, m.group(2)))


# free-function aliases


def evaluate(f: LinearizedPoly, x: int) -> int:
    return f.evaluate(x)


def adjoint(f: LinearizedPoly) -> LinearizedPoly:
    return f.adjoint()


def compose(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    return f.compose(g)


def kernel_dim(f: LinearizedPoly) -> int:
    return f.kernel_dim()
