"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are represented by their unique reduced form: a rational-coefficient
polynomial in z = zeta_N of degree < phi(N), reduced modulo the N-th
cyclotomic polynomial.  All arithmetic is exact (``fractions.Fraction``
coefficients); nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _poly_divmod(num, den):
    """Exact division with remainder of rational coefficient lists (low-to-high)."""
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    dlead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / dlead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, low-to-high, as Fractions."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    # x^n - 1 divided by the product of Phi_d for proper divisors d of n
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    return tuple(poly)


class CyclotomicField:
    """Q(zeta_N) with a fixed cyclotomic order N for the whole session."""

    def __init__(self, order=1):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1  # = phi(order)
        # reduction table: z^k for k in [degree, 2*degree-2] as reduced vectors
        self._reduction = []
        if self.degree > 0:
            prev = [-c for c in self.modulus[:-1]]  # z^degree
            self._reduction.append(list(prev))
            for _ in range(self.degree - 2):
                nxt = [Fraction(0)] + prev[:-1]
                top = prev[-1]
                if top:
                    for i in range(self.degree):
                        nxt[i] += top * self._reduction[0][i]
                self._reduction.append(nxt)
                prev = nxt

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("CyclotomicField", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"

    def scalar(self, value):
        """Coerce an int, Fraction, or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise ValueError("scalar belongs to a different cyclotomic field")
            return value
        coeffs = [Fraction(0)] * self.degree
        if self.degree > 0:
            coeffs[0] = Fraction(value)
        elif value != 0:
            raise ValueError("degenerate field")
        return Scalar(self, tuple(coeffs))

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zeta(self):
        """The root of unity zeta_N (of multiplicative order exactly N)."""
        coeffs = [Fraction(0)] * self.degree
        if self.degree >= 2:
            coeffs[1] = Fraction(1)
        else:
            # N in {1, 2}: zeta is rational
            coeffs[0] = Fraction(1) if self.order == 1 else Fraction(-1)
        return Scalar(self, tuple(coeffs))

    def zeta_power(self, k):
        return self.zeta ** (k % self.order)

    def _reduce(self, coeffs):
        """Reduce a coefficient list of length <= 2*degree-1 mod the modulus."""
        d = self.degree
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self._reduction[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return Scalar(self, tuple(out))

    def from_coeffs(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            return self._reduce(coeffs)
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return Scalar(self, tuple(coeffs))

    def parse(self, text):
        """Inverse of ``str(scalar)``: reads "a0 + a1*z + a2*z^2 + ...". """
        text = text.strip()
        if not text:
            raise ValueError("empty scalar literal")
        # normalize "- " into "+ -"
        tokens = text.replace("- ", "+ -").split("+")
        coeffs = [Fraction(0)] * max(self.degree, 1)
        for tok in tokens:
            tok = tok.strip()
            if not tok:
                continue
            if "z" in tok:
                head, _, tail = tok.partition("z")
                head = head.strip().rstrip("*").strip()
                if head in ("", "-"):
                    coeff = Fraction(-1 if head == "-" else 1)
                else:
                    coeff = Fraction(head)
                tail = tail.strip()
                power = int(tail.lstrip("^")) if tail else 1
            else:
                coeff = Fraction(tok)
                power = 0
            if power >= len(coeffs):
                coeffs += [Fraction(0)] * (power + 1 - len(coeffs))
            coeffs[power] += coeff
        return self.from_coeffs(coeffs)


class Scalar:
    """An element of Q(zeta_N), always in reduced form.  Immutable."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational scalar")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (2 * len(a) - 1) if a else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm
        against the cyclotomic modulus."""
        if not self:
            raise ZeroDivisionError("division by zero")
        if self.is_rational():
            return self.field.scalar(1 / self.coeffs[0])
        # extended Euclid in Q[z] for gcd(self, modulus) = 1
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]  # Bezout coefficients for the element
        while r1:
            q, r = _poly_divmod(r0, r1)
            # s_new = s0 - q*s1
            s_new = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s_new[i + j] -= qi * sj
            while s_new and s_new[-1] == 0:
                s_new.pop()
            r0, r1, s0, s1 = r1, r, s1, s_new
        # r0 = gcd (a nonzero constant since the modulus is irreducible over Q)
        if len(r0) != 1:
            raise ArithmeticError("element not invertible; modulus not coprime")
        c = r0[0]
        return self.field.from_coeffs([si / c for si in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.scalar(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Scalar({self}, N={self.field.order})"
