"""Univariate exact machinery: polynomials and rational functions over
Q(zeta_N), Laurent expansions and residues (including at infinity), and
homology of matrices over the principal ideal domain k[t].

Residues are the workhorse of the log-differential model on P^1: sections of
omega^log and its twists are stored as rational 1-forms f(t) dt and their
residues are read off from exact Laurent expansions, never from the residue
theorem itself (which is what the tests are checking).
"""

from __future__ import annotations

from itertools import combinations


class UPoly:
    """Univariate polynomial over a cyclotomic field; coeffs low-to-high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, field, value):
        return cls(field, [field.scalar(value) if not hasattr(value, "coeffs") else value])

    @classmethod
    def gen(cls, field):
        return cls(field, [field.zero, field.one])

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UPoly) and other.coeffs == self.coeffs and other.field == self.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UPoly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if not self or not other:
            return UPoly(self.field, [])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        dlead = other.coeffs[-1].inverse()
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[i + len(other.coeffs) - 1] * dlead
            q[i] = c
            if c:
                for j, dj in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * dj
        return UPoly(self.field, q), UPoly(self.field, rem)

    def monic(self):
        if not self:
            return self
        inv = self.coeffs[-1].inverse()
        return UPoly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def evaluate(self, point):
        total = self.field.zero
        for c in reversed(self.coeffs):
            total = total * point + c
        return total

    def shift(self, a):
        """Compose with t -> t + a (Taylor recentering at a)."""
        result = UPoly(self.field, [])
        t_plus_a = UPoly(self.field, [a, self.field.one])
        power = UPoly.constant(self.field, 1)
        for c in self.coeffs:
            result = result + power * c
            power = power * t_plus_a
        return result

    def valuation(self):
        """Order of vanishing at 0 (number of leading zero coefficients)."""
        if not self:
            raise ValueError("valuation of zero polynomial")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def reversed_coeffs(self, length=None):
        n = length if length is not None else len(self.coeffs)
        z = self.field.zero
        padded = list(self.coeffs) + [z] * (n - len(self.coeffs))
        return UPoly(self.field, list(reversed(padded)))

    def derivative(self):
        return UPoly(self.field, [c * (i + 1) for i, c in enumerate(self.coeffs[1:])])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                cs = str(c)
                cs = f"({cs})" if " " in cs else cs
                parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)

    __repr__ = __str__


def _series_inverse(field, coeffs, length):
    """Inverse of a power series with nonzero constant term, to ``length`` terms."""
    inv0 = coeffs[0].inverse()
    out = [inv0]
    for n in range(1, length):
        acc = field.zero
        for k in range(1, min(n, len(coeffs) - 1) + 1):
            acc = acc + coeffs[k] * out[n - k]
        out.append(-inv0 * acc)
    return out


class RationalFunction:
    """num/den over Q(zeta_N); exact Laurent expansions at any point."""

    def __init__(self, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if num else den.monic()
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.coeffs[-1].inverse()
        self.num = UPoly(num.field, [c * lead for c in num.coeffs])
        self.den = den.monic()
        self.field = num.field

    @classmethod
    def from_poly(cls, p):
        return cls(p, UPoly.constant(p.field, 1))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.from_poly(UPoly.constant(self.field, other))
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalFunction)
                       else RationalFunction.from_poly(UPoly.constant(self.field, -other)))

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.from_poly(UPoly.constant(self.field, other))
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.from_poly(UPoly.constant(self.field, other))
        return RationalFunction(self.num * other.den, self.den * other.num)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate(point) * d.inverse()

    def pole_order(self, point):
        """Order of the pole at a finite point (0 if regular there)."""
        if not self.num:
            return 0
        den = self.den.shift(point)
        num = self.num.shift(point)
        return max(den.valuation() - num.valuation(), 0)

    def laurent_coefficient(self, point, k):
        """Coefficient of (t - point)^k in the Laurent expansion at ``point``."""
        if not self.num:
            return self.field.zero
        num = self.num.shift(point)
        den = self.den.shift(point)
        vd = den.valuation()
        vn = num.valuation()
        # f = (t^vn * nu) / (t^vd * de) with nu(0), de(0) != 0
        shift = vn - vd
        idx = k - shift
        if idx < 0:
            return self.field.zero
        nu = list(num.coeffs[vn:])
        de = list(den.coeffs[vd:])
        inv = _series_inverse(self.field, de, idx + 1)
        total = self.field.zero
        for i in range(idx + 1):
            if i < len(nu):
                total = total + nu[i] * inv[idx - i]
        return total

    def residue(self, point):
        """Residue at a finite point of the 1-form ``self * dt``."""
        return self.laurent_coefficient(point, -1)

    def residue_at_infinity(self):
        """Residue at infinity of ``self * dt``: substitute t = 1/s."""
        if not self.num:
            return self.field.zero
        # f(1/s) dt = -s^(deg den - deg num - 2) * num~(s)/den~(s) ds
        dn, dd = self.num.degree(), self.den.degree()
        num_rev = self.num.reversed_coeffs()
        den_rev = self.den.reversed_coeffs()
        shift = dd - dn - 2
        t = UPoly.gen(self.field)
        if shift >= 0:
            g = RationalFunction(-(t ** shift) * num_rev, den_rev)
        else:
            g = RationalFunction(-num_rev, (t ** (-shift)) * den_rev)
        return g.residue(self.field.zero)

    def finite_poles(self, candidates):
        return [p for p in candidates if self.pole_order(p) > 0]

    def __str__(self):
        return f"({self.num})/({self.den})" if self.den.degree() > 0 else str(self.num)

    __repr__ = __str__


# -- homology of matrices over k[t] --------------------------------------


def poly_mat_rank(matrix):
    """Rank over the fraction field k(t): largest r with a nonzero r x r minor."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    for r in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), r):
            for ci in combinations(range(cols), r):
                if _poly_det([[matrix[i][j] for j in ci] for i in ri]):
                    return r
    return 0


def _poly_det(m):
    n = len(m)
    if n == 0:
        return None
    field = m[0][0].field
    if n == 1:
        return m[0][0]
    total = UPoly(field, [])
    for j, entry in enumerate(m[0]):
        if entry:
            minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
            term = entry * _poly_det(minor)
            total = total + (term if j % 2 == 0 else -term)
    return total


def _minor_gcd(matrix, r):
    """Monic gcd of all r x r minors (the r-th determinantal divisor)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    field = matrix[0][0].field if rows else None
    g = UPoly(field, [])
    for ri in combinations(range(rows), r):
        for ci in combinations(range(cols), r):
            d = _poly_det([[matrix[i][j] for j in ci] for i in ri])
            if d:
                g = g.gcd(d) if g else d.monic()
                if g.degree() == 0:
                    return g
    return g


def two_periodic_homology_dims(delta0, delta1):
    """k-dimensions (dim H^0, dim H^1) of the 2-periodic complex of free
    k[t]-modules P0 --delta0--> P1 --delta1--> P0, assuming delta composites
    vanish.  Returns None for a homology that is not finite-dimensional.

    Uses determinantal divisors: when ranks are complementary, the torsion of
    the cokernel is the homology, and its length is the degree of the maximal
    determinantal divisor.
    """
    n0 = len(delta0[0]) if delta0 and delta0[0] else (len(delta1) if delta1 else 0)
    n1 = len(delta1[0]) if delta1 and delta1[0] else (len(delta0) if delta0 else 0)
    r0 = poly_mat_rank(delta0) if delta0 and delta0[0] else 0
    r1 = poly_mat_rank(delta1) if delta1 and delta1[0] else 0
    h0 = None
    h1 = None
    if r0 + r1 == n0:
        h0 = _minor_gcd(delta1, r1).degree() if r1 > 0 else 0
    if r0 + r1 == n1:
        h1 = _minor_gcd(delta0, r0).degree() if r0 > 0 else 0
    return (h0, h1)
