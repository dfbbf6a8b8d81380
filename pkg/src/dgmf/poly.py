"""Multivariate polynomials over Q(zeta_N) with R-charge weights.

A PolyRing fixes the variable names and their (positive integer) weights; a
Poly is a finitely supported map from exponent tuples to nonzero Scalars.
The weight of a monomial is the weighted degree sum; quasihomogeneity checks
and weight-graded enumeration live here because every module above relies on
them.
"""

from __future__ import annotations

from fractions import Fraction


class PolyRing:
    """Polynomial ring over a cyclotomic field, with named weighted variables."""

    def __init__(self, field, names, weights=None):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if weights is None:
            weights = [1] * len(names)
        weights = [int(w) for w in weights]
        if any(w <= 0 for w in weights):
            raise ValueError("R-charge weights must be positive integers")
        if len(weights) != len(names):
            raise ValueError("one weight per variable")
        self.field = field
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.nvars = len(names)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.field == self.field
                and other.names == self.names and other.weights == self.weights)

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def __repr__(self):
        vs = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"PolyRing(N={self.field.order}; {vs})"

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, value):
        c = self.field.scalar(value) if not hasattr(value, "field") else value
        if not c:
            return self.zero
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name):
        i = self.names.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly(self, {tuple(exps): self.field.one})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial_weight(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def monomials_of_weight(self, target):
        """All exponent tuples of exact weighted degree ``target`` (finite since
        all weights are positive), in lexicographic order."""
        out = []

        def rec(i, remaining, prefix):
            if i == self.nvars:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            w = self.weights[i]
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + [e])

        if target < 0:
            return []
        rec(0, target, [])
        return sorted(out)

    def parse(self, text):
        """Reads the textual polynomial format ``coeff*x^e*y^f + ...``.

        Coefficients may be parenthesised scalar literals, e.g. ``(1 + z)*x^2``.
        """
        text = text.strip()
        if text in ("0", ""):
            return self.zero
        result = self.zero
        for term in _split_terms(text):
            result = result + self._parse_term(term)
        return result

    def _parse_term(self, term):
        term = term.strip()
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        coeff = self.field.one
        exps = [0] * self.nvars
        for factor in _split_factors(term):
            factor = factor.strip()
            if not factor:
                continue
            if factor.startswith("("):
                coeff = coeff * self.field.parse(factor[1:-1])
            else:
                base, _, power = factor.partition("^")
                base = base.strip()
                if base in self.names:
                    exps[self.names.index(base)] += int(power) if power else 1
                elif base == "z":
                    coeff = coeff * self.field.zeta ** (int(power) if power else 1)
                else:
                    coeff = coeff * self.field.scalar(Fraction(base))
                    if power:
                        raise ValueError(f"unexpected power on constant: {factor}")
        coeff = coeff * sign
        if not coeff:
            return self.zero
        return Poly(self, {tuple(exps): coeff})


def _split_terms(text):
    """Split on top-level + and - (keeping the sign with the term)."""
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("^", "*", "+", "-")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def _split_factors(term):
    factors, depth, cur = [], 0, ""
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        factors.append(cur)
    return factors


class Poly:
    """Immutable multivariate polynomial; no zero coefficients are stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basics -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "coeffs"):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "coeffs"):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, self.ring.field.zero) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        zero = self.ring.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, zero) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure --------------------------------------------------------

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        zero_exp = (0,) * self.ring.nvars
        return self.terms.get(zero_exp, self.ring.field.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def weight(self):
        """Weighted degree if quasihomogeneous.

        Returns ("zero", None) for 0, (d, None) when homogeneous of weight d,
        and ("inhomogeneous", offending) otherwise, where ``offending`` lists
        exponent tuples whose weight differs from the first term's.
        """
        if not self.terms:
            return ("zero", None)
        weights = {e: self.ring.monomial_weight(e) for e in self.terms}
        first = min(weights.values())
        offending = sorted(e for e, w in weights.items() if w != first)
        if offending:
            return ("inhomogeneous", offending)
        return (first, None)

    def is_quasihomogeneous_of(self, d):
        w, _ = self.weight()
        return w == "zero" or w == d

    def derivative(self, var):
        i = self.ring.names.index(var) if isinstance(var, str) else var
        terms = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = list(e)
                e2[i] -= 1
                terms[tuple(e2)] = c * e[i]
        return Poly(self.ring, terms)

    def evaluate(self, point):
        """Evaluate at a tuple of Scalars (or ints/Fractions)."""
        field = self.ring.field
        point = [field.scalar(p) if not isinstance(p, type(field.zero)) else p for p in point]
        if len(point) != self.ring.nvars:
            raise ValueError("point dimension mismatch")
        total = field.zero
        for e, c in self.terms.items():
            val = c
            for p, exp in zip(point, e):
                if exp:
                    val = val * p ** exp
            total = total + val
        return total

    def substitute(self, images):
        """Substitute each variable by the given Poly (in any ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable")
        target = images[0].ring if images else self.ring
        result = target.zero
        for e, c in self.terms.items():
            term = target.constant(c)
            for img, exp in zip(images, e):
                if exp:
                    term = term * img ** exp
            result = result + term
        return result

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        return Poly(ring, {e: fn(c) for e, c in self.terms.items()})

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            c = self.terms[e]
            factors = []
            for name, exp in zip(self.ring.names, e):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            cs = str(c)
            needs_parens = (" " in cs) or ("z" in cs and factors)
            if not factors:
                parts.append(f"({cs})" if " " in cs else cs)
            elif c == self.ring.field.one:
                parts.append("*".join(factors))
            else:
                cs = f"({cs})" if needs_parens else cs
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"
