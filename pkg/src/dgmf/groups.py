"""Finite symmetry groups acting on the variables of a weighted polynomial ring."""

from __future__ import annotations

from . import linalg


class GroupElement:
    """An invertible matrix of Scalars of finite multiplicative order.

    The matrix acts on the vector space V whose coordinates are the ring
    variables; the induced action on polynomials is by linear substitution
    (contragredient bookkeeping so that act(gh, p) = act(g, act(h, p))).
    """

    def __init__(self, ring, matrix, max_order=None):
        field = ring.field
        n = ring.nvars
        matrix = [[field.scalar(c) if not hasattr(c, "coeffs") else c for c in row]
                  for row in matrix]
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(f"matrix must be {n}x{n} to act on {ring!r}")
        self.ring = ring
        self.matrix = matrix
        bound = max_order if max_order is not None else 4 * max(field.order, 1)
        self.order = self._compute_order(bound)
        if not self._commutes_with_r_charge():
            raise ValueError("group element does not commute with the R-charge action")

    def _compute_order(self, bound):
        field = self.ring.field
        ident = linalg.identity(field, self.ring.nvars)
        power = self.matrix
        for k in range(1, bound + 1):
            if linalg.mat_eq(power, ident):
                return k
            power = linalg.mat_mul(power, self.matrix, field)
        raise ValueError(f"matrix has no multiplicative order <= {bound}; "
                         "not finite order or bound too small")

    def _commutes_with_r_charge(self):
        # commuting with diag(t^{w_i}) for all t forces zero entries between
        # variables of different weight
        w = self.ring.weights
        for i, row in enumerate(self.matrix):
            for j, c in enumerate(row):
                if c and w[i] != w[j]:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and other.ring == self.ring
                and linalg.mat_eq(other.matrix, self.matrix))

    def __hash__(self):
        return hash((self.ring, tuple(tuple(row) for row in self.matrix)))

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return GroupElement(self.ring,
                            linalg.mat_mul(self.matrix, other.matrix, self.ring.field))

    def inverse(self):
        return GroupElement(self.ring, linalg.invert(self.matrix, self.ring.field))

    def __pow__(self, k):
        k %= self.order
        result = GroupElement.identity(self.ring)
        for _ in range(k):
            result = result * self
        return result

    @classmethod
    def identity(cls, ring):
        return cls(ring, linalg.identity(ring.field, ring.nvars))

    @classmethod
    def diagonal(cls, ring, entries):
        field = ring.field
        m = linalg.zeros(field, ring.nvars, ring.nvars)
        for i, e in enumerate(entries):
            m[i][i] = field.scalar(e) if not hasattr(e, "coeffs") else e
        return cls(ring, m)

    def is_diagonal(self):
        return all(not c for i, row in enumerate(self.matrix)
                   for j, c in enumerate(row) if i != j)

    def diagonal_entries(self):
        return [row[i] for i, row in enumerate(self.matrix)]

    def commutes_with(self, other):
        f = self.ring.field
        ab = linalg.mat_mul(self.matrix, other.matrix, f)
        ba = linalg.mat_mul(other.matrix, self.matrix, f)
        return linalg.mat_eq(ab, ba)

    def commutator_witness(self, other):
        """First (i, j, gh_ij, hg_ij) where gh and hg differ, else None."""
        f = self.ring.field
        ab = linalg.mat_mul(self.matrix, other.matrix, f)
        ba = linalg.mat_mul(other.matrix, self.matrix, f)
        for i in range(len(ab)):
            for j in range(len(ab)):
                if ab[i][j] != ba[i][j]:
                    return (i, j, ab[i][j], ba[i][j])
        return None

    def act(self, p):
        """Linear substitution action on a polynomial of the same ring."""
        if p.ring != self.ring:
            raise ValueError("polynomial ring does not match the group element")
        gens = self.ring.gens()
        images = []
        for i in range(self.ring.nvars):
            img = self.ring.zero
            for j in range(self.ring.nvars):
                c = self.matrix[j][i]
                if c:
                    img = img + c * gens[j]
            images.append(img)
        return p.substitute(images)

    def fixed_subspace(self):
        """Basis of V^g = ker(g - id), as column vectors of Scalars."""
        f = self.ring.field
        n = self.ring.nvars
        m = [[self.matrix[i][j] - (f.one if i == j else f.zero) for j in range(n)]
             for i in range(n)]
        return linalg.nullspace(m, f)

    def apply_vector(self, vec):
        """Matrix-vector action on a fiber vector of Scalars."""
        f = self.ring.field
        return [sum((self.matrix[i][j] * vec[j] for j in range(len(vec))), f.zero)
                for i in range(len(vec))]

    def __repr__(self):
        rows = "; ".join(", ".join(str(c) for c in row) for row in self.matrix)
        return f"GroupElement([{rows}], order={self.order})"


def act(g, p):
    return g.act(p)


def is_invariant(p, generators):
    return all(g.act(p) == p for g in generators)
