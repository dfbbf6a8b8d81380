"""Sheaves on a pair (X, Y) at finite-model level.

An object is a triple (F_alpha, F_beta, phi) with F_alpha a complex over the
closed piece Y, F_beta a complex over X, and phi: F_beta -> iota_* F_alpha a
chain map.  At desk scale both complexes live over the same coefficient ring
and iota_* is the identity on underlying modules, so phi is just a chain map
between the two complexes.

Rj^! is implemented directly by the cone formula Cone(phi)[-1]; the acyclic
resolution that motivates it is kept around as a test oracle
(``canonical_resolution``).
"""

from __future__ import annotations

from . import linalg
from .complexes import (ChainMap, FreeComplex, cone, homology_ranks,
                        tensor, triangle_les_exact)


class PairObject:
    def __init__(self, f_alpha, f_beta, phi=None):
        if f_alpha.ring != f_beta.ring:
            raise ValueError("pair components over different rings")
        self.f_alpha = f_alpha
        self.f_beta = f_beta
        self.phi = phi if phi is not None else ChainMap.zero(f_beta, f_alpha)
        if self.phi.source is not f_beta or self.phi.target is not f_alpha:
            if self.phi.source != f_beta or self.phi.target != f_alpha:
                raise ValueError("phi must map F_beta to iota_* F_alpha")

    @property
    def ring(self):
        return self.f_beta.ring

    def __eq__(self, other):
        if not isinstance(other, PairObject):
            return False
        if self.f_alpha != other.f_alpha or self.f_beta != other.f_beta:
            return False
        for n in set(self.f_beta.degrees()) | set(self.f_alpha.degrees()):
            if self.phi.component(n) != other.phi.component(n):
                return False
        return True


def unit_pair(ring):
    """(O_Y, O_X, restriction): the monoidal unit."""
    a = FreeComplex.single(ring)
    b = FreeComplex.single(ring)
    phi = ChainMap(b, a, {0: [[ring.one]]})
    return PairObject(a, b, phi)


def j_lower_shriek(g):
    """Extension by zero: (0, G, 0)."""
    return PairObject(FreeComplex.zero_complex(g.ring), g)


def rj_shriek(p):
    """Rj^!(F_alpha, F_beta, phi) = Cone(phi)[-1]."""
    return cone(p.phi).shift(-1)


def rj_shriek_triangle_exact(p):
    """The long exact sequence of Rj^! P -> F_beta -> iota_* F_alpha,
    verified on homology over a point base."""
    return triangle_les_exact(p.phi)


def pair_tensor(p, q):
    """Componentwise graded tensor with the product comparison map."""
    if p.ring != q.ring:
        raise ValueError("pair tensor over different rings")
    fa = tensor(p.f_alpha, q.f_alpha)
    fb = tensor(p.f_beta, q.f_beta)
    comps = {}
    # phi (x) phi on the lexicographically ordered tensor basis
    for n in fb.degrees():
        rows = []
        tgt_index = _tensor_index(p.f_alpha, q.f_alpha)
        src_index = _tensor_index(p.f_beta, q.f_beta)
        mat = [[p.ring.zero] * fb.rank(n) for _ in range(fa.rank(n))]
        for (n1, i, m1, j), (deg_s, col) in src_index.items():
            if deg_s != n:
                continue
            pc = p.phi.component(n1)
            qc = q.phi.component(m1)
            for i2 in range(p.f_alpha.rank(n1)):
                if not pc or not pc[i2][i]:
                    continue
                for j2 in range(q.f_alpha.rank(m1)):
                    if not qc or not qc[j2][j]:
                        continue
                    deg_t, row = tgt_index[(n1, i2, m1, j2)]
                    assert deg_t == n
                    mat[row][col] = mat[row][col] + pc[i2][i] * qc[j2][j]
        comps[n] = mat
        del rows
    return PairObject(fa, fb, ChainMap(fb, fa, comps))


def _tensor_index(C, D):
    index = {}
    counters = {}
    for n in C.degrees():
        for m in D.degrees():
            deg = n + m
            for i in range(C.rank(n)):
                for j in range(D.rank(m)):
                    pos = counters.get(deg, 0)
                    counters[deg] = pos + 1
                    index[(n, i, m, j)] = (deg, pos)
    return index


def canonical_resolution(p):
    """The acyclic resolution 0 -> P -> (F_a, F_b (+) iota_* F_a) -> (0, iota_* F_a) -> 0.

    Returns (middle, quotient); the middle object has surjective comparison map.
    Kept as the test oracle for the cone formula of Rj^!.
    """
    ring = p.ring
    middle_beta = p.f_beta.direct_sum(p.f_alpha)
    comps = {}
    for n in middle_beta.degrees():
        mat = [[ring.zero] * middle_beta.rank(n) for _ in range(p.f_alpha.rank(n))]
        pc = p.phi.component(n)
        for i in range(p.f_alpha.rank(n)):
            for j in range(p.f_beta.rank(n)):
                mat[i][j] = pc[i][j] if pc else ring.zero
            mat[i][p.f_beta.rank(n) + i] = ring.one
        if mat:
            comps[n] = mat
    middle = PairObject(p.f_alpha, middle_beta, ChainMap(middle_beta, p.f_alpha, comps))
    quotient = PairObject(FreeComplex.zero_complex(ring), p.f_alpha)
    return middle, quotient


# -- morphisms of pairs ----------------------------------------------------


class PairMorphism:
    """One of the two supported desk-scale morphism shapes.

    * identity;
    * "affine": a finite/affine map of models given by restriction of scalars,
      encoded by invertible degreewise transport matrices for each component
      (ranks are preserved).

    The projection (P^1, Sigma) -> (pt, pt) is the third supported shape; it
    is driven by the divisor models of the spin-curve layer, which hands the
    already-pushed objects to ``pushforward_log_pair``.
    """

    def __init__(self, kind, transport_alpha=None, transport_beta=None):
        if kind not in ("identity", "affine"):
            raise ValueError(
                "unsupported morphism shape; supported: identity, affine "
                "(finite map by restriction of scalars), and the P^1 projection "
                "via the spin-curve module")
        self.kind = kind
        self.transport_alpha = transport_alpha or {}
        self.transport_beta = transport_beta or {}


def _transport_complex(c, transports):
    field = c.ring.field
    objects = {n: list(c.gens(n)) for n in c.degrees()}
    diffs = {}
    for n in c.degrees():
        if c.rank(n + 1) == 0 or c.rank(n) == 0:
            continue
        t_next = transports.get(n + 1, linalg.identity(field, c.rank(n + 1)))
        t_here = transports.get(n, linalg.identity(field, c.rank(n)))
        d = [[entry.constant_value() for entry in row] for row in c.diff(n)]
        new = linalg.mat_mul(linalg.mat_mul(t_next, d, field),
                             linalg.invert(t_here, field), field)
        diffs[n] = [[c.ring.constant(e) for e in row] for row in new]
    return FreeComplex(c.ring, objects, diffs, weight_check=False)


def pair_pushforward(f, p):
    """Derived pushforward along a supported morphism of pairs."""
    if f.kind == "identity":
        return p
    ring = p.ring
    if ring.nvars != 0:
        raise ValueError("affine transport pushforward requires a point base")
    field = ring.field
    fa = _transport_complex(p.f_alpha, f.transport_alpha)
    fb = _transport_complex(p.f_beta, f.transport_beta)
    comps = {}
    for n in fb.degrees():
        if p.f_alpha.rank(n) == 0:
            continue
        ta = f.transport_alpha.get(n, linalg.identity(field, p.f_alpha.rank(n)))
        tb = f.transport_beta.get(n, linalg.identity(field, p.f_beta.rank(n)))
        phi_n = [[e.constant_value() for e in row] for row in p.phi.component(n)]
        new = linalg.mat_mul(linalg.mat_mul(ta, phi_n, field),
                             linalg.invert(tb, field), field)
        comps[n] = [[ring.constant(e) for e in row] for row in new]
    return PairObject(fa, fb, ChainMap(fb, fa, comps))


def push_complex(f, c):
    """Pushforward of a bare complex along the same morphism shapes."""
    if f.kind == "identity":
        return c
    # for a bare complex only the beta transports apply
    return _transport_complex(c, f.transport_beta)


def check_commutation(f, p):
    """Certificate that Rj^! Rf_* (P) and Rf_* Rj^! (P) agree.

    Computes both sides independently and compares homology ranks over the
    point base; returns (bool, dict of both rank maps).
    """
    if isinstance(f, PairMorphism):
        left = rj_shriek(pair_pushforward(f, p))
        right = _pushforward_of_rj(f, p)
        hl = homology_ranks(left)
        hr = homology_ranks(right)
        degs = set(hl) | set(hr)
        ok = all(hl.get(n, 0) == hr.get(n, 0) for n in degs)
        return ok, {"rj_then_push": hr, "push_then_rj": hl}
    raise ValueError("unsupported morphism; see PairMorphism")


def _pushforward_of_rj(f, p):
    if f.kind == "identity":
        return rj_shriek(p)
    # blockwise transport of Cone(phi)[-1]
    field = p.ring.field
    c = rj_shriek(p)
    transports = {}
    for n in c.degrees():
        # degree n of Cone(phi)[-1] is F_alpha^{n-1} (+) F_beta^n
        na = p.f_alpha.rank(n - 1)
        nb = p.f_beta.rank(n)
        ta = f.transport_alpha.get(n - 1, linalg.identity(field, na))
        tb = f.transport_beta.get(n, linalg.identity(field, nb))
        block = linalg.zeros(field, na + nb, na + nb)
        for i in range(na):
            for j in range(na):
                block[i][j] = ta[i][j]
        for i in range(nb):
            for j in range(nb):
                block[na + i][na + j] = tb[i][j]
        transports[n] = block
    return _transport_complex(c, transports)
