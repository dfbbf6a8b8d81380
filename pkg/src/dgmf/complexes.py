"""Bounded complexes of free graded modules.

Generators carry R-weights; differentials are matrices of polynomials (or
scalars when the base ring has no variables, i.e. over a point).  The three
constructions everything else relies on are the mapping cone (with the
convention d_cone = [[d_D, f], [0, -d_C]]), the graded tensor product with
Koszul signs, and the weight-d piece of the symmetric power of a two-term
complex.  Homology is exact Gaussian elimination, available over the field.
"""

from __future__ import annotations

from . import linalg


class Generator:
    """A named basis element with an R-weight."""

    __slots__ = ("name", "weight")

    def __init__(self, name, weight):
        self.name = name
        self.weight = int(weight)

    def __eq__(self, other):
        return isinstance(other, Generator) and other.name == self.name and other.weight == self.weight

    def __hash__(self):
        return hash((self.name, self.weight))

    def __repr__(self):
        return f"{self.name}<{self.weight}>"


class NotAChainMap(ValueError):
    """Raised with the first offending square when a purported chain map fails."""


class FreeComplex:
    """A bounded complex of free modules over a PolyRing."""

    def __init__(self, ring, objects, diffs, check=True, weight_check=True):
        self.ring = ring
        self.objects = {n: list(gens) for n, gens in objects.items() if gens}
        self.diffs = {}
        for n, m in diffs.items():
            if self.rank(n) and self.rank(n + 1):
                self.diffs[n] = [[self._coerce_entry(c) for c in row] for row in m]
        if check:
            self._check_shapes()
            self._check_d_squared()
            if weight_check:
                self._check_weights()

    def _coerce_entry(self, c):
        if hasattr(c, "terms"):
            if c.ring != self.ring:
                raise ValueError("differential entry from a different ring")
            return c
        return self.ring.constant(c)

    # -- bookkeeping ------------------------------------------------------

    def degrees(self):
        return sorted(self.objects)

    def rank(self, n):
        return len(self.objects.get(n, []))

    def total_rank(self):
        return sum(len(g) for g in self.objects.values())

    def gens(self, n):
        return self.objects.get(n, [])

    def diff(self, n):
        """Matrix of d: C^n -> C^{n+1} (rows = target generators)."""
        if n in self.diffs:
            return self.diffs[n]
        return [[self.ring.zero] * self.rank(n) for _ in range(self.rank(n + 1))]

    def _check_shapes(self):
        for n, m in self.diffs.items():
            if len(m) != self.rank(n + 1) or any(len(row) != self.rank(n) for row in m):
                raise ValueError(f"differential at degree {n} has wrong shape")

    def _check_d_squared(self):
        for n in self.degrees():
            if self.rank(n + 2) == 0 or self.rank(n) == 0:
                continue
            comp = _pmat_mul(self.diff(n + 1), self.diff(n), self.ring)
            for row in comp:
                for c in row:
                    if c:
                        raise ValueError(f"d o d != 0 at degree {n}")

    def _check_weights(self):
        for n, m in self.diffs.items():
            src = self.gens(n)
            tgt = self.gens(n + 1)
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c and not c.is_quasihomogeneous_of(src[j].weight - tgt[i].weight):
                        raise ValueError(
                            f"differential entry ({i},{j}) at degree {n} does not "
                            f"preserve R-weight")

    def __eq__(self, other):
        if not isinstance(other, FreeComplex) or other.ring != self.ring:
            return False
        if other.objects != self.objects:
            return False
        for n in self.degrees():
            if self.diff(n) != other.diff(n):
                return False
        return True

    def euler_characteristic(self):
        return sum((-1) ** n * self.rank(n) for n in self.degrees())

    # -- constructors -----------------------------------------------------

    @classmethod
    def single(cls, ring, degree=0, gens=None):
        gens = gens if gens is not None else [Generator("e", 0)]
        return cls(ring, {degree: gens}, {})

    @classmethod
    def zero_complex(cls, ring):
        return cls(ring, {}, {})

    def shift(self, k):
        """C[k]: degree n holds C^{n+k}; the differential picks up (-1)^k."""
        objects = {n - k: gens for n, gens in self.objects.items()}
        sign = 1 if k % 2 == 0 else -1
        diffs = {n - k: [[sign * c for c in row] for row in m]
                 for n, m in self.diffs.items()}
        return FreeComplex(self.ring, objects, diffs, weight_check=False)

    def direct_sum(self, other):
        objects = {}
        diffs = {}
        for n in set(self.degrees()) | set(other.degrees()):
            objects[n] = self.gens(n) + other.gens(n)
        for n in list(objects):
            if len(objects.get(n, [])) and len(objects.get(n + 1, [])):
                a, b = self.diff(n), other.diff(n)
                m = []
                for row in a:
                    m.append(list(row) + [self.ring.zero] * other.rank(n))
                for row in b:
                    m.append([self.ring.zero] * self.rank(n) + list(row))
                diffs[n] = m
        return FreeComplex(self.ring, objects, diffs, weight_check=False)


class ChainMap:
    """A degree-0 map of complexes; commutation with d is checked."""

    def __init__(self, source, target, components, check=True):
        if source.ring != target.ring:
            raise ValueError("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.components = {}
        for n, m in components.items():
            if source.rank(n) and target.rank(n):
                self.components[n] = [[_coerce(source.ring, c) for c in row] for row in m]
        if check:
            self._check()

    def component(self, n):
        if n in self.components:
            return self.components[n]
        return [[self.source.ring.zero] * self.source.rank(n)
                for _ in range(self.target.rank(n))]

    def _check(self):
        ring = self.source.ring
        for n, m in self.components.items():
            if len(m) != self.target.rank(n) or any(len(r) != self.source.rank(n) for r in m):
                raise ValueError(f"chain map component at degree {n} has wrong shape")
        for n in set(self.source.degrees()) | set(self.target.degrees()):
            left = _pmat_mul(self.target.diff(n), self.component(n), ring)
            right = _pmat_mul(self.component(n + 1), self.source.diff(n), ring)
            if left != right and not (_is_zero_mat(left) and _is_zero_mat(right)):
                raise NotAChainMap(
                    f"square at degree {n} does not commute: "
                    f"d_target o f = {left}, f o d_source = {right}")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    @classmethod
    def identity(cls, c):
        comps = {n: linalg_identity_poly(c.ring, c.rank(n)) for n in c.degrees()}
        return cls(c, c, comps)


def linalg_identity_poly(ring, n):
    m = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = ring.one
    return m


def _coerce(ring, c):
    return c if hasattr(c, "terms") else ring.constant(c)


def _is_zero_mat(m):
    return all(not e for row in m for e in row)


def _pmat_mul(a, b, ring):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[ring.zero] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            c = a[i][k]
            if c:
                for j in range(cols):
                    if b[k][j]:
                        out[i][j] = out[i][j] + c * b[k][j]
    return out


# -- cone, tensor, symmetric powers ---------------------------------------


def cone(f):
    """Mapping cone of a chain map f: C -> D.

    Degree n is D^n (+) C^{n+1}, with differential [[d_D, f], [0, -d_C]].
    """
    C, D = f.source, f.target
    ring = C.ring
    objects = {}
    for n in set(D.degrees()) | {m - 1 for m in C.degrees()}:
        gens = [Generator(f"D.{g.name}", g.weight) for g in D.gens(n)]
        gens += [Generator(f"C.{g.name}", g.weight) for g in C.gens(n + 1)]
        if gens:
            objects[n] = gens
    diffs = {}
    for n in list(objects):
        if n + 1 not in objects:
            continue
        dD, fc, dC = D.diff(n), f.component(n + 1), C.diff(n + 1)
        rows = []
        for i in range(D.rank(n + 1)):
            rows.append([dD[i][j] for j in range(D.rank(n))]
                        + [fc[i][j] for j in range(C.rank(n + 1))])
        for i in range(C.rank(n + 2)):
            rows.append([ring.zero] * D.rank(n)
                        + [-dC[i][j] for j in range(C.rank(n + 1))])
        diffs[n] = rows
    return FreeComplex(ring, objects, diffs, weight_check=False)


def cone_inclusion(f):
    """The canonical chain map D -> cone(f)."""
    D = f.target
    cf = cone(f)
    comps = {}
    for n in D.degrees():
        m = [[D.ring.zero] * D.rank(n) for _ in range(cf.rank(n))]
        for i in range(D.rank(n)):
            m[i][i] = D.ring.one
        comps[n] = m
    return ChainMap(D, cf, comps)


def cone_projection(f):
    """The canonical chain map cone(f) -> C[1]."""
    C = f.source
    cf = cone(f)
    shifted = C.shift(1)
    comps = {}
    for n in cf.degrees():
        nd = f.target.rank(n)
        m = [[C.ring.zero] * cf.rank(n) for _ in range(shifted.rank(n))]
        for i in range(C.rank(n + 1)):
            m[i][nd + i] = C.ring.one
        comps[n] = m
    return ChainMap(cf, shifted, comps)


def tensor(C, D):
    """Graded tensor product with the Koszul sign rule
    d(c (x) e) = dc (x) e + (-1)^{|c|} c (x) de; basis ordered
    degree-lexicographically for bit-reproducible output."""
    if C.ring != D.ring:
        raise ValueError("tensor of complexes over different rings")
    ring = C.ring
    objects = {}
    index = {}
    for n in C.degrees():
        for m in D.degrees():
            deg = n + m
            objects.setdefault(deg, [])
            for i, g in enumerate(C.gens(n)):
                for j, h in enumerate(D.gens(m)):
                    index[(n, i, m, j)] = (deg, len(objects[deg]))
                    objects[deg].append(Generator(f"{g.name}*{h.name}", g.weight + h.weight))
    diffs = {}
    for deg in list(objects):
        if deg + 1 not in objects:
            continue
        mat = [[ring.zero] * len(objects[deg]) for _ in range(len(objects[deg + 1]))]
        diffs[deg] = mat
    for (n, i, m, j), (deg, col) in index.items():
        if deg not in diffs:
            continue
        mat = diffs[deg]
        dC = C.diff(n)
        for i2 in range(C.rank(n + 1)):
            c = dC[i2][i]
            if c:
                _, row = index[(n + 1, i2, m, j)]
                mat[row][col] = mat[row][col] + c
        dD = D.diff(m)
        sign = 1 if n % 2 == 0 else -1
        for j2 in range(D.rank(m + 1)):
            c = dD[j2][j]
            if c:
                _, row = index[(n, i, m + 1, j2)]
                mat[row][col] = mat[row][col] + sign * c
    return FreeComplex(ring, objects, diffs, weight_check=False)


def sym_power_two_term(ring, a_gens, b_gens, f_matrix, weight):
    """The weight-``weight`` piece of the symmetric power of the two-term
    complex [A -> B] (A in degree 0, B in degree 1): term k is
    (S(A) (x) Wedge^k B)_weight, with the Koszul derivation extending f.

    ``f_matrix`` is the matrix of f: A -> B over the base ring (rows = B).
    All generator weights must be positive so each graded piece is finite.
    """
    a_gens = list(a_gens)
    b_gens = list(b_gens)
    if any(g.weight <= 0 for g in a_gens + b_gens):
        raise ValueError("a generator of weight <= 0 makes the graded piece "
                         "infinite-dimensional")
    if weight < 0:
        return FreeComplex.zero_complex(ring)

    def sym_basis(target):
        """Exponent tuples on A-generators of total weight ``target``."""
        out = []

        def rec(i, remaining, prefix):
            if i == len(a_gens):
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            w = a_gens[i].weight
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + [e])

        rec(0, target, [])
        return sorted(out)

    from itertools import combinations

    objects = {}
    index = {}
    for k in range(len(b_gens) + 1):
        gens = []
        for subset in combinations(range(len(b_gens)), k):
            wsub = sum(b_gens[i].weight for i in subset)
            for exps in sym_basis(weight - wsub):
                index[(exps, subset)] = (k, len(gens))
                name_parts = [f"{a_gens[i].name}^{e}" for i, e in enumerate(exps) if e]
                name_parts += [b_gens[i].name for i in subset]
                gens.append(Generator("*".join(name_parts) or "1", weight))
        if gens:
            objects[k] = gens

    diffs = {}
    for k in range(len(b_gens)):
        if k in objects and k + 1 in objects:
            diffs[k] = [[ring.zero] * len(objects[k]) for _ in range(len(objects[k + 1]))]
    for (exps, subset), (k, col) in index.items():
        if k not in diffs:
            continue
        mat = diffs[k]
        for i, e in enumerate(exps):
            if e == 0:
                continue
            lowered = list(exps)
            lowered[i] -= 1
            lowered = tuple(lowered)
            for bj in range(len(b_gens)):
                c = f_matrix[bj][i]
                if not c or bj in subset:
                    continue
                pos = sum(1 for s in subset if s < bj)
                newsub = tuple(sorted(subset + (bj,)))
                _, row = index[(lowered, newsub)]
                sign = 1 if pos % 2 == 0 else -1
                mat[row][col] = mat[row][col] + sign * e * c
    return FreeComplex(ring, objects, diffs, check=True, weight_check=False)


# -- homology over the field ----------------------------------------------


def _scalar_matrix(m, ring):
    out = []
    for row in m:
        srow = []
        for c in row:
            if not c.is_constant():
                raise ValueError("homology only over a point; restrict to a fiber first")
            srow.append(c.constant_value())
        out.append(srow)
    return out


def homology_ranks(C):
    """Exact homology ranks, degree -> rank; requires a point base."""
    if C.ring.nvars != 0:
        raise ValueError("homology only over a point; restrict to a fiber first")
    field = C.ring.field
    ranks = {}
    rank_d = {}
    for n in C.degrees():
        m = _scalar_matrix(C.diff(n), C.ring)
        rank_d[n] = linalg.rank(m, field) if m else 0
    for n in C.degrees():
        ranks[n] = C.rank(n) - rank_d.get(n, 0) - rank_d.get(n - 1, 0)
    return {n: r for n, r in ranks.items() if C.rank(n)}


def homology_data(C, n):
    """(cycle basis, boundary basis) at degree n, as lists of column vectors."""
    field = C.ring.field
    dn = _scalar_matrix(C.diff(n), C.ring)
    if C.rank(n + 1) == 0 or not dn:
        cycles = [[field.one if i == j else field.zero for i in range(C.rank(n))]
                  for j in range(C.rank(n))]
    else:
        cycles = linalg.nullspace(dn, field)
    boundaries = []
    dprev = _scalar_matrix(C.diff(n - 1), C.ring)
    if dprev and C.rank(n - 1):
        cols = linalg.transpose(dprev)
        r, pivots = linalg.rref(dprev, field)
        pivot_cols = [j for _, j in pivots]
        boundaries = [cols[j] for j in pivot_cols]
    return cycles, boundaries


def induced_homology_map_rank(f, n):
    """Rank of H^n(f) for a chain map f, over the field."""
    field = f.source.ring.field
    cyc_s, bnd_s = homology_data(f.source, n)
    cyc_t, bnd_t = homology_data(f.target, n)
    comp = _scalar_matrix(f.component(n), f.source.ring)
    images = []
    for v in cyc_s:
        images.append([sum((comp[i][j] * v[j] for j in range(len(v))), field.zero)
                       for i in range(len(comp))] if comp else [])
    dim_t = f.target.rank(n)
    if dim_t == 0:
        return 0
    cols = bnd_t + images
    big = [[col[i] for col in cols] for i in range(dim_t)]
    small = [[col[i] for col in bnd_t] for i in range(dim_t)] if bnd_t else []
    r_big = linalg.rank(big, field) if cols else 0
    r_small = linalg.rank(small, field) if bnd_t else 0
    return r_big - r_small


def triangle_les_exact(f):
    """Verify exactness of the homology long exact sequence of the triangle
    C --f--> D --> cone(f) --> C[1], over a point base.  Returns True/False."""
    C, D = f.source, f.target
    cf = cone(f)
    inc = cone_inclusion(f)
    proj = cone_projection(f)
    hC = homology_ranks(C)
    hD = homology_ranks(D)
    hCf = homology_ranks(cf)
    degs = sorted(set(hC) | set(hD) | set(hCf) | {n - 1 for n in hC})
    for n in degs:
        # exactness at H^n(D): im H(f) = ker H(inc)
        if hD.get(n, 0) != induced_homology_map_rank(f, n) + induced_homology_map_rank(inc, n):
            return False
        # exactness at H^n(cone): im H(inc) = ker H(proj)
        if hCf.get(n, 0) != induced_homology_map_rank(inc, n) + induced_homology_map_rank(proj, n):
            return False
        # exactness at H^{n+1}(C) = H^n(C[1]): im H(proj) = ker H(f)[1]
        if hC.get(n + 1, 0) != induced_homology_map_rank(proj, n) + induced_homology_map_rank(f, n + 1):
            return False
    return True
