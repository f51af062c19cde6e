"""Newton polyhedra, weight polytopes and piecewise valuations.

A finite irredundant set of positive rational weight vectors defines a
compact rational polytope of dimension n-1 crossing every positive ray
exactly once; the induced piecewise-linear minimum of the weight forms
filters the power series ring.  All arithmetic is exact: forms are kept
as primitive integer vectors together with the common scale that makes
the valuation integer-valued on lattice points.

Facet attainment ties are always reported as sets and never broken.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from possing.poly import (
    INFINITY,
    Derivation,
    Mono,
    Poly,
    Ring,
    degrevlex_key,
)


class PolytopeError(ValueError):
    pass


def _dot(w: Sequence, r: Sequence):
    return sum(a * b for a, b in zip(w, r))


def _solve_exact(rows: list, rhs: list) -> Optional[list]:
    """Solve a square rational system; None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _affine_rank(points: list) -> int:
    if not points:
        return -1
    base = points[0]
    vecs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    rank = 0
    cols = len(base)
    for col in range(cols):
        piv = next((r for r in range(rank, len(vecs)) if vecs[r][col] != 0), None)
        if piv is None:
            continue
        vecs[rank], vecs[piv] = vecs[piv], vecs[rank]
        inv = vecs[rank][col]
        vecs[rank] = [x / inv for x in vecs[rank]]
        for r in range(len(vecs)):
            if r != rank and vecs[r][col]:
                factor = vecs[r][col]
                vecs[r] = [x - factor * y for x, y in zip(vecs[r], vecs[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class Face:
    """A face of a weight polytope: its vertices and tightness data."""

    vertices: tuple  # tuples of Fraction
    dimension: int
    weight_indices: frozenset  # facet forms tight on the whole face
    zero_axes: frozenset  # coordinates identically zero on the face
    inner: bool  # not contained in any coordinate hyperplane


@dataclass(frozen=True)
class CPolytope:
    """Compact rational polytope meeting each positive ray once.

    weights[i] / nscale is the i-th normalized facet form (value 1 on its
    facet); the integer-valued piecewise valuation of a lattice point is
    min_i weights[i] . alpha.
    """

    weights: tuple  # tuple of int tuples, the scaled facet forms
    nscale: int  # common scale N so weights[i]/N has value 1 on facet i
    vertices: tuple  # tuples of Fraction
    faces: tuple  # all faces, every dimension
    virtual_points: tuple = ()  # lattice points added by a diagram extension

    @property
    def nvars(self) -> int:
        return len(self.weights[0])

    def facets(self) -> list:
        return [f for f in self.faces if f.dimension == self.nvars - 1]

    def value(self, alpha: Sequence) -> int:
        """The scaled piecewise valuation of a lattice exponent (an integer)."""
        return min(_dot(w, alpha) for w in self.weights)

    def facet_value(self, j: int, alpha: Sequence) -> int:
        return _dot(self.weights[j], alpha)

    def attaining(self, alpha: Sequence) -> tuple:
        v = self.value(alpha)
        return tuple(j for j, w in enumerate(self.weights) if _dot(w, alpha) == v)

    def min_variable_value(self) -> int:
        """min_i v(x_i): the least valuation of a single variable."""
        n = self.nvars
        return min(self.value(tuple(1 if j == i else 0 for j in range(n))) for i in range(n))

    def describe(self) -> dict:
        return {
            "weights": [list(w) for w in self.weights],
            "nscale": self.nscale,
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "virtual_points": [list(p) for p in self.virtual_points],
        }


def _region_vertices(lambdas: list, n: int) -> list:
    """Vertices of {r >= 0 : lambda_j . r >= 1 for all j}."""
    constraints = [("w", j) for j in range(len(lambdas))] + [("a", i) for i in range(n)]
    seen = set()
    verts = []
    for combo in combinations(constraints, n):
        rows, rhs = [], []
        for kind, idx in combo:
            if kind == "w":
                rows.append(list(lambdas[idx]))
                rhs.append(1)
            else:
                rows.append([1 if i == idx else 0 for i in range(n)])
                rhs.append(0)
        sol = _solve_exact(rows, rhs)
        if sol is None:
            continue
        if any(c < 0 for c in sol):
            continue
        if any(_dot(lam, sol) < 1 for lam in lambdas):
            continue
        key = tuple(sol)
        if key not in seen:
            seen.add(key)
            verts.append(key)
    return verts


def _enumerate_faces(lambdas: list, vertices: list, n: int) -> list:
    facet_count = len(lambdas)
    by_vertexset = {}
    for j in range(facet_count):
        vj = [v for v in vertices if _dot(lambdas[j], v) == 1]
        others = [("w", k) for k in range(facet_count) if k != j] + [
            ("a", i) for i in range(n)
        ]
        # close {facet} under single constraint cuts; a face cut out by a set
        # of constraints is reached by applying them one at a time
        candidates = {frozenset(vj)}
        frontier = set(candidates)
        while frontier:
            nxt = set()
            for vs in frontier:
                for kind, idx in others:
                    if kind == "w":
                        cut = frozenset(v for v in vs if _dot(lambdas[idx], v) == 1)
                    else:
                        cut = frozenset(v for v in vs if v[idx] == 0)
                    if cut and cut not in candidates:
                        candidates.add(cut)
                        nxt.add(cut)
            frontier = nxt
        for vs in candidates:
            by_vertexset.setdefault(vs, None)
    faces = []
    for vs in sorted(by_vertexset, key=lambda s: (len(s), sorted(map(tuple, s)))):
        pts = sorted(vs)
        tight_w = frozenset(
            j for j in range(facet_count) if all(_dot(lambdas[j], v) == 1 for v in pts)
        )
        zero_axes = frozenset(i for i in range(n) if all(v[i] == 0 for v in pts))
        faces.append(
            Face(
                vertices=tuple(tuple(v) for v in pts),
                dimension=_affine_rank(pts),
                weight_indices=tight_w,
                zero_axes=zero_axes,
                inner=not zero_axes,
            )
        )
    return faces


def _build_polytope(lambdas: list, n: int, virtual_points=()) -> CPolytope:
    """Assemble a CPolytope from normalized rational facet forms."""
    # dedupe
    uniq = []
    for lam in lambdas:
        lam = tuple(Fraction(c) for c in lam)
        if any(c <= 0 for c in lam):
            raise PolytopeError("weight vectors must be strictly positive")
        if lam not in uniq:
            uniq.append(lam)
    vertices = _region_vertices(uniq, n)
    if not vertices:
        raise PolytopeError("weight system defines no polytope")
    # keep forms whose facet has full dimension n-1 (irredundancy)
    essential = []
    for lam in uniq:
        tight = [v for v in vertices if _dot(lam, v) == 1]
        if _affine_rank(tight) == n - 1:
            essential.append(lam)
    if not essential:
        raise PolytopeError("no weight form supports a facet")
    essential.sort()
    scale = lcm(*[c.denominator for lam in essential for c in lam])
    weights = tuple(tuple(int(c * scale) for c in lam) for lam in essential)
    faces = _enumerate_faces(essential, vertices, n)
    return CPolytope(
        weights=weights,
        nscale=scale,
        vertices=tuple(tuple(v) for v in sorted(vertices)),
        faces=tuple(faces),
        virtual_points=tuple(tuple(p) for p in virtual_points),
    )


def cpolytope_from_weights(ws: Iterable) -> CPolytope:
    """Polytope {min_i w_i . r = 1} from rational weight vectors.

    Redundant vectors (those not supporting a facet) are dropped.
    """
    ws = [tuple(Fraction(c) for c in w) for w in ws]
    if not ws:
        raise PolytopeError("need at least one weight vector")
    n = len(ws[0])
    if any(len(w) != n for w in ws):
        raise PolytopeError("weight vectors of mixed arity")
    return _build_polytope(ws, n)


# -- Newton polyhedron ----------------------------------------------------------


@dataclass(frozen=True)
class NewtonData:
    """Newton polyhedron summary: diagram facets, vertices, convenience."""

    support: tuple
    facet_forms: tuple  # (primitive int normal w, value c) per compact facet
    facet_points: tuple  # support points on each facet
    facet_vertices: tuple  # extreme points of each facet
    vertices: tuple  # diagram vertices (lattice points)
    convenient: bool
    region_below: dict  # segments joining the origin to the diagram (informational)

    def strictly_above(self, alpha: Sequence) -> bool:
        """Is the point strictly above every compact facet plane?"""
        return all(_dot(w, alpha) > c for w, c in self.facet_forms)


def _minimal_points(support: list) -> list:
    out = []
    for a in support:
        if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in support):
            out.append(a)
    return out


def _primitive(v: Sequence) -> tuple:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v)


def _compact_facets(points: list, n: int) -> list:
    """Compact facets of hull(points + positive orthant): (normal, value, tights)."""
    facets = {}
    for combo in combinations(points, n):
        base = combo[0]
        rows = [[combo[k][i] - base[i] for i in range(n)] for k in range(1, n)]
        # normal = nullspace of the (n-1) x n difference matrix when rank n-1
        normal = _nullspace_vector(rows, n)
        if normal is None:
            continue
        if all(c == 0 for c in normal):
            continue
        if any(c < 0 for c in normal) and any(c > 0 for c in normal):
            continue
        if sum(normal) < 0:
            normal = tuple(-c for c in normal)
        if any(c <= 0 for c in normal):
            continue  # compact facets of a Newton polyhedron have positive normals
        w = _primitive(normal)
        c = _dot(w, base)
        if c <= 0:
            continue
        if any(_dot(w, p) < c for p in points):
            continue
        tight = tuple(sorted(p for p in points if _dot(w, p) == c))
        if _affine_rank([tuple(map(Fraction, t)) for t in tight]) != n - 1:
            continue
        facets[(w, c)] = tight
    return [(w, c, tight) for (w, c), tight in sorted(facets.items())]


def _nullspace_vector(rows: list, n: int) -> Optional[tuple]:
    """A nonzero rational vector orthogonal to all rows; None if rank < n-1."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    pivot_cols = []
    for col in range(n):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col]
        mat[rank] = [x / inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivot_cols.append(col)
        rank += 1
    if rank != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivot_cols)
    sol = [Fraction(0)] * n
    sol[free] = Fraction(1)
    for r, col in enumerate(pivot_cols):
        sol[col] = -mat[r][free]
    denom = lcm(*[f.denominator for f in sol])
    return tuple(int(f * denom) for f in sol)


def _extreme_points(points: list, n: int) -> list:
    """Extreme points of conv(points): drop points expressible by the others."""
    pts = [tuple(map(Fraction, p)) for p in points]
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not _in_convex_hull(p, others, n):
            out.append(points[i])
    return out


def _in_convex_hull(p, others, n) -> bool:
    from itertools import combinations as _comb

    for size in range(1, n + 2):
        for combo in _comb(others, size):
            # solve sum t_k q_k = p, sum t_k = 1
            rows = [[q[i] for q in combo] for i in range(n)] + [[1] * size]
            rhs = list(p) + [1]
            sol = _solve_lstsq_exact(rows, rhs, size)
            if sol is not None and all(t >= 0 for t in sol):
                return True
    return False


def _solve_lstsq_exact(rows, rhs, width) -> Optional[list]:
    """Exact solution of a possibly overdetermined consistent system."""
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    rank = 0
    pivots = []
    for col in range(width):
        piv = next((r for r in range(rank, len(aug)) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [x / inv for x in aug[rank]]
        for r in range(len(aug)):
            if r != rank and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(aug)):
        if aug[r][width] != 0:
            return None
    if rank < width:
        return None  # only need the unique-solution case here
    sol = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        sol[col] = aug[r][width]
    return sol


def newton_diagram(f: Poly) -> NewtonData:
    """Exact Newton polyhedron data of a nonzero polynomial."""
    if f.is_zero():
        raise PolytopeError("zero polynomial has no Newton diagram")
    n = f.ring.nvars
    support = sorted(f.support(), key=degrevlex_key)
    minimal = _minimal_points(support)
    facets = _compact_facets(minimal, n)
    facet_forms = tuple((w, c) for w, c, _ in facets)
    facet_points = tuple(t for _, _, t in facets)
    facet_vertices = tuple(tuple(_extreme_points(list(t), n)) for t in facet_points)
    verts = sorted({v for group in facet_vertices for v in group} or set(minimal))
    convenient = all(
        any(all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0 for m in support)
        for i in range(n)
    )
    region_below = {
        "origin": [0] * n,
        "diagram_vertices": [list(v) for v in verts],
    }
    return NewtonData(
        support=tuple(support),
        facet_forms=facet_forms,
        facet_points=facet_points,
        facet_vertices=facet_vertices,
        vertices=tuple(verts),
        convenient=convenient,
        region_below=region_below,
    )


def cpolytope_from_poly(f: Poly, rule: str = "extend") -> CPolytope:
    """The Newton diagram of f as a weight polytope, extending when needed.

    rule 'extend': a non-convenient diagram gains, on each missing axis i,
    the virtual point M_i e_i with M_i minimal such that no existing facet
    is cut below; the induced filtration agrees with the diagram's on the
    original support.  When the diagram has no facet at all, M_i falls back
    to twice the Tjurina-based determinacy bound.

    rule 'single': requires a quasihomogeneous f; the polytope of its
    single weight vector.
    """
    if f.is_zero() or f.constant_term():
        raise PolytopeError("need a nonzero input without constant term")
    n = f.ring.nvars
    if rule == "single":
        from possing.nondeg import detect_qh

        qh = detect_qh(f)
        if qh is None:
            raise PolytopeError("input is not quasihomogeneous; cannot use single-weight rule")
        lam = [Fraction(wi, qh.degree) for wi in qh.weights]
        return _build_polytope([lam], n)
    if rule != "extend":
        raise PolytopeError("unknown extension rule %r" % rule)
    nd = newton_diagram(f)
    if nd.convenient:
        lambdas = [[Fraction(wi, c) for wi in w] for w, c in nd.facet_forms]
        return _build_polytope(lambdas, n)
    support = list(f.support())
    missing = [
        i
        for i in range(n)
        if not any(m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i) for m in support)
    ]
    virtual = []
    for i in missing:
        if nd.facet_forms:
            bound = max(Fraction(c, w[i]) for w, c in nd.facet_forms)
            m_i = int(bound) if bound.denominator == 1 else int(bound) + 1
        else:
            from possing.localalg import tjurina

            tau = tjurina(f)
            if tau == INFINITY:
                raise PolytopeError(
                    "no facet to extend and infinite Tjurina number; supply weights explicitly"
                )
            m_i = 2 * (2 * int(tau) - int(f.order()) + 2)
        virtual.append(tuple(m_i if j == i else 0 for j in range(n)))
    extended = support + virtual
    ring = f.ring
    marker = ring.poly([(m, 1) for m in extended])
    nd2 = newton_diagram(marker)
    if not nd2.convenient:
        raise PolytopeError("extension failed to produce a convenient diagram")
    lambdas = [[Fraction(wi, c) for wi in w] for w, c in nd2.facet_forms]
    return _build_polytope(lambdas, n, virtual_points=virtual)


# -- valuations -----------------------------------------------------------------


@dataclass(frozen=True)
class ValuationReport:
    value: object  # int, or INFINITY for the zero polynomial
    attaining: dict  # minimal-valuation monomial -> tuple of facet indices


def valuation(P: CPolytope, f: Poly) -> ValuationReport:
    """Scaled piecewise valuation of f with per-term facet attainment."""
    if f.is_zero():
        return ValuationReport(INFINITY, {})
    best = None
    for m in f.terms:
        v = P.value(m)
        if best is None or v < best:
            best = v
    attaining = {
        m: P.attaining(m) for m in f.terms if P.value(m) == best
    }
    return ValuationReport(best, attaining)


def valuation_poly(P: CPolytope, f: Poly):
    return valuation(P, f).value


def valuation_mono_shifted(P: CPolytope, beta: Mono, axis: int) -> int:
    """Valuation of the monomial derivation x^beta d/dx_axis (may be negative)."""
    shifted = tuple(b - (1 if j == axis else 0) for j, b in enumerate(beta))
    return min(_dot(w, shifted) for w in P.weights)


def valuation_derivation(P: CPolytope, xi: Derivation) -> int:
    """min over nonzero terms of the shifted valuation; error on zero derivation."""
    if xi.is_zero():
        raise PolytopeError("zero derivation has no valuation")
    best = None
    for i, b in enumerate(xi.coefficients):
        for beta in b.terms:
            v = valuation_mono_shifted(P, beta, i)
            if best is None or v < best:
                best = v
    return best


def initial_form(P: CPolytope, f: Poly) -> Poly:
    """Terms of f attaining the minimal piecewise valuation."""
    if f.is_zero():
        raise PolytopeError("zero polynomial has no initial form")
    v = valuation_poly(P, f)
    return f.filter_terms(lambda m: P.value(m) == v)


def face_initial_form(P: CPolytope, face: Face, f: Poly) -> Poly:
    """Initial form along a face: minimize the sum of its tight facet forms."""
    if f.is_zero():
        raise PolytopeError("zero polynomial has no initial form")
    if not face.weight_indices:
        raise PolytopeError("face carries no facet form")
    ws = [P.weights[j] for j in sorted(face.weight_indices)]
    combined = tuple(sum(col) for col in zip(*ws))
    best = min(_dot(combined, m) for m in f.terms)
    return f.filter_terms(lambda m: _dot(combined, m) == best)


def inner_faces(P: CPolytope) -> list:
    """Faces of every dimension not contained in a coordinate hyperplane."""
    return [face for face in P.faces if face.inner]


def in_common_facet_cone(P: CPolytope, alpha: Mono, beta: Mono) -> bool:
    """Do alpha and beta lie in the cone of a single common facet?"""
    return bool(set(P.attaining(alpha)) & set(P.attaining(beta)))


# -- lattice enumeration ---------------------------------------------------------


def lattice_points_shifted(P: CPolytope, shifts: Sequence, target: int) -> list:
    """All beta >= 0 with min_j(W_j . beta - shifts[j]) == target.

    The weight entries are strictly positive, so the shifted minimum grows
    monotonically in every coordinate and the recursion can prune as soon
    as it overshoots.
    """
    weights = P.weights
    n = P.nvars
    out = []

    def rec(i, partial):
        if min(p - s for p, s in zip(partial, shifts)) > target:
            return
        if i == n:
            if min(p - s for p, s in zip(partial, shifts)) == target:
                out.append(tuple(current))
            return
        e = 0
        while True:
            new_partial = [p + e * w[i] for p, w in zip(partial, weights)]
            if min(np - s for np, s in zip(new_partial, shifts)) > target:
                break
            current.append(e)
            rec(i + 1, new_partial)
            current.pop()
            e += 1

    current: list = []
    rec(0, [0] * len(weights))
    out.sort(key=degrevlex_key)
    return out


def monomials_of_valuation(P: CPolytope, d: int) -> list:
    """Lattice exponents with piecewise valuation exactly d."""
    return lattice_points_shifted(P, [0] * len(P.weights), d)


def derivation_monomials(P: CPolytope, axis: int, t: int) -> list:
    """Exponents beta with the derivation x^beta d/dx_axis of valuation t."""
    shifts = [w[axis] for w in P.weights]
    return lattice_points_shifted(P, shifts, t)
