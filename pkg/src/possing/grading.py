"""Degreewise construction of the graded algebras attached to a filtration.

For a weight polytope P and f with v := v_P(f), the degree-d piece of the
expected-valuation graded algebra is the span of the valuation-d monomials
modulo the degree-d components of products xi*f with v_P(xi) + v >= d
(Jacobian flavor; monomial derivations suffice) and additionally g*f with
v_P(g) + v >= d (Tjurina flavor).  Only generators of exact complementary
valuation can contribute to the degree-d component, so each piece is a
finite exact linear-algebra problem.  No monomial order refines a
multi-facet piecewise degree, which is why this is done by plain column
reduction and not by standard bases.

The plain (non-expected) graded algebras of the quotients by the Jacobian
and Tjurina ideals are computed by a single echelon over all monomials of
bounded valuation: with columns sorted by valuation, the pivots at level d
count the image inside that level.

Pivots always target the leading monomial in the local order, so surviving
quotient monomials match the standard-monomial conventions of the rest of
the library.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from possing.localalg import (
    jacobian_ideal_gens,
    milnor,
    tjurina,
    tjurina_ideal_gens,
)
from possing.newton import (
    CPolytope,
    derivation_monomials,
    initial_form,
    lattice_points_shifted,
    monomials_of_valuation,
    valuation_poly,
)
from possing.poly import INFINITY, Mono, Poly, degrevlex_key, local_key


class Grading(Enum):
    MILNOR = "milnor"
    TJURINA = "tjurina"
    MILNOR_EXPECTED = "milnor-expected"
    TJURINA_EXPECTED = "tjurina-expected"

    @property
    def expected(self) -> bool:
        return self in (Grading.MILNOR_EXPECTED, Grading.TJURINA_EXPECTED)

    @property
    def contact(self) -> bool:
        return self in (Grading.TJURINA, Grading.TJURINA_EXPECTED)


class ConditionFailure(ValueError):
    """A finiteness condition required by the caller does not hold."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class _Echelon:
    """Sparse row echelon over the coefficient field with combo tracking.

    Columns are positions into a fixed monomial list (pivot preference
    order).  Pivot rows are monic at their pivot and support only columns
    at or after it, so reduction by ascending pivot position terminates.
    """

    def __init__(self, ring, ncols: int, track: bool):
        self.ring = ring
        self.ncols = ncols
        self.track = track
        self.pivots: Dict[int, tuple] = {}  # pos -> (row dict, combo dict | None)

    def reduce(self, vec: dict):
        ring = self.ring
        vec = dict(vec)
        used: Dict[object, object] = {}
        while True:
            hit = None
            for pos in sorted(vec):
                if pos in self.pivots:
                    hit = pos
                    break
            if hit is None:
                break
            row, rowcombo = self.pivots[hit]
            c = vec[hit]
            for p2, v2 in row.items():
                nv = ring.cadd(vec.get(p2, ring.coeff(0)), ring.cneg(ring.cmul(c, v2)))
                if nv:
                    vec[p2] = nv
                else:
                    vec.pop(p2, None)
            if self.track and rowcombo is not None:
                for label, cc in rowcombo.items():
                    nv = ring.cadd(used.get(label, ring.coeff(0)), ring.cmul(c, cc))
                    if nv:
                        used[label] = nv
                    else:
                        used.pop(label, None)
        return vec, used

    def add_row(self, vec: dict, label=None) -> bool:
        """Insert a generator row; returns True when it increased the rank."""
        ring = self.ring
        combo = {label: ring.coeff(1)} if (self.track and label is not None) else None
        red, used = self.reduce(vec)
        if self.track:
            # red == vec - sum(used * pivotrows); express red over generators
            combo = dict(combo or {})
            for plabel, c in used.items():
                nv = ring.cadd(combo.get(plabel, ring.coeff(0)), ring.cneg(c))
                if nv:
                    combo[plabel] = nv
                else:
                    combo.pop(plabel, None)
        if not red:
            return False
        pos = min(red)
        inv = ring.cinv(red[pos])
        red = {p: ring.cmul(v, inv) for p, v in red.items()}
        if self.track:
            combo = {l: ring.cmul(v, inv) for l, v in combo.items()}
        self.pivots[pos] = (red, combo)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


@dataclass
class GradedPieceReport:
    """One degree of a graded algebra: ambient monomials, image, survivors."""

    mode: Grading
    degree: int
    ambient: tuple  # monomials of this valuation, ascending degrevlex
    image_labels: tuple  # labels of the image generators with nonzero piece
    rank: int
    quotient_basis: tuple  # surviving monomials, ascending degrevlex
    columns: tuple = field(repr=False, default=())  # pivot-preference order
    echelon: object = field(repr=False, default=None)

    @property
    def dimension(self) -> int:
        return len(self.quotient_basis)


class GradedAlgebra:
    """Piece cache plus cone-propagation kill cache for one (P, f, mode)."""

    def __init__(self, P: CPolytope, f: Poly, mode: Grading):
        if f.is_zero() or f.constant_term():
            raise ValueError("graded algebras need a nonzero f without constant term")
        if not mode.expected:
            raise ValueError("GradedAlgebra drives the expected-valuation modes")
        self.P = P
        self.f = f
        self.mode = mode
        self.ring = f.ring
        self.value_f = valuation_poly(P, f)
        self.partials = [f.partial(i) for i in range(f.ring.nvars)]
        self._pieces: Dict[int, GradedPieceReport] = {}
        # known-zero monomials with their attaining facet sets
        self.kills: List[Tuple[Mono, frozenset]] = []

    # -- pieces ------------------------------------------------------------

    def piece(self, d: int) -> GradedPieceReport:
        if d not in self._pieces:
            self._pieces[d] = self._compute_piece(d)
        return self._pieces[d]

    def _compute_piece(self, d: int) -> GradedPieceReport:
        if d < 0:
            raise ValueError("negative filtration degree")
        P, ring = self.P, self.ring
        ambient = monomials_of_valuation(P, d)
        cols = sorted(ambient, key=local_key, reverse=True)
        index = {m: i for i, m in enumerate(cols)}
        ech = _Echelon(ring, len(cols), track=True)
        labels = []
        target = d - self.value_f
        gens = []
        if self.mode is Grading.TJURINA_EXPECTED and target >= 0:
            for gamma in monomials_of_valuation(P, target):
                product = self.f.term_mul(gamma, 1)
                gens.append((("mult", gamma), product))
        for axis in range(ring.nvars):
            if self.partials[axis].is_zero():
                continue
            for beta in derivation_monomials(P, axis, target):
                product = self.partials[axis].term_mul(beta, 1)
                gens.append((("deriv", axis, beta), product))
        for label, product in gens:
            vec = {
                index[m]: c for m, c in product.terms.items() if P.value(m) == d
            }
            if not vec:
                continue
            if ech.add_row(vec, label=label):
                labels.append(label)
            else:
                labels.append(label)  # dependent generators still span the image
        survivors = [m for i, m in enumerate(cols) if i not in ech.pivots]
        survivors.sort(key=degrevlex_key)
        return GradedPieceReport(
            mode=self.mode,
            degree=d,
            ambient=tuple(sorted(ambient, key=degrevlex_key)),
            image_labels=tuple(labels),
            rank=ech.rank,
            quotient_basis=tuple(survivors),
            columns=tuple(cols),
            echelon=ech,
        )

    def solve(self, g: Poly, d: int):
        """Split the valuation-d part of g into surviving-basis and image parts.

        Returns (coeffs on quotient-basis monomials, coeffs on generator
        labels).  Exact at level d: g minus the named combination lies in
        strictly higher valuation.
        """
        piece = self.piece(d)
        index = {m: i for i, m in enumerate(piece.columns)}
        vec = {index[m]: c for m, c in g.terms.items() if self.P.value(m) == d}
        residual, used = piece.echelon.reduce(vec)
        basis_coeffs = {piece.columns[pos]: c for pos, c in residual.items()}
        if any(m not in piece.quotient_basis for m in basis_coeffs):
            raise AssertionError("residual escaped the quotient basis")
        return basis_coeffs, used

    # -- zero tests ----------------------------------------------------------

    def cone_killed(self, m: Mono) -> bool:
        for alpha, facets in self.kills:
            beta = tuple(x - a for x, a in zip(m, alpha))
            if any(b < 0 for b in beta):
                continue
            if set(self.P.attaining(beta)) & facets:
                return True
        return False

    def vanishes(self, m: Mono, use_cone: bool = True) -> bool:
        if use_cone and self.cone_killed(m):
            return True
        d = self.P.value(m)
        piece = self.piece(d)
        if m in piece.quotient_basis:
            return False
        basis_coeffs, _ = self.solve(self.ring.monomial(m), d)
        vanished = not basis_coeffs
        if vanished:
            self.record_kill(m)
        return vanished

    def record_kill(self, m: Mono):
        entry = (m, frozenset(self.P.attaining(m)))
        if entry not in self.kills:
            self.kills.append(entry)


# -- plain graded algebras --------------------------------------------------------


def _plain_gens(f: Poly, mode: Grading) -> list:
    if mode is Grading.MILNOR:
        return jacobian_ideal_gens(f)
    if mode is Grading.TJURINA:
        return tjurina_ideal_gens(f)
    raise ValueError("plain mode expected")


def _monomials_up_to(P: CPolytope, bound: int) -> list:
    """All exponents with piecewise valuation <= bound."""
    out = []
    weights = P.weights
    n = P.nvars

    def rec(i, partial):
        if min(partial) > bound:
            return
        if i == n:
            out.append(tuple(current))
            return
        e = 0
        while True:
            new_partial = [p + e * w[i] for p, w in zip(partial, weights)]
            if min(new_partial) > bound:
                break
            current.append(e)
            rec(i + 1, new_partial)
            current.pop()
            e += 1

    current: list = []
    rec(0, [0] * len(weights))
    return out


def plain_graded_dims(P: CPolytope, f: Poly, mode: Grading, dmax: int) -> list:
    """Piece dimensions of the plain graded algebra for degrees 0..dmax.

    One echelon over all monomials of valuation <= dmax, columns sorted by
    valuation: pivots at level d count the projected ideal there.
    """
    gens = _plain_gens(f, mode)
    ring = f.ring
    cols = _level_ordered_columns(P, dmax)
    index = {m: i for i, m in enumerate(cols)}
    levels = [P.value(m) for m in cols]
    ech = _Echelon(ring, len(cols), track=False)
    for g in gens:
        if g.is_zero():
            continue
        vg = valuation_poly(P, g)
        for gamma in _monomials_up_to(P, dmax - vg):
            product = g.term_mul(gamma, 1)
            vec = {index[m]: c for m, c in product.terms.items() if P.value(m) <= dmax}
            if vec:
                ech.add_row(vec)
    pivot_levels = [levels[pos] for pos in ech.pivots]
    dims = []
    for d in range(dmax + 1):
        total = sum(1 for lvl in levels if lvl == d)
        hit = sum(1 for lvl in pivot_levels if lvl == d)
        dims.append(total - hit)
    return dims


def _level_ordered_columns(P: CPolytope, dmax: int) -> list:
    """Monomials of valuation <= dmax, by level, local-leading first per level."""
    by_level = {}
    for m in _monomials_up_to(P, dmax):
        by_level.setdefault(P.value(m), []).append(m)
    cols = []
    for lvl in sorted(by_level):
        cols.extend(sorted(by_level[lvl], key=local_key, reverse=True))
    return cols


def _plain_piece(P: CPolytope, f: Poly, d: int, mode: Grading) -> GradedPieceReport:
    gens = _plain_gens(f, mode)
    ring = f.ring
    level_cols = sorted(monomials_of_valuation(P, d), key=local_key, reverse=True)
    cols = _level_ordered_columns(P, d)
    index = {m: i for i, m in enumerate(cols)}
    ech = _Echelon(ring, len(cols), track=False)
    labels = []
    for gi, g in enumerate(gens):
        if g.is_zero():
            continue
        vg = valuation_poly(P, g)
        for gamma in _monomials_up_to(P, d - vg):
            product = g.term_mul(gamma, 1)
            vec = {index[m]: c for m, c in product.terms.items() if P.value(m) <= d}
            if vec:
                if ech.add_row(vec):
                    labels.append(("mult", gamma, gi))
    # pivots whose column sits at level d, projected: survivors at level d
    pivot_monos = {cols[pos] for pos in ech.pivots if P.value(cols[pos]) == d}
    survivors = [m for m in level_cols if m not in pivot_monos]
    survivors.sort(key=degrevlex_key)
    return GradedPieceReport(
        mode=mode,
        degree=d,
        ambient=tuple(sorted(level_cols, key=degrevlex_key)),
        image_labels=tuple(labels),
        rank=len(pivot_monos),
        quotient_basis=tuple(survivors),
        columns=tuple(level_cols),
        echelon=None,
    )


# -- public operations ------------------------------------------------------------


def graded_piece(P: CPolytope, f: Poly, d: int, mode: Grading) -> GradedPieceReport:
    """The degree-d piece of the chosen graded algebra of f."""
    if d < 0:
        raise ValueError("negative filtration degree")
    if mode.expected:
        return GradedAlgebra(P, f, mode).piece(d)
    return _plain_piece(P, f, d, mode)


def vanishes_in_gr(P: CPolytope, f: Poly, m: Mono, mode: Grading) -> bool:
    """Is the class of the monomial zero in the chosen graded algebra?

    Exact linear algebra decides; cone propagation only accelerates repeat
    queries through GradedAlgebra instances.
    """
    if mode.expected:
        return GradedAlgebra(P, f, mode).vanishes(tuple(m), use_cone=False)
    d = P.value(m)
    piece = _plain_piece(P, f, d, mode)
    return tuple(m) not in piece.quotient_basis


def _primitive_direction(vertex) -> Mono:
    from math import lcm

    denom = 1
    for c in vertex:
        denom = lcm(denom, Fraction(c).denominator)
    ints = [int(Fraction(c) * denom) for c in vertex]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class RayReport:
    """Scan result for the ray through one zero-dimensional face."""

    vertex: tuple
    direction: Mono  # primitive lattice direction
    facets: frozenset  # facet indices whose cone contains the ray
    first_vanishing: Optional[Mono]
    multiple: Optional[int]
    scan_bound: int


@dataclass(frozen=True)
class RayCriterionReport:
    rays: tuple
    all_vanish: bool

    def witness(self) -> Optional[RayReport]:
        for r in self.rays:
            if r.first_vanishing is None:
                return r
        return None


def _default_scan_bound(P: CPolytope, f: Poly, mode: Grading) -> int:
    est = milnor(f) if mode is Grading.MILNOR_EXPECTED else tjurina(f)
    if est == INFINITY:
        return 24
    return max(16, 4 * int(est))


def ray_criterion(
    P: CPolytope,
    f: Poly,
    mode: Grading,
    scan_bound: Optional[int] = None,
    algebra: Optional[GradedAlgebra] = None,
) -> RayCriterionReport:
    """Scan each vertex ray for a vanishing lattice monomial.

    Finiteness of the graded algebra is equivalent to every such ray
    carrying a vanishing monomial; a scan that finds none up to the bound
    reports the ray as a witness.
    """
    alg = algebra if algebra is not None else GradedAlgebra(P, f, mode)
    bound = scan_bound if scan_bound is not None else _default_scan_bound(P, f, mode)
    rays = []
    for face in P.faces:
        if face.dimension != 0:
            continue
        vertex = face.vertices[0]
        u = _primitive_direction(vertex)
        hit = None
        mult = None
        for k in range(1, bound + 1):
            m = tuple(k * c for c in u)
            if alg.vanishes(m):
                alg.record_kill(m)
                hit, mult = m, k
                break
        rays.append(
            RayReport(
                vertex=vertex,
                direction=u,
                facets=face.weight_indices,
                first_vanishing=hit,
                multiple=mult,
                scan_bound=bound,
            )
        )
    return RayCriterionReport(rays=tuple(rays), all_vanish=all(r.first_vanishing for r in rays))


@dataclass(frozen=True)
class RegularBasisResult:
    """Monomial basis of an expected-valuation graded algebra, or a witness."""

    mode: Grading
    status: str  # "finite" | "infinite"
    basis: tuple  # ((mono, valuation), ...) sorted by (valuation, degrevlex)
    dimension: object  # int or INFINITY
    witness_ray: Optional[RayReport] = None
    scan_bound: Optional[int] = None

    @property
    def finite(self) -> bool:
        return self.status == "finite"

    def max_valuation(self) -> int:
        if not self.basis:
            return 0
        return max(v for _, v in self.basis)

    def monomials(self) -> tuple:
        return tuple(m for m, _ in self.basis)


def regular_basis(
    P: CPolytope,
    f: Poly,
    mode: Grading,
    scan_bound: Optional[int] = None,
    algebra: Optional[GradedAlgebra] = None,
) -> RegularBasisResult:
    """Full monomial basis of the graded algebra, or an infiniteness witness.

    After every vertex ray exhibits a vanishing monomial, cone propagation
    confines survivors to a bounded region: inside a facet cone, anything
    at or past the sum of the ray kills is a shifted-cone translate of a
    kill.  Pieces are then computed only at degrees of unkilled candidates.
    """
    if not mode.expected:
        raise ValueError("regular bases concern the expected-valuation modes")
    alg = algebra if algebra is not None else GradedAlgebra(P, f, mode)
    rc = ray_criterion(P, f, mode, scan_bound=scan_bound, algebra=alg)
    if not rc.all_vanish:
        return RegularBasisResult(
            mode=mode,
            status="infinite",
            basis=(),
            dimension=INFINITY,
            witness_ray=rc.witness(),
            scan_bound=rc.rays[0].scan_bound if rc.rays else scan_bound,
        )
    # bound: within each facet cone, survivors sit below the sum of ray kills
    dmax = 0
    for facet_index in range(len(P.weights)):
        total = 0
        for ray in rc.rays:
            if facet_index in ray.facets:
                total += P.value(ray.first_vanishing)
        dmax = max(dmax, total)
    candidates = [
        m for m in _monomials_up_to(P, dmax - 1) if not alg.cone_killed(m)
    ]
    degrees = sorted({P.value(m) for m in candidates})
    basis = []
    for d in degrees:
        piece = alg.piece(d)
        for m in piece.quotient_basis:
            if alg.cone_killed(m):
                raise AssertionError("cone-killed monomial survived the echelon")
            basis.append((m, d))
    basis.sort(key=lambda pair: (pair[1], degrevlex_key(pair[0])))
    return RegularBasisResult(
        mode=mode,
        status="finite",
        basis=tuple(basis),
        dimension=len(basis),
        scan_bound=rc.rays[0].scan_bound if rc.rays else None,
    )


@dataclass(frozen=True)
class ConditionReport:
    """Verdict for one of the graded finiteness/exactness conditions."""

    mode: str  # "right" | "contact"
    strict: bool  # exactness (graded dimension equals the local invariant)
    holds: bool
    graded_dimension: object
    local_dimension: object  # Milnor or Tjurina number of f
    witness_ray: Optional[RayReport] = None
    basis: Optional[RegularBasisResult] = None


def check_condition(
    P: CPolytope,
    f: Poly,
    mode: str,
    strict: bool,
    scan_bound: Optional[int] = None,
) -> ConditionReport:
    """Decide graded finiteness (strict=False) or exactness (strict=True).

    mode 'right' inspects the Jacobian-flavor algebra against the Milnor
    number; mode 'contact' the Tjurina flavor against the Tjurina number.
    Exactness means finiteness with graded dimension equal to the local one.
    """
    if mode not in ("right", "contact"):
        raise ValueError("mode must be 'right' or 'contact'")
    grmode = Grading.MILNOR_EXPECTED if mode == "right" else Grading.TJURINA_EXPECTED
    local_dim = milnor(f) if mode == "right" else tjurina(f)
    rb = regular_basis(P, f, grmode, scan_bound=scan_bound)
    if not rb.finite:
        if local_dim != INFINITY and rb.witness_ray is None:
            raise AssertionError("finite local dimension but no witness ray found")
        return ConditionReport(
            mode=mode,
            strict=strict,
            holds=False,
            graded_dimension=INFINITY,
            local_dimension=local_dim,
            witness_ray=rb.witness_ray,
            basis=rb,
        )
    holds = True
    if strict:
        holds = local_dim != INFINITY and rb.dimension == local_dim
    return ConditionReport(
        mode=mode,
        strict=strict,
        holds=holds,
        graded_dimension=rb.dimension,
        local_dimension=local_dim,
        witness_ray=None,
        basis=rb,
    )
