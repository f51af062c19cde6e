"""Local standard bases and ideal-theoretic primitives.

Standard bases under the local degree order are completed by Lazard's
homogenization: Buchberger runs on the homogenized generators under a
degree-first order whose tie-break is the local order of the x-part, and
the result dehomogenizes to a standard basis.  Queries against a basis
use Mora's ecart-driven weak normal form (which also produces membership
certificates with their unit), with a certified truncation fallback for
finite-dimensional quotients since the naive Mora strategy can take
astronomically long on tail-heavy input.  Membership is decided in the
extension of the ideal to the formal power series ring, which is what
Milnor/Tjurina numbers need.  A global degrevlex Buchberger drives
saturation (used by the inner non-degeneracy test); no monomial order can
refine a multi-facet piecewise degree, so nothing here is used for the
graded algebras themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional

from possing.poly import (
    INFINITY,
    Mono,
    Poly,
    Ring,
    RingError,
    degrevlex_key,
    local_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class OrderingSpec:
    """Monomial order: 'local' (1 above all variables) or 'global' degrevlex,
    both with reverse-lexicographic tie-break."""

    kind: str  # "local" | "global"

    def __post_init__(self):
        if self.kind not in ("local", "global"):
            raise ValueError("ordering kind must be 'local' or 'global'")

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def key(self) -> Callable[[Mono], object]:
        return local_key if self.is_local else degrevlex_key


LOCAL = OrderingSpec("local")
GLOBAL = OrderingSpec("global")


def leading_monomial(f: Poly, key) -> Mono:
    return max(f.terms, key=key)


def _monic(f: Poly, key) -> Poly:
    lm = leading_monomial(f, key)
    return f.scale(f.ring.cinv(f.terms[lm]))


class _Tracked:
    """Polynomial with a running representation h = a*seed + sum(q_i * gens_i)."""

    __slots__ = ("poly", "a", "qs")

    def __init__(self, poly: Poly, a: Poly, qs: list):
        self.poly = poly
        self.a = a
        self.qs = qs


class ReductionBudgetExceeded(RuntimeError):
    pass


def _normal_form(
    g: Poly,
    reducers: list,
    key,
    allow_stash: bool,
    track: bool = False,
    max_steps: Optional[int] = None,
):
    """Weak normal form of g against the reducers.

    With a local order this is Mora's normal form: when every applicable
    reducer has larger ecart than the current remainder, the remainder
    itself is stashed as a new reducer; the accumulated coefficient on g
    then stays a unit.  With a global order no stashing happens and this
    is plain division.  Mora terminates, but its naive strategy can take
    astronomically long on tail-heavy inputs, hence the step budget.

    Returns (h, unit, cofactors) when track is set, satisfying
    unit*g == sum(cofactors[i]*reducers[i]) + h with unit(0) != 0;
    otherwise (h, None, None).
    """
    ring = g.ring
    ngens = len(reducers)

    def ecart(p: Poly) -> int:
        return p.degree() - sum(leading_monomial(p, key))

    pool = []
    for i, r in enumerate(reducers):
        if r.is_zero():
            continue
        qs = None
        if track:
            qs = [ring.zero()] * ngens
            qs[i] = ring.one()
        pool.append((leading_monomial(r, key), ecart(r), _Tracked(r, ring.zero(), qs)))

    h = _Tracked(g, ring.one(), [ring.zero()] * ngens if track else None)
    steps = 0
    while not h.poly.is_zero():
        lm_h = leading_monomial(h.poly, key)
        usable = [entry for entry in pool if mono_divides(entry[0], lm_h)]
        if not usable:
            break
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise ReductionBudgetExceeded("normal form exceeded %d steps" % max_steps)
        lm_r, ec_r, red = min(usable, key=lambda entry: entry[1])
        if allow_stash and ec_r > (h.poly.degree() - sum(lm_h)):
            stashed = _Tracked(h.poly, h.a, list(h.qs) if track else None)
            pool.append((lm_h, h.poly.degree() - sum(lm_h), stashed))
        # stashed reducers are not monic: scale by their leading coefficient
        c = ring.cmul(h.poly.terms[lm_h], ring.cinv(red.poly.terms[lm_r]))
        t = mono_div(lm_h, lm_r)
        h_poly = h.poly - red.poly.term_mul(t, c)
        if track:
            h.a = h.a - red.a.term_mul(t, c)
            h.qs = [hq - rq.term_mul(t, c) for hq, rq in zip(h.qs, red.qs)]
        h.poly = h_poly
    if track:
        unit = h.a
        cofactors = [-q for q in h.qs]
        return h.poly, unit, cofactors
    return h.poly, None, None


@dataclass
class StandardBasis:
    """Completed (standard or Groebner) basis with its leading data."""

    generators: tuple  # monic Poly, minimalized
    ordering: OrderingSpec
    leading_monomials: tuple  # one Mono per generator
    _vdim_cache: object = None

    @property
    def ring(self) -> Ring:
        return self.generators[0].ring

    def normal_form(self, g: Poly, max_steps: Optional[int] = 50000) -> Poly:
        key = self.ordering.key()
        h, _, _ = _normal_form(
            g, list(self.generators), key, self.ordering.is_local, max_steps=max_steps
        )
        return h

    def reduce_truncated(self, g: Poly, cutoff: int) -> Poly:
        """Reduction with all terms of degree >= cutoff discarded.

        Decides membership in the ideal plus the cutoff power of the
        maximal ideal: the leading monomials below the cutoff are exactly
        those of the full ideal there.
        """
        key = self.ordering.key()
        h = g.truncate(cutoff - 1)
        while not h.is_zero():
            lm_h = leading_monomial(h, key)
            hit = None
            for lm, red in zip(self.leading_monomials, self.generators):
                if mono_divides(lm, lm_h):
                    hit = (lm, red)
                    break
            if hit is None:
                break
            lm, red = hit
            c = h.terms[lm_h]
            h = (h - red.term_mul(mono_div(lm_h, lm), c)).truncate(cutoff - 1)
        return h

    def contains(self, g: Poly) -> bool:
        """Membership of g in the ideal (extended to the power series ring
        for the local order).  Falls back from Mora reduction to certified
        truncation when the quotient is finite-dimensional."""
        if g.is_zero():
            return True
        try:
            return self.normal_form(g, max_steps=4000).is_zero()
        except ReductionBudgetExceeded:
            if not self.ordering.is_local:
                return self.normal_form(g, max_steps=None).is_zero()
            report = vdim(self)
            if report.dimension == INFINITY:
                return self.normal_form(g, max_steps=None).is_zero()
            cutoff = int(report.dimension) + 2
            return self.reduce_truncated(g, cutoff).is_zero()


def _buchberger(gens: list, key, allow_stash: bool) -> list:
    """Completion loop; normal selection with the product criterion."""
    basis = [_monic(g, key) for g in gens if not g.is_zero()]
    lms = [leading_monomial(g, key) for g in basis]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        pairs.sort(key=lambda ij: sum(mono_lcm(lms[ij[0]], lms[ij[1]])), reverse=True)
        i, j = pairs.pop()
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue  # coprime leading monomials: s-poly reduces to zero
        s = basis[i].term_mul(mono_div(lcm, lms[i]), 1) - basis[j].term_mul(
            mono_div(lcm, lms[j]), 1
        )
        if s.is_zero():
            continue
        h, _, _ = _normal_form(s, basis, key, allow_stash)
        if h.is_zero():
            continue
        h = _monic(h, key)
        basis.append(h)
        lms.append(leading_monomial(h, key))
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))
    return basis


def _minimalize(basis: list, key) -> list:
    lms = [leading_monomial(g, key) for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        if any(
            mono_divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(basis))
            if j != i
        ):
            continue
        keep.append(i)
    kept = [(lms[i], basis[i]) for i in keep]
    kept.sort(key=lambda pair: degrevlex_key(pair[0]))
    return kept


def _homog_key(m: Mono):
    """Global order on the homogenizing ring: total degree, then the local
    order of the x-part.  The homogenizing variable sits in the last slot.
    Leading terms of homogenized polynomials dehomogenize to local leading
    terms, so Groebner bases here dehomogenize to standard bases."""
    return (sum(m), local_key(m[:-1]))


def _homogenize(ring_t: Ring, f: Poly) -> Poly:
    d = f.degree()
    return Poly(ring_t, {m + (d - sum(m),): c for m, c in f.terms.items()})


def _dehomogenize(ring: Ring, f: Poly) -> Poly:
    acc = {}
    for m, c in f.terms.items():
        x = m[:-1]
        prev = acc.get(x)
        acc[x] = c if prev is None else ring.cadd(prev, c)
    return Poly(ring, {m: c for m, c in acc.items() if c})


def std_basis(gens: Iterable, ordering: OrderingSpec = LOCAL) -> StandardBasis:
    """Completed basis under the given order.

    Global orders run Buchberger directly.  Local standard bases go
    through homogenization: a Groebner basis of the homogenized
    generators under a degree-first order whose tie-break is the local
    order of the x-part dehomogenizes to a standard basis (Lazard's
    method).  That route terminates structurally, unlike naive Mora
    completion whose ecart strategy can blow up on tail-heavy input.

    Zero generators are dropped; at least one generator must be nonzero.
    The returned generators are monic with pairwise non-divisible leading
    monomials.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise RingError("mixed ring contexts")
    key = ordering.key()
    if not ordering.is_local:
        basis = _buchberger(gens, key, allow_stash=False)
        kept = _minimalize(basis, key)
        return StandardBasis(
            generators=tuple(g for _, g in kept),
            ordering=ordering,
            leading_monomials=tuple(lm for lm, _ in kept),
        )
    ring_t = _with_tag_variable(ring)
    lifted = [_homogenize(ring_t, g) for g in gens]
    homog_basis = _buchberger(lifted, _homog_key, allow_stash=False)
    basis = [_dehomogenize(ring, h) for h in homog_basis]
    basis = [g for g in basis if not g.is_zero()]
    kept = _minimalize([_monic(g, key) for g in basis], key)
    return StandardBasis(
        generators=tuple(g for _, g in kept),
        ordering=ordering,
        leading_monomials=tuple(lm for lm, _ in kept),
    )


@dataclass(frozen=True)
class QuotientReport:
    """K-dimension of the quotient by a zero-dimensional-or-not leading ideal."""

    dimension: object  # int or INFINITY
    standard_monomials: Optional[tuple]  # sorted ascending degrevlex; None if infinite


def vdim(sb: StandardBasis) -> QuotientReport:
    """Dimension of the local quotient ring, via counting standard monomials.

    Infinite exactly when some variable has no pure power among the leading
    monomials (detected exactly, no timeout heuristics).
    """
    if sb._vdim_cache is not None:
        return sb._vdim_cache
    n = sb.ring.nvars
    lms = sb.leading_monomials
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            report = QuotientReport(INFINITY, None)
            sb._vdim_cache = report
            return report
        bounds.append(min(pure))
    std = []
    for expo in product(*(range(b) for b in bounds)):
        if not any(mono_divides(lm, expo) for lm in lms):
            std.append(expo)
    std.sort(key=degrevlex_key)
    report = QuotientReport(len(std), tuple(std))
    sb._vdim_cache = report
    return report


def _require_in_max_ideal(f: Poly, who: str):
    if f.constant_term():
        raise ValueError("%s requires an input without constant term" % who)


def jacobian_ideal_gens(f: Poly) -> list:
    return [p for p in (f.partial(i) for i in range(f.ring.nvars)) if not p.is_zero()]


def tjurina_ideal_gens(f: Poly) -> list:
    gens = [] if f.is_zero() else [f]
    gens.extend(jacobian_ideal_gens(f))
    return gens


def milnor(f: Poly):
    """dim_K K[[x]]/<partials of f>; INFINITY when not an isolated singularity."""
    _require_in_max_ideal(f, "milnor")
    gens = jacobian_ideal_gens(f)
    if not gens:
        return INFINITY
    return vdim(std_basis(gens, LOCAL)).dimension


def tjurina(f: Poly):
    """dim_K K[[x]]/<f and its partials>."""
    _require_in_max_ideal(f, "tjurina")
    gens = tjurina_ideal_gens(f)
    if not gens:
        return INFINITY
    return vdim(std_basis(gens, LOCAL)).dimension


def _monomials_of_degree(ring: Ring, d: int):
    n = ring.nvars

    def rec(i, remaining):
        if i == n - 1:
            yield (remaining,)
            return
        for e in range(remaining + 1):
            for rest in rec(i + 1, remaining - e):
                yield (e,) + rest

    return rec(0, d)


def min_power_containment(sb: StandardBasis):
    """Smallest k with every degree-k monomial in the ideal; INFINITY if none.

    Scans k upward testing all degree-k monomials for membership.  When the
    quotient dimension v is finite, stabilization of the chain of ideals
    m^k + I forces an answer at k <= v + 1, so the scan is bounded.
    """
    if not sb.ordering.is_local:
        raise ValueError("min_power_containment needs a local standard basis")
    report = vdim(sb)
    if report.dimension == INFINITY:
        return INFINITY
    ring = sb.ring
    cutoff = int(report.dimension) + 2
    for k in range(cutoff):
        if all(
            sb.reduce_truncated(ring.monomial(m), cutoff).is_zero()
            for m in _monomials_of_degree(ring, k)
        ):
            return k
    raise AssertionError("containment scan passed its provable ceiling")


@dataclass(frozen=True)
class MembershipCertificate:
    """Exact identity unit*g == sum(cofactors[i]*generators[i]); unit(0) != 0."""

    unit: Poly
    cofactors: tuple

    def verify(self, g: Poly, generators) -> bool:
        lhs = self.unit * g
        rhs = g.ring.zero()
        for c, gen in zip(self.cofactors, generators):
            rhs = rhs + c * gen
        return lhs == rhs and bool(self.unit.constant_term())


def ideal_membership(g: Poly, sb: StandardBasis, certificate: bool = False):
    """Membership of g via normal form; optional cofactor certificate.

    The certificate is over sb.generators.  Under a local order the witness
    identity carries a polynomial unit u with u(0) != 0 (membership in the
    localization); under a global order the unit is the constant 1.
    """
    key = sb.ordering.key()
    if not certificate:
        return sb.contains(g), None
    h, unit, cofs = _normal_form(
        g, list(sb.generators), key, sb.ordering.is_local, track=True,
        max_steps=200000,
    )
    if not h.is_zero():
        return False, None
    return True, MembershipCertificate(unit=unit, cofactors=tuple(cofs))


# -- global-order machinery for saturation -------------------------------------


def _with_tag_variable(ring: Ring) -> Ring:
    tag = "t_"
    while tag in ring.names:
        tag += "_"
    return Ring(ring.char, ring.names + (tag,))


def _elim_key(m: Mono):
    # tag variable sits in the last slot and dominates; degrevlex below
    return (m[-1], degrevlex_key(m[:-1]))


def _lift(ring_t: Ring, f: Poly, tag_exp: int) -> Poly:
    return Poly(ring_t, {m + (tag_exp,): c for m, c in f.terms.items()})


def _drop_tag(ring: Ring, f: Poly) -> Poly:
    return Poly(ring, {m[:-1]: c for m, c in f.terms.items()})


def _gb_elim(gens_t: list) -> list:
    """Groebner basis under the tag-elimination order; plain Buchberger."""
    key = _elim_key
    basis = [_monic(g, key) for g in gens_t if not g.is_zero()]
    lms = [leading_monomial(g, key) for g in basis]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        pairs.sort(key=lambda ij: sum(mono_lcm(lms[ij[0]], lms[ij[1]])), reverse=True)
        i, j = pairs.pop()
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        s = basis[i].term_mul(mono_div(lcm, lms[i]), 1) - basis[j].term_mul(
            mono_div(lcm, lms[j]), 1
        )
        h, _, _ = _normal_form(s, basis, key, allow_stash=False)
        if h.is_zero():
            continue
        h = _monic(h, key)
        basis.append(h)
        lms.append(leading_monomial(h, key))
        new = len(basis) - 1
        pairs.extend((k, new) for k in range(new))
    return basis


def _exact_divide(h: Poly, g: Poly) -> Poly:
    """Quotient h/g for h in the principal ideal <g> (global division)."""
    ring = h.ring
    key = degrevlex_key
    lm_g = leading_monomial(g, key)
    lc_g = g.terms[lm_g]
    q = ring.zero()
    rem = h
    while not rem.is_zero():
        lm = leading_monomial(rem, key)
        if not mono_divides(lm_g, lm):
            raise ArithmeticError("exact division failed")
        c = ring.cmul(rem.terms[lm], ring.cinv(lc_g))
        t = mono_div(lm, lm_g)
        q = q + ring.monomial(t, c)
        rem = rem - g.term_mul(t, c)
    return q


def ideal_intersection_principal(gens: list, g: Poly) -> list:
    """Generators of I intersect <g>, via tag-variable elimination."""
    ring = gens[0].ring if gens else g.ring
    ring_t = _with_tag_variable(ring)
    lifted = [_lift(ring_t, p, 1) for p in gens]
    # (1 - t) * g
    tg = _lift(ring_t, g, 1)
    lifted.append(_lift(ring_t, g, 0) - tg)
    basis = _gb_elim(lifted)
    out = []
    for b in basis:
        if all(m[-1] == 0 for m in b.terms):
            out.append(_drop_tag(ring, b))
    return out


def ideal_quotient_principal(gens: list, g: Poly) -> list:
    """Generators of I : <g> = (I intersect <g>) / g."""
    inter = ideal_intersection_principal(gens, g)
    return [_exact_divide(h, g) for h in inter]


def saturate(gens: Iterable, g: Poly) -> list:
    """Generators of I : g^infinity by iterated quotient until stabilization.

    Works in the polynomial ring under the global degrevlex order.
    """
    if g.is_zero():
        raise ValueError("cannot saturate by zero")
    current = [p for p in gens if not p.is_zero()]
    if not current:
        return []
    while True:
        nxt = ideal_quotient_principal(current, g)
        nxt = [p for p in nxt if not p.is_zero()]
        if not nxt:
            return current
        gb = std_basis(current, GLOBAL)
        if all(gb.contains(p) for p in nxt):
            gb_min = [g2 for g2 in gb.generators]
            return gb_min
        current = nxt


def contains_one(gens: list) -> bool:
    """Is the ideal generated in the polynomial ring the unit ideal?"""
    gens = [p for p in gens if not p.is_zero()]
    if not gens:
        return False
    if any(not p.order() for p in gens):
        # a unit generator (global setting: nonzero constant implies 1 after GB
        # only if the constant survives; check directly below instead)
        pass
    gb = std_basis(gens, GLOBAL)
    return any(sum(lm) == 0 for lm in gb.leading_monomials)


# -- brute-force oracle ---------------------------------------------------------


def _row_reduce_dim(rows: list, p: int) -> int:
    """Rank of sparse rows (dicts col->coeff) over F_p or Q (p == 0)."""
    pivots = {}
    rank = 0
    for row in rows:
        r = dict(row)
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(r[col], p - 2, p) if p else 1 / r[col]
                if p:
                    r = {c: (v * inv) % p for c, v in r.items()}
                else:
                    r = {c: v * inv for c, v in r.items()}
                pivots[col] = r
                rank += 1
                break
            piv = pivots[col]
            factor = r[col]
            for c, v in piv.items():
                if p:
                    nv = (r.get(c, 0) - factor * v) % p
                else:
                    nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        # empty row contributes nothing
    return rank


def bruteforce_local_dim(gens: list, cutoff: int) -> int:
    """dim_K K[[x]]/(I + m^cutoff) by row-reducing truncated monomial multiples.

    Independent of the standard-basis engine: plain linear algebra over the
    monomials of degree < cutoff.
    """
    ring = gens[0].ring
    cols = []
    for d in range(cutoff):
        cols.extend(sorted(_monomials_of_degree(ring, d), key=degrevlex_key))
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        base = int(g.order())
        for d in range(cutoff - base):
            for gamma in _monomials_of_degree(ring, d):
                shifted = g.term_mul(gamma, 1)
                row = {
                    index[m]: c
                    for m, c in shifted.terms.items()
                    if sum(m) < cutoff
                }
                if row:
                    rows.append(row)
    if ring.char == 0:
        from fractions import Fraction

        rows = [{c: Fraction(v) for c, v in row.items()} for row in rows]
    rank = _row_reduce_dim(rows, ring.char)
    return len(cols) - rank


def bruteforce_vdim(gens: list, cap: int):
    """Quotient dimension by truncation until stabilization; INFINITY past cap.

    Stabilization dim(I + m^D) == dim(I + m^(D+1)) is exact for complete
    local rings, so a stabilized value is the true dimension.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITY
    prev = None
    for cutoff in range(1, cap + 2):
        cur = bruteforce_local_dim(gens, cutoff)
        if prev is not None and cur == prev:
            return cur
        if cur > cap:
            return INFINITY
        prev = cur
    return INFINITY
