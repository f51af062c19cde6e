"""Determinacy bounds and normal forms under right and contact equivalence.

The reduction eliminates the residual piecewise degree by degree.  At the
current degree the residual splits, through the stored echelon of that
graded piece, into surviving-basis terms (collected into the tail) and an
image combination b0*f_P + xi(f_P); the coordinate change x_i -> x_i - b_i
followed by multiplication with (1 + b0)^(-1) removes the image part and
strictly raises the residual valuation.  The loop stops once the residual
valuation passes the largest basis valuation: beyond it no basis monomial
exists, so the collected coefficients are complete and the remainder is
equivalent to zero by the filtered determinacy bound.

All series arithmetic is truncated at the determinacy window; replaying
the transformation log on the input reproduces the reported normal form
up to the reached valuation, making results self-certifying.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from possing.grading import (
    ConditionFailure,
    GradedAlgebra,
    Grading,
    RegularBasisResult,
    regular_basis,
)
from possing.localalg import (
    LOCAL,
    jacobian_ideal_gens,
    milnor,
    min_power_containment,
    std_basis,
    tjurina,
)
from possing.newton import CPolytope, initial_form, valuation_poly
from possing.poly import (
    INFINITY,
    Automorphism,
    Derivation,
    Poly,
    apply_transformation,
    degrevlex_key,
    unit_inverse,
)


@dataclass(frozen=True)
class DeterminacyReport:
    """Bounds on the determinacy degree of f."""

    mode: str  # "right" | "contact"
    generic_bound: object  # 2*mu - ord + 2 resp. 2*tau - ord + 2
    filtered_bound: Optional[int]  # from the basis valuations, when finite
    max_valuation: Optional[int]  # d = max over principal part and basis
    precondition_k0: Optional[int]  # minimal k with m^(k+2) in the tangent ideal


def _require_mode(mode: str):
    if mode not in ("right", "contact"):
        raise ValueError("mode must be 'right' or 'contact'")


def determinacy_generic(f: Poly, mode: str) -> int:
    """The order-based determinacy bound from the local invariant alone."""
    _require_mode(mode)
    inv = milnor(f) if mode == "right" else tjurina(f)
    if inv == INFINITY:
        raise ConditionFailure("infinite %s invariant; not finitely determined"
                               % ("Milnor" if mode == "right" else "Tjurina"))
    return 2 * int(inv) - int(f.order()) + 2


def _tangent_ideal_gens(f: Poly, mode: str) -> list:
    """Generators of m^2 . jacobian(f), plus m . <f> in contact mode."""
    ring = f.ring
    n = ring.nvars
    gens = []
    partials = [p for p in (f.partial(i) for i in range(n)) if not p.is_zero()]
    for i in range(n):
        for j in range(i, n):
            expo = tuple((1 if k == i else 0) + (1 if k == j else 0) for k in range(n))
            for p in partials:
                gens.append(p.term_mul(expo, 1))
    if mode == "contact":
        for i in range(n):
            gens.append(f.term_mul(tuple(1 if k == i else 0 for k in range(n)), 1))
    return gens


def precondition_constant(f: Poly, mode: str):
    """Minimal k with m^(k+2) inside m^2 jac(f) (right) or m<f> + m^2 jac(f)."""
    _require_mode(mode)
    gens = _tangent_ideal_gens(f, mode)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITY
    bound = min_power_containment(std_basis(gens, LOCAL))
    if bound == INFINITY:
        return INFINITY
    return max(int(bound) - 2, 0)


def determinacy_filtered(
    P: CPolytope, f: Poly, basis: RegularBasisResult, mode: str
) -> DeterminacyReport:
    """Filtration-refined determinacy: smallest k with m^(k+1) above level d.

    d is the largest valuation over the principal part and the regular
    basis; minimality uses that the least valuation of a degree-m monomial
    is m times the least variable valuation (the valuation is concave, so
    its minimum over the degree simplex sits at a vertex).
    """
    _require_mode(mode)
    if not basis.finite:
        raise ConditionFailure("infinite regular basis", witness=basis.witness_ray)
    d = max(valuation_poly(P, initial_form(P, f)), basis.max_valuation())
    minv = P.min_variable_value()
    k = -(-(d + 1) // minv) - 1  # ceil((d+1)/minv) - 1
    inv = milnor(f) if mode == "right" else tjurina(f)
    generic = 2 * int(inv) - int(f.order()) + 2 if inv != INFINITY else INFINITY
    k0 = precondition_constant(f, mode)
    return DeterminacyReport(
        mode=mode,
        generic_bound=generic,
        filtered_bound=k,
        max_valuation=d,
        precondition_k0=None if k0 == INFINITY else k0,
    )


@dataclass(frozen=True)
class NormalFormResult:
    """Principal part plus surviving tail, with a replayable transformation log."""

    mode: str
    principal_part: Poly
    tail: dict  # exponent -> coefficient, all on regular-basis monomials
    candidates: tuple  # basis monomials that could carry a coefficient
    transformations: tuple  # Automorphism per reduction step (unit included)
    residual_valuation: object  # first valuation past the tracked window
    window_degree: int  # total-degree truncation used throughout
    basis: RegularBasisResult
    precondition_k0: int

    def polynomial(self) -> Poly:
        out = self.principal_part
        ring = out.ring
        for m, c in sorted(self.tail.items(), key=lambda kv: degrevlex_key(kv[0])):
            out = out + ring.monomial(m, c)
        return out

    def tail_support(self) -> tuple:
        return tuple(sorted(self.tail, key=degrevlex_key))


def reduce_step(
    P: CPolytope,
    fP: Poly,
    current: Poly,
    d: int,
    mode: str,
    algebra: Optional[GradedAlgebra] = None,
    cutoff: Optional[int] = None,
):
    """One elimination step at piecewise degree d.

    Splits the degree-d part of current - fP into surviving basis terms
    (left in place) and an image combination, and applies the coordinate
    change plus unit that removes the image part.  Returns the transformed
    series and the applied transformation.
    """
    _require_mode(mode)
    ring = current.ring
    grmode = Grading.MILNOR_EXPECTED if mode == "right" else Grading.TJURINA_EXPECTED
    alg = algebra if algebra is not None else GradedAlgebra(P, fP, grmode)
    residual = current - fP
    if residual.is_zero():
        return current, Automorphism(offsets=tuple(ring.zero() for _ in range(ring.nvars)))
    if valuation_poly(P, residual) != d:
        raise ValueError("current residual does not sit at the requested degree")
    _, used = alg.solve(residual, d)
    b0 = ring.zero()
    bs = [ring.zero() for _ in range(ring.nvars)]
    for label, c in used.items():
        if label[0] == "mult":
            b0 = b0 + ring.monomial(label[1], c)
        else:
            _, axis, beta = label
            bs[axis] = bs[axis] + ring.monomial(beta, c)
    if cutoff is None:
        offset_deg = max([b.degree() for b in bs if b] + [1])
        cutoff = current.degree() * offset_deg + b0.degree() + 2
    unit = unit_inverse(ring.one() + b0, cutoff) if not b0.is_zero() else None
    phi = Automorphism(offsets=tuple(-b for b in bs), unit=unit)
    nxt = apply_transformation(current, phi, cutoff)
    return nxt, phi


class NormalFormRefusal(ConditionFailure):
    pass


def normal_form(
    P: CPolytope,
    f: Poly,
    mode: str,
    scan_bound: Optional[int] = None,
) -> NormalFormResult:
    """Reduce f to principal part plus coefficients on basis monomials.

    Requires the graded finiteness condition for the principal part (its
    failure raises NormalFormRefusal carrying the witness ray) and the
    containment of a power of the maximal ideal in the tangent ideal of f.
    """
    _require_mode(mode)
    if f.is_zero() or f.constant_term():
        raise ValueError("need a nonzero f without constant term")
    ring = f.ring
    fP = initial_form(P, f)
    grmode = Grading.MILNOR_EXPECTED if mode == "right" else Grading.TJURINA_EXPECTED
    alg = GradedAlgebra(P, fP, grmode)
    basis = regular_basis(P, fP, grmode, scan_bound=scan_bound, algebra=alg)
    if not basis.finite:
        raise NormalFormRefusal(
            "graded algebra of the principal part is infinite-dimensional",
            witness=basis.witness_ray,
        )
    k0 = precondition_constant(f, mode)
    if k0 == INFINITY:
        raise NormalFormRefusal("no power of the maximal ideal enters the tangent ideal")
    ordf = int(f.order())
    window = 2 * int(k0) - ordf + 2  # tail degrees live at or below this
    d0 = valuation_poly(P, fP)
    d1 = valuation_poly(P, f - fP)  # INFINITY when f is its own principal part
    dmax = max(d0, basis.max_valuation())
    # the arithmetic ceiling must keep every monomial of valuation <= dmax,
    # else low-valuation terms get clipped and the reduction loses exactness
    w_min = min(min(w) for w in P.weights)
    arith_window = max(window, -(-dmax // w_min), f.degree())
    candidates = tuple(
        m
        for m, v in basis.basis
        if v > d0 and (d1 == INFINITY or v >= d1) and sum(m) <= window
    )
    cur = f.truncate(arith_window)
    tail: dict = {}
    log = []
    while True:
        tail_poly = ring.poly(list(tail.items()))
        residual = cur - fP - tail_poly
        if residual.is_zero():
            residual_val = INFINITY
            break
        d = valuation_poly(P, residual)
        if d > dmax:
            residual_val = d
            break
        basis_coeffs, used = alg.solve(residual, d)
        # every level-d basis coefficient is collected; the theorem window
        # only licenses discarding high-degree ones from the final statement,
        # and skipping them here would stall the residual at this level
        tail.update(basis_coeffs)
        b0 = ring.zero()
        bs = [ring.zero() for _ in range(ring.nvars)]
        for label, c in used.items():
            if label[0] == "mult":
                b0 = b0 + ring.monomial(label[1], c)
            else:
                _, axis, beta = label
                bs[axis] = bs[axis] + ring.monomial(beta, c)
        if b0.is_zero() and all(b.is_zero() for b in bs):
            # purely basis terms at this degree; nothing to transform
            continue
        unit = unit_inverse(ring.one() + b0, arith_window) if not b0.is_zero() else None
        phi = Automorphism(offsets=tuple(-b for b in bs), unit=unit)
        log.append(phi)
        new_cur = apply_transformation(cur, phi, arith_window)
        new_residual = new_cur - fP - ring.poly(list(tail.items()))
        if not new_residual.is_zero() and valuation_poly(P, new_residual) <= d:
            raise AssertionError("reduction failed to raise the residual valuation")
        cur = new_cur
    tail = {m: c for m, c in tail.items() if c}
    return NormalFormResult(
        mode=mode,
        principal_part=fP,
        tail=tail,
        candidates=candidates,
        transformations=tuple(log),
        residual_valuation=residual_val,
        window_degree=arith_window,
        basis=basis,
        precondition_k0=int(k0),
    )


def replay(f: Poly, result: NormalFormResult) -> Poly:
    """Apply the logged transformations to f under the result's truncation."""
    cur = f.truncate(result.window_degree)
    for phi in result.transformations:
        cur = apply_transformation(cur, phi, result.window_degree)
    return cur


def replay_matches(P: CPolytope, f: Poly, result: NormalFormResult) -> bool:
    """Does replaying the log reproduce the normal form up to the reached valuation?"""
    transformed = replay(f, result)
    diff = transformed - result.polynomial()
    if diff.is_zero():
        return True
    if result.residual_valuation == INFINITY:
        return False
    return valuation_poly(P, diff) >= result.residual_valuation
