"""Structural classifiers: quasihomogeneity, semi-quasihomogeneity,
inner non-degeneracy, and the characteristic-zero Milnor==Tjurina test.

Inner non-degeneracy is decided ideal-theoretically: along every inner
face, for every coordinate zero-pattern the face meets, the partials of
the face-initial form with those variables set to zero may not have a
common zero with the remaining coordinates nonzero.  The saturation form
of that test is insensitive to field extension, so verdicts are valid
over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional

from possing.localalg import (
    LOCAL,
    contains_one,
    ideal_membership,
    jacobian_ideal_gens,
    milnor,
    saturate,
    std_basis,
    tjurina,
)
from possing.newton import CPolytope, Face, face_initial_form, inner_faces
from possing.poly import INFINITY, Poly, Ring


@dataclass(frozen=True)
class QHType:
    """Certificate of quasihomogeneity: positive weights of gcd 1 and degree."""

    weights: tuple
    degree: int


def _nullspace_basis(rows: list, n: int) -> list:
    """Rational basis of {w : rows . w = 0}."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    pivots = []
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
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -mat[r][fc]
        basis.append(vec)
    return basis


def _primitive_int(vec) -> tuple:
    from math import lcm

    denom = 1
    for c in vec:
        denom = lcm(denom, Fraction(c).denominator)
    ints = [int(Fraction(c) * denom) for c in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


_SEARCH_CAP = 120  # L1 cap for the minimal-weight search; past it the ray sum wins


def detect_qh(f: Poly) -> Optional[QHType]:
    """Weights putting the whole support on one positive hyperplane, if any.

    Among valid integer weight vectors (gcd 1) the one of least L1 norm is
    returned, ties broken lexicographically.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    support = sorted(f.support())
    n = f.ring.nvars
    base = support[0]
    rows = [[a - b for a, b in zip(alpha, base)] for alpha in support[1:]]
    # extreme rays of the solution cone within the closed orthant
    rays = []
    for keep in range(n, 0, -1):
        for zeros in combinations(range(n), n - keep):
            sys_rows = list(rows) + [
                [1 if i == z else 0 for i in range(n)] for z in zeros
            ]
            basis = _nullspace_basis(sys_rows, n)
            if len(basis) != 1:
                continue
            ray = _primitive_int(basis[0])
            if all(c <= 0 for c in ray):
                ray = tuple(-c for c in ray)
            if any(c < 0 for c in ray) or all(c == 0 for c in ray):
                continue
            if ray not in rays:
                rays.append(ray)
    if not rays:
        return None
    summed = tuple(sum(col) for col in zip(*rays))
    if any(c <= 0 for c in summed):
        return None
    w0 = _primitive_int(summed)
    bound = min(sum(w0), _SEARCH_CAP)
    best = None
    if sum(w0) <= _SEARCH_CAP:

        def rec(i, remaining, acc):
            nonlocal best
            if i == n - 1:
                w = acc + [remaining]
                if remaining >= 1 and all(
                    sum(r * wi for r, wi in zip(row, w)) == 0 for row in rows
                ):
                    cand = tuple(w)
                    key = (sum(cand), cand)
                    if best is None or key < (sum(best), best):
                        best = cand
                return
            for e in range(1, remaining - (n - 1 - i) + 1):
                rec(i + 1, remaining - e, acc + [e])

        for total in range(n, bound + 1):
            rec(0, total, [])
            if best is not None:
                break
    w = best if best is not None else w0
    g = 0
    for x in w:
        g = gcd(g, x)
    w = tuple(x // g for x in w)
    degree = sum(a * b for a, b in zip(w, base))
    return QHType(weights=w, degree=degree)


def weighted_initial_form(f: Poly, w) -> Poly:
    """Terms of minimal weighted degree under a single weight vector."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    vals = {m: sum(a * b for a, b in zip(w, m)) for m in f.terms}
    low = min(vals.values())
    return f.filter_terms(lambda m: vals[m] == low)


@dataclass(frozen=True)
class SQHReport:
    """Semi-quasihomogeneity of f along one weight vector."""

    mode: str  # "right" | "contact"
    weights: tuple
    degree: int  # weighted degree of the principal part
    principal_part: Poly
    principal_invariant: object  # Milnor resp. Tjurina number of the principal part
    semi: bool
    product_formula: Optional[int] = None  # prod(d/w_i - 1) in right mode
    formula_consistent: Optional[bool] = None

    def expected_milnor(self):
        return self.principal_invariant if self.mode == "right" else None


def sqh_check(f: Poly, w, mode: str) -> SQHReport:
    """Is f semi-quasihomogeneous for w, in the right or contact sense?

    Right mode evaluates the product formula prod(d/w_i - 1); when the
    principal part has finite Milnor number the formula value equals it
    (and equals the Milnor number of f itself).
    """
    if mode not in ("right", "contact"):
        raise ValueError("mode must be 'right' or 'contact'")
    w = tuple(int(c) for c in w)
    if any(c <= 0 for c in w):
        raise ValueError("weights must be positive")
    principal = weighted_initial_form(f, w)
    degree = min(sum(a * b for a, b in zip(w, m)) for m in principal.terms)
    if mode == "right":
        inv = milnor(principal)
        formula = None
        consistent = None
        if inv != INFINITY:
            value = Fraction(1)
            for wi in w:
                value *= Fraction(degree, wi) - 1
            formula = int(value) if value.denominator == 1 else None
            consistent = formula == inv
        return SQHReport(
            mode=mode,
            weights=w,
            degree=degree,
            principal_part=principal,
            principal_invariant=inv,
            semi=inv != INFINITY,
            product_formula=formula,
            formula_consistent=consistent,
        )
    inv = tjurina(principal)
    return SQHReport(
        mode=mode,
        weights=w,
        degree=degree,
        principal_part=principal,
        principal_invariant=inv,
        semi=inv != INFINITY,
    )


@dataclass(frozen=True)
class FaceCheck:
    face_vertices: tuple
    zero_pattern: tuple  # variable indices set to zero
    passed: bool


@dataclass(frozen=True)
class INNDReport:
    nondegenerate: bool
    checks: tuple  # FaceCheck per (inner face, pattern)
    failing: Optional[FaceCheck] = None


def _restrict_ring(ring: Ring, kept: list) -> Ring:
    return Ring(ring.char, tuple(ring.names[i] for i in kept))


def _substitute_zeros(p: Poly, ring_sub: Ring, kept: list, zeros: set) -> Poly:
    acc = []
    for m, c in p.terms.items():
        if any(m[i] for i in zeros):
            continue
        acc.append((tuple(m[i] for i in kept), c))
    return ring_sub.poly(acc)


def innd_check(f: Poly, P: CPolytope) -> INNDReport:
    """Inner non-degeneracy of f with respect to P.

    For every inner face and every zero-pattern its vertices meet, the
    substituted partials of the face-initial form must generate, after
    saturation by the product of the surviving variables, the unit ideal.
    """
    if f.is_zero() or f.constant_term():
        raise ValueError("need a nonzero f without constant term")
    ring = f.ring
    n = ring.nvars
    checks = []
    failing = None
    for face in inner_faces(P):
        in_face = face_initial_form(P, face, f)
        partials = [in_face.partial(i) for i in range(n)]
        patterns = set()
        for v in face.vertices:
            zero_set = tuple(i for i in range(n) if v[i] == 0)
            for r in range(len(zero_set) + 1):
                for sub in combinations(zero_set, r):
                    patterns.add(sub)
        for pattern in sorted(patterns):
            zeros = set(pattern)
            kept = [i for i in range(n) if i not in zeros]
            ring_sub = _restrict_ring(ring, kept)
            gens = [
                q
                for q in (_substitute_zeros(p, ring_sub, kept, zeros) for p in partials)
                if not q.is_zero()
            ]
            if not gens:
                ok = False
            else:
                prod = ring_sub.one()
                for i in range(len(kept)):
                    prod = prod * ring_sub.var(i)
                sat = saturate(gens, prod)
                ok = contains_one(sat)
            check = FaceCheck(
                face_vertices=tuple(tuple(str(c) for c in v) for v in face.vertices),
                zero_pattern=pattern,
                passed=ok,
            )
            checks.append(check)
            if not ok and failing is None:
                failing = check
    return INNDReport(
        nondegenerate=failing is None, checks=tuple(checks), failing=failing
    )


def saito_check(f: Poly) -> bool:
    """Characteristic zero only: does the Milnor number equal the Tjurina number?

    Computed both numerically and through membership of f in its own
    Jacobian ideal; the two verdicts must agree.
    """
    if f.ring.char != 0:
        raise ValueError("the Milnor==Tjurina criterion is a characteristic-zero test")
    mu = milnor(f)
    if mu == INFINITY:
        raise ValueError("requires an isolated singularity (finite Milnor number)")
    tau = tjurina(f)
    sb = std_basis(jacobian_ideal_gens(f), LOCAL)
    member, _ = ideal_membership(f, sb)
    if (mu == tau) != member:
        raise AssertionError("numeric and membership verdicts disagree")
    return mu == tau
