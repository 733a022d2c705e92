"""Shifting, associated, co-recursive and perturbed sequences.

Also detectors that decide, to a finite depth, whether two recurrence
coefficient sources are related by a shift or a co-recursive perturbation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .algebra import Poly, RationalLike, to_rational
from .mps import CoefficientUnavailable, RecurrenceCoeffs, RegularityError, SeqPrefix

DEFAULT_DEPTH = 16


def shift(rc: RecurrenceCoeffs, A: RationalLike, B: RationalLike) -> RecurrenceCoeffs:
    """Coefficients of A^{-n} W_n(Ax + B)."""
    A, B = to_rational(A), to_rational(B)
    if A == 0:
        raise ValueError("shift requires A != 0")
    return RecurrenceCoeffs(
        lambda n: (rc.beta(n) - B) / A,
        lambda n: rc.gamma(n) / (A * A),
        limit=rc.limit,
        name=f"shift({rc.name}, {A}, {B})",
    )


def shift_poly(seq: SeqPrefix, A: RationalLike, B: RationalLike) -> SeqPrefix:
    A, B = to_rational(A), to_rational(B)
    if A == 0:
        raise ValueError("shift requires A != 0")
    inner = Poly((B, A))
    return SeqPrefix(tuple(w.compose(inner).scale(A ** -n) for n, w in enumerate(seq)))


def associated(rc: RecurrenceCoeffs, r: int) -> RecurrenceCoeffs:
    if r < 0:
        raise ValueError("associated order must be >= 0")
    if r == 0:
        return rc
    limit = None if rc.limit is None else max(rc.limit - r, 0)
    return RecurrenceCoeffs(
        lambda n: rc.beta(n + r),
        lambda n: rc.gamma(n + r),
        limit=limit,
        name=f"{rc.name}^({r})",
    )


def corecursive(rc: RecurrenceCoeffs, mu: RationalLike) -> RecurrenceCoeffs:
    mu = to_rational(mu)
    return RecurrenceCoeffs(
        lambda n: rc.beta(n) + mu if n == 0 else rc.beta(n),
        rc.gamma,
        limit=rc.limit,
        name=f"{rc.name}({mu})",
    )


@dataclass(frozen=True)
class PerturbationSpec:
    mu0: Fraction
    mu: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]

    def __init__(self, mu0: RationalLike, mu: Sequence[RationalLike], lam: Sequence[RationalLike]):
        object.__setattr__(self, "mu0", to_rational(mu0))
        object.__setattr__(self, "mu", tuple(to_rational(v) for v in mu))
        object.__setattr__(self, "lam", tuple(to_rational(v) for v in lam))
        if not self.mu or len(self.mu) != len(self.lam):
            raise ValueError("mu and lambda must both have length r >= 1")
        if any(v == 0 for v in self.lam):
            raise ValueError("lambda entries must be nonzero")
        if self.mu[-1] == 0 and self.lam[-1] == 1:
            raise ValueError("order-r perturbation needs mu_r != 0 or lambda_r != 1")

    @property
    def order(self) -> int:
        return len(self.mu)


def perturbed(rc: RecurrenceCoeffs, spec: PerturbationSpec) -> RecurrenceCoeffs:
    r = spec.order

    def beta(n):
        if n == 0:
            return rc.beta(0) + spec.mu0
        if n <= r:
            return rc.beta(n) + spec.mu[n - 1]
        return rc.beta(n)

    def gamma(n):
        if n <= r:
            return spec.lam[n - 1] * rc.gamma(n)
        return rc.gamma(n)

    return RecurrenceCoeffs(beta, gamma, limit=rc.limit, name=f"perturbed({rc.name}, r={r})")


# ---------------------------------------------------------------------------
# detection
# ---------------------------------------------------------------------------

def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Nonnegative rational square root, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _checkable(rcA: RecurrenceCoeffs, rcB: RecurrenceCoeffs, depth: int) -> int:
    return rcB.available(rcA.available(depth))


@dataclass(frozen=True)
class AffineRelation:
    """rcB = shift(rcA, A, B), verified on ``depth`` indices."""

    A: Fraction
    B: Fraction
    depth: int


@dataclass(frozen=True)
class CorecursiveRelation:
    """rcA = corecursive(rcB, mu), verified on ``depth`` indices."""

    mu: Fraction
    depth: int

    @property
    def identical(self) -> bool:
        return self.mu == 0


def detect_affine_relation(rcA: RecurrenceCoeffs, rcB: RecurrenceCoeffs, depth: int = DEFAULT_DEPTH) -> Optional[AffineRelation]:
    """Find (A, B) with rcB = shift(rcA, A, B), taking A > 0.

    A is only determined up to sign by the gamma ratio, and only over the
    rationals when that ratio is a rational square; otherwise None.
    """
    depth = _checkable(rcA, rcB, depth)
    if depth < 1:
        return None
    try:
        A = rational_sqrt(rcA.gamma(1) / rcB.gamma(1))
        if A is None or A == 0:
            return None
        B = rcA.beta(0) - A * rcB.beta(0)
        for n in range(depth):
            if rcB.beta(n) != (rcA.beta(n) - B) / A:
                return None
            if rcB.gamma(n + 1) != rcA.gamma(n + 1) / (A * A):
                return None
    except (RegularityError, CoefficientUnavailable):
        return None
    return AffineRelation(A, B, depth)


def detect_corecursive(rcA: RecurrenceCoeffs, rcB: RecurrenceCoeffs, depth: int = DEFAULT_DEPTH) -> Optional[CorecursiveRelation]:
    depth = _checkable(rcA, rcB, depth)
    if depth < 1:
        return None
    try:
        for n in range(1, depth):
            if rcA.beta(n) != rcB.beta(n):
                return None
        for n in range(1, depth + 1):
            if rcA.gamma(n) != rcB.gamma(n):
                return None
        mu = rcA.beta(0) - rcB.beta(0)
    except (RegularityError, CoefficientUnavailable):
        return None
    return CorecursiveRelation(mu, depth)


def same_recurrence(rcA: RecurrenceCoeffs, rcB: RecurrenceCoeffs, depth: int = DEFAULT_DEPTH) -> bool:
    rel = detect_corecursive(rcA, rcB, depth)
    return rel is not None and rel.identical
