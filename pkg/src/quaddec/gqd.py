"""General quadratic decomposition of a monic polynomial sequence.

For omega(x) = x^2 + p x + q and a constant a, every MPS {W_n} splits as

    W_{2n}(x)   = P_n(omega(x)) + (x - a) a_{n-1}(omega(x))
    W_{2n+1}(x) = b_n(omega(x)) + (x - a) R_n(omega(x))

with {P_n}, {R_n} monic and deg a_n, deg b_n <= n (a_{-1} = 0).  Three
engines compute the components:

* :func:`gqd_direct` divides each W_k by omega (brute force, any MPS);
* :func:`gqd_structured` runs the component recurrences driven by the
  structure coefficients of W;
* :func:`gqd_orthogonal` runs the extended recurrences available when W
  is orthogonal; it never divides.

:func:`anbn_recurrence` is an independent cross-check for the secondary
components that does divide and so carries its own preconditions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import ONE, X, ZERO, Poly, RationalLike, format_rational, to_rational
from .mps import (
    OrthogonalityVerdict,
    RecurrenceCoeffs,
    SeqPrefix,
    StructureCoeffs,
    expand_in_basis,
    is_orthogonal,
)


class PreconditionError(ValueError):
    """A division in the secondary-only recurrences would be by zero."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(message)


@dataclass(frozen=True)
class QuadMap:
    p: Fraction
    q: Fraction
    a: Fraction

    def __init__(self, p: RationalLike = 0, q: RationalLike = 0, a: RationalLike = 0):
        object.__setattr__(self, "p", to_rational(p))
        object.__setattr__(self, "q", to_rational(q))
        object.__setattr__(self, "a", to_rational(a))

    @property
    def omega(self) -> Poly:
        return Poly((self.q, self.p, 1))

    def omega_at(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        return x * x + self.p * x + self.q

    @property
    def omega_a(self) -> Fraction:
        return self.omega_at(self.a)

    def to_json(self) -> dict:
        return {"p": format_rational(self.p), "q": format_rational(self.q), "a": format_rational(self.a)}


@dataclass
class GqdResult:
    """Components to ``depth``: P_0..P_d, R_0..R_d, b_0..b_d, a_{-1}..a_{d-1}.

    ``a_seq[k]`` holds a_{k-1}, so ``a_seq[0]`` is the a_{-1} = 0 slot.
    Use :meth:`a` and :meth:`b` for the usual a_n, b_n indexing.
    """

    P: SeqPrefix
    R: SeqPrefix
    a_seq: list[Poly]
    b_seq: list[Poly]
    depth: int
    qmap: QuadMap
    extras: dict = field(default_factory=dict)

    def a(self, n: int) -> Poly:
        return self.a_seq[n + 1]

    def b(self, n: int) -> Poly:
        return self.b_seq[n]

    def secondary_a(self) -> list[Poly]:
        """a_0 .. a_{d-1}."""
        return self.a_seq[1:]

    def same_components(self, other: "GqdResult") -> bool:
        d = min(self.depth, other.depth)
        return (
            self.P.polys[: d + 1] == other.P.polys[: d + 1]
            and self.R.polys[: d + 1] == other.R.polys[: d + 1]
            and self.a_seq[: d + 1] == other.a_seq[: d + 1]
            and self.b_seq[: d + 1] == other.b_seq[: d + 1]
        )

    def reconstruct(self) -> list[Poly]:
        """W_0..W_{2d+1} rebuilt from the components."""
        om = self.qmap.omega
        xa = X - self.qmap.a
        out = []
        for n in range(self.depth + 1):
            out.append(self.P[n].compose(om) + xa * self.a_seq[n].compose(om))
            out.append(self.b_seq[n].compose(om) + xa * self.R[n].compose(om))
        return out

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "R": self.R.to_json(),
            "a": [w.to_json() for w in self.a_seq],
            "b": [w.to_json() for w in self.b_seq],
            "depth": self.depth,
            "map": self.qmap.to_json(),
        }


# ---------------------------------------------------------------------------
# direct decomposition
# ---------------------------------------------------------------------------

def decompose_direct(f: Poly, qmap: QuadMap) -> tuple[Poly, Poly]:
    """Unique (g, h) with f(x) = g(omega(x)) + (x - a) h(omega(x))."""
    om = qmap.omega
    u, v = [], []
    rest = f
    while not rest.is_zero():
        rest, r = rest.divrem(om)
        u.append(r.coeff(0))
        v.append(r.coeff(1))
    g = Poly(uk + qmap.a * vk for uk, vk in zip(u, v))
    return g, Poly(v)


def gqd_direct(seq: SeqPrefix, qmap: QuadMap, depth: Optional[int] = None) -> GqdResult:
    max_depth = (len(seq) - 2) // 2
    if depth is None:
        depth = max_depth
    if depth > max_depth:
        raise ValueError(f"component depth {depth} needs W_{2 * depth + 1}, prefix stops at W_{seq.depth}")
    P, R, a_seq, b_seq = [], [], [], []
    for n in range(depth + 1):
        p_n, a_prev = decompose_direct(seq[2 * n], qmap)
        b_n, r_n = decompose_direct(seq[2 * n + 1], qmap)
        P.append(p_n)
        a_seq.append(a_prev)
        b_seq.append(b_n)
        R.append(r_n)
    return GqdResult(SeqPrefix(tuple(P)), SeqPrefix(tuple(R)), a_seq, b_seq, depth, qmap)


# ---------------------------------------------------------------------------
# structure-coefficient engine
# ---------------------------------------------------------------------------

def gqd_structured(sc: StructureCoeffs, qmap: QuadMap, depth: int) -> GqdResult:
    p, a = qmap.p, qmap.a
    x_om = X - qmap.omega_a
    P, R = [ONE], [ONE]
    a_seq = [ZERO]  # a_seq[k] = a_{k-1}
    b_seq = [Poly.constant(a - sc.beta(0))]
    for n in range(depth):
        chi_e = [sc.chi(2 * n, nu) for nu in range(2 * n + 1)]
        p_next = x_om * R[n] + b_seq[n].scale(a - sc.beta(2 * n + 1))
        a_n = b_seq[n] - R[n].scale(a + p + sc.beta(2 * n + 1))
        for nu in range(n + 1):
            c = chi_e[2 * nu]
            if c:
                p_next = p_next - P[nu].scale(c)
                a_n = a_n - a_seq[nu].scale(c)
        for nu in range(n):
            c = chi_e[2 * nu + 1]
            if c:
                p_next = p_next - b_seq[nu].scale(c)
                a_n = a_n - R[nu].scale(c)
        P.append(p_next)
        a_seq.append(a_n)

        chi_o = [sc.chi(2 * n + 1, nu) for nu in range(2 * n + 2)]
        b_next = p_next.scale(a - sc.beta(2 * n + 2)) + x_om * a_n
        r_next = p_next - a_n.scale(a + p + sc.beta(2 * n + 2))
        for nu in range(n + 1):
            c_odd, c_even = chi_o[2 * nu + 1], chi_o[2 * nu]
            if c_odd:
                b_next = b_next - b_seq[nu].scale(c_odd)
                r_next = r_next - R[nu].scale(c_odd)
            if c_even:
                b_next = b_next - P[nu].scale(c_even)
                r_next = r_next - a_seq[nu].scale(c_even)
        b_seq.append(b_next)
        R.append(r_next)
    return GqdResult(SeqPrefix(tuple(P)), SeqPrefix(tuple(R)), a_seq, b_seq, depth, qmap)


# ---------------------------------------------------------------------------
# extended coefficients and the orthogonal engine
# ---------------------------------------------------------------------------

class ExtendedCoeffs:
    """The eight extended-coefficient streams of the principal components.

    ``beta_P(n)`` for n >= 0; ``gamma_P``, ``varrho_P``, ``rho_P`` take
    their subscript n >= 1 directly (so ``gamma_P(n + 1)`` is
    gamma_{2n+1} gamma_{2n+2}).  Same for the R streams.
    """

    NAMES = ("beta_P", "gamma_P", "varrho_P", "rho_P", "beta_R", "gamma_R", "varrho_R", "rho_R")

    def __init__(self, rc: RecurrenceCoeffs, qmap: QuadMap):
        self.rc = rc
        self.qmap = qmap

    def beta_P(self, n: int) -> Fraction:
        b, g = self.rc.beta, self.rc.gamma
        p, a, wa = self.qmap.p, self.qmap.a, self.qmap.omega_a
        if n == 0:
            return g(1) + wa - (a - b(0)) * (a - b(1))
        m = n - 1
        return wa + g(2 * m + 2) + g(2 * m + 3) - (b(2 * m + 2) + a + p) * (a - b(2 * m + 2))

    def gamma_P(self, n: int) -> Fraction:
        g = self.rc.gamma
        return g(2 * n - 1) * g(2 * n)

    def varrho_P(self, n: int) -> Fraction:
        b = self.rc.beta
        return b(2 * n) + b(2 * n + 1) + self.qmap.p

    def rho_P(self, n: int) -> Fraction:
        b, g = self.rc.beta, self.rc.gamma
        return g(2 * n) * (b(2 * n - 1) + b(2 * n) + self.qmap.p)

    def beta_R(self, n: int) -> Fraction:
        b, g = self.rc.beta, self.rc.gamma
        p, a, wa = self.qmap.p, self.qmap.a, self.qmap.omega_a
        if n == 0:
            return wa + g(1) + g(2) - (a - b(0)) * (a - b(1)) - (p + b(0) + b(1)) * (b(2) + a + p)
        m = n - 1
        return wa + g(2 * m + 3) + g(2 * m + 4) - (b(2 * m + 3) + a + p) * (a - b(2 * m + 3))

    def gamma_R(self, n: int) -> Fraction:
        g = self.rc.gamma
        return g(2 * n) * g(2 * n + 1)

    def varrho_R(self, n: int) -> Fraction:
        b = self.rc.beta
        return b(2 * n + 1) + b(2 * n + 2) + self.qmap.p

    def rho_R(self, n: int) -> Fraction:
        b, g = self.rc.beta, self.rc.gamma
        return g(2 * n + 1) * (b(2 * n) + b(2 * n + 1) + self.qmap.p)

    def value(self, name: str, n: int) -> Fraction:
        return getattr(self, name)(n)

    def to_json(self, depth: int) -> dict:
        """beta streams from index 0, the others from index 1, ``depth`` values each."""
        out = {}
        for name in self.NAMES:
            start = 0 if name.startswith("beta") else 1
            out[name] = [format_rational(self.value(name, n)) for n in range(start, start + depth)]
        return out


def extended_coeffs(rc: RecurrenceCoeffs, qmap: QuadMap) -> ExtendedCoeffs:
    return ExtendedCoeffs(rc, qmap)


def gqd_orthogonal(rc: RecurrenceCoeffs, qmap: QuadMap, depth: int) -> GqdResult:
    ec = ExtendedCoeffs(rc, qmap)
    b, g = rc.beta, rc.gamma
    p, a = qmap.p, qmap.a
    x_om = X - qmap.omega_a
    P, R = [ONE], [ONE]
    a_list = [Poly.constant(-(p + b(0) + b(1)))]  # a_0, a_1, ...
    b_list = [Poly.constant(a - b(0))]
    if depth >= 1:
        P.append(X - ec.beta_P(0))
        R.append(X - ec.beta_R(0))
    for n in range(depth):
        # b_{n+1} needs P_{n+1}, a_n; a_{n+1} needs R_{n+1}, b_{n+1}
        b_list.append(
            b_list[n].scale(-g(2 * n + 2)) + P[n + 1].scale(a - b(2 * n + 2)) + x_om * a_list[n]
        )
        if n + 1 >= depth:
            break
        a_list.append(
            a_list[n].scale(-g(2 * n + 3)) - R[n + 1].scale(a + p + b(2 * n + 3)) + b_list[n + 1]
        )
        m = n + 1
        P.append(
            (X - ec.beta_P(m)) * P[n + 1]
            - P[n].scale(ec.gamma_P(m))
            - b_list[n + 1].scale(ec.varrho_P(m))
            - b_list[n].scale(ec.rho_P(m))
        )
        R.append(
            (X - ec.beta_R(m)) * R[n + 1]
            - R[n].scale(ec.gamma_R(m))
            - a_list[n + 1].scale(ec.varrho_R(m))
            - a_list[n].scale(ec.rho_R(m))
        )
    a_seq = [ZERO] + a_list[:depth]
    return GqdResult(SeqPrefix(tuple(P)), SeqPrefix(tuple(R)), a_seq, b_list[: depth + 1], depth, qmap)


# ---------------------------------------------------------------------------
# secondary-only recurrences
# ---------------------------------------------------------------------------

def anbn_precondition(rc: RecurrenceCoeffs, qmap: QuadMap, n: int) -> Fraction:
    return (qmap.a + qmap.p + rc.beta(2 * n + 1)) * (qmap.a - rc.beta(2 * n + 2))


def anbn_recurrence(rc: RecurrenceCoeffs, qmap: QuadMap, depth: int) -> tuple[list[Poly], list[Poly]]:
    """a_0..a_{d-1} and b_0..b_d from the recurrences in a_n, b_n alone.

    Raises :class:`PreconditionError` naming the first n at which
    (a + p + beta_{2n+1})(a - beta_{2n+2}) vanishes.
    """
    b, g = rc.beta, rc.gamma
    p, a = qmap.p, qmap.a
    x_om = X - qmap.omega_a

    def om(t):
        return qmap.omega_at(t)

    def check(n):
        if anbn_precondition(rc, qmap, n) == 0:
            raise PreconditionError(n, f"(a+p+beta_{2 * n + 1})(a-beta_{2 * n + 2}) = 0 at n={n}")

    a_list = [Poly.constant(-(p + b(0) + b(1)))]
    b_list = [Poly.constant(a - b(0))]
    if depth >= 1:
        b_list.append(
            x_om.scale(a - (p + b(0) + b(1) + b(2)))
            - g(1) * (a - b(2))
            - g(2) * (a - b(0))
            + (a - b(0)) * (a - b(1)) * (a - b(2))
        )
    # a_{n+1} uses b_{n+1}, b_n, a_n, a_{n-1}; b_{n+2} uses b_{n+1}, b_n, a_{n+1}, a_n
    for n in range(depth):
        if len(a_list) < depth:
            check(n)
            inv1 = 1 / (a - b(2 * n + 2))
            inv2 = 1 / (a + p + b(2 * n + 1))
            k3 = a + p + b(2 * n + 3)
            a_prev = a_list[n - 1] if n >= 1 else ZERO
            coef_a = (X - om(b(2 * n + 2))).scale(inv1 * k3) - (g(2 * n + 2) * inv2 * k3 + g(2 * n + 3))
            a_list.append(
                coef_a * a_list[n]
                - a_prev.scale(g(2 * n + 1) * g(2 * n + 2) * inv2 * k3)
                - b_list[n + 1].scale(inv1 * (p + b(2 * n + 2) + b(2 * n + 3)))
                - b_list[n].scale(g(2 * n + 2) * inv2 * inv1 * k3 * (p + b(2 * n + 1) + b(2 * n + 2)))
            )
        if len(b_list) < depth + 1:
            check(n + 1)
            inv3 = 1 / (a + p + b(2 * n + 3))
            inv4 = 1 / (a - b(2 * n + 2))
            k4 = a - b(2 * n + 4)
            coef_b = (X - om(b(2 * n + 3))).scale(inv3 * k4) - (g(2 * n + 3) * inv4 * k4 + g(2 * n + 4))
            b_list.append(
                coef_b * b_list[n + 1]
                - b_list[n].scale(g(2 * n + 2) * g(2 * n + 3) * inv4 * k4)
                + (x_om * a_list[n + 1]).scale(inv3 * (p + b(2 * n + 3) + b(2 * n + 4)))
                + (x_om * a_list[n]).scale(g(2 * n + 3) * inv4 * (p + b(2 * n + 2) + b(2 * n + 3)) * inv3 * k4)
            )
    return a_list[:depth], b_list[: depth + 1]


# ---------------------------------------------------------------------------
# lambda / theta tables and the orthogonality criteria
# ---------------------------------------------------------------------------

@dataclass
class LambdaThetaTables:
    lam: list[list[Fraction]]    # lam[n][nu]: a_n = sum lam[n][nu] R_nu
    theta: list[list[Fraction]]  # theta[n][nu]: b_n = sum theta[n][nu] P_nu

    def lam_at(self, n: int, nu: int) -> Fraction:
        return _tri(self.lam, n, nu)

    def theta_at(self, n: int, nu: int) -> Fraction:
        return _tri(self.theta, n, nu)

    def to_json(self) -> dict:
        return {
            "lambda": [[format_rational(v) for v in row] for row in self.lam],
            "theta": [[format_rational(v) for v in row] for row in self.theta],
        }


def _tri(rows, n, nu):
    if not 0 <= nu <= n:
        raise IndexError((n, nu))
    row = rows[n]
    return row[nu] if nu < len(row) else Fraction(0)


def lambda_theta(res: GqdResult) -> LambdaThetaTables:
    lam = []
    for n, an in enumerate(res.secondary_a()):
        c = expand_in_basis(an, res.R.polys)
        lam.append(c + [Fraction(0)] * (n + 1 - len(c)))
    theta = []
    for n, bn in enumerate(res.b_seq):
        c = expand_in_basis(bn, res.P.polys)
        theta.append(c + [Fraction(0)] * (n + 1 - len(c)))
    return LambdaThetaTables(lam, theta)


@dataclass(frozen=True)
class Prop4Verdict:
    orthogonal: bool
    depth: int
    witness: Optional[tuple[int, int]] = None
    gammas: tuple[Fraction, ...] = ()

    def __bool__(self) -> bool:
        return self.orthogonal


def prop4_check(rc: RecurrenceCoeffs, tables: LambdaThetaTables, qmap: QuadMap, depth: int,
                as_printed: bool = False) -> tuple[Prop4Verdict, Prop4Verdict]:
    """Orthogonality of P and R from the lambda/theta tables.

    Row n of the criterion uses theta^{n+1} (resp. lambda^{n+1}), so
    ``depth`` rows need b up to b_depth and a up to a_depth.  Pass the
    number of structure rows to compare with :func:`mps.is_orthogonal`.

    The theta^n coefficient of the P criterion is
    gamma_{2n+2}(beta_{2n+1} + beta_{2n+2} + p), matching rho^P_{n+1}.
    ``as_printed`` drops the gamma_{2n+2} factor, as the criterion is
    usually stated; that variant is kept only to exhibit the difference.
    """
    b, g = rc.beta, rc.gamma
    p = qmap.p

    def verdict(coef_next, coef_prev, base_gamma, table, rows):
        gammas = []
        for n in range(rows):
            k1, k2 = coef_next(n), coef_prev(n)
            for nu in range(n):
                if k1 * table(n + 1, nu) + k2 * table(n, nu) != 0:
                    return Prop4Verdict(False, rows, (n, nu))
            gam = base_gamma(n) + k1 * table(n + 1, n) + k2 * table(n, n)
            if gam == 0:
                return Prop4Verdict(False, rows, (n, n))
            gammas.append(gam)
        return Prop4Verdict(True, rows, None, tuple(gammas))

    vP = verdict(
        lambda n: b(2 * n + 2) + b(2 * n + 3) + p,
        lambda n: (1 if as_printed else g(2 * n + 2)) * (b(2 * n + 1) + b(2 * n + 2) + p),
        lambda n: g(2 * n + 1) * g(2 * n + 2),
        tables.theta_at,
        min(depth, len(tables.theta) - 1),
    )
    vR = verdict(
        lambda n: b(2 * n + 3) + b(2 * n + 4) + p,
        lambda n: g(2 * n + 3) * (b(2 * n + 2) + b(2 * n + 3) + p),
        lambda n: g(2 * n + 2) * g(2 * n + 3),
        tables.lam_at,
        min(depth, len(tables.lam) - 1),
    )
    return vP, vR


def corollary_check(ec: ExtendedCoeffs, depth: int) -> Optional[tuple[RecurrenceCoeffs, RecurrenceCoeffs]]:
    """Recurrence coefficients of P and R when every varrho, rho vanishes to ``depth``.

    A None result says nothing about orthogonality.
    """
    for n in range(1, depth + 1):
        if ec.varrho_P(n) or ec.rho_P(n) or ec.varrho_R(n) or ec.rho_R(n):
            return None
    rcP = RecurrenceCoeffs(ec.beta_P, ec.gamma_P, name="P")
    rcR = RecurrenceCoeffs(ec.beta_R, ec.gamma_R, name="R")
    return rcP, rcR


# ---------------------------------------------------------------------------
# secondary patterns and component classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SecondaryPattern:
    a_zero: bool
    b_zero: bool
    b_over_R: Optional[Fraction]  # c with b_n = c R_n for every n, if any
    depth: int

    @property
    def generic(self) -> bool:
        return not (self.a_zero or self.b_zero or self.b_over_R is not None)

    def to_json(self) -> dict:
        return {
            "a_zero": self.a_zero,
            "b_zero": self.b_zero,
            "b_over_R": None if self.b_over_R is None else format_rational(self.b_over_R),
            "generic": self.generic,
            "depth": self.depth,
        }


def _constant_multiple(seq: list[Poly], basis: SeqPrefix) -> Optional[Fraction]:
    c = None
    for n, s in enumerate(seq):
        cand = s.leading if s.degree == n else (Fraction(0) if s.is_zero() else None)
        if cand is None:
            return None
        if c is None:
            c = cand
        elif c != cand:
            return None
        if s != basis[n].scale(c):
            return None
    return c


def secondary_pattern(res: GqdResult) -> SecondaryPattern:
    a_zero = all(w.is_zero() for w in res.secondary_a())
    b_zero = all(w.is_zero() for w in res.b_seq)
    return SecondaryPattern(a_zero, b_zero, _constant_multiple(res.b_seq, res.R), res.depth)


@dataclass(frozen=True)
class ComponentVerdict:
    """Status of one component sequence.

    ``status`` is "orthogonal", "nonorthogonal" or "vanishing" (secondary
    sequences only).  ``witness`` explains a nonorthogonal verdict: a chi
    index pair, or ("degree", n) when a secondary polynomial lacks exact
    degree n.
    """

    status: str
    depth: int
    witness: Optional[tuple] = None
    beta: tuple[Fraction, ...] = ()
    gamma: tuple[Fraction, ...] = ()

    @classmethod
    def of_sequence(cls, seq: SeqPrefix) -> "ComponentVerdict":
        if len(seq) < 3:
            return cls("undetermined", len(seq) - 1)
        return cls.from_orthogonality(is_orthogonal(seq))

    @classmethod
    def from_orthogonality(cls, v: OrthogonalityVerdict) -> "ComponentVerdict":
        if v.orthogonal:
            return cls("orthogonal", v.depth, None, v.beta, v.gamma)
        return cls("nonorthogonal", v.depth, v.witness)

    def to_json(self) -> dict:
        out = {"status": self.status, "depth": self.depth}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.status == "orthogonal":
            out["beta"] = [format_rational(v) for v in self.beta]
            out["gamma"] = [format_rational(v) for v in self.gamma]
        return out


def classify_secondary(polys: list[Poly]) -> ComponentVerdict:
    """Vanishing, or orthogonality of the sequence made monic."""
    rows = max(len(polys) - 2, 0)
    if all(w.is_zero() for w in polys):
        return ComponentVerdict("vanishing", len(polys) - 1)
    for n, w in enumerate(polys):
        if w.degree != n:
            return ComponentVerdict("nonorthogonal", rows, ("degree", n))
    return ComponentVerdict.of_sequence(SeqPrefix(tuple(w.monic() for w in polys)))


@dataclass(frozen=True)
class Classification:
    P: ComponentVerdict
    R: ComponentVerdict
    a: ComponentVerdict
    b: ComponentVerdict
    pattern: SecondaryPattern

    def statuses(self) -> dict[str, str]:
        return {"P": self.P.status, "R": self.R.status, "a": self.a.status, "b": self.b.status}

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "R": self.R.to_json(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "pattern": self.pattern.to_json(),
        }


def classify(res: GqdResult) -> Classification:
    return Classification(
        ComponentVerdict.of_sequence(res.P),
        ComponentVerdict.of_sequence(res.R),
        classify_secondary(res.secondary_a()),
        classify_secondary(res.b_seq),
        secondary_pattern(res),
    )
