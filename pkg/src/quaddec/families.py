"""Catalog of classical sequences and their published GQD results.

Each family maps rational parameters to recurrence coefficients.  Alongside
the coefficients the catalog carries, as data, the published closed forms
of the extended coefficients and the published orthogonality verdicts for
the seven standard (p, q, a) cases.  These are oracles: the engine never
reads them, the verifier compares against them.

Known defects in the published tables are kept verbatim in the formulas
and listed in ``ERRATA``; the verifier reports them instead of hiding them.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Optional

from .algebra import RationalLike, format_rational, to_rational
from .gqd import ExtendedCoeffs, QuadMap
from .mps import RecurrenceCoeffs, RegularityError

F = Fraction
HALF = F(1, 2)
QUARTER = F(1, 4)

CASES = ("a=p=q=0", "p=q=0", "a=p=0", "a=q=0", "p=0", "a=0", "q=0")
SPECIAL_CASE = "p=0,q=-1/2"


class UnknownFamily(KeyError):
    pass


class CaseNotTabulated(KeyError):
    pass


# ---------------------------------------------------------------------------
# recurrence coefficients
# ---------------------------------------------------------------------------

def _hermite(_):
    return (lambda n: 0), (lambda n: F(n, 2))


def _gen_hermite(P):
    mu = P["mu"]
    # gamma_{n+1} = (n + 1 + mu(1 + (-1)^n)) / 2
    return (lambda n: 0), (lambda n: (n + mu * (1 + (-1) ** (n - 1))) / 2)


def _laguerre(P):
    al = P["alpha"]
    return (lambda n: 2 * n + al + 1), (lambda n: n * (n + al))


def _charlier(P):
    al = P["alpha"]
    return (lambda n: n + al), (lambda n: n * al)


def _bessel(P):
    al = P["alpha"]

    def beta(n):
        if n == 0:
            return -1 / al
        return (1 - al) / ((n - 1 + al) * (n + al))

    def gamma(m):
        n = m - 1
        return -F(n + 1) * (n + 2 * al - 1) / ((2 * n + 2 * al - 1) * (n + al) ** 2 * (2 * n + 2 * al + 1))

    return beta, gamma


def _jacobi(P):
    al, be = P["alpha"], P["beta"]
    s = al + be

    def beta(n):
        if n == 0:
            return (al - be) / (s + 2)
        return (al * al - be * be) / ((2 * n + s + 1) * (2 * n + s + 2) ** 2 * (2 * n + s + 3))

    def gamma(m):
        n = m - 1
        return 4 * (n + 1) * (n + s + 1) * (n + al + 1) * (n + be + 1) / (
            (2 * n + s + 1) * (2 * n + s + 2) ** 2 * (2 * n + s + 3))

    return beta, gamma


def _gegenbauer(P):
    al = P["alpha"]

    def gamma(m):
        n = m - 1
        return F(n + 1) * (n + 2 * al + 1) / ((2 * n + 2 * al + 1) * (2 * n + 2 * al + 3))

    return (lambda n: 0), gamma


def _legendre(_):
    return (lambda n: 0), (lambda m: F(4 * m ** 4, (2 * m - 1) * (2 * m) ** 2 * (2 * m + 1)))


def _cheb1(_):
    return (lambda n: 0), (lambda m: HALF if m == 1 else QUARTER)


def _cheb2(_):
    return (lambda n: 0), (lambda m: QUARTER)


def _cheb3(_):
    return (lambda n: HALF if n == 0 else 0), (lambda m: QUARTER)


def _cheb4(_):
    return (lambda n: -HALF if n == 0 else 0), (lambda m: QUARTER)


def _constant(P):
    b, g = P["beta"], P["gamma"]
    return (lambda n: b), (lambda m: g)


def _symmetric_semiclassical(P):
    al, be = P["alpha"], P["beta"]
    s = al + be

    def gamma(m):
        if m % 2 == 1:
            n = (m - 1) // 2
            return (be + n + 1) * (s + n + 1) / ((s + 2 * n + 1) * (s + 2 * n + 2))
        n = (m - 2) // 2
        return (n + 1) * (al + n + 1) / ((s + 2 * n + 2) * (s + 2 * n + 3))

    return (lambda n: 0), gamma


# ---------------------------------------------------------------------------
# published extended coefficients
#
# Keys: beta_P0 / beta_R0 are the n = 0 formulas; every other entry is the
# published "n+1" formula as a function of n.
# ---------------------------------------------------------------------------

def _x_hermite(P, p, q, a):
    return {
        "beta_P0": lambda: HALF + a * p + q,
        "beta_P": lambda n: HALF + 2 * (n + 1) + q,
        "gamma_P": lambda n: HALF * (n + 1) * (2 * n + 1),
        "varrho_P": lambda n: p,
        "rho_P": lambda n: (n + 1) * p,
        "beta_R0": lambda: F(3, 2) - p * p + q,
        "beta_R": lambda n: F(3, 2) + 2 * (n + 1) + q,
        "gamma_R": lambda n: HALF * (n + 1) * (2 * n + 3),
        "varrho_R": lambda n: p,
        "rho_R": lambda n: (n + F(3, 2)) * p,
    }


def _x_gen_hermite(P, p, q, a):
    mu = P["mu"]
    return {
        "beta_P0": lambda: HALF + a * p + q + mu,
        "beta_P": lambda n: F(5, 2) + 2 * n + q + mu,
        "gamma_P": lambda n: HALF * (n + 1) * (2 * n + 2 * mu + 1),
        "varrho_P": lambda n: p,
        "rho_P": lambda n: p * (n + 1),
        "beta_R0": lambda: F(3, 2) - p * p + q + mu,
        "beta_R": lambda n: F(7, 2) + 2 * n + q + mu,
        "gamma_R": lambda n: HALF * (n + 1) * (2 * n + 2 * mu + 3),
        "varrho_R": lambda n: p,
        "rho_R": lambda n: HALF * p * (2 * n + 2 * mu + 3),
    }


def _x_charlier(P, p, q, a):
    al = P["alpha"]
    return {
        "beta_P0": lambda: a * (p + 2 * al + 1) - al ** 2,
        "beta_P": lambda n: 4 * n ** 2 + 2 * n * (p + 4 * al + 4) + p * (al + 2) + al ** 2 + 9 * al + 4,
        "gamma_P": lambda n: 2 * (n + 1) * (2 * n + 1) * al ** 2,
        "varrho_P": lambda n: 4 * n + p + 2 * al + 5,
        "rho_P": lambda n: 2 * (n + 1) * al * (4 * n + p + 2 * al + 3),
        "beta_R0": lambda: -p ** 2 - 3 * p * (al + 1) - 3 * al ** 2 - 3 * al - 2,
        "beta_R": lambda n: 4 * n ** 2 + 2 * n * (p + 4 * al + 6) + p * (al + 3) + al ** 2 + 13 * al + 9,
        "gamma_R": lambda n: 2 * (n + 1) * (2 * n + 3) * al ** 2,
        "varrho_R": lambda n: 4 * n + p + 2 * al + 7,
        "rho_R": lambda n: (2 * n + 3) * al * (4 * n + p + 2 * al + 5),
    }


def _x_laguerre(P, p, q, a):
    al = P["alpha"]
    return {
        "beta_P0": lambda: -2 + q - 3 * al - al ** 2 + a * (4 + p + 2 * al),
        "beta_P": lambda n: 2 + p + q + al * (3 + p + al) + 4 * (n + 1) * (9 + 6 * n + p + 3 * al),
        "gamma_P": lambda n: 2 * (n + 1) * (2 * n + 1) * (2 * n + al + 1) * (2 * n + al + 2),
        "varrho_P": lambda n: 8 * n + p + 2 * (al + 6),
        "rho_P": lambda n: 2 * (n + 1) * (2 * n + al + 2) * (8 + 8 * n + p + 2 * al),
        "beta_R0": lambda: -p ** 2 + q - 3 * p * (3 + al) - 3 * (6 + 5 * al + al ** 2),
        "beta_R": lambda n: 14 + q + 3 * p + al * (al + 9 + p) + 4 * (n + 1) * (6 * n + 15 + p + 3 * al),
        "gamma_R": lambda n: 2 * (1 + n) * (3 + 2 * n) * (2 + 2 * n + al) * (3 + 2 * n + al),
        "varrho_R": lambda n: 8 * n + p + 2 * (8 + al),
        "rho_R": lambda n: (3 + 2 * n) * (3 + 2 * n + al) * (8 * n + p + 2 * (6 + al)),
    }


def _x_bessel(P, p, q, a):
    al = P["alpha"]

    def beta_P(n):
        num = (64 * n ** 4 * q + 64 * n ** 3 * q * (2 * al + 3)
               + 4 * n ** 2 * (-4 * p * (al - 1) + q * (24 * al ** 2 + 72 * al + 49) - 2)
               + 2 * n * (2 * al + 3) * (-4 * p * (al - 1) + q * (8 * al ** 2 + 24 * al + 13) - 2)
               + p * (-4 * al ** 3 - 8 * al ** 2 + 7 * al + 5)
               + 4 * q * al ** 4 + 24 * q * al ** 3 + 49 * q * al ** 2 + 39 * q * al + 10 * q
               + 4 * al ** 2 - 18 * al + 2)
        return num / ((2 * n + al + 1) * (2 * n + al + 2) * (4 * n + 2 * al + 1) * (4 * n + 2 * al + 5))

    def beta_R(n):
        num = (-6 + 126 * q + 64 * n ** 4 * q - 22 * al + 225 * q * al + 4 * al ** 2 + 145 * q * al ** 2
               + 40 * q * al ** 3 + 4 * q * al ** 4 + 64 * n ** 3 * q * (5 + 2 * al)
               - p * (-21 + al + 16 * al ** 2 + 4 * al ** 3)
               + 2 * n * (5 + 2 * al) * (-2 - 4 * p * (-1 + al) + q * (45 + 40 * al + 8 * al ** 2))
               + 4 * n ** 2 * (-2 - 4 * p * (-1 + al) + q * (145 + 120 * al + 24 * al ** 2)))
        return num / ((2 + 2 * n + al) * (3 + 2 * n + al) * (3 + 4 * n + 2 * al) * (7 + 4 * n + 2 * al))

    return {
        "beta_P0": lambda: (-2 + q + 3 * q * al + 2 * q * al ** 2 + a * (1 + 2 * al) * (-2 + p + p * al))
        / (1 + 3 * al + 2 * al ** 2),
        "beta_P": beta_P,
        "gamma_P": lambda n: 4 * (n + 1) * (2 * n + 1) * (n + al) * (2 * n + 2 * al - 1) / (
            (4 * n + 2 * al - 1) * (4 * n + 2 * al + 1) ** 2 * (4 * n + 2 * al + 3)
            * (4 * n ** 2 + 4 * n * al + 2 * n + al ** 2 + al) ** 2),
        "varrho_P": lambda n: (2 - 2 * al + p * (3 + 4 * n ** 2 + 4 * al + al ** 2 + 4 * n * (2 + al)))
        / ((1 + 2 * n + al) * (3 + 2 * n + al)),
        "rho_P": lambda n: -4 * (1 + n) * (n + al) * (2 + 4 * n ** 2 * p + 2 * (-1 + p) * al + p * al ** 2
                                                      + 4 * n * p * (1 + al))
        / ((2 * n + al) * (1 + 2 * n + al) ** 2 * (2 + 2 * n + al) * (1 + 4 * n + 2 * al) * (3 + 4 * n + 2 * al)),
        "beta_R0": lambda: (-6 + p * (9 + 6 * al) - p ** 2 * (6 + 7 * al + 2 * al ** 2) + q * (6 + 7 * al + 2 * al ** 2))
        / (6 + 7 * al + 2 * al ** 2),
        "beta_R": beta_R,
        "gamma_R": lambda n: 4 * (1 + n) * (3 + 2 * n) * (n + al) * (1 + 2 * n + 2 * al) / (
            (1 + 4 * n + 2 * al) * (3 + 4 * n + 2 * al) ** 2 * (5 + 4 * n + 2 * al)
            * (2 + 4 * n ** 2 + 3 * al + al ** 2 + n * (6 + 4 * al)) ** 2),
        "varrho_R": lambda n: (p * (4 * n ** 2 + 4 * n * (al + 3) + al ** 2 + 6 * al + 8) - 2 * al + 2)
        / ((2 * n + al + 2) * (2 * n + al + 4)),
        "rho_R": lambda n: -(3 + 2 * n) * (1 + 2 * n + 2 * al)
        * (2 - 2 * al + p * (3 + 4 * n ** 2 + 4 * al + al ** 2 + 4 * n * (2 + al)))
        / ((1 + 2 * n + al) * (2 + 2 * n + al) ** 2 * (3 + 2 * n + al) * (3 + 4 * n + 2 * al) * (5 + 4 * n + 2 * al)),
    }


def _x_jacobi(P, p, q, a):
    al, be = P["alpha"], P["beta"]
    s = al + be
    wa = a * a + p * a + q

    def X(k):
        # (alpha - beta)(alpha + beta) / ((k+s)(k+1+s)^2(k+2+s)), a recurring printed block
        return (al - be) * (al + be) / ((k + s) * (k + 1 + s) ** 2 * (k + 2 + s))

    def Y(k):
        return (-al ** 2 + be ** 2) / ((k + s) * (k + 1 + s) ** 2 * (k + 2 + s))

    return {
        "beta_P0": lambda: wa + 4 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
        - (a + (-al + be) / (2 + s)) * (a + Y(3)),
        "beta_P": lambda n: wa
        + 8 * (1 + n) * (2 + 2 * n + al) * (2 + 2 * n + be) * (2 + 2 * n + s)
        / ((3 + 4 * n + s) * (4 + 4 * n + s) ** 2 * (5 + 4 * n + s))
        + 4 * (3 + 2 * n) * (3 + 2 * n + al) * (3 + 2 * n + be) * (3 + 2 * n + s)
        / ((5 + 4 * n + s) * (6 + 4 * n + s) ** 2 * (7 + 4 * n + s))
        - (a + p + X(4 * n + 5)) * (a + Y(4 * n + 5)),
        "gamma_P": lambda n: 32 * (1 + n) * (1 + 2 * n) * (1 + 2 * n + al) * (2 + 2 * n + al) * (1 + 2 * n + be)
        * (2 + 2 * n + be) * (1 + 2 * n + s) * (2 + 2 * n + s)
        / ((1 + 4 * n + s) * (2 + 4 * n + s) ** 2 * (3 + 4 * n + s) ** 2 * (4 + 4 * n + s) ** 2 * (5 + 4 * n + s)),
        "varrho_P": lambda n: p + X(4 * n + 5) + X(4 * n + 7),
        "rho_P": lambda n: 8 * (1 + n) * (2 + 2 * n + al) * (2 + 2 * n + be) * (2 + 2 * n + s)
        * (p + X(4 * n + 3) + X(4 * n + 5)) / ((3 + 4 * n + s) * (4 + 4 * n + s) ** 2 * (5 + 4 * n + s)),
        "beta_R0": lambda: wa + 4 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
        + 8 * (2 + al) * (2 + be) * (2 + s) / ((3 + s) * (4 + s) ** 2 * (5 + s))
        - (p + (al - be) / (2 + s) + X(3)) * (a + p + X(5))
        - (a + (-al + be) / (2 + s)) * (a + Y(3)),
        "beta_R": lambda n: wa
        + 4 * (3 + 2 * n) * (3 + 2 * n + al) * (3 + 2 * n + be) * (3 + 2 * n + s)
        / ((5 + 4 * n + s) * (6 + 4 * n + s) ** 2 * (7 + 4 * n + s))
        + 8 * (2 + n) * (4 + 2 * n + al) * (4 + 2 * n + be) * (4 + 2 * n + s)
        / ((7 + 4 * n + s) * (8 + 4 * n + s) ** 2 * (9 + 4 * n + s))
        - (a + p + X(4 * n + 7)) * (a + Y(4 * n + 7)),
        "gamma_R": lambda n: 32 * (1 + n) * (3 + 2 * n) * (2 + 2 * n + al) * (3 + 2 * n + al) * (2 + 2 * n + be)
        * (3 + 2 * n + be) * (2 + 2 * n + s) * (3 + 2 * n + s)
        / ((3 + 4 * n + s) * (4 + 4 * n + s) ** 2 * (5 + 4 * n + s) ** 2 * (6 + 4 * n + s) ** 2 * (7 + 4 * n + s)),
        "varrho_R": lambda n: p + X(4 * n + 7) + X(4 * n + 9),
        "rho_R": lambda n: 4 * (2 * n + 3) * (2 * n + al + 3) * (2 * n + be + 3) * (2 * n + s + 3)
        * (p + X(4 * n + 5) + X(4 * n + 7)) / ((4 * n + s + 5) * (4 * n + s + 6) ** 2 * (4 * n + s + 7)),
    }


def _x_gegenbauer(P, p, q, a):
    al = P["alpha"]
    return {
        "beta_P0": lambda: a * p + q + 1 / (3 + 2 * al),
        "beta_P": lambda n: (11 + 8 * n ** 2 * (1 + 2 * q) + 10 * al + 4 * n * (1 + 2 * q) * (5 + 2 * al)
                             + q * (21 + 20 * al + 4 * al ** 2))
        / (21 + 16 * n ** 2 + 20 * al + 4 * al ** 2 + 8 * n * (5 + 2 * al)),
        "gamma_P": lambda n: 4 * (1 + n) * (1 + 2 * n) * (1 + n + al) * (1 + 2 * n + 2 * al)
        / ((3 + 4 * n + 2 * al) ** 2 * (5 + 16 * n ** 2 + 12 * al + 4 * al ** 2 + 8 * n * (3 + 2 * al))),
        "varrho_P": lambda n: p,
        "rho_P": lambda n: 4 * p * (1 + n) * (1 + n + al) / (15 + 16 * n ** 2 + 16 * al + 4 * al ** 2 + 16 * n * (2 + al)),
        "beta_R0": lambda: (3 - p ** 2 * (5 + 2 * al) + q * (5 + 2 * al)) / (5 + 2 * al),
        "beta_R": lambda n: (23 + 8 * n ** 2 * (1 + 2 * q) + 14 * al + 4 * n * (1 + 2 * q) * (7 + 2 * al)
                             + q * (45 + 28 * al + 4 * al ** 2))
        / (45 + 16 * n ** 2 + 28 * al + 4 * al ** 2 + 8 * n * (7 + 2 * al)),
        "gamma_R": lambda n: 4 * (1 + n) * (3 + 2 * n) * (1 + n + al) * (3 + 2 * n + 2 * al)
        / ((5 + 4 * n + 2 * al) ** 2 * (21 + 16 * n ** 2 + 20 * al + 4 * al ** 2 + 8 * n * (5 + 2 * al))),
        "varrho_R": lambda n: p,
        "rho_R": lambda n: p * (3 + 2 * n) * (3 + 2 * n + 2 * al) / (35 + 16 * n ** 2 + 24 * al + 4 * al ** 2 + 16 * n * (3 + al)),
    }


def _x_legendre(P, p, q, a):
    return {
        "beta_P0": lambda: F(1, 3) + a * p + q,
        "beta_P": lambda n: (11 + 21 * q + 20 * n * (1 + 2 * q) + 8 * n ** 2 * (1 + 2 * q)) / F(21 + 40 * n + 16 * n ** 2),
        "gamma_P": lambda n: F(4 * (1 + n) ** 2 * (1 + 2 * n) ** 2, (3 + 4 * n) ** 2 * (5 + 24 * n + 16 * n ** 2)),
        "varrho_P": lambda n: p,
        "rho_P": lambda n: p * F(4 * (1 + n) ** 2, 15 + 32 * n + 16 * n ** 2),
        "beta_R0": lambda: F(3, 5) - p * p + q,
        "beta_R": lambda n: (23 + 45 * q + 28 * n * (1 + 2 * q) + 8 * n ** 2 * (1 + 2 * q)) / F(45 + 56 * n + 16 * n ** 2),
        "gamma_R": lambda n: F(4 * (1 + n) ** 2 * (3 + 2 * n) ** 2, (5 + 4 * n) ** 2 * (21 + 40 * n + 16 * n ** 2)),
        "varrho_R": lambda n: p,
        "rho_R": lambda n: p * F((3 + 2 * n) ** 2, 35 + 48 * n + 16 * n ** 2),
    }


def _x_chebyshev(beta_P0, beta_R0):
    def block(P, p, q, a):
        return {
            "beta_P0": lambda: beta_P0(p, q, a),
            "beta_P": lambda n: HALF + q,
            "gamma_P": lambda n: F(1, 16),
            "varrho_P": lambda n: p,
            "rho_P": lambda n: p / 4,
            "beta_R0": lambda: beta_R0(p, q, a),
            "beta_R": lambda n: HALF + q,
            "gamma_R": lambda n: F(1, 16),
            "varrho_R": lambda n: p,
            "rho_R": lambda n: p / 4,
        }

    return block


_x_cheb1 = _x_chebyshev(lambda p, q, a: HALF + a * p + q, lambda p, q, a: F(3, 4) - p * p + q)
_x_cheb2 = _x_chebyshev(lambda p, q, a: QUARTER + a * p + q, lambda p, q, a: HALF - p * p + q)
_x_cheb3 = _x_chebyshev(lambda p, q, a: a * (p + HALF) + q + QUARTER, lambda p, q, a: HALF - p * (HALF + p) + q)
_x_cheb4 = _x_chebyshev(lambda p, q, a: a * (p - HALF) + q + QUARTER, lambda p, q, a: HALF * (-2 * p * p + p + 2 * q + 1))


def _x_constant(P, p, q, a):
    b, g = P["beta"], P["gamma"]
    return {
        "beta_P0": lambda: q + g - b * b + a * (p + 2 * b),
        "beta_P": lambda n: q + 2 * g + b * (p + b),
        "gamma_P": lambda n: g * g,
        "varrho_P": lambda n: p + 2 * b,
        "rho_P": lambda n: g * (p + 2 * b),
        "beta_R0": lambda: q + 2 * g - 3 * b * (p + b) - p * p,
        "beta_R": lambda n: q + 2 * g + b * (p + b),
        "gamma_R": lambda n: g * g,
        "varrho_R": lambda n: p + 2 * b,
        "rho_R": lambda n: g * (p + 2 * b),
    }


def _x_symmetric_semiclassical(P, p, q, a):
    al, be = P["alpha"], P["beta"]
    s = al + be
    return {
        "beta_P0": lambda: a * p + q + (be + 1) / (s + 2),
        "beta_P": lambda n: a * a + a * p - a * (a + p) + q + (n + 1) * (n + al + 1) / ((2 * n + s + 2) * (2 * n + s + 3))
        + (n + be + 2) * (n + s + 2) / ((2 * n + s + 3) * (2 * n + s + 4)),
        "gamma_P": lambda n: (n + 1) * (n + 1) * (n + al + 1) * (n + al + 1)
        / ((2 * n + s + 1) * (2 * n + s + 2) ** 2 * (2 * n + s + 3)),
        "varrho_P": lambda n: p,
        "rho_P": lambda n: p * (n + 1) * (n + al + 1) / ((2 * n + s + 2) * (2 * n + s + 3)),
        "beta_R0": lambda: (-p ** 2 * (s + 3) + q * (s + 3) + be + 2) / (s + 3),
        "beta_R": lambda n: (n ** 2 * (4 * q + 2) + 2 * n * (2 * q + 1) * (s + 4) + al * be + 4 * al + be ** 2 + 5 * be + 8)
        / ((2 * n + s + 3) * (2 * n + s + 5))
        + q * (al ** 2 + 2 * al * (be + 4) + be ** 2 + 8 * be + 15) / ((2 * n + s + 3) * (2 * n + s + 5)),
        "gamma_R": lambda n: (n + be + 2) * (n + s + 2) * (n + 1) * (n + al + 1)
        / ((2 * n + s + 2) * (2 * n + s + 3) ** 2 * (2 * n + s + 4)),
        "varrho_R": lambda n: p,
        "rho_R": lambda n: p * (n + be + 2) * (n + s + 2) / ((2 * n + s + 3) * (2 * n + s + 4)),
    }


# ---------------------------------------------------------------------------
# published classification rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    """A relation stated beside a table, checked by :mod:`quaddec.study`.

    kinds and args:
      corecursive (mu,)              P_n = R_n(mu; x), mu a function of the QuadMap
      associated_equal (k,)          P^(k) = R^(k)
      equals_Q (component, k)        component^(k) = Q, k = 0 meaning the sequence itself
      shift_of (component, source, A, B)
                                     component = shift(source, A, B), source a transform of W
      positive_definite ()           every gamma of P and R is positive
    """

    kind: str
    args: tuple
    text: str
    erratum: Optional[str] = None


@dataclass(frozen=True)
class ExpectedRow:
    """One verdict row; statuses use the vocabulary of :mod:`quaddec.gqd`.

    ``b_is_aR`` marks rows that say "b_n = a R_n".
    """

    P: str
    R: str
    a: str
    b: str
    b_is_aR: bool = False
    text: str = ""
    claims: tuple = ()

    def statuses(self) -> dict[str, str]:
        return {"P": self.P, "R": self.R, "a": self.a, "b": self.b}

    def with_claims(self, claims: tuple) -> "ExpectedRow":
        return ExpectedRow(self.P, self.R, self.a, self.b, self.b_is_aR, self.text, claims)


O, N, Z = "orthogonal", "nonorthogonal", "vanishing"

ROW_B_IS_AR = ExpectedRow(O, O, Z, O, True, "P_n, R_n, b_n=aR_n orthogonal; a_n=0")
ROW_ZERO = ExpectedRow(O, O, Z, Z, text="P_n, R_n orthogonal; a_n=0, b_n=0")
ROW_NON = ExpectedRow(N, N, N, N, text="P_n, R_n, a_n, b_n nonorthogonal")
ROW_ALL = ExpectedRow(O, O, O, O, text="P_n, R_n, a_n, b_n orthogonal")

_SYMMETRIC_ROWS = {
    "p=0": ROW_B_IS_AR,
    "a=p=q=0": ROW_ZERO,
    "p=q=0": ROW_B_IS_AR,
    "a=p=0": ROW_ZERO,
    "a=q=0": ROW_NON,
    "a=0": ROW_NON,
    "q=0": ROW_NON,
}
_ALL_NON = {case: ROW_NON for case in CASES}
_CHEB34_ROWS = dict(_SYMMETRIC_ROWS, **{"p=0": ROW_ALL, "a=p=q=0": ROW_ALL, "p=q=0": ROW_ALL, "a=p=0": ROW_ALL})
# the Hermite p=0 row as printed
_HERMITE_ROWS = dict(_SYMMETRIC_ROWS, **{"p=0": ExpectedRow(O, O, O, O, text="P_n, R_n, b_n, a_n orthogonal")})

_SPECIAL_ROWS = {
    "chebyshev1": ROW_B_IS_AR,
    "chebyshev2": ROW_B_IS_AR,
    "chebyshev3": ROW_ALL,
    "chebyshev4": ROW_ALL,
}

_CHEB1_GAMMA = "gamma_1^P = gamma_1 gamma_2 = 1/8, not 1/16, so P and R differ in gamma_1 as well as beta_0"
_POS = Claim("positive_definite", (), "P_n, R_n positive definite, if a, q real")
_ASSOC = tuple(Claim("associated_equal", (k,), f"P^({k}) = R^({k})") for k in (1, 2, 3))


def _qfix(value):
    return lambda qmap: value


def _cheb_p0(mu, text, erratum=None):
    return (Claim("corecursive", (mu,), text, erratum), _POS) + _ASSOC


_CLAIMS = {
    "chebyshev1": {
        "p=0": _cheb_p0(_qfix(-QUARTER), "P_n(x) = R_n(-1/4; x)", _CHEB1_GAMMA),
        SPECIAL_CASE: (
            Claim("corecursive", (_qfix(-QUARTER),), "P_n(x) = R_n(-1/4; x)", _CHEB1_GAMMA),
            Claim("equals_Q", ("P", 0), "P_n = Q_n", _CHEB1_GAMMA),
            Claim("equals_Q", ("P", 1), "P^(1) = Q"),
            Claim("equals_Q", ("R", 1), "R^(1) = Q"),
            Claim("equals_Q", ("R", 2), "R^(2) = Q"),
            Claim("shift_of", ("P", ("perturbed", 0, (0,), (HALF,)), 2, 0),
                  "P_n(x) = A^-n W_n(0; (0),(1/2); 1; Ax), A = 2",
                  "the perturbation turns W into the second kind, whose shift is Q; "
                  "P is the shift of W itself"),
        ),
    },
    "chebyshev2": {
        "p=0": _cheb_p0(_qfix(-QUARTER), "P_n(x) = R_n(-1/4; x)"),
        SPECIAL_CASE: (
            Claim("corecursive", (_qfix(-QUARTER),), "P_n(x) = R_n(-1/4; x)"),
            Claim("equals_Q", ("R", 0), "R_n = Q_n"),
            Claim("equals_Q", ("P", 1), "P^(1) = Q"),
            Claim("equals_Q", ("P", 2), "P^(2) = Q"),
            Claim("shift_of", ("R", ("identity",), 2, 0), "R_n(x) = A^-n W_n(Ax), A = 2"),
        ),
    },
    "chebyshev3": {
        "p=0": _cheb_p0(lambda qm: HALF * (qm.a - HALF), "P_n(x) = R_n((a - 1/2)/2; x)"),
        SPECIAL_CASE: (
            Claim("corecursive", (lambda qm: HALF * (qm.a - HALF),), "P_n(x) = R_n((a - 1/2)/2; x)"),
            Claim("equals_Q", ("R", 0), "R_n = Q_n"),
            Claim("equals_Q", ("P", 1), "P^(1) = Q"),
            Claim("shift_of", ("R", ("corecursive", -HALF), 2, 0), "R_n(x) = A^-n W_n(-1/2; Ax), A = 2"),
        ),
    },
    "chebyshev4": {
        "p=0": _cheb_p0(lambda qm: -HALF * (qm.a + HALF), "P_n(x) = R_n(-(a + 1/2)/2; x)"),
        SPECIAL_CASE: (
            Claim("corecursive", (lambda qm: -HALF * (qm.a + HALF),), "P_n(x) = R_n(-(a + 1/2)/2; x)"),
            Claim("equals_Q", ("R", 0), "R_n = Q_n"),
            Claim("equals_Q", ("P", 1), "P^(1) = Q"),
            Claim("shift_of", ("R", ("corecursive", HALF), 2, 0), "R_n(x) = A^-n W_n(1/2; Ax), A = 2"),
        ),
    },
}

# Recurrence coefficients of Q: beta = 0, gamma = 1/16.
Q_BETA, Q_GAMMA = F(0), F(1, 16)


# Published statements that disagree with what they summarize.  The
# formulas and rows above keep the printed text; these notes let the
# verifier label each mismatch.  Keys: (family, extended-coefficient name
# or case).
ERRATA: dict[tuple[str, str], str] = {
    ("charlier", "beta_P"): "printed beta^P omits the +q term (beta_0^P and beta_{n+1}^P)",
    ("charlier", "beta_R"): "printed beta^R omits the +q term (beta_0^R and beta_{n+1}^R)",
    ("chebyshev1", "gamma_P"): "printed gamma^P = 1/16 for every n; gamma_1^P = gamma_1 gamma_2 = 1/8",
    ("jacobi_symmetric_semiclassical", "gamma_P"): (
        "general block prints (n+1)^2(n+alpha+1)^2 in the numerator; gamma_{2n+1}gamma_{2n+2} "
        "and the p=0 block give (n+1)(n+alpha+1)(n+beta+1)(n+alpha+beta+1)"
    ),
    ("jacobi_symmetric_semiclassical", "u0_3"): (
        "printed (u_0)_3 ends with (beta+1)(beta+2)(beta+3)/((s+2)(s+3)(s+3)); the engine and the "
        "inferred product model give (s+2)(s+3)(s+4), s = alpha+beta"
    ),
    ("hermite", "p=0"): (
        "row prints 'P_n, R_n, b_n, a_n orthogonal'; W symmetric with p=0 forces a_n=0 and "
        "b_n=aR_n, the row printed for every other symmetric family"
    ),
}

# Rows replaced by their corrected form in ``corrected_classification``.
_CORRECTED_ROWS = {("hermite", "p=0"): ROW_B_IS_AR}


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyDef:
    name: str
    params: tuple[str, ...]
    coeffs: Callable
    printed: Optional[Callable] = None
    rows: Optional[Mapping[str, ExpectedRow]] = None
    description: str = ""
    defaults: Mapping[str, Fraction] = field(default_factory=dict)
    # parameter values where the family degenerates into another one
    degenerate: Callable[[Mapping[str, Fraction]], bool] = lambda P: False


REGISTRY: dict[str, FamilyDef] = {}


def _register(fd: FamilyDef) -> None:
    REGISTRY[fd.name] = fd


_register(FamilyDef("hermite", (), _hermite, _x_hermite, _HERMITE_ROWS, "Hermite"))
_register(FamilyDef("gen_hermite", ("mu",), _gen_hermite, _x_gen_hermite, _SYMMETRIC_ROWS,
                    "generalized Hermite", {"mu": HALF}, lambda P: P["mu"] == 0))
_register(FamilyDef("laguerre", ("alpha",), _laguerre, _x_laguerre, _ALL_NON, "Laguerre", {"alpha": F(0)}))
_register(FamilyDef("charlier", ("alpha",), _charlier, _x_charlier, _ALL_NON, "Charlier", {"alpha": F(1)}))
_register(FamilyDef("bessel", ("alpha",), _bessel, _x_bessel, _ALL_NON, "Bessel", {"alpha": F(2)},
                    lambda P: P["alpha"] == 1))
_register(FamilyDef("jacobi", ("alpha", "beta"), _jacobi, _x_jacobi, _ALL_NON, "Jacobi",
                    {"alpha": HALF, "beta": F(1, 3)},
                    lambda P: P["alpha"] == P["beta"] or P["alpha"] == -P["beta"]))
_register(FamilyDef("gegenbauer", ("alpha",), _gegenbauer, _x_gegenbauer, _SYMMETRIC_ROWS, "Gegenbauer",
                    {"alpha": HALF}))
_register(FamilyDef("legendre", (), _legendre, _x_legendre, _SYMMETRIC_ROWS, "Legendre"))
_register(FamilyDef("chebyshev1", (), _cheb1, _x_cheb1, _SYMMETRIC_ROWS, "Chebyshev, first kind"))
_register(FamilyDef("chebyshev2", (), _cheb2, _x_cheb2, _SYMMETRIC_ROWS, "Chebyshev, second kind"))
_register(FamilyDef("chebyshev3", (), _cheb3, _x_cheb3, _CHEB34_ROWS, "Chebyshev, third kind"))
_register(FamilyDef("chebyshev4", (), _cheb4, _x_cheb4, _CHEB34_ROWS, "Chebyshev, fourth kind"))
_register(FamilyDef("constant", ("beta", "gamma"), _constant, _x_constant, None,
                    "constant recurrence coefficients", {"beta": F(1), "gamma": F(1)},
                    lambda P: P["beta"] == 0))
_register(FamilyDef("jacobi_symmetric_semiclassical", ("alpha", "beta"), _symmetric_semiclassical,
                    _x_symmetric_semiclassical, None, "symmetric semi-classical of class one",
                    {"alpha": F(1), "beta": F(1)}, lambda P: P["beta"] == 0))

TABLE_FAMILIES = tuple(name for name, fd in REGISTRY.items() if fd.rows is not None)


def family(name: str) -> FamilyDef:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(REGISTRY)}") from None


@dataclass
class FamilySpec:
    name: str
    params: dict[str, Fraction]
    rc: RecurrenceCoeffs

    def guard(self, index: int) -> None:
        """Raise RegularityError unless beta_0..beta_index, gamma_1..gamma_index are finite and gamma != 0."""
        for n in range(index + 1):
            self.rc.beta(n)
            if n >= 1:
                self.rc.gamma(n)

    def params_json(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in self.params.items()}


def _coerce_params(fd: FamilyDef, params: Optional[Mapping[str, RationalLike]]) -> dict[str, Fraction]:
    params = dict(params or {})
    unknown = set(params) - set(fd.params)
    if unknown:
        raise ValueError(f"{fd.name} takes parameters {fd.params or '()'}, got {sorted(unknown)}")
    out = {}
    for key in fd.params:
        if key in params:
            out[key] = to_rational(params[key])
        elif key in fd.defaults:
            out[key] = fd.defaults[key]
        else:
            raise ValueError(f"{fd.name} needs parameter {key}")
    return out


def build(name: str, params: Optional[Mapping[str, RationalLike]] = None, depth: Optional[int] = None) -> FamilySpec:
    """Recurrence coefficients of a catalog family.

    With ``depth`` the regularity guard is run on every index up to it.
    """
    fd = family(name)
    values = _coerce_params(fd, params)
    beta, gamma = fd.coeffs(values)
    spec = FamilySpec(name, values, RecurrenceCoeffs(beta, gamma, name=name))
    if depth is not None:
        spec.guard(depth)
    return spec


class PrintedExtended:
    """Published extended coefficients, indexed like :class:`gqd.ExtendedCoeffs`."""

    def __init__(self, name: str, params: Mapping[str, Fraction], qmap: QuadMap):
        fd = family(name)
        if fd.printed is None:
            raise CaseNotTabulated(f"no printed extended coefficients for {name}")
        self.name = name
        self._f = fd.printed(dict(params), qmap.p, qmap.q, qmap.a)

    def value(self, key: str, n: int) -> Fraction:
        try:
            if key.startswith("beta"):
                if n == 0:
                    return to_rational(self._f[key + "0"]())
                return to_rational(self._f[key](n - 1))
            if n < 1:
                raise ValueError(f"{key} starts at index 1")
            return to_rational(self._f[key](n - 1))
        except ZeroDivisionError as exc:
            raise RegularityError(n, f"printed {key} has a pole at n={n}") from exc


def paper_extended(name: str, params: Mapping[str, RationalLike], qmap: QuadMap) -> PrintedExtended:
    fd = family(name)
    return PrintedExtended(name, _coerce_params(fd, params), qmap)


def paper_classification(name: str, case: str) -> ExpectedRow:
    """The verdict row and relation claims exactly as published."""
    fd = family(name)
    if case == SPECIAL_CASE and name in _SPECIAL_ROWS:
        row = _SPECIAL_ROWS[name]
    elif fd.rows is not None and case in fd.rows:
        row = fd.rows[case]
    else:
        raise CaseNotTabulated(f"{name}: case {case!r} not tabulated")
    return row.with_claims(_CLAIMS.get(name, {}).get(case, ()))


def corrected_classification(name: str, case: str) -> ExpectedRow:
    """Like :func:`paper_classification` with rows listed in ``ERRATA`` fixed
    and claims marked as errata dropped."""
    row = paper_classification(name, case)
    fixed = _CORRECTED_ROWS.get((name, case))
    if fixed is not None:
        row = fixed.with_claims(row.claims)
    return row.with_claims(tuple(c for c in row.claims if c.erratum is None))


def tabulated_cases(name: str) -> tuple[str, ...]:
    fd = family(name)
    cases = tuple(fd.rows) if fd.rows else ()
    if name in _SPECIAL_ROWS:
        cases = cases + (SPECIAL_CASE,)
    return cases


# ---------------------------------------------------------------------------
# the two worked examples: simplified coefficients and moment lists
# ---------------------------------------------------------------------------

def symmetric_semiclassical_components(params: Mapping[str, RationalLike], q: RationalLike):
    """Published (beta, gamma) of P and R for the symmetric example at p = 0."""
    al, be, q = to_rational(params["alpha"]), to_rational(params["beta"]), to_rational(q)
    s = al + be

    def bP(n):
        if n == 0:
            return 1 + q - (al + 1) / (s + 2)
        m = n - 1
        return 1 + q + (m + 1) * (m + al + 1) / (s + 2 * m + 2) - (m + 2) * (m + 2 + al) / (s + 2 * m + 4)

    def gP(k):
        m = k - 1
        return (m + 1) * (al + m + 1) * (be + m + 1) * (s + m + 1) / ((s + 2 * m + 1) * (s + 2 * m + 2) ** 2 * (s + 2 * m + 3))

    def bR(n):
        if n == 0:
            return 1 + q - (al + 1) / (s + 3)
        m = n - 1
        return 1 + q + (m + 1) * (al + m + 1) / (s + 2 * m + 3) - (m + 2) * (al + m + 2) / (s + 2 * m + 5)

    def gR(k):
        m = k - 1
        return (m + 1) * (al + m + 1) * (be + m + 2) * (s + m + 2) / ((s + 2 * m + 2) * (s + 2 * m + 3) ** 2 * (s + 2 * m + 4))

    return RecurrenceCoeffs(bP, gP, name="P"), RecurrenceCoeffs(bR, gR, name="R")


def _ratio_product(top0, bottom0, k):
    out = F(1)
    for i in range(1, k + 1):
        out *= (top0 + i) / (bottom0 + i)
    return out


def symmetric_semiclassical_moment_models(params: Mapping[str, RationalLike], q: RationalLike, nmax: int):
    """Inferred closed forms for (u_0)_n, (v_0)_n and (w_0)_{2k}."""
    al, be, q = to_rational(params["alpha"]), to_rational(params["beta"]), to_rational(q)
    s = al + be
    w_even = [_ratio_product(be, s + 1, k) for k in range(nmax + 1)]
    u = [sum(comb(n, k) * q ** (n - k) * _ratio_product(be, s + 1, k) for k in range(n + 1)) for n in range(nmax + 1)]
    v = [sum(comb(n, k) * q ** (n - k) * _ratio_product(be + 1, s + 2, k) for k in range(n + 1)) for n in range(nmax + 1)]
    return u, v, w_even


def symmetric_semiclassical_printed_moments(params: Mapping[str, RationalLike], q: RationalLike):
    """(u_0)_{0..3} and (v_0)_{0..3} as printed for the symmetric example."""
    al, be, q = to_rational(params["alpha"]), to_rational(params["beta"]), to_rational(q)
    s = al + be
    u = [
        F(1),
        q + (be + 1) / (s + 2),
        q ** 2 + 2 * q * (be + 1) / (s + 2) + (be + 1) * (be + 2) / ((s + 2) * (s + 3)),
        q ** 3 + 3 * q ** 2 * (be + 1) / (s + 2) + 3 * q * (be + 1) * (be + 2) / ((s + 2) * (s + 3))
        + (be + 1) * (be + 2) * (be + 3) / ((s + 2) * (s + 3) * (s + 3)),
    ]
    v = [
        F(1),
        q + (be + 2) / (s + 3),
        q ** 2 + 2 * q * (be + 2) / (s + 3) + (be + 2) * (be + 3) / ((s + 3) * (s + 4)),
        q ** 3 + 3 * q ** 2 * (be + 2) / (s + 3) + 3 * q * (be + 2) * (be + 3) / ((s + 3) * (s + 4))
        + (be + 2) * (be + 3) * (be + 4) / ((s + 3) * (s + 4) * (s + 5)),
    ]
    return u, v


def constant_components(params: Mapping[str, RationalLike], q: RationalLike):
    """Published (beta, gamma) of P and R for constant coefficients at p = -2 beta."""
    b, g, q = to_rational(params["beta"]), to_rational(params["gamma"]), to_rational(q)
    bR = q + 2 * g - b * b
    rcR = RecurrenceCoeffs(lambda n: bR, lambda n: g * g, name="R")
    rcP = RecurrenceCoeffs(lambda n: bR - g if n == 0 else bR, lambda n: g * g, name="P")
    return rcP, rcR


def constant_printed_moments(params: Mapping[str, RationalLike], q: RationalLike):
    b, g, q = to_rational(params["beta"]), to_rational(params["gamma"]), to_rational(q)
    u = [
        F(1),
        g - b ** 2 + q,
        2 * g ** 2 + b ** 4 + q ** 2 - 2 * b ** 2 * (g + q) + 2 * g * q,
        5 * g ** 3 - b ** 6 + q ** 3 - 3 * b ** 2 * (2 * g ** 2 + q ** 2 + 2 * g * q) + 3 * g * q ** 2
        + 6 * g ** 2 * q + 3 * b ** 4 * (g + q),
    ]
    v = [
        F(1),
        2 * g - b ** 2 + q,
        5 * g ** 2 + b ** 4 + q ** 2 - 2 * b ** 2 * (2 * g + q) + 4 * g * q,
        (2 * g - b ** 2 + q) * (7 * g ** 2 + b ** 4 + q ** 2 - 2 * b ** 2 * (2 * g + q) + 4 * g * q),
    ]
    return u, v


# ---------------------------------------------------------------------------
# seeded sampling of parameters and cases
# ---------------------------------------------------------------------------

DEFAULT_SEED = 20240917
SEED_ENV = "QUADDEC_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


class Sampler:
    """Pseudo-random nonzero rationals with small numerators and denominators."""

    def __init__(self, seed: Optional[int] = None, num: int = 9, den: int = 6):
        self.seed = default_seed() if seed is None else seed
        self.rng = random.Random(self.seed)
        self.num, self.den = num, den

    def rational(self) -> Fraction:
        while True:
            v = F(self.rng.randint(-self.num, self.num), self.rng.randint(1, self.den))
            if v != 0:
                return v

    def qmap(self, case: str, beta0: Optional[Fraction] = None) -> QuadMap:
        """A QuadMap for a tabulated case: listed symbols are zero, the rest random nonzero.

        A free ``a`` also avoids ``beta0``, where b_0 = a - beta_0 vanishes.
        """
        if case == SPECIAL_CASE:
            return QuadMap(0, F(-1, 2), self._a(beta0))
        if case not in CASES:
            raise CaseNotTabulated(case)
        zero = set(case[: case.index("=0")].split("="))
        p = F(0) if "p" in zero else self.rational()
        q = F(0) if "q" in zero else self.rational()
        return QuadMap(p, q, F(0) if "a" in zero else self._a(beta0))

    def _a(self, beta0: Optional[Fraction]) -> Fraction:
        while True:
            v = self.rational()
            if v != beta0:
                return v

    def params(self, name: str, index: int = 40, tries: int = 200) -> dict[str, Fraction]:
        """Family parameters that are regular up to ``index``, keep the printed
        formulas finite for n <= 13 and avoid degenerate specializations."""
        fd = family(name)
        probe = QuadMap(1, 1, 1)
        for _ in range(tries):
            values = {k: self.rational() for k in fd.params}
            if fd.degenerate(values):
                continue
            try:
                build(name, values, depth=index)
                if fd.printed is not None:
                    pe = PrintedExtended(name, values, probe)
                    for key in ExtendedCoeffs.NAMES:
                        for n in range(14):
                            if key.startswith("beta") or n >= 1:
                                pe.value(key, n)
            except RegularityError:
                continue
            return values
        raise RuntimeError(f"could not sample regular parameters for {name}")

