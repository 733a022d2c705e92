"""Monic polynomial sequences: coefficient sources, generation, moments.

A sequence {W_n} is described either by recurrence coefficients
(beta_n, gamma_n) of the three-term relation

    W_{n+2} = (x - beta_{n+1}) W_{n+1} - gamma_{n+1} W_n

or by structure coefficients (beta_n, chi_{n,nu}) of the general relation

    W_{n+2} = (x - beta_{n+1}) W_{n+1} - sum_{nu<=n} chi_{n,nu} W_nu.

Indexing follows the usual notation: ``beta(n)`` is beta_n for n >= 0 and
``gamma(n)`` is gamma_n for n >= 1.  Orthogonality and symmetry verdicts
are finite-depth certificates and always carry the depth they checked.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .algebra import ONE, X, Poly, RationalLike, format_rational, to_rational


class RegularityError(ValueError):
    """A recurrence coefficient gamma_n vanished (or hit a pole)."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"regularity violated: gamma_{index} = 0")


class CoefficientUnavailable(IndexError):
    """A finite coefficient table was asked for an index it does not hold."""


class _Memo:
    """Thread-safe memo around an index -> Fraction function."""

    def __init__(self, fn: Callable, name: str):
        self._fn = fn
        self._name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, *key):
        try:
            return self._cache[key]
        except KeyError:
            pass
        try:
            value = to_rational(self._fn(*key))
        except ZeroDivisionError as exc:
            raise RegularityError(key[0], f"{self._name}{key} hits a pole") from exc
        with self._lock:
            self._cache.setdefault(key, value)
        return value


def _table_lookup(values: Sequence[Fraction], offset: int, label: str):
    def get(n: int) -> Fraction:
        k = n - offset
        if k < 0 or k >= len(values):
            raise CoefficientUnavailable(f"{label}_{n} not available")
        return values[k]

    return get


class RecurrenceCoeffs:
    """Lazily evaluated, memoized (beta_n, gamma_n) source.

    ``limit`` is None for closed-form sources; for tables it is the number
    of beta values held (gammas are expected to have the same length).
    """

    def __init__(
        self,
        beta: Callable[[int], RationalLike],
        gamma: Callable[[int], RationalLike],
        limit: Optional[int] = None,
        name: str = "",
    ):
        self._beta = _Memo(beta, "beta")
        self._gamma = _Memo(gamma, "gamma")
        self.limit = limit
        self.name = name

    def beta(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("beta index must be >= 0")
        return self._beta(n)

    def gamma(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("gamma index must be >= 1")
        value = self._gamma(n)
        if value == 0:
            raise RegularityError(n)
        return value

    @classmethod
    def from_lists(cls, betas: Sequence[RationalLike], gammas: Sequence[RationalLike], name: str = "table"):
        """``betas = [beta_0, beta_1, ...]``, ``gammas = [gamma_1, gamma_2, ...]``."""
        b = [to_rational(v) for v in betas]
        g = [to_rational(v) for v in gammas]
        return cls(_table_lookup(b, 0, "beta"), _table_lookup(g, 1, "gamma"), limit=min(len(b), len(g)), name=name)

    @classmethod
    def constant(cls, beta: RationalLike, gamma: RationalLike, name: str = "constant"):
        b, g = to_rational(beta), to_rational(gamma)
        return cls(lambda n: b, lambda n: g, name=name)

    def prefix(self, depth: int) -> tuple[list[Fraction], list[Fraction]]:
        """(beta_0..beta_{depth-1}, gamma_1..gamma_depth)."""
        return [self.beta(n) for n in range(depth)], [self.gamma(n) for n in range(1, depth + 1)]

    def available(self, depth: int) -> int:
        return depth if self.limit is None else min(depth, self.limit)

    def to_json(self, depth: int) -> dict:
        betas, gammas = self.prefix(self.available(depth))
        return {"beta": [format_rational(v) for v in betas], "gamma": [format_rational(v) for v in gammas]}

    def __repr__(self) -> str:
        return f"RecurrenceCoeffs({self.name or 'anonymous'})"


class StructureCoeffs:
    """(beta_n, chi_{n,nu}) source with 0 <= nu <= n."""

    def __init__(
        self,
        beta: Callable[[int], RationalLike],
        chi: Callable[[int, int], RationalLike],
        limit: Optional[int] = None,
        name: str = "",
    ):
        self._beta = _Memo(beta, "beta")
        self._chi = _Memo(chi, "chi")
        self.limit = limit
        self.name = name

    def beta(self, n: int) -> Fraction:
        return self._beta(n)

    def chi(self, n: int, nu: int) -> Fraction:
        if not 0 <= nu <= n:
            raise ValueError(f"chi index out of range: ({n}, {nu})")
        return self._chi(n, nu)

    @classmethod
    def from_recurrence(cls, rc: RecurrenceCoeffs) -> "StructureCoeffs":
        def chi(n, nu):
            return rc.gamma(n + 1) if nu == n else 0

        return cls(rc.beta, chi, limit=rc.limit, name=rc.name)

    @classmethod
    def from_tables(cls, betas: Sequence[RationalLike], chis: Sequence[Sequence[RationalLike]], name: str = "table"):
        """``chis[n]`` holds chi_{n,0..n}."""
        b = [to_rational(v) for v in betas]
        c = [[to_rational(v) for v in row] for row in chis]
        for n, row in enumerate(c):
            if len(row) != n + 1:
                raise ValueError(f"chi row {n} must have {n + 1} entries, got {len(row)}")

        def chi(n, nu):
            if n >= len(c):
                raise CoefficientUnavailable(f"chi_{n},{nu} not available")
            return c[n][nu]

        return cls(_table_lookup(b, 0, "beta"), chi, limit=len(b), name=name)

    def to_json(self, depth: int) -> dict:
        depth = depth if self.limit is None else min(depth, self.limit)
        return {
            "beta": [format_rational(self.beta(n)) for n in range(depth)],
            "chi": [[format_rational(self.chi(n, nu)) for nu in range(n + 1)] for n in range(max(depth - 1, 0))],
        }


@dataclass(frozen=True)
class SeqPrefix:
    """W_0 .. W_N of a monic polynomial sequence."""

    polys: tuple[Poly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        for n, w in enumerate(polys):
            if w.degree != n or not w.is_monic():
                raise ValueError(f"W_{n} must be monic of degree {n}, got {w}")

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, n):
        return self.polys[n]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.polys)

    @property
    def depth(self) -> int:
        """Index of the last polynomial held."""
        return len(self.polys) - 1

    def to_json(self) -> list[list[str]]:
        return [w.to_json() for w in self.polys]

    @classmethod
    def from_json(cls, data) -> "SeqPrefix":
        return cls(tuple(Poly.from_json(w) for w in data))


@dataclass
class MomentTable:
    """Entries (w_n)_m of the dual sequence."""

    moments: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.moments[key]

    def row(self, n: int) -> list[Fraction]:
        ms = sorted(m for (k, m) in self.moments if k == n)
        return [self.moments[(n, m)] for m in ms]

    def to_json(self) -> dict[str, str]:
        return {f"{n},{m}": format_rational(v) for (n, m), v in sorted(self.moments.items())}


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def generate_orthogonal(rc: RecurrenceCoeffs, nmax: int) -> SeqPrefix:
    """W_0..W_nmax from the three-term recurrence."""
    polys = [ONE]
    if nmax >= 1:
        polys.append(X - rc.beta(0))
    for n in range(nmax - 1):
        w = (X - rc.beta(n + 1)) * polys[n + 1] - polys[n].scale(rc.gamma(n + 1))
        polys.append(w)
    return SeqPrefix(tuple(polys))


def generate_structured(sc: StructureCoeffs, nmax: int) -> SeqPrefix:
    polys = [ONE]
    if nmax >= 1:
        polys.append(X - sc.beta(0))
    for n in range(nmax - 1):
        w = (X - sc.beta(n + 1)) * polys[n + 1]
        for nu in range(n + 1):
            c = sc.chi(n, nu)
            if c:
                w = w - polys[nu].scale(c)
        polys.append(w)
    return SeqPrefix(tuple(polys))


def expand_in_basis(f: Poly, basis: Sequence[Poly]) -> list[Fraction]:
    """Coefficients c_0..c_d with f = sum c_nu W_nu (monic graded basis).

    The result has length ``deg f + 1`` (empty for the zero polynomial).
    """
    if f.is_zero():
        return []
    d = int(f.degree)
    if d >= len(basis):
        raise ValueError(f"degree {d} exceeds basis depth {len(basis) - 1}")
    rem = f
    out = [Fraction(0)] * (d + 1)
    for k in range(d, -1, -1):
        c = rem.coeff(k)
        if c:
            out[k] = c
            rem = rem - basis[k].scale(c)
    assert rem.is_zero()
    return out


@dataclass(frozen=True)
class StructureTable:
    """Finite structure coefficients extracted from a prefix."""

    beta: tuple[Fraction, ...]
    chi: tuple[tuple[Fraction, ...], ...]  # chi[n][nu], 0 <= nu <= n

    def as_source(self) -> StructureCoeffs:
        return StructureCoeffs.from_tables(self.beta, self.chi)


def structure_coeffs_of(seq: SeqPrefix) -> StructureTable:
    """Read off beta_n, chi_{n,nu} by expanding W_{n+2} - x W_{n+1}."""
    if len(seq) < 2:
        raise ValueError("need at least W_0 and W_1")
    betas = [-seq[1].coeff(0)]
    chis = []
    for n in range(len(seq) - 2):
        c = expand_in_basis(seq[n + 2] - X * seq[n + 1], seq.polys)
        c = c + [Fraction(0)] * (n + 2 - len(c))
        # W_{n+2} - x W_{n+1} = -beta_{n+1} W_{n+1} - sum chi_{n,nu} W_nu
        betas.append(-c[n + 1])
        chis.append(tuple(-c[nu] for nu in range(n + 1)))
    return StructureTable(tuple(betas), tuple(chis))


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def dual_moments(seq: SeqPrefix, n: int, mmax: int) -> list[Fraction]:
    """(w_n)_0 .. (w_n)_mmax from the canonical coefficients of W_m."""
    if n > seq.depth:
        raise ValueError(f"dual index {n} beyond prefix depth {seq.depth}")
    if mmax > seq.depth:
        raise ValueError(f"moment order {mmax} needs W_{mmax}, prefix stops at W_{seq.depth}")
    out: list[Fraction] = []
    for m in range(mmax + 1):
        if m < n:
            out.append(Fraction(0))
        elif m == n:
            out.append(Fraction(1))
        else:
            w = seq[m]
            out.append(-sum((w.coeff(v) * out[v] for v in range(n, m)), Fraction(0)))
    return out


def canonical_moments(seq: SeqPrefix, mmax: int) -> list[Fraction]:
    return dual_moments(seq, 0, mmax)


def moment_table(seq: SeqPrefix, mmax: Optional[int] = None) -> MomentTable:
    mmax = seq.depth if mmax is None else mmax
    table = MomentTable()
    for n in range(min(mmax, seq.depth) + 1):
        for m, v in enumerate(dual_moments(seq, n, mmax)):
            table.moments[(n, m)] = v
    return table


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryVerdict:
    symmetric: bool
    depth: int
    witness: Optional[int] = None  # first n with W_n(-x) != (-1)^n W_n(x)

    def __bool__(self) -> bool:
        return self.symmetric


def is_symmetric(seq: SeqPrefix) -> SymmetryVerdict:
    for n, w in enumerate(seq):
        expected = w if n % 2 == 0 else -w
        if w.reflect() != expected:
            return SymmetryVerdict(False, seq.depth, n)
    return SymmetryVerdict(True, seq.depth)


@dataclass(frozen=True)
class OrthogonalityVerdict:
    """Finite-depth orthogonality certificate.

    ``depth`` is the number of structure-relation rows inspected.  When
    nonorthogonal, ``witness`` is the (n, nu) of a nonzero chi_{n,nu} with
    nu < n, or (n, n) when chi_{n,n} = 0 (regularity failure).
    """

    orthogonal: bool
    depth: int
    witness: Optional[tuple[int, int]] = None
    beta: tuple[Fraction, ...] = ()
    gamma: tuple[Fraction, ...] = ()

    def __bool__(self) -> bool:
        return self.orthogonal

    @property
    def reason(self) -> str:
        if self.orthogonal:
            return "orthogonal"
        n, nu = self.witness
        return "singular" if n == nu else "off-diagonal"

    def recurrence(self) -> RecurrenceCoeffs:
        if not self.orthogonal:
            raise ValueError("no recurrence coefficients for a nonorthogonal sequence")
        return RecurrenceCoeffs.from_lists(self.beta, self.gamma, name="extracted")

    def to_json(self) -> dict:
        out = {"orthogonal": self.orthogonal, "depth": self.depth}
        if self.orthogonal:
            out["beta"] = [format_rational(v) for v in self.beta]
            out["gamma"] = [format_rational(v) for v in self.gamma]
        else:
            out["witness"] = list(self.witness)
        return out


def is_orthogonal(seq: SeqPrefix) -> OrthogonalityVerdict:
    """chi_{n,nu} = 0 for nu < n and chi_{n,n} != 0 for every extracted row."""
    if len(seq) < 3:
        raise ValueError("orthogonality check needs at least W_0, W_1, W_2")
    table = structure_coeffs_of(seq)
    rows = len(table.chi)
    for n, row in enumerate(table.chi):
        for nu in range(n):
            if row[nu] != 0:
                return OrthogonalityVerdict(False, rows, (n, nu))
        if row[n] == 0:
            return OrthogonalityVerdict(False, rows, (n, n))
    gammas = tuple(row[-1] for row in table.chi)
    return OrthogonalityVerdict(True, rows, None, table.beta, gammas)
