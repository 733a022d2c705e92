"""Case studies and the table verifier.

A case study runs one family at one QuadMap: decompose, classify the four
components, look for relations between the principal components and W, and
re-check every relation the published tables state for that case.  The
verifier repeats this over seeded samples and compares with the catalog.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .algebra import format_rational
from .families import (
    CASES,
    ERRATA,
    Q_BETA,
    Q_GAMMA,
    SPECIAL_CASE,
    CaseNotTabulated,
    Claim,
    ExpectedRow,
    FamilySpec,
    PrintedExtended,
    Sampler,
    build,
    corrected_classification,
    family,
    paper_classification,
    tabulated_cases,
)
from .gqd import Classification, ExtendedCoeffs, QuadMap, classify, gqd_orthogonal
from .mps import RecurrenceCoeffs, RegularityError, SeqPrefix, canonical_moments, is_symmetric
from .transforms import (
    PerturbationSpec,
    associated,
    corecursive,
    detect_affine_relation,
    detect_corecursive,
    perturbed,
    same_recurrence,
    shift,
)

DEFAULT_NMAX = 8
FORMULA_RANGE = 13  # formula variable n = 0..12


@dataclass
class ClaimResult:
    text: str
    kind: str
    holds: bool
    depth: int
    erratum: Optional[str] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"claim": self.text, "kind": self.kind, "holds": self.holds, "depth": self.depth}
        if self.detail:
            out["detail"] = self.detail
        if self.erratum:
            out["erratum"] = self.erratum
        return out


@dataclass
class CaseReport:
    family: str
    params: dict[str, Fraction]
    case: str
    qmap: QuadMap
    depth: int
    classification: Classification
    rcW: RecurrenceCoeffs
    rcP: Optional[RecurrenceCoeffs]
    rcR: Optional[RecurrenceCoeffs]
    detected: dict = field(default_factory=dict)
    expected: Optional[ExpectedRow] = None
    corrected: Optional[ExpectedRow] = None
    claims: list[ClaimResult] = field(default_factory=list)

    def pattern_matches(self, row: ExpectedRow) -> bool:
        pat = self.classification.pattern
        if row.b_is_aR:
            return pat.b_over_R == self.qmap.a and pat.a_zero
        return True

    def matches(self, row: Optional[ExpectedRow]) -> Optional[bool]:
        if row is None:
            return None
        return self.classification.statuses() == row.statuses() and self.pattern_matches(row)

    @property
    def matches_printed(self) -> Optional[bool]:
        return self.matches(self.expected)

    @property
    def matches_corrected(self) -> Optional[bool]:
        return self.matches(self.corrected)

    @property
    def claims_hold(self) -> bool:
        return all(c.holds for c in self.claims)

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "params": {k: format_rational(v) for k, v in self.params.items()},
            "case": self.case,
            "map": self.qmap.to_json(),
            "depth": self.depth,
            "verdicts": self.classification.to_json(),
            "detected": self.detected,
        }
        if self.expected is not None:
            out["expected"] = {"row": self.expected.text, **self.expected.statuses()}
            out["matches_printed"] = self.matches_printed
            erratum = ERRATA.get((self.family, self.case))
            if erratum:
                out["matches_corrected"] = self.matches_corrected
                out["erratum"] = erratum
        out["claims"] = [c.to_json() for c in self.claims]
        return out


def _component_rc(verdict, name: str) -> Optional[RecurrenceCoeffs]:
    if verdict.status != "orthogonal":
        return None
    return RecurrenceCoeffs.from_lists(verdict.beta, verdict.gamma, name=name)


def _q_rc() -> RecurrenceCoeffs:
    return RecurrenceCoeffs.constant(Q_BETA, Q_GAMMA, name="Q")


def _source(rcW: RecurrenceCoeffs, spec: tuple) -> RecurrenceCoeffs:
    kind = spec[0]
    if kind == "identity":
        return rcW
    if kind == "corecursive":
        return corecursive(rcW, spec[1])
    if kind == "perturbed":
        return perturbed(rcW, PerturbationSpec(spec[1], spec[2], spec[3]))
    raise ValueError(f"unknown source transform {kind!r}")


def check_claim(claim: Claim, report: CaseReport) -> ClaimResult:
    rcs = {"P": report.rcP, "R": report.rcR}
    kind, args = claim.kind, claim.args
    needs = args[0] if kind in ("equals_Q", "shift_of") else "PR"
    missing = [c for c in needs if rcs[c] is None]
    if missing:
        return ClaimResult(claim.text, kind, False, 0, claim.erratum, f"{' and '.join(missing)} not orthogonal")
    depth = min(rcs[c].available(report.depth) for c in needs)
    detail = ""
    if kind == "positive_definite":
        gammas = [rc.gamma(n) for rc in rcs.values() for n in range(1, depth + 1)]
        holds = all(g > 0 for g in gammas)
        detail = f"min gamma {format_rational(min(gammas))}"
    elif kind == "corecursive":
        want = args[0](report.qmap)
        rel = detect_corecursive(report.rcP, report.rcR, depth)
        holds = rel is not None and rel.mu == want
        found = format_rational(rel.mu) if rel else "no co-recursive relation"
        detail = f"expected mu {format_rational(want)}, found {found}"
    elif kind == "associated_equal":
        k = args[0]
        holds = same_recurrence(associated(report.rcP, k), associated(report.rcR, k), depth)
    elif kind == "equals_Q":
        comp, k = args
        holds = same_recurrence(associated(rcs[comp], k), _q_rc(), depth)
    elif kind == "shift_of":
        comp, source, A, B = args
        holds = same_recurrence(rcs[comp], shift(_source(report.rcW, source), A, B), depth)
    else:
        raise ValueError(f"unknown claim kind {kind!r}")
    return ClaimResult(claim.text, kind, holds, depth, claim.erratum, detail)


def detect_relations(rcW: RecurrenceCoeffs, rcP, rcR, depth: int) -> dict:
    """Relations found by the detectors, independent of any table."""
    out: dict = {}
    if rcP is not None and rcR is not None:
        rel = detect_corecursive(rcP, rcR, depth)
        if rel is not None:
            out["P_corecursive_of_R"] = {"mu": format_rational(rel.mu), "identical": rel.identical, "depth": rel.depth}
        for k in range(1, 4):
            if same_recurrence(associated(rcP, k), associated(rcR, k), depth):
                out["associated_equal_from"] = k
                break
    for name, rc in (("P", rcP), ("R", rcR)):
        if rc is None:
            continue
        aff = detect_affine_relation(rcW, rc, depth)
        if aff is not None:
            out[f"{name}_shift_of_W"] = {"A": format_rational(aff.A), "B": format_rational(aff.B), "depth": aff.depth}
        else:
            out[f"{name}_shift_of_W"] = None
    return out


def study_case(spec: FamilySpec, qmap: QuadMap, depth: int = DEFAULT_NMAX, case: str = "custom") -> CaseReport:
    spec.guard(2 * depth + 3)
    res = gqd_orthogonal(spec.rc, qmap, depth)
    cls = classify(res)
    rcP, rcR = _component_rc(cls.P, "P"), _component_rc(cls.R, "R")
    report = CaseReport(spec.name, spec.params, case, qmap, depth, cls, spec.rc, rcP, rcR)
    report.detected = detect_relations(spec.rc, rcP, rcR, depth)
    try:
        report.expected = paper_classification(spec.name, case)
        report.corrected = corrected_classification(spec.name, case)
    except CaseNotTabulated:
        return report
    report.claims = [check_claim(c, report) for c in report.expected.claims]
    return report


def resolve_cases(name: str, selector: Sequence[str] | str | None) -> list[str]:
    available = tabulated_cases(name)
    if selector in (None, "all") or selector == ["all"]:
        return list(available)
    if isinstance(selector, str):
        selector = [s.strip() for s in selector.split(";") if s.strip()]
    out = []
    for item in selector:
        item = SPECIAL_CASE if item == "special" else item
        if item not in available:
            raise CaseNotTabulated(f"{name}: case {item!r} not tabulated; available: {', '.join(available)}")
        out.append(item)
    return out


# ---------------------------------------------------------------------------
# extended-coefficient comparison
# ---------------------------------------------------------------------------

@dataclass
class FormulaMismatch:
    key: str
    index: int
    engine: Fraction
    printed: Fraction
    erratum: Optional[str]

    def to_json(self) -> dict:
        return {"key": self.key, "index": self.index, "engine": format_rational(self.engine),
                "printed": format_rational(self.printed), "erratum": self.erratum}


def compare_extended(spec: FamilySpec, qmap: QuadMap, count: int = FORMULA_RANGE) -> list[FormulaMismatch]:
    """Engine vs printed extended coefficients, indices 0..count for beta, 1..count otherwise."""
    ec = ExtendedCoeffs(spec.rc, qmap)
    pe = PrintedExtended(spec.name, spec.params, qmap)
    out = []
    for key in ExtendedCoeffs.NAMES:
        indices = range(count + 1) if key.startswith("beta") else range(1, count + 1)
        for n in indices:
            e, p = ec.value(key, n), pe.value(key, n)
            if e != p:
                out.append(FormulaMismatch(key, n, e, p, ERRATA.get((spec.name, key))))
    return out


# ---------------------------------------------------------------------------
# verification matrix
# ---------------------------------------------------------------------------

@dataclass
class Cell:
    family: str
    kind: str  # "extended", "classification" or "claims"
    case: str
    params: dict[str, Fraction]
    qmap: QuadMap
    ok: bool
    documented: bool
    detail: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "check": self.kind,
            "case": self.case,
            "params": {k: format_rational(v) for k, v in self.params.items()},
            "map": self.qmap.to_json(),
            "ok": self.ok,
            "documented": self.documented,
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    cells: list[Cell]
    seed: int
    samples: int
    nmax: int

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def passed_modulo_errata(self) -> bool:
        return all(c.ok or c.documented for c in self.cells)

    def summary(self) -> dict:
        out: dict = {}
        for c in self.cells:
            row = out.setdefault(c.family, {}).setdefault(c.kind, {"ok": 0, "documented": 0, "failed": 0})
            row["ok" if c.ok else "documented" if c.documented else "failed"] += 1
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "nmax": self.nmax,
            "passed": self.passed,
            "passed_modulo_errata": self.passed_modulo_errata,
            "summary": self.summary(),
            "failures": [c.to_json() for c in self.cells if not c.ok],
        }


def verify_family(name: str, samples: int = 5, nmax: int = DEFAULT_NMAX, sampler: Optional[Sampler] = None,
                  cases: Optional[Sequence[str]] = None) -> list[Cell]:
    sampler = sampler or Sampler()
    fd = family(name)
    cells: list[Cell] = []
    index = max(2 * nmax + 4, 2 * FORMULA_RANGE + 6)
    if fd.printed is not None:
        for _ in range(samples):
            params = sampler.params(name, index)
            spec = build(name, params)
            qmap = QuadMap(sampler.rational(), sampler.rational(), sampler.rational())
            bad = compare_extended(spec, qmap)
            cells.append(Cell(name, "extended", "generic", params, qmap, not bad,
                              bool(bad) and all(m.erratum for m in bad), [m.to_json() for m in bad]))
    for case in cases if cases is not None else tabulated_cases(name):
        for _ in range(samples):
            params = sampler.params(name, index)
            spec = build(name, params)
            qmap = sampler.qmap(case, spec.rc.beta(0))
            try:
                rep = study_case(spec, qmap, nmax, case)
            except RegularityError as exc:
                cells.append(Cell(name, "classification", case, params, qmap, False, False, [str(exc)]))
                continue
            ok = bool(rep.matches_printed)
            detail = [] if ok else [{"found": rep.classification.statuses(), "printed": rep.expected.statuses()}]
            cells.append(Cell(name, "classification", case, params, qmap, ok,
                              not ok and bool(rep.matches_corrected) and (name, case) in ERRATA, detail))
            if rep.claims:
                bad_claims = [c for c in rep.claims if not c.holds]
                cells.append(Cell(name, "claims", case, params, qmap, not bad_claims,
                                  bool(bad_claims) and all(c.erratum for c in bad_claims),
                                  [c.to_json() for c in bad_claims]))
    return cells


def verify(names: Sequence[str], samples: int = 5, nmax: int = DEFAULT_NMAX, seed: Optional[int] = None,
           cases: Optional[Sequence[str]] = None) -> VerifyReport:
    sampler = Sampler(seed)
    cells: list[Cell] = []
    for name in names:
        family_cases = None
        if cases is not None:
            family_cases = [c for c in cases if c in tabulated_cases(name)]
        cells.extend(verify_family(name, samples, nmax, sampler, family_cases))
    return VerifyReport(cells, sampler.seed, samples, nmax)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

@dataclass
class MomentReport:
    w0: list[Fraction]
    u0: list[Fraction]
    v0: list[Fraction]
    symmetric: bool
    binomial_checked: int = 0
    binomial_holds: Optional[bool] = None

    def to_json(self) -> dict:
        out = {
            "w0": [format_rational(v) for v in self.w0],
            "u0": [format_rational(v) for v in self.u0],
            "v0": [format_rational(v) for v in self.v0],
            "symmetric": self.symmetric,
        }
        if self.binomial_holds is not None:
            out["binomial_identity"] = {"holds": self.binomial_holds, "checked": self.binomial_checked}
        return out


def binomial_moments(w0: Sequence[Fraction], q: Fraction, n: int) -> Fraction:
    """sum_k C(n,k) q^(n-k) (w_0)_{2k}."""
    return sum((comb(n, k) * q ** (n - k) * w0[2 * k] for k in range(n + 1)), Fraction(0))


def moment_report(rc: RecurrenceCoeffs, qmap: QuadMap, nmax: int) -> MomentReport:
    """Canonical moments of W (to 2 nmax + 1) and of P, R (to nmax).

    For symmetric W at p = a = 0 the moments of P must be the binomial
    transforms of the even moments of W; that identity is checked too.
    """
    res = gqd_orthogonal(rc, qmap, nmax)
    W = SeqPrefix(tuple(res.reconstruct()))
    w0 = canonical_moments(W, W.depth)
    report = MomentReport(w0, canonical_moments(res.P, nmax), canonical_moments(res.R, nmax), bool(is_symmetric(W)))
    if report.symmetric and qmap.p == 0 and qmap.a == 0:
        report.binomial_checked = nmax
        report.binomial_holds = all(report.u0[n] == binomial_moments(w0, qmap.q, n) for n in range(nmax + 1))
    return report


__all__ = [
    "CASES",
    "SPECIAL_CASE",
    "CaseReport",
    "ClaimResult",
    "VerifyReport",
    "MomentReport",
    "binomial_moments",
    "check_claim",
    "moment_report",
    "compare_extended",
    "detect_relations",
    "resolve_cases",
    "study_case",
    "verify",
    "verify_family",
]
