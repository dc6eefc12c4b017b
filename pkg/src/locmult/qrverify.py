"""Verification that multiplicity series carry the arithmetic-polynomial
structure declared by orbifold stratum data.

Strata are input, never computed: each carries the order of its
stabilizer element, the exact rotation phi (the stratum's m-th
contribution is modulated by e^{2*pi*i*m*phi}), and a degree cap for
its polynomial.  The verifier fits the series with period lcm(orders),
locates the onset threshold realizing the "large m" clause, and, for
periods 1 and 2, splits the fit into phase polynomials that can be
checked degree-wise and value-wise against the declaration.  The onset
is reported neutrally; an onset above 1 on an abelian dataset is a
finding for the caller, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .ehrhart import (
    FitVerificationError,
    QuasiPolynomial,
    evaluate,
    fit_quasi_polynomial,
    minimal_period,
    phase_decomposition,
)
from .errors import LocmultError
from .fpdata import DatasetError, parse_rational
from .lattice import WeightVector
from .localize import multiplicity_series


class StructureViolated(LocmultError):
    code = "structure-violated"

    def __init__(self, message, *, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class BadStratum(LocmultError):
    code = "bad-stratum"


@dataclass(frozen=True)
class StratumPhaseDatum:
    """Declared orbifold stratum: stabilizer order, phase rotation, and
    the degree cap (half the stratum dimension) for its polynomial."""

    label: str
    order: int
    rotation: Fraction
    degree_bound: int
    expected_poly: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if isinstance(self.order, bool) or not isinstance(self.order, int):
            raise BadStratum(f"stratum {self.label!r}: order must be an integer")
        if self.order < 1:
            raise BadStratum(f"stratum {self.label!r}: order must be positive")
        rot = Fraction(self.rotation)
        object.__setattr__(self, "rotation", rot)
        if not 0 <= rot < 1:
            raise BadStratum(f"stratum {self.label!r}: rotation must lie in [0,1)")
        if (rot * self.order).denominator != 1:
            raise BadStratum(
                f"stratum {self.label!r}: rotation {rot} is not an order-"
                f"{self.order} root of unity"
            )
        if self.degree_bound < 0:
            raise BadStratum(f"stratum {self.label!r}: negative degree bound")
        if self.expected_poly is not None:
            object.__setattr__(
                self, "expected_poly", poly.normalize(self.expected_poly)
            )


def parse_strata(raw, location="strata") -> tuple[StratumPhaseDatum, ...]:
    """Parse the JSON strata block of a dataset or strata file."""
    if not isinstance(raw, list) or not raw:
        raise DatasetError("strata must be a nonempty list", location=location)
    out = []
    for i, obj in enumerate(raw):
        loc = f"{location}[{i}]"
        if not isinstance(obj, dict):
            raise DatasetError("stratum must be an object", location=loc)
        allowed = ("label", "order", "rotation", "degree_bound", "expected_poly")
        extra = set(obj) - set(allowed)
        if extra:
            raise DatasetError(f"unknown field {sorted(extra)[0]!r}", location=loc)
        for key in ("label", "order", "rotation", "degree_bound"):
            if key not in obj:
                raise DatasetError(f"missing field {key!r}", location=loc)
        if not isinstance(obj["label"], str) or not obj["label"]:
            raise DatasetError("label must be a nonempty string", location=loc)
        if isinstance(obj["order"], bool) or not isinstance(obj["order"], int):
            raise DatasetError("order must be an integer", location=loc)
        if isinstance(obj["degree_bound"], bool) or not isinstance(
            obj["degree_bound"], int
        ):
            raise DatasetError("degree_bound must be an integer", location=loc)
        rotation = parse_rational(obj["rotation"], f"{loc}.rotation")
        expected = None
        if "expected_poly" in obj:
            if not isinstance(obj["expected_poly"], list):
                raise DatasetError("expected_poly must be a list", location=loc)
            expected = tuple(
                parse_rational(c, f"{loc}.expected_poly[{k}]")
                for k, c in enumerate(obj["expected_poly"])
            )
        try:
            out.append(
                StratumPhaseDatum(
                    obj["label"], obj["order"], rotation, obj["degree_bound"], expected
                )
            )
        except BadStratum as exc:
            raise DatasetError(str(exc), code="bad-stratum", location=loc) from None
    return tuple(out)


def onset_threshold(samples, qp: QuasiPolynomial) -> int | None:
    """Smallest m0 such that the fit reproduces every sample with
    m >= m0; None when even the largest sample disagrees ("never")."""
    pts = sorted((int(m), Fraction(v)) for m, v in samples)
    if not pts:
        return None
    mismatch = [m for m, v in pts if evaluate(qp, m) != v]
    if not mismatch:
        return pts[0][0]
    if mismatch[-1] == pts[-1][0]:
        return None
    return mismatch[-1] + 1


@dataclass(frozen=True)
class PhaseCheck:
    """Degree check of one fitted phase polynomial against the strata
    declaring that phase.  declared_bound is None when no stratum does."""

    phase: int
    fitted: tuple[Fraction, ...]
    declared_bound: int | None
    ok: bool


@dataclass(frozen=True)
class ExpectedComparison:
    """Value check of one fitted phase polynomial against the sum of the
    expected polynomials declared for that phase; equal is None when
    some declaring stratum supplied no expectation."""

    phase: int
    labels: tuple[str, ...]
    expected: tuple[Fraction, ...] | None
    fitted: tuple[Fraction, ...]
    equal: bool | None


@dataclass(frozen=True)
class QRReport:
    fitted: QuasiPolynomial
    period_used: int
    onset: int
    series: tuple[tuple[int, int], ...]
    phase_polys: dict | None
    phase_checks: tuple[PhaseCheck, ...]
    expected_comparisons: tuple[ExpectedComparison, ...]
    minimal_period_found: int | None

    @property
    def phases_ok(self) -> bool:
        return all(c.ok for c in self.phase_checks) and all(
            c.equal is not False for c in self.expected_comparisons
        )


def _phase_label(rotation: Fraction) -> int:
    # Only meaningful for period <= 2, where phases are +1 and -1.
    return 1 if rotation == 0 else -1


def verify_structure(
    ds,
    mu: WeightVector,
    strata,
    m_max: int,
    mode: str = "scaled",
    eta: WeightVector | None = None,
) -> QRReport:
    """Fit the multiplicity series against the declared strata.

    The fit uses period k = lcm(orders) and degree d = max degree cap,
    interpolating on the top k*(d+2) samples so that early pre-onset
    values cannot poison it; the onset is then scanned on the full
    series.  Raises StructureViolated when no onset at or below
    m_max/2 exists, with the mismatching m values as witnesses.
    """
    strata = tuple(strata)
    if not strata:
        raise BadStratum("at least one stratum must be declared")
    k = 1
    for s in strata:
        k = math.lcm(k, s.order)
    d = max(s.degree_bound for s in strata)
    required = 2 * (k + d + 2)
    if m_max < required:
        raise LocmultError(
            f"m_max={m_max} too small: need at least {required} for period {k} "
            f"and degree {d}",
            code="m-max-too-small",
        )
    series = multiplicity_series(ds, mu, 1, m_max, mode, eta)
    tail = [(m, v) for m, v in series if m > m_max - k * (d + 2)]
    try:
        qp = fit_quasi_polynomial(tail, k, d)
    except FitVerificationError as exc:
        witnesses = (exc.failed_m,) if exc.failed_m is not None else ()
        raise StructureViolated(
            f"structure violated: no degree-{d} period-{k} fit matches the "
            f"top samples ({exc})",
            witnesses=witnesses,
        ) from None
    onset = onset_threshold(series, qp)
    if onset is None or 2 * onset > m_max:
        witnesses = tuple(m for m, v in series if evaluate(qp, m) != v)
        raise StructureViolated(
            f"structure violated: fit fails for every onset <= {m_max}/2",
            witnesses=witnesses,
        )

    diag = None
    try:
        diag, _ = minimal_period([(m, v) for m, v in series if m >= onset], k, d)
    except LocmultError:
        pass

    phase_polys = None
    checks: list[PhaseCheck] = []
    comparisons: list[ExpectedComparison] = []
    if k <= 2:
        phase_polys = dict(phase_decomposition(qp))
        for phase in (1, -1) if k == 2 else (1,):
            fitted = phase_polys.get(phase, poly.ZERO)
            declaring = [s for s in strata if _phase_label(s.rotation) == phase]
            if declaring:
                bound = max(s.degree_bound for s in declaring)
                checks.append(
                    PhaseCheck(phase, fitted, bound, poly.degree(fitted) <= bound)
                )
                expected = None
                equal = None
                if all(s.expected_poly is not None for s in declaring):
                    expected = poly.ZERO
                    for s in declaring:
                        expected = poly.add(expected, s.expected_poly)
                    equal = expected == fitted
                comparisons.append(
                    ExpectedComparison(
                        phase,
                        tuple(s.label for s in declaring),
                        expected,
                        fitted,
                        equal,
                    )
                )
            else:
                checks.append(
                    PhaseCheck(phase, fitted, None, poly.degree(fitted) < 0)
                )

    return QRReport(
        fitted=qp,
        period_used=k,
        onset=onset,
        series=tuple(series),
        phase_polys=phase_polys,
        phase_checks=tuple(checks),
        expected_comparisons=tuple(comparisons),
        minimal_period_found=diag,
    )
