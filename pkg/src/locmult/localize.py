"""Multiplicity extraction from fixed-point data by polarization.

The character of the m-th power of the quantizing bundle is a sum over
fixed points of t^(m*fiber) / prod_j (1 - t^(-alpha_j)).  Expanding
every factor toward a chosen generic direction eta (flipping the sign
of each normal weight that pairs negatively with eta) turns each term
into a signed, shifted vector partition generating function, and the
multiplicity of a weight becomes a finite signed count of lattice
partitions.  The count is independent of eta; tests exercise this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import LocmultError
from .fpdata import FixedPointDatum, LocalizationDataset
from .lattice import WeightVector, pairing, pick_generic_direction, zero_vector

MODE_FIXED = "fixed"
MODE_SCALED = "scaled"


class EtaNotGeneric(LocmultError):
    code = "eta-not-generic"


class NotPointed(LocmultError):
    code = "not-pointed"


class ComputationError(LocmultError):
    code = "computation-error"


@dataclass(frozen=True)
class PolarizedFixedPoint:
    """Fixed point with normal weights flipped into the eta-positive
    half space.  sign_count is the number of flips; shift is the sum of
    the flipped (already negated) weights."""

    source_label: str
    polarized_weights: tuple[WeightVector, ...]
    flip_flags: tuple[bool, ...]
    sign_count: int
    shift: WeightVector


def polarize(fp: FixedPointDatum, eta: WeightVector) -> PolarizedFixedPoint:
    polarized = []
    flags = []
    shift = zero_vector(len(eta.coords))
    for a in fp.normal_weights:
        p = pairing(a, eta)
        if p == 0:
            raise EtaNotGeneric(
                f"eta not generic: orthogonal to normal weight {a} at {fp.label!r}"
            )
        if p < 0:
            polarized.append(-a)
            flags.append(True)
            shift = shift + (-a)
        else:
            polarized.append(a)
            flags.append(False)
    return PolarizedFixedPoint(
        source_label=fp.label,
        polarized_weights=tuple(polarized),
        flip_flags=tuple(flags),
        sign_count=sum(flags),
        shift=shift,
    )


def _feasible_point(cons, nvars):
    """Point satisfying all linear constraints sum(c_i x_i) >= k, or None.

    Fourier-Motzkin elimination; fine at the column counts seen here.
    """
    systems = [None] * nvars
    work = [(tuple(Fraction(c) for c in cs), Fraction(k)) for cs, k in cons]
    for v in range(nvars - 1, -1, -1):
        systems[v] = work
        pos = [c for c in work if c[0][v] > 0]
        neg = [c for c in work if c[0][v] < 0]
        new = [c for c in work if c[0][v] == 0]
        for cp, kp in pos:
            for cn, kn in neg:
                fp_, fn = -cn[v], cp[v]
                combo = tuple(fp_ * a + fn * b for a, b in zip(cp, cn))
                new.append((combo, fp_ * kp + fn * kn))
        work = new
    if any(k > 0 for _, k in work):
        return None
    point = [Fraction(0)] * nvars
    for v in range(nvars):
        lo = None
        hi = None
        for cs, k in systems[v]:
            if cs[v] == 0:
                continue
            rest = sum((cs[i] * point[i] for i in range(v)), Fraction(0))
            bound = (k - rest) / cs[v]
            if cs[v] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            point[v] = (lo + hi) / 2
        elif lo is not None:
            point[v] = lo
        elif hi is not None:
            point[v] = hi
    return point


def find_certificate(columns: Iterable[WeightVector]) -> WeightVector:
    """Direction pairing strictly positively with every column.

    Existence is exactly pointedness of the cone the columns span;
    raises NotPointed otherwise.
    """
    columns = list(columns)
    if not columns:
        raise NotPointed("no columns to certify")
    rank = len(columns[0].coords)
    cons = [(a.coords, Fraction(1)) for a in columns]
    point = _feasible_point(cons, rank)
    if point is None:
        raise NotPointed(
            "columns span a non-pointed cone; partition counts would be infinite"
        )
    return WeightVector(tuple(point))


@dataclass(frozen=True)
class PartitionProblem:
    """Count lattice combinations of the columns hitting a target.

    Solutions are k in Z^N with sum_j k_j * columns[j] = target - shift
    and k_j >= lower_bounds[j].  eta certifies pointedness (all columns
    pair strictly positively with it); when omitted, a certificate is
    searched for and construction fails if none exists.
    """

    columns: tuple[WeightVector, ...]
    target: WeightVector
    lower_bounds: tuple[int, ...] = None
    shift: WeightVector = None
    eta: WeightVector = None

    def __post_init__(self):
        cols = tuple(self.columns)
        object.__setattr__(self, "columns", cols)
        rank = len(self.target.coords)
        if self.lower_bounds is None:
            object.__setattr__(self, "lower_bounds", (0,) * len(cols))
        else:
            object.__setattr__(self, "lower_bounds", tuple(self.lower_bounds))
        if self.shift is None:
            object.__setattr__(self, "shift", zero_vector(rank))
        if len(self.lower_bounds) != len(cols):
            raise ComputationError("one lower bound per column is required")
        if any(b not in (0, 1) for b in self.lower_bounds):
            raise ComputationError("lower bounds must be 0 or 1")
        for a in cols:
            if len(a.coords) != rank:
                raise ComputationError("column rank differs from target rank")
        if self.eta is None:
            object.__setattr__(self, "eta", find_certificate(cols) if cols else None)
        elif any(pairing(a, self.eta) <= 0 for a in cols):
            raise NotPointed(
                "given direction does not pair positively with every column"
            )


def count_partitions(problem: PartitionProblem) -> int:
    """Exact number of solutions; memoized depth-first enumeration."""
    cols = problem.columns
    eff = problem.target - problem.shift
    for lb, a in zip(problem.lower_bounds, cols):
        if lb:
            eff = eff - a
    if not cols:
        return 1 if eff.is_zero() else 0
    eta = problem.eta
    steps = [pairing(a, eta) for a in cols]
    memo: dict[tuple, int] = {}

    def count(i: int, rem: WeightVector) -> int:
        budget = pairing(rem, eta)
        if budget < 0:
            return 0
        if i == len(cols):
            return 1 if rem.is_zero() else 0
        key = (i, rem.coords)
        hit = memo.get(key)
        if hit is not None:
            return hit
        a = cols[i]
        total = 0
        top = int(budget / steps[i])
        cur = rem
        for _ in range(top + 1):
            total += count(i + 1, cur)
            cur = cur - a
        memo[key] = total
        return total

    return count(0, eff)


class CharacterTable:
    """Finitely supported integer-multiplicity function on the lattice."""

    def __init__(self, entries=()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[WeightVector, int] = {}
        for w, c in items:
            if not isinstance(w, WeightVector):
                w = WeightVector(tuple(w))
            if not w.is_integral():
                raise ComputationError(f"character weight {w} is not a lattice point")
            c = Fraction(c)
            if c.denominator != 1:
                raise ComputationError(f"non-integer multiplicity {c} at {w}")
            acc[w] = acc.get(w, 0) + int(c)
        self._table = {w: c for w, c in acc.items() if c != 0}

    def __getitem__(self, w: WeightVector) -> int:
        return self._table.get(w, 0)

    def __contains__(self, w: WeightVector) -> bool:
        return w in self._table

    def __len__(self) -> int:
        return len(self._table)

    def __bool__(self) -> bool:
        return bool(self._table)

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterTable) and self._table == other._table

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __iter__(self):
        return iter(self.support())

    def support(self) -> tuple[WeightVector, ...]:
        return tuple(sorted(self._table, key=lambda w: w.coords))

    def items(self) -> list[tuple[WeightVector, int]]:
        return [(w, self._table[w]) for w in self.support()]

    def total(self) -> int:
        return sum(self._table.values())

    def __add__(self, other: "CharacterTable") -> "CharacterTable":
        return CharacterTable(list(self._table.items()) + list(other._table.items()))

    def __sub__(self, other: "CharacterTable") -> "CharacterTable":
        return self + other.scale(-1)

    def scale(self, c: int) -> "CharacterTable":
        return CharacterTable([(w, v * c) for w, v in self._table.items()])

    def __repr__(self):
        inner = ", ".join(f"({w}): {c}" for w, c in self.items())
        return "CharacterTable{%s}" % inner


def generic_direction(ds: LocalizationDataset) -> WeightVector:
    """Default eta: generic for every normal weight of the dataset."""
    return pick_generic_direction(ds.all_normal_weights(), ds.rank)


def _check_power(m):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ComputationError(f"power m must be a positive integer, got {m!r}")


def _contribution(
    fp: FixedPointDatum, pol: PolarizedFixedPoint, mu: WeightVector, m: int,
    eta: WeightVector,
) -> Fraction:
    prob = PartitionProblem(
        columns=pol.polarized_weights,
        target=m * fp.fiber_weight - mu,
        shift=pol.shift,
        eta=eta,
    )
    n = count_partitions(prob)
    if n == 0:
        return Fraction(0)
    return fp.coefficient_at(m) * (-1) ** pol.sign_count * n


def multiplicity(
    ds: LocalizationDataset, mu: WeightVector, m: int,
    eta: WeightVector | None = None,
) -> int:
    """Multiplicity of the weight mu in the m-th power character."""
    _check_power(m)
    if len(mu.coords) != ds.rank:
        raise ComputationError(
            f"weight rank {len(mu.coords)} differs from dataset rank {ds.rank}"
        )
    if not mu.is_integral():
        raise ComputationError(f"weight {mu} is not a lattice point")
    if eta is None:
        eta = generic_direction(ds)
    total = Fraction(0)
    for fp in ds.fixed_points:
        total += _contribution(fp, polarize(fp, eta), mu, m, eta)
    if total.denominator != 1:
        raise ComputationError(
            f"multiplicity at {mu} is not an integer: {total}",
            code="non-integer-multiplicity",
        )
    return int(total)


def character_table(
    ds: LocalizationDataset, m: int, eta: WeightVector | None = None
) -> CharacterTable:
    """Full character of the m-th power as a weight/multiplicity table.

    The support lies in the convex hull of the scaled fiber weights, so
    scanning their integer bounding box is exhaustive.
    """
    _check_power(m)
    if eta is None:
        eta = generic_direction(ds)
    pols = [(fp, polarize(fp, eta)) for fp in ds.fixed_points]
    corners = [m * fp.fiber_weight for fp in ds.fixed_points]
    entries = []
    ranges = []
    for i in range(ds.rank):
        vals = [int(c.coords[i]) for c in corners]
        ranges.append(range(min(vals), max(vals) + 1))

    def scan(prefix, i):
        if i == ds.rank:
            mu = WeightVector(tuple(prefix))
            val = Fraction(0)
            for fp, pol in pols:
                val += _contribution(fp, pol, mu, m, eta)
            if val != 0:
                if val.denominator != 1:
                    raise ComputationError(
                        f"multiplicity at {mu} is not an integer: {val}",
                        code="non-integer-multiplicity",
                    )
                entries.append((mu, int(val)))
            return
        for x in ranges[i]:
            scan(prefix + [Fraction(x)], i + 1)

    scan([], 0)
    return CharacterTable(entries)


def multiplicity_series(
    ds: LocalizationDataset,
    mu: WeightVector,
    m_from: int,
    m_to: int,
    mode: str = MODE_SCALED,
    eta: WeightVector | None = None,
) -> list[tuple[int, int]]:
    """Multiplicities for m in [m_from, m_to], at mu (fixed mode) or at
    m*mu (scaled mode)."""
    if mode not in (MODE_FIXED, MODE_SCALED):
        raise ComputationError(f"unknown mode {mode!r}", code="bad-mode")
    _check_power(m_from)
    if m_to < m_from:
        raise ComputationError("empty power range")
    if eta is None:
        eta = generic_direction(ds)
    out = []
    for m in range(m_from, m_to + 1):
        target = mu if mode == MODE_FIXED else m * mu
        if not target.is_integral():
            raise ComputationError(
                f"scaled weight {m}*({mu}) is not a lattice point",
                code="non-lattice-weight",
            )
        out.append((m, multiplicity(ds, target, m, eta)))
    return out
