"""Weyl-group reduction of characters: irreducible building blocks,
decomposition of invariant characters, and a wall-crossing heuristic
for fixed-point data.

Irreducible characters come from the alternating-sum multiplicity
formula with the positive roots as partition columns; decomposition
inverts it by the matching alternating sum over translated weights.
Both use the same delta shift (half the sum of the positive roots).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LocmultError
from .fpdata import LocalizationDataset
from .lattice import RootSystem, WeightVector, is_dominant, pairing
from .localize import CharacterTable, PartitionProblem, count_partitions, find_certificate


class NonDominantWeight(LocmultError):
    code = "non-dominant-weight"


class MissingRootSystem(LocmultError):
    code = "missing-root-system"


@dataclass
class DecompositionResult:
    """Outcome of decomposing a character into irreducibles.

    multiplicities maps dominant highest weights to (possibly negative)
    integer coefficients; residual is whatever the combination fails to
    account for.  ok means W-invariant input and empty residual.
    """

    multiplicities: dict[WeightVector, int]
    residual: CharacterTable
    w_invariant: bool

    @property
    def ok(self) -> bool:
        return self.w_invariant and not self.residual


def _kostant_counter(rs: RootSystem):
    cols = rs.positive_roots
    eta = find_certificate(cols)

    def count(target: WeightVector) -> int:
        if not target.is_integral():
            return 0
        if pairing(target, eta) < 0:
            return 0
        return count_partitions(
            PartitionProblem(columns=cols, target=target, eta=eta)
        )

    return count


def irreducible_character(rs: RootSystem, lam: WeightVector) -> CharacterTable:
    """Weight multiplicities of the irreducible with highest weight lam."""
    if not lam.is_integral():
        raise NonDominantWeight(f"highest weight {lam} is not a lattice point")
    if not is_dominant(lam, rs):
        raise NonDominantWeight(f"highest weight {lam} is not dominant")
    count = _kostant_counter(rs)
    delta = rs.delta
    shifted = lam + delta
    orbit = [w.apply(lam) for w in rs.weyl_elements]
    entries = []
    ranges = []
    for i in range(rs.rank):
        vals = [v.coords[i] for v in orbit]
        ranges.append(range(int(min(vals)), int(max(vals)) + 1))

    def scan(prefix, i):
        if i == rs.rank:
            mu = WeightVector(tuple(prefix))
            total = 0
            for w in rs.weyl_elements:
                total += w.sign * count(w.apply(shifted) - (mu + delta))
            if total:
                entries.append((mu, total))
            return
        for x in ranges[i]:
            scan(prefix + [Fraction(x)], i + 1)

    scan([], 0)
    return CharacterTable(entries)


def is_w_invariant(chi: CharacterTable, rs: RootSystem) -> bool:
    return all(
        chi[w.apply(mu)] == c for mu, c in chi.items() for w in rs.weyl_elements
    )


def decompose_character(chi: CharacterTable, rs: RootSystem) -> DecompositionResult:
    """Extract irreducible coefficients from a character table.

    Works for virtual characters too: coefficients may be negative.
    The caller decides what to make of a nonempty residual or a
    non-invariant input; both are reported, not raised.
    """
    invariant = is_w_invariant(chi, rs)
    delta = rs.delta
    candidates = set()
    for mu, _ in chi.items():
        for w in rs.weyl_elements:
            cand = w.apply(mu + delta) - delta
            if cand.is_integral() and is_dominant(cand, rs):
                candidates.add(cand)
    mults: dict[WeightVector, int] = {}
    for lam in sorted(candidates, key=lambda v: v.coords):
        n = 0
        for w in rs.weyl_elements:
            probe = w.apply(lam + delta) - delta
            if probe.is_integral():
                n += w.sign * chi[probe]
        if n:
            mults[lam] = n
    residual = chi
    for lam, n in mults.items():
        residual = residual - irreducible_character(rs, lam).scale(n)
    return DecompositionResult(mults, residual, invariant)


def tensor(a: CharacterTable, b: CharacterTable) -> CharacterTable:
    """Pointwise product of characters: convolution of the tables."""
    entries: dict[WeightVector, int] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            key = w1 + w2
            entries[key] = entries.get(key, 0) + c1 * c2
    return CharacterTable(entries)


@dataclass(frozen=True)
class WallFailure:
    root: WeightVector
    reason: str


@dataclass(frozen=True)
class RegularImageReport:
    """Necessary-condition screen: the fiber weights should sit strictly
    on one side of every root hyperplane for the moment image to avoid
    the walls.  A pass is not a proof; a failure pinpoints the wall."""

    holds: bool
    failures: tuple[WallFailure, ...]


def regular_image_check(
    ds: LocalizationDataset, rs: RootSystem | None = None
) -> RegularImageReport:
    if rs is None:
        rs = ds.root_system
    if rs is None:
        raise MissingRootSystem("dataset carries no root system")
    failures = []
    for beta in rs.positive_roots:
        vals = [pairing(fp.fiber_weight, beta) for fp in ds.fixed_points]
        if any(v == 0 for v in vals):
            failures.append(WallFailure(beta, "a fiber weight lies on the wall"))
        elif any(v > 0 for v in vals) and any(v < 0 for v in vals):
            failures.append(WallFailure(beta, "fiber weights straddle the wall"))
    return RegularImageReport(not failures, tuple(failures))
