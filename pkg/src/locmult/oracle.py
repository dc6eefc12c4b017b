"""Independent character oracle for linear torus actions on projective
space.

Sections of the m-th power of the dual tautological bundle are the
degree-m monomials in the homogeneous coordinates; when the torus
scales coordinate i by the character w_i, the monomial with exponents
e has weight sum_i e_i * w_i.  This enumeration never touches the
fixed-point machinery, so it arbitrates the weight-sign convention of
the localization datasets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import LocmultError
from .lattice import WeightVector, zero_vector
from .localize import CharacterTable


@dataclass(frozen=True)
class ProjectiveActionSpec:
    """Diagonal action on projective space, one weight per coordinate."""

    coord_weights: tuple[WeightVector, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "coord_weights", tuple(self.coord_weights))
        if not self.coord_weights:
            raise LocmultError("need at least one coordinate weight")
        rank = len(self.coord_weights[0].coords)
        for w in self.coord_weights:
            if len(w.coords) != rank or not w.is_integral():
                raise LocmultError(
                    f"coordinate weight {w} is not a rank-{rank} lattice point"
                )
        if isinstance(self.degree, bool) or not isinstance(self.degree, int):
            raise LocmultError("degree must be an integer")
        if self.degree < 0:
            raise LocmultError("degree must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.coord_weights[0].coords)


def _exponents(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponents(total - head, parts - 1):
            yield (head,) + rest


def monomial_character(spec: ProjectiveActionSpec) -> CharacterTable:
    """Weight multiplicities of the degree-m monomial space."""
    entries: dict[WeightVector, int] = {}
    for e in _exponents(spec.degree, len(spec.coord_weights)):
        w = zero_vector(spec.rank)
        for k, cw in zip(e, spec.coord_weights):
            if k:
                w = w + k * cw
        entries[w] = entries.get(w, 0) + 1
    return CharacterTable(entries)


def total_dimension(spec: ProjectiveActionSpec) -> int:
    """Dimension of the degree-m monomial space, binomial(m + n, n)."""
    n = len(spec.coord_weights) - 1
    return comb(spec.degree + n, n)
