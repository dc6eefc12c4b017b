"""Polarization, partition counting, and multiplicity extraction."""

import itertools
import random
from fractions import Fraction

import pytest

from locmult import (
    CharacterTable,
    PartitionProblem,
    character_table,
    count_partitions,
    find_certificate,
    multiplicity,
    multiplicity_series,
    pairing,
    polarize,
    wv,
    zero_vector,
)
from locmult.localize import EtaNotGeneric, NotPointed


def naive_count(columns, target, lower_bounds, shift, eta):
    """Brute-force the partition count by bounded enumeration."""
    effective = target - shift
    budget = pairing(effective, eta)
    if budget < 0:
        budget = Fraction(0)
    ranges = []
    for a, lb in zip(columns, lower_bounds):
        hi = budget / pairing(a, eta)
        ranges.append(range(lb, int(hi) + 1))
    count = 0
    for ks in itertools.product(*ranges):
        acc = zero_vector(target.rank)
        for k, a in zip(ks, columns):
            acc = acc + k * a
        if acc == effective:
            count += 1
    return count


def by_label(ds, label):
    return next(fp for fp in ds.fixed_points if fp.label == label)


def test_polarize_no_flips(cp2_weighted):
    pol = polarize(by_label(cp2_weighted, "P0"), wv(1))
    assert pol.polarized_weights == (wv(2), wv(1))
    assert pol.flip_flags == (False, False)
    assert pol.sign_count == 0
    assert pol.shift == wv(0)


def test_polarize_all_flips(cp2_weighted):
    pol = polarize(by_label(cp2_weighted, "P1"), wv(1))
    assert pol.polarized_weights == (wv(2), wv(1))
    assert pol.flip_flags == (True, True)
    assert pol.sign_count == 2
    assert pol.shift == wv(3)


def test_polarize_mixed(cp2_weighted):
    pol = polarize(by_label(cp2_weighted, "P2"), wv(1))
    assert pol.polarized_weights == (wv(1), wv(1))
    assert pol.flip_flags == (True, False)
    assert pol.sign_count == 1
    assert pol.shift == wv(1)


def test_polarize_rejects_orthogonal_eta(cp2_standard):
    fp = by_label(cp2_standard, "P0")
    # (0,1)-direction is orthogonal to the normal weight (1,0) at P0
    with pytest.raises(EtaNotGeneric):
        polarize(fp, wv(0, 1))


def test_count_partitions_examples():
    assert count_partitions(PartitionProblem((wv(1), wv(1)), wv(2))) == 3
    assert count_partitions(PartitionProblem((wv(2), wv(1)), wv(4))) == 3
    assert count_partitions(PartitionProblem((wv(1), wv(1)), wv(-1))) == 0
    p = PartitionProblem((wv(1, 0), wv(0, 1), wv(1, 1)), wv(1, 1))
    assert count_partitions(p) == 2


def test_count_partitions_lower_bounds_and_shift():
    p = PartitionProblem((wv(1), wv(1)), wv(2), lower_bounds=(1, 0))
    assert count_partitions(p) == 2  # (1,1) and (2,0)
    p = PartitionProblem((wv(1), wv(1)), wv(2), shift=wv(1))
    assert count_partitions(p) == 2  # effective target (1)
    p = PartitionProblem((wv(1), wv(1)), wv(2), lower_bounds=(1, 1), shift=wv(1))
    assert count_partitions(p) == 0  # effective target (1) minus bounds (2)


def test_count_partitions_no_columns():
    assert count_partitions(PartitionProblem((), wv(0, 0))) == 1
    assert count_partitions(PartitionProblem((), wv(1, 0))) == 0


def test_count_partitions_non_integral_target_is_empty():
    p = PartitionProblem((wv(2),), Fraction(1, 2) * wv(1))
    assert count_partitions(p) == 0


def test_not_pointed_rejected():
    with pytest.raises(NotPointed):
        PartitionProblem((wv(1), wv(-1)), wv(0))
    with pytest.raises(NotPointed):
        find_certificate((wv(1, 0), wv(-1, 0)))


def test_certificate_for_thin_cone():
    # pointed, but no small axis-aligned eta works
    cols = (wv(0, 1), wv(1, -10))
    eta = find_certificate(cols)
    for a in cols:
        assert pairing(a, eta) > 0


def test_explicit_eta_must_be_positive_on_columns():
    with pytest.raises(NotPointed):
        PartitionProblem((wv(1), wv(2)), wv(3), eta=wv(-1))


def test_multiplicity_examples(cp1, cp2_weighted):
    assert multiplicity(cp2_weighted, wv(0), 4) == 3
    assert multiplicity(cp2_weighted, wv(-2), 4) == 2
    assert multiplicity(cp2_weighted, wv(5), 4) == 0
    assert multiplicity(cp1, wv(2), 3) == 1


def test_multiplicity_validates_input(cp1):
    with pytest.raises(Exception):
        multiplicity(cp1, wv(Fraction(1, 2)), 2)
    with pytest.raises(Exception):
        multiplicity(cp1, wv(0), 0)
    with pytest.raises(Exception):
        multiplicity(cp1, wv(0), True)
    with pytest.raises(Exception):
        multiplicity(cp1, wv(0, 0), 2)  # rank mismatch


def test_character_table_examples(cp1, cp2_weighted):
    assert character_table(cp1, 2) == CharacterTable(
        {wv(0): 1, wv(1): 1, wv(2): 1}
    )
    assert character_table(cp2_weighted, 1) == CharacterTable(
        {wv(-1): 1, wv(0): 1, wv(1): 1}
    )
    table = character_table(cp2_weighted, 2)
    assert table == CharacterTable(
        {wv(-2): 1, wv(-1): 1, wv(0): 2, wv(1): 1, wv(2): 1}
    )
    assert table.total() == 6


def test_character_table_type():
    t = CharacterTable({wv(1): 2, wv(0): 0})
    assert t[wv(1)] == 2
    assert t[wv(0)] == 0
    assert wv(0) not in t
    assert len(t) == 1
    u = t + CharacterTable({wv(1): -2, wv(3): 1})
    assert u == CharacterTable({wv(3): 1})
    assert (u - u) == CharacterTable()
    assert not (u - u)
    assert t.scale(3)[wv(1)] == 6
    assert t.scale(0) == CharacterTable()
    assert t.total() == 2
    assert t.support() == (wv(1),)


def test_multiplicity_series_examples(cp1, cp2_weighted):
    scaled = multiplicity_series(cp2_weighted, wv(0), 1, 6)
    assert scaled == [(1, 1), (2, 2), (3, 2), (4, 3), (5, 3), (6, 4)]
    fixed = multiplicity_series(cp2_weighted, wv(1), 1, 4, mode="fixed")
    assert fixed == [(1, 1), (2, 1), (3, 2), (4, 2)]
    assert multiplicity_series(cp1, wv(0), 1, 3) == [(1, 1), (2, 1), (3, 1)]


def test_series_scaled_needs_lattice_points(cp1):
    with pytest.raises(Exception) as err:
        multiplicity_series(cp1, wv(Fraction(1, 2)), 1, 4)
    assert "lattice" in str(err.value)
    # fixed mode rejects a fractional target outright
    with pytest.raises(Exception):
        multiplicity_series(cp1, wv(Fraction(1, 2)), 1, 4, mode="fixed")


def test_chamber_independence(cp1, cp2_weighted, cp2_standard, cp3_standard):
    grids = [
        (cp1, [wv(1), wv(-1), wv(5)], [wv(0), wv(1), wv(3)]),
        (cp2_weighted, [wv(1), wv(-1), wv(3)], [wv(0), wv(-2), wv(1)]),
        (cp2_standard, [wv(2, 1), wv(1, 2), wv(-1, -2)],
         [wv(0, 0), wv(1, 0), wv(1, 1)]),
        (cp3_standard, [wv(1, 2, 4), wv(4, 2, 1), wv(-1, -2, -4)],
         [wv(0, 0, 0), wv(1, 1, 0)]),
    ]
    for ds, etas, mus in grids:
        for mu in mus:
            for m in (1, 2, 3, 4):
                values = {multiplicity(ds, mu, m, eta=eta) for eta in etas}
                assert len(values) == 1, (ds.metadata.get("name"), mu, m)


def test_support_vanishes_outside_box(cp2_weighted, cp2_standard):
    for m in (1, 2, 3):
        assert multiplicity(cp2_weighted, wv(m + 1), m) == 0
        assert multiplicity(cp2_weighted, wv(-m - 1), m) == 0
        assert multiplicity(cp2_standard, wv(m + 1, 0), m) == 0
        assert multiplicity(cp2_standard, wv(0, -1), m) == 0


def test_coefficient_linearity(cp2_weighted):
    from locmult import load_dataset, serialize_dataset
    import json

    doc = json.loads(serialize_dataset(cp2_weighted))
    for fp in doc["fixed_points"]:
        fp["coefficient"] = ["2"]
    doubled = load_dataset(json.dumps(doc))
    for m in (1, 2, 3):
        base = character_table(cp2_weighted, m)
        twice = character_table(doubled, m)
        assert twice == base.scale(2)


def test_count_partitions_matches_naive_enumeration():
    rng = random.Random(20260816)
    checked = 0
    while checked < 120:
        rank = rng.randint(1, 3)
        ncols = rng.randint(1, 4)
        cols = []
        for _ in range(ncols):
            coords = [rng.randint(-3, 3) for _ in range(rank)]
            if all(c == 0 for c in coords):
                coords[rng.randrange(rank)] = 1
            cols.append(wv(*coords))
        try:
            eta = find_certificate(cols)
        except NotPointed:
            continue
        target = zero_vector(rank)
        for a in cols:
            target = target + rng.randint(0, 3) * a
        extra = wv(*[rng.randint(-1, 1) for _ in range(rank)])
        target = target + extra
        if pairing(target, eta) > 30:
            continue
        lower = tuple(rng.randint(0, 1) for _ in cols)
        shift = zero_vector(rank)
        if rng.random() < 0.3:
            shift = cols[rng.randrange(ncols)]
        problem = PartitionProblem(tuple(cols), target,
                                   lower_bounds=lower, shift=shift, eta=eta)
        expected = naive_count(cols, target, lower, shift, eta)
        assert count_partitions(problem) == expected, (cols, target, lower, shift)
        checked += 1
    assert checked == 120
