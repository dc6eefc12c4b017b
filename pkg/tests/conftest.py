"""Shared fixtures: shipped datasets and small root systems."""

from pathlib import Path

import pytest

from locmult import generate_weyl_group, load_dataset_file, wv

DATASETS = Path(__file__).resolve().parent.parent / "datasets"


@pytest.fixture(scope="session")
def cp1():
    return load_dataset_file(DATASETS / "cp1.json")


@pytest.fixture(scope="session")
def cp2_weighted():
    return load_dataset_file(DATASETS / "cp2_weighted.json")


@pytest.fixture(scope="session")
def cp2_standard():
    return load_dataset_file(DATASETS / "cp2_standard.json")


@pytest.fixture(scope="session")
def cp3_standard():
    return load_dataset_file(DATASETS / "cp3_standard.json")


@pytest.fixture(scope="session")
def a1():
    # weight lattice Z, simple root 2, coroot functional 1
    return generate_weyl_group((wv(2),), [[1]])


@pytest.fixture(scope="session")
def a1xa1():
    return generate_weyl_group((wv(2, 0), wv(0, 2)), [[1, 0], [0, 1]])


@pytest.fixture(scope="session")
def a2():
    # type A2 realized on the rank-3 lattice with roots e_i - e_j, where
    # the coordinate dot product agrees with the coroot pairing
    return generate_weyl_group(
        (wv(1, -1, 0), wv(0, 1, -1)), [[1, -1, 0], [0, 1, -1]]
    )
