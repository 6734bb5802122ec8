from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path

import pytest

from santalo.exact import ExactMatrix, parse_vector
from santalo.polytope import FiberProblem, HRep

DATA = Path(__file__).resolve().parent.parent / "data"

PENTAGON_B0 = parse_vector("1,4/5,4/5")
PENTAGON_B1 = parse_vector("1,1,4/5")
PENTAGON_ORIGIN = (Fraction(1, 5),) * 5
QUAD_B = parse_vector("1,3/2")
SEGMENT_B = parse_vector("1,2")
PERMUTAHEDRON_B = parse_vector("3,7,4,5,5,5,3,5,5,5,7")


def load(name: str) -> ExactMatrix:
    return ExactMatrix.from_text((DATA / name).read_text())


@pytest.fixture(scope="session")
def pentagon_A() -> ExactMatrix:
    return load("pentagon_A.txt")


@pytest.fixture(scope="session")
def pentagon(pentagon_A) -> FiberProblem:
    return FiberProblem(pentagon_A, PENTAGON_B0, load("pentagon_B.txt"), PENTAGON_ORIGIN)


@pytest.fixture(scope="session")
def pentagon_hrep() -> HRep:
    return HRep(load("pentagon_W.txt"), PENTAGON_ORIGIN)


@pytest.fixture(scope="session")
def square_hrep() -> HRep:
    return HRep(load("square_W.txt"), (1, 1, 1, 1))


@pytest.fixture(scope="session")
def quad_A() -> ExactMatrix:
    return load("quadrilateral_A.txt")


@pytest.fixture(scope="session")
def segment_A() -> ExactMatrix:
    return load("segment_A.txt")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("SANTALO_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended reproduction; set SANTALO_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
