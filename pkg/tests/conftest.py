"""Shared builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from loopstrata.mpfilt import ApartmentPoint, TwistedLoopDatum
from loopstrata.rootdata import build_root_datum, pinned_automorphism


def loop_datum(t: str, rank: int, perm=None, n=None) -> TwistedLoopDatum:
    datum = build_root_datum(t, rank)
    if perm is None:
        perm = tuple(range(rank))
    return TwistedLoopDatum(datum, pinned_automorphism(datum, perm), n)


@pytest.fixture(scope="session")
def a1():
    return loop_datum("A", 1)


@pytest.fixture(scope="session")
def a2():
    return loop_datum("A", 2)


@pytest.fixture(scope="session")
def a2_twisted():
    return loop_datum("A", 2, (1, 0), 2)


@pytest.fixture(scope="session")
def d4_triality():
    return loop_datum("D", 4, (2, 1, 3, 0), 3)


def pt(*coords) -> ApartmentPoint:
    return ApartmentPoint(tuple(Fraction(c) for c in coords))
