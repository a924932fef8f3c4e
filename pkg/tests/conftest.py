"""Shared helpers for the test suite.

Finite-category tests work with exact rationals throughout, so equality
assertions are literal ``==`` on arrows and rows.  Randomised helpers always
take an explicit seed to keep every test reproducible.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from itcat import FUZZY_MIN, FUZZY_PROD, IDENTITY, POWERSET, PROBABILITY, KleisliArrow, arrow
from itcat.spaces import FiniteSpace

TESTDATA = Path(__file__).resolve().parent.parent / "testdata"

ALL_MONADS = (IDENTITY, PROBABILITY, FUZZY_MIN, FUZZY_PROD, POWERSET)
SAMPLED_MONADS = (PROBABILITY, FUZZY_MIN, FUZZY_PROD)
EXHAUSTIVE_MONADS = (IDENTITY, POWERSET)


def monad_id(monad) -> str:
    """Readable pytest parameter ids for monad instances."""
    return monad.tag


def random_arrow(monad, src: FiniteSpace, dst: FiniteSpace, rng: random.Random) -> KleisliArrow:
    """A Kleisli arrow src -> dst with independently sampled rows."""
    return arrow(monad, src, dst, [monad.sample_row(dst, rng) for _ in src.indices()])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260823)


def read_testdata(name: str) -> str:
    return (TESTDATA / name).read_text(encoding="utf-8")
