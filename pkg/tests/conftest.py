"""Shared fixtures and independent oracles for stampkit tests."""

import itertools
import math
import os
import random

import hypothesis.strategies as st
import pytest

from stampkit.config import get_settings
from stampkit.models import Basis


@pytest.fixture(autouse=True)
def _clean_settings(monkeypatch):
    """Every test starts from default settings, whatever the shell exports."""
    for key in list(os.environ):
        if key.startswith("STAMPKIT_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# ---- Oracles (deliberately naive, share no code with stampkit) ----


def oracle_n_h(denoms, h: int) -> int:
    """Smallest n >= 1 not equal to sum x_i a_i for any x with sum x_i <= h."""
    payable = set()
    for xs in itertools.product(range(h + 1), repeat=len(denoms)):
        if sum(xs) <= h:
            payable.add(sum(x * a for x, a in zip(xs, denoms)))
    n = 1
    while n in payable:
        n += 1
    return n


def oracle_min_weight(denoms, n: int) -> int | None:
    """Minimum sum x_i over all representations of n (None if none exists)."""
    best = None
    for xs in itertools.product(*(range(n // a + 1) for a in denoms)):
        if sum(x * a for x, a in zip(xs, denoms)) == n:
            weight = sum(xs)
            if best is None or weight < best:
                best = weight
    return best


def oracle_frobenius(denoms) -> int:
    """Largest non-representable integer, scanning up to a_1 * a_k + a_1."""
    bound = denoms[0] * denoms[-1] + denoms[0]
    reachable = {0}
    for n in range(1, bound):
        if any(n - a in reachable for a in denoms if a <= n):
            reachable.add(n)
    gaps = [n for n in range(bound) if n not in reachable]
    return gaps[-1] if gaps else -1


# ---- Random instance helpers ----


def random_lpsp_basis(rng: random.Random, max_k: int = 4, max_top: int = 12) -> Basis:
    k = rng.randint(1, max_k)
    rest = sorted(rng.sample(range(2, max_top + 1), k - 1))
    return Basis((1, *rest))


def random_gcd_one_basis(rng: random.Random, max_k: int, max_value: int, min_value: int = 2) -> Basis:
    while True:
        k = rng.randint(2, max_k)
        denoms = sorted(rng.sample(range(min_value, max_value + 1), k))
        if math.gcd(*denoms) == 1:
            return Basis(tuple(denoms))


# ---- Hypothesis strategies ----

lpsp_bases = st.lists(st.integers(min_value=2, max_value=12), max_size=3, unique=True).map(
    lambda rest: Basis((1, *sorted(rest)))
)

lemma_bases = st.lists(st.integers(min_value=2, max_value=20), min_size=1, max_size=3, unique=True).map(
    lambda rest: Basis((1, *sorted(rest)))
)

gcd_one_bases = (
    st.lists(st.integers(min_value=2, max_value=30), min_size=2, max_size=4, unique=True)
    .filter(lambda xs: math.gcd(*xs) == 1)
    .map(lambda xs: Basis(tuple(sorted(xs))))
)
