"""
Domain types shared by all solvers.

A ``Basis`` is an immutable, validated denomination list. ``Representation``
is a dense coefficient vector aligned with a basis, and ``WeightTable`` holds
minimal representation weights w(0..limit) for a basis containing 1.

Scalar arithmetic is done on Python ints (unbounded). Only table storage is
fixed-width (numpy int64); values are range-checked before they reach it.
"""

import math
import operator
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import (
    ArithmeticOverflowError,
    EmptyBasisError,
    LengthMismatchError,
    NonPositiveError,
    NotStrictlyIncreasingError,
    ResourceLimitError,
)

INT64_MAX = int(np.iinfo(np.int64).max)


def ensure_int64(value: int, what: str = "value") -> int:
    """Return value unchanged if it fits int64 storage, else raise Overflow."""
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise ArithmeticOverflowError(f"{what} {value} does not fit a 64-bit table index")
    return value


def ensure_table_size(entries: int, max_table: int, what: str = "table") -> None:
    ensure_int64(entries, what=f"{what} size")
    if entries > max_table:
        raise ResourceLimitError(entries, max_table, what=what)


# ---------------------------------------------------------------------------
# Basis
# ---------------------------------------------------------------------------


def _as_int(value: Any) -> int:
    """Plain int for any integer-like value (numpy integers included); bools are refused."""
    if isinstance(value, (bool, np.bool_)):
        raise NonPositiveError(f"denomination {value!r} is not a positive integer")
    try:
        return operator.index(value)
    except TypeError:
        raise NonPositiveError(f"denomination {value!r} is not a positive integer")


@dataclass(frozen=True)
class Basis:
    """Strictly increasing positive denominations a_1 < ... < a_k."""

    denoms: tuple[int, ...]
    gcd: int = field(init=False, compare=False)
    contains_one: bool = field(init=False, compare=False)

    def __post_init__(self):
        raw = tuple(self.denoms)
        if not raw:
            raise EmptyBasisError("basis needs at least one denomination")
        denoms = tuple(_as_int(d) for d in raw)
        for d in denoms:
            if d < 1:
                raise NonPositiveError(f"denomination {d} is not positive")
        for prev, cur in zip(denoms, denoms[1:]):
            if cur <= prev:
                raise NotStrictlyIncreasingError(f"denominations must be strictly increasing, got {prev} then {cur}")

        object.__setattr__(self, "denoms", denoms)
        object.__setattr__(self, "gcd", math.gcd(*denoms))
        object.__setattr__(self, "contains_one", denoms[0] == 1)

    @property
    def k(self) -> int:
        return len(self.denoms)

    @property
    def smallest(self) -> int:
        return self.denoms[0]

    @property
    def largest(self) -> int:
        return self.denoms[-1]

    def __iter__(self):
        return iter(self.denoms)

    def __len__(self) -> int:
        return len(self.denoms)

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.denoms)

    def to_dict(self) -> dict[str, Any]:
        return {
            "denoms": list(self.denoms),
            "k": self.k,
            "gcd": self.gcd,
            "contains_one": self.contains_one,
        }


def validate_basis(denoms: Iterable[int]) -> Basis:
    """Validate a denomination list and return the immutable Basis."""
    return Basis(tuple(denoms))


# ---------------------------------------------------------------------------
# Representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """Coefficients x_1..x_k (non-negative) and their weight sum(x_i)."""

    coeffs: tuple[int, ...]
    weight: int = field(init=False)

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for x in coeffs:
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise ValueError(f"coefficient {x!r} is not a non-negative integer")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "weight", sum(coeffs))

    @classmethod
    def zero(cls, k: int) -> "Representation":
        return cls((0,) * k)

    def value(self, basis: Basis) -> int:
        return rep_value(self, basis)

    def to_dict(self, basis: Basis | None = None) -> dict[str, Any]:
        data: dict[str, Any] = {"coeffs": list(self.coeffs), "weight": self.weight}
        if basis is not None:
            data["value"] = rep_value(self, basis)
        return data


def rep_value(rep: Representation, basis: Basis) -> int:
    """Exact value sum(coeffs[i] * denoms[i])."""
    if len(rep.coeffs) != basis.k:
        raise LengthMismatchError(f"representation has {len(rep.coeffs)} coefficients, basis has {basis.k}")
    return sum(x * d for x, d in zip(rep.coeffs, basis.denoms))


# ---------------------------------------------------------------------------
# WeightTable
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeightTable:
    """
    Minimal representation weights w[0..limit] for a basis containing 1.

    The array is read-only; build it with ``stampkit.lpsp.build_weight_table``.
    """

    basis: Basis
    limit: int
    w: np.ndarray = field(repr=False)

    def _check_index(self, n: int) -> None:
        if not 0 <= n <= self.limit:
            raise ValueError(f"{n} is outside the table range 0..{self.limit}")

    def weight(self, n: int) -> int:
        self._check_index(n)
        return int(self.w[n])

    def representation(self, n: int) -> Representation:
        """
        One minimum-weight representation of n, re-derived from the table.

        At each step the largest denomination d with w[n-d] = w[n]-1 is taken.
        """
        self._check_index(n)
        denoms = self.basis.denoms
        coeffs = [0] * len(denoms)
        remaining = n
        while remaining > 0:
            target = self.w[remaining] - 1
            for idx in range(len(denoms) - 1, -1, -1):
                d = denoms[idx]
                if d <= remaining and self.w[remaining - d] == target:
                    coeffs[idx] += 1
                    remaining -= d
                    break
            else:  # pragma: no cover - table invariant
                raise RuntimeError(f"weight table is inconsistent at {remaining}")
        return Representation(tuple(coeffs))

    def covers(self, h: int, m: int) -> bool:
        """True iff every t in [0, m-1] has weight <= h."""
        if m <= 0:
            return True
        self._check_index(m - 1)
        return bool(np.all(self.w[:m] <= h))

    def n_h(self, h: int) -> int:
        """Smallest n >= 1 with w[n] > h; needs limit >= h*a_k + 1."""
        bound = h * self.basis.largest + 1
        if bound > self.limit:
            raise ValueError(f"table limit {self.limit} is below h*a_k+1 = {bound}")
        window = self.w[: bound + 1]
        return int(np.argmax(window > h))

    def n_h_values(self, hs: Iterable[int]) -> list[int]:
        """N_h for several h at once, via the running maximum of w."""
        hs = list(hs)
        if not hs:
            return []
        bound = max(hs) * self.basis.largest + 1
        if bound > self.limit:
            raise ValueError(f"table limit {self.limit} is below h*a_k+1 = {bound}")
        running_max = np.maximum.accumulate(self.w)
        return [int(n) for n in np.searchsorted(running_max, hs, side="right")]
