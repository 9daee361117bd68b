"""
Local postage-stamp solver.

N_h(a_1..a_k) is the smallest positive amount that cannot be paid with at most
h stamps. It is read off the minimal-weight table

    w(0) = 0,  w(n) = 1 + min_{d <= n} w(n - d),

built to h*a_k + 1, which always suffices because h stamps pay at most h*a_k.
"""

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .config import resolve_max_table
from .errors import RequiresUnitDenominationError
from .models import Basis, Representation, WeightTable, ensure_int64, ensure_table_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpspResult:
    """N_h together with the witnesses that pin it down."""

    basis: Basis
    h: int
    n_h: int
    witness_below: Representation  # minimum-weight representation of n_h - 1
    min_weight_at_n_h: int  # > h

    def to_dict(self) -> dict[str, Any]:
        return {
            "denoms": list(self.basis.denoms),
            "h": self.h,
            "n_h": self.n_h,
            "witness_below": self.witness_below.to_dict(self.basis),
            "min_weight_at_n_h": self.min_weight_at_n_h,
        }


class NhRow(NamedTuple):
    h: int
    n_h: int
    delta: int | None  # N_{h+1} - N_h, None on the last row


def require_unit(basis: Basis) -> None:
    if not basis.contains_one:
        raise RequiresUnitDenominationError(f"basis ({basis}) must start with denomination 1")


def _require_h(h: int) -> None:
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")


def table_limit(basis: Basis, h: int) -> int:
    """h*a_k + 1, the largest index a table for N_h must reach."""
    return ensure_int64(h * basis.largest + 1, what="table limit")


# ---------------------------------------------------------------------------
# Weight table
# ---------------------------------------------------------------------------


def build_weight_table(basis: Basis, limit: int, *, max_table: int | None = None) -> WeightTable:
    """
    Exact minimal weights for 0..limit.

    Denominations are folded in one at a time (unbounded coin change). For a
    denomination d the update w[n] = min(w[n], w[n-d] + 1) is applied in blocks
    of d consecutive entries: block j only reads block j-1, which is already
    final for d.
    """
    require_unit(basis)
    if limit < 0:
        raise ValueError(f"limit must be non-negative, got {limit}")
    ensure_table_size(limit + 1, resolve_max_table(max_table), what="weight table")

    size = limit + 1
    w = np.arange(size, dtype=np.int64)  # ones only
    for d in basis.denoms[1:]:
        if d > limit:
            break
        for start in range(d, size, d):
            end = min(start + d, size)
            block = w[start:end]
            np.minimum(block, w[start - d : end - d] + 1, out=block)
    w.flags.writeable = False

    logger.debug(f"Built weight table for ({basis}) up to {limit}")
    return WeightTable(basis=basis, limit=limit, w=w)


def _result_from_table(table: WeightTable, h: int) -> LpspResult:
    n_h = table.n_h(h)
    return LpspResult(
        basis=table.basis,
        h=h,
        n_h=n_h,
        witness_below=table.representation(n_h - 1),
        min_weight_at_n_h=table.weight(n_h),
    )


def compute_n_h(basis: Basis, h: int, *, max_table: int | None = None) -> LpspResult:
    """N_h(basis) with a minimum-weight witness for N_h - 1."""
    require_unit(basis)
    _require_h(h)
    table = build_weight_table(basis, table_limit(basis, h), max_table=max_table)
    result = _result_from_table(table, h)
    logger.debug(f"N_{h}({basis}) = {result.n_h}")
    return result


# ---------------------------------------------------------------------------
# Coverage oracle and binary search
# ---------------------------------------------------------------------------


def covered(basis: Basis, h: int, m: int, *, max_table: int | None = None) -> bool:
    """True iff every t with 0 <= t <= m-1 has a representation of weight <= h."""
    require_unit(basis)
    _require_h(h)
    if m <= 0:
        return True
    # h*a_k + 1 is never payable with h stamps.
    if m - 1 >= h * basis.largest + 1:
        return False
    table = build_weight_table(basis, m - 1, max_table=max_table)
    return table.covers(h, m)


def bisect_last_true(predicate: Callable[[int], bool], lo: int, hi: int) -> int:
    """
    Largest m in [lo, hi) with predicate(m) true, for a predicate that is true
    on a prefix. Requires predicate(lo) and not predicate(hi).
    """
    if not predicate(lo):
        raise ValueError(f"predicate must hold at the lower end {lo}")
    if predicate(hi):
        raise ValueError(f"predicate must fail at the upper end {hi}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo


def n_h_by_binary_search(basis: Basis, h: int, *, max_table: int | None = None) -> int:
    """N_h as the largest M for which [0, M-1] is covered, found by bisection on [1, h*a_k + 2]."""
    require_unit(basis)
    _require_h(h)
    upper = table_limit(basis, h) + 1
    table = build_weight_table(basis, upper - 1, max_table=max_table)
    return bisect_last_true(lambda m: table.covers(h, m), 1, upper)


# ---------------------------------------------------------------------------
# Greedy, batch table, brute force
# ---------------------------------------------------------------------------


def greedy_representation(basis: Basis, n: int) -> Representation:
    """Take the largest denomination that fits, repeatedly."""
    require_unit(basis)
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    coeffs = [0] * basis.k
    remaining = n
    for idx in range(basis.k - 1, -1, -1):
        coeffs[idx], remaining = divmod(remaining, basis.denoms[idx])
    return Representation(tuple(coeffs))


def n_h_table(basis: Basis, h_max: int, *, max_table: int | None = None) -> list[NhRow]:
    """Rows (h, N_h, N_{h+1} - N_h) for h = 1..h_max, all read from a single table."""
    require_unit(basis)
    _require_h(h_max)
    table = build_weight_table(basis, table_limit(basis, h_max), max_table=max_table)
    values = table.n_h_values(range(1, h_max + 1))
    rows = []
    for idx, value in enumerate(values):
        delta = values[idx + 1] - value if idx + 1 < len(values) else None
        rows.append(NhRow(h=idx + 1, n_h=value, delta=delta))
    return rows


def n_h_brute_force(basis: Basis, h: int) -> int:
    """N_h by enumerating every multiset of at most h denominations. Small inputs only."""
    require_unit(basis)
    _require_h(h)
    payable = set()
    for count in range(h + 1):
        for stamps in itertools.combinations_with_replacement(basis.denoms, count):
            payable.add(sum(stamps))
    n = 1
    while n in payable:
        n += 1
    return n
