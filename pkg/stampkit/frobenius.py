"""
Frobenius number solver.

g(a_1..a_k) is the largest integer that is not a non-negative combination of
the denominations (gcd must be 1); it is -1 when the basis contains 1.

Two independent methods:
- residue graph: shortest paths over residues mod a_1 give, per residue r, the
  smallest representable d(r) = r (mod a_1); g = max d(r) - a_1.
- brute force: a representability bitmap up to a_1*a_k + a_1 (Brauer's bound
  g < a_1*a_k plus a_1 entries of slack), with the last a_1 entries checked to
  be representable.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from .config import resolve_max_table
from .errors import CertificateError, GcdNotOneError
from .models import Basis, ensure_table_size

logger = logging.getLogger(__name__)


class FrobeniusMethod(str, Enum):
    RESIDUE_GRAPH = "residue-graph"
    BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class FrobeniusResult:
    basis: Basis
    g: int
    method: FrobeniusMethod
    apery: tuple[int, ...] | None = None  # d(0..a_1-1), residue graph only

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "denoms": list(self.basis.denoms),
            "g": self.g,
            "method": self.method.value,
        }
        if self.apery is not None:
            data["apery"] = list(self.apery)
        return data


def _require_gcd_one(basis: Basis) -> None:
    if basis.gcd != 1:
        raise GcdNotOneError(f"gcd({basis}) = {basis.gcd}; the Frobenius number needs gcd 1")


# ---------------------------------------------------------------------------
# Representability
# ---------------------------------------------------------------------------


def representable_bitmap(basis: Basis, limit: int, *, max_table: int | None = None) -> np.ndarray:
    """Boolean array r[0..limit], r[n] true iff n is a non-negative combination of the basis."""
    if limit < 0:
        raise ValueError(f"limit must be non-negative, got {limit}")
    ensure_table_size(limit + 1, resolve_max_table(max_table), what="representability bitmap")

    size = limit + 1
    bitmap = np.zeros(size, dtype=bool)
    bitmap[:: basis.smallest] = True
    for d in basis.denoms[1:]:
        if d > limit:
            break
        # same block scheme as the weight table: block j only reads block j-1
        for start in range(d, size, d):
            end = min(start + d, size)
            block = bitmap[start:end]
            np.logical_or(block, bitmap[start - d : end - d], out=block)
    return bitmap


def is_representable(basis: Basis, n: int, *, max_table: int | None = None) -> bool:
    """
    True iff n = sum x_i a_i with x_i >= 0.

    Decided with a bitmap up to n; when n is beyond the table cap the residue
    graph of the basis divided by its gcd answers instead. Both are exact.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0 or basis.contains_one:
        return True
    if n % basis.gcd:
        return False
    if n + 1 <= resolve_max_table(max_table):
        return bool(representable_bitmap(basis, n, max_table=max_table)[n])

    reduced = Basis(tuple(d // basis.gcd for d in basis.denoms))
    m = n // basis.gcd
    apery = apery_set(reduced)
    return m >= apery[m % reduced.smallest]


# ---------------------------------------------------------------------------
# Residue graph
# ---------------------------------------------------------------------------


def apery_set(basis: Basis, *, max_table: int | None = None) -> tuple[int, ...]:
    """
    Smallest representable value in every residue class mod a_1.

    Dijkstra on nodes 0..a_1-1 with an edge r -> (r + a_j) mod a_1 of length
    a_j for every j >= 2.
    """
    _require_gcd_one(basis)
    modulus = basis.smallest
    ensure_table_size(modulus, resolve_max_table(max_table), what="residue graph")

    dist: list[int | None] = [None] * modulus
    dist[0] = 0
    heap = [(0, 0)]
    done = [False] * modulus
    while heap:
        d_u, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for step in basis.denoms[1:]:
            v = (u + step) % modulus
            alt = d_u + step
            if dist[v] is None or alt < dist[v]:
                dist[v] = alt
                heapq.heappush(heap, (alt, v))

    # gcd 1 makes every residue reachable
    return tuple(dist)  # type: ignore[arg-type]


def frobenius_residue_graph(basis: Basis, *, max_table: int | None = None) -> FrobeniusResult:
    apery = apery_set(basis, max_table=max_table)
    g = max(apery) - basis.smallest
    logger.debug(f"g({basis}) = {g} (residue graph)")
    return FrobeniusResult(basis=basis, g=g, method=FrobeniusMethod.RESIDUE_GRAPH, apery=apery)


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------


def frobenius_brute_force(basis: Basis, *, max_table: int | None = None) -> FrobeniusResult:
    _require_gcd_one(basis)
    a1 = basis.smallest
    ceiling = a1 * basis.largest + a1
    bitmap = representable_bitmap(basis, ceiling - 1, max_table=max_table)

    # a_1 consecutive representable values make every larger value representable
    if not bitmap[ceiling - a1 : ceiling].all():
        raise CertificateError(f"values in [{ceiling - a1}, {ceiling}) are not all representable for ({basis})")

    gaps = np.flatnonzero(~bitmap)
    g = int(gaps[-1]) if gaps.size else -1
    logger.debug(f"g({basis}) = {g} (brute force, ceiling {ceiling})")
    return FrobeniusResult(basis=basis, g=g, method=FrobeniusMethod.BRUTE_FORCE)


def frobenius(
    basis: Basis,
    method: FrobeniusMethod = FrobeniusMethod.RESIDUE_GRAPH,
    *,
    max_table: int | None = None,
) -> FrobeniusResult:
    if FrobeniusMethod(method) is FrobeniusMethod.BRUTE_FORCE:
        return frobenius_brute_force(basis, max_table=max_table)
    return frobenius_residue_graph(basis, max_table=max_table)


def frobenius_pair(a: int, b: int) -> int:
    """Two-generator closed form g(a, b) = a*b - a - b for coprime a, b."""
    if a < 1 or b < 1:
        raise ValueError("generators must be positive")
    if math.gcd(a, b) != 1:
        raise GcdNotOneError(f"gcd({a}, {b}) = {math.gcd(a, b)}")
    return a * b - a - b
