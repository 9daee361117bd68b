"""
Stabilization of N_h for large h.

For 1 = a_1 < ... < a_k (k >= 2) put

    h0 = sum_{i=1}^{k-1} floor(a_{i+1} / a_i)
    h1 = h0 + ceil((h0 + 1) * a_{k-1} / (a_k - a_{k-1}))

Then for every h >= h1, N_{h+1} = N_h + a_k and h*a_k - N_h equals the
Frobenius number c of the complement basis {a_k - a_i : i < k} + {a_k}.

Everything here is checked numerically against the exact DP solver; a
mismatch is an implementation defect and raises LemmaViolationError.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from .config import get_settings
from .errors import LemmaViolationError, NeedAtLeastTwoDenominationsError
from .frobenius import frobenius_residue_graph
from .lpsp import build_weight_table, require_unit, table_limit
from .models import Basis, WeightTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelmerBounds:
    basis: Basis
    h0: int
    h1: int

    def to_dict(self) -> dict[str, Any]:
        return {"denoms": list(self.basis.denoms), "h0": self.h0, "h1": self.h1}


@dataclass(frozen=True)
class StabilizationCertificate:
    basis: Basis
    bounds: SelmerBounds
    c: int
    complement: Basis
    g_complement: int
    checked_h_range: tuple[int, int]  # inclusive
    onset: int  # smallest h from which every probed step N_{h+1} - N_h is a_k
    n_h_values: tuple[tuple[int, int], ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        return {
            "denoms": list(self.basis.denoms),
            "h0": self.bounds.h0,
            "h1": self.bounds.h1,
            "c": self.c,
            "complement": list(self.complement.denoms),
            "g_complement": self.g_complement,
            "checked_h_range": list(self.checked_h_range),
            "onset": self.onset,
            "n_h": [{"h": h, "n_h": n} for h, n in self.n_h_values],
        }


def _require_lemma_basis(basis: Basis) -> None:
    require_unit(basis)
    if basis.k < 2:
        raise NeedAtLeastTwoDenominationsError(f"basis ({basis}) needs a_(k-1); give at least two denominations")


def selmer_bounds(basis: Basis) -> SelmerBounds:
    _require_lemma_basis(basis)
    a = basis.denoms
    h0 = sum(a[i + 1] // a[i] for i in range(basis.k - 1))
    gap = a[-1] - a[-2]
    h1 = h0 + -(-(h0 + 1) * a[-2] // gap)
    return SelmerBounds(basis=basis, h0=h0, h1=h1)


def complement_basis(basis: Basis) -> Basis:
    """Sorted, deduplicated {a_k - a_i : i < k} together with a_k."""
    _require_lemma_basis(basis)
    top = basis.largest
    values = {top - d for d in basis.denoms[:-1]}
    values.add(top)
    return Basis(tuple(sorted(values)))


# ---------------------------------------------------------------------------
# Stabilization
# ---------------------------------------------------------------------------


def _table_to(basis: Basis, top: int, max_table: int | None) -> WeightTable:
    return build_weight_table(basis, table_limit(basis, top), max_table=max_table)


def stabilization_onset(
    basis: Basis,
    extra_probes: int | None = None,
    *,
    max_table: int | None = None,
    table: WeightTable | None = None,
) -> int:
    """
    Empirical start of the regime N_{h+1} = N_h + a_k, probed up to h1 + extra_probes.

    Returns the smallest h* such that every step from h* to the top of the
    window is a_k. A prebuilt ``table`` is reused and must cover N_h up to
    h1 + extra_probes.
    """
    bounds = selmer_bounds(basis)
    probes = get_settings().default_probes if extra_probes is None else extra_probes
    if probes < 0:
        raise ValueError(f"extra_probes must be non-negative, got {probes}")
    top = bounds.h1 + probes
    if table is None:
        table = _table_to(basis, top, max_table)
    values = table.n_h_values(range(1, top + 1))

    onset = top
    while onset > 1 and values[onset - 1] - values[onset - 2] == basis.largest:
        onset -= 1
    return onset


def stabilization(
    basis: Basis,
    extra_probes: int | None = None,
    *,
    max_table: int | None = None,
) -> StabilizationCertificate:
    """
    Certify h*a_k - N_h = c on [h1, h1 + extra_probes] and c = g(complement).

    Raises LemmaViolationError when any of these fails.
    """
    bounds = selmer_bounds(basis)
    probes = get_settings().default_probes if extra_probes is None else extra_probes
    if probes < 0:
        raise ValueError(f"extra_probes must be non-negative, got {probes}")
    top = bounds.h1 + probes
    a_k = basis.largest

    table = _table_to(basis, top, max_table)
    hs = range(1, top + 1)
    values = dict(zip(hs, table.n_h_values(hs)))

    window = range(bounds.h1, top + 1)
    offsets = {h: h * a_k - values[h] for h in window}
    c = offsets[bounds.h1]
    drifting = {h: v for h, v in offsets.items() if v != c}
    if drifting:
        raise LemmaViolationError(f"h*a_k - N_h is not constant on [{bounds.h1}, {top}] for ({basis}): {offsets}")
    if c < -1:
        raise LemmaViolationError(f"stabilization constant {c} < -1 for ({basis})")

    complement = complement_basis(basis)
    g_complement = frobenius_residue_graph(complement, max_table=max_table).g
    if c != g_complement:
        raise LemmaViolationError(f"c = {c} but g({complement}) = {g_complement} for ({basis})")

    onset = stabilization_onset(basis, probes, table=table)
    if onset > bounds.h1:
        raise LemmaViolationError(f"N_h steps by a_k only from h = {onset} > h1 = {bounds.h1} for ({basis})")

    logger.debug(f"Stabilization for ({basis}): c = {c}, h1 = {bounds.h1}, onset = {onset}")
    return StabilizationCertificate(
        basis=basis,
        bounds=bounds,
        c=c,
        complement=complement,
        g_complement=g_complement,
        checked_h_range=(bounds.h1, top),
        onset=onset,
        n_h_values=tuple((h, values[h]) for h in window),
    )


# ---------------------------------------------------------------------------
# Part-by-part check
# ---------------------------------------------------------------------------


class Check(NamedTuple):
    h: int
    lhs: int
    rhs: int
    ok: bool


@dataclass
class PartResult:
    part: str
    claim: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "part": self.part,
            "claim": self.claim,
            "passed": self.passed,
            "checks": [check._asdict() for check in self.checks],
        }


@dataclass
class Lemma1Report:
    basis: Basis
    bounds: SelmerBounds
    i_max: int
    parts: list[PartResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(part.passed for part in self.parts)

    def part(self, name: str) -> PartResult:
        for part in self.parts:
            if part.part == name:
                return part
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "denoms": list(self.basis.denoms),
            "h0": self.bounds.h0,
            "h1": self.bounds.h1,
            "i_max": self.i_max,
            "passed": self.passed,
            "parts": [part.to_dict() for part in self.parts],
        }


def check_lemma1(basis: Basis, i_max: int | None = None, *, max_table: int | None = None) -> Lemma1Report:
    """
    Evaluate parts (a)-(f) on one weight table reaching (h1 + i_max)*a_k + 1.

    Failures are reported, not raised.
    """
    bounds = selmer_bounds(basis)
    i_max = get_settings().lemma_i_max if i_max is None else i_max
    if i_max < 0:
        raise ValueError(f"i_max must be non-negative, got {i_max}")
    h0, h1 = bounds.h0, bounds.h1
    a_k, a_k1 = basis.largest, basis.denoms[-2]
    top = h1 + i_max

    table = _table_to(basis, top, max_table)
    hs = sorted(set(range(h0, h0 + i_max + 1)) | set(range(h1, top + 1)))
    n = dict(zip(hs, table.n_h_values(hs)))

    a = PartResult("a", "N_h0 > a_k", [Check(h0, n[h0], a_k, n[h0] > a_k)])
    b = PartResult(
        "b",
        "N_(h0+i) > (i+1)*a_k",
        [Check(h0 + i, n[h0 + i], (i + 1) * a_k, n[h0 + i] > (i + 1) * a_k) for i in range(i_max + 1)],
    )
    c = PartResult(
        "c",
        "N_h > (h+1)*a_(k-1) - a_k for h >= h1",
        [Check(h, n[h], (h + 1) * a_k1 - a_k, n[h] > (h + 1) * a_k1 - a_k) for h in range(h1, top + 1)],
    )
    d = PartResult(
        "d",
        "N_(h+1) - N_h = a_k for h >= h1",
        [Check(h, n[h + 1] - n[h], a_k, n[h + 1] - n[h] == a_k) for h in range(h1, top)],
    )

    const = h1 * a_k - n[h1]
    e = PartResult(
        "e",
        "h*a_k - N_h is a constant c >= -1 for h >= h1",
        [Check(h, h * a_k - n[h], const, h * a_k - n[h] == const) for h in range(h1, top + 1)]
        + [Check(h1, const, -1, const >= -1)],
    )

    g_complement = frobenius_residue_graph(complement_basis(basis), max_table=max_table).g
    f = PartResult("f", "c = g(complement basis)", [Check(h1, const, g_complement, const == g_complement)])

    report = Lemma1Report(basis=basis, bounds=bounds, i_max=i_max, parts=[a, b, c, d, e, f])
    for part in report.parts:
        if not part.passed:
            logger.warning(f"Stabilization part ({part.part}) failed for ({basis}): {part.checks}")
    return report
