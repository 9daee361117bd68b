"""
Batch verification over many instances.

Instances come from a JSON-lines file ({"denoms": [...], "h": ..., "label": ...}
per line) or from a seeded generator. Each instance is checked independently:

- smallest denomination 1: the stabilization parts (a)-(f) and, when h is given,
  agreement of the table, bisection and brute-force N_h;
- smallest denomination >= 2: residue-graph vs brute-force Frobenius number
  (plus the closed form for two generators) and end-to-end verification of
  the Frobenius -> LPSP reduction.
"""

import json
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import InstanceFileError, StampkitError
from .frobenius import frobenius_brute_force, frobenius_pair, frobenius_residue_graph
from .lpsp import compute_n_h, n_h_brute_force, n_h_by_binary_search
from .models import Basis, validate_basis
from .reduction import build_reduction, verify_reduction
from .selmer import check_lemma1

logger = logging.getLogger(__name__)

# Multisets enumerated by the N_h brute force are capped at this many.
BRUTE_FORCE_MAX_MULTISETS = 200_000


@dataclass(frozen=True)
class InstanceRecord:
    denoms: tuple[int, ...]
    h: int | None = None
    label: str | None = None

    @property
    def basis(self) -> Basis:
        return validate_basis(self.denoms)

    def to_dict(self) -> dict[str, Any]:
        return {"denoms": list(self.denoms), "h": self.h, "label": self.label}


@dataclass
class CheckOutcome:
    label: str
    kind: str  # "lpsp" or "frobenius"
    denoms: tuple[int, ...]
    h: int | None = None
    passed: bool = False
    details: dict[str, Any] = field(default_factory=dict)
    error: dict[str, str] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "kind": self.kind,
            "denoms": list(self.denoms),
            "h": self.h,
            "passed": self.passed,
            "details": self.details,
            "error": self.error,
        }


# ---------------------------------------------------------------------------
# Instance sources
# ---------------------------------------------------------------------------


def parse_instance(data: Any, where: str = "instance") -> InstanceRecord:
    if not isinstance(data, dict):
        raise InstanceFileError(f"{where}: expected a JSON object")
    denoms = data.get("denoms")
    if not isinstance(denoms, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in denoms):
        raise InstanceFileError(f"{where}: 'denoms' must be a list of integers")
    h = data.get("h")
    if h is not None and (isinstance(h, bool) or not isinstance(h, int) or h < 1):
        raise InstanceFileError(f"{where}: 'h' must be a positive integer")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise InstanceFileError(f"{where}: 'label' must be a string")
    try:
        validate_basis(denoms)
    except StampkitError as e:
        raise InstanceFileError(f"{where}: {e.name}: {e}")
    return InstanceRecord(denoms=tuple(denoms), h=h, label=label)


def load_instances(path: str | Path) -> list[InstanceRecord]:
    """Read one JSON object per non-blank line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceFileError(f"cannot read {path}: {e}")

    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise InstanceFileError(f"{path}:{lineno}: invalid JSON: {e}")
        records.append(parse_instance(data, where=f"{path}:{lineno}"))
    return records


def random_lpsp_denoms(rng: random.Random) -> tuple[int, ...]:
    """1 followed by k-1 distinct values from [2, 20], k uniform in [2, 4]."""
    k = rng.randint(2, 4)
    return (1, *sorted(rng.sample(range(2, 21), k - 1)))


def random_frobenius_denoms(rng: random.Random) -> tuple[int, ...]:
    """k in [2, 3] distinct values from [2, 12] with gcd 1."""
    while True:
        k = rng.randint(2, 3)
        denoms = tuple(sorted(rng.sample(range(2, 13), k)))
        if math.gcd(*denoms) == 1:
            return denoms


def random_instances(seed: int, count: int) -> list[InstanceRecord]:
    """Alternate LPSP bases (even indices) and Frobenius inputs (odd indices)."""
    rng = random.Random(seed)
    records = []
    for i in range(count):
        if i % 2 == 0:
            denoms = random_lpsp_denoms(rng)
        else:
            denoms = random_frobenius_denoms(rng)
        records.append(InstanceRecord(denoms=denoms, label=f"random-{i}"))
    return records


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def _check_lpsp(basis: Basis, h: int | None, outcome: CheckOutcome, i_max: int, max_table: int | None) -> None:
    ok = True
    if basis.k >= 2:
        report = check_lemma1(basis, i_max, max_table=max_table)
        outcome.details["h0"] = report.bounds.h0
        outcome.details["h1"] = report.bounds.h1
        outcome.details["c"] = report.part("e").checks[-1].lhs
        outcome.details["lemma"] = {part.part: part.passed for part in report.parts}
        ok = report.passed

    if h is not None:
        by_table = compute_n_h(basis, h, max_table=max_table).n_h
        by_bisect = n_h_by_binary_search(basis, h, max_table=max_table)
        agree = by_table == by_bisect
        outcome.details["n_h"] = by_table
        outcome.details["n_h_bisect"] = by_bisect
        if math.comb(h + basis.k, basis.k) <= BRUTE_FORCE_MAX_MULTISETS:
            by_enum = n_h_brute_force(basis, h)
            outcome.details["n_h_brute_force"] = by_enum
            agree = agree and by_enum == by_table
        ok = ok and agree

    outcome.passed = ok


def _check_frobenius(basis: Basis, outcome: CheckOutcome, max_table: int | None) -> None:
    g_graph = frobenius_residue_graph(basis, max_table=max_table).g
    g_brute = frobenius_brute_force(basis, max_table=max_table).g
    outcome.details["g"] = g_graph
    outcome.details["g_brute_force"] = g_brute
    agree = g_graph == g_brute
    if basis.k == 2:
        g_pair = frobenius_pair(*basis.denoms)
        outcome.details["g_closed_form"] = g_pair
        agree = agree and g_pair == g_graph

    cert = verify_reduction(build_reduction(basis), max_table=max_table)
    outcome.details["lpsp_basis"] = list(cert.lpsp_basis.denoms)
    outcome.details["h"] = cert.h
    outcome.details["n_h"] = cert.n_h
    outcome.details["verified"] = cert.verified
    outcome.passed = agree and cert.verified and cert.g == g_graph


def run_check(
    record: InstanceRecord,
    index: int = 0,
    *,
    i_max: int = 4,
    max_table: int | None = None,
) -> CheckOutcome:
    """Check one instance; domain errors are recorded as a failed outcome."""
    basis = record.basis
    kind = "lpsp" if basis.contains_one else "frobenius"
    outcome = CheckOutcome(
        label=record.label or f"instance-{index}",
        kind=kind,
        denoms=basis.denoms,
        h=record.h,
    )
    try:
        if kind == "lpsp":
            _check_lpsp(basis, record.h, outcome, i_max, max_table)
        else:
            _check_frobenius(basis, outcome, max_table)
    except StampkitError as e:
        outcome.passed = False
        outcome.error = {"name": e.name, "message": str(e)}

    if not outcome.passed:
        logger.warning(f"Check failed for {outcome.label} ({basis}): {outcome.error or outcome.details}")
    return outcome


def run_checks(
    records: list[InstanceRecord],
    *,
    workers: int = 1,
    i_max: int = 4,
    max_table: int | None = None,
) -> list[CheckOutcome]:
    """Check every record; results keep input order whatever the worker count."""

    def _one(item: tuple[int, InstanceRecord]) -> CheckOutcome:
        index, record = item
        return run_check(record, index, i_max=i_max, max_table=max_table)

    items = list(enumerate(records))
    if workers <= 1:
        return [_one(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, items))


def summarize(outcomes: list[CheckOutcome]) -> dict[str, int]:
    passed = sum(1 for o in outcomes if o.passed)
    return {"total": len(outcomes), "passed": passed, "failed": len(outcomes) - passed}
