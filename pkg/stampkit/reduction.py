"""
Frobenius -> LPSP reduction.

Given b_1 < ... < b_k with gcd 1 and b_1 >= 2, append b_(k+1) = b_k*b_1 and
b_(k+2) = b_k*b_1 + 1. Both lie above g(b) (Brauer: g(b) < b_k*b_1), so g is
unchanged. The LPSP instance is the complement basis of the extended one,

    a = sorted {b_(k+2) - b_j : j <= k+1} + {b_(k+2)},   a_1 = 1,

with h = h1(a), and then g(b) = h*b_(k+2) - N_h(a).

Construction is cheap; verification runs the DP to h*b_(k+2) + 1 and is kept
as a separate step so large instances can still be emitted unverified.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any

from .errors import GcdNotOneError, IdentityViolationError, SmallestElementOneError
from .frobenius import frobenius_residue_graph
from .lpsp import compute_n_h
from .models import Basis
from .selmer import selmer_bounds

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionCertificate:
    b: Basis
    b_extended: Basis
    lpsp_basis: Basis
    h0: int
    h: int  # h1 of lpsp_basis
    predicted_g: int | None = None  # h*b_(k+2) - N_h(lpsp_basis)
    n_h: int | None = None
    g: int | None = None  # g(b) from the Frobenius solver
    verified: bool = False

    @property
    def top(self) -> int:
        """b_(k+2), the largest denomination of the LPSP basis."""
        return self.lpsp_basis.largest

    def size_profile(self) -> dict[str, int]:
        """Bit lengths of the input and of the largest constructed integer."""
        constructed = [*self.b_extended.denoms, *self.lpsp_basis.denoms, self.h]
        return {
            "input_bits": sum(d.bit_length() for d in self.b.denoms),
            "max_output_bits": max(v.bit_length() for v in constructed),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "denoms": list(self.b.denoms),
            "b_extended": list(self.b_extended.denoms),
            "lpsp_basis": list(self.lpsp_basis.denoms),
            "h0": self.h0,
            "h1": self.h,
            "h": self.h,
            "n_h": self.n_h,
            "predicted_g": self.predicted_g,
            "g": self.g,
            "verified": self.verified,
        }


def build_reduction(b: Basis) -> ReductionCertificate:
    """Construct the LPSP instance for the Frobenius input b (unverified)."""
    if b.gcd != 1:
        raise GcdNotOneError(f"gcd({b}) = {b.gcd}; the Frobenius number needs gcd 1")
    if b.smallest == 1:
        raise SmallestElementOneError(f"b_1 = 1 gives b_k*b_1 = b_k, so ({b}) cannot be extended")

    b_next = b.largest * b.smallest
    b_extended = Basis((*b.denoms, b_next, b_next + 1))
    top = b_extended.largest
    lpsp_basis = Basis(tuple(sorted({top - d for d in b_extended.denoms[:-1]} | {top})))
    bounds = selmer_bounds(lpsp_basis)

    logger.debug(f"Reduction of ({b}): LPSP basis ({lpsp_basis}), h = {bounds.h1}")
    return ReductionCertificate(
        b=b,
        b_extended=b_extended,
        lpsp_basis=lpsp_basis,
        h0=bounds.h0,
        h=bounds.h1,
    )


def verify_reduction(cert: ReductionCertificate, *, max_table: int | None = None) -> ReductionCertificate:
    """
    Check g(b) = h*b_(k+2) - N_h(lpsp_basis) with two independent solvers.

    ResourceLimitError propagates and leaves the certificate unverified;
    IdentityViolationError means a solver is wrong.
    """
    lpsp_basis = cert.lpsp_basis
    if lpsp_basis.smallest != 1 or lpsp_basis.gcd != 1:
        raise IdentityViolationError(f"constructed basis ({lpsp_basis}) must start with 1 and have gcd 1")

    result = compute_n_h(lpsp_basis, cert.h, max_table=max_table)
    predicted = cert.h * cert.top - result.n_h

    g = frobenius_residue_graph(cert.b, max_table=max_table).g
    g_extended = frobenius_residue_graph(cert.b_extended, max_table=max_table).g
    brauer = cert.b.largest * cert.b.smallest
    if g >= brauer:
        raise IdentityViolationError(f"g({cert.b}) = {g} is not below b_k*b_1 = {brauer}")
    if g != g_extended:
        raise IdentityViolationError(f"g({cert.b}) = {g} but g({cert.b_extended}) = {g_extended}")
    if predicted != g:
        raise IdentityViolationError(
            f"h*b_(k+2) - N_h = {cert.h}*{cert.top} - {result.n_h} = {predicted}, but g({cert.b}) = {g}"
        )

    logger.debug(f"Reduction of ({cert.b}) verified: g = {g}")
    return replace(cert, predicted_g=predicted, n_h=result.n_h, g=g, verified=True)
