"""
stampkit: exact solvers for the local postage-stamp problem and the Frobenius number.

N_h(a_1..a_k): smallest amount not payable with at most h stamps (a_1 = 1).
g(a_1..a_k): largest amount not payable at all (gcd 1).

Also builds and verifies the reduction that computes g from a single N_h
query, and checks the stabilization of N_h for large h.
"""

__version__ = "0.1.0"
