"""Counting bounds on universal point sets for stacked triangulations.

There are exactly 2^{n-4} (n-3)! labeled stacked triangulations on n
vertices, while a set of m points hosts at most m!/(m-n)! labeled plane
drawings, so any m-point set universal for them satisfies
2^{n-4} (n-3)! <= m!/(m-n)!.  Asymptotically this forces m >= (alpha-o(1)) n
where alpha is the root of alpha^alpha (alpha-1)^{1-alpha} = 2.

All counting is exact integer arithmetic; floats appear only in the root
solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRange


def labeled_stacked_count(n: int) -> int:
    """Number of labeled stacked triangulations on n vertices: 2^{n-4} (n-3)!."""
    if n < 4:
        raise OutOfRange(f"stacked triangulations need n >= 4, got {n}")
    return 2 ** (n - 4) * math.factorial(n - 3)


def min_universal_size_counting(n: int) -> int:
    """Smallest m >= n with 2^{n-4} (n-3)! <= m!/(m-n)!.

    Any point set universal for the n-vertex stacked triangulations has at
    least this many points; it is the counting bound only, not the best
    known lower bound for small n.
    """
    target = labeled_stacked_count(n)
    m = n
    while math.perm(m, n) < target:
        m += 1
    return m


def solve_alpha(tolerance: float = 1e-9) -> float:
    """Root of alpha^alpha (alpha-1)^{1-alpha} = 2 on (1, 2], by bisection
    of the monotone log form g(a) = a ln a + (1-a) ln(a-1) - ln 2."""
    if tolerance <= 0:
        raise OutOfRange("tolerance must be positive")

    def g(a: float) -> float:
        return a * math.log(a) + (1.0 - a) * math.log(a - 1.0) - math.log(2.0)

    lo, hi = 1.0 + 1e-12, 2.0
    while hi - lo > tolerance:
        mid = (lo + hi) / 2.0
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def asymptotic_ratio(n: int) -> Fraction:
    """Counting bound divided by n, the finite-n analogue of the limit
    ratio; approaches alpha from below only asymptotically."""
    return Fraction(min_universal_size_counting(n), n)


@dataclass
class BoundReport:
    """Everything the counting argument says about one instance size."""

    n: int
    labeled_count: int
    min_m: int
    alpha: float
    fs_lower: float  # alpha * n; the o(1) correction is asymptotic only

    @classmethod
    def compute(cls, n: int, alpha_tol: float = 1e-9) -> "BoundReport":
        alpha = solve_alpha(alpha_tol)
        return cls(
            n=n,
            labeled_count=labeled_stacked_count(n),
            min_m=min_universal_size_counting(n),
            alpha=alpha,
            fs_lower=alpha * n,
        )

    def lines(self) -> list[str]:
        return [
            f"n = {self.n}",
            f"labeled stacked triangulations: {self.labeled_count}",
            f"counting bound (min points): {self.min_m}",
            f"alpha = {self.alpha:.9f}",
            f"asymptotic lower bound alpha*n = {self.fs_lower:.3f} (up to o(n))",
        ]
