"""Closed-form invariants of ``G_n`` and of its vertical-deleted subgraphs.

Where a published expression disagrees with brute force, the corrected
expression is the default and the published one stays reachable through
``FormulaVariant.AS_PRINTED`` so the discrepancy can be shown rather than
hidden.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import big_power_product


class FormulaVariant(enum.Enum):
    CORRECTED = "corrected"
    AS_PRINTED = "as-printed"


CORRECTED = FormulaVariant.CORRECTED
AS_PRINTED = FormulaVariant.AS_PRINTED


class InconsistentParametersError(ValueError):
    """``(n, r, d)`` cannot describe any deletion set."""


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def kf_gn(n: int) -> Fraction:
    _check_n(n)
    return Fraction((n + 1) * (n + 2) ** 2, 6)


def kfstar_gn(n: int) -> Fraction:
    _check_n(n)
    return Fraction(25 * n**3 + 65 * n**2 + 64 * n + 8, 6)


def tau_gn(n: int) -> int:
    _check_n(n)
    return big_power_product([(2, 2 * n + 2), (3, n - 1)])


def wiener_gn(n: int, variant: FormulaVariant = CORRECTED) -> Fraction:
    _check_n(n)
    if variant is AS_PRINTED:
        return Fraction(2 * n**3 + 7 * n**2 + 6 * n + 3, 3)
    return Fraction(2 * n**3 + 6 * n**2 + 7 * n + 3, 3)


def gutman_gn(n: int) -> int:
    _check_n(n)
    num = 50 * n**3 + 30 * n**2 + 103 * n - 21
    assert num % 3 == 0
    return num // 3


@dataclass(frozen=True)
class VertexRows:
    """Distance row sums for a corner vertex and, if requested, internal vertex ``i``."""

    f1: int
    g1: int
    f2: int | None = None
    g2: int | None = None


def f1(n: int) -> int:
    return n * n + n + 1


def f2(i: int, n: int, variant: FormulaVariant = CORRECTED) -> int:
    const = 1 if variant is AS_PRINTED else 3
    return n * n - 2 * n * i + 3 * n + 2 * i * i - 4 * i + const


def g1(n: int) -> int:
    return 15 * n * n + 3 * n + 9


def g2(i: int, n: int) -> int:
    return 25 * n * n - 50 * n * i + 55 * n + 50 * i * i - 100 * i + 75


def per_vertex_rows(n: int, i: int | None = None, variant: FormulaVariant = CORRECTED) -> VertexRows:
    _check_n(n)
    if i is None:
        return VertexRows(f1(n), g1(n))
    if not 2 <= i <= n:
        raise ValueError(f"internal vertex index {i} outside [2, {n}]")
    return VertexRows(f1(n), g1(n), f2(i, n, variant), g2(i, n))


def check_r_d(n: int, r: int, d: int) -> None:
    """Reject ``(r, d)`` combinations with no realizing deletion set."""
    _check_n(n)
    bounds = {6: (0, n - 1), 5: (1, n), 4: (2, n + 1)}
    if d not in bounds:
        raise InconsistentParametersError(f"end degree sum d={d} not in {{4, 5, 6}}")
    lo, hi = bounds[d]
    if not lo <= r <= hi:
        raise InconsistentParametersError(f"r={r} impossible with n={n}, d={d} (need {lo} <= r <= {hi})")


def kf_grn(n: int, r: int, d: int) -> Fraction:
    check_r_d(n, r, d)
    return Fraction((n + 1) * (n * n + 4 * n + r - 2 * d + 16), 6)


def tau_grn(n: int, r: int, d: int) -> int:
    check_r_d(n, r, d)
    return big_power_product([(2, 2 * n + r + 2 * d - 10), (3, n - r - d + 5)])


def wiener_grn(n: int, r: int, variant: FormulaVariant = CORRECTED) -> Fraction:
    _check_n(n)
    if not 0 <= r <= n + 1:
        raise InconsistentParametersError(f"r={r} outside [0, {n + 1}]")
    return wiener_gn(n, variant) + r


def kf_over_w(n: int, variant: FormulaVariant = CORRECTED) -> Fraction:
    return kf_gn(n) / wiener_gn(n, variant)


def kfstar_over_gut(n: int) -> Fraction:
    return kfstar_gn(n) / gutman_gn(n)


def ratio_report(n: int) -> tuple[float, float]:
    """``(Kf/W, Kf*/Gut)`` for ``G_n`` as floats; both tend to 1/4."""
    return float(kf_over_w(n)), float(kfstar_over_gut(n))
