"""Spectral machinery for the chain family.

The top/bottom swap ``i <-> i'`` is an automorphism of every family
member, so the Laplacian spectrum splits into the spectra of
``L_A = L_11 + L_12`` and ``L_S = L_11 - L_12``. Everything here is exact;
the normalized Laplacian block is handled through the rational matrix
``D^-1 L_A``, which is similar to it and so has the same characteristic
polynomial.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .chain_graphs import ChainSpec, build_subchain, end_degree_sum, laplacian, laplacian_blocks
from .closed_forms import CORRECTED, FormulaVariant
from .exact_linalg import CharPoly, big_power_product, char_poly, determinant, format_rational

ROOT_TOLERANCE = 1e-9
# whole-Laplacian char polys are 2n+2 square
FAMILY_CHARPOLY_CAP = 128


class IdentityError(AssertionError):
    """An exact identity that should hold by theorem failed."""


@dataclass(frozen=True)
class BlockPair:
    la: tuple[tuple[int, ...], ...]
    ls: tuple[tuple[int, ...], ...]

    @property
    def ls_diagonal(self) -> list[int]:
        return [self.ls[i][i] for i in range(len(self.ls))]


def _tupled(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in m)


def decompose(spec: ChainSpec, check: bool = True) -> BlockPair:
    """Split the Laplacian into ``(L_A, L_S)``.

    With ``check`` set, confirms ``char_poly(L) == char_poly(L_A) * char_poly(L_S)``
    coefficient by coefficient.
    """
    g = build_subchain(spec)
    l11, l12 = laplacian_blocks(g, spec)
    m = spec.n + 1
    la = [[l11[i][j] + l12[i][j] for j in range(m)] for i in range(m)]
    ls = [[l11[i][j] - l12[i][j] for j in range(m)] for i in range(m)]
    if check:
        whole = char_poly(laplacian(g), method="faddeev", cap=FAMILY_CHARPOLY_CAP)
        split = char_poly(la) * char_poly(ls)
        if whole != split:
            raise IdentityError(f"block factorization of the characteristic polynomial fails for {spec}")
    return BlockPair(_tupled(la), _tupled(ls))


def path_laplacian_doubled(n: int) -> list[list[int]]:
    """``2 L(P_{n+1})``, which is ``L_A`` for every family member."""
    m = n + 1
    out = [[0] * m for _ in range(m)]
    for i in range(n):
        out[i][i + 1] = out[i + 1][i] = -2
        out[i][i] += 2
        out[i + 1][i + 1] += 2
    return out


def alpha_charpoly(n: int) -> CharPoly:
    return char_poly(path_laplacian_doubled(n))


def _has_root_near(p: CharPoly, value: float, tol: float) -> bool:
    x = Fraction(value)
    if p(x) == 0:
        return True
    lo, hi = p(x - Fraction(tol)), p(x + Fraction(tol))
    return lo == 0 or hi == 0 or (lo < 0) != (hi < 0)


def alpha_closed_form(n: int, tol: float = ROOT_TOLERANCE) -> list[float]:
    """``8 sin^2(pi (i-1) / (2(n+1)))`` for ``i = 1..n+1``, each checked against an exact root."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    values = [8 * math.sin(math.pi * (i - 1) / (2 * (n + 1))) ** 2 for i in range(1, n + 2)]
    p = alpha_charpoly(n)
    for v in values:
        if not _has_root_near(p, v, tol):
            raise IdentityError(f"{v!r} is not within {tol} of a root of char_poly(L_A), n={n}")
    return values


def alpha_recip_sum(n: int) -> Fraction:
    """Sum of ``1/alpha_i`` over the nonzero eigenvalues of ``L_A``."""
    closed = Fraction(n * (n + 2), 12)
    p = alpha_charpoly(n)
    from_coeffs = abs(p.coefficient(2)) / abs(p.coefficient(1))
    if closed != from_coeffs:
        raise IdentityError(f"alpha reciprocal sum {closed} != {from_coeffs} from coefficients, n={n}")
    return closed


def alpha_product(n: int) -> int:
    """Product of the nonzero eigenvalues of ``L_A``."""
    closed = (n + 1) * 2**n
    p = alpha_charpoly(n)
    from_coeffs = (-1) ** n * p.coefficient(1)
    if closed != from_coeffs:
        raise IdentityError(f"alpha product {closed} != {from_coeffs} from coefficients, n={n}")
    return closed


@dataclass(frozen=True)
class LsSpectrum:
    counts: dict[int, int]
    case: int

    def as_multiset(self) -> list[int]:
        return sorted(Counter(self.counts).elements())

    def to_dict(self) -> dict:
        return {
            "eigenvalues": {str(k): v for k, v in sorted(self.counts.items())},
            "case": self.case,
        }


def case_tag(d: int) -> int:
    """Case 1: both end verticals deleted; case 2: neither; case 3: exactly one."""
    return {4: 1, 6: 2, 5: 3}[d]


def ls_spectrum(spec: ChainSpec, check: bool = True) -> LsSpectrum:
    n = spec.n
    ends = {1, n + 1}
    deleted = set(spec.deleted)
    dead_ends = len(ends & deleted)
    dead_internal = len(deleted - ends)
    counts = {
        2: dead_ends,
        4: dead_internal + (2 - dead_ends),
        6: (n - 1) - dead_internal,
    }
    counts = {k: v for k, v in counts.items() if v}
    result = LsSpectrum(counts, case_tag(end_degree_sum(spec)))
    if check:
        diag = decompose(spec, check=False).ls_diagonal
        if Counter(diag) != Counter(counts):
            raise IdentityError(f"L_S diagonal {diag} disagrees with predicted spectrum {counts}")
    return result


def zeta_recip_sum(spec: ChainSpec, variant: FormulaVariant = CORRECTED) -> Fraction:
    """Closed form for the sum of ``1/zeta_j``; AS_PRINTED uses ``-d`` instead of ``-2d``."""
    n, r, d = spec.n, spec.r, end_degree_sum(spec)
    coef = 1 if variant is not CORRECTED else 2
    value = Fraction(2 * n + r - coef * d + 16, 12)
    if variant is CORRECTED:
        spectrum = ls_spectrum(spec)
        direct = sum((Fraction(m, z) for z, m in spectrum.counts.items()), Fraction(0))
        if direct != value:
            raise IdentityError(f"zeta reciprocal sum {value} != {direct} for {spec}")
    return value


def zeta_product(spec: ChainSpec) -> int:
    n, r, d = spec.n, spec.r, end_degree_sum(spec)
    value = big_power_product([(2, n + r + 2 * d - 9), (3, n - r - d + 5)])
    direct = math.prod(z**m for z, m in ls_spectrum(spec).counts.items())
    if direct != value:
        raise IdentityError(f"zeta product {value} != {direct} for {spec}")
    return value


def end_weights(n: int) -> list[int]:
    """Vertex degrees along one side of ``G_n``: ``(3, 5, ..., 5, 3)``."""
    return [3] + [5] * (n - 1) + [3]


def normalized_LA_surrogate(n: int) -> list[list[Fraction]]:
    """``D^-1 L_A`` with ``D = diag(3, 5, ..., 5, 3)``; same char poly as the normalized block."""
    la = path_laplacian_doubled(n)
    w = end_weights(n)
    return [[Fraction(x, w[i]) for x in row] for i, row in enumerate(la)]


def leading_minors(n: int) -> list[Fraction]:
    """``c_0 .. c_n``: leading principal minors of the surrogate (``c_0 = 1``)."""
    m = normalized_LA_surrogate(n)
    return [Fraction(1)] + [determinant([row[:i] for row in m[:i]]) for i in range(1, n + 1)]


def minors_by_recurrence(count: int) -> list[Fraction]:
    """``c_0 .. c_count`` from ``c_i = 4/5 c_{i-1} - 4/25 c_{i-2}``, seeded with ``c_1 = 2/3, c_2 = 4/15``.

    The recurrence only holds from ``i = 3`` on: with ``c_0 = 1`` it would give
    ``c_2 = 28/75``.
    """
    seq = [Fraction(1), Fraction(2, 3), Fraction(4, 15)][: count + 1]
    while len(seq) <= count:
        seq.append(Fraction(4, 5) * seq[-1] - Fraction(4, 25) * seq[-2])
    return seq


def minor_closed_form(i: int) -> Fraction:
    return Fraction(5, 3) * Fraction(2, 5) ** i if i else Fraction(1)


@dataclass(frozen=True)
class NormalizedCoeffs:
    n: int
    a_n_times_sign: Fraction
    a_n1_times_sign: Fraction
    minors: tuple[Fraction, ...]


def an_closed_form(n: int) -> Fraction:
    return Fraction(25 * n + 5, 9) * Fraction(2, 5) ** n


def an1_closed_form(n: int) -> Fraction:
    return Fraction(n * (25 * n * n + 15 * n + 14), 54) * Fraction(2, 5) ** (n - 1)


def normalized_coeffs(n: int) -> NormalizedCoeffs:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p = char_poly(normalized_LA_surrogate(n))
    if p != char_poly(normalized_LA_surrogate(n), method="faddeev"):
        raise IdentityError(f"tridiagonal and Faddeev-LeVerrier char polys disagree, n={n}")
    # Phi = x^{n+1} + a_1 x^n + ... + a_n x, so a_k is the coefficient of x^{n+1-k}
    an = (-1) ** n * p.coefficient(1)
    an1 = (-1) ** (n - 1) * p.coefficient(2)
    if p.coefficient(0) != 0:
        raise IdentityError(f"surrogate is nonsingular, n={n}")
    minors = leading_minors(n)
    if an != an_closed_form(n):
        raise IdentityError(f"(-1)^n a_n = {an}, closed form {an_closed_form(n)}, n={n}")
    if an1 != an1_closed_form(n):
        raise IdentityError(f"(-1)^(n-1) a_(n-1) = {an1}, closed form {an1_closed_form(n)}, n={n}")
    for i in range(1, n + 1):
        if minors[i] != minor_closed_form(i):
            raise IdentityError(f"c_{i} = {minors[i]}, closed form {minor_closed_form(i)}")
    return NormalizedCoeffs(n, an, an1, tuple(minors))


def gamma_recip_sum(n: int) -> Fraction:
    """Sum of ``1/gamma_i`` over nonzero normalized ``L_A`` eigenvalues, via Vieta."""
    coeffs = normalized_coeffs(n)
    value = coeffs.a_n1_times_sign / coeffs.a_n_times_sign
    closed = Fraction(n * (25 * n * n + 15 * n + 14), 12 * (5 * n + 1))
    if value != closed:
        raise IdentityError(f"gamma reciprocal sum {value} != {closed}, n={n}")
    return value


def tridiag_M(size: int) -> list[list[Fraction]]:
    return [
        [Fraction(4, 5) if i == j else Fraction(-2, 5) if abs(i - j) == 1 else Fraction(0) for j in range(size)]
        for i in range(size)
    ]


def tridiag_M_det(size: int) -> Fraction:
    if size < 0:
        raise ValueError(f"size must be >= 0, got {size}")
    value = determinant(tridiag_M(size))
    closed = Fraction(2, 5) ** size * (size + 1)
    if value != closed:
        raise IdentityError(f"det M = {value} != {closed}, size={size}")
    return value


def eta_spectrum(n: int) -> dict[Fraction, int]:
    """Eigenvalues of ``D^-1 L_S`` for ``G_n`` with multiplicities."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ls = decompose(ChainSpec(n), check=False).ls_diagonal
    w = end_weights(n)
    counts = Counter(Fraction(s, d) for s, d in zip(ls, w))
    expected = {Fraction(4, 3): 2}
    if n > 1:
        expected[Fraction(6, 5)] = n - 1
    if counts != Counter(expected):
        raise IdentityError(f"normalized L_S spectrum {dict(counts)} != {expected}")
    return dict(sorted(counts.items()))


def eta_recip_sum(n: int) -> Fraction:
    value = sum((Fraction(m) / e for e, m in eta_spectrum(n).items()), Fraction(0))
    if value != Fraction(5 * n + 4, 6):
        raise IdentityError(f"eta reciprocal sum {value} != {(5 * n + 4)}/6, n={n}")
    return value


def kfstar_from_spectrum(n: int) -> Fraction:
    """``2|E| (sum 1/gamma + sum 1/eta)`` for ``G_n``."""
    return 2 * (5 * n + 1) * (gamma_recip_sum(n) + eta_recip_sum(n))


def kf_from_spectrum(spec: ChainSpec) -> Fraction:
    """``|V| (sum 1/alpha + sum 1/zeta)``."""
    return 2 * (spec.n + 1) * (alpha_recip_sum(spec.n) + zeta_recip_sum(spec))


def tau_from_spectrum(spec: ChainSpec) -> int:
    num = alpha_product(spec.n) * zeta_product(spec)
    q, rem = divmod(num, 2 * (spec.n + 1))
    if rem:
        raise IdentityError(f"spanning-tree product not divisible by |V| for {spec}")
    return q


def spectrum_summary(spec: ChainSpec) -> dict:
    """JSON-ready summary for a single family member."""
    n = spec.n
    ls = ls_spectrum(spec)
    summary = {
        "spec": spec.to_dict(),
        "alpha": alpha_closed_form(n),
        "alpha_recip_sum": format_rational(alpha_recip_sum(n)),
        "alpha_product": str(alpha_product(n)),
        "zeta": ls.to_dict()["eigenvalues"],
        "case": ls.case,
        "d": end_degree_sum(spec),
        "zeta_recip_sum": format_rational(zeta_recip_sum(spec)),
        "zeta_recip_sum_as_printed": format_rational(zeta_recip_sum(spec, FormulaVariant.AS_PRINTED)),
        "zeta_product": str(zeta_product(spec)),
    }
    if spec.r == 0:
        summary["eta"] = {format_rational(k): v for k, v in eta_spectrum(n).items()}
        summary["eta_recip_sum"] = format_rational(eta_recip_sum(n))
        summary["gamma_recip_sum"] = format_rational(gamma_recip_sum(n))
    return summary
