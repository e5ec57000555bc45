"""Exact rational / big-integer linear algebra.

Matrices are plain row-major lists of lists holding ``int`` or ``Fraction``.
Heavy kernels (determinant, characteristic polynomial, linear solves) lift
the input to an integer matrix over a common denominator and stay
fraction-free until the final division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Number = int | Fraction
Matrix = Sequence[Sequence[Number]]

DEFAULT_CHARPOLY_CAP = 64


class DimensionError(ValueError):
    """Operand shapes are incompatible with the operation."""


class SingularMatrixError(ArithmeticError):
    """The matrix has no inverse."""


class CapacityError(ValueError):
    """Matrix exceeds the configured size cap."""


def to_fraction_matrix(m: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def identity(k: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def _shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise DimensionError("ragged matrix")
    return rows, cols


def _require_square(m: Matrix) -> int:
    rows, cols = _shape(m)
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {rows}x{cols}")
    return rows


def integer_lift(m: Matrix) -> tuple[list[list[int]], int]:
    """Return ``(B, s)`` with integer ``B`` and ``m == B / s``."""
    s = 1
    for row in m:
        for x in row:
            if isinstance(x, Fraction):
                s = lcm(s, x.denominator)
    lifted = []
    for row in m:
        out = []
        for x in row:
            if isinstance(x, Fraction):
                out.append(x.numerator * (s // x.denominator))
            else:
                out.append(int(x) * s)
        lifted.append(out)
    return lifted, s


def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; destroys ``a``."""
    k = len(a)
    sign = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            for q in range(p + 1, k):
                if a[q][p] != 0:
                    a[p], a[q] = a[q], a[p]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[p][p]
        row_p = a[p]
        for i in range(p + 1, k):
            row_i = a[i]
            f = row_i[p]
            for j in range(p + 1, k):
                row_i[j] = (piv * row_i[j] - f * row_p[j]) // prev
            row_i[p] = 0
        prev = piv
    return sign * a[k - 1][k - 1] if k else 1


def determinant(m: Matrix) -> Fraction:
    k = _require_square(m)
    lifted, s = integer_lift(m)
    return Fraction(_bareiss_det(lifted), s**k)


def solve_many(m: Matrix, rhs: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    """Solve ``m X = R`` for every column of ``R`` (given as a list of column vectors)."""
    k = _require_square(m)
    for b in rhs:
        if len(b) != k:
            raise DimensionError(f"right-hand side has length {len(b)}, expected {k}")
    if k == 0:
        return [[] for _ in rhs]
    nr = len(rhs)
    aug = [list(m[i]) + [b[i] for b in rhs] for i in range(k)]
    a, _ = integer_lift(aug)
    width = k + nr
    prev = 1
    for p in range(k):
        if a[p][p] == 0:
            for q in range(p + 1, k):
                if a[q][p] != 0:
                    a[p], a[q] = a[q], a[p]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        piv = a[p][p]
        row_p = a[p]
        for i in range(p + 1, k):
            row_i = a[i]
            f = row_i[p]
            for j in range(p + 1, width):
                row_i[j] = (piv * row_i[j] - f * row_p[j]) // prev
            row_i[p] = 0
        prev = piv

    # Bareiss leaves the determinant D (of the lifted, row-swapped matrix) in
    # the last pivot, so D * x is integral and back-substitution stays in Z.
    det = a[k - 1][k - 1]
    solutions = []
    for c in range(nr):
        y = [0] * k
        for i in range(k - 1, -1, -1):
            row = a[i]
            acc = det * row[k + c]
            for j in range(i + 1, k):
                if row[j]:
                    acc -= row[j] * y[j]
            q, rem = divmod(acc, row[i])
            if rem:
                raise ArithmeticError("non-integral scaled solution")
            y[i] = q
        solutions.append(y)

    lifted, s = integer_lift(m)
    rhs_lifted, t = integer_lift([list(b) for b in rhs])
    for b_int, y in zip(rhs_lifted, solutions):
        for i in range(k):
            # m y / det == b  <=>  lifted y * t == b_int * det * s
            if sum(lifted[i][j] * y[j] for j in range(k) if lifted[i][j]) * t != b_int[i] * det * s:
                raise ArithmeticError("back-substitution check failed")
    solutions = [[Fraction(v, det) for v in y] for y in solutions]
    return solutions


def solve(m: Matrix, b: Sequence[Number]) -> list[Fraction]:
    return solve_many(m, [b])[0]


def inverse(m: Matrix) -> list[list[Fraction]]:
    k = _require_square(m)
    cols = solve_many(m, [[int(i == j) for i in range(k)] for j in range(k)])
    return [[cols[j][i] for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial, coefficients in descending powers."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of ``x**power``."""
        if not 0 <= power <= self.degree:
            return Fraction(0)
        return self.coefficients[self.degree - power]

    def __call__(self, x: Number) -> Fraction | float:
        acc: Fraction | float = Fraction(0) if not isinstance(x, float) else 0.0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def __mul__(self, other: CharPoly) -> CharPoly:
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CharPoly(tuple(out))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficient(power)
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            coef = "" if mag == 1 and power else format_rational(mag)
            var = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
            terms.append(f"{sign} {coef}{var}")
        text = " ".join(terms) or "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _is_tridiagonal(m: Matrix) -> bool:
    k = len(m)
    return all(m[i][j] == 0 for i in range(k) for j in range(k) if abs(i - j) > 1)


def _faddeev_leverrier(b: list[list[int]]) -> list[int]:
    """Integer Faddeev-LeVerrier; every division is exact for integer input."""
    k = len(b)
    sparse_rows = [[(j, v) for j, v in enumerate(row) if v] for row in b]
    coeffs = [1]
    m = [[0] * k for _ in range(k)]
    for step in range(1, k + 1):
        c_prev = coeffs[-1]
        for i in range(k):
            m[i][i] += c_prev
        # am = B @ M, exploiting sparsity of B
        am = []
        for i in range(k):
            out = [0] * k
            for j, v in sparse_rows[i]:
                row_j = m[j]
                for c in range(k):
                    out[c] += v * row_j[c]
            am.append(out)
        trace = sum(am[i][i] for i in range(k))
        q, rem = divmod(-trace, step)
        if rem:
            raise ArithmeticError("non-integral Faddeev-LeVerrier coefficient")
        coeffs.append(q)
        m = am
    return coeffs


def _tridiagonal_charpoly(m: Matrix) -> list[Fraction]:
    """Three-term recurrence ``p_k = (x - a_k) p_{k-1} - b_{k-1} c_{k-1} p_{k-2}``.

    Polynomials are stored as ascending coefficient lists.
    """
    k = len(m)
    p_prev: list[Fraction] = [Fraction(1)]
    if k == 0:
        return p_prev
    p_cur = [-Fraction(m[0][0]), Fraction(1)]
    for i in range(1, k):
        a = Fraction(m[i][i])
        off = Fraction(m[i - 1][i]) * Fraction(m[i][i - 1])
        nxt = [Fraction(0)] * (i + 2)
        for d, c in enumerate(p_cur):
            nxt[d + 1] += c
            nxt[d] -= a * c
        for d, c in enumerate(p_prev):
            nxt[d] -= off * c
        p_prev, p_cur = p_cur, nxt
    return p_cur[::-1]


def char_poly(m: Matrix, method: str = "auto", cap: int = DEFAULT_CHARPOLY_CAP) -> CharPoly:
    """``det(xI - m)`` with exact rational coefficients.

    ``method`` is ``"faddeev"``, ``"tridiagonal"``, or ``"auto"`` (tridiagonal
    recurrence when the input is tridiagonal, Faddeev-LeVerrier otherwise).
    """
    k = _require_square(m)
    if k > cap:
        raise CapacityError(f"{k}x{k} matrix exceeds char_poly cap {cap}")
    if method == "auto":
        method = "tridiagonal" if _is_tridiagonal(m) else "faddeev"
    if method == "tridiagonal":
        if not _is_tridiagonal(m):
            raise ValueError("tridiagonal method requested for a non-tridiagonal matrix")
        return CharPoly(tuple(_tridiagonal_charpoly(m)))
    if method != "faddeev":
        raise ValueError(f"unknown method {method!r}")
    lifted, s = integer_lift(m)
    coeffs = _faddeev_leverrier(lifted)
    # det(xI - B/s) = sum_j c_j(B) / s^j * x^(k-j)
    return CharPoly(tuple(Fraction(c, s**j) for j, c in enumerate(coeffs)))


def reduced(m: Matrix, ground: int) -> list[list[Number]]:
    """Delete row and column ``ground``."""
    return [[x for j, x in enumerate(row) if j != ground] for i, row in enumerate(m) if i != ground]


def effective_resistance(lap: Matrix, i: int, j: int, ground: int = 0) -> Fraction:
    """Potential difference between ``i`` and ``j`` under a unit current from ``i`` to ``j``.

    Returns 0 when ``i == j``.
    """
    k = _require_square(lap)
    for v in (i, j, ground):
        if not 0 <= v < k:
            raise IndexError(f"vertex {v} out of range for {k}x{k} Laplacian")
    if i == j:
        return Fraction(0)
    current = [0] * k
    current[i] += 1
    current[j] -= 1
    x = solve(reduced(lap, ground), [c for v, c in enumerate(current) if v != ground])
    potential = x[:ground] + [Fraction(0)] + x[ground:]
    return potential[i] - potential[j]


def resistance_matrix(lap: Matrix, ground: int = 0) -> list[list[Fraction]]:
    """All pairwise effective resistances from one grounded inverse.

    With ``G`` the inverse of the grounded Laplacian (zero-padded at the
    ground), ``r_ij = G_ii + G_jj - 2 G_ij``.
    """
    k = _require_square(lap)
    g_red = inverse(reduced(lap, ground)) if k > 1 else []
    zero = Fraction(0)
    g = []
    for a in range(k):
        if a == ground:
            g.append([zero] * k)
            continue
        ra = g_red[a - (a > ground)]
        g.append(ra[:ground] + [zero] + ra[ground:])
    return [[g[a][a] + g[b][b] - 2 * g[a][b] for b in range(k)] for a in range(k)]


def big_power_product(pairs: Iterable[tuple[int, int]]) -> int:
    """Exact ``prod(base ** exponent)``; exponents must be non-negative."""
    out = 1
    for base, exponent in pairs:
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent} for base {base}")
        out *= base**exponent
    return out


def format_rational(x: Number) -> str:
    """``"p/q"``, or ``"p"`` for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def display2(x: Number) -> str:
    """Two-decimal rendering, rounding half away from zero (50/3 -> 16.67)."""
    x = Fraction(x)
    neg = x < 0
    scaled = abs(x) * 100
    cents = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    text = f"{cents // 100}.{cents % 100:02d}"
    return "-" + text if neg and cents else text
