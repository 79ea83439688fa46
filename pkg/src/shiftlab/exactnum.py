"""Exact rational scalars, small symmetric-matrix positivity, polynomial signs.

Everything downstream stores squared weights, masses, and thresholds as
`fractions.Fraction`, so every verdict in the library reduces to one of three
exact questions answered here:

* is a small symmetric rational matrix positive semidefinite,
* is ``A1*A2 >= (sqrt(P) - sqrt(Q))**2`` for rational ``A1, A2, P, Q``,
* is a rational-coefficient polynomial nonnegative on a rational interval.

The first is settled by principal minors, the second by eliminating the
radical (compare ``L = A1*A2 - P - Q`` against ``-2*sqrt(P*Q)`` via squaring),
and the third by Sturm root counting with endpoint and sample sign checks.
No floating point is used anywhere in this module.

Polynomials are plain lists of Fractions in ascending degree order,
``[c0, c1, c2]`` meaning ``c0 + c1*t + c2*t**2``.
"""

from __future__ import annotations

from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from itertools import combinations

Rat = Fraction

MAX_MATRIX_ORDER = 8


class ExactInputError(ValueError):
    """Raised when a value violates a precondition (bad rational, bad matrix)."""


# ---------------------------------------------------------------------------
# rational parsing and rendering


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as "num/den", an integer, or a "+" sum.

    >>> parse_rational("7/3240")
    Fraction(7, 3240)
    >>> parse_rational("3")
    Fraction(3, 1)
    >>> parse_rational("1/6+1/100")
    Fraction(53, 300)
    """
    total = Fraction(0)
    parts = text.split("+")
    if not parts or any(not part.strip() for part in parts):
        raise ExactInputError(f"malformed rational: {text!r}")
    for part in parts:
        try:
            total += Fraction(part.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactInputError(f"malformed rational: {part.strip()!r}") from exc
    return total


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "num/den", omitting "/1" for integers.

    >>> format_rational(Fraction(7, 3240))
    '7/3240'
    >>> format_rational(Fraction(3))
    '3'
    """
    return str(q)


def decimal_string(q: Fraction, digits: int = 12) -> str:
    """Render ``q`` to ``digits`` significant decimal digits, round half even.

    Presentation only; no decimal rendering ever feeds back into a verdict.

    >>> decimal_string(Fraction(8, 9))
    '0.888888888889'
    >>> decimal_string(Fraction(1, 2))
    '0.5'
    """
    if digits < 1:
        raise ExactInputError(f"digits must be >= 1, got {digits}")
    if q == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return format(d, "f")


# ---------------------------------------------------------------------------
# symmetric matrices

Matrix = list[list[Fraction]]


def matrix_det(rows: Matrix) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        result *= pivot
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return sign * result


def _check_symmetric(rows: Matrix) -> int:
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ExactInputError("matrix must be square and nonempty")
    if n > MAX_MATRIX_ORDER:
        raise ExactInputError(f"matrix order {n} exceeds {MAX_MATRIX_ORDER}")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ExactInputError(f"matrix not symmetric at ({i},{j})")
    return n


def _principal_minor(rows: Matrix, idx: tuple[int, ...]) -> Fraction:
    return matrix_det([[rows[i][j] for j in idx] for i in idx])


def psd_check(rows: Matrix) -> bool:
    """Decide positive semidefiniteness of a small symmetric rational matrix.

    Fast path: when every leading principal minor of order 1..n-1 is strictly
    positive, PSD is equivalent to det >= 0 (the nested-determinant shortcut,
    valid for symmetric matrices).  Otherwise fall back to the complete
    criterion: every nonempty principal minor is >= 0.

    >>> one = Fraction(1)
    >>> psd_check([[one, one/2], [one/2, one/3]])
    True
    >>> psd_check([[one, 2*one], [2*one, one]])
    False
    """
    n = _check_symmetric(rows)
    leading = [_principal_minor(rows, tuple(range(k))) for k in range(1, n)]
    if all(m > 0 for m in leading):
        return matrix_det(rows) >= 0
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            if _principal_minor(rows, idx) < 0:
                return False
    return True


def psd2_radical_cross(a1: Fraction, a2: Fraction, p: Fraction, q: Fraction) -> bool:
    """Decide PSD of [[a1, sqrt(p)-sqrt(q)], [sqrt(p)-sqrt(q), a2]] exactly.

    The matrix is PSD iff a1 >= 0, a2 >= 0 and a1*a2 >= (sqrt(p)-sqrt(q))**2.
    With L = a1*a2 - p - q the last condition reads L >= -2*sqrt(p*q), which
    holds iff L >= 0 or L**2 <= 4*p*q.  Negative p or q means a squared
    weight went negative upstream and is rejected loudly.

    >>> psd2_radical_cross(Fraction(1, 3), Fraction(1, 3), Fraction(1, 6), Fraction(1, 6))
    True
    >>> psd2_radical_cross(Fraction(1, 3), Fraction(0), Fraction(1, 6), Fraction(1, 24))
    False
    """
    if p < 0 or q < 0:
        raise ExactInputError("cross-term squares must be nonnegative")
    if a1 < 0 or a2 < 0:
        return False
    residual = a1 * a2 - p - q
    if residual >= 0:
        return True
    return residual * residual <= 4 * p * q


# ---------------------------------------------------------------------------
# polynomials (ascending coefficient lists)

Poly = list[Fraction]


def poly_trim(p: Poly) -> Poly:
    """Drop trailing zero coefficients; the zero polynomial becomes []."""
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_neg(p: Poly) -> Poly:
    return [-c for c in p]


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Poly, c: Fraction) -> Poly:
    if c == 0:
        return []
    return [c * x for x in p]


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_shift_up(p: Poly, h: int) -> Poly:
    """Multiply by t**h."""
    if not p:
        return []
    return [Fraction(0)] * h + list(p)


def poly_derivative(p: Poly) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_divmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Exact division with remainder over the rationals."""
    d = poly_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(poly_trim(p))
    quot = [Fraction(0)] * max(0, len(rem) - len(d) + 1)
    lead = d[-1]
    while len(rem) >= len(d):
        coeff = rem[-1] / lead
        deg = len(rem) - len(d)
        quot[deg] = coeff
        for i, c in enumerate(d):
            rem[deg + i] -= coeff * c
        rem = poly_trim(rem)
        if not rem:
            break
    return poly_trim(quot), rem


def poly_monic(p: Poly) -> Poly:
    p = poly_trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def poly_squarefree_part(p: Poly) -> Poly:
    """p divided by gcd(p, p'); same distinct roots, all simple."""
    p = poly_trim(p)
    if len(p) <= 1:
        return poly_monic(p)
    g = poly_gcd(p, poly_derivative(p))
    quot, rem = poly_divmod(p, g)
    assert not rem
    return poly_monic(quot)


def sturm_chain(p: Poly) -> list[Poly]:
    """Canonical Sturm chain p, p', -rem(...), ... for square-free input."""
    chain = [poly_trim(p), poly_derivative(p)]
    while chain[-1]:
        _, rem = poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(poly_neg(rem))
    return [c for c in chain if c]


def _sign_variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count_halfopen(chain: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi] of the chain's (square-free) base."""
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def poly_nonneg_on_interval(p: Poly, lo: Fraction, hi: Fraction) -> bool:
    """Decide p(t) >= 0 for every t in [lo, hi], exactly.

    Endpoint signs are checked directly.  Interior sign changes can only
    happen at roots, so the square-free part's roots are counted by Sturm
    sequences and the interval is bisected until every piece holds at most
    one root; a piece with no interior root has constant interior sign
    (read off at its midpoint), and a piece with exactly one root needs one
    sample point strictly on each side of the root.

    >>> one = Fraction(1)
    >>> poly_nonneg_on_interval([one * 0, one], Fraction(0), Fraction(1))
    True
    >>> poly_nonneg_on_interval([-one/2, one], Fraction(0), Fraction(1))
    False
    >>> poly_nonneg_on_interval([one/4, -one, one], Fraction(0), Fraction(1))
    True
    """
    if lo >= hi:
        raise ExactInputError("need lo < hi")
    p = poly_trim(p)
    if not p:
        return True
    if len(p) == 1:
        return p[0] >= 0
    if poly_eval(p, lo) < 0 or poly_eval(p, hi) < 0:
        return False
    sqfree = poly_squarefree_part(p)
    chain = sturm_chain(sqfree)

    def count_open(a: Fraction, b: Fraction) -> int:
        n = sturm_count_halfopen(chain, a, b)
        if poly_eval(sqfree, b) == 0:
            n -= 1
        return n

    # Invariant for every stacked interval: p >= 0 at both endpoints.
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        inside = count_open(a, b)
        mid = (a + b) / 2
        if inside == 0:
            if poly_eval(p, mid) < 0:
                return False
            continue
        if inside == 1:
            if not _one_root_nonneg(p, sqfree, count_open, a, b):
                return False
            continue
        if poly_eval(p, mid) < 0:
            return False
        stack.append((a, mid))
        stack.append((mid, b))
    return True


def _one_root_nonneg(p, sqfree, count_open, a, b) -> bool:
    """[a, b] holds exactly one root r of p in its interior, p(a), p(b) >= 0.

    The sign of p is constant on (a, r) and on (r, b).  A strictly positive
    endpoint already certifies its side; an endpoint that is itself a root
    needs a sample strictly between it and r, found by bisecting a bracket
    around r (midpoints cannot stay on one side of r forever, since the
    bracket length halves while r stays interior).
    """
    need_left = poly_eval(p, a) == 0
    need_right = poly_eval(p, b) == 0
    u, v = a, b
    while need_left or need_right:
        m = (u + v) / 2
        if poly_eval(sqfree, m) == 0:
            # m is the root itself: sample both sides directly.
            if need_left and poly_eval(p, (a + m) / 2) < 0:
                return False
            if need_right and poly_eval(p, (m + b) / 2) < 0:
                return False
            return True
        if poly_eval(p, m) < 0:
            return False
        if count_open(u, m) == 1:
            # root lies left of m, so m samples the right side
            need_right = False
            v = m
        else:
            need_left = False
            u = m
    return True


if __name__ == "__main__":
    import doctest

    doctest.testmod()
