"""Two-variable weighted shifts as generator-backed squared-weight grids.

A grid answers ``alpha_sq(k1, k2)`` and ``beta_sq(k1, k2)`` at any index.
Every built-in family stores closed-form row rules plus a column of beta
seeds and derives all remaining beta values from the commuting identity

    beta_sq(k1+1, k2) * alpha_sq(k1, k2) == alpha_sq(k1, k2+1) * beta_sq(k1, k2),

so commutativity holds by construction and `check_commuting` re-verifies it
on demand.  Positivity tests route every 2 x 2 cross term through the exact
radical-elimination comparison; verdicts never touch floating point.

Window scans read the grid level by level (k2 ascending, then k1), and the
first failing index wins as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactnum import format_rational, parse_rational, psd2_radical_cross
from .measures import Measure1D
from .shift1d import WeightSeq, weights_from_json

Index = tuple[int, int]


class GridError(ValueError):
    """Invalid grid data, parameters, or index."""


class ShiftGrid2D:
    """Generator-backed grid of squared weights with memoized access."""

    def __init__(
        self,
        model: str,
        alpha_fn: Callable[[int, int], Fraction],
        beta_fn: Callable[[int, int], Fraction],
        spec_obj: dict,
    ):
        self.model = model
        self._alpha_fn = alpha_fn
        self._beta_fn = beta_fn
        self._spec_obj = spec_obj
        self._alpha_cache: dict[Index, Fraction] = {}
        self._beta_cache: dict[Index, Fraction] = {}

    def _lookup(self, cache, fn, k1: int, k2: int, label: str) -> Fraction:
        if k1 < 0 or k2 < 0:
            raise GridError(f"negative index ({k1}, {k2})")
        key = (k1, k2)
        if key not in cache:
            value = fn(k1, k2)
            if value <= 0:
                raise GridError(f"{label} squared weight at ({k1}, {k2}) is {value}, not positive")
            cache[key] = value
        return cache[key]

    def alpha_sq(self, k1: int, k2: int) -> Fraction:
        return self._lookup(self._alpha_cache, self._alpha_fn, k1, k2, "alpha")

    def beta_sq(self, k1: int, k2: int) -> Fraction:
        return self._lookup(self._beta_cache, self._beta_fn, k1, k2, "beta")

    def to_json_obj(self) -> dict:
        return self._spec_obj

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ShiftGrid2D)
            and self.model == other.model
            and self._spec_obj == other._spec_obj
        )

    def __repr__(self) -> str:
        return f"ShiftGrid2D(model={self.model!r})"


def _beta_from_seeds(
    grid_alpha: Callable[[int, int], Fraction], seeds: Callable[[int], Fraction]
) -> Callable[[int, int], Fraction]:
    """Beta generator: column seeds propagated rightward by commutativity."""
    cache: dict[Index, Fraction] = {}

    def beta(k1: int, k2: int) -> Fraction:
        if (k1, k2) not in cache:
            if k1 == 0:
                cache[(k1, k2)] = seeds(k2)
            else:
                cache[(k1, k2)] = (
                    beta(k1 - 1, k2) * grid_alpha(k1 - 1, k2 + 1) / grid_alpha(k1 - 1, k2)
                )
        return cache[(k1, k2)]

    return beta


# ---------------------------------------------------------------------------
# pointwise tests and window scans


def check_commuting(g: ShiftGrid2D, m: int, n: int) -> Index | None:
    """First index in [0,m] x [0,n] violating the commuting identity, if any."""
    for k2 in range(n + 1):
        for k1 in range(m + 1):
            lhs = g.beta_sq(k1 + 1, k2) * g.alpha_sq(k1, k2)
            rhs = g.alpha_sq(k1, k2 + 1) * g.beta_sq(k1, k2)
            if lhs != rhs:
                return (k1, k2)
    return None


def gamma2(g: ShiftGrid2D, k: Index) -> Fraction:
    """Moment of order k along the canonical path (right along level 0, then up)."""
    k1, k2 = k
    if k1 < 0 or k2 < 0:
        raise GridError(f"negative index {k}")
    out = Fraction(1)
    for i in range(k1):
        out *= g.alpha_sq(i, 0)
    for j in range(k2):
        out *= g.beta_sq(k1, j)
    return out


def gamma2_up_first(g: ShiftGrid2D, k: Index) -> Fraction:
    """Moment along the transposed path (up column 0, then right); equals
    gamma2 on every commuting grid."""
    k1, k2 = k
    out = Fraction(1)
    for j in range(k2):
        out *= g.beta_sq(0, j)
    for i in range(k1):
        out *= g.alpha_sq(i, k2)
    return out


@dataclass(frozen=True)
class SixPointData:
    a1: Fraction
    a2: Fraction
    p: Fraction
    q: Fraction
    ok: bool


def six_point_data(g: ShiftGrid2D, k: Index) -> SixPointData:
    k1, k2 = k
    a1 = g.alpha_sq(k1 + 1, k2) - g.alpha_sq(k1, k2)
    a2 = g.beta_sq(k1, k2 + 1) - g.beta_sq(k1, k2)
    p = g.alpha_sq(k1, k2 + 1) * g.beta_sq(k1 + 1, k2)
    q = g.alpha_sq(k1, k2) * g.beta_sq(k1, k2)
    return SixPointData(a1, a2, p, q, psd2_radical_cross(a1, a2, p, q))


def six_point(g: ShiftGrid2D, k: Index) -> bool:
    """Hyponormality of the self-commutator compression at one grid point:
    PSD of [[a1, sqrt(p)-sqrt(q)], [sqrt(p)-sqrt(q), a2]] with a1, a2 the
    forward alpha and beta increments."""
    return six_point_data(g, k).ok


@dataclass(frozen=True)
class ConditionValue:
    name: str
    holds: bool
    values: dict[str, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class WindowReport:
    verdict: bool
    witness: tuple[Index, str] | None = None
    conditions: tuple[ConditionValue, ...] = ()
    window: Index | None = None

    def condition(self, name: str) -> ConditionValue:
        for cond in self.conditions:
            if cond.name == name:
                return cond
        raise KeyError(name)

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None
            if self.witness is None
            else {"k": list(self.witness[0]), "condition": self.witness[1]},
            "window": None if self.window is None else list(self.window),
            "conditions": [
                {
                    "name": c.name,
                    "holds": c.holds,
                    "values": {k: format_rational(v) for k, v in c.values.items()},
                }
                for c in self.conditions
            ],
        }


def joint_hyponormal_window(g: ShiftGrid2D, m: int, n: int) -> WindowReport:
    """Six-point test at every index of [0,m] x [0,n]; first failure wins."""
    if m < 0 or n < 0:
        raise GridError(f"bad window ({m}, {n})")
    for k2 in range(n + 1):
        for k1 in range(m + 1):
            if not six_point(g, (k1, k2)):
                return WindowReport(False, witness=((k1, k2), "six_point"), window=(m, n))
    return WindowReport(True, window=(m, n))


@dataclass(frozen=True)
class FlatnessFlags:
    horizontal: bool
    vertical: bool
    flat: bool
    symmetric: bool


def flatness(g: ShiftGrid2D, m: int, n: int) -> FlatnessFlags:
    """Constancy of interior weights on [1,m] x [1,n] in each direction;
    symmetric additionally requires the two interior constants to agree."""
    if m < 2 or n < 2:
        raise GridError(f"flatness window must reach (2, 2), got ({m}, {n})")
    a11 = g.alpha_sq(1, 1)
    b11 = g.beta_sq(1, 1)
    horizontal = all(
        g.alpha_sq(k1, k2) == a11 for k1 in range(1, m + 1) for k2 in range(1, n + 1)
    )
    vertical = all(
        g.beta_sq(k1, k2) == b11 for k1 in range(1, m + 1) for k2 in range(1, n + 1)
    )
    flat = horizontal and vertical
    return FlatnessFlags(horizontal, vertical, flat, flat and a11 == b11)


@dataclass(frozen=True)
class PropagationEntry:
    k: Index
    beta_here: Fraction
    beta_right: Fraction
    six_point_ok: bool

    @property
    def ok(self) -> bool:
        return self.beta_here == self.beta_right


@dataclass(frozen=True)
class PropagationReport:
    """Audit of the equal-alpha consequence on a window.

    For every index with alpha_sq(k + e1) == alpha_sq(k), a jointly
    hyponormal grid must satisfy beta_sq(k + e1) == beta_sq(k); an entry
    violating that is a certificate of non-hyponormality, and the six-point
    verdict at the same index is recorded for cross-checking.
    """

    entries: tuple[PropagationEntry, ...]

    @property
    def violations(self) -> tuple[PropagationEntry, ...]:
        return tuple(e for e in self.entries if not e.ok)


def propagation_consequences(g: ShiftGrid2D, m: int, n: int) -> PropagationReport:
    entries = []
    for k2 in range(n + 1):
        for k1 in range(m + 1):
            if g.alpha_sq(k1 + 1, k2) == g.alpha_sq(k1, k2):
                entries.append(
                    PropagationEntry(
                        (k1, k2),
                        g.beta_sq(k1, k2),
                        g.beta_sq(k1 + 1, k2),
                        six_point(g, (k1, k2)),
                    )
                )
    return PropagationReport(tuple(entries))


# ---------------------------------------------------------------------------
# explicit grids


def build_explicit(alpha_rows: list[list[Fraction]], beta_rows: list[list[Fraction]]) -> ShiftGrid2D:
    """Grid from materialized windows; rows are levels (row index is k2)."""
    if not alpha_rows or not beta_rows:
        raise GridError("explicit grid needs nonempty alpha and beta windows")
    for name, rows in (("alpha", alpha_rows), ("beta", beta_rows)):
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise GridError(f"explicit {name} window must be rectangular and nonempty")

    def reader(rows: list[list[Fraction]], label: str) -> Callable[[int, int], Fraction]:
        def fn(k1: int, k2: int) -> Fraction:
            if k2 >= len(rows) or k1 >= len(rows[0]):
                raise GridError(
                    f"{label} index ({k1}, {k2}) outside explicit window "
                    f"{len(rows[0])} x {len(rows)}"
                )
            return rows[k2][k1]

        return fn

    spec = {
        "model": "explicit",
        "alpha_sq": [[format_rational(v) for v in row] for row in alpha_rows],
        "beta_sq": [[format_rational(v) for v in row] for row in beta_rows],
    }
    return ShiftGrid2D("explicit", reader(alpha_rows, "alpha"), reader(beta_rows, "beta"), spec)


# ---------------------------------------------------------------------------
# family: optimal flat extension grid


def build_figure9(y_sq: Fraction) -> ShiftGrid2D:
    """Level 0 carries the three-atom-family weights, column 0 the weights
    (n+1)/(n+2) above the seed y_sq, interior weights are 1; the level-0
    beta values follow from the commuting identity."""
    y_sq = Fraction(y_sq)
    if not 0 < y_sq <= 1:
        raise GridError(f"need 0 < y_sq <= 1, got {y_sq}")
    from .shift1d import alpha_family

    row0 = alpha_family()
    gammas: list[Fraction] = [Fraction(1)]

    def gamma(m: int) -> Fraction:
        while len(gammas) <= m:
            gammas.append(gammas[-1] * row0.weight_sq(len(gammas) - 1))
        return gammas[m]

    def alpha(k1: int, k2: int) -> Fraction:
        if k2 == 0:
            return row0.weight_sq(k1)
        if k1 == 0:
            return Fraction(1, 2)
        return Fraction(1)

    def beta(k1: int, k2: int) -> Fraction:
        if k2 == 0:
            if k1 == 0:
                return y_sq
            return y_sq / (2 * gamma(k1))
        return Fraction(k2 + 1, k2 + 2)

    spec = {"model": "figure9", "y_sq": format_rational(y_sq)}
    return ShiftGrid2D("figure9", alpha, beta, spec)


def figure9_standard_measures() -> tuple:
    """The representing measure of the core (an atom pair times t dt) and the
    three-atom level-0 measure used by the backward-extension calculation."""
    from .measures import delta, density, make1d, make2d

    s_part = make1d([(Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))])
    t_part = density([Fraction(0), Fraction(1)])
    mu_m = make2d([(Fraction(1), s_part, t_part)])
    xi = make1d(
        [
            (Fraction(0), Fraction(1, 3)),
            (Fraction(1, 2), Fraction(1, 3)),
            (Fraction(1), Fraction(1, 3)),
        ]
    )
    return mu_m, xi


def figure9_subnormality(y_sq: Fraction):
    """Backward-extension verdict for the optimal flat extension family."""
    from .measures import backward_ext_2var

    mu_m, xi = figure9_standard_measures()
    return backward_ext_2var(mu_m, xi, Fraction(y_sq))


# ---------------------------------------------------------------------------
# family: totally flat grid


def build_totallyflat(x_row: WeightSeq, y_sq: Fraction) -> ShiftGrid2D:
    """Level 0 carries x_row, every other weight is 1; level-0 beta values
    are y_sq over the cumulative x products, by commutativity."""
    y_sq = Fraction(y_sq)
    if y_sq <= 0:
        raise GridError(f"need y_sq > 0, got {y_sq}")
    if x_row.sup_weight_sq() > 1:
        raise GridError("x row must be bounded by 1")
    gammas: list[Fraction] = [Fraction(1)]

    def gamma(m: int) -> Fraction:
        while len(gammas) <= m:
            gammas.append(gammas[-1] * x_row.weight_sq(len(gammas) - 1))
        return gammas[m]

    def alpha(k1: int, k2: int) -> Fraction:
        if k2 == 0:
            return x_row.weight_sq(k1)
        return Fraction(1)

    def beta(k1: int, k2: int) -> Fraction:
        if k2 == 0:
            return y_sq / gamma(k1)
        return Fraction(1)

    spec = {"model": "totally_flat", "x_row": x_row.to_json_obj(), "y_sq": format_rational(y_sq)}
    return ShiftGrid2D("totally_flat", alpha, beta, spec)


# ---------------------------------------------------------------------------
# family: one-point-spectrum flat boundary grid (level rows of decreasing
# Bergman-like parameter over a flat top)


def _ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def next_chain_param(p: int, q: int) -> int:
    """Smallest integer r > q with p*r >= 9 q**2 and
    (p - 1/2)(r - 1/2) >= 9 (q - 1/2)**2.

    The quadratic (p-u)(r-u) - 9(q-u)**2 is concave in u, so these two
    endpoint inequalities certify (p-u)(r-u) >= 9(q-u)**2 for every
    u in (0, 1/2], which is the three-row sufficient condition at all
    grid columns at once.
    """
    if not 0 < p < q:
        raise GridError(f"need 0 < p < q, got ({p}, {q})")
    half = Fraction(1, 2)
    c1 = _ceil_fraction(Fraction(9 * q * q, p))
    c2 = _ceil_fraction(9 * (q - half) ** 2 / (p - half) + half)
    r = max(c1, c2, q + 1)
    assert p * r >= 9 * q * q and (p - half) * (r - half) >= 9 * (q - half) ** 2
    return r


def bergman_chain(k2: int) -> list[int]:
    """Top-down Bergman-like parameters for k2 boundary levels: 3, 18, then
    each further level from the deterministic search."""
    chain = [3, 18]
    while len(chain) < k2:
        chain.append(next_chain_param(chain[-2], chain[-1]))
    return chain[:k2]


def _pair_seed_bound(ell_low: int, ell_up: int, upper_seed: Fraction) -> Fraction:
    """Bound on the lower beta seed for two stacked Bergman-like levels:
    the (0, n) six-point there has rational sqrt(P*Q) and reduces to
    seed_low <= seed_up * (2 ell_low - 1) / (2 ell_low - 1 + 12 (ell_low - ell_up)**2)."""
    base = Fraction(2 * ell_low - 1)
    return upper_seed * base / (base + 12 * (ell_low - ell_up) ** 2)


def _largest_pow2_at_most(bound: Fraction) -> Fraction:
    if bound <= 0:
        raise GridError(f"no positive power of two below {bound}")
    value = Fraction(1)
    while value > bound:
        value /= 2
    return value


def _display_bound_top_pair(ell_low: int, ell_up: int) -> Fraction:
    """The published (0,0)-style threshold for a Bergman pair: with
    x the lower level, (x1^2 - x0^2)^2 * x0^2 / (x0^2 - y0^2)^2.

    For the (18, 3) pair this is 7/3240.  It differs from the faithful
    six-point bound (which also involves the upper seed); both are checked.
    """
    x0 = Fraction(ell_low) - Fraction(1, 2)
    x1 = Fraction(ell_low) - Fraction(1, 3)
    y0 = Fraction(ell_up) - Fraction(1, 2)
    return (x1 - x0) ** 2 * x0 / (x0 - y0) ** 2


def figure5_f(m: int, chain: tuple[int, int] = (18, 3)) -> Fraction:
    """Binding bound on the bottom seed from the (m, 0) six-points, m >= 1,
    for a bottom level ell_low under ell_up with unit seed product; increasing
    in m, so f(1) rules the whole level."""
    if m < 1:
        raise GridError(f"need m >= 1, got {m}")
    ell_low, ell_up = chain
    p_sq = Fraction(1)
    q_sq = Fraction(1)
    for k in range(m):
        p_sq *= Fraction(ell_low) - Fraction(1, k + 2)
        q_sq *= Fraction(ell_up) - Fraction(1, k + 2)
    x_m = Fraction(ell_low) - Fraction(1, m + 2)
    diff = Fraction(ell_low - ell_up)
    return p_sq * x_m / (q_sq**2 * (x_m + diff**2 * (m + 2) * (m + 3)))


def figure5_g(m: int, ell_up: int = 3) -> Fraction:
    """Lower bound required of the squared seed two levels up from the (m, 1)
    six-points, m >= 1; decreasing in m, so g(1) = 27/5 rules the level."""
    if m < 1:
        raise GridError(f"need m >= 1, got {m}")
    q_sq = Fraction(1)
    for k in range(m):
        q_sq *= Fraction(ell_up) - Fraction(1, k + 2)
    y_m = Fraction(ell_up) - Fraction(1, m + 2)
    return (1 + (m + 2) * (m + 3) * (1 - y_m) ** 2 / y_m) / q_sq


def _figure5_seeds(k2: int, alpha0_sq: Fraction, beta0_sq: Fraction | None) -> list[Fraction]:
    """Column seeds, bottom to top, indices 0..k2: the top two are pinned to
    1/alpha0_sq and 16/alpha0_sq; lower ones take the largest power of two
    below every applicable bound, unless an explicit bottom seed is given."""
    seeds: list[Fraction | None] = [None] * (k2 + 1)
    seeds[k2] = 16 / alpha0_sq
    seeds[k2 - 1] = 1 / alpha0_sq
    chain = bergman_chain(k2)
    if k2 == 1:
        x0 = Fraction(5, 2)
        x1 = Fraction(8, 3)
        beta1_sq = seeds[k2 - 1]
        bound_a = beta1_sq * x0 / (x0 + 6 * (alpha0_sq - x0) ** 2)
        rhs1 = 1 + 12 * (1 - x1) ** 2 / x1
        bound_b = beta1_sq * x0 / (alpha0_sq * rhs1)
        seeds[0] = beta0_sq if beta0_sq is not None else _largest_pow2_at_most(min(bound_a, bound_b))
    else:
        for n in range(k2 - 2, -1, -1):
            ell_low = chain[k2 - 1 - n]
            ell_up = chain[k2 - 2 - n]
            bound = _pair_seed_bound(ell_low, ell_up, seeds[n + 1])
            display = _display_bound_top_pair(ell_low, ell_up)
            if n == k2 - 2:
                bound = min(bound, display, figure5_f(1, (ell_low, ell_up)))
            if n == 0 and beta0_sq is not None:
                seeds[n] = beta0_sq
            else:
                seeds[n] = _largest_pow2_at_most(bound)
    return [Fraction(s) for s in seeds]


def build_figure5(
    k2: int, alpha0_sq: Fraction, beta0_sq: Fraction | None = None
) -> tuple[ShiftGrid2D, WindowReport]:
    """Grid with k2 Bergman-like boundary levels under a flat top, plus the
    report of named level-class conditions.

    Levels k2-1 down to 0 carry Bergman-like parameters 3, 18, then the
    deterministic chain; levels >= k2 are the flat shift with parameter
    alpha0_sq.  The report evaluates one named condition per boundary index
    class; its witness is the representative index of the first violated
    condition.  The published (0,0) threshold (beta1 for k2 = 2) is stricter
    than the raw six-point there, so a seed can fail this report while the
    plain window scan still passes; both views are reported honestly.
    """
    if k2 < 1:
        raise GridError(f"need k2 >= 1, got {k2}")
    alpha0_sq = Fraction(alpha0_sq)
    if not 0 < alpha0_sq < 1:
        raise GridError(f"need 0 < alpha0_sq < 1, got {alpha0_sq}")
    if beta0_sq is not None:
        beta0_sq = Fraction(beta0_sq)
        if beta0_sq <= 0:
            raise GridError(f"need beta0_sq > 0, got {beta0_sq}")
    chain = bergman_chain(k2)
    seeds = _figure5_seeds(k2, alpha0_sq, beta0_sq)

    def alpha(k1: int, k2_: int) -> Fraction:
        if k2_ < k2:
            ell = chain[k2 - 1 - k2_]
            return Fraction(ell) - Fraction(1, k1 + 2)
        return alpha0_sq if k1 == 0 else Fraction(1)

    def seed(n: int) -> Fraction:
        return seeds[n] if n <= k2 else seeds[k2]

    beta = _beta_from_seeds(alpha, seed)

    spec: dict = {
        "model": "figure5",
        "k2": k2,
        "alpha0_sq": format_rational(alpha0_sq),
        "beta0_sq": format_rational(seeds[0]),
    }
    grid = ShiftGrid2D("figure5", alpha, beta, spec)
    report = _figure5_report(k2, alpha0_sq, seeds, chain)
    return grid, report


def _figure5_report(k2: int, alpha0_sq: Fraction, seeds: list[Fraction], chain: list[int]) -> WindowReport:
    conditions: list[tuple[ConditionValue, Index]] = []
    if k2 == 1:
        x0 = Fraction(5, 2)
        x1 = Fraction(8, 3)
        beta1_sq = seeds[1]
        lhs = 6 * seeds[0] * (alpha0_sq - x0) ** 2
        rhs = (beta1_sq - seeds[0]) * x0
        conditions.append(
            (
                ConditionValue("beta0eq2", lhs <= rhs, {"lhs": lhs, "rhs": rhs}),
                (0, 0),
            )
        )
        lhs_eq = beta1_sq * x0 / (alpha0_sq * seeds[0])
        rhs_eq = 1 + 12 * (1 - x1) ** 2 / x1
        conditions.append(
            (
                ConditionValue("beta0eq", lhs_eq >= rhs_eq, {"lhs": lhs_eq, "rhs": rhs_eq}),
                (1, 0),
            )
        )
    else:
        bottom_pair = (chain[k2 - 1], chain[k2 - 2])
        display = _display_bound_top_pair(*bottom_pair)
        conditions.append(
            (
                ConditionValue(
                    "beta1",
                    seeds[0] <= display,
                    {"beta0_sq": seeds[0], "bound": display},
                ),
                (0, 0),
            )
        )
        f1 = figure5_f(1, bottom_pair)
        conditions.append(
            (
                ConditionValue(
                    "beta2",
                    seeds[0] <= f1,
                    {"beta0_sq": seeds[0], "f_at_1": f1},
                ),
                (1, 0),
            )
        )
        for n in range(1, k2 - 1):
            ell_low, ell_up = chain[k2 - 1 - n], chain[k2 - 2 - n]
            bound = _pair_seed_bound(ell_low, ell_up, seeds[n + 1])
            conditions.append(
                (
                    ConditionValue(
                        f"pair{n}",
                        seeds[n] <= bound,
                        {"seed_sq": seeds[n], "bound": bound},
                    ),
                    (0, n),
                )
            )
    top = Fraction(5, 2)
    cond1_lhs = (alpha0_sq - top) ** 2
    conditions.append(
        (
            ConditionValue(
                "condition1",
                cond1_lhs <= Fraction(25, 4),
                {"lhs": cond1_lhs, "rhs": Fraction(25, 4)},
            ),
            (0, k2 - 1),
        )
    )
    if k2 >= 2:
        g1 = figure5_g(1)
        beta_top_sq = seeds[k2]
        conditions.append(
            (
                ConditionValue(
                    "condition2b",
                    beta_top_sq >= g1,
                    {"beta_top_sq": beta_top_sq, "g_at_1": g1},
                ),
                (1, k2 - 1),
            )
        )
    verdict = all(c.holds for c, _ in conditions)
    witness = None
    for cond, index in conditions:
        if not cond.holds:
            witness = (index, cond.name)
            break
    return WindowReport(verdict, witness=witness, conditions=tuple(c for c, _ in conditions))


# ---------------------------------------------------------------------------
# family: symmetrically flat contractive grid


def build_sfc_grid(xi: Measure1D, eta1: Measure1D, a_sq: Fraction, y0_sq: Fraction) -> ShiftGrid2D:
    """Grid with level 0 the shift of xi, column 0 rising through a_sq and
    the shift of eta1, interior weights 1, and the remaining boundary values
    forced by commutativity."""
    a_sq = Fraction(a_sq)
    y0_sq = Fraction(y0_sq)
    if a_sq <= 0 or y0_sq <= 0:
        raise GridError("need positive a_sq and y0_sq")
    gx: list[Fraction] = [Fraction(1)]
    ge: list[Fraction] = [Fraction(1)]

    def gamma_xi(m: int) -> Fraction:
        while len(gx) <= m:
            gx.append(xi.moment(len(gx)))
        return gx[m]

    def gamma_eta1(m: int) -> Fraction:
        while len(ge) <= m:
            ge.append(eta1.moment(len(ge)))
        return ge[m]

    def alpha(k1: int, k2: int) -> Fraction:
        if k2 == 0:
            return gamma_xi(k1 + 1) / gamma_xi(k1)
        if k1 == 0:
            if k2 == 1:
                return a_sq
            return a_sq / gamma_eta1(k2 - 1)
        return Fraction(1)

    def beta(k1: int, k2: int) -> Fraction:
        if k1 == 0:
            if k2 == 0:
                return y0_sq
            return gamma_eta1(k2) / gamma_eta1(k2 - 1)
        if k2 == 0:
            return a_sq * y0_sq / gamma_xi(k1)
        return Fraction(1)

    spec = {
        "model": "sfc",
        "xi": xi.to_json_obj(),
        "eta1": eta1.to_json_obj(),
        "a_sq": format_rational(a_sq),
        "y0_sq": format_rational(y0_sq),
    }
    return ShiftGrid2D("sfc", alpha, beta, spec)


# ---------------------------------------------------------------------------
# JSON


def grid_from_json(obj: object, where: str = "grid") -> ShiftGrid2D:
    if not isinstance(obj, dict) or "model" not in obj:
        raise GridError(f"{where}: expected an object with a model")
    model = obj["model"]
    if model == "explicit":
        try:
            alpha_rows = [
                [_parse(v, f"{where}.alpha_sq[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(obj.get("alpha_sq", []))
            ]
            beta_rows = [
                [_parse(v, f"{where}.beta_sq[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(obj.get("beta_sq", []))
            ]
        except TypeError as exc:
            raise GridError(f"{where}: malformed explicit window") from exc
        return build_explicit(alpha_rows, beta_rows)
    if model == "figure9":
        return build_figure9(_parse(obj.get("y_sq"), f"{where}.y_sq"))
    if model == "figure5":
        k2 = obj.get("k2")
        if not isinstance(k2, int):
            raise GridError(f"{where}.k2: expected an integer")
        beta0 = obj.get("beta0_sq")
        grid, _ = build_figure5(
            k2,
            _parse(obj.get("alpha0_sq"), f"{where}.alpha0_sq"),
            None if beta0 is None else _parse(beta0, f"{where}.beta0_sq"),
        )
        return grid
    if model == "totally_flat":
        x_row = weights_from_json(obj.get("x_row"), f"{where}.x_row")
        return build_totallyflat(x_row, _parse(obj.get("y_sq"), f"{where}.y_sq"))
    if model == "sfc":
        from .sfc import params_from_json, sfc_grid

        return sfc_grid(params_from_json(obj, where))
    raise GridError(f"{where}.model: unknown model {model!r}")


def _parse(value: object, where: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise GridError(f"{where}: {exc}") from exc
    raise GridError(f"{where}: expected a rational string, got {value!r}")
