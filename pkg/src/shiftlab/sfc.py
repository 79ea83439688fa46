"""Classification of symmetrically flat contractive 2-variable shifts.

The data is a pair of probability measures on [0, 1] (level 0 and column 0),
one interior weight a_sq, and the corner weight y0_sq; all interior weights
above and right of index (1, 1) are 1.  Two squared thresholds decide
everything:

* h_sq: the corner weight bound for joint hyponormality,
* s_sq: the corner weight bound for subnormality,

and s_sq <= h_sq on the parameter window, so the verdict is a three-way
comparison of y0_sq against them.  All threshold arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import parse_rational
from .measures import (
    INFINITE,
    Measure1D,
    Measure2D,
    NegativePartError,
    NormValue,
    backward_ext_2var,
    combine1d,
    delta,
    density,
    make1d,
    make2d,
    measure1d_from_json,
    measure_sub,
)
from .shift2d import ShiftGrid2D, build_sfc_grid


class SFCError(ValueError):
    """Invalid or degenerate classification data."""


@dataclass(frozen=True)
class SFCParams:
    """Measure data plus the free weights, with the derived quantities the
    thresholds consume.

    The atom masses of eta at 0 and 1 are carried for completeness but no
    threshold reads them; the masses of xi at 0 and 1 enter s_sq.
    """

    xi: Measure1D
    eta: Measure1D
    a_sq: Fraction
    y0_sq: Fraction
    x0_sq: Fraction
    x1_sq: Fraction
    eta1: Measure1D
    y1_sq: Fraction
    inv_t_norm: NormValue
    xi_at_zero: Fraction
    xi_at_one: Fraction
    eta_at_zero: Fraction
    eta_at_one: Fraction


def make_params(xi: Measure1D, eta: Measure1D, a_sq: Fraction, y0_sq: Fraction) -> SFCParams:
    """Validate and derive; the only constructor worth using."""
    a_sq = Fraction(a_sq)
    y0_sq = Fraction(y0_sq)
    for name, mu in (("xi", xi), ("eta", eta)):
        if not mu.is_probability():
            raise SFCError(f"{name} must be a probability measure, has mass {mu.total_mass()}")
    if not 0 < a_sq <= 1:
        raise SFCError(f"need 0 < a_sq <= 1, got {a_sq}")
    if not 0 < y0_sq <= 1:
        raise SFCError(f"need 0 < y0_sq <= 1, got {y0_sq}")
    x0_sq = xi.moment(1)
    if x0_sq == 0:
        raise SFCError("xi concentrated at 0 gives a zero weight")
    x1_sq = xi.moment(2) / x0_sq
    if x1_sq > 1:
        raise SFCError(f"level-0 weights exceed 1: x1_sq = {x1_sq}")
    eta1 = eta.restriction(1)
    return SFCParams(
        xi=xi,
        eta=eta,
        a_sq=a_sq,
        y0_sq=y0_sq,
        x0_sq=x0_sq,
        x1_sq=x1_sq,
        eta1=eta1,
        y1_sq=eta1.moment(1),
        inv_t_norm=eta1.inv_t_norm(),
        xi_at_zero=xi.atom_mass(Fraction(0)),
        xi_at_one=xi.atom_mass(Fraction(1)),
        eta_at_zero=eta.atom_mass(Fraction(0)),
        eta_at_one=eta.atom_mass(Fraction(1)),
    )


def h_threshold_sq(p: SFCParams) -> Fraction:
    """Largest admissible squared corner weight for joint hyponormality.

    h_sq = x0_sq y1_sq (x1_sq - x0_sq) / (x0_sq (x1_sq - x0_sq) + (a_sq - x0_sq)^2).

    With a degenerate level (x1_sq == x0_sq) the threshold collapses to 0
    when a_sq differs from x0_sq and is undefined when it does not.
    """
    gap = p.x1_sq - p.x0_sq
    if gap == 0:
        if p.a_sq == p.x0_sq:
            raise SFCError("degenerate level with a_sq == x0_sq: threshold undefined")
        return Fraction(0)
    num = p.x0_sq * p.y1_sq * gap
    den = p.x0_sq * gap + (p.a_sq - p.x0_sq) ** 2
    return num / den


def s_threshold_sq(p: SFCParams) -> Fraction:
    """Largest admissible squared corner weight for subnormality.

    s_sq = min(xi({1}) / a_sq, xi({0}) / (inv_t_norm - a_sq)); needs the
    inverse-moment norm of the restricted column measure finite and above
    a_sq, otherwise the second constraint degenerates.
    """
    if p.inv_t_norm is INFINITE:
        raise SFCError("column measure has infinite inverse-moment norm")
    if p.inv_t_norm <= p.a_sq:
        raise SFCError(
            f"inverse-moment norm {p.inv_t_norm} <= a_sq {p.a_sq}: "
            "the zero-atom constraint degenerates"
        )
    return min(p.xi_at_one / p.a_sq, p.xi_at_zero / (p.inv_t_norm - p.a_sq))


VERDICTS = ("NotHyponormal", "HyponormalNotSubnormal", "Subnormal")


@dataclass(frozen=True)
class Classification:
    verdict: str
    h_sq: Fraction
    s_sq: Fraction


def classify(p: SFCParams) -> Classification:
    """Three-way verdict: y0_sq against s_sq, then h_sq."""
    h_sq = h_threshold_sq(p)
    s_sq = s_threshold_sq(p)
    if p.y0_sq <= s_sq:
        verdict = "Subnormal"
    elif p.y0_sq <= h_sq:
        verdict = "HyponormalNotSubnormal"
    else:
        verdict = "NotHyponormal"
    return Classification(verdict, h_sq, s_sq)


# ---------------------------------------------------------------------------
# the worked family

WINDOW_LO = Fraction(1, 6)
WINDOW_HI = Fraction(1, 2)


def example_family_measures(r_sq: Fraction) -> tuple[Measure1D, Measure1D]:
    """Three equal atoms for the level measure; for the column, r_sq splits
    mass between an atom at 0, a uniform density, and an atom at 1."""
    r_sq = Fraction(r_sq)
    if not 0 < r_sq <= 1:
        raise SFCError(f"need 0 < r_sq <= 1, got {r_sq}")
    third = Fraction(1, 3)
    xi = make1d([(Fraction(0), third), (Fraction(1, 2), third), (Fraction(1), third)])
    eta = combine1d(
        [
            (1 - r_sq, delta(Fraction(0))),
            (r_sq / 2, density([Fraction(1)])),
            (r_sq / 2, delta(Fraction(1))),
        ]
    )
    return xi, eta


def example_family(a_sq: Fraction, r_sq: Fraction, y0_sq: Fraction | None = None) -> SFCParams:
    """The worked parameter family: corner weight (3/4) r_sq by default, a_sq
    restricted to the window where the two thresholds are guaranteed to
    stay ordered and apart."""
    a_sq = Fraction(a_sq)
    if not WINDOW_LO < a_sq <= WINDOW_HI:
        raise SFCError(f"need {WINDOW_LO} < a_sq <= {WINDOW_HI}, got {a_sq}")
    xi, eta = example_family_measures(r_sq)
    if y0_sq is None:
        y0_sq = Fraction(3, 4) * Fraction(r_sq)
    return make_params(xi, eta, a_sq, y0_sq)


def window_margin(p: SFCParams) -> Fraction:
    """The quantity x0_sq x1_sq + a_sq - a_sq x0_sq - x0_sq, positive exactly
    when a_sq clears the lower window endpoint; its positivity is what keeps
    s below h."""
    return p.x0_sq * p.x1_sq + p.a_sq - p.a_sq * p.x0_sq - p.x0_sq


# ---------------------------------------------------------------------------
# cross-checks against the grid and measure machinery


def sfc_grid(p: SFCParams) -> ShiftGrid2D:
    return build_sfc_grid(p.xi, p.eta1, p.a_sq, p.y0_sq)


def sfc_mu_m(p: SFCParams) -> Measure2D:
    """Berger measure of the restriction to levels >= 1: mass a_sq at the
    (1,1) corner atom pair, the rest along the t-axis."""
    one = Fraction(1)
    try:
        column_rest = measure_sub(p.eta1, delta(one, p.a_sq))
    except NegativePartError as exc:
        raise SFCError(
            f"eta1 must dominate the atom of mass a_sq at 1: {exc}"
        ) from exc
    terms = [(p.a_sq, delta(one), delta(one))]
    if column_rest.total_mass() > 0:
        terms.append((one, delta(Fraction(0)), column_rest))
    return make2d(terms)


def sfc_backward_extension(p: SFCParams):
    """Backward-extension verdict for the corner weight; agrees with the
    subnormality side of classify."""
    return backward_ext_2var(sfc_mu_m(p), p.xi, p.y0_sq)


# ---------------------------------------------------------------------------
# region scan


@dataclass(frozen=True)
class ScanRow:
    a_sq: Fraction
    h_sq: Fraction
    s_sq: Fraction

    @property
    def gap_sq(self) -> Fraction:
        return self.h_sq - self.s_sq


def scan_region(a_sq_lo: Fraction, a_sq_hi: Fraction, steps: int) -> list[ScanRow]:
    """Both thresholds at `steps` equally spaced a_sq values, endpoints
    included; raises if the ordering h > s ever fails on the window."""
    a_sq_lo = Fraction(a_sq_lo)
    a_sq_hi = Fraction(a_sq_hi)
    if steps < 2:
        raise SFCError(f"need steps >= 2, got {steps}")
    if not WINDOW_LO < a_sq_lo <= a_sq_hi <= WINDOW_HI:
        raise SFCError(
            f"scan window must sit inside ({WINDOW_LO}, {WINDOW_HI}], "
            f"got [{a_sq_lo}, {a_sq_hi}]"
        )
    rows = []
    span = a_sq_hi - a_sq_lo
    for i in range(steps):
        a_sq = a_sq_lo + span * i / (steps - 1)
        params = example_family(a_sq, Fraction(1))
        h_sq = h_threshold_sq(params)
        s_sq = s_threshold_sq(params)
        if h_sq <= s_sq:
            raise SFCError(f"threshold ordering failed at a_sq = {a_sq}: h {h_sq} <= s {s_sq}")
        rows.append(ScanRow(a_sq, h_sq, s_sq))
    return rows


def moment_domination_check(xi: Measure1D) -> bool:
    """Exact verification that the first moment dominates the atom at 1, the
    complementary moment dominates the atom at 0, and both dominations are
    strict exactly when some mass lies strictly between."""
    if not xi.is_probability():
        raise SFCError(f"need a probability measure, mass is {xi.total_mass()}")
    support_hi = max(
        [pt for pt, _ in xi.atoms] + [seg.hi for seg in xi.segments],
        default=Fraction(0),
    )
    if support_hi > 1:
        raise SFCError(f"support reaches {support_hi}, beyond 1")
    p_atom = xi.atom_mass(Fraction(0))
    q_atom = xi.atom_mass(Fraction(1))
    m1 = xi.moment(1)
    first = m1 >= q_atom
    second = 1 - m1 >= p_atom
    strict = m1 > q_atom and 1 - m1 > p_atom
    return first and second and (strict == (p_atom + q_atom < 1))


# ---------------------------------------------------------------------------
# JSON


def params_from_json(obj: object, where: str = "params") -> SFCParams:
    if not isinstance(obj, dict):
        raise SFCError(f"{where}: expected an object")
    data = dict(obj)
    data.pop("model", None)
    if "eta1" in data and "eta" not in data:
        # grid specs store the restricted column measure directly
        eta1 = measure1d_from_json(data["eta1"], f"{where}.eta1")
        data["eta"] = None
    else:
        eta1 = None
    missing = [k for k in ("xi", "a_sq", "y0_sq") if k not in data]
    if missing or (eta1 is None and "eta" not in data):
        missing = missing + (["eta"] if eta1 is None and "eta" not in data else [])
        raise SFCError(f"{where}: missing field(s) {', '.join(missing)}")
    xi = measure1d_from_json(data["xi"], f"{where}.xi")
    a_sq = _rat(data["a_sq"], f"{where}.a_sq")
    y0_sq = _rat(data["y0_sq"], f"{where}.y0_sq")
    if eta1 is not None:
        # reconstruct a column measure whose restriction is eta1: scale the
        # shifted-down measure so it integrates to one, then undo nothing;
        # simplest faithful choice is eta with the same shape as eta1 times t,
        # renormalized, which restricts back to eta1 exactly.
        eta = _unrestrict(eta1)
        return make_params(xi, eta, a_sq, y0_sq)
    eta = measure1d_from_json(data["eta"], f"{where}.eta")
    return make_params(xi, eta, a_sq, y0_sq)


def _unrestrict(eta1: Measure1D) -> Measure1D:
    """A probability measure on [0, 1] whose level-1 restriction is eta1.

    Dividing the density by t and the atom masses by their positions gives a
    measure of total mass equal to the inverse-moment norm of eta1 (always
    at least 1 on [0, 1]); normalizing it recovers a valid column measure.
    """
    atoms = []
    for point, mass in eta1.atoms:
        if point == 0:
            raise SFCError("restricted column measure cannot charge 0")
        atoms.append((point, mass / point))
    segments = []
    for seg in eta1.segments:
        coeffs = list(seg.coeffs)
        if coeffs[0] != 0:
            raise SFCError(
                "restricted column density must carry a factor of t to invert polynomially"
            )
        segments.append((coeffs[1:], seg.lo, seg.hi))
    raw = make1d(atoms, segments)
    mass = raw.total_mass()
    if mass == 0:
        raise SFCError("restricted column measure is empty")
    return raw.scale(1 / mass)


def _rat(value: object, where: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise SFCError(f"{where}: {exc}") from exc
    raise SFCError(f"{where}: expected a rational string, got {value!r}")
