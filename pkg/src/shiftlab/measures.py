"""Finite atomic-plus-polynomial-density measures and their moment calculus.

A 1-D measure is a finite list of point masses plus finitely many segments
carrying polynomial densities; a 2-D measure is a finite nonnegative
combination of product terms.  This class is closed under every operation
the library needs: moments, 1/t-norms, restriction to higher moments,
extremal reweighting, marginals, ordering, and the two backward-extension
constructions.  All data are rational and all answers exact.

Canonical form is computed on construction: atoms merged by point, segments
split at the global breakpoint set, equal adjacent pieces re-merged, zero
components dropped.  Construction fails if any canonical component is
negative, which is how signed expressions like "xi minus a rescaled
marginal" are adjudicated: the subtraction either canonicalizes to a genuine
measure or raises NegativePartError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .exactnum import (
    ExactInputError,
    Poly,
    format_rational,
    parse_rational,
    poly_add,
    poly_eval,
    poly_nonneg_on_interval,
    poly_scale,
    poly_shift_up,
    poly_trim,
)


class MeasureError(ValueError):
    """Invalid measure data or an operation outside this measure class."""


class NegativePartError(MeasureError):
    """A canonicalized component came out negative."""


class UnsupportedDensityError(MeasureError):
    """The result would leave the atoms+polynomial class (log moments)."""


class _InfiniteNorm:
    """Singleton sentinel for a divergent 1/t integral."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _InfiniteNorm()

NormValue = Union[Fraction, _InfiniteNorm]


# ---------------------------------------------------------------------------
# 1-D measures


@dataclass(frozen=True)
class Segment:
    coeffs: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class Measure1D:
    """Canonical nonnegative measure; construct through :func:`make1d`."""

    atoms: tuple[tuple[Fraction, Fraction], ...]
    segments: tuple[Segment, ...]

    # -- mass and moments

    def total_mass(self) -> Fraction:
        mass = sum((m for _, m in self.atoms), Fraction(0))
        for seg in self.segments:
            mass += _segment_integral(list(seg.coeffs), seg.lo, seg.hi)
        return mass

    def is_probability(self) -> bool:
        return self.total_mass() == 1

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise MeasureError(f"moment order must be >= 0, got {n}")
        total = sum((m * x**n for x, m in self.atoms), Fraction(0))
        for seg in self.segments:
            total += _segment_integral(poly_shift_up(list(seg.coeffs), n), seg.lo, seg.hi)
        return total

    def atom_mass(self, point: Fraction) -> Fraction:
        for x, m in self.atoms:
            if x == point:
                return m
        return Fraction(0)

    # -- 1/t calculus

    def inv_t_norm(self) -> NormValue:
        """Integral of 1/t, or INFINITE when mass touches t = 0.

        An atom at 0 or a segment starting at 0 whose density has nonzero
        constant term makes the integral diverge.  A density with nonzero
        constant term on a segment with lo > 0 would integrate to a
        logarithm, which this class cannot represent.
        """
        total = Fraction(0)
        for x, m in self.atoms:
            if x == 0:
                return INFINITE
            total += m / x
        for seg in self.segments:
            coeffs = list(seg.coeffs)
            if coeffs[0] != 0:
                if seg.lo == 0:
                    return INFINITE
                raise UnsupportedDensityError(
                    "1/t integral of a density with nonzero constant term on "
                    f"[{seg.lo}, {seg.hi}] is logarithmic; not representable"
                )
            total += _segment_integral(coeffs[1:], seg.lo, seg.hi)
        return total

    # -- transforms

    def scale(self, c: Fraction) -> "Measure1D":
        if c < 0:
            raise NegativePartError("cannot scale a measure by a negative factor")
        if c == 0:
            return ZERO_1D
        return Measure1D(
            tuple((x, c * m) for x, m in self.atoms),
            tuple(Segment(tuple(poly_scale(list(s.coeffs), c)), s.lo, s.hi) for s in self.segments),
        )

    def restriction(self, h: int) -> "Measure1D":
        """The renormalized h-th moment reweighting (1/gamma_h) t**h dmu.

        Atoms at 0 are annihilated; gamma_h = moment(h) must be positive.
        """
        if h < 1:
            raise MeasureError(f"restriction order must be >= 1, got {h}")
        if not self.is_probability():
            raise MeasureError("restriction needs a probability measure")
        gamma_h = self.moment(h)
        if gamma_h == 0:
            raise MeasureError("measure concentrated at 0: degenerate restriction")
        atoms = [(x, m * x**h / gamma_h) for x, m in self.atoms if x != 0]
        segments = [
            (poly_scale(poly_shift_up(list(s.coeffs), h), 1 / gamma_h), s.lo, s.hi)
            for s in self.segments
        ]
        return make1d(atoms, segments)

    def to_json_obj(self) -> dict:
        return {
            "atoms": [[format_rational(x), format_rational(m)] for x, m in self.atoms],
            "segments": [
                {
                    "coeffs": [format_rational(c) for c in seg.coeffs],
                    "lo": format_rational(seg.lo),
                    "hi": format_rational(seg.hi),
                }
                for seg in self.segments
            ],
        }


def _segment_integral(coeffs: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    total = Fraction(0)
    for k, c in enumerate(coeffs):
        if c:
            total += c * (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
    return total


RawAtom = tuple[Fraction, Fraction]
RawSegment = tuple[Iterable[Fraction], Fraction, Fraction]


def make1d(atoms: Iterable[RawAtom] = (), segments: Iterable[RawSegment] = ()) -> Measure1D:
    """Canonicalize raw atom/segment data into a nonnegative Measure1D.

    Accepts signed intermediate masses and densities (so differences can be
    expressed as concatenated positive and negated parts) but raises
    NegativePartError unless every canonical component is nonnegative.
    """
    acc: dict[Fraction, Fraction] = {}
    for x, m in atoms:
        if x < 0:
            raise MeasureError(f"atom at negative point {x}")
        acc[x] = acc.get(x, Fraction(0)) + m
    canon_atoms = []
    for x in sorted(acc):
        if acc[x] < 0:
            raise NegativePartError(f"negative atom mass {acc[x]} at {x}")
        if acc[x] != 0:
            canon_atoms.append((x, acc[x]))

    cleaned: list[tuple[Poly, Fraction, Fraction]] = []
    for coeffs, lo, hi in segments:
        if lo < 0:
            raise MeasureError(f"segment with negative endpoint {lo}")
        if lo > hi:
            raise MeasureError(f"segment with lo {lo} > hi {hi}")
        poly = poly_trim([Fraction(c) for c in coeffs])
        if lo == hi or not poly:
            continue
        cleaned.append((poly, lo, hi))

    canon_segments = _canonical_segments(cleaned)
    return Measure1D(tuple(canon_atoms), tuple(canon_segments))


def _canonical_segments(raw: list[tuple[Poly, Fraction, Fraction]]) -> list[Segment]:
    if not raw:
        return []
    points = sorted({p for _, lo, hi in raw for p in (lo, hi)})
    pieces: dict[tuple[Fraction, Fraction], Poly] = {}
    for poly, lo, hi in raw:
        inner = [p for p in points if lo <= p <= hi]
        for a, b in zip(inner, inner[1:]):
            key = (a, b)
            pieces[key] = poly_add(pieces.get(key, []), poly)
    out: list[Segment] = []
    for (a, b) in sorted(pieces):
        poly = poly_trim(pieces[(a, b)])
        if not poly:
            continue
        if not poly_nonneg_on_interval(poly, a, b):
            raise NegativePartError(f"density negative somewhere on [{a}, {b}]")
        if out and out[-1].hi == a and list(out[-1].coeffs) == poly:
            out[-1] = Segment(out[-1].coeffs, out[-1].lo, b)
        else:
            out.append(Segment(tuple(poly), a, b))
    return out


ZERO_1D = Measure1D((), ())


def delta(point: Fraction, mass: Fraction = Fraction(1)) -> Measure1D:
    """The point mass ``mass * delta_point``."""
    return make1d([(Fraction(point), Fraction(mass))])


def density(coeffs: Iterable[Fraction], lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Measure1D:
    """The measure with the given polynomial density on [lo, hi]."""
    return make1d([], [(list(coeffs), Fraction(lo), Fraction(hi))])


def lebesgue(lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Measure1D:
    return density([Fraction(1)], lo, hi)


def combine1d(terms: Iterable[tuple[Fraction, Measure1D]]) -> Measure1D:
    """Nonnegative linear combination sum(c_i * mu_i)."""
    atoms: list[RawAtom] = []
    segments: list[RawSegment] = []
    for c, mu in terms:
        atoms.extend((x, c * m) for x, m in mu.atoms)
        segments.extend((poly_scale(list(s.coeffs), c), s.lo, s.hi) for s in mu.segments)
    return make1d(atoms, segments)


def measure_sub(mu: Measure1D, nu: Measure1D) -> Measure1D:
    """mu - nu as a measure; NegativePartError when nu is not below mu."""
    return combine1d([(Fraction(1), mu), (Fraction(-1), nu)])


def measure_leq(mu: Measure1D, nu: Measure1D) -> bool:
    """Setwise comparison: mu(E) <= nu(E) for every Borel E."""
    try:
        measure_sub(nu, mu)
    except NegativePartError:
        return False
    return True


def _divide_by_t(mu: Measure1D) -> Measure1D:
    """The measure (1/t) dmu for a measure with no mass at 0."""
    atoms = []
    for x, m in mu.atoms:
        if x == 0:
            raise MeasureError("cannot divide an atom at 0 by t")
        atoms.append((x, m / x))
    segments = []
    for seg in mu.segments:
        coeffs = list(seg.coeffs)
        if coeffs[0] != 0:
            if seg.lo == 0:
                raise MeasureError("divergent division by t at 0")
            raise UnsupportedDensityError(
                "dividing a density with nonzero constant term by t yields "
                "a logarithmic moment measure; not representable"
            )
        segments.append((coeffs[1:], seg.lo, seg.hi))
    return make1d(atoms, segments)


def measure1d_from_json(obj: object, where: str = "measure") -> Measure1D:
    if not isinstance(obj, dict):
        raise MeasureError(f"{where}: expected an object with atoms/segments")
    unknown = set(obj) - {"atoms", "segments"}
    if unknown:
        raise MeasureError(f"{where}: unknown keys {sorted(unknown)}")
    atoms = []
    for i, pair in enumerate(obj.get("atoms", [])):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MeasureError(f"{where}.atoms[{i}]: expected [point, mass]")
        atoms.append((_rat(pair[0], f"{where}.atoms[{i}][0]"), _rat(pair[1], f"{where}.atoms[{i}][1]")))
    segments = []
    for i, seg in enumerate(obj.get("segments", [])):
        if not isinstance(seg, dict) or not {"coeffs", "lo", "hi"} <= set(seg):
            raise MeasureError(f"{where}.segments[{i}]: expected coeffs/lo/hi")
        coeffs = [_rat(c, f"{where}.segments[{i}].coeffs[{j}]") for j, c in enumerate(seg["coeffs"])]
        segments.append((coeffs, _rat(seg["lo"], f"{where}.segments[{i}].lo"), _rat(seg["hi"], f"{where}.segments[{i}].hi")))
    return make1d(atoms, segments)


def _rat(value: object, where: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ExactInputError as exc:
            raise MeasureError(f"{where}: {exc}") from exc
    raise MeasureError(f"{where}: expected a rational string, got {value!r}")


# ---------------------------------------------------------------------------
# 2-D measures (finite sums of product terms)


@dataclass(frozen=True)
class ProductTerm:
    coeff: Fraction
    s_part: Measure1D
    t_part: Measure1D


@dataclass(frozen=True)
class Measure2D:
    """Canonical finite sum of product terms; construct through :func:`make2d`.

    Canonical form normalizes both factors of each term to probability
    measures (masses folded into the coefficient), splits s-factors into
    their individual atoms and refined segment pieces, and merges the
    t-factors attached to equal s-components.  This is a true canonical form
    for the measures arising here, where distinct terms carry distinct
    s-atoms; structurally different factorizations of equal measures across
    overlapping continuous s-parts are out of scope.
    """

    terms: tuple[ProductTerm, ...]

    def total_mass(self) -> Fraction:
        return sum((t.coeff for t in self.terms), Fraction(0))

    def is_probability(self) -> bool:
        return self.total_mass() == 1

    def moment(self, j: int, k: int) -> Fraction:
        return sum(
            (t.coeff * t.s_part.moment(j) * t.t_part.moment(k) for t in self.terms),
            Fraction(0),
        )

    def inv_t_norm(self) -> NormValue:
        total = Fraction(0)
        for term in self.terms:
            norm = term.t_part.inv_t_norm()
            if norm is INFINITE:
                return INFINITE
            total += term.coeff * norm
        return total

    def marginal_x(self) -> Measure1D:
        return combine1d([(t.coeff, t.s_part) for t in self.terms])

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": format_rational(t.coeff),
                    "s": t.s_part.to_json_obj(),
                    "t": t.t_part.to_json_obj(),
                }
                for t in self.terms
            ]
        }


ZERO_2D = Measure2D(())


def _s_components(s: Measure1D) -> list[tuple[tuple, Fraction, Measure1D]]:
    """Split a canonical s-factor into (sort key, mass, probability piece)."""
    out = []
    for x, m in s.atoms:
        out.append((("atom", x), m, Measure1D(((x, Fraction(1)),), ())))
    for seg in s.segments:
        mass = _segment_integral(list(seg.coeffs), seg.lo, seg.hi)
        unit = tuple(poly_scale(list(seg.coeffs), 1 / mass))
        key = ("seg", seg.lo, seg.hi) + unit
        out.append((key, mass, Measure1D((), (Segment(unit, seg.lo, seg.hi),))))
    return out


def make2d(terms: Iterable[tuple[Fraction, Measure1D, Measure1D]]) -> Measure2D:
    grouped: dict[tuple, tuple[Measure1D, list[tuple[Fraction, Measure1D]]]] = {}
    for coeff, s_part, t_part in terms:
        if coeff < 0:
            raise NegativePartError(f"negative product-term coefficient {coeff}")
        if coeff == 0:
            continue
        t_mass = t_part.total_mass()
        if t_mass == 0:
            continue
        t_unit = t_part.scale(1 / t_mass)
        for key, s_mass, s_piece in _s_components(s_part):
            weight = coeff * s_mass * t_mass
            if weight == 0:
                continue
            slot = grouped.setdefault(key, (s_piece, []))
            slot[1].append((weight, t_unit))
    canon = []
    for key in sorted(grouped):
        s_piece, contribs = grouped[key]
        t_sum = combine1d(contribs)
        mass = t_sum.total_mass()
        if mass == 0:
            continue
        canon.append(ProductTerm(mass, s_piece, t_sum.scale(1 / mass)))
    return Measure2D(tuple(canon))


def product2d(s_part: Measure1D, t_part: Measure1D, coeff: Fraction = Fraction(1)) -> Measure2D:
    return make2d([(coeff, s_part, t_part)])


def extremal(mu: Measure2D) -> Measure2D:
    """Reweight by (1 - delta_0(t)) / (t * ||1/t||): drop t-mass at 0, divide
    by t, renormalize to a probability measure."""
    norm = mu.inv_t_norm()
    if norm is INFINITE:
        raise MeasureError("extremal measure undefined: 1/t norm diverges")
    if norm == 0:
        raise MeasureError("extremal measure undefined: no mass off t = 0")
    terms = []
    for term in mu.terms:
        stripped = make1d(
            [(x, m) for x, m in term.t_part.atoms if x != 0],
            [(list(s.coeffs), s.lo, s.hi) for s in term.t_part.segments],
        )
        terms.append((term.coeff / norm, term.s_part, _divide_by_t(stripped)))
    return make2d(terms)


def marginal_x(mu: Measure2D) -> Measure1D:
    return mu.marginal_x()


def measure2d_from_json(obj: object, where: str = "measure2d") -> Measure2D:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise MeasureError(f"{where}: expected an object with a terms list")
    terms = []
    for i, term in enumerate(obj["terms"]):
        if not isinstance(term, dict) or not {"coeff", "s", "t"} <= set(term):
            raise MeasureError(f"{where}.terms[{i}]: expected coeff/s/t")
        terms.append(
            (
                _rat(term["coeff"], f"{where}.terms[{i}].coeff"),
                measure1d_from_json(term["s"], f"{where}.terms[{i}].s"),
                measure1d_from_json(term["t"], f"{where}.terms[{i}].t"),
            )
        )
    return make2d(terms)


# ---------------------------------------------------------------------------
# backward extensions


def max_backward_weight_sq(eta_m: Measure1D) -> Fraction:
    """Largest squared weight that can be prepended below a given measure.

    Equal to the reciprocal of the 1/t norm; no finite bound exists when the
    norm diverges.
    """
    norm = eta_m.inv_t_norm()
    if norm is INFINITE:
        raise MeasureError("no finite prepend bound: 1/t norm diverges")
    if norm == 0:
        raise MeasureError("no mass: prepend bound undefined")
    return 1 / norm


@dataclass(frozen=True)
class Extension1Result:
    ok: bool
    failed: str | None
    measure: Measure1D | None
    inv_t_norm: NormValue


def backward_ext_1var(eta_m: Measure1D, beta0_sq: Fraction) -> Extension1Result:
    """Prepend a weight below the shift represented by eta_m.

    Conditions: (i) the 1/t norm of eta_m is finite, (ii) beta0_sq times
    that norm is at most 1.  On success the extended representing measure is
    (beta0_sq / t) deta_m + (1 - beta0_sq * ||1/t||) delta_0.
    """
    if not eta_m.is_probability():
        raise MeasureError("backward extension needs a probability measure")
    if beta0_sq <= 0:
        raise MeasureError("prepended squared weight must be positive")
    norm = eta_m.inv_t_norm()
    if norm is INFINITE:
        return Extension1Result(False, "i", None, norm)
    if beta0_sq * norm > 1:
        return Extension1Result(False, "ii", None, norm)
    extended = combine1d(
        [
            (beta0_sq, _divide_by_t(eta_m)),
            (Fraction(1) - beta0_sq * norm, delta(Fraction(0))),
        ]
    )
    return Extension1Result(True, None, extended, norm)


@dataclass(frozen=True)
class Extension2Result:
    ok: bool
    failed: str | None
    measure: Measure2D | None
    inv_t_norm: NormValue


def backward_ext_2var(mu_m: Measure2D, xi: Measure1D, beta00_sq: Fraction) -> Extension2Result:
    """Prepend a row below a 2-variable shift with representing measure mu_m.

    Conditions: (i) finite 1/t norm N, (ii) beta00_sq * N <= 1, and
    (iii) beta00_sq * N * (extremal marginal) <= xi setwise.  On success,

        mu = beta00_sq * N * extremal(mu_m)
             + (xi - beta00_sq * N * marginal) x delta_0(t).

    When beta00_sq * N == 1 the remainder has zero mass, so condition (iii)
    forces the extremal marginal to equal xi exactly; no separate check is
    needed.
    """
    if not mu_m.is_probability() or not xi.is_probability():
        raise MeasureError("backward extension needs probability measures")
    if beta00_sq <= 0:
        raise MeasureError("prepended squared weight must be positive")
    norm = mu_m.inv_t_norm()
    if norm is INFINITE:
        return Extension2Result(False, "i", None, norm)
    if beta00_sq * norm > 1:
        return Extension2Result(False, "ii", None, norm)
    ext = extremal(mu_m)
    scaled_marginal = ext.marginal_x().scale(beta00_sq * norm)
    try:
        remainder = measure_sub(xi, scaled_marginal)
    except NegativePartError:
        return Extension2Result(False, "iii", None, norm)
    terms = [(beta00_sq * norm * t.coeff, t.s_part, t.t_part) for t in ext.terms]
    terms.append((Fraction(1), remainder, delta(Fraction(0))))
    return Extension2Result(True, None, make2d(terms), norm)
