"""One-variable weighted shifts with exact squared-weight sequences.

A shift is stored as an explicit finite prefix of squared weights plus a
closed-form tail rule.  Everything derived from it (cumulative moment
products, Hankel matrices, hyponormality of any order, flatness, measure
verification, propagation witnesses) is computed in exact rational
arithmetic; unsquared weights are never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Matrix, format_rational, matrix_det, parse_rational, psd_check
from .measures import Measure1D, MeasureError

TAIL_KINDS = ("constant", "bergman_like", "alpha_family", "beta_r_family", "none")


class ShiftError(ValueError):
    """Invalid weight data or an index past a finite sequence."""


@dataclass(frozen=True)
class WeightTail:
    kind: str
    value: Fraction | int | None = None


@dataclass(frozen=True)
class WeightSeq:
    """Squared weights: explicit prefix, then a tail rule at local index 0."""

    prefix_sq: tuple[Fraction, ...]
    tail: WeightTail

    def weight_sq(self, k: int) -> Fraction:
        if k < 0:
            raise ShiftError(f"negative index {k}")
        if k < len(self.prefix_sq):
            return self.prefix_sq[k]
        j = k - len(self.prefix_sq)
        kind, value = self.tail.kind, self.tail.value
        if kind == "constant":
            return value
        if kind == "bergman_like":
            return value - Fraction(1, j + 2)
        if kind == "alpha_family":
            if j == 0:
                return Fraction(1, 2)
            p = 2**j
            return Fraction(2 * p + 1, 2 * (p + 1))
        if kind == "beta_r_family":
            if j == 0:
                return Fraction(3, 4) * value
            return Fraction((j + 1) * (j + 3), (j + 2) ** 2)
        raise ShiftError(f"finite weight sequence has no index {k}")

    def sup_weight_sq(self) -> Fraction:
        """Exact supremum of the squared weights (tail rules are monotone)."""
        prefix_max = max(self.prefix_sq, default=Fraction(0))
        kind, value = self.tail.kind, self.tail.value
        if kind == "constant":
            tail_sup = value
        elif kind == "bergman_like":
            tail_sup = Fraction(value)
        elif kind in ("alpha_family", "beta_r_family"):
            tail_sup = Fraction(1)
        else:
            tail_sup = Fraction(0)
        return max(prefix_max, tail_sup)

    def gamma(self, up_to: int) -> list[Fraction]:
        """Cumulative products [1, w0, w0*w1, ...] up to index up_to."""
        if up_to < 0:
            raise ShiftError(f"negative moment bound {up_to}")
        out = [Fraction(1)]
        for k in range(up_to):
            out.append(out[-1] * self.weight_sq(k))
        return out

    def to_json_obj(self) -> dict:
        tail: dict[str, object] = {"kind": self.tail.kind}
        if self.tail.value is not None:
            if self.tail.kind == "bergman_like":
                tail["value"] = int(self.tail.value)
            else:
                tail["value"] = format_rational(self.tail.value)
        return {
            "prefix_sq": [format_rational(w) for w in self.prefix_sq],
            "tail": tail,
        }


def make_weights(prefix_sq=(), tail: WeightTail | None = None) -> WeightSeq:
    tail = tail or WeightTail("none")
    if tail.kind not in TAIL_KINDS:
        raise ShiftError(f"unknown tail kind {tail.kind!r}")
    prefix = tuple(Fraction(w) for w in prefix_sq)
    if any(w <= 0 for w in prefix):
        raise ShiftError("squared weights must be positive")
    if tail.kind in ("constant", "beta_r_family"):
        if not isinstance(tail.value, (int, Fraction)) or tail.value <= 0:
            raise ShiftError(f"{tail.kind} tail needs a positive rational value")
        tail = WeightTail(tail.kind, Fraction(tail.value))
    elif tail.kind == "bergman_like":
        if not isinstance(tail.value, int) or tail.value < 1:
            raise ShiftError("bergman_like tail needs an integer parameter >= 1")
    elif tail.value is not None:
        raise ShiftError(f"tail kind {tail.kind!r} takes no value")
    return WeightSeq(prefix, tail)


def bergman_like(ell: int) -> WeightSeq:
    """Squared weights ell - 1/(k+2); ell = 1 is the Bergman shift."""
    return make_weights((), WeightTail("bergman_like", ell))


def alpha_family() -> WeightSeq:
    """Squared weights 1/2, then (2**k + 1/2)/(2**k + 1); three-atom measure."""
    return make_weights((), WeightTail("alpha_family"))


def beta_r_family(r_sq: Fraction) -> WeightSeq:
    """Squared weights (3/4) r^2, then (n+1)(n+3)/(n+2)^2."""
    return make_weights((), WeightTail("beta_r_family", Fraction(r_sq)))


def flat_shift(a_sq: Fraction) -> WeightSeq:
    """The prototypical flat shift: a, 1, 1, 1, ..."""
    return make_weights((Fraction(a_sq),), WeightTail("constant", Fraction(1)))


def unilateral() -> WeightSeq:
    return make_weights((), WeightTail("constant", Fraction(1)))


def weights_from_json(obj: object, where: str = "weights") -> WeightSeq:
    if not isinstance(obj, dict) or "tail" not in obj:
        raise ShiftError(f"{where}: expected an object with prefix_sq/tail")
    tail_obj = obj["tail"]
    if not isinstance(tail_obj, dict) or "kind" not in tail_obj:
        raise ShiftError(f"{where}.tail: expected an object with a kind")
    kind = tail_obj["kind"]
    if kind not in TAIL_KINDS:
        raise ShiftError(f"{where}.tail.kind: unknown kind {kind!r}")
    raw_value = tail_obj.get("value")
    value: Fraction | int | None
    if raw_value is None:
        value = None
    elif kind == "bergman_like":
        if not isinstance(raw_value, int):
            raise ShiftError(f"{where}.tail.value: expected an integer")
        value = raw_value
    else:
        value = _parse(raw_value, f"{where}.tail.value")
    prefix = [_parse(w, f"{where}.prefix_sq[{i}]") for i, w in enumerate(obj.get("prefix_sq", []))]
    return make_weights(prefix, WeightTail(kind, value))


def _parse(value: object, where: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise ShiftError(f"{where}: {exc}") from exc
    raise ShiftError(f"{where}: expected a rational string, got {value!r}")


# ---------------------------------------------------------------------------
# positivity tests


def is_hyponormal(w: WeightSeq, window: int) -> bool:
    """Squared weights nondecreasing on [0, window]."""
    if window < 1:
        raise ShiftError(f"window must be >= 1, got {window}")
    return all(w.weight_sq(k) <= w.weight_sq(k + 1) for k in range(window))


def hankel_matrix(w: WeightSeq, order: int, base: int) -> Matrix:
    """(gamma_(base+i+j)) for i, j in 0..order."""
    if order < 1 or base < 0:
        raise ShiftError(f"need order >= 1 and base >= 0, got {order}, {base}")
    gammas = w.gamma(base + 2 * order)
    return [[gammas[base + i + j] for j in range(order + 1)] for i in range(order + 1)]


def hankel_psd(w: WeightSeq, order: int, base: int) -> bool:
    """PSD of the moment Hankel matrix.

    Order 1 is hyponormality at one site; order 2 matches the stated
    3 x 3 moment-matrix test; larger orders are the natural extension of the
    same pattern and are used only by the witness search below.
    """
    return psd_check(hankel_matrix(w, order, base))


def is_k_hyponormal(w: WeightSeq, order: int, window: int) -> bool:
    return all(hankel_psd(w, order, base) for base in range(window + 1))


def bergman_like_hankel2_det(ell: int, k: int, gamma_k: Fraction) -> Fraction:
    """Closed form for det of the order-2 Hankel at base k, Bergman-like ell.

    Always strictly positive, which is the certificate that every
    Bergman-like shift is 2-hyponormal.
    """
    if ell < 1 or k < 0:
        raise ShiftError(f"need ell >= 1 and k >= 0, got {ell}, {k}")
    num = gamma_k**3 * 2 * (ell + 1) * ((k + 2) * ell - 1) ** 2 * ((k + 3) * ell - 1)
    den = Fraction((k + 2) ** 3 * (k + 3) ** 3 * (k + 4) ** 2 * (k + 5))
    return num / den


def is_flat(w: WeightSeq, window: int) -> bool:
    """All squared weights from index 1 through window equal."""
    if window < 2:
        raise ShiftError(f"window must be >= 2, got {window}")
    first = w.weight_sq(1)
    return all(w.weight_sq(k) == first for k in range(2, window + 1))


def verify_berger(w: WeightSeq, mu: Measure1D, up_to: int) -> bool:
    """Moments of mu match the cumulative weight products through up_to."""
    if not mu.is_probability():
        raise MeasureError("verification needs a probability measure")
    gammas = w.gamma(up_to)
    return all(mu.moment(k) == gammas[k] for k in range(up_to + 1))


# ---------------------------------------------------------------------------
# propagation audit


@dataclass(frozen=True)
class AuditResult:
    """Outcome of the equal-pair witness search.

    kind is one of FLAT, NO_EQUAL_PAIR, WITNESS, INCONCLUSIVE.  A WITNESS
    carries the (order, base) of a failed Hankel test; INCONCLUSIVE records
    the exhausted search bound, since the underlying propagation facts
    guarantee that a witness exists for non-flat shifts with an equal pair
    but give no a-priori bound on where.
    """

    kind: str
    order: int | None = None
    base: int | None = None
    max_order: int | None = None


def propagation_audit(w: WeightSeq, max_order: int, window: int) -> AuditResult:
    """Search for a Hankel witness that an equal-pair shift is not flat.

    Two consecutive equal weights force flatness in any shift that is
    2-hyponormal (a fortiori subnormal), so a non-flat shift with an equal
    pair must fail some Hankel test; this scans orders 2..max_order and
    bases 0..window in that priority and reports the first failure.
    """
    if max_order < 2:
        raise ShiftError(f"max_order must be >= 2, got {max_order}")
    if window < 2:
        raise ShiftError(f"window must be >= 2, got {window}")
    has_pair = any(w.weight_sq(k) == w.weight_sq(k + 1) for k in range(window))
    if not has_pair:
        return AuditResult("NO_EQUAL_PAIR")
    if is_flat(w, window):
        return AuditResult("FLAT")
    for order in range(2, max_order + 1):
        for base in range(window + 1):
            if not hankel_psd(w, order, base):
                return AuditResult("WITNESS", order=order, base=base)
    return AuditResult("INCONCLUSIVE", max_order=max_order)


def hankel_det(w: WeightSeq, order: int, base: int) -> Fraction:
    return matrix_det(hankel_matrix(w, order, base))


# ---------------------------------------------------------------------------
# reciprocal-weight partial products

# The partial products of reciprocal squared weights of the two closed-form
# families telescope: the three-atom family's product converges to 3 and the
# two-parameter family's (r-independent part) to 3/2, the reciprocals of the
# representing measures' atom masses at 1.


def alpha_family_reciprocal_product(n: int) -> Fraction:
    """prod_(k=0..n) 1/w_k for the three-atom family: 2 * prod (2^k+1)/(2^k+1/2)."""
    if n < 1:
        raise ShiftError(f"need n >= 1, got {n}")
    w = alpha_family()
    out = Fraction(1)
    for k in range(n + 1):
        out /= w.weight_sq(k)
    return out


def beta_family_reciprocal_product(n: int) -> Fraction:
    """prod_(k=1..n) 1/w_k for the two-parameter family: prod (k+2)^2/((k+1)(k+3))."""
    if n < 1:
        raise ShiftError(f"need n >= 1, got {n}")
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= Fraction((k + 2) ** 2, (k + 1) * (k + 3))
    return out
