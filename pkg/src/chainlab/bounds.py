"""Closed-form lower bounds on chain counts, in exact arithmetic.

Two different half-integers called ``r`` appear below and must not be
confused: :func:`r_param` is the band radius attached to a family size
(used by the 2-chain characterization), while :func:`band_radius` is the
radius of the k middle levels (used by the stability bound).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .exceptions import DomainError
from .lattice import HalfInteger, SetFamily, level_profile, sperner_bound


def middle_sum(n: int, k: int) -> int:
    """M_k: total size of the k largest levels of the Boolean lattice on [n]."""
    if not 0 <= k <= n + 1:
        raise DomainError(f"need 0 <= k <= n+1, got k={k}, n={n}")
    lo = -(-(n - k + 1) // 2)
    hi = -(-(n + k - 1) // 2)
    return sum(comb(n, i) for i in range(lo, hi + 1))


def _band_sum(n: int, twice_r: int, shrink: int = 0) -> int:
    """Sum of binom(n, i) over n/2 - r + shrink <= i <= n/2 + r - shrink."""
    lo = (n - twice_r) // 2 + shrink
    hi = (n + twice_r) // 2 - shrink
    return sum(comb(n, i) for i in range(max(lo, 0), min(hi, n) + 1))


def r_param(n: int, s: int) -> HalfInteger:
    """Band radius r for a family of s sets (2r has the parity of n)."""
    if not sperner_bound(n) <= s <= 1 << n:
        raise DomainError(f"s={s} outside [{sperner_bound(n)}, {1 << n}] for n={n}")
    twice = n % 2
    while True:
        if _band_sum(n, twice, shrink=1) < s <= _band_sum(n, twice):
            return HalfInteger(twice)
        twice += 2


def band_radius(n: int, k: int) -> HalfInteger:
    """Radius of the k middle levels: (k-1)/2 if n+k is odd, else k/2."""
    return HalfInteger(k - 1 if (n + k) % 2 else k)


def center_a(n: int, k: int) -> int:
    """Size of the sets in the (k+1)-st middle level, ceil((n+k)/2)."""
    return -(-(n + k) // 2)


def erdos_katona_lower(n: int, t: int) -> int:
    return t * -(-(n + 1) // 2)


def _check_nk(n: int, k: int) -> None:
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")


def thm13_lower(n: int, k: int, t: int) -> int:
    """Chains forced by t sets beyond the k-1 middle levels."""
    _check_nk(n, k)
    return t * comb((n + k) // 2, k - 1) * factorial(k - 1)


def thm32_weights(n: int, k: int) -> tuple[list[Fraction], Fraction]:
    """Per-size contribution to the stability bound, and the constant offset.

    The stability bound of a family is ``sum(weights[|F|]) - offset``.
    """
    _check_nk(n, k)
    twice = band_radius(n, k).twice
    lo, hi = (n - twice) // 2, (n + twice) // 2
    scale = comb(n, hi) * comb(hi, k - 1) * factorial(k - 1)
    weights = []
    for i in range(n + 1):
        if lo <= i <= hi:
            weights.append(Fraction(scale, comb(n, i)))
        else:
            weights.append(Fraction(comb(max(i, n - i), k - 1) * factorial(k - 1)))
    return weights, Fraction((k - 1) * scale)


def thm32_lower(fam: SetFamily, k: int) -> Fraction:
    """Stability lower bound on the k-chains of a specific family; may be negative."""
    weights, offset = thm32_weights(fam.n, k)
    profile = level_profile(fam)
    return sum((c * weights[i] for i, c in enumerate(profile.counts)), Fraction(0)) - offset


def stability_gains(n: int, k: int, ell: int) -> tuple[Fraction, Fraction]:
    """Chain gains forced by moving ell sets one level past the band edge.

    First entry: ell boundary sets replaced by sets one level beyond the
    band. Second: ell sets just inside the band pushed onto its edge.
    """
    _check_nk(n, k)
    if ell < 0:
        raise DomainError("ell must be non-negative")
    twice = band_radius(n, k).twice
    top = (n + twice) // 2
    first = Fraction(ell * comb(top, k - 2) * factorial(k - 1))
    second = Fraction(twice - 1, top) * ell * comb(top, k - 1) * factorial(k - 1)
    return first, second


def prop41_lower(n: int, k: int, t1: int, t2: int) -> Fraction:
    """Chains with a step of size >= 2 forced beyond the k middle levels."""
    _check_nk(n, k)
    a = center_a(n, k)
    return (t1 + Fraction(k - 1, a) * t2) * comb(a, k) * comb(k, 2) * factorial(k - 1)


def thm42_lower(n: int, k: int, t1: int, t2: int) -> Fraction:
    _check_nk(n, k)
    a = center_a(n, k)
    base = comb(n, a - k) * comb(n - a + k, k - 1) * factorial(k - 1)
    per_set = (comb(a, k - 1) + comb(a, k) * comb(k, 2)) * factorial(k - 1)
    return base + (t1 + Fraction(k - 1, a) * t2) * per_set


def thm14_in_range(n: int, k: int) -> bool:
    return n >= 15 and 2 <= k <= n - 6


def thm14_lower(n: int, k: int, t: int) -> Fraction:
    """Chains forced in a family of M_k + t sets (proven for n >= 15, k <= n-6)."""
    return thm42_lower(n, k, t, 0)


def prop43_min_missing(n: int, k: int) -> int:
    """Sets that must be missing from the k-1 middle levels once a size n-1 set is present."""
    _check_nk(n, k)
    a = center_a(n, k)
    value = comb(n - 1, a - 1) - a * (1 + Fraction((a - k + 1) * (k - 1), 2))
    return max(0, -(-value.numerator // value.denominator))


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Fraction
    params: dict = field(default_factory=dict)
    regime_ok: bool = True

    @property
    def value_fraction(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"

    @property
    def value_decimal(self) -> str:
        return fraction_to_decimal(self.value)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value_fraction": self.value_fraction,
            "value_decimal": self.value_decimal,
            "params": {key: str(v) for key, v in self.params.items()},
            "regime_ok": self.regime_ok,
        }


def fraction_to_decimal(value: Fraction, places: int = 12) -> str:
    """Deterministic decimal rendering; exact when the expansion terminates within ``places``."""
    with localcontext() as ctx:
        ctx.prec = 200
        dec = Decimal(value.numerator) / Decimal(value.denominator)
        text = format(dec.quantize(Decimal(1).scaleb(-places)), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _need(params: dict, *names: str) -> list[int]:
    missing = [nm for nm in names if params.get(nm) is None]
    if missing:
        raise DomainError(f"missing parameter(s): {', '.join(missing)}")
    return [int(params[nm]) for nm in names]


def _report_middle(p):
    n, k = _need(p, "n", "k")
    return Fraction(middle_sum(n, k)), {"n": n, "k": k}, True


def _report_r(p):
    n, s = _need(p, "n", "s")
    r = r_param(n, s)
    return r.as_fraction(), {"n": n, "s": s}, True


def _report_ek(p):
    n, t = _need(p, "n", "t")
    return Fraction(erdos_katona_lower(n, t)), {"n": n, "t": t}, t >= 0


def _report_thm13(p):
    n, k, t = _need(p, "n", "k", "t")
    return Fraction(thm13_lower(n, k, t)), {"n": n, "k": k, "t": t}, 2 <= k <= n and t >= 0


def _report_prop41(p):
    n, k, t1, t2 = _need(p, "n", "k", "t1", "t2")
    ok = 2 <= k <= n and t2 >= 0 and t1 + t2 >= 0
    return prop41_lower(n, k, t1, t2), {"n": n, "k": k, "t1": t1, "t2": t2}, ok


def _report_thm42(p):
    n, k, t1, t2 = _need(p, "n", "k", "t1", "t2")
    ok = 2 <= k <= n and t2 >= 0 and t1 + t2 >= 0
    return thm42_lower(n, k, t1, t2), {"n": n, "k": k, "t1": t1, "t2": t2}, ok


def _report_thm14(p):
    n, k, t = _need(p, "n", "k", "t")
    return thm14_lower(n, k, t), {"n": n, "k": k, "t": t}, thm14_in_range(n, k) and t >= 0


def _report_prop43(p):
    n, k = _need(p, "n", "k")
    return Fraction(prop43_min_missing(n, k)), {"n": n, "k": k}, thm14_in_range(n, k)


def _report_gain(which):
    def build(p):
        n, k, ell = _need(p, "n", "k", "ell")
        return stability_gains(n, k, ell)[which], {"n": n, "k": k, "ell": ell}, 2 <= k <= n
    return build


BOUNDS: dict[str, Callable] = {
    "middle_sum": _report_middle,
    "r_param": _report_r,
    "erdos_katona": _report_ek,
    "thm13": _report_thm13,
    "prop41": _report_prop41,
    "thm42": _report_thm42,
    "thm14": _report_thm14,
    "prop43": _report_prop43,
    "gain_outside": _report_gain(0),
    "gain_edge": _report_gain(1),
}


def bound_report(name: str, **params) -> BoundReport:
    """Evaluate a named bound. Unknown names raise :class:`DomainError`."""
    try:
        build = BOUNDS[name]
    except KeyError:
        raise DomainError(f"unknown bound {name!r}; choose from {', '.join(BOUNDS)}") from None
    value, used, ok = build(params)
    return BoundReport(name, Fraction(value), used, bool(ok))


def thm32_report(fam: SetFamily, k: int) -> BoundReport:
    return BoundReport("thm32", thm32_lower(fam, k), {"n": fam.n, "k": k, "s": len(fam)},
                       2 <= k <= fam.n)
