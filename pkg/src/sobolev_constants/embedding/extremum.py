"""Certified critical points of A^2 on t in [-1/4, 0].

With ``A^2 = -scale t^m B(t)`` and m odd, ``dA^2/dt = -scale t^(m-1) D(t)``
where ``D = m B + t B'``.  Since t^(m-1) > 0 off zero, A^2 rises where
D < 0 and falls where D > 0.  Interior critical points are the simple
roots of the square-free part of D, isolated by Sturm sequences; the left
endpoint t = -1/4 (a = 1/2) is always critical in the a variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional

from ..interval import Interval, ceil_decimal, enclose_poly, floor_decimal
from ..ratpoly import Poly, RootInterval, refine_root, sqrt_bounds, square_free_part, sturm_isolate_roots
from .profile import EmbeddingProfile

T_LO = Fraction(-1, 4)
T_HI = Fraction(0)
HALF = Fraction(1, 2)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class CriticalPoint:
    t: RootInterval
    kind: str
    label: str = ""
    exact_form: Optional[str] = None
    poly: Optional[Poly] = field(default=None, compare=False, repr=False)

    @property
    def t_enclosure(self) -> Interval:
        return Interval(self.t.lo, self.t.hi)

    def a_points(self, bits: int = 128):
        """Enclosures of a^- <= 1/2 <= a^+ with t = a^2 - a."""
        s_lo, _ = sqrt_bounds(1 + 4 * self.t.lo, bits)
        _, s_hi = sqrt_bounds(1 + 4 * self.t.hi, bits)
        return Interval(HALF - s_hi / 2, HALF - s_lo / 2), Interval(HALF + s_lo / 2, HALF + s_hi / 2)

    def refined(self, width: Fraction) -> "CriticalPoint":
        if self.t.is_exact() or self.t.width <= width:
            return self
        return replace(self, t=refine_root(self.poly, self.t, width))


def value_enclosure(profile: EmbeddingProfile, cp: CriticalPoint) -> Interval:
    return enclose_poly(profile.t_poly, cp.t_enclosure)


def classify(D: Poly, iv: RootInterval) -> str:
    """Kind of a critical point from the sign of D on either side."""
    if iv.is_exact():
        raise ValueError("classify needs a non-degenerate isolating interval")
    left, right = _sign(D(iv.lo)), _sign(D(iv.hi))
    if left < 0 < right:
        return "max"
    if left > 0 > right:
        return "min"
    return "inflection"


def _expand_exact(D: Poly, sf: Poly, iv: RootInterval, lower: Fraction, upper: Fraction) -> RootInterval:
    # turn an exact rational root into a tiny bracket that excludes its neighbours
    r, w = iv.lo, (upper - lower) / 4
    while True:
        lo, hi = max(r - w, lower), min(r + w, upper)
        cand = [x for x in sturm_isolate_roots(sf, lo, hi)] if lo < hi else []
        if len(cand) == 1 and D(lo) != 0 and D(hi) != 0:
            return RootInterval(lo, hi)
        w /= 2


def endpoint_kind(D: Poly, first_root_lo: Fraction) -> str:
    d = D(T_LO)
    if d == 0:
        probe = (T_LO + first_root_lo) / 2
        d = D(probe)
    return "max" if d > 0 else "min"


def interior_critical_points(profile: EmbeddingProfile) -> List[CriticalPoint]:
    D = profile.derivative_factor
    sf = square_free_part(D)
    points = []
    for iv in sturm_isolate_roots(sf, T_LO, T_HI):
        poly = sf
        if iv.is_exact():
            bracket = _expand_exact(D, sf, iv, T_LO, T_HI)
            kind = classify(D, bracket)
            points.append(CriticalPoint(iv, kind, poly=poly))
            continue
        points.append(CriticalPoint(iv, classify(D, iv), poly=poly))
    return points


def endpoint_point(profile: EmbeddingProfile, interior: List[CriticalPoint]) -> CriticalPoint:
    D = profile.derivative_factor
    first = interior[0].t.lo if interior else T_HI
    return CriticalPoint(RootInterval(T_LO, T_LO), endpoint_kind(D, first), label="a=1/2", exact_form="t = -1/4")


def certify_global_max(profile: EmbeddingProfile, maxima: List[CriticalPoint],
                       max_bits: int = 600) -> tuple:
    """Pick the maximum with the largest A^2, refining until the win is strict.

    Returns ``(winner, refined_points, decided)``; ``decided`` is False only
    if two values could not be separated at 2**-max_bits resolution.
    """
    pts = list(maxima)
    width = Fraction(1, 1 << 16)
    while True:
        pts = [p.refined(width) for p in pts]
        vals = [value_enclosure(profile, p) for p in pts]
        best = max(range(len(pts)), key=lambda i: vals[i].lo)
        if all(i == best or vals[i].hi < vals[best].lo for i in range(len(pts))):
            return pts[best], pts, True
        if width < Fraction(1, 1 << max_bits):
            return pts[best], pts, False
        width /= 1 << 16


def refine_value(profile: EmbeddingProfile, cp: CriticalPoint, target: Fraction) -> tuple:
    """Refine ``cp`` until its A^2 enclosure is at most ``target`` wide."""
    width = max(cp.t.width, Fraction(1, 1 << 20)) if not cp.t.is_exact() else Fraction(0)
    while True:
        val = value_enclosure(profile, cp)
        if val.width <= target:
            return cp, val
        width /= 1 << 8
        cp = cp.refined(width)


@dataclass
class ExtremumReport:
    n: int
    k: int
    profile: EmbeddingProfile
    critical_points: List[CriticalPoint]
    global_max: CriticalPoint
    lambda_sq: Interval
    decided: bool = True
    closed_form: Optional[Dict[str, object]] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    findings: List[str] = field(default_factory=list)

    @property
    def maxima(self) -> List[CriticalPoint]:
        return [p for p in self.critical_points if p.kind == "max"]

    def to_dict(self, digits: int = 30) -> dict:
        out = self.profile.to_dict()
        pts = []
        for p in self.critical_points:
            am, ap = p.a_points()
            val = value_enclosure(self.profile, p)
            rec = {
                "t_lo": str(p.t.lo), "t_hi": str(p.t.hi), "kind": p.kind, "label": p.label,
                "a_minus": interval_dict(am, digits), "a_plus": interval_dict(ap, digits),
                "value": interval_dict(val, digits),
            }
            if p.exact_form:
                rec["exact_form"] = p.exact_form
            pts.append(rec)
        out["critical_points"] = pts
        out["global_max"] = {"label": self.global_max.label, "t_lo": str(self.global_max.t.lo),
                             "t_hi": str(self.global_max.t.hi), "decided": self.decided}
        lam = interval_dict(self.lambda_sq, digits)
        if self.closed_form:
            lam["closed_form"] = self.closed_form
        out["lambda_sq"] = lam
        if self.checks:
            out["checks"] = dict(self.checks)
        if self.findings:
            out["findings"] = list(self.findings)
        return out


def interval_dict(iv: Interval, digits: int) -> dict:
    d = {"lo": str(iv.lo), "hi": str(iv.hi)}
    if iv.lo != iv.hi or iv.lo.denominator != 1:
        d["lo_dec"] = floor_decimal(iv.lo, digits)
        d["hi_dec"] = ceil_decimal(iv.hi, digits)
    return d
