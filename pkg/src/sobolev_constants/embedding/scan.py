"""Scan of the nearest-maximum hypothesis over a range of (n, k).

For every pair the maxima of A^2 on t in [-1/4, 0] come from Sturm
isolation; a rational grid is evaluated alongside as a referee.  A grid can
only under-report the maximum, so every grid value must sit below the
certified upper bound.  Rows that break the hypothesis become findings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ..interval import ceil_decimal, floor_decimal
from .analysis import analyze_profile
from .extremum import T_HI, T_LO, CriticalPoint, value_enclosure
from .profile import profile_from_recurrence

SCAN_PRECISION = Fraction(1, 10 ** 12)
DEFAULT_GRID = 400
K_MAX = 8


def expected_maxima(k: int) -> int:
    return (k + 2) // 2  # ceil((k+1)/2)


@dataclass
class ScanRow:
    n: int
    k: int
    maxima: List[dict]
    expected: int
    global_label: str
    global_t: tuple
    nearest_label: str
    grid_points: int
    grid_best_t: Fraction
    grid_ok: bool
    competitor: Optional[dict] = None

    @property
    def count(self) -> int:
        return len(self.maxima)

    @property
    def count_ok(self) -> bool:
        return self.count == self.expected

    @property
    def nearest_ok(self) -> bool:
        return self.global_label == self.nearest_label

    @property
    def even_at_half(self) -> Optional[bool]:
        if self.k % 2:
            return None
        return self.global_label == "a=1/2"

    @property
    def ok(self) -> bool:
        return self.count_ok and self.nearest_ok and self.grid_ok and self.even_at_half is not False

    def to_dict(self) -> dict:
        d = {
            "n": self.n, "k": self.k, "maxima_count": self.count, "expected": self.expected,
            "count_ok": self.count_ok, "global_max": self.global_label,
            "global_t_lo": str(self.global_t[0]), "global_t_hi": str(self.global_t[1]),
            "nearest_ok": self.nearest_ok, "even_at_half": self.even_at_half,
            "grid_points": self.grid_points, "grid_best_t": str(self.grid_best_t), "grid_ok": self.grid_ok,
            "maxima": self.maxima,
        }
        if self.competitor is not None:
            d["competitor"] = self.competitor
        return d


@dataclass
class ScanReport:
    rows: List[ScanRow] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and not self.findings

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "findings": list(self.findings), "ok": self.ok}


def _max_record(profile, p: CriticalPoint, digits: int = 20) -> dict:
    v = value_enclosure(profile, p)
    return {"label": p.label, "t_lo": str(p.t.lo), "t_hi": str(p.t.hi),
            "value_lo": floor_decimal(v.lo, digits), "value_hi": ceil_decimal(v.hi, digits)}


def scan_pair(n: int, k: int, grid: int = DEFAULT_GRID) -> ScanRow:
    profile = profile_from_recurrence(n, k)
    report = analyze_profile(profile, SCAN_PRECISION)
    maxima = sorted(report.maxima, key=lambda p: p.t.lo)
    # grid on t with ``grid`` points per unit length, endpoints included
    steps = max(1, math.ceil((T_HI - T_LO) * grid))
    pts = [T_LO + (T_HI - T_LO) * Fraction(i, steps) for i in range(steps + 1)]
    vals = [profile.value_at_t(t) for t in pts]
    best = max(range(len(pts)), key=lambda i: vals[i])
    winner = report.global_max
    competitor = None
    others = [p for p in maxima if p.label != winner.label]
    if others:
        # the runner-up is the one a careless comparison could promote
        runner = max(others, key=lambda p: value_enclosure(profile, p).hi)
        competitor = _max_record(profile, runner)
    return ScanRow(
        n=n, k=k,
        maxima=[_max_record(profile, p) for p in maxima],
        expected=expected_maxima(k),
        global_label=winner.label,
        global_t=(winner.t.lo, winner.t.hi),
        nearest_label=maxima[0].label if maxima else "",
        grid_points=len(pts),
        grid_best_t=pts[best],
        grid_ok=max(vals) <= report.lambda_sq.hi,
        competitor=competitor,
    )


def hypothesis_scan(n_max: int, k_max: int, grid: int = DEFAULT_GRID,
                    n_min: int = 1, k_min: int = 0) -> ScanReport:
    """Rows for every k_min <= k <= k_max and max(n_min, k+1) <= n <= n_max."""
    if k_max > K_MAX:
        raise ValueError(f"k_max must be at most {K_MAX}, got {k_max}")
    if k_min < 0 or k_min > k_max:
        raise ValueError(f"need 0 <= k_min <= k_max, got k_min={k_min}, k_max={k_max}")
    if grid < 1:
        raise ValueError(f"grid must be positive, got {grid}")
    out = ScanReport()
    for k in range(k_min, k_max + 1):
        for n in range(max(n_min, k + 1), n_max + 1):
            try:
                row = scan_pair(n, k, grid)
            except Exception as exc:  # a failed row is a finding, never a crash
                out.findings.append(f"n={n}, k={k}: analysis failed: {exc!r}")
                continue
            out.rows.append(row)
            if not row.count_ok:
                out.findings.append(f"n={n}, k={k}: {row.count} maxima, expected {row.expected}")
            if not row.nearest_ok:
                out.findings.append(f"n={n}, k={k}: global max at {row.global_label}, nearest is {row.nearest_label}")
            if row.even_at_half is False:
                out.findings.append(f"n={n}, k={k}: even k but the global max is not at a=1/2")
            if not row.grid_ok:
                out.findings.append(f"n={n}, k={k}: a grid value exceeds the certified maximum")
    return out


CSV_FIELDS = ("n", "k", "maxima_count", "expected", "count_ok", "global_max", "global_t_lo", "global_t_hi",
              "nearest_ok", "even_at_half", "grid_ok", "competitor_label", "competitor_value_hi")


def scan_csv_rows(report: ScanReport):
    for r in report.rows:
        d = r.to_dict()
        comp = d.get("competitor") or {}
        d["competitor_label"] = comp.get("label", "")
        d["competitor_value_hi"] = comp.get("value_hi", "")
        yield [d[f] if d[f] is not None else "" for f in CSV_FIELDS]
