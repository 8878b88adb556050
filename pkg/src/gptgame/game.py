"""Optimal play of the storability game as a function of the penalty.

With message length n fixed, the best expected reward is
E_w(n) = w + IS_n - w * IS_n / n, affine in w; the player then picks the n
that maximizes it.  Beyond the saturation length the curve only decays,
so the search stops there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .documents import fmt_float
from .errors import InputError
from .model import EPS_CMP, Measurement, StateEnsemble, StateSpace
from .storability import StorabilityProfile, characteristic_numbers, storability_limited

PERFECT_DISCRIMINATION = "perfect_discrimination"
SUPER_STORABILITY = "super_storability"
TIE = "tie"


@dataclass(frozen=True, eq=False)
class StrategyReport:
    w: float
    optimal_n: int
    expected_reward: float
    strategy_class: str
    witness_ensemble: StateEnsemble | None
    witness_measurement: Measurement | None
    curve: dict


@dataclass(frozen=True, eq=False)
class SweepRow:
    w: float
    curve: dict
    optimal_n: int
    expected_reward: float
    strategy_class: str


@dataclass(frozen=True, eq=False)
class SweepTable:
    space_name: str
    n_values: tuple
    rows: tuple
    d: int
    n_star: int


def _profile_for(space_or_profile, **kwargs) -> StorabilityProfile:
    if isinstance(space_or_profile, StorabilityProfile):
        return space_or_profile
    return characteristic_numbers(space_or_profile, **kwargs)


def reward_value(profile: StorabilityProfile, w: float, n: int) -> float:
    v = profile.is_at(n)
    return w + v - w * v / n


def reward_curve(profile: StorabilityProfile, w: float) -> dict:
    """E_w(n) for n = 1 .. n_star (the curve is decreasing past n_star)."""
    return {n: reward_value(profile, w, n) for n in range(1, profile.n_star + 1)}


def _pick_optimum(profile: StorabilityProfile, w: float, n_values, *,
                  eps_cmp: float = EPS_CMP):
    values = {n: reward_value(profile, w, n) for n in n_values}
    best = max(values.values())
    candidates = [n for n in n_values if values[n] >= best - eps_cmp]
    optimal_n = min(candidates)
    if len(candidates) > 1:
        cls = TIE
    elif optimal_n <= profile.d:
        cls = PERFECT_DISCRIMINATION
    else:
        cls = SUPER_STORABILITY
    return optimal_n, values[optimal_n], cls


def optimal_strategy(space: StateSpace, w: float, *, profile: StorabilityProfile | None = None,
                     **profile_kwargs) -> StrategyReport:
    """Best message length, reward and witnesses for one penalty value."""
    w = float(w)
    if w > 0.0:
        raise InputError("the game penalizes wrong guesses; w must be <= 0")
    eps_cmp = profile_kwargs.get("eps_cmp", EPS_CMP)
    prof = profile if profile is not None else _profile_for(space, **profile_kwargs)
    curve = reward_curve(prof, w)
    optimal_n, value, cls = _pick_optimum(prof, w, sorted(curve), eps_cmp=eps_cmp)
    witness = storability_limited(space, optimal_n, **profile_kwargs)
    return StrategyReport(
        w=w, optimal_n=optimal_n, expected_reward=value, strategy_class=cls,
        witness_ensemble=witness.witness_ensemble,
        witness_measurement=witness.witness_measurement,
        curve=curve,
    )


def advantage_threshold(space_or_profile, n: int, **profile_kwargs) -> float | None:
    """Penalty above which length n beats perfect discrimination, if any.

    Defined only for lengths at or past the super-storability onset;
    returns n (d - IS_n) / (n - IS_n), which is negative there.
    """
    prof = _profile_for(space_or_profile, **profile_kwargs)
    if prof.m is None or n < prof.m:
        return None
    v = prof.is_at(n)
    return float(n * (prof.d - v) / (n - v))


def advantage_range(space_or_profile, w: float, *, n_max: int | None = None,
                    **profile_kwargs) -> tuple:
    """All lengths (up to n_max, default the saturation length) whose best
    reward strictly beats the perfect-discrimination payoff."""
    w = float(w)
    if w >= 0.0:
        raise InputError("the advantage question needs a strictly negative w")
    eps_cmp = profile_kwargs.get("eps_cmp", EPS_CMP)
    prof = _profile_for(space_or_profile, **profile_kwargs)
    if prof.m is None:
        return ()
    top = prof.n_star if n_max is None else int(n_max)
    out = []
    for n in range(prof.m, top + 1):
        if reward_value(prof, w, n) > prof.d + eps_cmp:
            out.append(n)
    return tuple(out)


def sweep(space: StateSpace, w_min: float, w_max: float, steps: int, *,
          profile: StorabilityProfile | None = None, **profile_kwargs) -> SweepTable:
    """Sample the reward curves over a penalty interval.

    Each row holds E_w(n) for d <= n <= n_star plus the maximizing length;
    lengths below d are never optimal (their reward is just n).
    """
    w_min, w_max = float(w_min), float(w_max)
    steps = int(steps)
    if steps < 1:
        raise InputError("steps must be >= 1")
    if not (w_min <= w_max <= 0.0):
        raise InputError("need w_min <= w_max <= 0")
    eps_cmp = profile_kwargs.get("eps_cmp", EPS_CMP)
    prof = profile if profile is not None else _profile_for(space, **profile_kwargs)
    n_values = tuple(range(prof.d, prof.n_star + 1))
    ws = np.linspace(w_min, w_max, steps) if steps > 1 else np.array([w_min])
    rows = []
    for w in ws:
        w = float(w)
        curve = {n: reward_value(prof, w, n) for n in n_values}
        optimal_n, value, cls = _pick_optimum(prof, w, n_values, eps_cmp=eps_cmp)
        rows.append(SweepRow(w=w, curve=curve, optimal_n=optimal_n,
                             expected_reward=value, strategy_class=cls))
    return SweepTable(space_name=space.name, n_values=n_values, rows=tuple(rows),
                      d=prof.d, n_star=prof.n_star)


# -- emitters -------------------------------------------------------------------


def sweep_long_csv(table: SweepTable) -> str:
    lines = ["w,n,E_w_n"]
    for row in table.rows:
        for n in table.n_values:
            lines.append(f"{fmt_float(row.w)},{n},{fmt_float(row.curve[n])}")
    return "\n".join(lines) + "\n"


def sweep_summary_csv(table: SweepTable) -> str:
    lines = ["w,optimal_n,E_w"]
    for row in table.rows:
        lines.append(f"{fmt_float(row.w)},{row.optimal_n},{fmt_float(row.expected_reward)}")
    return "\n".join(lines) + "\n"


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
               "#8c564b", "#17becf", "#7f7f7f")


def sweep_svg(table: SweepTable, *, width: int = 720, height: int = 480) -> str:
    """Self-contained line chart of the reward curves, one polyline per n."""
    left, right, top, bottom = 64.0, 16.0, 28.0, 48.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    ws = [row.w for row in table.rows]
    evals = [row.curve[n] for row in table.rows for n in table.n_values]
    w_lo, w_hi = min(ws), max(ws)
    e_lo, e_hi = min(evals), max(evals)
    if w_hi - w_lo <= 0:
        w_hi = w_lo + 1.0
    if e_hi - e_lo <= 1e-12:
        e_hi = e_lo + 1.0
    pad = 0.05 * (e_hi - e_lo)
    e_lo, e_hi = e_lo - pad, e_hi + pad

    def sx(w):
        return left + (w - w_lo) / (w_hi - w_lo) * plot_w

    def sy(e):
        return top + (e_hi - e) / (e_hi - e_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 10:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">w</text>',
        f'<text x="16" y="{top + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.1f})">expected reward</text>',
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{plot_w:.1f}" height="{plot_h:.1f}" '
        f'fill="none" stroke="#444"/>',
    ]
    for i in range(5):
        w = w_lo + (w_hi - w_lo) * i / 4
        e = e_lo + (e_hi - e_lo) * i / 4
        parts.append(
            f'<line x1="{sx(w):.1f}" y1="{top + plot_h:.1f}" x2="{sx(w):.1f}" '
            f'y2="{top + plot_h + 5:.1f}" stroke="#444"/>'
            f'<text x="{sx(w):.1f}" y="{top + plot_h + 20:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{fmt_float(round(w, 6))}</text>'
        )
        parts.append(
            f'<line x1="{left - 5:.1f}" y1="{sy(e):.1f}" x2="{left:.1f}" y2="{sy(e):.1f}" '
            f'stroke="#444"/>'
            f'<text x="{left - 8:.1f}" y="{sy(e) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{fmt_float(round(e, 6))}</text>'
        )
    for k, n in enumerate(table.n_values):
        color = _SVG_COLORS[k % len(_SVG_COLORS)]
        pts = " ".join(
            f"{sx(row.w):.2f},{sy(row.curve[n]):.2f}" for row in table.rows
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = top + 16 + 16 * k
        lx = left + plot_w - 76
        parts.append(
            f'<line x1="{lx:.1f}" y1="{ly - 4:.1f}" x2="{lx + 22:.1f}" y2="{ly - 4:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
            f'<text x="{lx + 28:.1f}" y="{ly:.1f}" font-family="sans-serif" '
            f'font-size="12">n = {n}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
