"""Corpus-level comparison of merit against the weighted measures.

For every curve in a corpus, each scheme produces a polygon at a shared
vertex budget; merit-style and weighted measures are recorded and then
compared two ways: a product-moment correlation over the corpus, and a
step-by-step direction agreement that mirrors reading two line diagrams
side by side.  Weighted measures enter the comparison as reciprocals
(they are lower-is-better) except we3, which is compared directly, and
fg, which is also compared directly.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .curve import DigitalCurve, curve_geometry
from .exceptions import (
    AllZero,
    ConstantSeries,
    LengthMismatch,
    PolyApproxError,
)
from .measures import CSV_HEADER, MeasureRecord, build_record, record_to_csv_row
from .optimal import (
    CostKind,
    SegmentCosts,
    baseline_from_profile,
    select_start_vertex,
)
from .approx_error import polygon_errors
from .schemes import SchemeId, apply_scheme, auto_target_m

__all__ = [
    "MeasureSeries",
    "StudyReport",
    "pearson",
    "direction_agreement",
    "scale_for_plot",
    "run_study",
    "emit_svg_line_diagram",
    "PAIRINGS",
    "correlations_csv",
    "records_csv",
]

logger = logging.getLogger(__name__)

# key, weighted source column, transform, compare-inverted, merit column
PAIRINGS = (
    ("we", "we", "reciprocal", False, "merit"),
    ("we2", "we2", "reciprocal", False, "merit"),
    ("we3", "we3", "direct", True, "merit"),
    ("we_inf", "we_inf", "reciprocal", False, "merit_emax"),
    ("fg", "fg", "direct", False, "merit"),
)


@dataclass(frozen=True)
class MeasureSeries:
    """One measure sampled across the corpus, in corpus order."""

    label: str
    curve_ids: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.curve_ids) != len(self.values):
            raise LengthMismatch(
                f"{len(self.curve_ids)} ids vs {len(self.values)} values"
            )
        if not all(math.isfinite(v) for v in self.values):
            raise LengthMismatch(f"series {self.label!r} has non-finite values")


@dataclass
class StudyReport:
    """Everything the study produced for one scheme."""

    scheme: SchemeId
    records: list[MeasureRecord]
    pearson: dict[str, float]
    agreement: dict[str, list[bool]]
    skipped_pairings: dict[str, str] = field(default_factory=dict)
    skipped_curves: list[tuple[str, str]] = field(default_factory=list)


def pearson(xs, ys) -> float:
    """Product-moment correlation, clipped into [-1, 1]."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"series shapes differ: {x.shape} vs {y.shape}")
    if x.shape[0] < 3:
        raise LengthMismatch(f"need at least 3 points, got {x.shape[0]}")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(dx @ dx)
    sy = float(dy @ dy)
    if sx == 0.0 or sy == 0.0:
        raise ConstantSeries("correlation of a constant series is undefined")
    r = float(dx @ dy) / math.sqrt(sx * sy)
    return max(-1.0, min(1.0, r))


def direction_agreement(a, b, inverse_pairing: bool = False) -> list[bool]:
    """Per-step flag: do the two series move the same way?

    With inverse_pairing the second series is expected to mirror the
    first, so a rise agrees with a fall.  Zero steps only agree with
    zero steps either way.
    """
    av = list(a)
    bv = list(b)
    if len(av) != len(bv):
        raise LengthMismatch(f"{len(av)} vs {len(bv)} points")
    if len(av) < 2:
        raise LengthMismatch("need at least 2 points to step")
    flags = []
    for i in range(len(av) - 1):
        da = float(av[i + 1]) - float(av[i])
        db = float(bv[i + 1]) - float(bv[i])
        sa = (da > 0) - (da < 0)
        sb = (db > 0) - (db < 0)
        if inverse_pairing:
            sb = -sb
        flags.append(sa == sb)
    return flags


def scale_for_plot(series: MeasureSeries) -> MeasureSeries:
    """Rescale so the largest magnitude is 100; label keeps the factor."""
    peak = max(abs(v) for v in series.values)
    if peak == 0.0:
        raise AllZero(f"series {series.label!r} is all zeros")
    factor = 100.0 / peak
    return MeasureSeries(
        label=f"{series.label} (x{factor:g})",
        curve_ids=series.curve_ids,
        values=tuple(v * factor for v in series.values),
    )


def _evaluate_curve(
    curve: DigitalCurve,
    curve_id: str,
    schemes: tuple[SchemeId, ...],
    target_cr: float,
    nise_variant: str,
) -> dict[SchemeId, MeasureRecord]:
    n = curve.n
    m_sub = auto_target_m(curve, target_cr)
    geometry = curve_geometry(curve)
    costs = SegmentCosts(curve)
    m_max = min(n, 3 * m_sub)
    profiles = {}
    for kind in (CostKind.SUM_SQUARED, CostKind.MAX_ERROR):
        start = select_start_vertex(curve, m_sub, kind, costs)
        profiles[kind] = costs.profile(start, m_max, kind)
    out = {}
    for scheme in schemes:
        poly = apply_scheme(scheme, curve, m_sub)
        e2, emax = polygon_errors(curve, poly)
        b_e2 = baseline_from_profile(profiles[CostKind.SUM_SQUARED], m_sub, e2)
        b_em = baseline_from_profile(profiles[CostKind.MAX_ERROR], m_sub, emax)
        out[scheme] = build_record(
            curve,
            poly,
            b_e2,
            b_em,
            curve_id=curve_id,
            scheme=scheme.value,
            nise_variant=nise_variant,
            geometry=geometry,
        )
    return out


def run_study(
    corpus: list[DigitalCurve],
    schemes: tuple[SchemeId, ...] = tuple(SchemeId),
    target_cr: float = 15.0,
    nise_variant: str = "printed",
    threads: int = 1,
) -> list[StudyReport]:
    """Evaluate every scheme over a corpus and correlate the measures.

    Curves are processed independently (optionally in a thread pool; the
    kernels drop the GIL) and reduced in corpus order, so results do not
    depend on the thread count.  A curve that fails to evaluate is
    logged and skipped rather than aborting the study.
    """
    ids = []
    for i, curve in enumerate(corpus):
        ids.append(curve.name or f"curve{i:03d}")

    def job(pair):
        i, curve = pair
        try:
            return _evaluate_curve(curve, ids[i], schemes, target_cr, nise_variant)
        except PolyApproxError as exc:
            logger.warning("skipping %s: %s", ids[i], exc)
            return (ids[i], f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, enumerate(corpus)))
    else:
        results = [job(p) for p in enumerate(corpus)]

    skipped = [r for r in results if isinstance(r, tuple)]
    evaluated = [r for r in results if isinstance(r, dict)]

    reports = []
    for scheme in schemes:
        records = [r[scheme] for r in evaluated]
        corr: dict[str, float] = {}
        agree: dict[str, list[bool]] = {}
        skips: dict[str, str] = {}
        for key, source, transform, inverted, merit_col in PAIRINGS:
            weighted = [getattr(r, source) for r in records]
            merit = [
                (r.rosin_emax.merit if merit_col == "merit_emax" else r.rosin.merit)
                for r in records
            ]
            if transform == "reciprocal":
                if any(v == 0.0 for v in weighted):
                    skips[key] = "non-finite reciprocal (exact fit in corpus)"
                    corr[key] = math.nan
                    continue
                weighted = [1.0 / v for v in weighted]
            try:
                corr[key] = pearson(merit, weighted)
            except (ConstantSeries, LengthMismatch) as exc:
                skips[key] = f"{type(exc).__name__}: {exc}"
                corr[key] = math.nan
            if len(records) >= 2:
                agree[key] = direction_agreement(weighted, merit, inverted)
        reports.append(
            StudyReport(
                scheme=scheme,
                records=records,
                pearson=corr,
                agreement=agree,
                skipped_pairings=skips,
                skipped_curves=list(skipped),
            )
        )
    return reports


def study_series(report: StudyReport, key: str) -> tuple[MeasureSeries, MeasureSeries]:
    """(weighted, merit) series for one pairing, transformed as compared."""
    row = next(p for p in PAIRINGS if p[0] == key)
    _, source, transform, _, merit_col = row
    ids = tuple(r.curve_id for r in report.records)
    weighted = [getattr(r, source) for r in report.records]
    label = source
    if transform == "reciprocal":
        weighted = [1.0 / v for v in weighted]
        label = f"1/{source}"
    merit = [
        (r.rosin_emax.merit if merit_col == "merit_emax" else r.rosin.merit)
        for r in report.records
    ]
    return (
        MeasureSeries(label, ids, tuple(weighted)),
        MeasureSeries(merit_col, ids, tuple(merit)),
    )


_SVG_W = 1200
_SVG_H = 600
_MARGIN_L = 60.0
_MARGIN_R = 20.0
_MARGIN_T = 20.0
_MARGIN_B = 40.0


def _svg_x(i: int, count: int) -> float:
    span = _SVG_W - _MARGIN_L - _MARGIN_R
    if count == 1:
        return _MARGIN_L
    return _MARGIN_L + span * i / (count - 1)


def _svg_y(v: float) -> float:
    span = _SVG_H - _MARGIN_T - _MARGIN_B
    return (_SVG_H - _MARGIN_B) - span * v / 100.0


def emit_svg_line_diagram(
    weighted: MeasureSeries, merit: MeasureSeries, flags: list[bool]
) -> bytes:
    """Two overlaid line diagrams with per-step agreement markers.

    The weighted series draws in blue, the merit series in yellow; a
    vertical line at each step is yellow where the step agrees and blue
    where it disagrees.  Output is byte-deterministic: fixed canvas,
    fixed precision, no timestamps.
    """
    count = len(weighted.values)
    if count != len(merit.values):
        raise LengthMismatch(f"{count} vs {len(merit.values)} points")
    if len(flags) != count - 1:
        raise LengthMismatch(f"{len(flags)} flags for {count} points")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    for i, ok in enumerate(flags):
        x = _svg_x(i, count)
        color = "yellow" if ok else "blue"
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_T:.2f}" x2="{x:.2f}" '
            f'y2="{_SVG_H - _MARGIN_B:.2f}" stroke="{color}" stroke-width="1"/>'
        )
    axis = (
        f'<line x1="{_MARGIN_L:.2f}" y1="{_SVG_H - _MARGIN_B:.2f}" '
        f'x2="{_SVG_W - _MARGIN_R:.2f}" y2="{_SVG_H - _MARGIN_B:.2f}" '
        f'stroke="black" stroke-width="1"/>'
        f'<line x1="{_MARGIN_L:.2f}" y1="{_MARGIN_T:.2f}" '
        f'x2="{_MARGIN_L:.2f}" y2="{_SVG_H - _MARGIN_B:.2f}" '
        f'stroke="black" stroke-width="1"/>'
    )
    parts.append(axis)
    for series, color in ((weighted, "blue"), (merit, "yellow")):
        coords = " ".join(
            f"{_svg_x(i, count):.2f},{_svg_y(v):.2f}"
            for i, v in enumerate(series.values)
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="2"/>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + 10:.2f}" y="{_MARGIN_T + 16:.2f}" '
        f'fill="blue" font-size="14">{weighted.label}</text>'
        f'<text x="{_MARGIN_L + 10:.2f}" y="{_MARGIN_T + 34:.2f}" '
        f'fill="#b8860b" font-size="14">{merit.label}</text>'
    )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("ascii")


def records_csv(reports: list[StudyReport]) -> str:
    lines = [CSV_HEADER]
    for report in reports:
        for record in report.records:
            lines.append(record_to_csv_row(record))
    return "\n".join(lines) + "\n"


_PAIRING_SLUGS = {
    "we": "merit_vs_recip_we",
    "we2": "merit_vs_recip_we2",
    "we3": "merit_vs_we3",
    "we_inf": "meritemax_vs_recip_weinf",
    "fg": "merit_vs_fg",
}


def pairing_slug(key: str) -> str:
    return _PAIRING_SLUGS[key]


def correlations_csv(reports: list[StudyReport]) -> str:
    lines = ["scheme,pairing,r,n_curves"]
    for report in reports:
        for key, *_ in PAIRINGS:
            r = report.pearson.get(key, math.nan)
            lines.append(
                f"{report.scheme.value},{pairing_slug(key)},{r},{len(report.records)}"
            )
    return "\n".join(lines) + "\n"
