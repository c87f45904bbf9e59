"""Scan rows, numeric sweeps, and deterministic rendering (table/CSV/JSON).

The scan sweeps alpha at fixed (n, Sigma), classifying every point and
optionally attaching a numeric estimate of the constant obtained by
minimizing the discrete per-mode quotients over the low modes.  Output is
deterministic: floats are rendered with 17 significant digits, rows are
emitted in alpha order, and identical inputs produce byte-identical text.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .config import Config
from .modes import _solve_smallest
from .params import ConstantReport, _best_mode, _mode_threshold, classify, derive
from .spectra import Spectrum

__all__ = [
    "ScanRow",
    "SCAN_FIELDS",
    "scan_alphas",
    "compute_scan_rows",
    "fmt_float",
    "scan_rows_to_csv",
    "scan_rows_to_json",
    "scan_rows_to_table",
    "report_to_dict",
    "report_to_table",
    "report_to_csv",
]

SCAN_FIELDS = ("alpha", "delta_rad", "M", "numeric_delta", "regime", "certified")


@dataclass(frozen=True)
class ScanRow:
    """One sweep row.  ``M`` is absent at the critical exponent;
    ``numeric_delta`` is present only when the numeric sweep ran."""

    alpha: float
    delta_rad: float
    M: float | None
    numeric_delta: float | None
    regime: str
    certified: bool


def fmt_float(x) -> str:
    return f"{float(x):.17g}"


def scan_alphas(alpha_from: float, alpha_to: float, step: float) -> list[float]:
    """The grid alpha_from + k * step up to alpha_to (inclusive, fuzz 1e-12)."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    alphas = []
    k = 0
    while True:
        a = alpha_from + k * step
        if a > alpha_to + 1e-12:
            break
        alphas.append(a)
        k += 1
    return alphas


def _numeric_probe(p, spectrum: Spectrum, cfg: Config) -> float:
    """min over low modes of the discrete per-mode minimum.

    Probes the eigenvalues enumerated by the mode-minimum truncation,
    capped at k_max + 1 entries but always including the argmin of the mode
    function.  At the critical exponent the radial mode is solved with a
    pure-stiffness denominator (the L^2 weight vanishes there).
    """
    if p.h == 0:
        lams = spectrum.eigenvalues_past(0, guard=cfg.k_max)[: cfg.k_max + 1]
    else:
        lams = spectrum.eigenvalues_past(_mode_threshold(p), guard=1)[: cfg.k_max + 1]
        lam_star = _best_mode(p, spectrum)[1]
        if lam_star not in lams:
            lams.append(lam_star)
    best = None
    for lam in lams:
        lam = float(lam)
        value = _solve_smallest(
            float(p.A), float(p.B) + lam, float(p.C) + lam, cfg.scan_L, cfg.scan_N
        )[0]
        if best is None or value < best:
            best = value
    return best


def compute_scan_rows(
    n: int,
    alphas,
    spectrum: Spectrum,
    with_numeric: bool = False,
    cfg: Config | None = None,
    workers: int | None = None,
):
    """Yield ScanRows in alpha order (rows are computed concurrently).

    The spectrum is pre-extended past every threshold the sweep needs, so
    the concurrent row evaluations only read shared state.
    """
    cfg = cfg or Config()
    alphas = sorted(float(a) for a in alphas)
    params = [derive(n, a) for a in alphas]
    thresholds = [_mode_threshold(p) for p in params if p.h != 0]
    if thresholds:
        spectrum.eigenvalues_past(max(thresholds), guard=cfg.k_max + 1)
    spectrum.eigenvalues_past(0, guard=cfg.k_max + 1)

    def row(p) -> ScanRow:
        report = classify(p, spectrum)
        nd = _numeric_probe(p, spectrum, cfg) if with_numeric else None
        return ScanRow(
            alpha=float(p.alpha),
            delta_rad=report.delta_rad,
            M=report.M,
            numeric_delta=nd,
            regime=str(report.regime),
            certified=report.certified,
        )

    if with_numeric and (workers is None or workers > 1):
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(row, params)
    else:
        for p in params:
            yield row(p)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def scan_rows_to_csv(rows) -> str:
    lines = [",".join(SCAN_FIELDS)]
    for r in rows:
        lines.append(",".join(_cell(getattr(r, f)) for f in SCAN_FIELDS))
    return "\n".join(lines) + "\n"


def scan_rows_to_json(rows) -> str:
    payload = [
        {f: getattr(r, f) for f in SCAN_FIELDS}
        for r in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def scan_rows_to_table(rows) -> str:
    rows = list(rows)
    header = list(SCAN_FIELDS)
    table = [[_cell(getattr(r, f)) or "-" for f in SCAN_FIELDS] for r in rows]
    widths = [max(len(h), *(len(row[i]) for row in table)) if table else len(h)
              for i, h in enumerate(header)]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    for row in table:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(out) + "\n"


_REPORT_FIELDS = (
    "n", "alpha", "delta_rad", "M", "critical", "positive",
    "regime", "certified_by", "certified", "attained_lambda",
)


def report_to_dict(report: ConstantReport, domain: str) -> dict:
    data = {"domain": domain}
    for f in _REPORT_FIELDS:
        value = getattr(report, f)
        if f in ("regime", "certified_by"):
            value = str(value)
        data[f] = value
    return data


def report_to_table(report: ConstantReport, domain: str) -> str:
    data = report_to_dict(report, domain)
    lines = []
    for key in ("n", "alpha", "domain", "delta_rad", "M", "critical", "positive",
                "regime", "certified_by", "certified", "attained_lambda"):
        value = data[key]
        if isinstance(value, float):
            value = fmt_float(value)
        elif value is None:
            value = "-"
        lines.append(f"{key:>16}: {value}")
    return "\n".join(lines) + "\n"


def report_to_csv(report: ConstantReport, domain: str) -> str:
    data = report_to_dict(report, domain)
    keys = ["n", "alpha", "domain"] + [f for f in _REPORT_FIELDS if f not in ("n", "alpha")]
    header = ",".join(keys)
    row = ",".join(_cell(data[k]) for k in keys)
    return header + "\n" + row + "\n"
