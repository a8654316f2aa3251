"""End-to-end dataset analysis and report emission.

``analyze_dataset`` runs descriptive statistics, fits every requested
family, scores each fit, designates best models per criterion, and
assembles plot-ready point sets (fitted curves on a 512-point grid,
PP/QQ/TTT points, histogram bins).  ``emit_report`` renders the result as
fixed-width text, as a versioned JSON document (one object per table row),
or as CSV plot-data files.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import families, fitting, gof
from .datasets import UnitSample

__all__ = [
    "AnalysisReport",
    "SCHEMA_VERSION",
    "analyze_dataset",
    "emit_report",
    "read_structured_report",
    "render_gof_table",
    "simulation_rows",
]

SCHEMA_VERSION = 1
CURVE_GRID_POINTS = 512
_CRITERIA = ("aic", "aicc", "bic", "hqic")


@dataclass
class AnalysisReport:
    """Everything produced by one dataset analysis."""

    label: str
    n: int
    descriptives: gof.DescriptiveStats
    reports: list[gof.GofReport]
    failures: dict[str, str]
    best_by: dict[str, str]
    plot_data: dict[str, np.ndarray] = field(repr=False)


def _histogram_bins(x: np.ndarray) -> np.ndarray:
    """Density histogram; Freedman-Diaconis width, Sturges below n = 25."""
    n = x.size
    iqr = float(np.subtract(*np.percentile(x, [75, 25])))
    if n >= 25 and iqr > 0:
        width = 2.0 * iqr / n ** (1.0 / 3.0)
        nbins = max(1, int(math.ceil((x.max() - x.min()) / width)))
    else:
        nbins = max(1, int(math.ceil(math.log2(n))) + 1)
    dens, edges = np.histogram(x, bins=nbins, density=True)
    return np.column_stack([edges[:-1], edges[1:], np.append(dens, np.nan)[:-1]])


def analyze_dataset(sample: UnitSample, which="all") -> AnalysisReport:
    """Fit the requested families (default all eight) and assemble a report.

    Per-family fit failures are recorded and the analysis continues; the
    best-model designations minimize each information criterion and
    maximize the KS p-value over the successful fits.
    """
    if which in ("all", None):
        tags = list(families.FAMILY_ORDER)
    elif isinstance(which, str):
        tags = [families.get_family(which).tag]
    else:
        tags = [families.get_family(f).tag for f in which]

    reports: list[gof.GofReport] = []
    failures: dict[str, str] = {}
    grid = np.linspace(0.5 / CURVE_GRID_POINTS, 1.0 - 0.5 / CURVE_GRID_POINTS,
                       CURVE_GRID_POINTS)
    plot_data: dict[str, np.ndarray] = {
        "ttt": gof.ttt_points(sample),
        "histogram": _histogram_bins(sample.values),
        "grid": grid,
    }
    for tag in tags:
        try:
            fit = fitting.fit_mle(sample, tag)
            if not fit.converged:
                failures[tag] = fit.message or "fit did not converge"
                continue
            rep = gof.evaluate_fit(sample, fit)
            reports.append(rep)
            theta = rep.estimates
            plot_data[f"pdf_{tag}"] = np.asarray(
                families.dist_pdf(tag, grid, theta))
            plot_data[f"cdf_{tag}"] = np.asarray(
                families.dist_cdf(tag, grid, theta))
            pp, qq = gof.pp_qq_points(sample, tag, theta)
            plot_data[f"pp_{tag}"] = pp
            plot_data[f"qq_{tag}"] = qq
        except (ValueError, RuntimeError) as exc:
            failures[tag] = str(exc)

    best_by: dict[str, str] = {}
    if reports:
        for crit in _CRITERIA:
            best_by[crit] = min(reports, key=lambda r: getattr(r, crit)).family_tag
        best_by["ks_pvalue"] = max(reports, key=lambda r: r.ks_pvalue).family_tag
    return AnalysisReport(label=sample.label, n=sample.n,
                          descriptives=gof.descriptive_stats(sample),
                          reports=reports, failures=failures,
                          best_by=best_by, plot_data=plot_data)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt(v, precision: int) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "--"
    return f"{v:.{precision}f}"


def render_gof_table(reports: list[gof.GofReport], precision: int = 4) -> str:
    """Fixed-width text table, one row per family, benchmark column layout."""
    header = ["Model", "omega", "eta", "alpha", "AIC", "AICC", "BIC", "HQIC",
              "KS", "p-value"]
    rows = [header]
    for r in reports:
        est = list(r.estimates) + [None] * (3 - len(r.estimates))
        rows.append([
            r.family_tag + (" *" if any(r.at_bound) else ""),
            _fmt(est[0], precision), _fmt(est[1], precision), _fmt(est[2], precision),
            _fmt(r.aic, precision), _fmt(r.aicc, precision),
            _fmt(r.bic, precision), _fmt(r.hqic, precision),
            _fmt(r.ks_stat, precision), _fmt(r.ks_pvalue, precision),
        ])
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(c.rjust(w) if j else c.ljust(w)
                               for j, (c, w) in enumerate(zip(row, widths))))
        if i == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)


def _descriptives_text(d: gof.DescriptiveStats, precision: int) -> str:
    pairs = [("n", d.n), ("min", d.minimum), ("Q1", d.q1), ("median", d.median),
             ("mean", d.mean), ("Q3", d.q3), ("max", d.maximum),
             ("variance", d.variance), ("skewness", d.skewness),
             ("kurtosis", d.kurtosis),
             ("skewness (adjusted)", d.adjusted_skewness),
             ("kurtosis (adjusted)", d.adjusted_kurtosis)]
    return "\n".join(f"  {k:>20s}: {v if isinstance(v, int) else _fmt(v, precision)}"
                     for k, v in pairs)


def render_text(report: AnalysisReport, precision: int = 4) -> str:
    parts = [f"Dataset {report.label} (n={report.n})", "",
             "Descriptive statistics:",
             _descriptives_text(report.descriptives, precision), "",
             render_gof_table(report.reports, precision)]
    if report.failures:
        parts.append("")
        for tag, msg in sorted(report.failures.items()):
            parts.append(f"  [failed] {tag}: {msg}")
    if report.best_by:
        parts.append("")
        parts.append("Best model by criterion:")
        for crit, tag in report.best_by.items():
            parts.append(f"  {crit:>9s}: {tag}")
    parts.append("")
    return "\n".join(parts)


def _gof_row_dict(r: gof.GofReport) -> dict:
    d = asdict(r)
    d["estimates"] = list(r.estimates)
    d["at_bound"] = list(r.at_bound)
    return d


def structured_document(report: AnalysisReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "analysis",
        "dataset": report.label,
        "n": report.n,
        "descriptives": asdict(report.descriptives),
        "rows": [_gof_row_dict(r) for r in report.reports],
        "failures": report.failures,
        "best_by": report.best_by,
    }


def simulation_rows(results) -> list[dict]:
    """Flatten simulation cell results into table-row dictionaries."""
    rows = []
    for r in results:
        row = {
            "omega": r.true_params.omega, "eta": r.true_params.eta, "n": r.n,
            "bias_omega": r.bias[0], "bias_eta": r.bias[1],
            "mse_omega": r.mse[0], "mse_eta": r.mse[1],
            "mre_omega": r.mre[0], "mre_eta": r.mre[1],
            "cp_omega": r.coverage[0] if r.coverage else None,
            "cp_eta": r.coverage[1] if r.coverage else None,
            "cr": r.convergence_rate,
        }
        rows.append(row)
    return rows


def render_simulation_table(results, precision: int = 4) -> str:
    cols = ["omega", "eta", "n", "bias_omega", "bias_eta", "mse_omega",
            "mse_eta", "mre_omega", "mre_eta", "cp_omega", "cp_eta", "cr"]
    rows = [cols]
    for d in simulation_rows(results):
        rows.append([_fmt(d[c], precision) if isinstance(d[c], float) else str(d[c])
                     for c in cols])
    widths = [max(len(r[i]) for r in rows) for i in range(len(cols))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def emit_report(report: AnalysisReport, format: str = "text", path=None,
                precision: int = 4) -> str | None:
    """Write (or return) the report in the requested format.

    ``text`` and ``structured`` write a single file when ``path`` is given,
    otherwise return the rendered string.  ``plot-data`` writes one CSV per
    point set into the directory ``path`` (header row, numeric columns) and
    returns None.
    """
    if format == "text":
        out = render_text(report, precision)
    elif format == "structured":
        out = json.dumps(structured_document(report), indent=2, sort_keys=True)
    elif format == "plot-data":
        if path is None:
            raise ValueError("plot-data output requires a directory path")
        outdir = Path(path)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, arr in report.plot_data.items():
            arr = np.atleast_2d(np.asarray(arr, dtype=float))
            if arr.shape[0] == 1:
                arr = arr.T
            headers = {
                "ttt": ["i_over_n", "scaled_ttt"],
                "histogram": ["bin_left", "bin_right", "density"],
                "grid": ["x"],
            }
            if name.startswith("pp_"):
                hdr = ["fitted_cdf", "plotting_position"]
            elif name.startswith("qq_"):
                hdr = ["model_quantile", "observed"]
            elif name.startswith(("pdf_", "cdf_")):
                hdr = [name]
            else:
                hdr = headers.get(name, [f"col{i}" for i in range(arr.shape[1])])
            with open(outdir / f"{report.label}_{name}.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(hdr)
                writer.writerows(arr.tolist())
        return None
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is None:
        return out
    Path(path).write_text(out + "\n", encoding="utf-8")
    return None


def read_structured_report(path) -> dict:
    """Parse a structured report back into its document dictionary."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    return doc
