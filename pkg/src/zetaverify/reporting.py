"""Zero cache, machine-readable reports, and figure rendering.

All file writes are atomic (temp file in the target directory + rename),
so a crashed run never leaves a half-written cache or report behind.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .decide import (  # noqa: E402
    STATUS_OK,
    VERDICT_DISCREPANCY,
    VERDICT_INCOMPLETE,
    VERDICT_VERIFIED,
    STATUS_FAILURE,
    VerificationRun,
)
from .zeros import CriticalZero  # noqa: E402

CACHE_HEADER = ["index", "ordinate", "width", "multiplicity"]


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_zero_cache(path: str, zeros: list[CriticalZero]) -> None:
    """CSV cache, one zero per row; 17 significant digits keeps doubles
    lossless and the file diff-friendly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CACHE_HEADER)
    for z in zeros:
        writer.writerow(
            [
                z.index,
                format(z.ordinate, ".17g"),
                format(z.width, ".17g"),
                "" if z.multiplicity is None else z.multiplicity,
            ]
        )
    atomic_write_text(path, buf.getvalue())


def read_zero_cache(path: str) -> list[CriticalZero]:
    zeros = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CACHE_HEADER:
            raise ValueError(f"{path}: unexpected cache header {header!r}")
        for row in reader:
            zeros.append(
                CriticalZero(
                    index=int(row[0]),
                    ordinate=float(row[1]),
                    width=float(row[2]),
                    multiplicity=int(row[3]) if row[3] else None,
                )
            )
    return zeros


def _record_row(rec, zeros):
    gamma = zeros[rec.n - 1].ordinate if rec.n <= len(zeros) else None
    prev = zeros[rec.n - 2].ordinate if rec.n >= 2 else 1.0
    nxt = zeros[rec.n].ordinate if rec.n < len(zeros) else None
    return {
        "n": rec.n,
        "gamma": gamma,
        "delta_lo": None if gamma is None else 0.5 * (gamma + prev),
        "delta_hi": None if gamma is None or nxt is None else 0.5 * (gamma + nxt),
        "l": rec.l,
        "M": rec.M,
        "g": rec.g,
        "status": rec.status,
        "diagnostics": list(rec.diagnostics),
    }


def build_report(
    run: VerificationRun,
    zeros: list[CriticalZero],
    config_snapshot: dict,
    timing_seconds: float,
) -> dict:
    return {
        "config": config_snapshot,
        "records": [_record_row(r, zeros) for r in run.records],
        "verdict": run.verdict,
        "timing_seconds": timing_seconds,
    }


def verdict_from_records(records: list[dict]) -> str:
    """Recompute the verdict from serialized records (consistency check)."""
    if any(r["status"] == STATUS_FAILURE for r in records):
        return VERDICT_INCOMPLETE
    if all(r["status"] == STATUS_OK for r in records):
        return VERDICT_VERIFIED
    return VERDICT_DISCREPANCY


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def report_to_csv(report: dict) -> str:
    """Flattened per-record rows; the config snapshot and verdict travel in
    # comment lines so the document stays a single file."""
    buf = io.StringIO()
    for key, value in report["config"].items():
        buf.write(f"# config {key}={value}\n")
    buf.write(f"# verdict {report['verdict']}\n")
    buf.write(f"# timing_seconds {report['timing_seconds']}\n")
    cols = ["n", "gamma", "delta_lo", "delta_hi", "l", "M", "g", "status",
            "diagnostics"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in report["records"]:
        row = [rec[c] for c in cols[:-1]]
        row.append("; ".join(rec["diagnostics"]))
        writer.writerow(row)
    return buf.getvalue()


def render_verification_figure(path: str, report: dict) -> None:
    """Two panels: zero ordinates with rectangle levels, and M/l/g per n."""
    records = report["records"]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ns = [r["n"] for r in records]
    gammas = [r["gamma"] for r in records]
    ax1.plot(ns, gammas, "k.", label="zero ordinate")
    lo = [r["delta_lo"] for r in records]
    hi = [r["delta_hi"] for r in records]
    ax1.fill_between(ns, lo, hi, alpha=0.2, label="rectangle span")
    ax1.set_ylabel("height t")
    ax1.legend(loc="upper left", fontsize=8)
    ax2.step(ns, [r["M"] if r["M"] is not None else -1 for r in records],
             where="mid", label="M(n)")
    ax2.plot(ns, [r["l"] if r["l"] is not None else -1 for r in records],
             "x", label="l_n")
    ax2.plot(ns, [r["g"] for r in records], ".", label="g(n)")
    ax2.set_xlabel("rectangle index n")
    ax2.set_ylabel("count")
    ax2.legend(loc="upper left", fontsize=8)
    fig.suptitle(f"verdict: {report['verdict']}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_series_figure(path: str, what: str, ts, values) -> None:
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(ts, values, lw=0.8)
    ax.axhline(0.0, color="0.6", lw=0.5)
    ax.set_xlabel("t")
    ax.set_ylabel(what)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
