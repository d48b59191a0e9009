"""Serialization of solve runs and policy comparison tables.

Exact rationals travel as "num/den" strings (authoritative) with a 12-digit
decimal alongside for humans. CSV output is bit-stable: UTF-8, LF endings,
"." decimal separator, fixed header.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .instance import Instance, KeepVector
from .metrics import FairnessReport, rational_decimal, rational_field, report_to_dict
from .solvers import SolverDiagnostics

CSV_HEADER = (
    "policy,kept_count,rejected_papers,zeta_ind,zeta_ind_decimal,"
    "zeta_group,zeta_group_decimal,ideal,runtime_ms,node_count,lp_calls"
)


@dataclass(frozen=True)
class RunRecord:
    """One policy run on one instance, ready to serialize."""

    policy: str
    keep: KeepVector | None  # None: the requested outcome does not exist
    report: FairnessReport | None
    runtime_ms: float
    seed: int | None = None
    objective: Fraction | None = None
    diagnostics: SolverDiagnostics | None = None
    trace: tuple | None = None
    note: str | None = None


def _diagnostics_to_dict(diag: SolverDiagnostics) -> dict:
    return {
        "node_count": diag.node_count,
        "lp_calls": diag.lp_calls,
        "wall_time_ms": diag.wall_time_ms,
        "lp_objective": diag.lp_objective,
        "lp_integral": diag.lp_integral,
        "best_bound": diag.best_bound,
    }


def run_record_to_dict(record: RunRecord, inst: Instance) -> dict:
    out = {
        "policy": record.policy,
        "instance": {"authors": inst.n, "papers": inst.m, "x": inst.x},
        "seed": record.seed,
        "feasible_outcome": record.keep is not None,
    }
    if record.keep is not None:
        out["keep"] = list(record.keep.values)
        out["kept_papers"] = [inst.papers[j].id for j in record.keep.kept_indices()]
        out["rejected_papers"] = [inst.papers[j].id for j in record.keep.rejected_indices()]
        out["report"] = report_to_dict(record.report)
    out["objective"] = rational_field(record.objective) if record.objective is not None else None
    out["diagnostics"] = _diagnostics_to_dict(record.diagnostics) if record.diagnostics else None
    out["runtime_ms"] = record.runtime_ms
    if record.trace is not None:
        out["trace"] = [list(t) for t in record.trace]
    if record.note is not None:
        out["note"] = record.note
    return out


def run_record_to_json(record: RunRecord, inst: Instance) -> str:
    return json.dumps(run_record_to_dict(record, inst), indent=2)


@dataclass(frozen=True)
class ComparisonTable:
    """Per-policy outcomes on one shared instance."""

    instance_summary: dict
    rows: tuple[dict, ...]


def comparison_table(inst: Instance, records: list[RunRecord]) -> ComparisonTable:
    rows = []
    for rec in records:
        if rec.keep is None:
            rows.append(
                {
                    "policy": rec.policy,
                    "kept_count": "",
                    "rejected_papers": "",
                    "zeta_ind": "",
                    "zeta_ind_decimal": "",
                    "zeta_group": "",
                    "zeta_group_decimal": "",
                    "ideal": "INFEASIBLE",
                    "runtime_ms": f"{rec.runtime_ms:.3f}",
                    "node_count": _diag_cell(rec, "node_count"),
                    "lp_calls": _diag_cell(rec, "lp_calls"),
                }
            )
            continue
        rep = rec.report
        rows.append(
            {
                "policy": rec.policy,
                "kept_count": str(len(rec.keep.kept_indices())),
                "rejected_papers": ";".join(
                    inst.papers[j].id for j in rec.keep.rejected_indices()
                ),
                "zeta_ind": f"{rep.zeta_ind.numerator}/{rep.zeta_ind.denominator}",
                "zeta_ind_decimal": rational_decimal(rep.zeta_ind),
                "zeta_group": f"{rep.zeta_group.numerator}/{rep.zeta_group.denominator}",
                "zeta_group_decimal": rational_decimal(rep.zeta_group),
                "ideal": "yes" if rep.ideal else "no",
                "runtime_ms": f"{rec.runtime_ms:.3f}",
                "node_count": _diag_cell(rec, "node_count"),
                "lp_calls": _diag_cell(rec, "lp_calls"),
            }
        )
    return ComparisonTable(
        instance_summary={"authors": inst.n, "papers": inst.m, "x": inst.x},
        rows=tuple(rows),
    )


def _diag_cell(rec: RunRecord, field: str) -> str:
    return str(getattr(rec.diagnostics, field)) if rec.diagnostics else ""


def comparison_to_csv(table: ComparisonTable) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    columns = CSV_HEADER.split(",")
    for row in table.rows:
        buf.write(",".join(row[col] for col in columns) + "\n")
    return buf.getvalue()


def comparison_to_dict(table: ComparisonTable) -> dict:
    return {"instance": table.instance_summary, "rows": [dict(r) for r in table.rows]}


def comparison_to_text(table: ComparisonTable) -> str:
    """Fixed-width rendering for terminals."""
    cols = ["policy", "kept_count", "rejected_papers", "zeta_ind", "zeta_group", "ideal"]
    rows = [[row[c] for c in cols] for row in table.rows]
    widths = [max(len(c), *(len(r[k]) for r in rows)) if rows else len(c)
              for k, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    return "\n".join(lines)
