"""CSV emission and the simulation-vs-model agreement report."""

from __future__ import annotations

import csv
from pathlib import Path

from .constants import CostConstants, DEFAULT_COSTS
from .ledger import CostLedger
from .schemes import SCHEME_NAMES, get_scheme
from .unknown import sweep

DEFAULT_PFAIL = tuple(round(0.1 * i, 1) for i in range(1, 10))


def write_tables(outdir, n_values=range(1, 21), p_values=DEFAULT_PFAIL,
                 costs: CostConstants = DEFAULT_COSTS, sweep_n: int = 20) -> list:
    """Emit one CSV per comparison table; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []

    def emit(name, header, rows):
        path = outdir / name
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        paths.append(path)

    emit(
        "signaling.csv",
        ("scheme", "n", "value"),
        [
            (s, n, _fmt(get_scheme(s).signaling_units(n)))
            for s in SCHEME_NAMES
            for n in n_values
        ],
    )
    for scenario, fname in (("normal", "computation_normal.csv"),
                            ("optimized", "computation_optimized.csv")):
        emit(
            fname,
            ("scheme", "n", "value"),
            [
                (s, n, _fmt(get_scheme(s).computation_ms(n, scenario, costs)))
                for s in SCHEME_NAMES
                for n in n_values
            ],
        )
    emit(
        "communication.csv",
        ("scheme", "n", "value"),
        [
            (s, n, _fmt(get_scheme(s).communication_bits(n)[2]))
            for s in SCHEME_NAMES
            for n in n_values
        ],
    )
    emit(
        "unknown_attack.csv",
        ("scheme", "p_fail", "value"),
        [(s, p, _fmt(v)) for s, p, v in sweep(p_values, n=sweep_n)],
    )
    return paths


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def ledger_vs_analytic(ledger: CostLedger, n: int, steps: list | None = None) -> dict:
    """Compare a simulated run's ledger against this scheme's analytic row:
    per-role op tallies in the handover phase, uplink bits, wireless control
    message count.  Returns a report dict with an overall `ok`."""
    model = get_scheme("Ours")
    checks = {}
    for role, ops in (("md", model.md_ops["normal"]), ("gnb", model.bs_ops["normal"])):
        for kind in ("t_p", "t_e", "t_m", "t_r", "t_h"):
            expected = ops.count(kind, n)
            actual = ledger.op_total(role, kind, phase="intra_handover")
            checks[f"{role}.{kind}"] = {"expected": expected, "actual": actual,
                                        "ok": actual == expected}
    up = ledger.link_bits("md-gnb", "uplink")
    checks["uplink_bits"] = {
        "expected": model.communication_bits(n)[0],
        "actual": up,
        "ok": up == model.communication_bits(n)[0],
    }
    n_msgs = ledger.link_messages("md-gnb")
    checks["wireless_control_messages"] = {
        "expected": model.signaling_units(n),
        "actual": n_msgs,
        "ok": n_msgs == model.signaling_units(n),
    }
    if steps is not None:
        ok_prefix = all(a <= b for a, b in zip(steps, steps[1:]))
        checks["com_prefix_monotone"] = {"expected": True, "actual": ok_prefix,
                                         "ok": ok_prefix}
    return {"n": n, "ok": all(c["ok"] for c in checks.values()), "checks": checks}
