"""Command-line entry point: run scenarios, emit overhead tables, verify.

Exit codes: 0 success or script-declared expected outcome, 2 configuration
error, 3 unexpected protocol failure, 4 acceptance failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import acceptance
from .overhead.report import DEFAULT_PFAIL, write_tables
from .protocol.errors import ConfigError
from .sim.runner import run_scenario
from .sim.scenario import ScenarioScript, inter_scenario, intra_happy_path

EXIT_CONFIG = 2
EXIT_PROTOCOL = 3
EXIT_ACCEPTANCE = 4


@click.group()
def main():
    """Digital-twin-assisted handover authentication simulator."""


@main.command("handover")
@click.option("--scenario", "scenario_path", type=click.Path(), default=None,
              help="Scenario script (JSON); defaults to the built-in intra run.")
@click.option("--inter", "use_inter", is_flag=True,
              help="Use the built-in inter-domain scenario instead.")
@click.option("--seed", type=int, default=None, help="Override the script seed.")
@click.option("--n", "n_devices", type=int, default=None,
              help="Device count for the built-in scenarios.")
@click.option("--delta-t", "delta_t", type=int, default=None,
              help="Freshness window in simulated ms.")
@click.option("--out", "outdir", type=click.Path(), default="out",
              help="Output directory for transcript/ledger/outcome files.")
def cmd_handover(scenario_path, use_inter, seed, n_devices, delta_t, outdir):
    """Run a handover scenario and write its transcript and cost ledger."""
    try:
        script = _load_script(scenario_path, use_inter, seed, n_devices, delta_t)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    result = run_scenario(script)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    with (out / "transcript.jsonl").open("w") as fh:
        for record in result.transcript:
            fh.write(json.dumps(record, sort_keys=True, default=repr) + "\n")
    (out / "ledger.json").write_text(json.dumps(result.ledger.as_dict(), indent=2))
    summary = {
        "outcomes": result.outcomes,
        "rejections": result.rejections,
        "transcript_hash": result.transcript_hash,
        "steps": result.steps,
        "aborted_at_step": result.aborted_at_step,
        "event_loop_seconds": result.event_loop_seconds,
    }
    (out / "outcomes.json").write_text(json.dumps(summary, indent=2))
    click.echo(f"outcomes: {result.outcomes}")
    click.echo(f"transcript: {result.transcript_hash}")
    if script.expect:
        unmet = {
            label: (want, result.outcomes.get(label))
            for label, want in script.expect.items()
            if result.outcomes.get(label) != want
        }
        if unmet:
            click.echo(f"unexpected outcomes: {unmet}", err=True)
            sys.exit(EXIT_PROTOCOL)
    elif script.inject_step is None and (result.rejections or
                                         any(v.startswith("fallback") for v in result.outcomes.values())):
        click.echo("unexpected protocol rejection", err=True)
        sys.exit(EXIT_PROTOCOL)


def _load_script(path, use_inter, seed, n_devices, delta_t) -> ScenarioScript:
    if path is not None:
        if n_devices is not None:
            raise ConfigError("--n applies to the built-in scenarios only")
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read scenario: {exc}") from None
        script = ScenarioScript.from_json(text)
    elif use_inter:
        script = inter_scenario(seed=seed if seed is not None else 1)
    else:
        script = intra_happy_path(n=n_devices or 1, seed=seed if seed is not None else 1)
    if seed is not None:
        script.seed = seed
    if delta_t is not None:
        script.delta_t_ms = delta_t
    script.validate()
    return script


@main.command("tables")
@click.option("--out", "outdir", type=click.Path(), default="tables",
              help="Directory for the CSV files.")
@click.option("--n-max", type=int, default=20, show_default=True,
              help="Evaluate models for n = 1..n-max.")
@click.option("--sweep-pfail", "pfail", default=",".join(str(p) for p in DEFAULT_PFAIL),
              show_default=True, help="Comma-separated attack probabilities.")
def cmd_tables(outdir, n_max, pfail):
    """Emit signaling/computation/communication tables and the attack sweep."""
    try:
        p_values = tuple(float(p) for p in pfail.split(",") if p)
        if n_max < 1 or any(not 0 <= p < 1 for p in p_values):
            raise ValueError("n-max >= 1 and 0 <= p_fail < 1 required")
    except ValueError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    paths = write_tables(outdir, n_values=range(1, n_max + 1), p_values=p_values)
    for path in paths:
        click.echo(str(path))


@main.command("verify")
@click.option("--out", "outdir", type=click.Path(), default=None,
              help="Write acceptance.json here as a machine-readable report.")
@click.option("--seed", type=int, default=acceptance.DEFAULT_SEED, show_default=True)
@click.option("--fault", default=None,
              help="Seeded fault injection: perturb one criterion (c1..c10).")
@click.option("--only", default=None,
              help="Comma-separated criteria subset, e.g. 'c5,c7'.")
def cmd_verify(outdir, seed, fault, only):
    """Run the acceptance suite; one pass/fail line per criterion."""
    if fault is not None and fault not in {f"c{i}" for i in range(1, 11)}:
        click.echo(f"config error: unknown fault target {fault}", err=True)
        sys.exit(EXIT_CONFIG)
    selected = None
    if only:
        selected = {item.strip() for item in only.split(",") if item.strip()}
    results = acceptance.run_all(seed=seed, fault=fault, only=selected)
    for result in results:
        click.echo(result.line())
    if outdir is not None:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        report = [
            {"criterion": r.criterion, "passed": r.passed, "detail": r.detail,
             "seconds": round(r.seconds, 3)}
            for r in results
        ]
        (out / "acceptance.json").write_text(json.dumps(report, indent=2))
    if not results:
        click.echo("no criteria selected")
        return
    if not all(r.passed for r in results):
        sys.exit(EXIT_ACCEPTANCE)


if __name__ == "__main__":
    main()
