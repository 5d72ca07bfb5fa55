"""CLI behavior: exit codes, outputs, determinism."""

import json

from click.testing import CliRunner

from twinauth.cli import main
from twinauth.sim.adversary import AdversaryAction
from twinauth.sim.scenario import intra_happy_path


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_happy_path_exit_zero(tmp_path):
    out = tmp_path / "run"
    result = invoke("handover", "--n", "1", "--seed", "3", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert "session-established" in result.output
    summary = json.loads((out / "outcomes.json").read_text())
    assert summary["outcomes"] == {"md-0": "session-established"}
    assert (out / "transcript.jsonl").read_text().count("\n") > 5
    assert json.loads((out / "ledger.json").read_text())["wireless_bits"] > 0


def test_scenario_file_with_expected_rejection(tmp_path):
    script = intra_happy_path(1, seed=4)
    script.tap_wired = True
    script.adversary = [
        AdversaryAction(action="modify", match_kind="handover-request",
                        occurrence=0, field="lam")
    ]
    script.expect = {"md-0": "rejected:signature@gnb-1"}
    path = tmp_path / "attack.json"
    path.write_text(script.to_json())
    result = invoke("handover", "--scenario", str(path), "--out", str(tmp_path / "o"))
    assert result.exit_code == 0, result.output


def test_unexpected_rejection_exits_three(tmp_path):
    script = intra_happy_path(1, seed=4)
    script.tap_wired = True
    script.adversary = [
        AdversaryAction(action="modify", match_kind="handover-request",
                        occurrence=0, field="lam")
    ]
    script.expect = {"md-0": "session-established"}
    path = tmp_path / "attack.json"
    path.write_text(script.to_json())
    result = invoke("handover", "--scenario", str(path), "--out", str(tmp_path / "o"))
    assert result.exit_code == 3


def test_malformed_scenario_exits_two(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    result = invoke("handover", "--scenario", str(path), "--out", str(tmp_path / "o"))
    assert result.exit_code == 2
    missing = invoke("handover", "--scenario", str(tmp_path / "absent.json"))
    assert missing.exit_code == 2


def test_inter_scenario_flag(tmp_path):
    result = invoke("handover", "--inter", "--seed", "2", "--out", str(tmp_path / "o"))
    assert result.exit_code == 0, result.output


def test_determinism_byte_identical_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert invoke("handover", "--n", "2", "--seed", "9", "--out", str(a)).exit_code == 0
    assert invoke("handover", "--n", "2", "--seed", "9", "--out", str(b)).exit_code == 0
    for name in ("transcript.jsonl", "ledger.json", "outcomes.json"):
        left = (a / name).read_bytes()
        right = (b / name).read_bytes()
        if name == "outcomes.json":
            left = _strip_timing(left)
            right = _strip_timing(right)
        assert left == right, name


def _strip_timing(raw: bytes) -> bytes:
    data = json.loads(raw)
    data.pop("event_loop_seconds", None)
    return json.dumps(data, sort_keys=True).encode()


def test_tables_outputs(tmp_path):
    out = tmp_path / "t"
    result = invoke("tables", "--out", str(out), "--n-max", "10")
    assert result.exit_code == 0, result.output
    comm = (out / "communication.csv").read_text().splitlines()
    ours_10 = [line for line in comm if line.startswith("Ours,10,")]
    assert ours_10 == ["Ours,10,2880.0000"]
    opt = (out / "computation_optimized.csv").read_text().splitlines()
    ours_opt_10 = [line for line in opt if line.startswith("Ours,10,")]
    assert ours_opt_10 == ["Ours,10,0.0210"]
    again = tmp_path / "t2"
    invoke("tables", "--out", str(again), "--n-max", "10")
    for name in ("communication.csv", "signaling.csv", "unknown_attack.csv"):
        assert (out / name).read_bytes() == (again / name).read_bytes()


def test_tables_bad_pfail_exits_two(tmp_path):
    result = invoke("tables", "--out", str(tmp_path / "t"), "--sweep-pfail", "0.5,1.5")
    assert result.exit_code == 2


def test_verify_subset_and_report(tmp_path):
    out = tmp_path / "v"
    result = invoke("verify", "--only", "c7,c8", "--out", str(out))
    assert result.exit_code == 0, result.output
    assert result.output.count("PASS") == 2
    report = json.loads((out / "acceptance.json").read_text())
    assert [r["criterion"] for r in report] == ["criterion-7", "criterion-8"]
    assert all(r["passed"] for r in report)


def test_verify_fault_injection_flips_target(tmp_path):
    result = invoke("verify", "--only", "c8", "--fault", "c8")
    assert result.exit_code == 4
    assert "FAIL criterion-8" in result.output
    untouched = invoke("verify", "--only", "c8", "--fault", "c10")
    assert untouched.exit_code == 0


def test_verify_unknown_fault_exits_two():
    assert invoke("verify", "--fault", "c99").exit_code == 2


def test_verify_empty_selection_noop():
    result = invoke("verify", "--only", "czzz")
    assert result.exit_code == 0
    assert "no criteria selected" in result.output
