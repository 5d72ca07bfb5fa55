"""Simulator determinism, channels, batching, unknown-attack injection."""

import pytest

from twinauth.protocol.errors import ConfigError
from twinauth.sim.runner import run_scenario
from twinauth.sim.scenario import ScenarioScript, inter_scenario, intra_happy_path


def test_same_script_same_seed_identical_transcripts():
    a = run_scenario(intra_happy_path(2, seed=5))
    b = run_scenario(intra_happy_path(2, seed=5))
    assert a.transcript_hash == b.transcript_hash
    assert a.outcomes == b.outcomes
    assert a.ledger.as_dict() == b.ledger.as_dict()


def test_different_seed_different_transcript():
    a = run_scenario(intra_happy_path(1, seed=5))
    b = run_scenario(intra_happy_path(1, seed=6))
    assert a.transcript_hash != b.transcript_hash


def test_happy_path_outcomes_and_steps():
    res = run_scenario(intra_happy_path(1, seed=1))
    assert res.outcomes == {"md-0": "session-established"}
    # request (wired), response (wired), notification (544), ack (288)
    assert res.steps == [0, 0, 544, 288]
    assert res.com_prefix == [0, 0, 0, 544]
    assert res.com_total == 832


def test_scripted_same_tick_requests_form_one_batch():
    res = run_scenario(intra_happy_path(4, seed=2))
    assert res.ledger.op_total("gnb", "t_m", phase="intra_handover") == 5 * 4 + 3


def test_wireless_frames_all_observed_by_adversary():
    res = run_scenario(intra_happy_path(2, seed=3))
    seen = [
        (record["channel"], record["kind"])
        for record in res.transcript
        if record["type"] == "send" and record["channel"] in ("md-gnb", "md-dt")
    ]
    logged = [(channel, getattr(m, "KIND", "")) for _, channel, _, _, m in res.adversary.eavesdrop_log]
    assert seen == logged
    assert len(logged) == 2 * 3  # token, notification, ack per device


def test_inter_scenario_established():
    res = run_scenario(inter_scenario(seed=4))
    assert res.outcomes.get("md-0") == "session-established"
    kinds = [r["kind"] for r in res.transcript if r["type"] == "send"]
    assert "context-transfer" in kinds
    assert "inter-delegation-request" in kinds


def test_unknown_attack_injection_prefixes():
    full = run_scenario(intra_happy_path(1, seed=8))
    setup_bits = full.ledger.wireless_bits - full.com_total
    for step in range(1, 5):
        script = intra_happy_path(1, seed=8)
        script.inject_step = step
        script.expect = {}
        res = run_scenario(script)
        assert res.aborted_at_step == step
        assert res.outcomes.get("run") == f"unknown-attack-abort@{step}"
        assert res.ledger.wireless_bits - setup_bits == full.com_prefix[step - 1]
        # op-count prefix: aborted run never exceeds the full run's tallies
        for key, count in res.ledger.ops.items():
            assert count <= full.ledger.ops[key]


def test_injection_at_step_one_keeps_request_cost_only():
    script = intra_happy_path(1, seed=9)
    script.inject_step = 1
    script.expect = {}
    res = run_scenario(script)
    assert res.ledger.op_total("dt", "t_m", phase="intra_handover") == 2
    assert res.ledger.op_total("gnb", "t_m", phase="intra_handover") == 0
    assert res.ledger.op_total("md", "t_m", phase="intra_handover") == 0


def test_injection_at_last_step_drops_final_verification():
    full = run_scenario(intra_happy_path(1, seed=10))
    script = intra_happy_path(1, seed=10)
    script.inject_step = 4
    script.expect = {}
    res = run_scenario(script)
    assert res.ledger.op_total("md", "t_h", phase="intra_handover") == 7
    full_gnb_h = full.ledger.op_total("gnb", "t_h", phase="intra_handover")
    assert res.ledger.op_total("gnb", "t_h", phase="intra_handover") == full_gnb_h - 1


def test_no_injection_full_run():
    script = intra_happy_path(1, seed=11)
    script.inject_step = None
    res = run_scenario(script)
    assert res.aborted_at_step is None
    assert res.outcomes["md-0"] == "session-established"


def test_malformed_roster_rejected():
    script = intra_happy_path(1, seed=1)
    script.roster = {"amfs": 0, "gnbs_per_amf": 1, "mds": 1}
    with pytest.raises(ConfigError):
        run_scenario(script)


def test_script_json_round_trip():
    script = intra_happy_path(3, seed=77)
    script.tap_wired = True
    text = script.to_json()
    back = ScenarioScript.from_json(text)
    assert back.seed == script.seed
    assert back.events == script.events
    assert back.tap_wired is True
    assert back.expect == script.expect


def test_script_validation_errors():
    with pytest.raises(ConfigError):
        ScenarioScript.from_json("not json {{{")
    with pytest.raises(ConfigError):
        ScenarioScript.from_json('{"seed": 1, "events": [{"action": "warp", "at": 0}]}')
    with pytest.raises(ConfigError):
        ScenarioScript.from_json(
            '{"seed": 1, "events": [{"action": "intra_handover", "at": 5, "md": 9, "gnb": 0}]}'
        )


def test_sequential_handovers_unlinkable_tids():
    script = ScenarioScript(
        seed=14,
        roster={"amfs": 1, "gnbs_per_amf": 2, "mds": 1},
        events=[
            {"at": 10, "action": "intra_handover", "md": 0, "gnb": 1},
            {"at": 100, "action": "intra_handover", "md": 0, "gnb": 0},
        ],
        expect={"md-0": "session-established"},
    )
    res = run_scenario(script)
    assert res.outcomes["md-0"] == "session-established"
    md = res.network.mds[0]
    tids = list(md.sessions)
    assert len(tids) == 2 and tids[0] != tids[1]
    # each cell confirmed its own session
    assert res.network.gnbs[1].sessions[tids[0]].established
    assert res.network.gnbs[0].sessions[tids[1]].established


def test_latency_ordering_wired_before_wireless():
    res = run_scenario(intra_happy_path(1, seed=12))
    sends = [r for r in res.transcript if r["type"] == "send"]
    by_kind = {r["kind"]: r["t"] for r in sends}
    # request -> +1ms -> response -> +1ms -> notification -> +5ms -> ack
    assert by_kind["handover-response"] == by_kind["handover-request"] + 1
    assert by_kind["handover-notification"] == by_kind["handover-response"] + 1
    assert by_kind["handover-ack"] == by_kind["handover-notification"] + 5
