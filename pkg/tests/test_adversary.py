"""Dolev-Yao adversary actions and the secret-leakage queries."""

import random

import pytest

from twinauth.crypto import groups
from twinauth.protocol import messages as msgs
from twinauth.sim.adversary import (
    AdversaryAction,
    DolevYaoAdversary,
    MalformedFrame,
    ThreatModelViolation,
    mutate_byte,
    mutate_field,
)
from twinauth.sim.runner import run_scenario
from twinauth.sim.scenario import intra_happy_path


def tapped(seed, actions, n=1):
    script = intra_happy_path(n, seed=seed)
    script.tap_wired = True
    script.adversary = actions
    script.expect = {}
    return run_scenario(script)


def test_every_request_field_mutation_rejected():
    for name, _ in msgs.HandoverRequest.FIELDS:
        res = tapped(101, [AdversaryAction(action="modify", match_kind="handover-request",
                                           occurrence=0, field=name)])
        assert res.outcomes.get("md-0", "").startswith("rejected:"), name
        assert res.rejections, name


def test_every_intra_path_field_mutation_rejected_somewhere():
    """Exhaustive single-field corruption across all five message kinds of
    the intra-domain happy path: the first verifier must reject (or the
    device must fall back), never complete the session."""
    kinds = (msgs.AuthorizedToken, msgs.DelegationRequest, msgs.DelegationResponse,
             msgs.HandoverRequest, msgs.HandoverResponse,
             msgs.HandoverNotification, msgs.HandoverAck)
    for cls in kinds:
        for name, _ in cls.FIELDS:
            res = tapped(120, [AdversaryAction(action="modify", match_kind=cls.KIND,
                                               occurrence=0, field=name)])
            outcome = res.outcomes.get("md-0", "")
            assert outcome != "session-established", f"{cls.KIND}.{name}"
            assert res.rejections or outcome.startswith("fallback:"), f"{cls.KIND}.{name}"


def test_request_replay_after_window_is_freshness_reject():
    res = tapped(121, [AdversaryAction(action="replay", match_kind="handover-request",
                                       occurrence=0, delay_ms=6000)])
    assert res.outcomes.get("md-0") == "session-established"
    hits = [r for r in res.rejections if r["kind"] == "handover-request"]
    assert hits and hits[0]["reason"] == "freshness"


def test_notification_field_mutations_cause_fallback():
    for name in ("c_g2", "h6", "id_g2"):
        res = tapped(102, [AdversaryAction(action="modify", match_kind="handover-notification",
                                           occurrence=0, field=name)])
        outcome = res.outcomes.get("md-0", "")
        assert outcome.startswith("fallback:") or outcome.startswith("rejected:"), name


def test_ack_mutation_rejected_at_gnb():
    for name in ("tid", "mac4"):
        res = tapped(103, [AdversaryAction(action="modify", match_kind="handover-ack",
                                           occurrence=0, field=name)])
        assert res.rejections, name
        assert res.rejections[0]["at"].startswith("gnb"), name


def test_byte_level_mutation_yields_malformed_or_reject():
    res = tapped(104, [AdversaryAction(action="modify", match_kind="handover-request",
                                       occurrence=0, byte_index=40)])
    assert res.rejections
    assert res.outcomes.get("md-0", "").startswith("rejected:")


def test_drop_stalls_handover():
    res = tapped(105, [AdversaryAction(action="drop", match_kind="handover-request",
                                       occurrence=0)])
    assert "md-0" not in res.outcomes
    assert any(r["type"] == "drop" for r in res.transcript)


def test_replay_within_window_is_detected_or_idempotent():
    res = tapped(106, [AdversaryAction(action="replay", match_kind="handover-ack",
                                       occurrence=0, delay_ms=1)])
    assert res.outcomes.get("md-0") == "session-established"


def test_replay_after_window_rejected_fresh():
    res = tapped(107, [AdversaryAction(action="replay", match_kind="handover-ack",
                                       occurrence=0, delay_ms=6000)])
    assert res.outcomes.get("md-0") == "session-established"
    hits = [r for r in res.rejections if r["kind"] == "handover-ack"]
    assert hits and hits[0]["reason"] == "freshness"


def test_inject_crafted_frame():
    fake = msgs.HandoverAck(tid=bytes(16), mac4=bytes(16), ts4=50)
    res = tapped(108, [AdversaryAction(action="inject", at_ms=50, frame=fake,
                                       channel="md-gnb", src="md-0", dst="gnb-1")])
    hits = [r for r in res.rejections if r["kind"] == "handover-ack"]
    assert hits and hits[0]["reason"] == "unknown-tid"


def test_inject_fake_notification_before_real_one():
    fake = msgs.HandoverNotification(
        c_g2=groups.PointG1.generator(), id_g2=bytes(16), h6=bytes(16), ts3=5
    )
    res = tapped(113, [AdversaryAction(action="inject", at_ms=5, frame=fake,
                                       channel="md-dt", src="dt-0", dst="md-0")])
    # the injected frame falls back at the device; the honest flow still wins
    assert res.outcomes.get("md-0") == "session-established"
    hits = [r for r in res.rejections if r["kind"] == "handover-notification"]
    assert hits
    assert None not in res.outcomes


def test_mutate_field_preserves_wire_shape():
    rng = random.Random(0)
    req = msgs.HandoverAck(tid=bytes(16), mac4=bytes(16), ts4=7)
    for name, _ in msgs.HandoverAck.FIELDS:
        mutated = mutate_field(req, name, rng)
        assert len(mutated.encode()) == len(req.encode())
        assert mutated != req


def test_mutate_byte_can_produce_malformed():
    req = msgs.HandoverNotification(
        c_g2=groups.PointG1.generator(), id_g2=bytes(16), h6=bytes(16), ts3=1
    )
    # flipping inside the compressed point usually breaks decoding
    outcomes = {type(mutate_byte(req, i)) for i in range(1, 10)}
    assert MalformedFrame in outcomes or msgs.HandoverNotification in outcomes


def test_corrupt_both_classes_refused():
    adv = DolevYaoAdversary(rng=random.Random(1))
    adv.corrupt("md-0", "ephemeral", {"a_i": 123})
    with pytest.raises(ThreatModelViolation):
        adv.corrupt("md-0", "long-term", {"sk": 456})
    # distinct entities are fine
    adv.corrupt("gnb-1", "long-term", {"sk": 789})


def test_corrupt_unknown_class_rejected():
    adv = DolevYaoAdversary(rng=random.Random(1))
    with pytest.raises(ValueError):
        adv.corrupt("md-0", "session", {})


def test_ephemerals_alone_insufficient_for_session_key():
    res = run_scenario(intra_happy_path(1, seed=109))
    md = res.network.mds[0]
    gnb = res.network.gnbs[1]
    (tid, keys), = md.sessions.items()
    note = next(m for _, _, _, _, m in res.adversary.eavesdrop_log
                if getattr(m, "KIND", "") == "handover-notification")
    leaked_md = res.corrupt("md-0", "ephemeral")
    leaked_gnb = res.corrupt("gnb-1", "ephemeral")
    assert leaked_md["a_i"] == md.a_i
    assert gnb.sessions[tid].c_ephemeral in leaked_gnb.values()
    candidates = res.adversary.session_key_candidates(
        res.network.dts[0].a_i, note.c_g2, md.guti, gnb.ident
    )
    assert keys.k_gnb not in candidates


def test_long_terms_alone_insufficient_for_past_session_key():
    res = run_scenario(intra_happy_path(1, seed=110))
    md = res.network.mds[0]
    gnb = res.network.gnbs[1]
    (tid, keys), = md.sessions.items()
    note = next(m for _, _, _, _, m in res.adversary.eavesdrop_log
                if getattr(m, "KIND", "") == "handover-notification")
    assert res.corrupt("md-0", "long-term") == {"sk": md.keys.sk}
    assert res.corrupt("gnb-1", "long-term")["sk"] == gnb.keys.sk
    candidates = res.adversary.session_key_candidates(
        res.network.dts[0].a_i, note.c_g2, md.guti, gnb.ident
    )
    assert keys.k_gnb not in candidates


def test_corrupt_both_classes_via_runner_refused():
    res = run_scenario(intra_happy_path(1, seed=112))
    res.corrupt("md-0", "ephemeral")
    with pytest.raises(ThreatModelViolation):
        res.corrupt("md-0", "long-term")


def test_matched_secrets_do_recover_the_key():
    """Soundness of the reconstruction harness: with a full matching pair
    (device ephemeral + device long-term) the key IS derivable."""
    res = run_scenario(intra_happy_path(1, seed=111))
    md = res.network.mds[0]
    gnb = res.network.gnbs[1]
    (tid, keys), = md.sessions.items()
    note = next(m for _, _, _, _, m in res.adversary.eavesdrop_log
                if getattr(m, "KIND", "") == "handover-notification")
    adv = DolevYaoAdversary(rng=random.Random(2))
    adv.corrupt("md-0", "ephemeral", {"a_i": md.a_i, "sk_i": md.keys.sk})
    candidates = adv.session_key_candidates(
        res.network.dts[0].a_i, note.c_g2, md.guti, gnb.ident
    )
    assert keys.k_gnb in candidates
