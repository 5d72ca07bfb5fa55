"""Deterministic discrete-event execution of a scenario script.

Single-threaded event loop over (time, priority, seq) keys.  Channels have
fixed latencies (wired 1 ms, wireless 5 ms of simulated time); wireless
channels expose every frame to the adversary before delivery.  Handover
requests arriving at a base station in the same instant are verified as one
batch; a failed batch falls back to individual verification to isolate the
offending requests.

Message sends during the scripted-event phase are numbered 1..N; an
`inject_step` aborts the run right before transmitting that message, leaving
the ledger with exactly the costs accrued up to it (unknown-attack semantics).
"""

from __future__ import annotations

import hashlib
import heapq
import json
import time
from dataclasses import dataclass

from ..overhead.ledger import CostLedger
from ..protocol import messages as msgs
from ..protocol.entities import Fallback
from ..protocol.errors import ConfigError, Reject, RejectReason
from .adversary import DolevYaoAdversary, MalformedFrame
from .network import Network, _child_rng
from .scenario import ScenarioScript

WIRED_LATENCY_MS = 1
WIRELESS_LATENCY_MS = 5

CHANNELS = {
    "md-gnb": ("wireless", WIRELESS_LATENCY_MS, True),
    "md-dt": ("wireless", WIRELESS_LATENCY_MS, True),
    "dt-gnb": ("wired", WIRED_LATENCY_MS, False),
    "dt-amf": ("wired", WIRED_LATENCY_MS, False),
    "amf-amf": ("wired", WIRED_LATENCY_MS, False),
}


class SimClock:
    def __init__(self):
        self.now = 0


@dataclass
class Frame:
    src: str
    dst: str
    channel: str
    msg: object
    md_label: str | None = None


@dataclass
class RunResult:
    outcomes: dict
    ledger: CostLedger
    transcript: list
    transcript_hash: str
    steps: list  # wireless-accounted bits per event-phase message, send order
    rejections: list
    aborted_at_step: int | None
    event_loop_seconds: float
    total_seconds: float
    network: Network = None
    adversary: DolevYaoAdversary = None

    @property
    def com_prefix(self) -> list:
        """Com_i vector: cumulative wireless bits before each message step."""
        out = []
        acc = 0
        for bits in self.steps:
            out.append(acc)
            acc += bits
        return out

    @property
    def com_total(self) -> int:
        return sum(self.steps)

    def corrupt(self, label: str, secret_class: str) -> dict:
        """Leak an entity's long-term or ephemeral secrets to the adversary
        (never both classes for the same entity's session state)."""
        entity = self._entity(label)
        if secret_class == "long-term":
            values = {"sk": entity.keys.sk}
            if entity.keys.x is not None:
                values["x"] = entity.keys.x
        elif secret_class == "ephemeral":
            if label.startswith("md"):
                values = {"a_i": entity.a_i}
            elif label.startswith("gnb"):
                values = {
                    f"c:{tid.hex()[:8]}": s.c_ephemeral
                    for tid, s in entity.sessions.items()
                }
            elif label.startswith("dt"):
                values = {
                    f"b:{ident.hex()[:8]}": st.b_j
                    for ident, st in entity._handovers.items()
                }
            else:
                raise ValueError(f"no ephemeral state at {label}")
        else:
            raise ValueError(f"unknown secret class {secret_class!r}")
        self.adversary.corrupt(label, secret_class, values)
        return values

    def _entity(self, label: str):
        kind, idx = label.split("-")
        pools = {
            "md": self.network.mds,
            "dt": self.network.dts,
            "gnb": self.network.gnbs,
            "amf": self.network.amfs,
        }
        return pools[kind][int(idx)]


def run_scenario(script: ScenarioScript) -> RunResult:
    script.validate()
    return _Runner(script).run()


class _Runner:
    def __init__(self, script: ScenarioScript):
        self.script = script
        self.clock = SimClock()
        self.net = Network(
            seed=script.seed,
            n_amfs=script.roster["amfs"],
            gnbs_per_amf=script.roster["gnbs_per_amf"],
            n_mds=script.roster["mds"],
            delta_t_ms=script.delta_t_ms,
            clock=lambda: self.clock.now,
        )
        self.ledger = CostLedger()
        self.net.set_meter(self.ledger.count_op)
        self.adversary = DolevYaoAdversary(
            rng=_child_rng(script.seed, "adversary"), actions=list(script.adversary)
        )
        self.heap = []
        self.seq = 0
        self.transcript = []
        self.rejections = []
        self.outcomes = {}
        self.steps = []
        self.in_events = False
        self.aborted_at = None
        self.step_index = 0
        self.pending_batches = {}
        self.flush_scheduled = set()
        self.first_event_wall = None
        # label maps
        self.labels = {}
        for i, amf in enumerate(self.net.amfs):
            self.labels[f"amf-{i}"] = amf
        for i, gnb in enumerate(self.net.gnbs):
            self.labels[f"gnb-{i}"] = gnb
        for i, md in enumerate(self.net.mds):
            self.labels[f"md-{i}"] = md
        for i, dt in enumerate(self.net.dts):
            self.labels[f"dt-{i}"] = dt
        self.amf_label = {amf.ident: f"amf-{i}" for i, amf in enumerate(self.net.amfs)}

    # -- event plumbing -----------------------------------------------------

    def _push(self, t: int, prio: int, fn, *args) -> None:
        self.seq += 1
        heapq.heappush(self.heap, (t, prio, self.seq, fn, args))

    def _log(self, record: dict) -> None:
        record["t"] = self.clock.now
        self.transcript.append(record)

    def _reject(self, entity_label: str, frame: Frame, reason: RejectReason, detail: str) -> None:
        self.rejections.append(
            {
                "t": self.clock.now,
                "at": entity_label,
                "kind": getattr(frame.msg, "KIND", "malformed"),
                "reason": reason.value,
                "detail": detail,
            }
        )
        self._log(
            {
                "type": "reject",
                "at": entity_label,
                "kind": getattr(frame.msg, "KIND", "malformed"),
                "reason": reason.value,
            }
        )
        if frame.md_label is not None:
            self.outcomes.setdefault(frame.md_label, f"rejected:{reason.value}@{entity_label}")

    def _send(self, src: str, dst: str, channel: str, msg, md_label=None, replayed=False) -> bool:
        if self.aborted_at is not None:
            return False
        kind, latency, tapped = CHANNELS[channel]
        tapped = tapped or self.script.tap_wired
        direction = _direction(channel, src)
        if self.in_events:
            self.step_index += 1
            if self.script.inject_step == self.step_index:
                self.aborted_at = self.step_index
                self._log({"type": "abort", "step": self.step_index, "kind": msg.KIND})
                self.outcomes["run"] = f"unknown-attack-abort@{self.step_index}"
                self.heap.clear()
                return False
            self.steps.append(msg.nominal_bits() if kind == "wireless" else 0)
        bits = msg.nominal_bits()
        self.ledger.count_message(channel, direction, bits)
        self._log(
            {
                "type": "replay-send" if replayed else "send",
                "src": src,
                "dst": dst,
                "channel": channel,
                "kind": getattr(msg, "KIND", "malformed"),
                "bits": bits,
                "frame": _frame_hash(msg),
            }
        )
        deliver_msg = msg
        replays = []
        if tapped and not replayed:
            deliver_msg, replays = self.adversary.observe(
                self.clock.now, channel, src, dst, msg
            )
            for delay, copy_msg in replays:
                self._push(
                    self.clock.now + delay, 0, self._do_send, src, dst, channel,
                    copy_msg, md_label, True,
                )
            if deliver_msg is None:
                self._log({"type": "drop", "channel": channel, "kind": msg.KIND})
                return True
            if deliver_msg is not msg:
                self._log(
                    {
                        "type": "modify",
                        "channel": channel,
                        "kind": getattr(deliver_msg, "KIND", "malformed"),
                        "frame": _frame_hash(deliver_msg),
                    }
                )
        if md_label is None:
            md_label = self._infer_md_label(dst, deliver_msg)
        frame = Frame(src=src, dst=dst, channel=channel,
                      msg=deliver_msg, md_label=md_label)
        self._push(self.clock.now + latency, 0, self._deliver, frame)
        return True

    def _infer_md_label(self, dst: str, msg) -> str | None:
        """Best-effort session owner for frames the adversary injected."""
        id_j = getattr(msg, "id_j", None)
        if id_j is not None:
            for i, dt in enumerate(self.net.dts):
                if dt.id_j == id_j:
                    return f"md-{i}"
        if dst.startswith("md-"):
            return dst
        return None

    def _do_send(self, src, dst, channel, msg, md_label, replayed):
        self._send(src, dst, channel, msg, md_label, replayed)

    # -- delivery dispatch ----------------------------------------------------

    def _deliver(self, frame: Frame) -> None:
        entity = self.labels[frame.dst]
        msg = frame.msg
        self._log(
            {
                "type": "deliver",
                "src": frame.src,
                "dst": frame.dst,
                "kind": getattr(msg, "KIND", "malformed"),
            }
        )
        if isinstance(msg, MalformedFrame):
            self._reject(frame.dst, frame, RejectReason.MALFORMED, "unparseable frame")
            return
        try:
            self._dispatch(frame, entity, msg)
        except Reject as rej:
            self._reject(frame.dst, frame, rej.reason, rej.detail)

    def _dispatch(self, frame: Frame, entity, msg) -> None:
        if isinstance(msg, msgs.AuthorizedToken):
            entity.accept_token(msg)
            req = entity.make_delegation_request(self.net.amfs[0].ident)
            self._send(frame.dst, "amf-0", "dt-amf", req, frame.md_label)
        elif isinstance(msg, msgs.DelegationRequest):
            resp = entity.handle_delegation_request(msg)
            self._send(frame.dst, _dt_label_for(frame), "dt-amf", resp, frame.md_label)
        elif isinstance(msg, msgs.DelegationResponse):
            entity.unwrap_delegation(msg)
            self._log({"type": "event", "what": "delegated", "md": frame.md_label})
        elif isinstance(msg, msgs.HandoverRequest):
            self.pending_batches.setdefault(frame.dst, []).append((msg, frame))
            key = (frame.dst, self.clock.now)
            if key not in self.flush_scheduled:
                self.flush_scheduled.add(key)
                self._push(self.clock.now, 1, self._flush_gnb, frame.dst)
        elif isinstance(msg, msgs.HandoverResponse):
            note = entity.make_notification(msg)
            self._send(frame.dst, frame.md_label, "md-dt", note, frame.md_label)
        elif isinstance(msg, msgs.HandoverNotification):
            result = entity.process_notification(msg)
            if isinstance(result, Fallback):
                self.outcomes.setdefault(frame.md_label, f"fallback:{result.reason.value}")
                self.rejections.append(
                    {
                        "t": self.clock.now,
                        "at": frame.dst,
                        "kind": msg.KIND,
                        "reason": result.reason.value,
                        "detail": result.detail,
                    }
                )
                self._log(
                    {
                        "type": "fallback",
                        "md": frame.md_label,
                        "reason": result.reason.value,
                        "detail": result.detail,
                    }
                )
                return
            keys, ack = result
            gnb_label = self._gnb_label_by_ident(msg.id_g2)
            self._send(frame.md_label, gnb_label, "md-gnb", ack, frame.md_label)
        elif isinstance(msg, msgs.HandoverAck):
            entity.verify_ack(msg)
            if frame.md_label is not None:
                self.outcomes[frame.md_label] = "session-established"
            self._log({"type": "outcome", "md": frame.md_label, "what": "session-established"})
        elif isinstance(msg, msgs.ContextTransfer):
            entity.receive_context(msg)
        elif isinstance(msg, msgs.AnchorUpdate):
            entity.handle_anchor_update(msg)
            req = entity.make_inter_request()
            amf_label = self._inter_target[frame.md_label]
            self._send(frame.dst, amf_label, "dt-amf", req, frame.md_label)
        elif isinstance(msg, msgs.InterDelegationRequest):
            resp = entity.handle_inter_request(msg)
            self._send(frame.dst, _dt_label_for(frame), "dt-amf", resp, frame.md_label)
        elif isinstance(msg, msgs.InterDelegationResponse):
            amf_label = self.amf_label[self.labels[frame.src].ident]
            entity.unwrap_inter_delegation(msg, self.labels[frame.src].ident)
            self._log({"type": "event", "what": "re-delegated", "md": frame.md_label})
            follow = self._inter_follow_gnb.get(frame.md_label)
            if follow is not None:
                hreq = entity.make_handover_request(self.labels[follow].ident)
                self._send(frame.dst, follow, "dt-gnb", hreq, frame.md_label)
        else:
            raise Reject(RejectReason.MALFORMED, f"unroutable message {type(msg)}")

    def _flush_gnb(self, gnb_label: str) -> None:
        batch = self.pending_batches.pop(gnb_label, [])
        if not batch:
            return
        gnb = self.labels[gnb_label]
        reqs = [m for m, _ in batch]
        verified = []
        try:
            gnb.batch_verify(reqs)
            verified = batch
        except Reject:
            # Isolate offenders: re-check one by one.
            for m, fr in batch:
                try:
                    gnb.verify_handover_request(m)
                    verified.append((m, fr))
                except Reject as rej:
                    self._reject(gnb_label, fr, rej.reason, rej.detail)
        for m, fr in verified:
            try:
                resp = gnb.make_response(m)
            except Reject as rej:
                self._reject(gnb_label, fr, rej.reason, rej.detail)
                continue
            self._send(gnb_label, _dt_label_for(fr), "dt-gnb", resp, fr.md_label)

    def _gnb_label_by_ident(self, ident: bytes) -> str:
        for i, gnb in enumerate(self.net.gnbs):
            if gnb.ident == ident:
                return f"gnb-{i}"
        raise Reject(RejectReason.MALFORMED, "unknown cell identity")

    # -- scripted events ------------------------------------------------------

    def _event_intra(self, md_idx: int, gnb_idx: int) -> None:
        self._mark_events()
        md_label = f"md-{md_idx}"
        dt = self.net.dts[md_idx]
        try:
            hreq = dt.make_handover_request(self.net.gnbs[gnb_idx].ident)
        except Reject as rej:
            self._event_failed(md_label, f"dt-{md_idx}", rej)
            return
        self._send(f"dt-{md_idx}", f"gnb-{gnb_idx}", "dt-gnb", hreq, md_label)

    def _event_inter(self, md_idx: int, amf_idx: int, gnb_idx: int) -> None:
        self._mark_events()
        md_label = f"md-{md_idx}"
        dt = self.net.dts[md_idx]
        target_amf = self.net.amfs[amf_idx]
        if dt.delegation is None:
            self._event_failed(md_label, f"dt-{md_idx}",
                               Reject(RejectReason.TOKEN, "no access delegation held"))
            return
        source_label = self.amf_label[dt.delegation.amf_ident]
        source_amf = self.labels[source_label]
        ctx = source_amf.transfer_context(dt.id_j)
        self._send(source_label, f"amf-{amf_idx}", "amf-amf", ctx, md_label)
        upd = self.net.mds[md_idx].update_anchor(target_amf.ident)
        self._inter_target[md_label] = f"amf-{amf_idx}"
        self._inter_follow_gnb[md_label] = f"gnb-{gnb_idx}"
        self._send(md_label, f"dt-{md_idx}", "md-dt", upd, md_label)

    def _event_failed(self, md_label: str, at_label: str, rej: Reject) -> None:
        self.rejections.append(
            {
                "t": self.clock.now,
                "at": at_label,
                "kind": "scripted-event",
                "reason": rej.reason.value,
                "detail": rej.detail,
            }
        )
        self._log({"type": "event-failed", "md": md_label, "reason": rej.reason.value})
        self.outcomes.setdefault(md_label, f"rejected:{rej.reason.value}@{at_label}")

    def _mark_events(self) -> None:
        if not self.in_events:
            self.in_events = True
            self.first_event_wall = time.perf_counter()

    # -- main loop ------------------------------------------------------------

    def run(self) -> RunResult:
        wall_start = time.perf_counter()
        self._inter_target = {}
        self._inter_follow_gnb = {}
        if self.script.setup_delegation:
            for i, md in enumerate(self.net.mds):
                token = md.make_token()
                self._send(f"md-{i}", f"dt-{i}", "md-dt", token, f"md-{i}")
        for ev in self.script.events:
            if ev["action"] == "intra_handover":
                self._push(ev["at"], 2, self._event_intra, ev["md"], ev["gnb"])
            elif ev["action"] == "inter_handover":
                self._push(ev["at"], 2, self._event_inter, ev["md"], ev["amf"], ev["gnb"])
        for act in self.adversary.injections():
            if act.at_ms is None or act.frame is None:
                raise ConfigError("inject actions need at_ms and frame")
            self._push(
                act.at_ms, 2, self._do_send, act.src, act.dst, act.channel,
                act.frame, None, True,
            )

        while self.heap:
            t, prio, _, fn, args = heapq.heappop(self.heap)
            self.clock.now = max(self.clock.now, t)
            fn(*args)

        wall_end = time.perf_counter()
        event_secs = (
            wall_end - self.first_event_wall if self.first_event_wall is not None else 0.0
        )
        blob = json.dumps(self.transcript, sort_keys=True, default=_json_default)
        return RunResult(
            outcomes=self.outcomes,
            ledger=self.ledger,
            transcript=self.transcript,
            transcript_hash=hashlib.sha256(blob.encode()).hexdigest(),
            steps=self.steps,
            rejections=self.rejections,
            aborted_at_step=self.aborted_at,
            event_loop_seconds=event_secs,
            total_seconds=wall_end - wall_start,
            network=self.net,
            adversary=self.adversary,
        )


def _direction(channel: str, src: str) -> str:
    if channel == "amf-amf":
        return "n14"
    left, _ = channel.split("-")
    return "uplink" if src.startswith(left) else "downlink"


def _dt_label_for(frame: Frame) -> str:
    return "dt-" + frame.md_label.split("-")[1]


def _frame_hash(msg) -> str:
    return hashlib.sha256(msg.encode()).hexdigest()[:16]


def _json_default(obj):
    if isinstance(obj, bytes):
        return obj.hex()
    return repr(obj)
