"""Scenario scripts: declarative description of a simulation run.

A script fixes the roster, the scripted movement/handover events (standing in
for the twin's trajectory prediction), the adversary actions, an optional
unknown-attack injection step, and the expected outcomes.  Scripts are
JSON-serializable and replay bit-for-bit under the same seed.

Schema (JSON object):
    seed            int, required
    delta_t_ms      freshness window, default 5000
    roster          {"amfs": int>=1, "gnbs_per_amf": int>=1, "mds": int>=1}
    setup           {"delegate": bool}  token + access delegation during setup
    events          [{"at": ms, "action": "intra_handover", "md": i, "gnb": g},
                     {"at": ms, "action": "inter_handover", "md": i,
                      "amf": a, "gnb": g}]
    adversary       [{"action": "drop"|"modify"|"replay"|"inject", ...}]
    inject_step     int >= 1 or null: abort before transmitting that message
    expect          {"md-<i>": "session-established" | "fallback:..." | ...}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..protocol.errors import ConfigError
from .adversary import AdversaryAction

VALID_EVENT_ACTIONS = ("intra_handover", "inter_handover")


@dataclass
class ScenarioScript:
    seed: int
    roster: dict = field(default_factory=lambda: {"amfs": 1, "gnbs_per_amf": 2, "mds": 1})
    delta_t_ms: int = 5000
    setup_delegation: bool = True
    events: list = field(default_factory=list)
    adversary: list = field(default_factory=list)
    inject_step: int | None = None
    expect: dict = field(default_factory=dict)
    tap_wired: bool = False  # what-if runs: expose wired channels to the tap

    def validate(self) -> None:
        for key in ("amfs", "gnbs_per_amf", "mds"):
            value = self.roster.get(key)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"roster.{key} must be an integer >= 1")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        if self.inject_step is not None and self.inject_step < 1:
            raise ConfigError("inject_step is 1-based")
        n_gnbs = self.roster["amfs"] * self.roster["gnbs_per_amf"]
        for ev in self.events:
            action = ev.get("action")
            if action not in VALID_EVENT_ACTIONS:
                raise ConfigError(f"unknown event action {action!r}")
            if not isinstance(ev.get("at"), int) or ev["at"] < 0:
                raise ConfigError("event.at must be a non-negative time in ms")
            if not 0 <= ev.get("md", -1) < self.roster["mds"]:
                raise ConfigError("event.md out of range")
            if not 0 <= ev.get("gnb", -1) < n_gnbs:
                raise ConfigError("event.gnb out of range")
            if action == "inter_handover" and not 0 <= ev.get("amf", -1) < self.roster["amfs"]:
                raise ConfigError("event.amf out of range")

    def to_json(self) -> str:
        raw = {
            "seed": self.seed,
            "delta_t_ms": self.delta_t_ms,
            "roster": self.roster,
            "setup": {"delegate": self.setup_delegation},
            "events": self.events,
            "adversary": [vars(a) for a in self.adversary],
            "inject_step": self.inject_step,
            "expect": self.expect,
            "tap_wired": self.tap_wired,
        }
        return json.dumps(raw, indent=2, default=_json_fallback)

    @staticmethod
    def from_json(text: str) -> "ScenarioScript":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("scenario must be a JSON object")
        try:
            adversary = [AdversaryAction.from_dict(a) for a in raw.get("adversary", [])]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad adversary action: {exc}") from None
        script = ScenarioScript(
            seed=raw.get("seed", 0),
            roster=raw.get("roster", {"amfs": 1, "gnbs_per_amf": 2, "mds": 1}),
            delta_t_ms=raw.get("delta_t_ms", 5000),
            setup_delegation=raw.get("setup", {}).get("delegate", True),
            events=raw.get("events", []),
            adversary=adversary,
            inject_step=raw.get("inject_step"),
            expect=raw.get("expect", {}),
            tap_wired=raw.get("tap_wired", False),
        )
        script.validate()
        return script


def _json_fallback(obj):
    if isinstance(obj, bytes):
        return obj.hex()
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def intra_happy_path(n: int, seed: int = 1, gnb: int = 1, at_ms: int = 10) -> ScenarioScript:
    """All n devices hand over to the same target cell at the same instant, so
    the base station verifies them as one batch."""
    script = ScenarioScript(
        seed=seed,
        roster={"amfs": 1, "gnbs_per_amf": 2, "mds": n},
        events=[{"at": at_ms, "action": "intra_handover", "md": m, "gnb": gnb} for m in range(n)],
        expect={f"md-{m}": "session-established" for m in range(n)},
    )
    script.validate()
    return script


def inter_scenario(seed: int = 1, at_ms: int = 10) -> ScenarioScript:
    """Context transfer to a second domain, re-delegation, then handover."""
    script = ScenarioScript(
        seed=seed,
        roster={"amfs": 2, "gnbs_per_amf": 2, "mds": 1},
        events=[{"at": at_ms, "action": "inter_handover", "md": 0, "amf": 1, "gnb": 2}],
        expect={"md-0": "session-established"},
    )
    script.validate()
    return script
