"""Scriptable Dolev-Yao adversary for the tapped channels.

The adversary sees every frame on tapped (wireless) channels, and can drop,
modify (field- or byte-level), replay with a delay, or inject crafted frames.
It can also be granted long-term or ephemeral secrets of an entity — but never
both classes for the same entity's session, per the threat model.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from ..crypto import groups, hashing
from ..protocol import messages as msgs
from ..protocol.errors import Reject


class ThreatModelViolation(Exception):
    """Requested corruption exceeds the adversary model."""


@dataclass(frozen=True)
class MalformedFrame:
    """A frame whose byte-level mutation no longer parses."""

    data: bytes
    kind_hint: str = ""

    def nominal_bits(self) -> int:
        return len(self.data) * 8

    def encode(self) -> bytes:
        return self.data


@dataclass
class AdversaryAction:
    action: str  # eavesdrop | drop | modify | replay | inject
    match_kind: str | None = None
    occurrence: int = 0
    field: str | None = None
    byte_index: int | None = None
    value: object = None
    delay_ms: int = 0
    at_ms: int | None = None
    frame: object = None
    channel: str | None = None
    src: str | None = None
    dst: str | None = None

    @staticmethod
    def from_dict(raw: dict) -> "AdversaryAction":
        known = {f for f in AdversaryAction.__dataclass_fields__}
        bad = set(raw) - known
        if bad:
            raise ValueError(f"unknown adversary action keys: {sorted(bad)}")
        return AdversaryAction(**raw)


def mutate_field(msg: msgs.Message, name: str, rng: random.Random) -> msgs.Message:
    """Independently corrupt one structured field, keeping it well-formed."""
    kind = dict(msg.FIELDS)[name]
    value = getattr(msg, name)
    if kind == "point":
        new = value.add(groups.PointG1.generator())
    elif kind == "scalar":
        new = (value + 1) % groups.Q
    elif kind == "nonce":
        new = (value + 1) % msgs.NONCE_MOD
    elif kind == "ts":
        new = (value + 1) % msgs.TS_MOD
    else:  # byte strings: id / mac / digest / key / masks / ciphertexts
        flip = rng.randrange(len(value) * 8)
        new = bytearray(value)
        new[flip // 8] ^= 1 << (flip % 8)
        new = bytes(new)
    return msg.replace(**{name: new})


def mutate_byte(msg: msgs.Message, index: int):
    """Flip one byte of the encoded frame; may yield an unparseable frame."""
    data = bytearray(msg.encode())
    data[index % len(data)] ^= 0xFF
    try:
        return msgs.decode_message(bytes(data))
    except Reject:
        return MalformedFrame(data=bytes(data), kind_hint=msg.KIND)


@dataclass
class DolevYaoAdversary:
    rng: random.Random
    actions: list[AdversaryAction] = field(default_factory=list)
    eavesdrop_log: list = field(default_factory=list)
    knowledge: dict = field(default_factory=dict)
    corrupted: set = field(default_factory=set)
    _seen: Counter = field(default_factory=Counter)

    def observe(self, t: int, channel: str, src: str, dst: str, frame):
        """Called for every frame on a tapped channel.

        Returns (deliver_frame_or_None, [(delay_ms, replay_frame), ...]).
        """
        self.eavesdrop_log.append((t, channel, src, dst, frame))
        kind = getattr(frame, "KIND", "")
        index = self._seen[kind]
        self._seen[kind] += 1
        out = frame
        replays = []
        for act in self.actions:
            if act.match_kind != kind or act.occurrence != index:
                continue
            if act.action == "drop":
                return None, replays
            if act.action == "modify":
                if act.field is not None:
                    if act.value is not None:
                        out = out.replace(**{act.field: act.value})
                    else:
                        out = mutate_field(out, act.field, self.rng)
                elif act.byte_index is not None:
                    out = mutate_byte(out, act.byte_index)
            elif act.action == "replay":
                replays.append((act.delay_ms, frame))
        return out, replays

    def injections(self) -> list[AdversaryAction]:
        return [a for a in self.actions if a.action == "inject"]

    # -- corruption queries -------------------------------------------------

    def corrupt(self, label: str, secret_class: str, values: dict) -> dict:
        """Record leaked values for an entity; both secret classes of the same
        entity's session state are never simultaneously obtainable."""
        if secret_class not in ("long-term", "ephemeral"):
            raise ValueError(f"unknown secret class {secret_class!r}")
        other = "ephemeral" if secret_class == "long-term" else "long-term"
        if (label, other) in self.corrupted:
            raise ThreatModelViolation(
                f"{label}: both long-term and ephemeral secrets requested"
            )
        self.corrupted.add((label, secret_class))
        self.knowledge.setdefault(label, {}).update(values)
        return values

    def known_scalars(self) -> list[int]:
        out = []
        for values in self.knowledge.values():
            for v in values.values():
                if isinstance(v, int):
                    out.append(v)
        return out

    def session_key_candidates(self, a_point, c_point, guti: bytes,
                               gnb_ident: bytes) -> set[bytes]:
        """Every session key the adversary can derive from leaked scalars and
        the observed public points A_i, C_g2: single and pairwise-product
        multiples of either point, hashed through the key derivation."""
        scalars = self.known_scalars()
        points = []
        for s in scalars:
            points.append(a_point.mul(s))
            points.append(c_point.mul(s))
        for i, s1 in enumerate(scalars):
            for s2 in scalars[i:]:
                prod = groups.s_mul(s1, s2)
                points.append(a_point.mul(prod))
                points.append(c_point.mul(prod))
        return {hashing.h2(pt, guti, gnb_ident) for pt in points}
