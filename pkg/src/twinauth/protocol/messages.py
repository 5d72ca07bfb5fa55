"""Protocol message types, wire encoding, and size accounting.

Wire format: one tag byte (message kind) followed by the canonical field
encodings (fixed-width per field kind; AEAD ciphertexts length-prefixed).

Size accounting reproduces the evaluation conventions: group elements count
256 bits, hashes/MACs/nonces/identities/keys 128 bits, timestamps 32 bits,
ciphertexts the nominal width of their contents.  Nominal sizes are what the
cost ledger records; the concrete curve encodings on the byte level may be
wider (a compressed point is 33 bytes).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from ..crypto import groups
from ..crypto.groups import PointG1
from .errors import Reject, RejectReason

# field kind -> (nominal bits, fixed byte width or None for length-prefixed)
FIELD_KINDS = {
    "id": (128, 16),
    "nonce": (128, 16),
    "mac": (128, 16),
    "digest": (128, 16),
    "key": (128, 16),
    "scalar": (256, 32),
    "point": (256, groups.G1_ENC_LEN),
    "gtmask": (256, groups.GT_ENC_LEN),
    "smask": (256, 32),
    "ts": (32, 4),
}

NONCE_MOD = 1 << 128
TS_MOD = 1 << 32


@dataclass(frozen=True)
class Message:
    KIND = ""
    TAG = 0
    FIELDS = ()

    def nominal_bits(self) -> int:
        total = 0
        for name, kind in self.FIELDS:
            if kind.startswith("ct:"):
                total += int(kind.split(":")[1])
            else:
                total += FIELD_KINDS[kind][0]
        return total

    def encode(self) -> bytes:
        out = [bytes([self.TAG])]
        for name, kind in self.FIELDS:
            value = getattr(self, name)
            out.append(_encode_field(kind, value))
        return b"".join(out)

    def replace(self, **changes) -> "Message":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return type(self)(**values)


def _encode_field(kind: str, value) -> bytes:
    if kind.startswith("ct:"):
        return len(value).to_bytes(4, "big") + value
    bits, width = FIELD_KINDS[kind]
    if kind == "point":
        return value.encode()
    if kind in ("scalar",):
        return groups.scalar_bytes(value)
    if kind in ("nonce",):
        return int(value).to_bytes(16, "big")
    if kind == "ts":
        # 64-bit internal clock, truncated to the 32-bit wire width
        return int(value % TS_MOD).to_bytes(4, "big")
    if kind in ("gtmask", "smask"):
        if len(value) != width:
            raise ValueError(f"bad {kind} width")
        return value
    # id / mac / digest / key: raw 16 bytes
    if len(value) != width:
        raise ValueError(f"bad {kind} width: {len(value)}")
    return value


def _decode_field(kind: str, data: bytes, off: int):
    if kind.startswith("ct:"):
        n = int.from_bytes(data[off : off + 4], "big")
        end = off + 4 + n
        if end > len(data):
            raise ValueError("truncated ciphertext field")
        return data[off + 4 : end], end
    bits, width = FIELD_KINDS[kind]
    chunk = data[off : off + width]
    if len(chunk) != width:
        raise ValueError("truncated field")
    off += width
    if kind == "point":
        return PointG1.decode(chunk), off
    if kind == "scalar":
        return groups.scalar_from_bytes(chunk), off
    if kind == "nonce":
        return int.from_bytes(chunk, "big"), off
    if kind == "ts":
        return int.from_bytes(chunk, "big"), off
    return chunk, off


@dataclass(frozen=True)
class AuthorizedToken(Message):
    KIND = "authorized-token"
    TAG = 0x01
    FIELDS = (("e1", "ct:768"), ("mac1", "mac"))
    e1: bytes = b""
    mac1: bytes = b""


@dataclass(frozen=True)
class DelegationRequest(Message):
    KIND = "delegation-request"
    TAG = 0x02
    FIELDS = (
        ("guti", "id"),
        ("id_j", "id"),
        ("w1", "gtmask"),
        ("z_j", "scalar"),
        ("d_j", "scalar"),
        ("n1", "nonce"),
    )
    guti: bytes = b""
    id_j: bytes = b""
    w1: bytes = b""
    z_j: int = 0
    d_j: int = 0
    n1: int = 0


@dataclass(frozen=True)
class DelegationResponse(Message):
    KIND = "delegation-response"
    TAG = 0x03
    FIELDS = (("r_j", "point"), ("w2", "smask"))
    r_j: PointG1 = None
    w2: bytes = b""


@dataclass(frozen=True)
class HandoverRequest(Message):
    KIND = "handover-request"
    TAG = 0x04
    FIELDS = (
        ("guti", "id"),
        ("id_j", "id"),
        ("lam", "scalar"),
        ("a_i", "point"),
        ("b_j", "point"),
        ("r_j", "point"),
        ("ts1", "ts"),
    )
    guti: bytes = b""
    id_j: bytes = b""
    lam: int = 0
    a_i: PointG1 = None
    b_j: PointG1 = None
    r_j: PointG1 = None
    ts1: int = 0


@dataclass(frozen=True)
class HandoverResponse(Message):
    KIND = "handover-response"
    TAG = 0x05
    FIELDS = (
        ("id_g2", "id"),
        ("c_g2", "point"),
        ("h5", "scalar"),
        ("mac2", "mac"),
        ("ts2", "ts"),
    )
    id_g2: bytes = b""
    c_g2: PointG1 = None
    h5: int = 0
    mac2: bytes = b""
    ts2: int = 0


@dataclass(frozen=True)
class HandoverNotification(Message):
    KIND = "handover-notification"
    TAG = 0x06
    FIELDS = (("c_g2", "point"), ("id_g2", "id"), ("h6", "mac"), ("ts3", "ts"))
    c_g2: PointG1 = None
    id_g2: bytes = b""
    h6: bytes = b""
    ts3: int = 0


@dataclass(frozen=True)
class HandoverAck(Message):
    KIND = "handover-ack"
    TAG = 0x07
    FIELDS = (("tid", "digest"), ("mac4", "mac"), ("ts4", "ts"))
    tid: bytes = b""
    mac4: bytes = b""
    ts4: int = 0


@dataclass(frozen=True)
class ContextTransfer(Message):
    KIND = "context-transfer"
    TAG = 0x08
    FIELDS = (("supi", "id"), ("k_seaf", "key"), ("id_j", "id"), ("delta_pub", "point"))
    supi: bytes = b""
    k_seaf: bytes = b""
    id_j: bytes = b""
    delta_pub: PointG1 = None


@dataclass(frozen=True)
class AnchorUpdate(Message):
    KIND = "anchor-update"
    TAG = 0x09
    FIELDS = (("e2", "ct:160"), ("mac5", "mac"))
    e2: bytes = b""
    mac5: bytes = b""


@dataclass(frozen=True)
class InterDelegationRequest(Message):
    KIND = "inter-delegation-request"
    TAG = 0x0A
    FIELDS = (("id_j", "id"), ("v_j", "scalar"), ("mu_j", "mac"), ("ts6", "ts"))
    id_j: bytes = b""
    v_j: int = 0
    mu_j: bytes = b""
    ts6: int = 0


@dataclass(frozen=True)
class InterDelegationResponse(Message):
    KIND = "inter-delegation-response"
    TAG = 0x0B
    FIELDS = (("w3", "smask"), ("r_j_star", "point"), ("ts7", "ts"))
    w3: bytes = b""
    r_j_star: PointG1 = None
    ts7: int = 0


MESSAGE_TYPES = {
    cls.TAG: cls
    for cls in (
        AuthorizedToken,
        DelegationRequest,
        DelegationResponse,
        HandoverRequest,
        HandoverResponse,
        HandoverNotification,
        HandoverAck,
        ContextTransfer,
        AnchorUpdate,
        InterDelegationRequest,
        InterDelegationResponse,
    )
}


def decode_message(data: bytes) -> Message:
    """Parse a wire frame; raises Reject(MALFORMED) on any structural error."""
    if not data:
        raise Reject(RejectReason.MALFORMED, "empty frame")
    cls = MESSAGE_TYPES.get(data[0])
    if cls is None:
        raise Reject(RejectReason.MALFORMED, f"unknown tag {data[0]:#x}")
    off = 1
    values = {}
    try:
        for name, kind in cls.FIELDS:
            values[name], off = _decode_field(kind, data, off)
    except (ValueError, Reject) as exc:
        raise Reject(RejectReason.MALFORMED, f"{cls.KIND}.{name}: {exc}") from None
    if off != len(data):
        raise Reject(RejectReason.MALFORMED, "trailing bytes")
    return cls(**values)
