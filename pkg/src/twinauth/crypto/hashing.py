"""Hash family H0..H5, KDF, and the blinding masks built from them.

All six functions are realized as SHAKE-128 with a one-byte domain tag, over a
canonical length-prefixed encoding of the inputs.  H0 and H5 map into Z_q^*
(48 bytes of XOF output reduced mod q-1, so the bias is negligible); the rest
emit 128-bit digests.  The mask variants read more bytes from the same tagged
stream so XOR-blinded values (GT elements, scalars) round-trip exactly.

The KDF follows the 3GPP pattern: HMAC-SHA-256 over a labelled input,
truncated to the 128-bit key size used throughout.
"""

from __future__ import annotations

import hashlib
import hmac

from .. import metering
from .groups import GtValue, PointG1, PointG2, Q, SCALAR_LEN, scalar_bytes

DIGEST_LEN = 16  # l = 128 bits
KEY_LEN = 16  # AES-128 keys

_TAGS = {0: b"\x00", 1: b"\x01", 2: b"\x02", 3: b"\x03", 4: b"\x04", 5: b"\x05"}

_TYPE_P1 = b"\x11"
_TYPE_P2 = b"\x12"
_TYPE_GT = b"\x13"
_TYPE_BYTES = b"\x14"
_TYPE_INT = b"\x15"
_TYPE_SCALAR = b"\x16"


class Wrapped:
    """Marks an int as a scalar mod q for canonical encoding purposes."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = value % Q


def as_scalar(value: int) -> Wrapped:
    return Wrapped(value)


def _encode_part(part) -> bytes:
    if isinstance(part, PointG1):
        body = part.encode()
        tag = _TYPE_P1
    elif isinstance(part, PointG2):
        body = part.encode()
        tag = _TYPE_P2
    elif isinstance(part, GtValue):
        body = part.encode()
        tag = _TYPE_GT
    elif isinstance(part, Wrapped):
        body = scalar_bytes(part.value)
        tag = _TYPE_SCALAR
    elif isinstance(part, (bytes, bytearray)):
        body = bytes(part)
        tag = _TYPE_BYTES
    elif isinstance(part, int):
        if not 0 <= part < 1 << 128:
            raise ValueError("int hash input out of 128-bit range")
        body = part.to_bytes(16, "big")
        tag = _TYPE_INT
    else:
        raise TypeError(f"unhashable protocol value: {type(part)!r}")
    return tag + len(body).to_bytes(4, "big") + body


def _xof(tag: int, parts, outlen: int) -> bytes:
    h = hashlib.shake_128()
    h.update(_TAGS[tag])
    for part in parts:
        h.update(_encode_part(part))
    return h.digest(outlen)


def _to_scalar(raw: bytes) -> int:
    return int.from_bytes(raw, "big") % (Q - 1) + 1


def h0(*parts) -> int:
    """H0: G x {0,1}* -> Z_q^*."""
    metering.record("t_h")
    return _to_scalar(_xof(0, parts, 48))


def h1(point: PointG1) -> bytes:
    """H1: G -> {0,1}^l."""
    metering.record("t_h")
    return _xof(1, (point,), DIGEST_LEN)


def h1_mask(point: PointG1, length: int) -> bytes:
    """H1 widened to `length` bytes for XOR-blinding GT elements."""
    metering.record("t_h")
    return _xof(1, (point,), length)


def h2(*parts) -> bytes:
    """H2: G x {0,1}* -> {0,1}^l (also accepts GT in the group slot)."""
    metering.record("t_h")
    return _xof(2, parts, DIGEST_LEN)


def h2_mask(parts, length: int) -> bytes:
    """H2 widened to `length` bytes for XOR-blinding scalars."""
    metering.record("t_h")
    return _xof(2, parts, length)


def h3(*parts) -> bytes:
    """H3: G x GT x {0,1}* -> {0,1}^l."""
    metering.record("t_h")
    return _xof(3, parts, DIGEST_LEN)


def h4(*parts) -> bytes:
    """H4: {0,1}* -> {0,1}^l."""
    metering.record("t_h")
    return _xof(4, parts, DIGEST_LEN)


def h5(*parts) -> int:
    """H5: {0,1}* -> Z_q^*."""
    metering.record("t_h")
    return _to_scalar(_xof(5, parts, 48))


def kdf(key: bytes, label: bytes) -> bytes:
    """Derive a 128-bit key; distinct labels give independent keys."""
    metering.record("t_h")
    return hmac.new(key, label, hashlib.sha256).digest()[:KEY_LEN]


def kdf_label(*parts: bytes) -> bytes:
    """Canonical multi-part label (length-prefixed join)."""
    return b"".join(len(p).to_bytes(2, "big") + p for p in parts)


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise ValueError("xor length mismatch")
    return bytes(x ^ y for x, y in zip(a, b))


def scalar_to_digest(s: int) -> bytes:
    """128-bit encoding of a scalar, for XOR with digests (low 128 bits)."""
    return scalar_bytes(s)[SCALAR_LEN - DIGEST_LEN :]
