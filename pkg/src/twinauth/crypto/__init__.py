"""Algebraic and symmetric primitives: pairing groups, hash family, KDF, AEAD."""

from .groups import (
    GtValue,
    PointG1,
    PointG2,
    Q,
    pairing,
    rand_scalar,
    s_add,
    s_mul,
    s_sub,
    scalar_bytes,
    scalar_from_bytes,
)
from .hashing import (
    DIGEST_LEN,
    KEY_LEN,
    as_scalar,
    h0,
    h1,
    h1_mask,
    h2,
    h2_mask,
    h3,
    h4,
    h5,
    kdf,
    kdf_label,
    scalar_to_digest,
    xor_bytes,
)
from . import aead

__all__ = [
    "GtValue",
    "PointG1",
    "PointG2",
    "Q",
    "pairing",
    "rand_scalar",
    "s_add",
    "s_mul",
    "s_sub",
    "scalar_bytes",
    "scalar_from_bytes",
    "DIGEST_LEN",
    "KEY_LEN",
    "as_scalar",
    "h0",
    "h1",
    "h1_mask",
    "h2",
    "h2_mask",
    "h3",
    "h4",
    "h5",
    "kdf",
    "kdf_label",
    "scalar_to_digest",
    "xor_bytes",
    "aead",
]
