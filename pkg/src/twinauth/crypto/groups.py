"""Typed group API over the BN256 backend.

Scalars are plain ints in [0, q).  Points and GT values are thin immutable
wrappers that keep affine/normalized representations so equality, hashing and
encoding are canonical.  Scalar multiplications, pairings and GT
exponentiations report to the metering hooks; additions, negations and
encodings are free (matching the cost model, which omits lightweight ops).
"""

from __future__ import annotations

import random

from .. import metering
from . import bn256

Q = bn256.ORDER

SCALAR_LEN = 32
G1_ENC_LEN = bn256.G1_ENC_LEN
G2_ENC_LEN = bn256.G2_ENC_LEN
GT_ENC_LEN = bn256.GT_ENC_LEN


def rand_scalar(rng: random.Random) -> int:
    """Uniform element of Z_q^*."""
    return rng.randrange(1, Q)


def s_add(a: int, b: int) -> int:
    return (a + b) % Q


def s_sub(a: int, b: int) -> int:
    return (a - b) % Q


def s_mul(a: int, b: int) -> int:
    return (a * b) % Q


def scalar_bytes(s: int) -> bytes:
    return (s % Q).to_bytes(SCALAR_LEN, "big")


def scalar_from_bytes(data: bytes) -> int:
    if len(data) != SCALAR_LEN:
        raise ValueError("bad scalar encoding length")
    s = int.from_bytes(data, "big")
    if s >= Q:
        raise ValueError("scalar out of range")
    return s


class PointG1:
    __slots__ = ("_pt",)

    def __init__(self, pt):
        self._pt = bn256.g1_affine(pt)

    @staticmethod
    def generator() -> "PointG1":
        return _G1_GEN

    @staticmethod
    def identity() -> "PointG1":
        return _G1_INF

    def mul(self, k: int) -> "PointG1":
        metering.record("t_m")
        if self._pt == bn256.G1_GEN:
            return PointG1(bn256.g1_base_mul(k))
        return PointG1(bn256.g1_mul(self._pt, k))

    def add(self, other: "PointG1") -> "PointG1":
        return PointG1(bn256.g1_add(self._pt, other._pt))

    def sub(self, other: "PointG1") -> "PointG1":
        return PointG1(bn256.g1_add(self._pt, bn256.g1_neg(other._pt)))

    def neg(self) -> "PointG1":
        return PointG1(bn256.g1_neg(self._pt))

    def is_identity(self) -> bool:
        return self._pt[2] == 0

    def on_curve(self) -> bool:
        return bn256.g1_is_on_curve(self._pt)

    def encode(self) -> bytes:
        return bn256.g1_compress(self._pt)

    @staticmethod
    def decode(data: bytes) -> "PointG1":
        return PointG1(bn256.g1_decompress(data))

    def __eq__(self, other) -> bool:
        return isinstance(other, PointG1) and self._pt == other._pt

    def __hash__(self):
        return hash(self._pt)

    def __repr__(self):
        return f"PointG1({self.encode().hex()[:18]}..)"


class PointG2:
    __slots__ = ("_pt",)

    def __init__(self, pt):
        self._pt = bn256.g2_affine(pt)

    @staticmethod
    def generator() -> "PointG2":
        return _G2_GEN

    @staticmethod
    def identity() -> "PointG2":
        return _G2_INF

    def mul(self, k: int) -> "PointG2":
        metering.record("t_m")
        return PointG2(bn256.g2_mul(self._pt, k))

    def add(self, other: "PointG2") -> "PointG2":
        return PointG2(bn256.g2_add(self._pt, other._pt))

    def neg(self) -> "PointG2":
        return PointG2(bn256.g2_neg(self._pt))

    def is_identity(self) -> bool:
        return bn256._is_zero(self._pt[2])

    def on_curve(self) -> bool:
        return bn256.g2_is_on_curve(self._pt)

    def encode(self) -> bytes:
        return bn256.g2_compress(self._pt)

    @staticmethod
    def decode(data: bytes) -> "PointG2":
        return PointG2(bn256.g2_decompress(data))

    def __eq__(self, other) -> bool:
        return isinstance(other, PointG2) and self._pt == other._pt

    def __hash__(self):
        return hash(self._pt)

    def __repr__(self):
        return f"PointG2({self.encode().hex()[:18]}..)"


class GtValue:
    __slots__ = ("_v",)

    def __init__(self, v):
        self._v = bn256.fp12_norm(v)

    @staticmethod
    def one() -> "GtValue":
        return _GT_ONE

    def mul(self, other: "GtValue") -> "GtValue":
        return GtValue(bn256.gt_mul(self._v, other._v))

    def pow(self, k: int) -> "GtValue":
        metering.record("t_e")
        return GtValue(bn256.gt_exp(self._v, k))

    def inv(self) -> "GtValue":
        return GtValue(bn256.gt_inv(self._v))

    def is_one(self) -> bool:
        return bn256.fp12_is_one(self._v)

    def encode(self) -> bytes:
        return bn256.gt_serialize(self._v)

    @staticmethod
    def decode(data: bytes) -> "GtValue":
        return GtValue(bn256.gt_deserialize(data))

    def __eq__(self, other) -> bool:
        return isinstance(other, GtValue) and self._v == other._v

    def __hash__(self):
        return hash(self._v)

    def __repr__(self):
        return f"GtValue({self.encode().hex()[:18]}..)"


def pairing(a: PointG1, b: PointG2) -> GtValue:
    """Bilinear map e: G1 x G2 -> GT."""
    metering.record("t_p")
    return GtValue(bn256.pairing(a._pt, b._pt))


_G1_GEN = PointG1(bn256.G1_GEN)
_G1_INF = PointG1(bn256.G1_INF)
_G2_GEN = PointG2(bn256.G2_GEN)
_G2_INF = PointG2(bn256.G2_INF)
_GT_ONE = GtValue(bn256.FP12_ONE)
