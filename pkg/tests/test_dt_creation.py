"""Anonymous twin identities and tracing."""

import random

import pytest

from twinauth.crypto import hashing
from twinauth.protocol.params import create_dt_identity, system_init, trace_identity


def test_trace_inverts_creation():
    rng = random.Random(3)
    params, s = system_init(128, rng)
    for _ in range(20):
        supi = rng.getrandbits(128).to_bytes(16, "big")
        rec = create_dt_identity(params, s, supi, rng)
        assert trace_identity(s, rec.id_j, rec.u_point) == supi


def test_same_supi_gets_fresh_identities():
    rng = random.Random(4)
    params, s = system_init(128, rng)
    supi = b"\x42" * 16
    r1 = create_dt_identity(params, s, supi, rng)
    r2 = create_dt_identity(params, s, supi, rng)
    assert r1.id_j != r2.id_j


def test_wrong_mask_does_not_reveal_supi():
    rng = random.Random(5)
    params, s = system_init(128, rng)
    supi = rng.getrandbits(128).to_bytes(16, "big")
    rec = create_dt_identity(params, s, supi, rng)
    wrong_mask = hashing.h1(params.g1.mul(12345))
    assert hashing.xor_bytes(rec.id_j, wrong_mask) != supi


def test_zero_supi_round_trip():
    rng = random.Random(6)
    params, s = system_init(128, rng)
    rec = create_dt_identity(params, s, bytes(16), rng)
    assert trace_identity(s, rec.id_j, rec.u_point) == bytes(16)


def test_swapped_trace_handles_mismatch():
    rng = random.Random(7)
    params, s = system_init(128, rng)
    s1 = rng.getrandbits(128).to_bytes(16, "big")
    s2 = rng.getrandbits(128).to_bytes(16, "big")
    r1 = create_dt_identity(params, s, s1, rng)
    r2 = create_dt_identity(params, s, s2, rng)
    assert trace_identity(s, r1.id_j, r2.u_point) != s1


def test_supi_width_enforced():
    rng = random.Random(8)
    params, s = system_init(128, rng)
    with pytest.raises(ValueError):
        create_dt_identity(params, s, b"short", rng)
