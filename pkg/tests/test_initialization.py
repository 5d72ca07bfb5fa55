"""System initialization and certified partial keys."""

import random

import pytest

from twinauth.crypto import groups
from twinauth.protocol.params import (
    bound_public_key,
    issue_partial_key,
    system_init,
    verify_partial_key,
)


def test_init_deterministic_under_seed():
    p1, s1 = system_init(128, random.Random(99))
    p2, s2 = system_init(128, random.Random(99))
    assert s1 == s2
    assert p1.pk_pub == p2.pk_pub
    assert p1.q == p2.q


def test_master_public_key_matches_secret():
    params, s = system_init(128, random.Random(1))
    assert params.pk_pub == params.g1.mul(s)


def test_unsupported_security_parameter():
    with pytest.raises(ValueError):
        system_init(256, random.Random(1))


def test_partial_key_round_trip():
    rng = random.Random(7)
    params, s = system_init(128, rng)
    sk = groups.rand_scalar(rng)
    pk = params.g1.mul(sk)
    x, big_y = issue_partial_key(params, s, b"amf-one", pk, rng)
    assert verify_partial_key(params, b"amf-one", pk, x, big_y)
    # bound public key equals the partial key's public image
    assert bound_public_key(params, b"amf-one", pk, big_y) == params.g1.mul(x)


def test_partial_key_randomized_but_both_verify():
    rng = random.Random(8)
    params, s = system_init(128, rng)
    pk = params.g1.mul(groups.rand_scalar(rng))
    x1, y1 = issue_partial_key(params, s, b"gnb", pk, rng)
    x2, y2 = issue_partial_key(params, s, b"gnb", pk, rng)
    assert (x1, y1) != (x2, y2)
    assert verify_partial_key(params, b"gnb", pk, x1, y1)
    assert verify_partial_key(params, b"gnb", pk, x2, y2)


def test_partial_key_tamper_rejected():
    rng = random.Random(9)
    params, s = system_init(128, rng)
    pk = params.g1.mul(groups.rand_scalar(rng))
    x, big_y = issue_partial_key(params, s, b"gnb", pk, rng)
    assert not verify_partial_key(params, b"gnb", pk, x, big_y.add(params.g1))
    assert not verify_partial_key(params, b"gnb", pk, (x + 1) % groups.Q, big_y)


def test_partial_key_bound_to_identity():
    rng = random.Random(10)
    params, s = system_init(128, rng)
    pk = params.g1.mul(groups.rand_scalar(rng))
    x, big_y = issue_partial_key(params, s, b"amf-a", pk, rng)
    assert not verify_partial_key(params, b"amf-b", pk, x, big_y)
