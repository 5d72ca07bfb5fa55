"""Primitive-layer tests: groups, pairing, hash family, KDF, AEAD."""

import random

import pytest

from twinauth.crypto import aead, groups, hashing
from twinauth.crypto.groups import GtValue, PointG1, PointG2, Q, pairing

rng = random.Random(0xC0FFEE)

G1 = PointG1.generator()
G2 = PointG2.generator()


def test_scalar_arithmetic_matches_bigint_oracle():
    for _ in range(1000):
        a = rng.randrange(0, Q)
        b = rng.randrange(0, Q)
        assert groups.s_add(a, b) == (a + b) % Q
        assert groups.s_sub(a, b) == (a - b) % Q
        assert groups.s_mul(a, b) == (a * b) % Q


def test_zero_times_generator_is_identity():
    assert G1.mul(0).is_identity()
    assert G2.mul(0).is_identity()


def test_scalar_mul_distributes_over_addition():
    for _ in range(25):
        a = groups.rand_scalar(rng)
        b = groups.rand_scalar(rng)
        assert G1.mul((a + b) % Q) == G1.mul(a).add(G1.mul(b))
        assert G2.mul((a + b) % Q) == G2.mul(a).add(G2.mul(b))


def test_scalar_mul_associates():
    for _ in range(25):
        a = groups.rand_scalar(rng)
        b = groups.rand_scalar(rng)
        assert G1.mul(b).mul(a) == G1.mul((a * b) % Q)


def test_fixed_base_and_generic_mul_agree():
    for _ in range(20):
        k = groups.rand_scalar(rng)
        assert G1.mul(k) == G1.add(PointG1.identity()).mul(k)


def test_point_sub_and_neg():
    p = G1.mul(groups.rand_scalar(rng))
    assert p.sub(p).is_identity()
    assert p.add(p.neg()).is_identity()


def test_pairing_to_zero_power_is_gt_identity():
    e = pairing(G1, G2)
    assert e.pow(0).is_one()
    assert not e.is_one()


def test_pairing_bilinearity_100_samples():
    base = pairing(G1, G2)
    for _ in range(100):
        a = groups.rand_scalar(rng)
        b = groups.rand_scalar(rng)
        lhs = pairing(G1.mul(a), G2.mul(b))
        assert lhs == base.pow((a * b) % Q)


def test_pairing_additive_in_first_slot():
    a = groups.rand_scalar(rng)
    b = groups.rand_scalar(rng)
    lhs = pairing(G1.mul(a).add(G1.mul(b)), G2)
    assert lhs == pairing(G1.mul(a), G2).mul(pairing(G1.mul(b), G2))


def test_dual_key_convention_swaps_scalars():
    # The same secret applied to both source-group generators makes the
    # symmetric-pairing equations expressible: e(a*P1, b*P2) = e(b*P1, a*P2).
    for _ in range(10):
        a = groups.rand_scalar(rng)
        b = groups.rand_scalar(rng)
        assert pairing(G1.mul(a), G2.mul(b)) == pairing(G1.mul(b), G2.mul(a))


def test_token_verification_identity():
    # e(sk*d, P2) == e(t*pk_j, pk_i2) with d = t*pk_j and the device dual key.
    sk_i = groups.rand_scalar(rng)
    sk_j = groups.rand_scalar(rng)
    t = groups.rand_scalar(rng)
    pk_j = G1.mul(sk_j)
    pk_i2 = G2.mul(sk_i)
    d = pk_j.mul(t)
    assert pairing(d.mul(sk_i), G2) == pairing(pk_j.mul(t), pk_i2)


def test_gt_inverse_and_serialization():
    e = pairing(G1.mul(7), G2.mul(9))
    assert e.mul(e.inv()).is_one()
    assert GtValue.decode(e.encode()) == e
    assert len(e.encode()) == groups.GT_ENC_LEN


def test_point_encoding_round_trip_and_identity():
    p = G1.mul(groups.rand_scalar(rng))
    assert PointG1.decode(p.encode()) == p
    assert len(p.encode()) == groups.G1_ENC_LEN
    assert PointG1.decode(PointG1.identity().encode()).is_identity()
    q = G2.mul(groups.rand_scalar(rng))
    assert PointG2.decode(q.encode()) == q


def test_point_decoding_rejects_garbage():
    with pytest.raises(ValueError):
        PointG1.decode(b"\xff" * groups.G1_ENC_LEN)
    with pytest.raises(ValueError):
        PointG1.decode(b"\x02" + b"\x00" * 10)


def test_hash_determinism_and_sensitivity():
    p = G1.mul(5)
    assert hashing.h0(b"id", p) == hashing.h0(b"id", p)
    assert hashing.h0(b"id", p) != hashing.h0(b"ie", p)
    assert hashing.h1(p) == hashing.h1(p)
    assert hashing.h1(p) != hashing.h1(G1.mul(6))


def test_hash_family_domain_separation():
    p = G1.mul(3)
    digests = {
        "h1": hashing.h1(p),
        "h2": hashing.h2(p),
        "h3": hashing.h3(p),
        "h4": hashing.h4(p.encode()),
    }
    assert len(set(digests.values())) == len(digests)
    assert hashing.h0(p) != hashing.h5(p)
    for d in digests.values():
        assert len(d) == hashing.DIGEST_LEN


def test_hash_scalar_outputs_in_range():
    for _ in range(50):
        s = hashing.h0(rng.getrandbits(128).to_bytes(16, "big"))
        assert 1 <= s < Q
        s5 = hashing.h5(rng.getrandbits(128).to_bytes(16, "big"))
        assert 1 <= s5 < Q


def test_hash_identity_point_is_stable():
    assert hashing.h1(PointG1.identity()) == hashing.h1(PointG1.identity())


def test_mask_prefix_consistency():
    p = G1.mul(11)
    mask = hashing.h1_mask(p, 384)
    assert mask[: hashing.DIGEST_LEN] == hashing.h1(p)
    assert len(mask) == 384


def test_kdf_label_separation():
    for _ in range(20):
        k = rng.getrandbits(128).to_bytes(16, "big")
        assert hashing.kdf(k, b"Enc") != hashing.kdf(k, b"Int")
        assert len(hashing.kdf(k, b"Enc")) == hashing.KEY_LEN


def test_kdf_multi_part_labels_unambiguous():
    assert hashing.kdf_label(b"ab", b"c") != hashing.kdf_label(b"a", b"bc")


def test_aead_round_trip():
    key = rng.getrandbits(128).to_bytes(16, "big")
    msg = b"A_i || u_i || GUTI || N"
    ct = aead.encrypt(key, msg, b"aad", rng)
    assert aead.decrypt(key, ct, b"aad") == msg


def test_aead_bit_flip_fails_authentication():
    key = rng.getrandbits(128).to_bytes(16, "big")
    ct = aead.encrypt(key, b"payload-bytes", b"aad", rng)
    for _ in range(32):
        pos = rng.randrange(len(ct) * 8)
        tampered = bytearray(ct)
        tampered[pos // 8] ^= 1 << (pos % 8)
        with pytest.raises(aead.AeadError):
            aead.decrypt(key, bytes(tampered), b"aad")


def test_aead_wrong_key_fails():
    k1 = rng.getrandbits(128).to_bytes(16, "big")
    k2 = rng.getrandbits(128).to_bytes(16, "big")
    ct = aead.encrypt(k1, b"x", b"", rng)
    with pytest.raises(aead.AeadError):
        aead.decrypt(k2, ct, b"")


def test_aead_requires_128_bit_key():
    with pytest.raises(ValueError):
        aead.encrypt(b"short", b"x", b"", rng)


def test_xor_blinding_round_trip():
    value = groups.scalar_bytes(groups.rand_scalar(rng))
    mask = hashing.h2_mask((G1.mul(3), 42), groups.SCALAR_LEN)
    assert hashing.xor_bytes(hashing.xor_bytes(value, mask), mask) == value
