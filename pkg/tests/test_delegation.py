"""Access delegation phase: token, request, issuance, unwrap."""

import random

import pytest

from twinauth.crypto import aead, groups, hashing
from twinauth.crypto.groups import pairing
from twinauth.protocol import messages as msgs
from twinauth.protocol.entities import TOKEN_AAD
from twinauth.protocol.errors import Reject, RejectReason

from conftest import build_net, run_delegation


def test_honest_delegation_end_to_end():
    net = build_net(seed=21)
    deleg = run_delegation(net)
    # public check: delta*P = pk_a1 + h1*bpk_a1 + h2*R_j
    amf = net.amfs[0]
    h1v = hashing.h0(deleg.guti, deleg.r_j)
    h2v = hashing.h0(deleg.id_j, net.dts[0].keys.pk)
    lhs = net.params.g1.mul(deleg.delta)
    rhs = amf.keys.pk.add(net.directory.amf_bpk(amf.ident).mul(h1v)).add(deleg.r_j.mul(h2v))
    assert lhs == rhs


def test_token_decrypts_and_authenticates():
    net = build_net(seed=22)
    md, dt = net.mds[0], net.dts[0]
    dt.accept_token(md.make_token())
    assert dt.a_i is not None
    assert dt.a_i == md.keys.pk.mul(md.a_i)


def test_token_wrong_key_fails_aead():
    net = build_net(seed=23)
    md, dt = net.mds[0], net.dts[0]
    token = md.make_token()
    dt.k_ij = b"\x00" * 16
    with pytest.raises(Reject) as exc:
        dt.accept_token(token)
    assert exc.value.reason == RejectReason.MAC


def test_token_pairing_identity_holds_at_amf():
    # u_i = e(sk_i * d_i, P2) must equal e(t_i * pk_j, pk_i2).
    net = build_net(seed=24)
    md, dt = net.mds[0], net.dts[0]
    token = md.make_token()
    plain = aead.decrypt(md.k_ij, token.e1, TOKEN_AAD)
    u_i = groups.GtValue.decode(plain[groups.G1_ENC_LEN : groups.G1_ENC_LEN + groups.GT_ENC_LEN])
    n_i = int.from_bytes(plain[-16:], "big")
    t_i = hashing.h5(hashing.xor_bytes(md.k_seaf, n_i.to_bytes(16, "big")))
    assert u_i == pairing(dt.keys.pk.mul(t_i), md.keys.pk2)


def test_token_nonce_replay_rejected_by_dt():
    net = build_net(seed=25)
    md, dt = net.mds[0], net.dts[0]
    token = md.make_token()
    dt.accept_token(token)
    with pytest.raises(Reject) as exc:
        dt.accept_token(token)
    assert exc.value.reason == RejectReason.FRESHNESS


def test_modified_w1_fails_signature_check():
    net = build_net(seed=26)
    md, dt, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt.accept_token(md.make_token())
    req = dt.make_delegation_request(amf.ident)
    w1 = bytearray(req.w1)
    w1[0] ^= 1
    with pytest.raises(Reject) as exc:
        amf.handle_delegation_request(req.replace(w1=bytes(w1)))
    assert exc.value.reason == RejectReason.SIGNATURE


def test_replayed_request_nonce_rejected():
    net = build_net(seed=27)
    md, dt, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt.accept_token(md.make_token())
    req = dt.make_delegation_request(amf.ident)
    amf.handle_delegation_request(req)
    with pytest.raises(Reject) as exc:
        amf.handle_delegation_request(req)
    assert exc.value.reason == RejectReason.FRESHNESS


def test_substituted_device_key_fails_token_check():
    # An attacker twin forwarding a token for a different device fails the
    # pairing check because the anchor-key lookup pins the real pk_i.
    net = build_net(seed=28, n_mds=2)
    md0, dt0, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt0.accept_token(md0.make_token())
    req = dt0.make_delegation_request(amf.ident)
    # Remap md0's GUTI to md1's identity in the AMF anchor store.
    supi1 = net.mds[1].supi
    amf._anchors[md0.guti] = (supi1, net.mds[1].k_seaf)
    with pytest.raises(Reject) as exc:
        amf.handle_delegation_request(req)
    assert exc.value.reason == RejectReason.TOKEN


def test_unknown_guti_rejected_as_token_failure():
    net = build_net(seed=29)
    md, dt, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt.accept_token(md.make_token())
    req = dt.make_delegation_request(amf.ident)
    amf._anchors.clear()
    with pytest.raises(Reject) as exc:
        amf.handle_delegation_request(req)
    assert exc.value.reason == RejectReason.TOKEN


def test_flipped_w2_rejected_by_dt():
    net = build_net(seed=30)
    md, dt, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt.accept_token(md.make_token())
    resp = amf.handle_delegation_request(dt.make_delegation_request(amf.ident))
    w2 = bytearray(resp.w2)
    w2[5] ^= 0x10
    with pytest.raises(Reject) as exc:
        dt.unwrap_delegation(resp.replace(w2=bytes(w2)))
    assert exc.value.reason == RejectReason.SIGNATURE


def test_wrong_amf_key_rejected_by_dt():
    net = build_net(seed=31)
    md, dt, amf = net.mds[0], net.dts[0], net.amfs[0]
    dt.accept_token(md.make_token())
    req = dt.make_delegation_request(amf.ident)
    resp = amf.handle_delegation_request(req)
    # Unwrap against the wrong issuer: public check must fail.
    dt._pending_amf = net.amfs[1].ident
    with pytest.raises(Reject) as exc:
        dt.unwrap_delegation(resp)
    assert exc.value.reason == RejectReason.SIGNATURE


def test_unwrap_without_outstanding_request():
    net = build_net(seed=32)
    dt = net.dts[0]
    fake = msgs.DelegationResponse(r_j=net.params.g1, w2=bytes(32))
    with pytest.raises(Reject) as exc:
        dt.unwrap_delegation(fake)
    assert exc.value.reason == RejectReason.TOKEN


def test_forged_delegations_rejected():
    net = build_net(seed=33)
    deleg = run_delegation(net)
    amf = net.amfs[0]
    bpk = net.directory.amf_bpk(amf.ident)
    rng = random.Random(5)
    pk_j = net.dts[0].keys.pk
    for _ in range(100):
        delta = groups.rand_scalar(rng)
        r_j = net.params.g1.mul(groups.rand_scalar(rng))
        h1v = hashing.h0(deleg.guti, r_j)
        h2v = hashing.h0(deleg.id_j, pk_j)
        assert net.params.g1.mul(delta) != amf.keys.pk.add(bpk.mul(h1v)).add(r_j.mul(h2v))
