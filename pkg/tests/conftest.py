"""Shared fixtures: prebuilt rosters at interesting stages."""

import pytest

from twinauth.sim.network import Network


def build_net(seed=11, n_amfs=2, gnbs_per_amf=2, n_mds=1, **kw):
    return Network(seed=seed, n_amfs=n_amfs, gnbs_per_amf=gnbs_per_amf,
                   n_mds=n_mds, **kw)


def run_delegation(net, md_idx=0, amf_idx=0):
    md, dt, amf = net.mds[md_idx], net.dts[md_idx], net.amfs[amf_idx]
    token = md.make_token()
    dt.accept_token(token)
    req = dt.make_delegation_request(amf.ident)
    resp = amf.handle_delegation_request(req)
    return dt.unwrap_delegation(resp)


@pytest.fixture(scope="module")
def delegated_net():
    net = build_net()
    run_delegation(net)
    return net
