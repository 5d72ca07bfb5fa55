"""Roster construction: instantiate and wire up all protocol entities.

Builds the AUSF, the per-domain AMFs and gNBs (with verified partial keys),
and one MD/DT pair per device, including the out-of-band trusted setup the
deployment assumes: the shared MD<->DT key installed at twin creation and the
initial-attach oracle yielding (GUTI, k_SEAF).
"""

from __future__ import annotations

import hashlib
import random

from ..protocol.entities import (
    Amf,
    Ausf,
    DigitalTwin,
    Gnb,
    KeyDirectory,
    MobileDevice,
    make_ident,
)
from ..protocol.errors import ConfigError
from ..protocol.params import system_init


def _child_rng(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


class Network:
    def __init__(self, seed: int, n_amfs: int = 1, gnbs_per_amf: int = 2,
                 n_mds: int = 1, delta_t_ms: int = 5000, clock=None):
        if n_amfs < 1 or gnbs_per_amf < 1 or n_mds < 1:
            raise ConfigError("roster needs at least one AMF, gNB and MD")
        self.seed = seed
        self.clock = clock or (lambda: 0)
        self.delta_t_ms = delta_t_ms

        self.params, master = system_init(128, _child_rng(seed, "ausf"))
        self.directory = KeyDirectory(self.params)
        self.ausf = Ausf(self.params, master, self.directory,
                         _child_rng(seed, "ausf-ops"), clock=self.clock,
                         delta_t_ms=delta_t_ms)

        self.amfs: list[Amf] = []
        for a in range(n_amfs):
            amf = Amf(make_ident("amf", a), self.params, self.directory,
                      _child_rng(seed, f"amf{a}"), clock=self.clock,
                      delta_t_ms=delta_t_ms)
            x, big_y = self.ausf.issue_partial_key(amf.ident, amf.keys.pk)
            amf.install_partial_key(x, big_y)
            self.directory.register_amf(amf.ident, amf.keys.pk, big_y)
            self.amfs.append(amf)

        self.gnbs: list[Gnb] = []
        self.gnb_domain: list[int] = []
        for a in range(n_amfs):
            for g in range(gnbs_per_amf):
                idx = len(self.gnbs)
                gnb = Gnb(make_ident("gnb", idx), self.params, self.directory,
                          self.amfs[a].ident, _child_rng(seed, f"gnb{idx}"),
                          clock=self.clock, delta_t_ms=delta_t_ms)
                x, big_y = self.ausf.issue_partial_key(gnb.ident, gnb.keys.pk)
                gnb.install_partial_key(x, big_y)
                self.directory.register_gnb(gnb.ident, gnb.keys.pk)
                self.gnbs.append(gnb)
                self.gnb_domain.append(a)

        self.mds: list[MobileDevice] = []
        self.dts: list[DigitalTwin] = []
        self.home_amf: list[int] = []
        for m in range(n_mds):
            supi = make_ident("supi", m)
            md = MobileDevice(supi, self.params, self.directory,
                              _child_rng(seed, f"md{m}"), clock=self.clock,
                              delta_t_ms=delta_t_ms)
            dt = DigitalTwin(self.params, self.directory,
                             _child_rng(seed, f"dt{m}"), clock=self.clock,
                             delta_t_ms=delta_t_ms)
            self.directory.register_md(supi, md.keys.pk, md.keys.pk2)
            id_j = self.ausf.create_dt_identity(supi)
            # Long-term MD<->DT key: out-of-band trusted setup at twin creation.
            k_ij = _child_rng(seed, f"kij{m}").getrandbits(128).to_bytes(16, "big")
            dt.activate(id_j, k_ij)
            self.directory.register_dt(id_j, dt.keys.pk)
            md.provision(k_ij, dt.keys.pk, id_j)
            # Initial attach on the source-domain AMF (trusted 5G-AKA black box).
            home = 0
            guti, k_seaf = self.amfs[home].attach(supi)
            md.set_anchor(guti, k_seaf)
            self.mds.append(md)
            self.dts.append(dt)
            self.home_amf.append(home)

    def all_entities(self):
        return [self.ausf, *self.amfs, *self.gnbs, *self.mds, *self.dts]

    def set_meter(self, meter) -> None:
        for entity in self.all_entities():
            entity.meter = meter

    def set_clock(self, clock) -> None:
        self.clock = clock
        for entity in self.all_entities():
            entity.clock = clock
