"""Per-entity protocol state machines: MD, DT, gNB, AMF, AUSF/UDM.

Each entity owns its keys and session state and exposes one method per
protocol message it constructs or verifies.  Verifier failures raise Reject
with an enumerated reason.  All costed primitives run inside a metering scope
tagging (role, phase) so the simulator's ledger can reproduce the evaluation's
per-role operation tallies.

Phase attribution follows the evaluation's scoping: offline session-secret
precomputation at the base station is metered separately from the online
handover, and directory-cache preprocessing (bound public keys of published
AMF identities) is setup work.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass

from .. import metering
from ..crypto import aead, groups, hashing
from ..crypto.groups import PointG1, PointG2, Q, pairing, rand_scalar, s_add, s_mul
from . import messages as msgs
from .errors import Reject, RejectReason
from .params import SystemParams, bound_public_key, verify_partial_key

DEFAULT_DELTA_T_MS = 5000

TOKEN_AAD = b"md-dt-token"
ANCHOR_AAD = b"md-dt-anchor"
ANCHOR_LABEL = b"anchor"
ENC_LABEL = b"Enc"
INT_LABEL = b"Int"


class Phase:
    SETUP = "setup"
    OFFLINE = "offline"
    DELEGATION = "delegation"
    INTRA = "intra_handover"
    INTER = "inter_handover"


def make_ident(prefix: str, index: int) -> bytes:
    return f"{prefix}-{index}".encode().ljust(16, b"\x00")[:16]


def _digest_scalar(d: bytes) -> int:
    return int.from_bytes(d, "big")


# ---------------------------------------------------------------------------
# Shared records


@dataclass(frozen=True)
class EntityKeys:
    ident: bytes
    sk: int
    pk: PointG1
    pk2: PointG2 | None = None  # dual key, present when used inside pairings
    x: int | None = None  # partial private key
    big_y: PointG1 | None = None


@dataclass(frozen=True)
class AccessDelegation:
    delta: int
    r_j: PointG1
    guti: bytes
    id_j: bytes
    amf_ident: bytes


@dataclass(frozen=True)
class SessionKeys:
    k_gnb: bytes
    tck: bytes
    tik: bytes
    tid: bytes
    k_point: PointG1


@dataclass(frozen=True)
class Fallback:
    """Signal to re-run the standard handover procedure (recorded, not run)."""

    reason: RejectReason
    detail: str = ""


@dataclass
class DtHandoverState:
    """DT-side per-handover state.  Holds no key material of the MD/gNB
    session: deriving k_gNB* requires a_i*sk_i or c_g2*sk_g2, neither of
    which the twin ever sees."""

    gnb_ident: bytes
    b_j: int
    ts1: int


@dataclass
class GnbSession:
    guti: bytes
    k_gnb: bytes
    tck: bytes
    tik: bytes
    k_point: PointG1
    c_ephemeral: int
    established: bool = False


class KeyDirectory:
    """Replicated public-key directory: published AMF/gNB identities and the
    twin/device keys distributed by the UDM at creation time."""

    def __init__(self, params: SystemParams):
        self.params = params
        self._amfs: dict[bytes, tuple[PointG1, PointG1, PointG1]] = {}  # pk, Y, bpk
        self._gnbs: dict[bytes, PointG1] = {}
        self._dts: dict[bytes, PointG1] = {}
        self._mds: dict[bytes, tuple[PointG1, PointG2]] = {}

    def register_amf(self, ident: bytes, pk: PointG1, big_y: PointG1) -> None:
        with metering.paused():
            bpk = bound_public_key(self.params, ident, pk, big_y)
        self._amfs[ident] = (pk, big_y, bpk)

    def register_gnb(self, ident: bytes, pk: PointG1) -> None:
        self._gnbs[ident] = pk

    def register_dt(self, id_j: bytes, pk: PointG1) -> None:
        self._dts[id_j] = pk

    def register_md(self, supi: bytes, pk: PointG1, pk2: PointG2) -> None:
        self._mds[supi] = (pk, pk2)

    def amf_pk(self, ident: bytes) -> PointG1:
        return self._amfs[ident][0]

    def amf_bpk(self, ident: bytes) -> PointG1:
        return self._amfs[ident][2]

    def gnb_pk(self, ident: bytes) -> PointG1:
        return self._gnbs[ident]

    def dt_pk(self, id_j: bytes) -> PointG1 | None:
        return self._dts.get(id_j)

    def md_keys(self, supi: bytes) -> tuple[PointG1, PointG2]:
        return self._mds[supi]


class Entity:
    role = "entity"

    def __init__(self, ident: bytes, directory: KeyDirectory, rng: random.Random,
                 clock=None, delta_t_ms: int = DEFAULT_DELTA_T_MS):
        self.ident = ident
        self.directory = directory
        self.rng = rng
        self.clock = clock or (lambda: 0)
        self.delta_t_ms = delta_t_ms
        self.meter = None  # callable (role, phase, kind) installed by the sim

    @contextmanager
    def _metered(self, phase: str):
        if self.meter is None:
            yield
        else:
            meter = self.meter
            role = self.role
            with metering.recording(lambda kind: meter(role, phase, kind)):
                yield

    def _check_fresh(self, ts: int, what: str) -> None:
        if abs(self.clock() - ts) > self.delta_t_ms:
            raise Reject(RejectReason.FRESHNESS, f"{what} outside freshness window")


# ---------------------------------------------------------------------------
# AUSF / UDM


class Ausf(Entity):
    role = "ausf"

    def __init__(self, params: SystemParams, master: int, directory: KeyDirectory,
                 rng: random.Random, **kw):
        super().__init__(make_ident("ausf", 0), directory, rng, **kw)
        self.params = params
        self._master = master
        self._trace_db: dict[bytes, PointG1] = {}  # ID_j -> U_j

    def issue_partial_key(self, ident: bytes, pk: PointG1) -> tuple[int, PointG1]:
        from .params import issue_partial_key

        with self._metered(Phase.SETUP):
            return issue_partial_key(self.params, self._master, ident, pk, self.rng)

    def create_dt_identity(self, supi: bytes) -> bytes:
        from .params import create_dt_identity

        with self._metered(Phase.SETUP):
            record = create_dt_identity(self.params, self._master, supi, self.rng)
        self._trace_db[record.id_j] = record.u_point
        return record.id_j

    def trace_identity(self, id_j: bytes) -> bytes:
        from .params import trace_identity

        u_point = self._trace_db.get(id_j)
        if u_point is None:
            raise KeyError("unknown twin identity")
        with self._metered(Phase.SETUP):
            return trace_identity(self._master, id_j, u_point)


# ---------------------------------------------------------------------------
# AMF


class Amf(Entity):
    role = "amf"

    def __init__(self, ident: bytes, params: SystemParams, directory: KeyDirectory,
                 rng: random.Random, **kw):
        super().__init__(ident, directory, rng, **kw)
        self.params = params
        sk = rand_scalar(rng)
        with metering.paused():
            pk = params.g1.mul(sk)
        self.keys = EntityKeys(ident=ident, sk=sk, pk=pk)
        self._anchors: dict[bytes, tuple[bytes, bytes]] = {}  # GUTI -> (SUPI, k_SEAF)
        self._issued: dict[bytes, tuple[bytes, PointG1]] = {}  # ID_j -> (GUTI, delta*P)
        self._seen_nonces: set[tuple[bytes, int]] = set()
        # ID_j -> (GUTI*, SUPI, k_SEAF*, delta*P) after an inbound context transfer
        self._contexts: dict[bytes, tuple[bytes, bytes, bytes, PointG1]] = {}

    def install_partial_key(self, x: int, big_y: PointG1) -> None:
        if not verify_partial_key(self.params, self.ident, self.keys.pk, x, big_y):
            raise Reject(RejectReason.SIGNATURE, "partial key verification failed")
        self.keys = EntityKeys(ident=self.ident, sk=self.keys.sk, pk=self.keys.pk,
                               x=x, big_y=big_y)

    def attach(self, supi: bytes) -> tuple[bytes, bytes]:
        """Initial-attach oracle: yields (GUTI, k_SEAF) per the standard
        procedure, which this artifact treats as a trusted black box."""
        guti = self.rng.getrandbits(128).to_bytes(16, "big")
        k_seaf = self.rng.getrandbits(128).to_bytes(16, "big")
        self._anchors[guti] = (supi, k_seaf)
        return guti, k_seaf

    def handle_delegation_request(self, req: msgs.DelegationRequest) -> msgs.DelegationResponse:
        with self._metered(Phase.DELEGATION):
            key = (req.id_j, req.n1)
            if key in self._seen_nonces:
                raise Reject(RejectReason.FRESHNESS, "nonce replayed")
            pk_j = self.directory.dt_pk(req.id_j)
            if pk_j is None:
                raise Reject(RejectReason.SIGNATURE, "unknown twin identity")
            # Signature check: recover L_j and recompute the binding hash.
            l_point = self.params.g1.mul(req.z_j).sub(pk_j.mul(req.d_j))
            d_check = hashing.h0(req.guti, l_point, req.id_j, req.w1, req.n1)
            if d_check != req.d_j:
                raise Reject(RejectReason.SIGNATURE, "request signature invalid")
            self._seen_nonces.add(key)
            # Unblind the token value and verify it against the anchor key.
            mask = hashing.h1_mask(l_point.mul(self.keys.sk), groups.GT_ENC_LEN)
            try:
                u_i = groups.GtValue.decode(hashing.xor_bytes(req.w1, mask))
            except ValueError as exc:
                raise Reject(RejectReason.TOKEN, f"token unblinding failed: {exc}") from None
            anchor = self._anchors.get(req.guti)
            if anchor is None:
                raise Reject(RejectReason.TOKEN, "unknown GUTI")
            supi, k_seaf = anchor
            n_i = (req.n1 - 1) % msgs.NONCE_MOD
            t_i = hashing.h5(hashing.xor_bytes(k_seaf, n_i.to_bytes(16, "big")))
            _, pk_i2 = self.directory.md_keys(supi)
            if pairing(pk_j.mul(t_i), pk_i2) != u_i:
                raise Reject(RejectReason.TOKEN, "token pairing check failed")
            # Issue the delegation.
            r = rand_scalar(self.rng)
            r_point = self.params.g1.mul(r)
            h1v = hashing.h0(req.guti, r_point)
            h2v = hashing.h0(req.id_j, pk_j)
            delta = (self.keys.sk + self.keys.x * h1v + r * h2v) % Q
            n2 = (req.n1 + 1) % msgs.NONCE_MOD
            w2 = hashing.xor_bytes(
                groups.scalar_bytes(delta),
                hashing.h2_mask((pk_j.mul(r), n2), groups.SCALAR_LEN),
            )
            self._issued[req.id_j] = (req.guti, self.params.g1.mul(delta))
            return msgs.DelegationResponse(r_j=r_point, w2=w2)

    def transfer_context(self, id_j: bytes) -> msgs.ContextTransfer:
        """Package the security context for the target AMF (N14)."""
        guti, delta_pub = self._issued[id_j]
        supi, k_seaf = self._anchors[guti]
        return msgs.ContextTransfer(supi=supi, k_seaf=k_seaf, id_j=id_j, delta_pub=delta_pub)

    def receive_context(self, ctx: msgs.ContextTransfer) -> tuple[bytes, bytes]:
        """Derive the new anchor pair; returns (GUTI*, k_SEAF*)."""
        with self._metered(Phase.INTER):
            k_seaf_star = hashing.kdf(
                ctx.k_seaf, hashing.kdf_label(ANCHOR_LABEL, ctx.supi, self.ident)
            )
            guti_star = hashing.h4(ctx.supi, k_seaf_star)
        self._contexts[ctx.id_j] = (guti_star, ctx.supi, k_seaf_star, ctx.delta_pub)
        self._anchors[guti_star] = (ctx.supi, k_seaf_star)
        return guti_star, k_seaf_star

    def context_for(self, id_j: bytes) -> tuple[bytes, bytes, bytes, PointG1] | None:
        return self._contexts.get(id_j)

    def handle_inter_request(self, req: msgs.InterDelegationRequest) -> msgs.InterDelegationResponse:
        with self._metered(Phase.INTER):
            self._check_fresh(req.ts6, "TS6")
            ctx = self._contexts.get(req.id_j)
            if ctx is None:
                raise Reject(RejectReason.TOKEN, "no security context transferred")
            guti_star, supi, k_seaf_star, delta_pub = ctx
            pk_j = self.directory.dt_pk(req.id_j)
            if pk_j is None:
                raise Reject(RejectReason.SIGNATURE, "unknown twin identity")
            mu = _digest_scalar(req.mu_j)
            l_star = self.params.g1.mul(req.v_j).sub(delta_pub).sub(pk_j.mul(mu))
            mu_check = hashing.h2(l_star, req.id_j, guti_star, req.ts6)
            if mu_check != req.mu_j:
                raise Reject(RejectReason.SIGNATURE, "inter-request binding invalid")
            r = rand_scalar(self.rng)
            r_point = self.params.g1.mul(r)
            h1v = hashing.h0(guti_star, r_point)
            h2v = hashing.h0(req.id_j, pk_j)
            delta = (self.keys.sk + self.keys.x * h1v + r * h2v) % Q
            ts7 = self.clock()
            w3 = hashing.xor_bytes(
                groups.scalar_bytes(delta),
                hashing.h2_mask((pk_j.mul(r), ts7), groups.SCALAR_LEN),
            )
            self._issued[req.id_j] = (guti_star, self.params.g1.mul(delta))
            return msgs.InterDelegationResponse(w3=w3, r_j_star=r_point, ts7=ts7)


# ---------------------------------------------------------------------------
# gNB


class Gnb(Entity):
    role = "gnb"

    def __init__(self, ident: bytes, params: SystemParams, directory: KeyDirectory,
                 amf_ident: bytes, rng: random.Random, **kw):
        super().__init__(ident, directory, rng, **kw)
        self.params = params
        self.amf_ident = amf_ident
        sk = rand_scalar(rng)
        with metering.paused():
            pk = params.g1.mul(sk)
        self.keys = EntityKeys(ident=ident, sk=sk, pk=pk)
        self.sessions: dict[bytes, GnbSession] = {}
        self._secret_pool: list[tuple[int, int, PointG1]] = []

    def install_partial_key(self, x: int, big_y: PointG1) -> None:
        if not verify_partial_key(self.params, self.ident, self.keys.pk, x, big_y):
            raise Reject(RejectReason.SIGNATURE, "partial key verification failed")
        self.keys = EntityKeys(ident=self.ident, sk=self.keys.sk, pk=self.keys.pk,
                               x=x, big_y=big_y)

    def precompute_session_secrets(self, count: int) -> None:
        """Offline preparation of (c*sk, C=c*sk*P) pairs; the session point
        does not depend on any request, so it is computed out of band."""
        with self._metered(Phase.OFFLINE):
            for _ in range(count):
                c = rand_scalar(self.rng)
                t = s_mul(c, self.keys.sk)
                self._secret_pool.append((c, t, self.params.g1.mul(t)))

    def _draw_session_secret(self) -> tuple[int, int, PointG1]:
        if not self._secret_pool:
            self.precompute_session_secrets(1)
        return self._secret_pool.pop()

    def _request_terms(self, req: msgs.HandoverRequest):
        """Per-request hashes and variable-base terms shared by individual and
        batch verification.  Returns (h-values, rhs contribution)."""
        pk_j = self.directory.dt_pk(req.id_j)
        if pk_j is None:
            raise Reject(RejectReason.SIGNATURE, "unknown twin identity")
        self._check_fresh(req.ts1, "TS1")
        h1v = hashing.h0(req.guti, req.r_j)
        h2v = hashing.h0(req.id_j, pk_j)
        h3v = hashing.h0(req.a_i, req.ts1)
        z_point = pk_j.add(req.b_j).mul(self.keys.sk)
        h4v = hashing.h0(z_point, req.id_j)
        term = req.r_j.mul(s_mul(h3v, h2v)).add(req.b_j.mul(h4v))
        return h1v, h3v, term

    def verify_handover_request(self, req: msgs.HandoverRequest) -> None:
        """Single-request verification of the delegation signature."""
        with self._metered(Phase.INTRA):
            h1v, h3v, term = self._request_terms(req)
            pk_a = self.directory.amf_pk(self.amf_ident)
            bpk_a = self.directory.amf_bpk(self.amf_ident)
            lhs = self.params.g1.mul(req.lam)
            rhs = pk_a.mul(h3v).add(bpk_a.mul(s_mul(h1v, h3v))).add(term)
            if lhs != rhs:
                raise Reject(RejectReason.SIGNATURE, "handover request signature invalid")

    def batch_verify(self, reqs: list[msgs.HandoverRequest]) -> None:
        """Aggregate verification of a batch of handover requests; an empty
        batch is vacuously valid.  Raises on the first structural problem or
        on aggregate mismatch (callers then isolate via individual checks)."""
        if not reqs:
            return
        with self._metered(Phase.INTRA):
            sum_lam = 0
            sum_h3 = 0
            sum_h1h3 = 0
            rhs_var = None
            for req in reqs:
                h1v, h3v, term = self._request_terms(req)
                sum_lam = s_add(sum_lam, req.lam)
                sum_h3 = s_add(sum_h3, h3v)
                sum_h1h3 = s_add(sum_h1h3, s_mul(h1v, h3v))
                rhs_var = term if rhs_var is None else rhs_var.add(term)
            pk_a = self.directory.amf_pk(self.amf_ident)
            bpk_a = self.directory.amf_bpk(self.amf_ident)
            lhs = self.params.g1.mul(sum_lam)
            rhs = pk_a.mul(sum_h3).add(bpk_a.mul(sum_h1h3)).add(rhs_var)
            if lhs != rhs:
                raise Reject(RejectReason.SIGNATURE, "batch verification failed")

    def make_response(self, req: msgs.HandoverRequest) -> msgs.HandoverResponse:
        """Derive the session keys for a verified request and answer the twin."""
        with self._metered(Phase.INTRA):
            c, t, c_point = self._draw_session_secret()
            k_point = req.a_i.mul(t)
            k_gnb = hashing.h2(k_point, req.guti, self.ident)
            tck = hashing.kdf(k_gnb, ENC_LABEL)
            tik = hashing.kdf(k_gnb, INT_LABEL)
            tid = hashing.h4(k_gnb, req.guti, self.ident)
            h5v = hashing.h5(tik, tid, req.id_j)
            ts2 = self.clock()
            mac2 = hashing.h2(req.b_j.mul(s_mul(self.keys.sk, h5v)), c_point, ts2)
            self.sessions[tid] = GnbSession(
                guti=req.guti, k_gnb=k_gnb, tck=tck, tik=tik,
                k_point=k_point, c_ephemeral=c,
            )
            return msgs.HandoverResponse(
                id_g2=self.ident, c_g2=c_point, h5=h5v, mac2=mac2, ts2=ts2
            )

    def verify_ack(self, ack: msgs.HandoverAck) -> GnbSession:
        with self._metered(Phase.INTRA):
            self._check_fresh(ack.ts4, "TS4")
            session = self.sessions.get(ack.tid)
            if session is None:
                raise Reject(RejectReason.UNKNOWN_TID, "no session for TID")
            if hashing.h2(session.tik, ack.tid, ack.ts4) != ack.mac4:
                raise Reject(RejectReason.MAC, "MAC4 invalid")
            session.established = True
            return session


# ---------------------------------------------------------------------------
# Digital twin


class DigitalTwin(Entity):
    role = "dt"

    def __init__(self, params: SystemParams, directory: KeyDirectory,
                 rng: random.Random, **kw):
        super().__init__(b"", directory, rng, **kw)
        self.params = params
        sk = rand_scalar(rng)
        with metering.paused():
            pk = params.g1.mul(sk)
            pk2 = params.g2.mul(sk)
        self.keys = EntityKeys(ident=b"", sk=sk, pk=pk, pk2=pk2)
        self.id_j: bytes = b""
        self.k_ij: bytes = b""
        self.delegation: AccessDelegation | None = None
        self.a_i: PointG1 | None = None
        self.guti_star: bytes | None = None
        self._seen_md_nonces: set[int] = set()
        self._pending_nonce: int | None = None
        self._pending_amf: bytes | None = None
        self._handovers: dict[bytes, DtHandoverState] = {}
        self._token: tuple[bytes, int] | None = None  # (GUTI, N_i) from last token
        self._u_i: groups.GtValue | None = None

    def activate(self, id_j: bytes, k_ij: bytes) -> None:
        self.id_j = id_j
        self.ident = id_j
        self.k_ij = k_ij

    def accept_token(self, token: msgs.AuthorizedToken) -> None:
        """Decrypt and authenticate the device's authorized token."""
        with self._metered(Phase.DELEGATION):
            try:
                plain = aead.decrypt(self.k_ij, token.e1, TOKEN_AAD)
            except aead.AeadError as exc:
                raise Reject(RejectReason.MAC, str(exc)) from None
            try:
                a_i = PointG1.decode(plain[: groups.G1_ENC_LEN])
                off = groups.G1_ENC_LEN
                u_i = groups.GtValue.decode(plain[off : off + groups.GT_ENC_LEN])
                off += groups.GT_ENC_LEN
                guti = plain[off : off + 16]
                n_i = int.from_bytes(plain[off + 16 : off + 32], "big")
            except (ValueError, IndexError) as exc:
                raise Reject(RejectReason.MALFORMED, f"token payload: {exc}") from None
            if hashing.h3(self.k_ij, a_i, u_i, guti, n_i) != token.mac1:
                raise Reject(RejectReason.MAC, "MAC1 invalid")
            if n_i in self._seen_md_nonces:
                raise Reject(RejectReason.FRESHNESS, "token nonce replayed")
            self._seen_md_nonces.add(n_i)
            self.a_i = a_i
            self._token = (guti, n_i)
            self._u_i = u_i

    def make_delegation_request(self, amf_ident: bytes) -> msgs.DelegationRequest:
        if self._token is None:
            raise Reject(RejectReason.TOKEN, "no authorized token held")
        with self._metered(Phase.DELEGATION):
            guti, n_i = self._token
            l = rand_scalar(self.rng)
            l_point = self.params.g1.mul(l)
            pk_a = self.directory.amf_pk(amf_ident)
            w1 = hashing.xor_bytes(
                self._u_i.encode(), hashing.h1_mask(pk_a.mul(l), groups.GT_ENC_LEN)
            )
            n1 = (n_i + 1) % msgs.NONCE_MOD
            d_j = hashing.h0(guti, l_point, self.id_j, w1, n1)
            z_j = (l + self.keys.sk * d_j) % Q
            self._pending_nonce = (n1 + 1) % msgs.NONCE_MOD
            self._pending_amf = amf_ident
            return msgs.DelegationRequest(
                guti=guti, id_j=self.id_j, w1=w1, z_j=z_j, d_j=d_j, n1=n1
            )

    def unwrap_delegation(self, resp: msgs.DelegationResponse) -> AccessDelegation:
        if self._pending_nonce is None or self._token is None:
            raise Reject(RejectReason.TOKEN, "no delegation request outstanding")
        with self._metered(Phase.DELEGATION):
            guti, _ = self._token
            amf_ident = self._pending_amf
            mask = hashing.h2_mask(
                (resp.r_j.mul(self.keys.sk), self._pending_nonce), groups.SCALAR_LEN
            )
            try:
                delta = groups.scalar_from_bytes(hashing.xor_bytes(resp.w2, mask))
            except ValueError as exc:
                raise Reject(RejectReason.SIGNATURE, f"delegation unblinding: {exc}") from None
            h1v = hashing.h0(guti, resp.r_j)
            h2v = hashing.h0(self.id_j, self.keys.pk)
            lhs = self.params.g1.mul(delta)
            rhs = (
                self.directory.amf_pk(amf_ident)
                .add(self.directory.amf_bpk(amf_ident).mul(h1v))
                .add(resp.r_j.mul(h2v))
            )
            if lhs != rhs:
                raise Reject(RejectReason.SIGNATURE, "delegation public check failed")
            self.delegation = AccessDelegation(
                delta=delta, r_j=resp.r_j, guti=guti, id_j=self.id_j, amf_ident=amf_ident
            )
            self._pending_nonce = None
            self._pending_amf = None
            return self.delegation

    def make_handover_request(self, gnb_ident: bytes) -> msgs.HandoverRequest:
        if self.delegation is None:
            raise Reject(RejectReason.TOKEN, "no access delegation held")
        if self.a_i is None:
            raise Reject(RejectReason.TOKEN, "no device session point held")
        with self._metered(Phase.INTRA):
            d = self.delegation
            b = rand_scalar(self.rng)
            b_point = self.params.g1.mul(b)
            pk_g = self.directory.gnb_pk(gnb_ident)
            z_point = pk_g.mul(s_add(self.keys.sk, b))
            ts1 = self.clock()
            h3v = hashing.h0(self.a_i, ts1)
            h4v = hashing.h0(z_point, self.id_j)
            lam = (d.delta * h3v + b * h4v) % Q
            self._handovers[gnb_ident] = DtHandoverState(gnb_ident=gnb_ident, b_j=b, ts1=ts1)
            return msgs.HandoverRequest(
                guti=d.guti, id_j=self.id_j, lam=lam,
                a_i=self.a_i, b_j=b_point, r_j=d.r_j, ts1=ts1,
            )

    def make_notification(self, resp: msgs.HandoverResponse) -> msgs.HandoverNotification:
        state = self._handovers.get(resp.id_g2)
        if state is None:
            raise Reject(RejectReason.UNKNOWN_TID, "no handover outstanding for this cell")
        with self._metered(Phase.INTRA):
            self._check_fresh(resp.ts2, "TS2")
            pk_g = self.directory.gnb_pk(resp.id_g2)
            mac2 = hashing.h2(pk_g.mul(s_mul(state.b_j, resp.h5)), resp.c_g2, resp.ts2)
            if mac2 != resp.mac2:
                raise Reject(RejectReason.MAC, "MAC2 invalid")
            ts3 = self.clock()
            mac3 = hashing.h2(
                self.k_ij, hashing.as_scalar(resp.h5), resp.c_g2, resp.id_g2, ts3
            )
            h6 = hashing.xor_bytes(hashing.scalar_to_digest(resp.h5), mac3)
            del self._handovers[resp.id_g2]
            return msgs.HandoverNotification(
                c_g2=resp.c_g2, id_g2=resp.id_g2, h6=h6, ts3=ts3
            )

    def handle_anchor_update(self, upd: msgs.AnchorUpdate) -> bytes:
        """Verify the device's new temporary identity for the target domain."""
        with self._metered(Phase.INTER):
            try:
                plain = aead.decrypt(self.k_ij, upd.e2, ANCHOR_AAD)
            except aead.AeadError as exc:
                raise Reject(RejectReason.MAC, str(exc)) from None
            guti_star, ts5 = plain[:16], int.from_bytes(plain[16:24], "big")
            if hashing.h4(self.k_ij, guti_star, ts5) != upd.mac5:
                raise Reject(RejectReason.MAC, "MAC5 invalid")
            self._check_fresh(ts5, "TS5")
            self.guti_star = guti_star
            return guti_star

    def make_inter_request(self) -> msgs.InterDelegationRequest:
        if self.delegation is None or self.guti_star is None:
            raise Reject(RejectReason.TOKEN, "inter-domain state incomplete")
        with self._metered(Phase.INTER):
            l = rand_scalar(self.rng)
            l_point = self.params.g1.mul(l)
            ts6 = self.clock()
            mu_j = hashing.h2(l_point, self.id_j, self.guti_star, ts6)
            v_j = (self.delegation.delta + l + _digest_scalar(mu_j) * self.keys.sk) % Q
            return msgs.InterDelegationRequest(id_j=self.id_j, v_j=v_j, mu_j=mu_j, ts6=ts6)

    def unwrap_inter_delegation(self, resp: msgs.InterDelegationResponse,
                                amf_ident: bytes) -> AccessDelegation:
        if self.guti_star is None:
            raise Reject(RejectReason.TOKEN, "no inter-domain identity held")
        with self._metered(Phase.INTER):
            self._check_fresh(resp.ts7, "TS7")
            mask = hashing.h2_mask(
                (resp.r_j_star.mul(self.keys.sk), resp.ts7), groups.SCALAR_LEN
            )
            try:
                delta = groups.scalar_from_bytes(hashing.xor_bytes(resp.w3, mask))
            except ValueError as exc:
                raise Reject(RejectReason.SIGNATURE, f"delegation unblinding: {exc}") from None
            h1v = hashing.h0(self.guti_star, resp.r_j_star)
            h2v = hashing.h0(self.id_j, self.keys.pk)
            lhs = self.params.g1.mul(delta)
            rhs = (
                self.directory.amf_pk(amf_ident)
                .add(self.directory.amf_bpk(amf_ident).mul(h1v))
                .add(resp.r_j_star.mul(h2v))
            )
            if lhs != rhs:
                raise Reject(RejectReason.SIGNATURE, "delegation public check failed")
            self.delegation = AccessDelegation(
                delta=delta, r_j=resp.r_j_star, guti=self.guti_star,
                id_j=self.id_j, amf_ident=amf_ident,
            )
            return self.delegation


# ---------------------------------------------------------------------------
# Mobile device


class MobileDevice(Entity):
    role = "md"

    def __init__(self, supi: bytes, params: SystemParams, directory: KeyDirectory,
                 rng: random.Random, **kw):
        super().__init__(supi, directory, rng, **kw)
        self.params = params
        self.supi = supi
        sk = rand_scalar(rng)
        with metering.paused():
            pk = params.g1.mul(sk)
            pk2 = params.g2.mul(sk)
        self.keys = EntityKeys(ident=supi, sk=sk, pk=pk, pk2=pk2)
        self.k_ij: bytes = b""
        self.k_seaf: bytes = b""
        self.guti: bytes = b""
        self.dt_pk: PointG1 | None = None
        self.dt_ident: bytes = b""
        self.a_i: int | None = None
        self.sessions: dict[bytes, SessionKeys] = {}

    def provision(self, k_ij: bytes, dt_pk: PointG1, dt_ident: bytes) -> None:
        self.k_ij = k_ij
        self.dt_pk = dt_pk
        self.dt_ident = dt_ident

    def set_anchor(self, guti: bytes, k_seaf: bytes) -> None:
        self.guti = guti
        self.k_seaf = k_seaf

    def make_token(self) -> msgs.AuthorizedToken:
        """Authorize the twin: fresh session point plus a blinded pairing
        value bound to the anchor key."""
        with self._metered(Phase.DELEGATION):
            a = rand_scalar(self.rng)
            a_point = self.keys.pk.mul(a)
            n_i = self.rng.getrandbits(128)
            t_i = hashing.h5(hashing.xor_bytes(self.k_seaf, n_i.to_bytes(16, "big")))
            d_i = self.dt_pk.mul(t_i)
            u_i = pairing(d_i.mul(self.keys.sk), self.params.g2)
            plain = a_point.encode() + u_i.encode() + self.guti + n_i.to_bytes(16, "big")
            e1 = aead.encrypt(self.k_ij, plain, TOKEN_AAD, self.rng)
            mac1 = hashing.h3(self.k_ij, a_point, u_i, self.guti, n_i)
            self.a_i = a
            return msgs.AuthorizedToken(e1=e1, mac1=mac1)

    def process_notification(
        self, note: msgs.HandoverNotification
    ) -> tuple[SessionKeys, msgs.HandoverAck] | Fallback:
        """Derive the session keys and produce the key-confirmation ack, or a
        fallback signal telling the device to re-run the standard procedure."""
        if self.a_i is None:
            return Fallback(RejectReason.TOKEN, "no token session scalar retained")
        with self._metered(Phase.INTRA):
            if abs(self.clock() - note.ts3) > self.delta_t_ms:
                return Fallback(RejectReason.FRESHNESS, "TS3 outside freshness window")
            k_point = note.c_g2.mul(s_mul(self.a_i, self.keys.sk))
            k_gnb = hashing.h2(k_point, self.guti, note.id_g2)
            tid = hashing.h4(k_gnb, self.guti, note.id_g2)
            tck = hashing.kdf(k_gnb, ENC_LABEL)
            tik = hashing.kdf(k_gnb, INT_LABEL)
            h5v = hashing.h5(tik, tid, self.dt_ident)
            mac3 = hashing.xor_bytes(note.h6, hashing.scalar_to_digest(h5v))
            expected = hashing.h2(
                self.k_ij, hashing.as_scalar(h5v), note.c_g2, note.id_g2, note.ts3
            )
            if mac3 != expected:
                return Fallback(RejectReason.MAC, "MAC3 invalid")
            ts4 = self.clock()
            mac4 = hashing.h2(tik, tid, ts4)
            keys = SessionKeys(k_gnb=k_gnb, tck=tck, tik=tik, tid=tid, k_point=k_point)
            self.sessions[tid] = keys
            return keys, msgs.HandoverAck(tid=tid, mac4=mac4, ts4=ts4)

    def update_anchor(self, id_a2: bytes) -> msgs.AnchorUpdate:
        """Move the anchor to the target domain and tell the twin."""
        with self._metered(Phase.INTER):
            k_seaf_star = hashing.kdf(
                self.k_seaf, hashing.kdf_label(ANCHOR_LABEL, self.supi, id_a2)
            )
            guti_star = hashing.h4(self.supi, k_seaf_star)
            ts5 = self.clock()
            plain = guti_star + ts5.to_bytes(8, "big")
            e2 = aead.encrypt(self.k_ij, plain, ANCHOR_AAD, self.rng)
            mac5 = hashing.h4(self.k_ij, guti_star, ts5)
            self.k_seaf = k_seaf_star
            self.guti = guti_star
            return msgs.AnchorUpdate(e2=e2, mac5=mac5)

