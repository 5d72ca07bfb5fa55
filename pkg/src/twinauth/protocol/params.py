"""System initialization: public parameters, partial keys, twin identities."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..crypto import hashing
from ..crypto.groups import PointG1, PointG2, Q, rand_scalar

SUPPORTED_KAPPA = (128,)


@dataclass(frozen=True)
class SystemParams:
    """Public parameters published after system initialization."""

    kappa: int
    q: int
    g1: PointG1
    g2: PointG2
    pk_pub: PointG1


def system_init(kappa: int, rng: random.Random) -> tuple[SystemParams, int]:
    """Generate public parameters and the master secret (kept by the AUSF)."""
    if kappa not in SUPPORTED_KAPPA:
        raise ValueError(f"unsupported security parameter {kappa}")
    s = rand_scalar(rng)
    params = SystemParams(
        kappa=kappa,
        q=Q,
        g1=PointG1.generator(),
        g2=PointG2.generator(),
        pk_pub=PointG1.generator().mul(s),
    )
    return params, s


def issue_partial_key(
    params: SystemParams, s: int, ident: bytes, pk: PointG1, rng: random.Random
) -> tuple[int, PointG1]:
    """Bind an entity identity to the master key: x = y + s*H0(ID, pk)."""
    if not pk.on_curve():
        raise ValueError("public key not on curve")
    y = rand_scalar(rng)
    big_y = params.g1.mul(y)
    x = (y + s * hashing.h0(ident, pk)) % Q
    return x, big_y


def verify_partial_key(
    params: SystemParams, ident: bytes, pk: PointG1, x: int, big_y: PointG1
) -> bool:
    """Accept iff x*P = Y + H0(ID, pk)*pk_pub."""
    lhs = params.g1.mul(x)
    rhs = big_y.add(params.pk_pub.mul(hashing.h0(ident, pk)))
    return lhs == rhs


def bound_public_key(
    params: SystemParams, ident: bytes, pk: PointG1, big_y: PointG1
) -> PointG1:
    """bpk = Y + H0(ID, pk)*pk_pub, the public image of the partial key."""
    return big_y.add(params.pk_pub.mul(hashing.h0(ident, pk)))


@dataclass(frozen=True)
class DtIdentityRecord:
    """Anonymous twin identity and the trace handle kept by the UDM."""

    id_j: bytes
    u_point: PointG1


def create_dt_identity(
    params: SystemParams, s: int, supi: bytes, rng: random.Random
) -> DtIdentityRecord:
    """ID_j = SUPI xor H1(s*U_j) with fresh U_j = u*P."""
    if len(supi) != hashing.DIGEST_LEN:
        raise ValueError("SUPI must be 128 bits")
    u = rand_scalar(rng)
    u_point = params.g1.mul(u)
    id_j = hashing.xor_bytes(supi, hashing.h1(u_point.mul(s)))
    return DtIdentityRecord(id_j=id_j, u_point=u_point)


def trace_identity(s: int, id_j: bytes, u_point: PointG1) -> bytes:
    """Recover SUPI = ID_j xor H1(s*U_j); requires the master secret."""
    return hashing.xor_bytes(id_j, hashing.h1(u_point.mul(s)))
