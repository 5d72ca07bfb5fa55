"""Primitive-operation accounting hooks.

The crypto layer reports each costed primitive (pairing, GT exponentiation,
point multiplication, hash/KDF invocation) through a context-bound recorder.
Entities wrap their protocol steps in `recording(...)` so the simulator's cost
ledger can attribute every op to a (role, phase) pair.  Outside a recording
context the hooks are no-ops, so the crypto API stays usable standalone.

Op kinds mirror the measured primitive classes: t_p pairing, t_e modular
exponentiation, t_m ec scalar multiplication, t_r signature verification
(unused by this scheme, present for ledger completeness), t_h hash.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

OP_KINDS = ("t_p", "t_e", "t_m", "t_r", "t_h")

_sink: ContextVar = ContextVar("twinauth_op_sink", default=None)


def record(kind: str) -> None:
    sink = _sink.get()
    if sink is not None:
        sink(kind)


@contextmanager
def recording(sink):
    """Route op records to `sink(kind)` for the duration of the block."""
    token = _sink.set(sink)
    try:
        yield
    finally:
        _sink.reset(token)


@contextmanager
def paused():
    """Suppress op recording (setup-time precomputation, test plumbing)."""
    token = _sink.set(None)
    try:
        yield
    finally:
        _sink.reset(token)
