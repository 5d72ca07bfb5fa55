"""Protocol rejection taxonomy.

Every verifier failure carries one enumerated reason so adversary tests can
assert the precise failure point.
"""

from __future__ import annotations

from enum import Enum


class RejectReason(Enum):
    FRESHNESS = "freshness"
    SIGNATURE = "signature"
    TOKEN = "token"
    MAC = "mac"
    UNKNOWN_TID = "unknown-tid"
    MALFORMED = "malformed"


class Reject(Exception):
    """A protocol message failed verification at its first verifier."""

    def __init__(self, reason: RejectReason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


class ConfigError(Exception):
    """Malformed scenario script or run configuration."""
