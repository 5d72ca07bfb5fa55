"""Run-time cost accounting: primitive op tallies, message counts, bit counts.

Bits are nominal wire sizes (group element 256, hash/MAC/nonce/identity 128,
timestamp 32), matching the evaluation's conventions rather than the concrete
curve encodings.  Communication overhead for the unknown-attack model counts
wireless links only (control plane MD<->gNB plus the DT->MD data plane).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

WIRELESS_LINKS = {"md-gnb", "md-dt"}


@dataclass
class CostLedger:
    ops: Counter = field(default_factory=Counter)  # (role, phase, kind) -> count
    messages: Counter = field(default_factory=Counter)  # (link, direction) -> count
    bits: Counter = field(default_factory=Counter)  # (link, direction) -> bits
    wireless_bits: int = 0

    def count_op(self, role: str, phase: str, kind: str) -> None:
        self.ops[(role, phase, kind)] += 1

    def count_message(self, link: str, direction: str, bits: int) -> None:
        self.messages[(link, direction)] += 1
        self.bits[(link, direction)] += bits
        if link in WIRELESS_LINKS:
            self.wireless_bits += bits

    def op_total(self, role: str, kind: str, phase: str | None = None) -> int:
        return sum(
            count
            for (r, p, k), count in self.ops.items()
            if r == role and k == kind and (phase is None or p == phase)
        )

    def link_bits(self, link: str, direction: str) -> int:
        return self.bits[(link, direction)]

    def link_messages(self, link: str, direction: str | None = None) -> int:
        if direction is None:
            return sum(c for (l, _), c in self.messages.items() if l == link)
        return self.messages[(link, direction)]

    def as_dict(self) -> dict:
        return {
            "ops": {f"{r}/{p}/{k}": c for (r, p, k), c in sorted(self.ops.items())},
            "messages": {f"{l}/{d}": c for (l, d), c in sorted(self.messages.items())},
            "bits": {f"{l}/{d}": c for (l, d), c in sorted(self.bits.items())},
            "wireless_bits": self.wireless_bits,
        }
