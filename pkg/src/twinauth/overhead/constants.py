"""Measured per-primitive costs (milliseconds) used by the analytic models.

Defaults are the published bench figures for a mobile device and a base
station; twins are costed with base-station constants.  All values are
configurable inputs, never re-measured here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class RoleCosts:
    t_p: float  # pairing
    t_e: float  # modular exponentiation
    t_m: float  # ec scalar multiplication
    t_r: float  # signature verification
    t_h: float  # hash

    def cost(self, kind: str) -> float:
        return getattr(self, kind)


@dataclass(frozen=True)
class CostConstants:
    md: RoleCosts
    bs: RoleCosts

    def __post_init__(self):
        for role in (self.md, self.bs):
            for kind in ("t_p", "t_e", "t_m", "t_r", "t_h"):
                if role.cost(kind) <= 0:
                    raise ValueError("cost constants must be positive")


DEFAULT_COSTS = CostConstants(
    md=RoleCosts(t_p=2.87, t_e=0.225, t_m=0.203, t_r=0.127, t_h=0.0013),
    bs=RoleCosts(t_p=0.762, t_e=0.034, t_m=0.03, t_r=0.019, t_h=0.0008),
)
