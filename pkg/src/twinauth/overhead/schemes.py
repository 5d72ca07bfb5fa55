"""Closed-form overhead models for the compared handover schemes.

Each scheme row is transcribed once from the comparison tables: signaling in
units of one control message `a`, per-role operation counts as (slope,
intercept) polynomials in the device count n, the published rounded total
coefficients, and communication bits split uplink/downlink.  Foreign-scheme
rows are reproduced as printed, including any rounding quirks; they are
models, not implementations.

`scenario` is "normal" (all handover computations) or "optimized" (only work
after the device enters the target cell).
"""

from __future__ import annotations

from dataclasses import dataclass

from .constants import CostConstants, DEFAULT_COSTS

SCENARIOS = ("normal", "optimized")


@dataclass(frozen=True)
class Poly:
    """slope*n + intercept"""

    slope: float
    intercept: float = 0.0

    def at(self, n: int) -> float:
        return self.slope * n + self.intercept


@dataclass(frozen=True)
class OpCounts:
    """Per-op-kind counts for one role, each a polynomial in n."""

    terms: tuple  # ((kind, Poly), ...)

    def cost(self, n: int, costs) -> float:
        return sum(poly.at(n) * costs.cost(kind) for kind, poly in self.terms)

    def count(self, kind: str, n: int) -> float:
        return sum(poly.at(n) for k, poly in self.terms if k == kind)


def _ops(*terms) -> OpCounts:
    return OpCounts(terms=tuple((kind, Poly(a, b)) for kind, a, b in terms))


@dataclass(frozen=True)
class SchemeModel:
    name: str
    signaling: Poly  # units of a
    uplink: Poly  # bits
    downlink: Poly
    total_comm: Poly
    md_ops: dict  # scenario -> OpCounts
    bs_ops: dict
    printed_total: dict  # scenario -> Poly (rounded ms coefficients as published)

    def computation_ms(self, n: int, scenario: str,
                       costs: CostConstants = DEFAULT_COSTS) -> float:
        """Evaluate the symbolic op counts with measured constants."""
        _check_scenario(scenario)
        return self.md_ops[scenario].cost(n, costs.md) + self.bs_ops[scenario].cost(n, costs.bs)

    def printed_total_ms(self, n: int, scenario: str) -> float:
        """Evaluate the published rounded coefficient form."""
        _check_scenario(scenario)
        return self.printed_total[scenario].at(n)

    def signaling_units(self, n: int) -> float:
        return self.signaling.at(n)

    def communication_bits(self, n: int) -> tuple:
        return (self.uplink.at(n), self.downlink.at(n), self.total_comm.at(n))


def _check_scenario(scenario: str) -> None:
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}")


SCHEMES = {}


def _scheme(name, signaling, up, down, total, md_n, bs_n, printed_n,
            md_o, bs_o, printed_o):
    SCHEMES[name] = SchemeModel(
        name=name,
        signaling=Poly(*signaling),
        uplink=Poly(*up),
        downlink=Poly(*down),
        total_comm=Poly(*total),
        md_ops={"normal": md_n, "optimized": md_o},
        bs_ops={"normal": bs_n, "optimized": bs_o},
        printed_total={"normal": Poly(*printed_n), "optimized": Poly(*printed_o)},
    )


_scheme(
    "5G-AKA", (5, 0), (256, 0), (256, 0), (512, 0),
    _ops(("t_h", 4, 0)), _ops(("t_h", 2, 0)), (0.016, 0),
    _ops(("t_h", 4, 0)), _ops(("t_h", 2, 0)), (0.016, 0),
)
_scheme(
    "Lai", (0, 2), (3328, 3328), (0, 6400), (3328, 9728),
    _ops(("t_m", 0, 2), ("t_h", 0, 1), ("t_r", 1, 0), ("t_p", 2, 0)),
    _ops(("t_e", 0, 3), ("t_m", 1, 0)),
    (5.897, 0.509),
    _ops(("t_r", 1, 0), ("t_p", 2, 0)),
    _ops(("t_m", 1, 0), ("t_e", 0, 3)),
    (5.897, 0.102),
)
_scheme(
    "Ma I", (0, 2), (128, 384), (0, 384), (128, 768),
    _ops(("t_h", 5, 0)), _ops(("t_h", 1, 0)), (0.007, 0),
    _ops(("t_h", 5, 0)), _ops(("t_h", 1, 0)), (0.007, 0),
)
_scheme(
    "Ma II", (0, 2), (384, 464), (0, 512), (384, 976),
    _ops(("t_m", 3, 0), ("t_h", 4, 0)), _ops(("t_m", 2, 0), ("t_h", 1, 0)), (0.675, 0),
    _ops(("t_m", 3, 0), ("t_h", 4, 0)), _ops(("t_m", 2, 0), ("t_h", 1, 0)), (0.675, 0),
)
_scheme(
    "Cao", (3, 0), (640, 0), (424, 0), (1184, 0),
    _ops(("t_h", 4, 0)), _ops(("t_h", 5, 0)), (0.0092, 0),
    _ops(("t_h", 3, 0)), _ops(("t_h", 3, 0)), (0.0063, 0),
)
_scheme(
    "Zhang", (3, 0), (928, 0), (928, 0), (1856, 0),
    _ops(("t_m", 6, 0), ("t_h", 4, 0)), _ops(("t_m", 6, 0), ("t_h", 5, 0)), (2.001, 0),
    _ops(("t_m", 3, 0), ("t_h", 2, 0)), _ops(("t_m", 3, 0), ("t_h", 6, 0)), (1.067, 0),
)
_scheme(
    "Yan", (2, 4), (288, 512), (32, 512), (320, 1024),
    _ops(("t_p", 5, 0), ("t_m", 7, 0), ("t_h", 8, 0)),
    _ops(("t_m", 2, 9), ("t_h", 4, 4), ("t_p", 0, 5)),
    (15.781, 0.063),
    _ops(("t_h", 2, 0)), _ops(("t_h", 2, 0)), (0.004, 0),
)
_scheme(
    "Gupta", (3, 0), (1104, 0), (1104, 0), (2208, 0),
    _ops(("t_m", 7, 0), ("t_h", 7, 0)), _ops(("t_m", 12, 0), ("t_h", 7, 0)), (1.878, 0),
    _ops(("t_m", 3, 0), ("t_h", 4, 0)), _ops(("t_m", 3, 0), ("t_h", 4, 0)), (0.754, 0),
)
_scheme(
    "He", (3, 0), (1128, 0), (384, 0), (1512, 0),
    _ops(("t_e", 3, 0), ("t_m", 4, 0)), _ops(("t_p", 3, 0), ("t_e", 1, 0), ("t_m", 0, 2)),
    (3.64, 0),
    _ops(("t_e", 1, 0)), _ops(("t_p", 3, 0), ("t_m", 1, 0)), (2.541, 0),
)
_scheme(
    "Wang", (3, 0), (672, 0), (832, 0), (1504, 0),
    _ops(("t_m", 2, 0), ("t_h", 2, 0)), _ops(("t_m", 7, 0), ("t_h", 5, 0)), (0.623, 0),
    _ops(("t_m", 2, 0), ("t_h", 2, 0)), _ops(("t_h", 1, 0)), (0.409, 0),
)
_scheme(
    "Li", (3, 0), (1712, 0), (1008, 0), (2720, 0),
    _ops(("t_m", 14, 0), ("t_h", 5, 0)), _ops(("t_m", 8, 0), ("t_h", 5, 0)), (3.093, 0),
    _ops(("t_m", 4, 0), ("t_h", 3, 0)), _ops(("t_m", 7, 0), ("t_h", 4, 0)), (1.029, 0),
)
_scheme(
    "Ours", (1, 0), (288, 0), (0, 0), (288, 0),
    _ops(("t_m", 1, 0), ("t_h", 7, 0)), _ops(("t_m", 5, 3), ("t_h", 11, 0)),
    (0.372, 0.09),
    _ops(("t_h", 1, 0)), _ops(("t_h", 1, 0)), (0.002, 0),
)

SCHEME_NAMES = tuple(SCHEMES)


def get_scheme(name: str) -> SchemeModel:
    try:
        return SCHEMES[name]
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}") from None


def analytic_computation(scheme: str, n: int, scenario: str,
                         costs: CostConstants = DEFAULT_COSTS) -> float:
    return get_scheme(scheme).computation_ms(n, scenario, costs)


def analytic_signaling(scheme: str, n: int) -> float:
    return get_scheme(scheme).signaling_units(n)


def analytic_communication(scheme: str, n: int) -> tuple:
    return get_scheme(scheme).communication_bits(n)
