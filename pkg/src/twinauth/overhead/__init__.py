"""Analytic overhead models and run-time cost accounting."""

from .constants import DEFAULT_COSTS, CostConstants, RoleCosts
from .ledger import CostLedger
from .schemes import (
    SCHEME_NAMES,
    SchemeModel,
    analytic_communication,
    analytic_computation,
    analytic_signaling,
    get_scheme,
)
from .unknown import (
    com_fail,
    foreign_com_steps,
    ours_com_steps,
    ours_com_succ,
    sweep,
    unknown_attack_average,
)
from .report import ledger_vs_analytic, write_tables
