"""Deterministic network simulator with a scriptable Dolev-Yao adversary."""

from .adversary import AdversaryAction, DolevYaoAdversary, ThreatModelViolation
from .network import Network
from .runner import RunResult, run_scenario
from .scenario import ScenarioScript, inter_scenario, intra_happy_path
