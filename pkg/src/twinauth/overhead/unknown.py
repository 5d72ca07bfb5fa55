"""Average overhead under unknown attacks.

An unknown attack strikes uniformly at one of the N protocol message steps
(q = 1/N); Com_i is the overhead already spent when the attack hits step i,
and a struck run must be retried.  The resulting average is

       Com_avg = (Com_fail * p_fail + Com_succ * (1 - p_fail)) / (1 - p_fail)

with Com_fail the mean of the per-step prefix costs.
"""

from __future__ import annotations

from .schemes import SCHEME_NAMES, get_scheme


def com_fail(com_steps: list) -> float:
    """Mean prefix cost: sum(Com_i)/N under the uniform step-failure model."""
    if not com_steps:
        raise ValueError("need at least one protocol step")
    return sum(com_steps) / len(com_steps)


def unknown_attack_average(com_steps: list, com_succ: float, p_fail: float) -> float:
    if not 0.0 <= p_fail < 1.0:
        raise ValueError("p_fail must be in [0, 1)")
    fail = com_fail(com_steps)
    return (fail * p_fail + com_succ * (1.0 - p_fail)) / (1.0 - p_fail)


def ours_com_steps(n: int) -> list:
    """Per-step prefix costs for this scheme's intra-domain run with n devices:
    n requests and n responses ride the untapped wired segments (no wireless
    cost), then n 544-bit notifications and n 288-bit confirmations."""
    per_message = [0] * n + [0] * n + [544] * n + [288] * n
    steps = []
    acc = 0
    for bits in per_message:
        steps.append(acc)
        acc += bits
    return steps


def ours_com_succ(n: int) -> int:
    """Wireless bits of a successful run including the data-plane delivery."""
    return (544 + 288) * n


def foreign_com_steps(scheme: str, n: int) -> list:
    """Uniform-split prefix model for compared schemes: the published total
    spread evenly over that scheme's per-device message count."""
    model = get_scheme(scheme)
    total = model.communication_bits(n)[2]
    n_msgs = max(1, round(model.signaling_units(1)))
    return [total * i / n_msgs for i in range(n_msgs)]


def sweep(p_values, n: int = 20) -> list:
    """Rows (scheme, p_fail, Com_avg) for every scheme at device count n."""
    rows = []
    for name in SCHEME_NAMES:
        if name == "Ours":
            steps = ours_com_steps(n)
            succ = ours_com_succ(n)
        else:
            steps = foreign_com_steps(name, n)
            succ = get_scheme(name).communication_bits(n)[2]
        for p in p_values:
            rows.append((name, p, unknown_attack_average(steps, succ, p)))
    return rows
