"""Acceptance gate: every exit criterion, one pass/fail line each.

Heavy simulation runs are shared through a session-scoped context, so each
criterion evaluates on the same cached scenarios the others use.
"""

import pytest

from twinauth import acceptance


@pytest.fixture(scope="module")
def ctx():
    return acceptance.AcceptanceContext(seed=acceptance.DEFAULT_SEED)


def _check(result):
    print(result.line())
    assert result.passed, result.detail


def test_criterion_1_key_agreement(ctx):
    _check(acceptance.criterion_1(ctx))


def test_criterion_2_delegation_soundness(ctx):
    _check(acceptance.criterion_2(ctx))


def test_criterion_3_request_verification_sweep(ctx):
    _check(acceptance.criterion_3(ctx))


def test_criterion_4_batch_individual_equivalence(ctx):
    _check(acceptance.criterion_4(ctx))


def test_criterion_5_communication_accounting(ctx):
    _check(acceptance.criterion_5(ctx))


def test_criterion_6_computation_accounting(ctx):
    _check(acceptance.criterion_6(ctx))


def test_criterion_7_signaling(ctx):
    _check(acceptance.criterion_7(ctx))


def test_criterion_8_unknown_attack_model(ctx):
    _check(acceptance.criterion_8(ctx))


def test_criterion_9_security_properties(ctx):
    _check(acceptance.criterion_9(ctx))


def test_criterion_10_inter_domain(ctx):
    _check(acceptance.criterion_10(ctx))
