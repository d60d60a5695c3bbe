import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gadgetlab.amortization import CreditLedger, fit_exponent, keep_rule, record_phase


def test_record_phase_examples():
    ledger = CreditLedger(0.5)
    assert record_phase(ledger, 10, 100, 0) is False
    assert record_phase(ledger, 10, 100, 201) is True
    assert record_phase(ledger, 10, 100, 200) is False  # strict
    assert ledger.kept_cost == 201 and ledger.rolled_cost == 200
    assert ledger.replay_ok()


def test_record_phase_rejects_nonsense():
    with pytest.raises(ValueError):
        CreditLedger(0.5).record_phase(0, 10, 1)
    with pytest.raises(ValueError):
        CreditLedger(0.5).record_phase(1, 10, -1)


def test_tampered_ledger_fails_replay():
    ledger = CreditLedger(0.5)
    ledger.record_phase(10, 100, 500)
    ledger.kept_cost += 1
    assert not ledger.replay_ok()


def test_ledger_json():
    ledger = CreditLedger(0.25)
    ledger.record_phase(3, 16, 13, color=2)  # 13 > 2 * 3 * 16**0.25
    doc = json.loads(json.dumps(ledger.to_json()))
    assert doc["phases"][0] == {"ops": 3, "n_hat": 16, "cost": 13, "kept": True, "color": 2}


def test_fit_examples():
    assert fit_exponent([(2, 4), (4, 16), (8, 64)]).exponent == pytest.approx(2.0, abs=1e-9)
    assert fit_exponent([(2, 8), (4, 64)]).exponent == pytest.approx(3.0, abs=1e-9)
    with pytest.raises(ValueError):
        fit_exponent([(4, 1), (4, 2)])
    with pytest.raises(ValueError):
        fit_exponent([(0, 1), (4, 2)])


@settings(max_examples=100)
@given(st.lists(st.integers(1, 1000), min_size=2, max_size=6, unique=True),
       st.integers(1, 50), st.integers(1, 3))
def test_fit_scale_invariant(sizes, scale, power):
    samples = [(n, n**power) for n in sizes]
    scaled = [(n, scale * c) for n, c in samples]
    assert fit_exponent(scaled).exponent == pytest.approx(fit_exponent(samples).exponent, abs=1e-9)
    assert fit_exponent(samples).exponent == pytest.approx(power, abs=1e-9)


@given(st.integers(1, 50), st.integers(1, 10_000), st.integers(0, 10**6),
       st.floats(0.01, 0.99))
def test_keep_rule_monotone_in_cost(k, n_hat, cost, alpha):
    if keep_rule(k, n_hat, cost, alpha):
        assert keep_rule(k, n_hat, cost + 1, alpha)
