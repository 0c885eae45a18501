"""Shared pytest wiring: one visible PASS/FAIL line per acceptance criterion."""

import pytest

ACCEPTANCE_LABELS = {
    "test_result_machine_truth_table": "cell result truth table (all five branches, in order)",
    "test_pair_column_mutual_exclusion": "staged pair column: mutual exclusion solves the odd cell (parity 2, idempotent)",
    "test_odd_parity_systems_error": "odd parity raises IntegrityError without mutation",
    "test_oracle_soundness_corpus": "oracle soundness over the verified corpus",
    "test_replay_determinism_1000": "replay determinism over 1000 randomized sequences",
    "test_integrity_gate": "integrity gate (no empties, no Valid-only duplicates, no mutation on rejection)",
    "test_service_contract_roundtrip": "service contract round trip (ledger byte-exact, replay matches)",
}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = ACCEPTANCE_LABELS.get(item.name)
    if label and report.when == "call":
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {verdict}: {label}", flush=True)
