"""One test per acceptance criterion; each prints a single PASS/FAIL line.

The lines are repeated in the pytest terminal summary; ``ord selftest``
runs the same checks from the shell.
"""
import pytest

from brwdec import selftest


@pytest.fixture
def check(acceptance_log):
    def run(fn):
        result = selftest.timed(fn)
        print("\n" + result.line())
        acceptance_log.append(result.line())
        assert result.passed, result.detail
    return run


def test_01_oracle_soundness(check):
    check(selftest.criterion_oracle_soundness)


def test_02_arithmetic_homomorphism(check):
    check(selftest.criterion_arith_homomorphism)


def test_03_limmin_laws(check):
    check(selftest.criterion_limmin_laws)


def test_04_limmax_property(check):
    check(selftest.criterion_limmax_property)


def test_05_semidecidable_round_trip(check):
    check(selftest.criterion_semidec_roundtrip)


def test_06_psi_n_exact_value(check):
    check(selftest.criterion_psi_n_exact)


def test_07_psi_n_reaches_w_times_2(check):
    check(selftest.criterion_psi_n_reaches_w2)


def test_08_exists_witness(check):
    check(selftest.criterion_exists_witness)


def test_09_twin_prime_ladder(check):
    check(selftest.criterion_twin_primes)


def test_10_exists_forall(check):
    check(selftest.criterion_exists_forall)


def test_11_sierpinski_agreement(check):
    check(selftest.criterion_sierpinski)


def test_12_fuel_monotonicity(check):
    check(selftest.criterion_fuel_monotonicity)


def test_13_cli_contract(check):
    check(selftest.criterion_cli)

