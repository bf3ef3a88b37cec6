import pytest

from cubicha.arith import factorize
from cubicha.assocorder import CASE1, CASE2, CASE3, classify
from cubicha.cubicfield import validate
from cubicha.errors import ValidationError
from cubicha.freeness import FREE, NOT_FREE
from cubicha.integrality import (
    MAXIMAL,
    NOT_MAXIMAL,
    UNDECIDED_FACTORIZATION,
    alaca_condition,
    combined_verdict,
    dedekind_check,
    is_maximal,
)


def grid(bound):
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 or b == 0:
                continue
            try:
                yield validate(a, b)
            except ValidationError:
                continue


class TestAlacaCondition:
    def test_worked_rows(self):
        assert alaca_condition(validate(1, 1), 2) == (True, "2a")
        assert alaca_condition(validate(3, 1), 3) == (True, "3d")
        ok, label = alaca_condition(validate(17, 1), 5)
        assert not ok  # v5(delta) = 3 with v5(a) = v5(b) = 0

    def test_vacuous_primes_pass(self):
        for k in [validate(1, 1), validate(6, 1), validate(-5, 7)]:
            for p in (5, 7, 11, 13, 101):
                if k.delta % p != 0:
                    ok, _ = alaca_condition(k, p)
                    assert ok


class TestIsMaximal:
    def test_worked_instances(self):
        assert is_maximal(validate(1, 1)).status == MAXIMAL
        rep = is_maximal(validate(17, 1))
        assert rep.status == NOT_MAXIMAL and rep.failing_prime == 5
        assert is_maximal(validate(6, 1)).status == MAXIMAL

    def test_delta_factorization_recorded(self):
        rep = is_maximal(validate(17, 1))
        assert dict(rep.delta_factors) == {5: 3, 157: 1}
        assert rep.cofactor == 1

    def test_per_prime_rows(self):
        rep = is_maximal(validate(6, 1))  # delta = 837 = 3^3 * 31
        primes = [p for p, _, _ in rep.per_prime]
        assert primes == [2, 3]  # 31 has exponent 1, cannot fail

    def test_undecided_on_unfactorable_cofactor(self):
        rep = is_maximal(validate(17, 1), limit=3)
        assert rep.status == UNDECIDED_FACTORIZATION
        assert rep.cofactor == 19625

    def test_definite_failure_beats_undecided(self):
        # (1, 4) fails at p = 2 regardless of what remains unfactored
        rep = is_maximal(validate(1, 4), limit=2)
        assert rep.status == NOT_MAXIMAL and rep.failing_prime == 2


class TestDedekind:
    def test_worked_instances(self):
        assert dedekind_check(validate(17, 1), 5) is False
        assert dedekind_check(validate(1, 1), 23) is True
        assert dedekind_check(validate(3, 1), 3) is True

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            dedekind_check(validate(1, 1), 6)

    def test_squarefree_reduction_passes(self):
        # p coprime to delta: f stays squarefree mod p
        k = validate(1, 1)
        for p in (2, 3, 5, 7, 11, 13):
            if k.delta % p != 0:
                assert dedekind_check(k, p)

    def test_referee_agreement_grid(self):
        for k in grid(15):
            factors, cofactor = factorize(k.delta)
            assert cofactor == 1
            for p in sorted({2, 3} | {p for p, e in factors.items() if e >= 2}):
                table_ok, _ = alaca_condition(k, p)
                assert table_ok == dedekind_check(k, p), (k.a, k.b, p)

    def test_against_sympy_round_two(self):
        round_two = pytest.importorskip("sympy.polys.numberfields.basis").round_two
        from sympy import Poly, Symbol, ZZ

        x = Symbol("x")
        checked = 0
        for k in grid(6):
            _, dk = round_two(Poly(x**3 - k.a * x + k.b, x, domain=ZZ))
            assert (int(dk) == k.delta) == is_maximal(k).is_maximal, (k.a, k.b)
            checked += 1
        assert checked > 50


class TestCombinedVerdict:
    def test_worked_instances(self):
        v = combined_verdict(validate(1, 1))
        assert v.maximality.is_maximal and v.ring_of_integers_free == FREE
        v = combined_verdict(validate(6, 1))
        assert v.maximality.is_maximal and v.ring_of_integers_free == NOT_FREE
        v = combined_verdict(validate(17, 1))
        assert not v.maximality.is_maximal
        assert v.ring_of_integers_free is None
        assert v.freeness.verdict in (FREE, NOT_FREE)  # Z[alpha] verdict still given

    def test_case_consistency_when_maximal(self):
        from cubicha.arith import valuation

        for k in grid(12):
            if not is_maximal(k).is_maximal:
                continue
            case = classify(k)
            v3a, v3b = valuation(k.a, 3), valuation(k.b, 3)
            if case.major == CASE1:
                assert v3a == 0
            elif case.major == CASE2:
                assert v3a == v3b == 1, (k.a, k.b)
            else:
                assert case.major == CASE3 and v3a > v3b
