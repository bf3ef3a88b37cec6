import random
from math import isqrt

import pytest

from cubicha.errors import DegenerateFormError, FactorizationLimitError
from cubicha.quadrep import (
    DEFINITE,
    DEGENERATE,
    INDEFINITE,
    FormProblem,
    pell_fundamental,
    solve_definite,
    solve_degenerate,
    solve_indefinite,
    solve_with_conditions,
)


def brute_box(dabs, n, box):
    # oracle: exhaustive search of x^2 - dabs*y^2 = n with |x|, |y| <= box
    out = set()
    for y in range(-box, box + 1):
        r = n + dabs * y * y
        if r < 0:
            continue
        x = isqrt(r)
        if x * x == r and x <= box:
            out.add((x, y))
            out.add((-x, y))
    return out


def orbit_closure(cert, dabs, n, box):
    t, u = cert.fundamental
    cap = (2 * t + 2 * dabs * u) * (box + 10) + abs(n)
    seen, out = set(), set()
    stack = list(cert.representatives)
    while stack:
        x, y = stack.pop()
        if (x, y) in seen:
            continue
        seen.add((x, y))
        if abs(x) <= box and abs(y) <= box:
            out.add((x, y))
        for sgn in (1, -1):
            nx, ny = t * x + sgn * dabs * u * y, sgn * u * x + t * y
            if abs(nx) <= cap and abs(ny) <= cap:
                stack.append((nx, ny))
    return out


class TestSolveDefinite:
    def test_example_243(self):
        sols = set(solve_definite(243, 324))
        assert sols == {(18, 0), (-18, 0), (9, 1), (-9, 1), (9, -1), (-9, -1)}

    def test_negative_target_empty(self):
        assert solve_definite(243, -324) == []

    def test_example_12_12(self):
        assert set(solve_definite(12, 12)) == {(0, 1), (0, -1)}

    def test_matches_enumeration(self):
        rng = random.Random(0)
        for _ in range(150):
            d = rng.randint(1, 400)
            n = rng.randint(-2000, 2000)
            if n == 0:
                continue
            got = set(solve_definite(d, n))
            want = set()
            y = 0
            while d * y * y <= max(n, 0):
                r = n - d * y * y
                if r >= 0:
                    x = isqrt(r)
                    if x * x == r:
                        want |= {(x, y), (-x, y), (x, -y), (-x, -y)}
                y += 1
            assert got == want, (d, n)


class TestPellFundamental:
    def test_frozen_values(self):
        assert pell_fundamental(69) == (7775, 936)
        assert pell_fundamental(405) == (161, 8)
        assert pell_fundamental(2) == (3, 2)

    def test_verifies(self):
        for d in (69, 405, 2, 61, 109):
            t, u = pell_fundamental(d)
            assert t * t - d * u * u == 1

    def test_minimality_small(self):
        for d in (2, 3, 5, 6, 7, 10, 13):
            t, u = pell_fundamental(d)
            uu = 1
            while True:
                tt = isqrt(1 + d * uu * uu)
                if tt * tt == 1 + d * uu * uu:
                    break
                uu += 1
            assert (t, u) == (tt, uu)

    def test_square_rejected(self):
        with pytest.raises(DegenerateFormError):
            pell_fundamental(36)


class TestSolveIndefinite:
    def test_example_69(self):
        cert = solve_indefinite(-69, 12)
        assert cert.kind == INDEFINITE
        assert cert.fundamental == (7775, 936)
        assert (9, 1) in cert.representatives
        for x, y in cert.representatives:
            assert x * x - 69 * y * y == 12

    def test_example_405(self):
        cert = solve_indefinite(-405, 324)
        assert (27, 1) in cert.representatives
        assert (18, 0) in cert.representatives

    def test_zero_target_rejected(self):
        with pytest.raises(AssertionError):
            solve_indefinite(-69, 0)

    def test_automorph_closure(self):
        cert = solve_indefinite(-69, 12)
        t, u = cert.fundamental
        for x, y in cert.representatives:
            nx, ny = t * x + 69 * u * y, u * x + t * y
            assert nx * nx - 69 * ny * ny == 12

    def test_oracle_equivalence_randomized(self):
        rng = random.Random(42)
        box = 2000
        done = 0
        while done < 60:
            d = rng.randint(2, 500)
            if isqrt(d) ** 2 == d:
                continue
            n = rng.randint(-(10**4), 10**4)
            if n == 0:
                continue
            cert = solve_indefinite(-d, n)
            assert orbit_closure(cert, d, n, box) == brute_box(d, n, box), (d, n)
            done += 1

    def test_empty_certificate_means_empty(self):
        # x^2 - 7y^2 = 3 has no solutions (3 is not a QR pattern mod 7 orbits)
        cert = solve_indefinite(-7, 3)
        assert cert.representatives == ()
        assert brute_box(7, 3, 500) == set()


class TestSolveDegenerate:
    def test_example_k3(self):
        sols = solve_degenerate(-9, 27)
        assert (6, 1) in sols
        for x, y in sols:
            assert x * x - 9 * y * y == 27

    def test_example_k1(self):
        assert (3, 2) in solve_degenerate(-1, 5)

    def test_complete_via_enumeration(self):
        for d, n in [(-9, 27), (-1, 5), (-36, 720), (-4, -32), (-25, 100)]:
            k = isqrt(-d)
            got = set(solve_degenerate(d, n))
            want = set()
            for y in range(-abs(n) - 1, abs(n) + 2):
                r = n + k * k * y * y
                if r < 0:
                    continue
                x = isqrt(r)
                if x * x == r:
                    want |= {(x, y), (-x, y)}
            assert got == want, (d, n)

    def test_factorization_limit_surfaces(self):
        n = 1000003 * 1000033
        with pytest.raises(FactorizationLimitError) as exc:
            solve_degenerate(-1, n, limit=1000)
        assert exc.value.limit == 1000


class TestSolveWithConditions:
    def test_worked_instance_1_1(self):
        p = FormProblem(d=-69, n=12, modulus=6, ycoef=9, require_y_not_div3=True)
        match, cert = solve_with_conditions(p)
        assert match is not None
        x, y, branch = match
        assert x * x - 69 * y * y == 12
        assert y % 3 != 0
        assert (9 * y + branch * x) % 6 == 0
        # the hand example: (9, 1) satisfies 6 | 9 + 9
        assert (9 * 1 + 9) % 6 == 0

    def test_worked_instance_3_1(self):
        p = FormProblem(d=243, n=324, modulus=18, ycoef=9)
        match, cert = solve_with_conditions(p)
        assert cert.kind == DEFINITE
        assert match is not None
        x, y, branch = match
        assert x * x + 243 * y * y == 324
        assert (9 * y + branch * x) % 18 == 0
        # the hand example: (9, 1) gives 9 + 9 = 18, divisible by 18
        assert (9 * 1 + 9) % 18 == 0

    def test_worked_instance_6_1_none(self):
        # definite, both 648 and -648 unrepresentable by x^2 + 2511 y^2
        for n in (648, -648):
            p = FormProblem(d=2511, n=n, modulus=36, ycoef=9)
            match, cert = solve_with_conditions(p)
            assert match is None
            assert cert.representatives == ()

    def test_condition_y_not_div3_filters(self):
        # x^2 - 69y^2 = 12 has solutions with y = 0 mod 3 in other orbits;
        # the returned one must respect the filter
        p = FormProblem(d=-69, n=12, modulus=6, ycoef=9, require_y_not_div3=True)
        match, _ = solve_with_conditions(p)
        assert match is not None and match[1] % 3 != 0

    def test_none_reverified_by_exhaustion(self):
        # small indefinite problems reported NONE: check against the box oracle
        rng = random.Random(5)
        done = 0
        while done < 25:
            d = rng.randint(2, 200)
            if isqrt(d) ** 2 == d:
                continue
            n = rng.choice([12, -12, 24, -24, 36, -36])
            modulus = rng.choice([6, 12, 18])
            ycoef = rng.choice([9, 18, 27])
            p = FormProblem(d=-d, n=n, modulus=modulus, ycoef=ycoef)
            match, cert = solve_with_conditions(p)
            if match is not None:
                x, y, branch = match
                assert x * x - d * y * y == n
                assert (ycoef * y + branch * x) % modulus == 0
            else:
                for x, y in brute_box(d, n, 3000):
                    assert (ycoef * y + x) % modulus != 0
                    assert (ycoef * y - x) % modulus != 0
            done += 1

    def test_degenerate_route(self):
        # 3*delta = -2916 = -(54^2) for (a, b) = (-6, 2); targets are -+1296
        p = FormProblem(d=-2916, n=1296, modulus=36, ycoef=18)
        match, cert = solve_with_conditions(p)
        assert cert.kind == DEGENERATE
        assert match is not None
        x, y, branch = match
        assert x * x - 2916 * y * y == 1296
        # the opposite sign has no divisor pair meeting the parity constraints
        p_neg = FormProblem(d=-2916, n=-1296, modulus=36, ycoef=18)
        match_neg, cert_neg = solve_with_conditions(p_neg)
        assert cert_neg.kind == DEGENERATE and match_neg is None

    def test_modulus_must_be_divisible_by_6(self):
        with pytest.raises(AssertionError):
            FormProblem(d=-69, n=12, modulus=5, ycoef=9)
