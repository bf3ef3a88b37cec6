"""Cross-module invariant suites, runnable from the CLI (``cubicha verify``).

Each suite stresses an identity that ties two independently implemented
routes together (closed form vs generic reduction, table vs referee, solver
vs exhaustive search).  A suite returns the number of checks it performed and
raises AssertionError with a pinpointed message on the first violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import assocorder, cubicfield, exactlinalg, freeness, integrality, quadrep
from . import arith
from .errors import ValidationError


def validated_pairs(bound: int):
    """All validated (a, b) with 1 <= |a|, |b| <= bound, a-major order."""
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 or b == 0:
                continue
            try:
                yield cubicfield.validate(a, b)
            except ValidationError:
                continue


def random_valid_field(rng: random.Random, coeff_bound: int) -> cubicfield.TrinomialCubic:
    while True:
        a = rng.randint(-coeff_bound, coeff_bound)
        b = rng.randint(-coeff_bound, coeff_bound)
        try:
            return cubicfield.validate(a, b)
        except (ValidationError, ValueError):
            continue


def suite_euclid(rng: random.Random, grid: int) -> int:
    """EuclidTrace / ConvergentList identities on random (x, y)."""
    checks = 0
    for _ in range(max(200, 100 * grid)):
        x = rng.randint(-(10**9), 10**9)
        y = 0
        while y == 0:
            y = rng.randint(-(10**9), 10**9)
        tr = arith.euclid_trace(x, y)
        n = tr.n
        assert tr.r(-1) == x and tr.r(0) == y
        assert tr.gcd == tr.r(n) > 0
        assert tr.r(n + 1) == 0
        for i in range(-1, n):
            assert tr.r(i) == tr.quotients[i + 1] * tr.r(i + 1) + tr.r(i + 2)
        for i in range(0, n + 2):
            assert tr.r(i) == tr.mu[i] * x + tr.nu[i] * y, (x, y, i)
        assert tr.mu[n + 1] == (-1) ** n * y // tr.gcd
        assert tr.nu[n + 1] == (-1) ** (n + 1) * x // tr.gcd
        cv = arith.convergents(x, y)
        assert cv.p[n] * tr.gcd == x and cv.q[n] * tr.gcd == y
        for i in range(n + 1):
            assert gcd(cv.p[i], cv.q[i]) == 1
        for i in range(2, n + 1):
            q = tr.quotients[i]
            assert cv.p[i] == q * cv.p[i - 1] + cv.p[i - 2]
            assert cv.q[i] == q * cv.q[i - 1] + cv.q[i - 2]
        for i in range(1, n + 2):
            assert tr.mu[i] == (-1) ** (i - 1) * cv.q[i - 1]
            assert tr.nu[i] == (-1) ** i * cv.p[i - 1]
        checks += 1
    return checks


def suite_sqrt_cf(rng: random.Random, grid: int) -> int:
    """Period-end convergent of sqrt(d) solves t^2 - d*u^2 = +-1."""
    checks = 0
    for _ in range(max(20, 5 * grid)):
        d = rng.randint(2, 10**6)
        if isqrt(d) ** 2 == d:
            continue
        a0, period = arith.periodic_sqrt_cf(d)
        h0, h1 = 1, a0
        k0, k1 = 0, 1
        for a in period[: len(period) - 1]:
            h0, h1 = h1, a * h1 + h0
            k0, k1 = k1, a * k1 + k0
        assert h1 * h1 - d * k1 * k1 in (1, -1), d
        t, u = quadrep.pell_fundamental(d)
        assert t * t - d * u * u == 1 and t > 0 and u > 0
        checks += 1
    return checks


def suite_hopf(rng: random.Random, grid: int) -> int:
    """sqrt identity, module-algebra composition, trace identity."""
    checks = 0
    w = [cubicfield.HopfElement.of(*v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    for _ in range(max(30, 5 * grid)):
        k = random_valid_field(rng, 10**6)
        assert cubicfield.verify_sqrt_identity(k), k
        basis = cubicfield.gram_matrix(k)[0]
        for wi in w:
            for wj in w:
                prod = cubicfield.hopf_mul(k, wi, wj)
                for gamma in basis:
                    lhs = cubicfield.apply_hopf(k, wi, cubicfield.apply_hopf(k, wj, gamma))
                    rhs = cubicfield.apply_hopf(k, prod, gamma)
                    assert lhs == rhs, (k, wi, wj, gamma)
        w1_plus_w3 = cubicfield.HopfElement.of(1, 0, 1)
        for gamma in basis:
            image = cubicfield.apply_hopf(k, w1_plus_w3, gamma)
            tr = cubicfield.trace(k, gamma)
            assert image == (Fraction(tr), Fraction(0), Fraction(0)), (k, gamma)
        # action matrix rows match gram coordinates
        am = cubicfield.action_matrix(k)
        gm = cubicfield.gram_matrix(k)
        for j in range(3):
            for r in range(3):
                for i in range(3):
                    assert am.entries[3 * j + r][i] == gm[i][j].coords[r]
        checks += 1
    return checks


def suite_index_table(rng: random.Random, grid: int) -> int:
    """Generic reduction vs closed form on the grid: |det|, lattice, gcd."""
    checks = 0
    for k in validated_pairs(grid):
        case = assocorder.classify(k)
        closed = assocorder.closed_form_reduced(k)
        generic = exactlinalg.reduce_tall(cubicfield.action_matrix(k).to_rat()).d
        want = assocorder.index_of_case(case, k.g)
        assert abs(exactlinalg.det3(generic)) == want, (k, case)
        assert exactlinalg.lattice_equal3(closed, generic), k
        assocorder.h_closed_form(k)  # raises on closed form vs gcd mismatch
        checks += 1
    return checks


def suite_order_certificates(rng: random.Random, grid: int) -> int:
    """Full build() certificates plus membership predicate agreement."""
    checks = 0
    for k in validated_pairs(min(grid, 12)):
        order = assocorder.build(k)  # internal certificates run here
        basis_inv = exactlinalg.inverse3(assocorder.basis_matrix(order))
        for _ in range(5):
            h = cubicfield.HopfElement.of(
                Fraction(rng.randint(-24, 24), rng.randint(1, 12)),
                Fraction(rng.randint(-24, 24), rng.randint(1, 12)),
                Fraction(rng.randint(-24, 24), rng.randint(1, 12)),
            )
            direct = assocorder.in_order(order.reduced, h)
            # the same membership read as "integer combination of the basis"
            coeffs = exactlinalg.rat_matmul(
                basis_inv, exactlinalg.RatMatrix.from_rows([[c] for c in h.coords])
            )
            assert direct == coeffs.is_integral(), (k, h)
            checks += 1
    return checks


def suite_pell_oracle(rng: random.Random, grid: int) -> int:
    """solve_indefinite / solve_definite vs exhaustive search at small scale."""
    checks = 0
    box = 2000
    for _ in range(max(10, grid)):
        d = rng.randint(2, 500)
        if isqrt(d) ** 2 == d:
            continue
        n = rng.randint(-(10**4), 10**4)
        if n == 0:
            continue
        cert = quadrep.solve_indefinite(-d, n)
        got = _orbit_closure_in_box(d, n, cert, box)
        want = set()
        for y in range(-box, box + 1):
            r = n + d * y * y
            if r < 0:
                continue
            x = isqrt(r)
            if x * x == r and x <= box:
                want.add((x, y))
                want.add((-x, y))
        assert got == want, (d, n, sorted(want - got)[:4], sorted(got - want)[:4])
        checks += 1
    for _ in range(max(10, grid)):
        d = rng.randint(1, 500)
        n = rng.randint(-(10**4), 10**4)
        if n == 0:
            continue
        got = set(quadrep.solve_definite(d, n))
        want = set()
        y = 0
        while d * y * y <= max(n, 0):
            r = n - d * y * y
            if r >= 0:
                x = isqrt(r)
                if x * x == r:
                    want.update({(x, y), (-x, y), (x, -y), (-x, -y)})
            y += 1
        assert got == want, (d, n)
        checks += 1
    return checks


def _orbit_closure_in_box(dabs, n, cert, box):
    t, u = cert.fundamental
    cap = (2 * t + 2 * dabs * u) * (box + 10) + abs(n)
    seen = set()
    stack = list(cert.representatives)
    out = set()
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


def suite_freeness_oracle(rng: random.Random, grid: int) -> int:
    """decide_freeness vs box search, both directions, plus d_beta == det."""
    checks = 0
    for k in validated_pairs(min(grid, 20)):
        report = freeness.decide_freeness(k)
        found = freeness.brute_force_generator(k, 12)
        if found is not None:
            assert freeness.is_generator(k, found), (k, found)
            assert report.verdict != freeness.NOT_FREE, (k, found, report.verdict)
        if report.verdict == freeness.NOT_FREE:
            assert found is None, (k, found)
        if report.verdict == freeness.FREE:
            assert freeness.is_generator(k, report.generator), k
        checks += 1
    for _ in range(200):
        k = random_valid_field(rng, 50)
        beta = cubicfield.OrderElement(
            rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(-20, 20)
        )
        assert freeness.d_beta(k, beta) == exactlinalg.det3(freeness.m_beta(k, beta))
        checks += 1
    return checks


def suite_alaca_dedekind(rng: random.Random, grid: int) -> int:
    """Congruence table vs Dedekind referee on every relevant prime."""
    checks = 0
    for k in validated_pairs(grid):
        factors, cofactor = arith.factorize(k.delta)
        assert cofactor == 1
        primes = sorted({2, 3} | {p for p, e in factors.items() if e >= 2})
        for p in primes:
            table_ok, _ = integrality.alaca_condition(k, p)
            referee_ok = integrality.dedekind_check(k, p)
            assert table_ok == referee_ok, (k, p, table_ok)
            checks += 1
        # primes not dividing delta pass vacuously
        for p in (5, 7, 11, 13):
            if k.delta % p != 0:
                ok, _ = integrality.alaca_condition(k, p)
                assert ok, (k, p)
                checks += 1
        # when maximal, the freeness case matches the table's 3-adic row
        rep = integrality.is_maximal(k)
        if rep.is_maximal:
            case = assocorder.classify(k)
            v3a, v3b = arith.valuation(k.a, 3), arith.valuation(k.b, 3)
            if case.major == assocorder.CASE2:
                assert v3a == v3b == 1, k
            elif case.major == assocorder.CASE1:
                assert v3a == 0, k
            else:
                assert v3a > v3b, k
            checks += 1
    return checks


SUITES = (
    ("euclid-identities", suite_euclid),
    ("sqrt-cf-pell", suite_sqrt_cf),
    ("hopf-identities", suite_hopf),
    ("index-table", suite_index_table),
    ("order-certificates", suite_order_certificates),
    ("pell-oracle", suite_pell_oracle),
    ("freeness-oracle", suite_freeness_oracle),
    ("alaca-dedekind", suite_alaca_dedekind),
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    checks: int
    detail: str = ""


def run_all(grid: int = 20, seed: int = 0) -> list[SuiteResult]:
    results = []
    for name, fn in SUITES:
        rng = random.Random(seed ^ hash(name) & 0xFFFFFFFF)
        try:
            n = fn(rng, grid)
            results.append(SuiteResult(name, True, n))
        except AssertionError as exc:
            results.append(SuiteResult(name, False, 0, repr(exc)))
    return results
