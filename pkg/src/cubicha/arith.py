"""Exact integer arithmetic utilities.

The centerpiece is a quotient-tracked Euclidean algorithm: besides the
remainder chain r[-1] = x, r[0] = y, ..., r[n] = gcd(x, y), r[n+1] = 0 it
records the quotients a[0..n] actually used and the two Bezout coefficient
sequences mu, nu defined by

    mu[0] = 0, mu[1] = 1,   mu[i] = -a[i-1]*mu[i-1] + mu[i-2]
    nu[0] = 1, nu[1] = -a[0], nu[i] = -a[i-1]*nu[i-1] + nu[i-2]

so that r[i] = mu[i]*x + nu[i]*y holds for every index.  The closing terms
satisfy mu[n+1] = (-1)^n * y/r[n] and nu[n+1] = (-1)^(n+1) * x/r[n], and the
continued-fraction convergents p[i]/q[i] of x/y interleave with them as
mu[i] = (-1)^(i-1) * q[i-1], nu[i] = (-1)^i * p[i-1].

Also here: p-adic valuations, the periodic continued fraction of sqrt(D),
Miller-Rabin primality, and trial-division factorization with an explicit
give-up signal (FactorizationLimitError) instead of a silent wrong answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DegenerateFormError, FactorizationLimitError

INFINITY = math.inf

DEFAULT_TRIAL_DIVISION_LIMIT = 10**7

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24; beyond that the
# same bases act as a strong probabilistic test.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def valuation(n: int, p: int) -> int | float:
    """Largest e with p^e | n; INFINITY iff n == 0.  Negative n uses |n|."""
    if p < 2 or not is_prime(p):
        raise ValueError(f"valuation requires a prime, got {p}")
    if n == 0:
        return INFINITY
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class EuclidTrace:
    """Remainders, quotients and Bezout coefficient sequences for (x, y).

    ``remainders`` holds r[-1..n+1] (length n+3), ``quotients`` a[0..n],
    ``mu``/``nu`` their coefficient sequences indexed 0..n+1.  r[n] > 0.
    """

    x: int
    y: int
    remainders: tuple[int, ...]
    quotients: tuple[int, ...]
    mu: tuple[int, ...]
    nu: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.quotients) - 1

    @property
    def gcd(self) -> int:
        return self.remainders[-2]

    def r(self, i: int) -> int:
        """Remainder r[i] for -1 <= i <= n+1."""
        return self.remainders[i + 1]


def euclid_trace(x: int, y: int) -> EuclidTrace:
    """Run Euclid's algorithm on (x, y) keeping the full trace.

    Quotients are chosen so every remainder after r[0] lies in [0, |divisor|);
    when exact division by a negative r[0] would end the chain at a negative
    gcd, the quotient is bumped by one so the chain continues and r[n] > 0.
    All identities hold verbatim with the quotients actually stored.
    """
    if y == 0:
        raise ValueError("euclid_trace requires y != 0")
    rs = [x, y]
    qs = []
    while rs[-1] != 0:
        prev, cur = rs[-2], rs[-1]
        if cur > 0:
            q = prev // cur
        else:
            q = -(prev // -cur)
        rem = prev - q * cur
        if rem == 0 and cur < 0:
            # would terminate at a negative gcd
            q += 1
            rem = -cur
        qs.append(q)
        rs.append(rem)
    mu = [0, 1]
    nu = [1, -qs[0]]
    for i in range(2, len(qs) + 1):
        mu.append(-qs[i - 1] * mu[-1] + mu[-2])
        nu.append(-qs[i - 1] * nu[-1] + nu[-2])
    return EuclidTrace(x, y, tuple(rs), tuple(qs), tuple(mu), tuple(nu))


@dataclass(frozen=True)
class ConvergentList:
    """Irreducible continued-fraction convergents p[i]/q[i] of x/y."""

    p: tuple[int, ...]
    q: tuple[int, ...]


def convergents(x: int, y: int) -> ConvergentList:
    """Convergents of the continued fraction of x/y.

    The final convergent is x/y in lowest terms: p[n] = x/gcd, q[n] = y/gcd.
    """
    trace = euclid_trace(x, y)
    qs = trace.quotients
    p_prev, p_cur = 1, qs[0]
    q_prev, q_cur = 0, 1
    ps = [p_cur]
    qqs = [q_cur]
    for a in qs[1:]:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        ps.append(p_cur)
        qqs.append(q_cur)
    return ConvergentList(tuple(ps), tuple(qqs))


def periodic_sqrt_cf(d: int) -> tuple[int, tuple[int, ...]]:
    """Continued fraction of sqrt(d) as (a0, minimal period).

    Uses the integer (m, den, a) recurrence; the period closes at the first
    index with den == 1, where the partial quotient equals 2*a0.
    """
    if d <= 0:
        raise ValueError("periodic_sqrt_cf requires d > 0")
    a0 = isqrt(d)
    if a0 * a0 == d:
        raise DegenerateFormError(f"{d} is a perfect square")
    m, den, a = 0, 1, a0
    period = []
    while True:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        period.append(a)
        if den == 1:
            assert a == 2 * a0
            return a0, tuple(period)


def factorize(n: int, limit: int = DEFAULT_TRIAL_DIVISION_LIMIT) -> tuple[dict[int, int], int]:
    """Factor |n| by trial division up to ``limit``; returns (factors, cofactor).

    The cofactor is 1 when the factorization is complete, and is also folded
    in when it turns out to be prime or a perfect power of a prime.  A
    composite cofactor is returned as-is; callers decide whether that is
    acceptable or must raise FactorizationLimitError.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p * p <= n and p <= limit:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step  # 5, 7, 11, 13, ... wheel
    if n > 1:
        if p * p > n or is_prime(n):
            factors[n] = factors.get(n, 0) + 1
            n = 1
        else:
            root, exp = _perfect_power(n)
            if exp > 1 and is_prime(root):
                factors[root] = factors.get(root, 0) + exp
                n = 1
    return factors, n


def _iroot(n: int, e: int) -> int:
    """floor(n ** (1/e)) by integer Newton iteration."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int]:
    """(r, e) with n = r^e and e maximal; (n, 1) when n is not a power."""
    for e in range(n.bit_length(), 1, -1):
        r = _iroot(n, e)
        if r > 1 and r**e == n:
            return r, e
    return n, 1


def divisors(factors: dict[int, int]) -> list[int]:
    """All positive divisors from a factorization, ascending."""
    out = [1]
    for p, e in factors.items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b)
