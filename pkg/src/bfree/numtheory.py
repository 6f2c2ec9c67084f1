"""Shared integer helpers: extended gcd, primality, factorization, classical CRT.

Everything in this module is exact integer arithmetic; no floats anywhere.
Factorization is trial division plus Pollard rho with a hard iteration cap,
so it either returns a correct answer or raises, never guesses.
"""

import math
from functools import lru_cache

from .errors import FactorizationError, NotCoprimeError

# Deterministic Miller-Rabin witness set, valid for n < 3.317e24.  Beyond that
# the test is a very strong probable-prime test.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 100_000
_RHO_ITERATION_CAP = 2_000_000


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: (g, s, t) with g = s*a + t*b and g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n via a plain sieve."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i in range(2, n + 1) if sieve[i])


def _pollard_rho(n: int) -> int:
    # n odd composite, no factor below the trial limit
    for c in range(1, 64):
        x = y = 2
        d = 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
            if steps > _RHO_ITERATION_CAP:
                break
        if 1 < d < n:
            return d
    raise FactorizationError(f"cannot factor {n}: no factor found within iteration cap")


@lru_cache(maxsize=4096)
def factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a sorted tuple of (prime, exponent)."""
    if n < 1:
        raise ValueError("factor() expects a positive integer")
    out: dict[int, int] = {}
    for p in primes_up_to(min(_TRIAL_LIMIT, math.isqrt(n) + 1)):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return tuple(sorted(out.items()))


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0 (integer Newton iteration, no floats)."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def crt_integers(residues: list[int] | tuple[int, ...], moduli: list[int] | tuple[int, ...]) -> int:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns x in [0, prod m_i).

    Raises NotCoprimeError if a pair of moduli shares a factor (incompatible
    systems are then possible, so we refuse rather than pick a branch).
    """
    if len(residues) != len(moduli):
        raise ValueError("residue and modulus lists differ in length")
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        if q < 1:
            raise ValueError("moduli must be positive")
        g, inv, _ = xgcd(m % q, q)
        if g != 1:
            raise NotCoprimeError(f"moduli are not pairwise coprime (gcd {g})")
        k = ((r - x) * inv) % q
        x += m * k
        m *= q
    return x % m
