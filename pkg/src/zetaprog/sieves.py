"""Small integer sieves: smallest prime factors, Moebius function, primes."""
import numpy as np


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (spf[0] = spf[1] = 0)."""
    if limit < 1:
        return np.zeros(max(limit + 1, 1), dtype=np.int64)
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


def mobius_table(limit: int) -> np.ndarray:
    """mu(n) for 0..limit via the smallest-prime-factor sieve."""
    spf = spf_table(limit)
    mu = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        mu[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return mu


def primes_in(lo: float, hi: float) -> list:
    """All primes p with lo <= p <= hi."""
    top = int(np.floor(hi))
    if top < 2:
        return []
    spf = spf_table(top)
    return [p for p in range(max(2, int(np.ceil(lo))), top + 1) if spf[p] == p]


def smallest_prime_factor(n: int) -> int:
    """Smallest prime factor of n >= 2 by trial division (fine for n <= ~1e12)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n
