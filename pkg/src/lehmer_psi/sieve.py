"""numpy sieves shared by range enumeration and scanning.

All arrays are int64 and all arithmetic is exact; floats never appear.
"""

from __future__ import annotations

import numpy as np

from .arith import DomainError


def primes_upto(n: int) -> np.ndarray:
    """Ascending primes <= n."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def totient_range(lo: int, hi: int) -> np.ndarray:
    """phi(n) for n in [lo, hi], computed segment-wise from prime marks."""
    if lo < 1 or lo > hi:
        raise DomainError(f"bad range [{lo}, {hi}]")
    size = hi - lo + 1
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    rem = ns.copy()
    phi = ns.copy()
    for p in primes_upto(int(hi**0.5)):
        p = int(p)
        first = ((lo + p - 1) // p) * p
        if first > hi:
            continue
        idx = np.arange(first - lo, size, p)
        phi[idx] = phi[idx] // p * (p - 1)
        sub = rem[idx]
        while True:
            div = sub % p == 0
            if not div.any():
                break
            sub[div] //= p
        rem[idx] = sub
    left = rem > 1  # a single prime factor > sqrt(hi) remains
    phi[left] = phi[left] // rem[left] * (rem[left] - 1)
    return phi


def korselt_range(lo: int, hi: int) -> list[int]:
    """Carmichael numbers in [lo, hi]: squarefree composites with
    (p - 1) | (n - 1) for every prime factor p, found by stripping the
    range arrays prime by prime.
    """
    if lo < 2 or lo > hi:
        raise DomainError(f"bad range [{lo}, {hi}]")
    size = hi - lo + 1
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    rem = ns.copy()
    ok = np.ones(size, dtype=bool)
    ok[ns < 3] = False
    nfac = np.zeros(size, dtype=np.int8)  # distinct prime factors seen
    for p in primes_upto(int(hi**0.5)):
        p = int(p)
        first = ((lo + p - 1) // p) * p
        if first > hi:
            continue
        idx = np.arange(first - lo, size, p)
        nfac[idx] += 1
        rem[idx] //= p
        again = rem[idx] % p == 0
        if again.any():
            ok[idx[again]] = False  # not squarefree
            sub = rem[idx]
            while True:
                div = sub % p == 0
                if not div.any():
                    break
                sub[div] //= p
            rem[idx] = sub
        if p > 2:
            bad = (ns[idx] - 1) % (p - 1) != 0
            if bad.any():
                ok[idx[bad]] = False
    left = rem > 1  # a single prime factor > sqrt(hi) remains
    nfac[left] += 1
    sel = np.nonzero(ok & left)[0]
    if sel.size:
        bad = (ns[sel] - 1) % (rem[sel] - 1) != 0
        ok[sel[bad]] = False
    ok &= nfac >= 2  # squarefree composites have at least two prime factors
    return [int(v) for v in ns[ok]]
