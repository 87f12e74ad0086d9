"""Small number-theory helpers: primality, factorization, divisors, Euler phi.

Everything here is trial-division based; the inputs this package sees are
ring orders and moduli, which stay far below the range where that matters.
"""
from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 2 as ordered (prime, exponent) pairs."""
    if n < 2:
        raise ValueError("factorize needs n >= 2")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def nontrivial_divisors(n: int) -> list[int]:
    """Divisors d of n with 1 < d < n, ascending."""
    return [d for d in divisors(n) if 1 < d < n]


def euler_phi(n: int) -> int:
    if n == 1:
        return 1
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p**k if q is a prime power >= 2, else None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]
