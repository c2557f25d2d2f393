"""Small exact integer helpers shared across modules."""

from __future__ import annotations

from .errors import InvalidInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise InvalidInput("factorize needs a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def prime_power_base(n: int) -> int | None:
    """The prime ``p`` when ``n`` is a power ``p^k`` with ``k >= 1``, else None."""
    if n < 2:
        return None
    f = factorize(n)
    return next(iter(f)) if len(f) == 1 else None


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]
