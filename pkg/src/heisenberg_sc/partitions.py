"""Colored partition numbers from the generating function prod_k (1 - q^k)^(-d)."""

from __future__ import annotations

from functools import lru_cache


def _mul_truncated(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


@lru_cache(maxsize=None)
def colored_partition_numbers(colors: int, n_max: int) -> tuple[int, ...]:
    """Coefficients of q^0..q^n_max in prod_{k>=1} (1 - q^k)^(-colors).

    Built by multiplying geometric series 1/(1 - q^k) = sum_j q^(jk) as
    truncated power series, so it shares nothing with monomial enumeration.
    """
    if colors < 0 or n_max < 0:
        raise ValueError("colors and n_max must be non-negative")
    series = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        geometric = [1 if e % k == 0 else 0 for e in range(n_max + 1)]
        for _ in range(colors):
            series = _mul_truncated(series, geometric, n_max)
    return tuple(series)


def convolve(a, b, n_max: int) -> list[int]:
    return [sum(a[k] * b[n - k] for k in range(n + 1)) for n in range(n_max + 1)]
