"""Closed-form Gallai-Ramsey bounds for fans.

All values are exact integers. Where a bound is a half-integer (the even-k
upper bound for F_n with n odd) it is rounded toward the valid side: the
floor for upper bounds.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ParamError

K_MAX_LIMIT = 20


@dataclass(frozen=True)
class BoundRow:
    k: int
    lower: int
    upper: int
    exact: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} above upper {self.upper} at k={self.k}")
        if self.exact is not None and not (self.lower == self.exact == self.upper):
            raise ValueError(f"exact value {self.exact} disagrees with bounds at k={self.k}")

    def to_json(self) -> dict:
        return asdict(self)


def _row(k: int, lower: int, upper: int) -> BoundRow:
    return BoundRow(k, lower, upper, lower if lower == upper else None)


def gr_f2(k: int) -> int:
    """gr_k(K3; F2), exact for every k >= 2."""
    if k < 2:
        raise ParamError("k must be at least 2")
    if k == 2:
        return 9
    if k % 2 == 0:
        return (83 * 5 ** ((k - 4) // 2) + 1) // 2
    return 4 * 5 ** ((k - 1) // 2) + 1


def gr_prime_f2(kp: int) -> int:
    """gr'_{k'}(K3; F2): at most k' colors of max degree >= 2."""
    if kp < 0:
        raise ParamError("k' must be non-negative")
    if kp % 2 == 0:
        return 2 * 5 ** (kp // 2) + 1
    return 4 * 5 ** ((kp - 1) // 2) + 1


def gr_f3_bounds(k: int) -> tuple[int, int]:
    if k < 2:
        raise ParamError("k must be at least 2")
    if k % 2 == 0:
        v = 14 * 5 ** ((k - 2) // 2) - 1
        return v, v
    lower = 33 * 5 ** ((k - 3) // 2)
    if k in (3, 5):
        return lower, lower
    # 33 * 5^((k-3)/2) + (3/4) 5^((k-5)/2) - 3/4
    return lower, lower + (3 * 5 ** ((k - 5) // 2) - 3) // 4


def gr_fn_bounds(n: int, k: int) -> tuple[int, int]:
    if n < 1 or k < 2:
        raise ParamError("need n >= 1 and k >= 2")
    if k % 2 == 0:
        p = 5 ** ((k - 2) // 2)
        # 10n p - (5/2) n + 1, floored
        return 4 * n * p + 1, (20 * n * p - 5 * n + 2) // 2
    p = 5 ** ((k - 1) // 2)
    # (9/2) n p - (5/2) n + 1; 9p - 5 is even so this is exact
    return 2 * n * p + 1, (9 * n * p - 5 * n + 2) // 2


def ramsey_fn_bounds(n: int) -> tuple[int, int]:
    """Two-color R(F_n, F_n) bounds, exact for n = 2, 3."""
    if n < 1:
        raise ParamError("n must be positive")
    if n == 2:
        return 9, 9
    if n == 3:
        return 13, 13
    return 4 * n + 1, 6 * n


def _check_kmax(k_max: int) -> None:
    if not 2 <= k_max <= K_MAX_LIMIT:
        raise ParamError(f"k_max must be in 2..{K_MAX_LIMIT}, got {k_max}")


def bound_table(family: str, k_max: int, n: int | None = None) -> list[BoundRow]:
    """Rows k = 2..k_max for ``f2``, ``f2prime`` (k' = 0..k_max), ``f3`` or ``fn``."""
    _check_kmax(k_max)
    if family == "f2":
        return [_row(k, gr_f2(k), gr_f2(k)) for k in range(2, k_max + 1)]
    if family == "f2prime":
        return [_row(kp, gr_prime_f2(kp), gr_prime_f2(kp)) for kp in range(0, k_max + 1)]
    if family == "f3":
        return [_row(k, *gr_f3_bounds(k)) for k in range(2, k_max + 1)]
    if family == "fn":
        if n is None or n < 1:
            raise ParamError("family fn needs n >= 1")
        return [_row(k, *gr_fn_bounds(n, k)) for k in range(2, k_max + 1)]
    if family == "ramsey":
        return [_row(m, *ramsey_fn_bounds(m)) for m in range(1, k_max + 1)]
    raise ParamError(f"unknown family {family!r}")
