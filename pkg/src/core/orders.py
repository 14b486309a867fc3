"""
Orders e (of the quantum parameter) and p (characteristic).

Both may be infinite; infinity is represented by ``math.inf`` so that the
ordinary comparison operators keep working on mixed finite/infinite values.
"""
import math
from typing import Union

INF = math.inf

Order = Union[int, float]


def is_finite(k: Order) -> bool:
    return k != INF


def parse_order(text: str) -> Order:
    """Parse an order from the command line: an integer or ``inf``."""
    cleaned = str(text).strip().lower()
    if cleaned in ("inf", "infinity", "∞"):
        return INF
    try:
        return int(cleaned)
    except ValueError:
        raise ValueError(f"expected an integer or 'inf', got {text!r}") from None


def format_order(k: Order) -> str:
    return "inf" if not is_finite(k) else str(int(k))


def order_to_json(k: Order) -> Union[int, str]:
    """JSON has no infinity; infinite orders serialize as the string ``"inf"``."""
    return "inf" if not is_finite(k) else int(k)


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def p_adic_exponent(h: int, p: Order) -> int:
    """
    Largest k with p**k dividing h.

    For infinite p the exponent is 0. Raises ValueError for h == 0.
    """
    if h == 0:
        raise ValueError("p-adic exponent of 0 is undefined")
    if not is_finite(p):
        return 0
    prime = int(p)
    h = abs(h)
    k = 0
    while h % prime == 0:
        h //= prime
        k += 1
    return k


def divides(e: Order, h: int) -> bool:
    """e | h, where the infinite order only divides 0."""
    if not is_finite(e):
        return h == 0
    return h % int(e) == 0
