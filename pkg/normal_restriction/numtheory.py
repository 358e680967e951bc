from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from sympy import factorint, isprime, n_order, perfect_power

from .errors import ScanCapExceeded

T_MAX_CAP = 100
LEMMA3_PARTS = ("a", "b")


@dataclass(frozen=True)
class PrimePowerFact:
    n: int
    verdict: bool
    base: Optional[int] = None
    exponent: Optional[int] = None


def is_prime_power(n: int) -> PrimePowerFact:
    """n = p^k with p prime and k >= 1; 1 is not a prime power"""

    if n < 2:
        return PrimePowerFact(n, False)
    if isprime(n):
        return PrimePowerFact(n, True, n, 1)

    power = perfect_power(n)
    if not power:
        return PrimePowerFact(n, False)

    base, exponent = power
    # perfect_power returns the largest exponent, so a prime power has a prime base here
    if isprime(base):
        return PrimePowerFact(n, True, base, exponent)
    return PrimePowerFact(n, False)


def primitive_prime_divisors(q: int, n: int) -> List[int]:
    """Primes r dividing q^n - 1 and no q^i - 1 for 1 <= i < n"""

    if q < 2 or n < 3:
        raise ValueError(f"need q >= 2 and n >= 3, got q={q}, n={n}")
    return sorted(r for r in factorint(q ** n - 1) if n_order(q, r) == n)


def _lemma3_values(part: str, t: int) -> Tuple[int, int]:
    if part == "a":
        return 2 ** t - 1, 2 ** (t - 1) - 1
    return 2 ** t + 1, 2 ** (t + 1) + 1


def lemma3_scan(part: str, t_max: int) -> Set[int]:
    """Values of t <= t_max for which both numbers of the pair are prime powers.

    Part a pairs 2^t - 1 with 2^(t-1) - 1 (t >= 1); part b pairs 2^t + 1 with
    2^(t+1) + 1 (t >= 0).
    """

    if part not in LEMMA3_PARTS:
        raise ValueError(f"part must be one of {LEMMA3_PARTS}, got {part!r}")
    if t_max > T_MAX_CAP:
        raise ScanCapExceeded(f"t_max {t_max} above {T_MAX_CAP}")

    start = 1 if part == "a" else 0
    result = set()
    for t in range(start, t_max + 1):
        x, y = _lemma3_values(part, t)
        if is_prime_power(x).verdict and is_prime_power(y).verdict:
            result.add(t)
    return result


def zsigmondy_scan(q_max: int, n_max: int) -> Dict[Tuple[int, int], List[int]]:
    """Primitive prime divisors for every 2 <= q <= q_max, 3 <= n <= n_max"""

    return {(q, n): primitive_prime_divisors(q, n)
            for q in range(2, q_max + 1) for n in range(3, n_max + 1)}


def zsigmondy_exceptions(scan: Dict[Tuple[int, int], List[int]]) -> List[Tuple[int, int]]:
    return sorted(k for k, v in scan.items() if not v)
