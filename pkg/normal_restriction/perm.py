import re

from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import CycleParseError, DegreeMismatch

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..degree}, stored as 0-based images.

    Products read left to right: (p * q) applies p first, then q.
    Ordering is lexicographic on the image sequence.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise CycleParseError(f"not a bijection: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from 1-based images, images[i-1] being the image of point i"""

        return cls(tuple(i - 1 for i in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        b = other.images
        return Permutation(tuple(b[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles with 1-based points, each starting at its smallest point"""

        seen = set()
        result = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = []
            x = start
            while x not in seen:
                seen.add(x)
                cycle.append(x + 1)
                x = self.images[x]
            result.append(tuple(cycle))
        return result

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = result * len(cycle) // gcd(result, len(cycle))
        return result

    def extend(self, degree: int) -> "Permutation":
        """Same permutation acting on a larger point set"""

        if degree < self.degree:
            raise DegreeMismatch(f"cannot shrink degree {self.degree} to {degree}")
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def shift(self, offset: int, degree: int) -> "Permutation":
        """Copy acting on points offset+1..offset+self.degree of a degree-`degree` set"""

        images = list(range(degree))
        for i, x in enumerate(self.images):
            images[offset + i] = offset + x
        return Permutation(tuple(images))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)


def cycle_to_perm(points: Sequence[int], degree: int) -> Permutation:
    """One cycle given by 1-based points"""

    images = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        images[a - 1] = b - 1
    return Permutation(tuple(images))


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse cycle notation such as "(1 2 3)(4 5)"; "()" is the identity.

    Cycles are multiplied left to right. Without `degree`, the largest point
    mentioned is used (at least 1).
    """

    text = text.strip()
    if not text:
        raise CycleParseError("empty permutation text")

    cycles = []
    end = 0
    for m in _CYCLE.finditer(text):
        if text[end:m.start()].strip():
            raise CycleParseError(f"unexpected text {text[end:m.start()]!r} in {text!r}")
        end = m.end()

        tokens = m.group(1).split()
        try:
            points = [int(tok) for tok in tokens]
        except ValueError:
            raise CycleParseError(f"non-integer point in {m.group(0)!r}") from None

        if any(p < 1 for p in points):
            raise CycleParseError(f"points are 1-based, got {m.group(0)!r}")
        if len(set(points)) != len(points):
            raise CycleParseError(f"repeated point in {m.group(0)!r}")
        cycles.append(points)

    if text[end:].strip() or end == 0:
        raise CycleParseError(f"malformed cycle notation {text!r}")

    largest = max((p for c in cycles for p in c), default=1)
    if degree is None:
        degree = largest
    elif largest > degree:
        raise CycleParseError(f"point {largest} exceeds degree {degree} in {text!r}")

    result = Permutation.identity(degree)
    for points in cycles:
        if len(points) > 1:
            result = result * cycle_to_perm(points, degree)
    return result


def split_generators(text: str) -> List[str]:
    """Split "(1 2),(3 4)(5 6)" on commas that sit outside parentheses"""

    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))

    return [p.strip() for p in parts if p.strip()]


def parse_generators(text: str, degree: Optional[int] = None) -> List[Permutation]:
    """Comma-separated generators in cycle notation, all brought to one degree"""

    perms = [parse_cycles(part) for part in split_generators(text)]
    if degree is None:
        degree = max((p.degree for p in perms), default=1)

    result = []
    for p in perms:
        if p.degree > degree:
            raise CycleParseError(f"generator {p} exceeds degree {degree}")
        result.append(p.extend(degree))
    return result


def format_generators(perms: Iterable[Permutation]) -> str:
    return ",".join(str(p) for p in perms)
