"""Integer partitions, Ferrers-graph operations and the Durfee-square codec.

Everything here is an immutable value.  The enumerators are exhaustive and
serve as the counting oracles for the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence


class DomainError(ValueError):
    """An input lies outside the domain of the operation applied to it."""


@dataclass(frozen=True, order=True)
class Partition:
    """A non-increasing tuple of positive integers.  ``Partition(())`` is epsilon."""

    parts: tuple[int, ...] = ()
    weight: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise DomainError(f"part {i + 1} is not a positive integer: {p!r}")
            if i and parts[i - 1] < p:
                raise DomainError(f"parts increase at position {i + 1}: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return to_text(self)

    def part(self, i: int) -> int:
        """1-based part access; 0 past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))


EMPTY = Partition()


@dataclass(frozen=True)
class TripleDecomposition:
    """``(d, pi, sigma)``: Durfee side plus the pieces below the square of the
    partition and of its conjugate."""

    d: int
    pi: Partition = EMPTY
    sigma: Partition = EMPTY

    def __post_init__(self) -> None:
        if self.d < 0:
            raise DomainError(f"negative Durfee side {self.d}")
        for name, sub in (("pi", self.pi), ("sigma", self.sigma)):
            if sub.parts and sub.parts[0] > self.d:
                raise DomainError(
                    f"{name} has part {sub.parts[0]} exceeding Durfee side {self.d}"
                )

    @property
    def weight(self) -> int:
        return self.d * self.d + self.pi.weight + self.sigma.weight

    def __str__(self) -> str:
        return triple_to_text(self)


@dataclass(frozen=True)
class ConstraintSet:
    """Optional restrictions for :func:`enumerate_partitions`; ``None`` means unconstrained."""

    min_part: Optional[int] = None
    max_part: Optional[int] = None
    num_parts: Optional[int] = None
    distinct: bool = False
    durfee_side: Optional[int] = None


def conjugate(p: Partition) -> Partition:
    parts = p.parts
    if not parts:
        return EMPTY
    # column c has one cell for every row of length >= c
    out = []
    rows = len(parts)
    for c in range(1, parts[0] + 1):
        while rows and parts[rows - 1] < c:
            rows -= 1
        out.append(rows)
    return Partition(tuple(out))


def durfee_side(p: Partition) -> int:
    d = 0
    for i, part in enumerate(p.parts, start=1):
        if part >= i:
            d = i
        else:
            break
    return d


def to_triple(p: Partition) -> TripleDecomposition:
    d = durfee_side(p)
    return TripleDecomposition(
        d, Partition(p.parts[d:]), Partition(conjugate(p).parts[d:])
    )


def from_triple(t: TripleDecomposition) -> Partition:
    arm = conjugate(t.sigma)
    rows = tuple(t.d + arm.part(i) for i in range(1, t.d + 1))
    return Partition(rows + t.pi.parts)


def enumerate_partitions(
    n: int, constraints: Optional[ConstraintSet] = None
) -> Iterator[Partition]:
    """Yield every partition of ``n`` meeting ``constraints``, in lexicographically
    decreasing order of part sequences."""
    if n < 0:
        raise DomainError(f"negative weight {n}")
    c = constraints or ConstraintSet()
    lo = max(c.min_part or 1, 1)
    hi = n if c.max_part is None else min(c.max_part, n)
    want = c.num_parts

    def rec(rem: int, cap: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            if want is None or len(acc) == want:
                yield tuple(acc)
            return
        if want is not None:
            left = want - len(acc)
            if left <= 0 or rem < left * lo:
                return
        for v in range(min(cap, rem), lo - 1, -1):
            # remaining parts are all <= v (or < v when distinct)
            if want is not None and not c.distinct and v * (want - len(acc)) < rem:
                break
            acc.append(v)
            yield from rec(rem - v, v - 1 if c.distinct else v, acc)
            acc.pop()

    for parts in rec(n, hi, []):
        p = Partition(parts)
        if c.durfee_side is None or durfee_side(p) == c.durfee_side:
            yield p


def strict_partitions(n: int, **kw) -> Iterator[Partition]:
    return enumerate_partitions(n, ConstraintSet(distinct=True, **kw))


# -- text / JSON forms -------------------------------------------------------


def to_text(p: Partition) -> str:
    return "+".join(map(str, p.parts)) if p.parts else "0"


def parse_partition(text: str) -> Partition:
    s = text.strip()
    if s in ("", "0", "e", "ε"):
        return EMPTY
    try:
        values = [int(tok) for tok in s.split("+")]
    except ValueError:
        raise DomainError(f"cannot parse partition {text!r}") from None
    return Partition(tuple(values))


def _sub_text(p: Partition) -> str:
    return "+".join(map(str, p.parts))


def triple_to_text(t: TripleDecomposition) -> str:
    return f"({t.d}; {_sub_text(t.pi)}; {_sub_text(t.sigma)})"


def parse_triple(text: str) -> TripleDecomposition:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise DomainError(f"triple must look like '(d; pi; sigma)': {text!r}")
    fields = s[1:-1].split(";")
    if len(fields) != 3:
        raise DomainError(f"triple needs three ';'-separated fields: {text!r}")
    try:
        d = int(fields[0])
    except ValueError:
        raise DomainError(f"bad Durfee side in {text!r}") from None
    return TripleDecomposition(d, parse_partition(fields[1]), parse_partition(fields[2]))


def to_json(p: Partition) -> dict:
    return {"parts": list(p.parts)}


def from_json(obj: dict) -> Partition:
    return Partition(tuple(obj["parts"]))


def triple_to_json(t: TripleDecomposition) -> dict:
    return {"d": t.d, "pi": list(t.pi.parts), "sigma": list(t.sigma.parts)}


def triple_from_json(obj: dict) -> TripleDecomposition:
    return TripleDecomposition(
        obj["d"], Partition(tuple(obj["pi"])), Partition(tuple(obj["sigma"]))
    )


def partition_of(parts: Sequence[int]) -> Partition:
    """Build a partition from parts in any order."""
    return Partition(tuple(sorted(parts, reverse=True)))
