"""Restricted partition families: L_d, A, the profile-word class W, basis
partitions B and Durfee-constrained strict partitions D.

Every family comes with a membership predicate and an exhaustive,
duplicate-free, deterministic enumerator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .partitions import (
    ConstraintSet,
    DomainError,
    EMPTY,
    Partition,
    TripleDecomposition,
    durfee_side,
    enumerate_partitions,
    from_triple,
    strict_partitions,
)


class Color(enum.Enum):
    RED = "r"
    GREEN = "g"


RED, GREEN = Color.RED, Color.GREEN
_RANK = {RED: 0, GREEN: 1}


@dataclass(frozen=True)
class TwoColorPartition:
    parts: tuple[tuple[int, Color], ...] = ()

    def __post_init__(self) -> None:
        parts = tuple((v, Color(c)) for v, c in self.parts)
        for i, (v, _) in enumerate(parts):
            if not isinstance(v, int) or v < 1:
                raise DomainError(f"part {i + 1} is not a positive integer: {v!r}")
        for i in range(1, len(parts)):
            (a, ca), (b, cb) = parts[i - 1], parts[i]
            if a < b:
                raise DomainError(f"part values increase at position {i + 1}")
            if a == b and ca is GREEN and cb is RED:
                raise DomainError(f"green precedes red at equal value {a}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_colored(cls, reds=(), greens=()) -> "TwoColorPartition":
        """Merge red and green values into canonical order."""
        items = [(v, RED) for v in reds] + [(v, GREEN) for v in greens]
        items.sort(key=lambda vc: (-vc[0], _RANK[vc[1]]))
        return cls(tuple(items))

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.parts)

    def reds(self) -> tuple[int, ...]:
        return tuple(v for v, c in self.parts if c is RED)

    def greens(self) -> tuple[int, ...]:
        return tuple(v for v, c in self.parts if c is GREEN)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return colored_to_text(self)

    def sort_key(self) -> tuple:
        return tuple((v, _RANK[c]) for v, c in self.parts)

    def uncolored(self) -> Partition:
        return Partition(self.values)


EMPTY_COLORED = TwoColorPartition()


@dataclass(frozen=True)
class FamilyStats:
    n: int
    k: int
    l: int
    j: Optional[int] = None


# -- L_d ---------------------------------------------------------------------


@dataclass(frozen=True)
class LdRules:
    """The L_d membership rules, parameterised so tests can flip one at a time.

    A red part must exceed the next part by ``d + red_gap_extra``; a green part
    by ``d + green_gap_extra``.  The smallest part has no gap requirement.
    """

    red_gap_extra: int = 0
    green_gap_extra: int = 1
    forbid_one_green: bool = True
    forbid_d_minus_one_green: bool = True


DEFAULT_RULES = LdRules()

# one flipped rule each; used for mutation-sensitivity checks
MUTATIONS: dict[str, LdRules] = {
    "red-gap": LdRules(red_gap_extra=-1),
    "green-gap": LdRules(green_gap_extra=0),
    "allow-1g": LdRules(forbid_one_green=False),
    "allow-(d-1)g": LdRules(forbid_d_minus_one_green=False),
}


def _forbidden_greens(d: int, rules: LdRules) -> set[int]:
    out = set()
    if rules.forbid_one_green:
        out.add(1)
    if rules.forbid_d_minus_one_green and d >= 2:
        out.add(d - 1)
    return out


def ld_violation(d: int, p: TwoColorPartition, rules: LdRules = DEFAULT_RULES) -> Optional[str]:
    """Describe the first L_d rule that ``p`` breaks, or return None."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    parts = p.parts
    for i in range(len(parts) - 1):
        (a, ca), (b, _) = parts[i], parts[i + 1]
        if a == b:
            return f"parts not numerically distinct at part {i + 1}"
        if ca is RED and a - b < d + rules.red_gap_extra:
            return f"red gap < d at part {i + 1}"
        if ca is GREEN and a - b < d + rules.green_gap_extra:
            return f"green gap < d+1 at part {i + 1}"
    banned = _forbidden_greens(d, rules)
    for i, (v, c) in enumerate(parts):
        if c is GREEN and v in banned:
            return f"forbidden green part {v}g at part {i + 1}"
    return None


def is_in_Ld(d: int, p: TwoColorPartition, rules: LdRules = DEFAULT_RULES) -> bool:
    return ld_violation(d, p, rules) is None


def enumerate_Ld(
    d: int,
    n: int,
    k: Optional[int] = None,
    l: Optional[int] = None,
    rules: LdRules = DEFAULT_RULES,
) -> Iterator[TwoColorPartition]:
    """Yield L_d(n), optionally restricted to ``k`` red and ``l`` green parts.

    Order: lexicographically decreasing on (value, color) with green ranked
    above red at equal value.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    banned = _forbidden_greens(d, rules)
    gap = {RED: max(d + rules.red_gap_extra, 1), GREEN: max(d + rules.green_gap_extra, 1)}

    def rec(rem: int, cap: int, acc: list, reds: int, greens: int):
        if rem == 0:
            if (k is None or reds == k) and (l is None or greens == l):
                yield TwoColorPartition(tuple(acc))
            return
        for v in range(min(cap, rem), 0, -1):
            for c in (GREEN, RED):
                if c is GREEN and (v in banned or (l is not None and greens >= l)):
                    continue
                if c is RED and k is not None and reds >= k:
                    continue
                acc.append((v, c))
                yield from rec(
                    rem - v, v - gap[c], acc, reds + (c is RED), greens + (c is GREEN)
                )
                acc.pop()

    yield from rec(n, n, [], 0, 0)


def ld_stats(p: TwoColorPartition) -> FamilyStats:
    reds = len(p.reds())
    return FamilyStats(p.weight, reds, len(p) - reds)


# -- A -----------------------------------------------------------------------


def is_in_A(p: TwoColorPartition) -> Optional[FamilyStats]:
    reds, greens = p.reds(), p.greens()
    if len(set(reds)) != len(reds) or len(set(greens)) != len(greens):
        return None
    if any(g % 2 for g in greens):
        return None
    l = len(greens)
    j = sum(1 for r in reds if r <= l)
    return FamilyStats(p.weight, len(reds) - j, l, j)


def _even_strict(n: int) -> Iterator[Partition]:
    if n % 2:
        return
    for half in strict_partitions(n // 2):
        yield Partition(tuple(2 * v for v in half.parts))


def enumerate_A(
    n: int,
    k: Optional[int] = None,
    l: Optional[int] = None,
    j: Optional[int] = None,
) -> Iterator[TwoColorPartition]:
    """Yield A(n, k, l[, j]); ``None`` leaves a statistic free.

    Built by merging a strict red partition with a strict all-even green one.
    """
    found = []
    for green_weight in range(0, n + 1, 2):
        for greens in _even_strict(green_weight):
            ng = len(greens)
            if l is not None and ng != l:
                continue
            for reds in strict_partitions(n - green_weight):
                jj = sum(1 for r in reds.parts if r <= ng)
                if j is not None and jj != j:
                    continue
                if k is not None and len(reds) - jj != k:
                    continue
                found.append(TwoColorPartition.from_colored(reds.parts, greens.parts))
    found.sort(key=TwoColorPartition.sort_key, reverse=True)
    yield from found


def enumerate_two_color(n: int) -> Iterator[TwoColorPartition]:
    """Every two-color partition of ``n`` (no restrictions); a brute-force base."""
    for red_weight in range(n + 1):
        for reds in enumerate_partitions(red_weight):
            for greens in enumerate_partitions(n - red_weight):
                yield TwoColorPartition.from_colored(reds.parts, greens.parts)


# -- profile words -----------------------------------------------------------

LETTERS = frozenset("xyz")


@dataclass(frozen=True)
class ProfileWord:
    letters: str = ""

    def __post_init__(self) -> None:
        bad = set(self.letters) - LETTERS
        if bad:
            raise DomainError(f"letters outside {{x,y,z}}: {sorted(bad)}")

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def count(self, letter: str) -> int:
        return self.letters.count(letter)

    def ends_well(self) -> bool:
        return not self.letters or self.letters[-1] in "xz"


def _word(w) -> str:
    return w.letters if isinstance(w, ProfileWord) else w


def word_weight(w) -> int:
    total = 0
    zs = 0
    for i, ch in enumerate(_word(w), start=1):
        if ch == "z":
            zs += 1
        if ch != "y":
            total += i + zs
    return total


def classify_z(w) -> list[tuple[int, str]]:
    """Return ``(position, "odd"|"even")`` for each z, positions 1-based.

    A z is odd when the count of earlier letters that are y or odd z is odd.
    """
    out = []
    parity = 0
    for i, ch in enumerate(_word(w), start=1):
        if ch == "y":
            parity ^= 1
        elif ch == "z":
            if parity:
                out.append((i, "odd"))
                parity ^= 1
            else:
                out.append((i, "even"))
    return out


def odd_z_count(w) -> int:
    return sum(1 for _, kind in classify_z(w) if kind == "odd")


def word_stats(w) -> FamilyStats:
    s = _word(w)
    return FamilyStats(word_weight(s), s.count("x"), s.count("z"), odd_z_count(s))


def is_in_W(w, n: int, k: int, l: int, j: Optional[int] = None) -> bool:
    s = _word(w)
    if s and s[-1] not in "xz":
        return False
    st = word_stats(s)
    return (st.n, st.k, st.l) == (n, k, l) and (j is None or st.j == j)


def enumerate_W(
    n: int,
    k: Optional[int] = None,
    l: Optional[int] = None,
    j: Optional[int] = None,
) -> Iterator[ProfileWord]:
    """Yield words of weight ``n`` that are empty or end in x/z, in lexicographic order."""

    def rec(acc: list[str], rem: int, xs: int, zs: int):
        pos = len(acc)
        if rem == 0 and (not acc or acc[-1] != "y"):
            if (k is None or xs == k) and (l is None or zs == l):
                word = "".join(acc)
                if j is None or odd_z_count(word) == j:
                    yield ProfileWord(word)
        # a letter at position pos+1 costs pos+1+zs (x) or pos+2+zs (z)
        if (k is None or xs < k) and pos + 1 + zs <= rem:
            acc.append("x")
            yield from rec(acc, rem - (pos + 1 + zs), xs + 1, zs)
            acc.pop()
        if pos + 2 + zs <= rem:
            acc.append("y")
            yield from rec(acc, rem, xs, zs)
            acc.pop()
        if (l is None or zs < l) and pos + 2 + zs <= rem:
            acc.append("z")
            yield from rec(acc, rem - (pos + 2 + zs), xs, zs + 1)
            acc.pop()

    yield from rec([], n, 0, 0)


# -- B and D -----------------------------------------------------------------


def is_basis(t: TripleDecomposition) -> bool:
    return not (set(t.pi.parts) & set(t.sigma.parts))


def enumerate_B(
    n: int, k: Optional[int] = None, l: Optional[int] = None
) -> Iterator[TripleDecomposition]:
    """Yield basis triples ``(k+l, pi, sigma)`` of weight ``n`` where pi has
    exactly ``l`` distinct part values."""
    found = []
    d = 0
    while d * d <= n:
        rest = n - d * d
        for pi_weight in range(rest + 1):
            for pi in enumerate_partitions(pi_weight, ConstraintSet(max_part=d)):
                ll = len(set(pi.parts))
                if (l is not None and ll != l) or (k is not None and d - ll != k) or ll > d:
                    continue
                used = set(pi.parts)
                for sigma in enumerate_partitions(rest - pi_weight, ConstraintSet(max_part=d)):
                    if used.isdisjoint(sigma.parts):
                        found.append(TripleDecomposition(d, pi, sigma))
        d += 1
    found.sort(key=lambda t: from_triple(t).parts, reverse=True)
    yield from found


def enumerate_D(
    n: int, k: Optional[int] = None, l: Optional[int] = None
) -> Iterator[Partition]:
    """Yield strict partitions of ``n`` into k+2l parts with Durfee side k+l."""
    for p in strict_partitions(n):
        m = durfee_side(p)
        ll = len(p) - m
        kk = m - ll
        if kk < 0 or (k is not None and kk != k) or (l is not None and ll != l):
            continue
        yield p


def d_stats(p: Partition) -> FamilyStats:
    m = durfee_side(p)
    return FamilyStats(p.weight, 2 * m - len(p), len(p) - m)


def b_stats(t: TripleDecomposition) -> FamilyStats:
    ll = len(set(t.pi.parts))
    return FamilyStats(t.weight, t.d - ll, ll)


# -- text / JSON forms -------------------------------------------------------


def colored_to_text(p: TwoColorPartition) -> str:
    if not p.parts:
        return "0"
    return "+".join(f"{v}{c.value}" for v, c in p.parts)


def parse_colored(text: str) -> TwoColorPartition:
    s = text.strip()
    if s in ("", "0", "e", "ε"):
        return EMPTY_COLORED
    items = []
    for tok in s.split("+"):
        tok = tok.strip()
        if len(tok) < 2 or tok[-1] not in "rg" or not tok[:-1].isdigit():
            raise DomainError(f"bad colored part {tok!r}; expected e.g. '12g' or '3r'")
        items.append((int(tok[:-1]), Color(tok[-1])))
    return TwoColorPartition(tuple(items))


def colored_to_json(p: TwoColorPartition) -> dict:
    return {"parts": [[v, c.value] for v, c in p.parts]}


def colored_from_json(obj: dict) -> TwoColorPartition:
    return TwoColorPartition(tuple((v, Color(c)) for v, c in obj["parts"]))


def parse_word(text: str) -> ProfileWord:
    s = text.strip()
    return ProfileWord("" if s in ("e", "ε") else s)
