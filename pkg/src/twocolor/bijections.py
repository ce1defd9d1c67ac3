"""The four bijections and their inverses.

phi:   L_1(n,k,l)  -> W(n,k,l)          profile word of a two-color partition
psi:   W(n,k,l,j)  -> A(n,k,l,j)        word -> (red strict, green even strict)
eta:   L_2(n,k,l)  -> B(n,k,l)          via the 2-indented Ferrers graph
theta: L_3(n,k,l)  -> D(n,k,l)          same peel, different split

Every forward map and inverse checks its output against the target family
predicate when ``__debug__`` is on (i.e. unless Python runs with ``-O``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from . import families as fam
from .families import GREEN, RED, ProfileWord, TwoColorPartition
from .partitions import (
    DomainError,
    EMPTY,
    Partition,
    TripleDecomposition,
    conjugate,
    durfee_side,
    from_triple,
    partition_of,
    to_triple,
)


def _check(ok: bool, msg: str) -> None:
    if __debug__ and not ok:
        raise AssertionError(msg)


# -- phi ---------------------------------------------------------------------


def phi(p: TwoColorPartition) -> ProfileWord:
    why = fam.ld_violation(1, p)
    if why:
        raise DomainError(f"not in L_1: {why}")
    out = []
    values = p.values + (0,)
    # walk the profile from the smallest part upward
    for i in range(len(p) - 1, -1, -1):
        v, c = p.parts[i]
        gap = v - values[i + 1]
        out.append("y" * (gap - 1) + "x" if c is RED else "y" * (gap - 2) + "z")
    w = ProfileWord("".join(out))
    _check(word_ok(w, p), f"phi image {w} has wrong statistics")
    return w


def word_ok(w: ProfileWord, p: TwoColorPartition) -> bool:
    st = fam.ld_stats(p)
    return fam.is_in_W(w, st.n, st.k, st.l)


def phi_inverse(w: ProfileWord) -> TwoColorPartition:
    s = w.letters
    if not w.ends_well():
        raise DomainError(f"word {s!r} ends with y; not in W")
    east = 0
    parts = []
    for ch in s:
        if ch == "x":
            east += 1
            parts.append((east, RED))
        elif ch == "z":
            east += 2
            parts.append((east, GREEN))
        else:
            east += 1
    p = TwoColorPartition(tuple(reversed(parts)))
    _check(fam.is_in_Ld(1, p), f"phi_inverse({s}) = {p} is not in L_1")
    return p


# -- psi ---------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionPair:
    """Red strict partition ``pi`` and green strict all-even partition ``sigma``."""

    pi: Partition
    sigma: Partition

    def __post_init__(self) -> None:
        if not self.pi.is_strict():
            raise DomainError(f"pi = {self.pi} is not strict")
        if not self.sigma.is_strict():
            raise DomainError(f"sigma = {self.sigma} is not strict")
        if any(v % 2 for v in self.sigma.parts):
            raise DomainError(f"sigma = {self.sigma} has an odd part")

    def as_colored(self) -> TwoColorPartition:
        return TwoColorPartition.from_colored(self.pi.parts, self.sigma.parts)

    @classmethod
    def from_colored(cls, p: TwoColorPartition) -> "PartitionPair":
        return cls(partition_of(p.reds()), partition_of(p.greens()))

    def __str__(self) -> str:
        return pair_to_text(self)


@dataclass(frozen=True)
class PsiTrace:
    """Intermediate data of psi, kept so its internal claims can be audited."""

    word: str
    z_positions: tuple[int, ...]  # s_1 > s_2 > ... > s_l
    sigma_parts: tuple[int, ...]
    prefix: str  # v_1 ... v_l
    u_hat: str  # prefix + word with z -> y, trailing y's kept
    pair: PartitionPair


def psi_trace(w: ProfileWord) -> PsiTrace:
    s = w.letters
    if not w.ends_well():
        raise DomainError(f"word {s!r} ends with y; not in W")
    kinds = dict(fam.classify_z(s))
    xs_upto = []
    evens_upto = []
    xs = evens = 0
    for i, ch in enumerate(s, start=1):
        xs += ch == "x"
        evens += ch == "z" and kinds[i] == "even"
        xs_upto.append(xs)
        evens_upto.append(evens)
    zpos = tuple(sorted(kinds, reverse=True))
    sigma = tuple(t - xs_upto[t - 1] + evens_upto[t - 1] for t in zpos)
    prefix = "".join("x" if kinds[t] == "odd" else "y" for t in zpos)
    u_hat = prefix + s.replace("z", "y")
    red = phi_inverse(ProfileWord(u_hat.rstrip("y")))
    pair = PartitionPair(red.uncolored(), Partition(sigma))
    return PsiTrace(s, zpos, sigma, prefix, u_hat, pair)


def psi(w: ProfileWord) -> PartitionPair:
    tr = psi_trace(w)
    if __debug__:
        st = fam.word_stats(w)
        got = fam.is_in_A(tr.pair.as_colored())
        _check(got == st, f"psi({w}) = {tr.pair} has stats {got}, expected {st}")
    return tr.pair


def psi_inverse(pair: PartitionPair) -> ProfileWord:
    """Rebuild the word from ``(pi, sigma)``.

    The prefix and the z-free body come straight from the x positions of pi.
    The z's are then re-inserted from the smallest upward: the i-th one sits
    on the unique non-x letter whose count of non-x letters so far equals
    sigma_i minus the even z's at or before it.
    """
    l = len(pair.sigma)
    xs = set(pair.pi.parts)
    prefix = ["x" if i in xs else "y" for i in range(1, l + 1)]
    body_len = max((v - l for v in xs), default=0)
    sig = pair.sigma.parts
    # positions in the body (1-based) still to be decided
    chosen: list[tuple[int, str]] = []  # (position, parity)
    evens = 0
    # enough trailing room: sigma_1 non-x letters suffice
    limit = body_len + (sig[0] if sig else 0) + 1
    body = ["x" if (i + l) in xs else "y" for i in range(1, limit + 1)]
    nonx_rank = []
    seen = 0
    for ch in body:
        seen += ch != "x"
        nonx_rank.append(seen)
    for i in range(l, 0, -1):
        want_even = prefix[i - 1] == "y"
        target = sig[i - 1] - evens - want_even
        pos = next(
            (t for t in range(1, limit + 1) if body[t - 1] != "x" and nonx_rank[t - 1] == target),
            None,
        )
        if pos is None or (chosen and pos <= chosen[-1][0]):
            raise DomainError(f"no consistent z position for sigma part {sig[i - 1]}")
        # earlier y's and odd z's: non-x letters before pos minus even z's
        parity = (nonx_rank[pos - 1] - 1 - evens) % 2
        if parity != (0 if want_even else 1):
            raise DomainError(f"z for sigma part {sig[i - 1]} lands with the wrong parity")
        chosen.append((pos, "even" if want_even else "odd"))
        evens += want_even
    for pos, _ in chosen:
        body[pos - 1] = "z"
    end = max([body_len] + [pos for pos, _ in chosen])
    w = ProfileWord("".join(body[:end]))
    _check(psi(w) == pair, f"psi_inverse round trip failed on {pair}")
    return w


# -- the 2-indented peel ----------------------------------------------------


@dataclass(frozen=True)
class IndentedPeel:
    m: int
    lambda_tilde: Partition
    green_rows: tuple[int, ...]  # 1-based indices of green source parts

    @property
    def green_columns(self) -> frozenset[int]:
        return frozenset(self.lambda_tilde.part(i) for i in self.green_rows)

    def tilde(self, i: int) -> int:
        return self.lambda_tilde.part(i)


def two_indent(p: TwoColorPartition, m: Optional[int] = None) -> IndentedPeel:
    m = len(p) if m is None else m
    if m != len(p):
        raise DomainError(f"m = {m} but the partition has {len(p)} parts")
    tilde = []
    for i, v in enumerate(p.values, start=1):
        t = v - 2 * m + 2 * i - 1
        if t < 0:
            raise DomainError(f"negative indented row {t} at part {i}; not in L_2")
        tilde.append(t)
    while tilde and tilde[-1] == 0:
        tilde.pop()
    if any(a < b for a, b in zip(tilde, tilde[1:])):
        raise DomainError(f"indented rows {tilde} increase; not in L_2")
    greens = tuple(i for i, (_, c) in enumerate(p.parts, start=1) if c is GREEN)
    return IndentedPeel(m, Partition(tuple(tilde)), greens)


def _unpeel(m: int, tilde_conj: Partition, green_rows: set[int]) -> TwoColorPartition:
    tilde = conjugate(tilde_conj)
    if len(tilde) > m:
        raise DomainError(f"indented graph has more than {m} rows")
    parts = tuple(
        (tilde.part(i) + 2 * m - 2 * i + 1, GREEN if i in green_rows else RED)
        for i in range(1, m + 1)
    )
    return TwoColorPartition(parts)


# -- eta ---------------------------------------------------------------------


def eta(p: TwoColorPartition) -> TripleDecomposition:
    why = fam.ld_violation(2, p)
    if why:
        raise DomainError(f"not in L_2: {why}")
    peel = two_indent(p)
    # column lambda_tilde_i of a green row i has length exactly i
    lengths = set(peel.green_rows)
    cols = conjugate(peel.lambda_tilde).parts
    pi = Partition(tuple(c for c in cols if c in lengths))
    sigma = Partition(tuple(c for c in cols if c not in lengths))
    t = TripleDecomposition(peel.m, pi, sigma)
    _check(fam.is_basis(t) and len(set(pi.parts)) == len(lengths), f"eta({p}) = {t} not in B")
    return t


def eta_inverse(t: TripleDecomposition) -> TwoColorPartition:
    if not fam.is_basis(t):
        raise DomainError(f"{t} is not a basis partition (pi and sigma share a part)")
    greens = set(t.pi.parts)
    p = _unpeel(t.d, partition_of(t.pi.parts + t.sigma.parts), greens)
    _check(fam.is_in_Ld(2, p), f"eta_inverse({t}) = {p} not in L_2")
    return p


# -- theta -------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaTrace:
    source: TwoColorPartition
    peel: IndentedPeel
    pi: Partition
    sigma: Partition
    image: Partition


def theta_trace(p: TwoColorPartition) -> ThetaTrace:
    why = fam.ld_violation(3, p)
    if why:
        raise DomainError(f"not in L_3: {why}")
    peel = two_indent(p)
    cols = Counter(conjugate(peel.lambda_tilde).parts)
    # one column per green row: the column through its last cell, of length i
    pi = partition_of(peel.green_rows)
    cols.subtract(peel.green_rows)
    if any(v < 0 for v in cols.values()):
        raise DomainError(f"green row without its own column in {p}")
    sigma = partition_of(list(cols.elements()))
    image = from_triple(TripleDecomposition(peel.m, pi, sigma))
    return ThetaTrace(p, peel, pi, sigma, image)


def theta(p: TwoColorPartition) -> Partition:
    tr = theta_trace(p)
    if __debug__:
        st = fam.ld_stats(p)
        _check(
            tr.image.is_strict() and fam.d_stats(tr.image) == st,
            f"theta({p}) = {tr.image} not in D{(st.n, st.k, st.l)}",
        )
    return tr.image


def theta_inverse(q: Partition) -> TwoColorPartition:
    if not q.is_strict():
        raise DomainError(f"{q} is not a strict partition")
    t = to_triple(q)
    m = t.d
    if len(q) - m > m:
        raise DomainError(f"{q} has more than twice its Durfee side in parts")
    p = _unpeel(m, partition_of(t.pi.parts + t.sigma.parts), set(t.pi.parts))
    _check(fam.is_in_Ld(3, p), f"theta_inverse({q}) = {p} not in L_3")
    return p


# -- text forms --------------------------------------------------------------


def pair_to_text(pair: PartitionPair) -> str:
    return f"pi={pair.pi} sigma={pair.sigma}"


def parse_pair(text: str) -> PartitionPair:
    from .partitions import parse_partition

    fields = dict(tok.split("=", 1) for tok in text.split() if "=" in tok)
    if set(fields) != {"pi", "sigma"}:
        raise DomainError(f"pair must look like 'pi=8+6+4+2 sigma=8+4+2': {text!r}")
    return PartitionPair(parse_partition(fields["pi"]), parse_partition(fields["sigma"]))


def pair_to_json(pair: PartitionPair) -> dict:
    return {"pi": list(pair.pi.parts), "sigma": list(pair.sigma.parts)}
