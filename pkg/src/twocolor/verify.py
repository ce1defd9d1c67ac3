"""Exhaustive verification sweeps.

Each ``check_*`` function returns a :class:`Report` whose cells pair an
expected value (from an independent route) with the observed one.  Sweeps
over ``n`` call ``progress(n)`` before each weight so long runs can be watched.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

from . import bijections as bij
from . import families as fam
from . import qseries as qs
from .partitions import DomainError, conjugate, enumerate_partitions, to_triple

Progress = Optional[Callable[[int], None]]


@dataclass
class Cell:
    params: dict
    expected: Any
    actual: Any
    ok: bool = True
    detail: str = ""

    def line(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        tail = f" ({self.detail})" if self.detail else ""
        return f"{ps} expected={self.expected} actual={self.actual} {'ok' if self.ok else 'MISMATCH'}{tail}"


@dataclass
class Report:
    name: str
    cells: list[Cell] = field(default_factory=list)
    first_mismatch: Optional[str] = None
    fail_fast: bool = False

    @property
    def status(self) -> str:
        return "pass" if self.first_mismatch is None and all(c.ok for c in self.cells) else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add(self, params: dict, expected, actual, ok: Optional[bool] = None, detail: str = "") -> Cell:
        cell = Cell(params, expected, actual, expected == actual if ok is None else ok, detail)
        self.cells.append(cell)
        if not cell.ok and self.first_mismatch is None:
            self.first_mismatch = f"{self.name}: {cell.line()}"
        return cell

    @property
    def stop(self) -> bool:
        return self.fail_fast and self.first_mismatch is not None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "cells": [asdict(c) for c in self.cells],
            "first_mismatch": self.first_mismatch,
        }


def _tick(progress: Progress, n: int) -> None:
    if progress:
        progress(n)


# -- independent counters (dynamic programming, no enumeration) ----------------


def _subset_sum_counts(values, limit: int) -> list[int]:
    counts = [1] + [0] * limit
    for v in values:
        for s in range(limit, v - 1, -1):
            counts[s] += counts[s - v]
    return counts


def distinct_partition_counts(limit: int) -> list[int]:
    return _subset_sum_counts(range(1, limit + 1), limit)


def partition_counts(limit: int) -> list[int]:
    counts = [1] + [0] * limit
    for v in range(1, limit + 1):
        for s in range(v, limit + 1):
            counts[s] += counts[s - v]
    return counts


def red_distinct_green_even_counts(limit: int) -> list[int]:
    reds = distinct_partition_counts(limit)
    greens = _subset_sum_counts(range(2, limit + 1, 2), limit)
    return [sum(reds[i] * greens[n - i] for i in range(n + 1)) for n in range(limit + 1)]


def basis_partition_count(n: int) -> int:
    return sum(1 for p in enumerate_partitions(n) if fam.is_basis(to_triple(p)))


# -- aggregate counts ---------------------------------------------------------


def check_L1_totals(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None) -> Report:
    rep = Report("1.1")
    want = red_distinct_green_even_counts(max_n)
    for n in range(max_n + 1):
        _tick(progress, n)
        rep.add({"n": n}, want[n], sum(1 for _ in fam.enumerate_Ld(1, n, rules=rules)))
    return rep


def check_L2_totals(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None) -> Report:
    rep = Report("1.2")
    for n in range(max_n + 1):
        _tick(progress, n)
        rep.add({"n": n}, basis_partition_count(n), sum(1 for _ in fam.enumerate_Ld(2, n, rules=rules)))
    return rep


def check_L3_totals(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None) -> Report:
    rep = Report("1.3")
    want = distinct_partition_counts(max_n)
    for n in range(max_n + 1):
        _tick(progress, n)
        rep.add({"n": n}, want[n], sum(1 for _ in fam.enumerate_Ld(3, n, rules=rules)))
    return rep


# -- refined counts per (n, k, l) ---------------------------------------------

_TARGETS = {
    1: ("A", lambda n: (fam.is_in_A(p) for p in fam.enumerate_A(n))),
    2: ("B", lambda n: (fam.b_stats(t) for t in fam.enumerate_B(n))),
    3: ("D", lambda n: (fam.d_stats(p) for p in fam.enumerate_D(n))),
}
_REFINED_NAME = {1: "1.5", 2: "1.6", 3: "1.7"}


def ld_counts(d: int, n: int, rules=fam.DEFAULT_RULES) -> Counter:
    return Counter((st.k, st.l) for st in map(fam.ld_stats, fam.enumerate_Ld(d, n, rules=rules)))


def check_refined(d: int, max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None,
                  fail_fast: bool = False) -> Report:
    """|L_d(n,k,l)| against |A|, |B| or |D| for every (k, l) seen on either side."""
    _, stats_of = _TARGETS[d]
    rep = Report(_REFINED_NAME[d], fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        have = ld_counts(d, n, rules)
        want = Counter((st.k, st.l) for st in stats_of(n))
        for key in sorted(set(have) | set(want)):
            rep.add({"n": n, "k": key[0], "l": key[1]}, want[key], have[key])
        if rep.stop:
            break
    return rep


# -- bijections --------------------------------------------------------------


def _bijection_cell(rep: Report, params: dict, sources, forward, inverse, targets, key=str,
                    extra_checks=None) -> None:
    """Check that ``forward`` maps ``sources`` injectively onto ``targets`` and that
    ``inverse`` undoes it."""
    target_set = {key(t) for t in targets}
    images = []
    problems = []
    for src in sources:
        try:
            img = forward(src)
            if extra_checks:
                why = extra_checks(src, img)
                if why:
                    problems.append(f"{src}: {why}")
            if inverse(img) != src:
                problems.append(f"round trip failed on {src}")
        except (DomainError, AssertionError) as exc:
            problems.append(f"{src}: {exc}")
            continue
        images.append(key(img))
    image_set = set(images)
    if len(image_set) != len(images):
        problems.append("not injective")
    if image_set != target_set:
        missing = sorted(target_set - image_set)[:3]
        stray = sorted(image_set - target_set)[:3]
        problems.append(f"image != target (missing {missing}, stray {stray})")
    rep.add(params, len(target_set), len(image_set & target_set), ok=not problems,
            detail="; ".join(problems[:3]))


def check_phi(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None, fail_fast=False) -> Report:
    rep = Report("phi", fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        by_stats: dict = {}
        for p in fam.enumerate_Ld(1, n, rules=rules):
            st = fam.ld_stats(p)
            by_stats.setdefault((st.k, st.l), []).append(p)
        words: dict = {}
        for w in fam.enumerate_W(n):
            st = fam.word_stats(w)
            words.setdefault((st.k, st.l), []).append(w)
        for key in sorted(set(by_stats) | set(words)):
            _bijection_cell(
                rep, {"n": n, "k": key[0], "l": key[1]}, by_stats.get(key, []),
                bij.phi, bij.phi_inverse, words.get(key, []),
                extra_checks=lambda p, w: None if fam.word_weight(w) == p.weight else "weight changed",
            )
        if rep.stop:
            break
    return rep


def letter_contributions(word: str) -> list[int]:
    out = []
    zs = 0
    for i, ch in enumerate(word, start=1):
        zs += ch == "z"
        out.append(0 if ch == "y" else i + zs)
    return out


def psi_claims(w: fam.ProfileWord) -> Optional[str]:
    """The three internal claims of psi, plus the letter-by-letter weight ledger."""
    tr = bij.psi_trace(w)
    st = fam.word_stats(w)
    sig = tr.sigma_parts
    if any(s % 2 for s in sig) or any(a <= b for a, b in zip(sig, sig[1:])):
        return f"sigma {sig} not even and strictly decreasing"
    if "z" in tr.u_hat:
        return "u_hat contains z"
    if tr.u_hat.count("x") != st.k + st.j or tr.prefix.count("x") != st.j:
        return f"u_hat x-count {tr.u_hat.count('x')} / prefix {tr.prefix.count('x')} vs k+j={st.k + st.j}, j={st.j}"
    if fam.word_weight(w) != fam.word_weight(tr.u_hat) + sum(sig):
        return "weight ledger omega(u) = omega(u_hat) + |sigma| broken"
    # letterwise increments from u to u_hat, read off the piecewise table
    l = len(sig)
    cu, ch = letter_contributions(w.letters), letter_contributions(tr.u_hat)
    for i, v in enumerate(tr.prefix, start=1):
        if ch[i - 1] != (i if v == "x" else 0):
            return f"prefix letter {i} contributes {ch[i - 1]}"
    for t, letter in enumerate(w.letters, start=1):
        delta = ch[l + t - 1] - cu[t - 1]
        if letter == "y":
            want = 0
        elif letter == "z":
            i = tr.z_positions.index(t) + 1
            want = -(t + l + 1 - i)
        else:
            want = sum(1 for s in tr.z_positions if s > t)
        if delta != want:
            return f"increment {delta} at position {t}, table says {want}"
    return None


def check_psi(max_n: int, progress: Progress = None, fail_fast=False) -> Report:
    rep = Report("psi", fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        words: dict = {}
        for w in fam.enumerate_W(n):
            st = fam.word_stats(w)
            words.setdefault((st.k, st.l, st.j), []).append(w)
        targets: dict = {}
        for p in fam.enumerate_A(n):
            st = fam.is_in_A(p)
            targets.setdefault((st.k, st.l, st.j), []).append(p)
        for key in sorted(set(words) | set(targets)):
            _bijection_cell(
                rep, {"n": n, "k": key[0], "l": key[1], "j": key[2]}, words.get(key, []),
                lambda w: bij.psi(w).as_colored(),
                lambda p: bij.psi_inverse(bij.PartitionPair.from_colored(p)),
                targets.get(key, []),
                extra_checks=lambda w, _: psi_claims(w),
            )
        if rep.stop:
            break
    return rep


def check_psi_phi(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None, fail_fast=False) -> Report:
    """The composite psi . phi from L_1(n,k,l) onto A(n,k,l)."""
    rep = Report("psi.phi", fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        sources: dict = {}
        for p in fam.enumerate_Ld(1, n, rules=rules):
            st = fam.ld_stats(p)
            sources.setdefault((st.k, st.l), []).append(p)
        targets: dict = {}
        for p in fam.enumerate_A(n):
            st = fam.is_in_A(p)
            targets.setdefault((st.k, st.l), []).append(p)
        for key in sorted(set(sources) | set(targets)):
            _bijection_cell(
                rep, {"n": n, "k": key[0], "l": key[1]}, sources.get(key, []),
                lambda p: bij.psi(bij.phi(p)).as_colored(),
                lambda a: bij.phi_inverse(bij.psi_inverse(bij.PartitionPair.from_colored(a))),
                targets.get(key, []),
            )
        if rep.stop:
            break
    return rep


def check_eta(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None, fail_fast=False) -> Report:
    rep = Report("eta", fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        sources: dict = {}
        for p in fam.enumerate_Ld(2, n, rules=rules):
            st = fam.ld_stats(p)
            sources.setdefault((st.k, st.l), []).append(p)
        targets: dict = {}
        for t in fam.enumerate_B(n):
            st = fam.b_stats(t)
            targets.setdefault((st.k, st.l), []).append(t)
        for key in sorted(set(sources) | set(targets)):
            _bijection_cell(
                rep, {"n": n, "k": key[0], "l": key[1]}, sources.get(key, []),
                bij.eta, bij.eta_inverse, targets.get(key, []),
                extra_checks=lambda p, t: None if t.weight == p.weight else "weight changed",
            )
        if rep.stop:
            break
    return rep


def theta_facts(p: fam.TwoColorPartition) -> Optional[str]:
    tr = bij.theta_trace(p)
    m = tr.peel.m
    ends_in_one = bool(p.parts) and p.values[-1] == 1
    if not tr.pi.is_strict() or len(tr.pi) != len(p.greens()) or (tr.pi.parts and tr.pi[0] > m):
        return f"pi = {tr.pi} is not strict with l parts <= m"
    if ends_in_one and tr.pi.parts and tr.pi[0] >= m:
        return f"smallest part is 1 but max(pi) = {tr.pi[0]} >= m"
    arm = conjugate(tr.sigma)
    if not arm.is_strict() or len(arm) != (m - 1 if ends_in_one else m):
        return f"sigma' = {arm} is not strict with {m - 1 if ends_in_one else m} parts"
    if p.weight != m * m + tr.pi.weight + tr.sigma.weight:
        return "weight != m^2 + |pi| + |sigma|"
    return None


def check_theta(max_n: int, rules=fam.DEFAULT_RULES, progress: Progress = None, fail_fast=False) -> Report:
    rep = Report("theta", fail_fast=fail_fast)
    for n in range(max_n + 1):
        _tick(progress, n)
        sources: dict = {}
        for p in fam.enumerate_Ld(3, n, rules=rules):
            st = fam.ld_stats(p)
            sources.setdefault((st.k, st.l), []).append(p)
        targets: dict = {}
        for q in fam.enumerate_D(n):
            st = fam.d_stats(q)
            targets.setdefault((st.k, st.l), []).append(q)
        for key in sorted(set(sources) | set(targets)):
            _bijection_cell(
                rep, {"n": n, "k": key[0], "l": key[1]}, sources.get(key, []),
                bij.theta, bij.theta_inverse, targets.get(key, []),
                extra_checks=lambda p, _: theta_facts(p),
            )
        if rep.stop:
            break
    return rep


# -- q-series identities -------------------------------------------------------


def _series_cell(rep: Report, params: dict, left: qs.TruncatedSeries, right: qs.TruncatedSeries) -> None:
    diff = qs.first_difference(left, right)
    if diff is None:
        rep.add(params, "equal", "equal")
    else:
        q_exp, markers, a, b = diff
        rep.add(params, a, b, ok=False, detail=f"first difference at q^{q_exp} {markers}")


def _counts_as_series(order: int, counter: Counter) -> qs.TruncatedSeries:
    """Series whose q^n coefficient is sum count * monomial over ``counter[(n, powers)]``."""
    polys: list[dict] = [dict() for _ in range(order + 1)]
    for (n, powers), c in counter.items():
        if n <= order and c:
            e = qs.mono(**dict(powers))
            polys[n][e] = polys[n].get(e, 0) + c
    return qs.TruncatedSeries(order, [qs.MarkerPoly(p) for p in polys])


def _ld_series(d: int, order: int) -> qs.TruncatedSeries:
    c: Counter = Counter()
    for n in range(order + 1):
        for (k, l), v in ld_counts(d, n).items():
            c[(n, (("x", k), ("y", l)))] += v
    return _counts_as_series(order, c)


def _a_series(order: int, refined: bool) -> qs.TruncatedSeries:
    c: Counter = Counter()
    for n in range(order + 1):
        for p in fam.enumerate_A(n):
            st = fam.is_in_A(p)
            key = (("x", st.k), ("y", st.l)) + ((("z", st.j),) if refined else ())
            c[(n, key)] += 1
    return _counts_as_series(order, c)


def _b_series(order: int) -> qs.TruncatedSeries:
    c: Counter = Counter()
    for n in range(order + 1):
        for t in fam.enumerate_B(n):
            st = fam.b_stats(t)
            c[(n, (("x", st.k), ("y", st.l)))] += 1
    return _counts_as_series(order, c)


def check_gf2(order: int, progress: Progress = None) -> Report:
    rep = Report("gf2")
    _series_cell(rep, {"order": order, "vs": "L_1 enumeration"}, _ld_series(1, order), qs.gf_L1_rhs(order))
    return rep


def check_gf3(order: int, progress: Progress = None) -> Report:
    rep = Report("gf3")
    rhs = qs.gf_A_rhs(order)
    _series_cell(rep, {"order": order, "vs": "A enumeration"}, _a_series(order, False), rhs)
    _series_cell(rep, {"order": order, "vs": "gf2"}, qs.gf_L1_rhs(order), rhs)
    return rep


def check_gf8(order: int, progress: Progress = None) -> Report:
    rep = Report("gf8")
    rhs = qs.gf_L2_rhs(order)
    _series_cell(rep, {"order": order, "vs": "L_2 enumeration"}, _ld_series(2, order), rhs)
    _series_cell(rep, {"order": order, "vs": "B enumeration"}, _b_series(order), rhs)
    return rep


def check_gfAref(order: int, progress: Progress = None) -> Report:
    rep = Report("gfAref")
    rhs = qs.gf_A_refined_rhs(order)
    _series_cell(rep, {"order": order, "vs": "A(n,k,l,j) enumeration"}, _a_series(order, True), rhs)
    _series_cell(rep, {"order": order, "vs": "gf3 at z=1"}, qs.gf_A_rhs(order), rhs.substitute("z", 1))
    return rep


def check_lebesgue(order: int, progress: Progress = None) -> Report:
    rep = Report("lebesgue")
    _series_cell(rep, {"order": order}, *qs.lebesgue_sides(order))
    return rep


def check_sylvester(order: int, progress: Progress = None) -> Report:
    rep = Report("sylvester")
    _series_cell(rep, {"order": order}, *qs.sylvester_sides(order))
    return rep


def check_qbinomial(order: int, t_order: int = 12, progress: Progress = None) -> Report:
    rep = Report("qbinomial")
    _series_cell(rep, {"order": order, "t_order": t_order}, *qs.qbinomial_sides(order, t_order))
    return rep
