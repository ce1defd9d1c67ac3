"""Truncated formal power series in q with sparse polynomial coefficients in the
markers x, y, z, a, t.

Coefficients are exact Python ints.  A series keeps q-exponents up to
``order`` and, optionally, t-exponents up to ``t_order``; anything beyond is
dropped as soon as it is produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

MARKERS = ("x", "y", "z", "a", "t")
_IDX = {m: i for i, m in enumerate(MARKERS)}
_T = _IDX["t"]

Exponents = tuple[int, int, int, int, int]
ZERO_EXP: Exponents = (0, 0, 0, 0, 0)


def mono(**powers: int) -> Exponents:
    e = [0] * len(MARKERS)
    for name, p in powers.items():
        if name not in _IDX:
            raise KeyError(f"unknown marker {name!r}; markers are {MARKERS}")
        if p < 0:
            raise ValueError(f"negative exponent for {name}")
        e[_IDX[name]] = p
    return tuple(e)  # type: ignore[return-value]


class MarkerPoly:
    """Sparse integer polynomial in the markers; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Exponents, int]] = None):
        self.terms: dict[Exponents, int] = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int = 1) -> "MarkerPoly":
        return cls({ZERO_EXP: c})

    @classmethod
    def monomial(cls, c: int = 1, **powers: int) -> "MarkerPoly":
        return cls({mono(**powers): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MarkerPoly.const(other)
        return isinstance(other, MarkerPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MarkerPoly") -> "MarkerPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MarkerPoly(out)

    def __neg__(self) -> "MarkerPoly":
        return MarkerPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MarkerPoly") -> "MarkerPoly":
        return self + (-other)

    def mul(self, other: "MarkerPoly", t_order: Optional[int] = None) -> "MarkerPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                if t_order is not None and e[_T] > t_order:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return MarkerPoly(out)

    __mul__ = mul

    def coeff(self, **powers: int) -> int:
        return self.terms.get(mono(**powers), 0)

    def substitute(self, marker: str, value: int) -> "MarkerPoly":
        i = _IDX[marker]
        out: dict = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1 :]
            out[e2] = out.get(e2, 0) + c * value ** e[i]
        return MarkerPoly(out)

    def extract(self, marker: str, power: int) -> "MarkerPoly":
        i = _IDX[marker]
        return MarkerPoly(
            {e[:i] + (0,) + e[i + 1 :]: c for e, c in self.terms.items() if e[i] == power}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = [
                name if p == 1 else f"{name}^{p}" for name, p in zip(MARKERS, e) if p
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    __repr__ = __str__


class OrderMismatch(ValueError):
    pass


class TruncatedSeries:
    """Power series in q, coefficients MarkerPoly, truncated at ``order``."""

    __slots__ = ("order", "t_order", "coeffs")

    def __init__(
        self,
        order: int,
        coeffs: Iterable[MarkerPoly] = (),
        t_order: Optional[int] = None,
    ):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.order = order
        self.t_order = t_order
        cs = list(coeffs)[: order + 1]
        cs += [MarkerPoly() for _ in range(order + 1 - len(cs))]
        if t_order is not None:
            cs = [MarkerPoly({e: c for e, c in p.terms.items() if e[_T] <= t_order}) for p in cs]
        self.coeffs: list[MarkerPoly] = cs

    # -- constructors
    @classmethod
    def zero(cls, order: int, t_order: Optional[int] = None) -> "TruncatedSeries":
        return cls(order, (), t_order)

    @classmethod
    def one(cls, order: int, t_order: Optional[int] = None) -> "TruncatedSeries":
        return cls.term(order, 0, MarkerPoly.const(1), t_order)

    @classmethod
    def term(
        cls, order: int, q_exp: int, poly: MarkerPoly, t_order: Optional[int] = None
    ) -> "TruncatedSeries":
        s = cls.zero(order, t_order)
        if 0 <= q_exp <= order:
            s.coeffs[q_exp] = cls(order, [poly], t_order).coeffs[0]
        return s

    @classmethod
    def monomial(
        cls, order: int, q_exp: int = 0, c: int = 1, t_order: Optional[int] = None, **powers: int
    ) -> "TruncatedSeries":
        return cls.term(order, q_exp, MarkerPoly.monomial(c, **powers), t_order)

    # -- ring operations
    def _compat(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
        if self.t_order != other.t_order:
            raise OrderMismatch(f"t-orders differ: {self.t_order} vs {other.t_order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._compat(other)
        return TruncatedSeries(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.t_order
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [-a for a in self.coeffs], self.t_order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._compat(other)
        N = self.order
        acc: list[dict] = [dict() for _ in range(N + 1)]
        right = [(j, p) for j, p in enumerate(other.coeffs) if p]
        T = self.t_order
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in right:
                if i + j > N:
                    break
                slot = acc[i + j]
                for e1, c1 in a.terms.items():
                    for e2, c2 in b.terms.items():
                        e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                        if T is not None and e[4] > T:
                            continue
                        slot[e] = slot.get(e, 0) + c1 * c2
        return TruncatedSeries(N, [MarkerPoly(d) for d in acc], T)

    def scale(self, poly: MarkerPoly, q_shift: int = 0) -> "TruncatedSeries":
        """Multiply by ``poly * q**q_shift``."""
        out = [MarkerPoly() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a and i + q_shift <= self.order:
                out[i + q_shift] = a.mul(poly, self.t_order)
        return TruncatedSeries(self.order, out, self.t_order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.t_order == other.t_order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, t_order={self.t_order})"

    # -- inspection
    def coeff(self, q_exp: int, **powers: int) -> int:
        if q_exp > self.order:
            raise ValueError(f"q^{q_exp} is beyond the truncation order {self.order}")
        if q_exp < 0:
            return 0
        return self.coeffs[q_exp].coeff(**powers)

    def substitute(self, marker: str, value: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.order, [p.substitute(marker, value) for p in self.coeffs], self.t_order
        )

    def extract(self, marker: str, power: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.order, [p.extract(marker, power) for p in self.coeffs], self.t_order
        )

    def dump(self) -> str:
        return "\n".join(f"q^{n}: {p}" for n, p in enumerate(self.coeffs))


def series_add(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    return s1 + s2


def series_mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    return s1 * s2


def _poly_inverse(c0: MarkerPoly, t_order: Optional[int]) -> MarkerPoly:
    """Inverse of a q^0 coefficient: exactly 1, or 1 + (t-divisible) under t-truncation."""
    if c0 == MarkerPoly.const(1):
        return c0
    rest = c0 - MarkerPoly.const(1)
    if t_order is None or c0.terms.get(ZERO_EXP) != 1 or any(e[_T] == 0 for e in rest.terms):
        raise ValueError(f"constant term {c0} is not invertible")
    # 1/(1 + r) = sum (-r)^k, and (-r)^k vanishes past k = t_order
    neg = -rest
    out = MarkerPoly.const(1)
    power = MarkerPoly.const(1)
    for _ in range(t_order):
        power = power.mul(neg, t_order)
        out = out + power
    return out


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    N, T = s.order, s.t_order
    inv0 = _poly_inverse(s.coeffs[0], T)
    out = [MarkerPoly() for _ in range(N + 1)]
    out[0] = inv0
    nz = [(i, p) for i, p in enumerate(s.coeffs) if p and i > 0]
    for n in range(1, N + 1):
        acc = MarkerPoly()
        for i, p in nz:
            if i > n:
                break
            if out[n - i]:
                acc = acc + p.mul(out[n - i], T)
        out[n] = (-acc).mul(inv0, T) if acc else MarkerPoly()
    return TruncatedSeries(N, out, T)


def first_difference(s1: TruncatedSeries, s2: TruncatedSeries):
    """First ``(q_exp, exponents, c1, c2)`` where the series differ, or None."""
    s1._compat(s2)
    for n, (a, b) in enumerate(zip(s1.coeffs, s2.coeffs)):
        if a != b:
            for e in sorted(set(a.terms) | set(b.terms)):
                if a.terms.get(e, 0) != b.terms.get(e, 0):
                    return n, dict(zip(MARKERS, e)), a.terms.get(e, 0), b.terms.get(e, 0)
    return None


# -- q-Pochhammer ------------------------------------------------------------


@dataclass(frozen=True)
class PochhammerSpec:
    """``(c * M * q**q_shift ; q**step)_length`` with M a marker monomial.

    ``length=None`` is the infinite product.
    """

    c: int = 1
    markers: Exponents = ZERO_EXP
    q_shift: int = 0
    step: int = 1
    length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError("step must be >= 1")


def pochhammer(spec: PochhammerSpec, order: int, t_order: Optional[int] = None) -> TruncatedSeries:
    out = TruncatedSeries.one(order, t_order)
    base = MarkerPoly({spec.markers: -spec.c})
    i = 0
    while spec.length is None or i < spec.length:
        shift = spec.q_shift + spec.step * i
        if shift > order:
            if spec.length is None:
                break
            i += 1
            continue
        out = out + out.scale(base, shift)
        i += 1
    return out


def qpoch(order: int, c: int = 1, q_shift: int = 0, step: int = 1, length=None, t_order=None, **markers) -> TruncatedSeries:
    """Shorthand: ``qpoch(N, c=-1, q_shift=1, z=1)`` is ``(-zq; q)_inf``."""
    return pochhammer(PochhammerSpec(c, mono(**markers), q_shift, step, length), order, t_order)


def _qq(order: int, n: int, step: int = 1) -> TruncatedSeries:
    """``(q^step; q^step)_n``."""
    return qpoch(order, q_shift=step, step=step, length=n)


def _color_product(order: int, m: int) -> TruncatedSeries:
    """``prod_{i=1..m} (x + y q^i)``: (-yq/x; q)_m x^m with x pulled in."""
    out = TruncatedSeries.one(order)
    x = MarkerPoly.monomial(x=1)
    y = MarkerPoly.monomial(y=1)
    for i in range(1, m + 1):
        out = out.scale(x) + out.scale(y, i)
    return out


# -- generating functions of the families -------------------------------------


def _gf_sum_over_parts(order: int, base_exp) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    m = 0
    while base_exp(m) <= order:
        term = _color_product(order, m).scale(MarkerPoly.const(1), base_exp(m))
        total = total + term * series_inverse(_qq(order, m))
        m += 1
    return total


def gf_L1_rhs(order: int) -> TruncatedSeries:
    """sum_m (x+yq)...(x+yq^m) q^{m(m+1)/2} / (q)_m: counts L_1(n,k,l) by x^k y^l q^n."""
    return _gf_sum_over_parts(order, lambda m: m * (m + 1) // 2)


def gf_L2_rhs(order: int) -> TruncatedSeries:
    """Same with q^{m^2}: counts L_2(n,k,l) and B(n,k,l)."""
    return _gf_sum_over_parts(order, lambda m: m * m)


def _a_exponent(k: int, l: int) -> int:
    return (k + l + 1) * (k + l) // 2 + (l + 1) * l // 2


def gf_A_rhs(order: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    inv = [series_inverse(_qq(order, n)) for n in range(order + 1)]
    for l in range(order + 1):
        if _a_exponent(0, l) > order:
            break
        for k in range(order + 1):
            e = _a_exponent(k, l)
            if e > order:
                break
            total = total + (inv[k] * inv[l]).scale(MarkerPoly.monomial(x=k, y=l), e)
    return total


def gf_A_refined_rhs(order: int) -> TruncatedSeries:
    """Adds z^j for the j red parts no larger than l."""
    total = TruncatedSeries.zero(order)
    inv_q = [series_inverse(_qq(order, n)) for n in range(order + 1)]
    for l in range(order + 1):
        if _a_exponent(0, l) > order:
            break
        small_reds = qpoch(order, c=-1, q_shift=1, length=l, z=1)
        greens = series_inverse(_qq(order, l, step=2))
        side = small_reds * greens
        for k in range(order + 1):
            e = _a_exponent(k, l)
            if e > order:
                break
            total = total + (inv_q[k] * side).scale(MarkerPoly.monomial(x=k, y=l), e)
    return total


# -- classical identities ------------------------------------------------------


def lebesgue_sides(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    left = TruncatedSeries.zero(order)
    n = 0
    while n * (n + 1) // 2 <= order:
        num = qpoch(order, c=-1, q_shift=1, length=n, z=1)
        left = left + (num * series_inverse(_qq(order, n))).scale(MarkerPoly.const(1), n * (n + 1) // 2)
        n += 1
    right = qpoch(order, c=-1, q_shift=1) * qpoch(order, c=-1, q_shift=2, step=2, z=1)
    return left, right


def sylvester_sides(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    left = qpoch(order, c=-1, q_shift=1, a=1)
    right = TruncatedSeries.one(order)
    k = 1
    while (3 * k * k - k) // 2 <= order:
        term = qpoch(order, c=-1, q_shift=1, length=k - 1, a=1)
        tail = TruncatedSeries.one(order) + TruncatedSeries.monomial(order, 2 * k, a=1)
        term = term * tail * series_inverse(_qq(order, k))
        right = right + term.scale(MarkerPoly.monomial(a=k), (3 * k * k - k) // 2)
        k += 1
    return left, right


def qbinomial_sides(order: int, t_order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    left = TruncatedSeries.zero(order, t_order)
    for n in range(t_order + 1):
        a_n = qpoch(order, length=n, t_order=t_order, a=1)
        q_n = qpoch(order, q_shift=1, length=n, t_order=t_order)
        left = left + (a_n * series_inverse(q_n)).scale(MarkerPoly.monomial(t=n))
    at = qpoch(order, t_order=t_order, a=1, t=1)
    t_inf = qpoch(order, t_order=t_order, t=1)
    return left, at * series_inverse(t_inf)


BUILDERS = {
    "gf2": lambda N, T=None: gf_L1_rhs(N),
    "gf3": lambda N, T=None: gf_A_rhs(N),
    "gfAref": lambda N, T=None: gf_A_refined_rhs(N),
    "gf8": lambda N, T=None: gf_L2_rhs(N),
    "lebesgue-left": lambda N, T=None: lebesgue_sides(N)[0],
    "lebesgue-right": lambda N, T=None: lebesgue_sides(N)[1],
    "sylvester-left": lambda N, T=None: sylvester_sides(N)[0],
    "sylvester-right": lambda N, T=None: sylvester_sides(N)[1],
    "qbinomial-left": lambda N, T=12: qbinomial_sides(N, 12 if T is None else T)[0],
    "qbinomial-right": lambda N, T=12: qbinomial_sides(N, 12 if T is None else T)[1],
}
