"""Canonical heights and Gram matrices on y^2 = x^3 + b*x.

The height used here is h^(P) = lim 4^{-k} h(x(2^k P)) with
h(a/b) = log max(|a|, |b|); it is the normalization for which the published
regulator-style determinants are stated, and it satisfies
h^(mP) = m^2 h^(P) and the parallelogram law.

Writing x(2^k P) = u_k / w_k in lowest terms and one duplication step as

    F(u, w) = (u^2 - b w^2)^2,   G(u, w) = 4 u w (u^2 + b w^2),

the exact recurrence  h_{k+1} = 4 h_k + D_k - gamma_k  holds with
D_k = log max(|F|, |G|) - 4 log max(|u_k|, |w_k|)  (a bounded, scale-free
quantity read off the real projective orbit) and gamma_k = log gcd(F, G).
Telescoping gives

    h^(P) = log max(|u_0|, |w_0|) + sum_k 4^{-(k+1)} (D_k - gamma_k).

The gcd divides Res(F, G) = 4096 b^6, so gamma_k is supported on the primes
dividing 2b and is recovered exactly from fixed-precision p-adic trackers;
no exact big-integer orbit is ever needed.  The tail after K terms is at
most C * 4^{-K} / 3 with the explicit constant below (cofactor identities
bound |D_k| on the unit box), so the series is truncated rigorously.

When factoring 2b exceeds the budget, a fallback computes the limit directly
on exact fractions with the same tail bound; it reaches only coarse
precision before the integers blow up, and raises PrecisionUnreachable
beyond that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from mpmath import mp, mpf

from .arith import DEFAULT_EFFORT, EffortExceeded, FactorEffort, factor
from .curve import Curve, INFINITY, Point, _add_unchecked, is_on_curve, OffCurve

_MAX_SERIES_TERMS = 60
_FALLBACK_MAX_BITS = 1 << 21


class PrecisionUnreachable(RuntimeError):
    """The convergence budget ran out before the requested precision."""

    def __init__(self, message: str, value: float | None = None, error_bound: float | None = None):
        super().__init__(message)
        self.value = value
        self.error_bound = error_bound


class Inconclusive(RuntimeError):
    """Every candidate determinant sits between 0 and the tolerance."""


@dataclass(frozen=True)
class HeightValue:
    value: float
    error_bound: float

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[float, ...], ...]
    determinant: float


def _require(E: Curve, P: Point):
    if not is_on_curve(E, P):
        raise OffCurve(f"{P} is not on {E}")


def _is_torsion(E: Curve, P: Point) -> bool:
    """Rational torsion here has order dividing 4, so check 4P == O."""
    Q = _add_unchecked(E, P, P)
    Q = _add_unchecked(E, Q, Q)
    return Q.is_infinity


def _log_big(m: int) -> float:
    """log of a positive integer without overflowing float."""
    if m.bit_length() <= 900:
        return math.log(m)
    e = m.bit_length() - 60
    return math.log(m >> e) + e * math.log(2)


def _tail_constant(A: int) -> float:
    # |D_k| <= 2 log(|A|+3) + 2 + log 4 and 0 <= gamma_k <= log(4096 |A|^6)
    return 8.0 * math.log(abs(A) + 3) + 12.0


def _valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


class _PadicTracker:
    """Tracks (u_k, w_k) mod p^M just closely enough to read off the
    cancellation min(v_p(F), v_p(G)) at every step."""

    def __init__(self, p: int, A: int, u0: int, w0: int, steps: int):
        self.p = p
        r = (12 if p == 2 else 0) + 6 * _valuation(abs(A), p)
        self.cap = r
        self.M = (steps + 2) * r + 8
        self.mod = p**self.M
        self.u = u0 % self.mod
        self.w = w0 % self.mod
        self.A = A % self.mod

    def _vp(self, residue: int) -> int:
        if residue == 0:
            return self.M
        return _valuation(residue, self.p)

    def step(self) -> int:
        mod = self.mod
        t = (self.u * self.u - self.A * self.w * self.w) % mod
        fu = t * t % mod
        gw = 4 * self.u * self.w % mod * ((self.u * self.u + self.A * self.w * self.w) % mod) % mod
        c = min(self._vp(fu), self._vp(gw))
        if c > self.cap:
            raise AssertionError(f"cancellation {c} above resultant cap at p={self.p}")
        pc = self.p**c
        self.M -= c
        self.mod = mod // pc if c else mod
        self.u = (fu // pc) % self.mod
        self.w = (gw // pc) % self.mod
        self.A %= self.mod
        return c


def _bad_primes(E: Curve, effort: FactorEffort) -> list[int]:
    return list(factor(2 * abs(E.b), effort).distinct_primes())


def _series_height(E: Curve, P: Point, bad: list[int], precision: float) -> HeightValue:
    A = E.b
    x = P.x
    u0, w0 = x.numerator, x.denominator
    c_tail = _tail_constant(A)
    K = max(8, math.ceil(math.log(2 * c_tail / (3 * precision), 4)) + 1)
    if K > _MAX_SERIES_TERMS:
        raise PrecisionUnreachable(f"precision {precision} needs {K} terms")
    trackers = [_PadicTracker(p, A, u0, w0, K) for p in bad]
    digits = 30 + K * (2 * len(str(abs(A))) + 4)
    with mp.workdps(max(50, digits)):
        scale = mpf(max(abs(u0), abs(w0)))
        U = mpf(u0) / scale
        W = mpf(w0) / scale
        Amp = mpf(A)
        logs = {p: mp.log(p) for p in bad}
        total = mp.log(scale)
        quarter = mpf(1) / 4
        weight = quarter
        for _ in range(K):
            t = U * U - Amp * W * W
            fu = t * t
            gw = 4 * U * W * (U * U + Amp * W * W)
            s = max(abs(fu), abs(gw))
            gamma = mpf(0)
            for tr in trackers:
                c = tr.step()
                if c:
                    gamma += c * logs[tr.p]
            total += weight * (mp.log(s) - gamma)
            weight *= quarter
            U, W = fu / s, gw / s
        return HeightValue(float(total), precision)


def _doubling_height(E: Curve, P: Point, precision: float) -> HeightValue:
    """Exact-fraction fallback: h_k / 4^k with tail bound C * 4^{-k} / 3."""
    A = E.b
    x = P.x
    u, w = x.numerator, x.denominator
    c_tail = _tail_constant(A)
    k = 0
    while True:
        err = c_tail / (3 * 4**k)
        if err <= precision:
            return HeightValue(_log_big(max(abs(u), abs(w))) / 4**k, err)
        if u.bit_length() + w.bit_length() > _FALLBACK_MAX_BITS:
            value = _log_big(max(abs(u), abs(w))) / 4**k
            raise PrecisionUnreachable(
                f"doubling fallback stalled at error {err:.3g} > {precision:.3g}",
                value=value,
                error_bound=err,
            )
        t = u * u - A * w * w
        fu = t * t
        gw = 4 * u * w * (u * u + A * w * w)
        g = math.gcd(fu, gw)
        u, w = fu // g, gw // g
        k += 1


def canonical_height(
    E: Curve,
    P: Point,
    precision: float = 1e-8,
    effort: FactorEffort = DEFAULT_EFFORT,
) -> HeightValue:
    """Canonical height of P on E, accurate to within `precision`.

    Torsion points (including O) get an exact 0.  The fast path needs the
    primes dividing 2b; if factoring exceeds the budget the doubling-limit
    fallback is used, which may raise PrecisionUnreachable.
    """
    if precision <= 0:
        raise ValueError("precision must be positive")
    _require(E, P)
    if P.is_infinity or _is_torsion(E, P):
        return HeightValue(0.0, 0.0)
    try:
        bad = _bad_primes(E, effort)
    except EffortExceeded:
        return _doubling_height(E, P, precision)
    return _series_height(E, P, bad, precision)


def height_pairing(
    E: Curve,
    P: Point,
    Q: Point,
    precision: float = 1e-8,
    effort: FactorEffort = DEFAULT_EFFORT,
    _memo: dict | None = None,
) -> float:
    """<P, Q> = (h^(P+Q) - h^(P) - h^(Q)) / 2, within 3 * precision / 2."""

    def h(R: Point) -> float:
        if _memo is None:
            return canonical_height(E, R, precision, effort).value
        key = (R.x, R.y)
        if key not in _memo:
            _memo[key] = canonical_height(E, R, precision, effort).value
        return _memo[key]

    _require(E, P)
    _require(E, Q)
    return (h(_add_unchecked(E, P, Q)) - h(P) - h(Q)) / 2


def gram_matrix(
    E: Curve,
    points: list[Point],
    precision: float = 1e-8,
    effort: FactorEffort = DEFAULT_EFFORT,
) -> GramMatrix:
    """Height pairing Gram matrix; diagonal entries are canonical heights."""
    memo: dict = {}
    k = len(points)
    entries = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            v = height_pairing(E, points[i], points[j], precision, effort, _memo=memo)
            entries[i][j] = entries[j][i] = v
    det = float(np.linalg.det(np.array(entries, dtype=np.float64))) if k else 1.0
    return GramMatrix(tuple(tuple(row) for row in entries), det)


def gram_determinant(
    E: Curve,
    points: list[Point],
    precision: float = 1e-8,
    effort: FactorEffort = DEFAULT_EFFORT,
) -> float:
    return gram_matrix(E, points, precision, effort).determinant


def independence_rank(
    E: Curve,
    points: list[Point],
    tol: float = 1e-3,
    precision: float = 1e-8,
    effort: FactorEffort = DEFAULT_EFFORT,
) -> int:
    """Largest k such that some k-subset has Gram determinant > tol.

    Determinants in (0, tol] certify nothing; if no subset clears tol and at
    least one lands in that gray zone, Inconclusive is raised rather than
    returning a possibly wrong rank.
    """
    full = gram_matrix(E, points, precision, effort)
    m = np.array(full.entries, dtype=np.float64)
    ambiguous = False
    for k in range(len(points), 0, -1):
        for idx in combinations(range(len(points)), k):
            sub = m[np.ix_(idx, idx)]
            det = float(np.linalg.det(sub))
            if det > tol:
                return k
            if 0 < det <= tol:
                ambiguous = True
    if ambiguous:
        raise Inconclusive("all candidate determinants fall in (0, tol]")
    return 0
