"""Computational verification that the three feasibility bounds coincide.

The claim: for parameter tuples whose block count satisfies the CC identity,
inequality (H) holds iff (C) holds iff (N) holds, and the parenthesised part
of (H) has the closed form

    -(K-R)(KR + R^2 - 2KS + 2R^2 S - K S^2 - R S^2) / (K^2 (S+1)^2)

once b = (K-R)(K-S)/(K+RS) is substituted.  Verification is semantic: both
sides of each identity are evaluated exactly (arbitrary precision rationals)
on many tuples, rather than expanded symbolically.  For the polynomial
identity between (C) and the quartic

    (v-1)(v-2)xy + k^2(k-1)(k-3) + 2k(k-1)(x+y) - k(k-1)v(x+y-1)

agreement on an integer grid exceeding the per-variable degrees (2 in v,
4 in k, 1 in x, 1 in y) settles the identity outright; the test suite uses
v, k in six-point ranges and x, y in three-point ranges for that reason.
A single failing tuple is reported with full rational values: it would be a
mathematical finding, not a numerical artifact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .criteria import Rat, b_from_cc, calderbank_value, hobart_value, neumaier_terms
from .errors import DegenerateGraphError, InvalidParametersError, NonDesignError, SamplingError


@dataclass(frozen=True)
class RationalTuple:
    """A not-necessarily-integral parameter tuple with CC-consistent block count.

    Carries v, k, x, y plus the derived b (from CC equality), r = bk/v,
    lam = r(k-1)/(v-1), and the three block-graph eigenvalues.
    """

    v: Fraction
    k: Fraction
    x: Fraction
    y: Fraction
    b: Fraction
    r: Fraction
    lam: Fraction
    valency: Fraction
    eig_r: Fraction
    eig_s: Fraction

    @property
    def mu(self) -> Fraction:
        return self.valency + self.eig_r * self.eig_s


def make_tuple(v: Rat, k: Rat, x: Rat, y: Rat) -> RationalTuple:
    """Build a RationalTuple, enforcing its invariants.

    Requires 0 <= y < x < k < v with v > 2, a solvable CC identity, a
    nonzero valency, and k^2 - k - vy + y != 0 (equivalently k lam != r y,
    which holds whenever the nexus is positive).
    """
    v, k, x, y = Fraction(v), Fraction(k), Fraction(x), Fraction(y)
    if not 0 <= y < x < k < v:
        raise InvalidParametersError("need 0 <= y < x < k < v")
    if v <= 2:
        raise InvalidParametersError("need v > 2")
    b = b_from_cc(v, k, x, y)
    r = b * k / v
    lam = r * (k - 1) / (v - 1)
    dxy = x - y
    valency = ((r - 1) * k - (b - 1) * y) / dxy
    eig_r = (r - lam - k + y) / dxy
    eig_s = -(k - y) / dxy
    if valency == 0:
        raise InvalidParametersError("valency K = 0")
    if k * k - k - v * y + y == 0:
        raise InvalidParametersError("k^2 - k - vy + y = 0 (k lam = r y)")
    assert eig_s < -1  # forced by x < k
    return RationalTuple(
        v=v, k=k, x=x, y=y, b=b, r=r, lam=lam, valency=valency, eig_r=eig_r, eig_s=eig_s
    )


def a_paren_identity(t: RationalTuple) -> tuple[Fraction, Fraction]:
    """Both closed forms of the parenthesised part of (H), evaluated exactly.

    The left form is 1 + R^3/K^2 - (R+1)^3/(b-K-1)^2 with b recomputed as
    (K-R)(K-S)/(K+RS); the right form is the fully substituted expression in
    K, R, S alone.  Requires K + RS > 0.
    """
    kk, r, s = t.valency, t.eig_r, t.eig_s
    mu = kk + r * s
    if mu <= 0:
        raise DegenerateGraphError(f"needs K + RS > 0, got {mu}")
    b = (kk - r) * (kk - s) / mu
    if b - kk - 1 == 0:
        raise DegenerateGraphError("b - K - 1 = 0: division by zero")
    lhs = 1 + r**3 / kk**2 - (r + 1) ** 3 / (b - kk - 1) ** 2
    rhs = -(kk - r) * (
        kk * r + r * r - 2 * kk * s + 2 * r * r * s - kk * s * s - r * s * s
    ) / (kk * kk * (s + 1) ** 2)
    return lhs, rhs


def final_polynomial(v: Rat, k: Rat, x: Rat, y: Rat) -> Fraction:
    """The quartic that the substitution chain reduces (H) to."""
    v, k, x, y = Fraction(v), Fraction(k), Fraction(x), Fraction(y)
    return (
        (v - 1) * (v - 2) * x * y
        + k * k * (k - 1) * (k - 3)
        + 2 * k * (k - 1) * (x + y)
        - k * (k - 1) * v * (x + y - 1)
    )


@dataclass(frozen=True)
class ChainReport:
    """Outcome of the full chain of identities on one tuple.

    ``failures`` names the broken links (empty for a clean pass);
    ``common_sign`` is the shared sign of (H), (C) and (N) when they agree.
    """

    tuple: RationalTuple
    failures: tuple[str, ...]
    common_sign: int | None

    @property
    def ok(self) -> bool:
        return not self.failures


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def verify_chain(t: RationalTuple) -> ChainReport:
    """Check every link of the equivalence chain on one tuple, exactly.

    Links: the vertex-count identity b = (K-R)(K-S)/(K+RS); equality of the
    two closed forms of the (H) parenthesis; the polynomial identity between
    (C) and the reduced quartic; and sign agreement of (H), (C) and (N).
    """
    failures: list[str] = []

    mu = t.valency + t.eig_r * t.eig_s
    if mu > 0:
        b_back = (t.valency - t.eig_r) * (t.valency - t.eig_s) / mu
        if b_back != t.b:
            failures.append("vertex-count identity")
        lhs, rhs = a_paren_identity(t)
        if lhs != rhs:
            failures.append("paren identity")
    else:
        failures.append(f"vertex-count identity (K + RS = {mu} not positive)")

    poly = final_polynomial(t.v, t.k, t.x, t.y)
    c_val = calderbank_value(t.v, t.k, t.x, t.y)
    if poly != c_val:
        failures.append("polynomial identity")

    h_val = hobart_value(t.v, t.k, t.lam, t.b, t.valency, t.eig_r)
    if not _sign(h_val) == _sign(poly) == _sign(c_val):
        failures.append("sign agreement (H)/(C)")

    degree = ((t.lam - 1) * (t.k - 1) - (t.r - 1) * (t.y - 1)) / (t.x - t.y)
    n_slack = neumaier_terms(t.v, t.k, t.x, t.y, t.lam, t.r, degree).slack
    if _sign(n_slack) != _sign(c_val):
        failures.append("sign agreement (N)")

    sign = _sign(c_val) if not failures else None
    return ChainReport(tuple=t, failures=tuple(failures), common_sign=sign)


def sample_domain(
    seed: int,
    count: int,
    integral: bool = False,
    max_attempts_per_tuple: int = 2000,
) -> list[RationalTuple]:
    """Deterministic rejection sampling of tuples in the verified domain.

    Beyond the RationalTuple invariants, accepted tuples satisfy the
    design-plausible constraints r > lam > 0, K > R >= 0, K + RS > 0,
    b - K - 1 > 0, nexus > 0 and degree >= 0 (the sign manipulations in the
    equivalence proof multiply by quantities that are positive exactly
    there).  With ``integral`` set, only integer tuples whose derived b, r,
    lam are integers with b > v are kept.  Raises SamplingError when the
    rejection rate exceeds ``max_attempts_per_tuple`` on average.
    """
    if count < 1:
        raise InvalidParametersError("count must be >= 1")
    rng = random.Random(seed)
    out: list[RationalTuple] = []
    attempts = 0
    budget = max_attempts_per_tuple * count
    while len(out) < count:
        attempts += 1
        if attempts > budget:
            raise SamplingError(
                f"accepted {len(out)}/{count} tuples in {attempts - 1} attempts"
            )
        if integral:
            v = Fraction(rng.randint(6, 48))
            k = Fraction(rng.randint(2, int(v) - 1))
            x = Fraction(rng.randint(1, int(k) - 1))
            y = Fraction(rng.randint(0, int(x) - 1))
        else:
            dv = rng.randint(1, 4)
            v = Fraction(rng.randint(6 * dv, 48 * dv), dv)
            dk = rng.randint(1, 4)
            k_lo, k_hi = 2 * dk, int((v - 1) * dk)
            if k_hi < k_lo:
                continue
            k = Fraction(rng.randint(k_lo, k_hi), dk)
            dx = rng.randint(1, 4)
            x_hi = int(k * dx) - 1
            if x_hi < 1:
                continue
            x = Fraction(rng.randint(1, x_hi), dx)
            dy = rng.randint(1, 4)
            y_hi = int(x * dy) - 1
            if y_hi < 0:
                continue
            y = Fraction(rng.randint(0, y_hi), dy)
        if not 0 <= y < x < k < v:
            continue
        try:
            t = make_tuple(v, k, x, y)
        except (InvalidParametersError, NonDesignError):
            continue
        if not (t.r > t.lam > 0):
            continue
        if not (t.valency > t.eig_r >= 0):
            continue
        if t.valency + t.eig_r * t.eig_s <= 0:
            continue
        if t.b - t.valency - 1 <= 0:
            continue
        nexus = (t.lam * t.k - t.r * t.y) / (t.x - t.y)
        if nexus <= 0:
            continue
        degree = ((t.lam - 1) * (t.k - 1) - (t.r - 1) * (t.y - 1)) / (t.x - t.y)
        if degree < 0:
            continue
        if integral:
            if t.b.denominator != 1 or t.r.denominator != 1 or t.lam.denominator != 1:
                continue
            if t.b <= t.v:
                continue
        out.append(t)
    return out


@dataclass(frozen=True)
class VerificationSummary:
    """Aggregated outcome of a sampling run (order-independent)."""

    total: int
    failures: tuple[ChainReport, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_verification(seed: int, samples: int, integral: bool = False) -> VerificationSummary:
    """Sample the domain and verify the whole chain on every tuple."""
    reports = [verify_chain(t) for t in sample_domain(seed, samples, integral=integral)]
    bad = sorted(
        (rep for rep in reports if not rep.ok),
        key=lambda rep: (rep.tuple.v, rep.tuple.k, rep.tuple.x, rep.tuple.y),
    )
    return VerificationSummary(total=len(reports), failures=tuple(bad))
