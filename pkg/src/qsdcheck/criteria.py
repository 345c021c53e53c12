"""Feasibility criteria for quasisymmetric 2-design parameter sets.

Five conditions are evaluated, all as exact rationals:

  CC     block-count identity: 1 - 1/b <= (k(v-k)/(v(v-1))) *
         ((v-1)(2k-x-y) - k(v-k)) / ((k-x)(k-y)), with equality exactly for
         2-designs.  For a 2-design parameter set the slack must vanish, so
         b is a function of (v, k, x, y).
  (N)    B(B-A) <= AC where A = (v-1)(v-2), B = r(k-1)(k-2) and
         C = rd(x-1)(x-2) + r(r-1-d)(y-1)(y-2) count, for a fixed point,
         ordered point pairs, block triples and ordered triple pairs.
         Equality exactly for 3-designs.
  (C)    (v-1)(v-2)(k-x)(k-y) - k(v-k)(v-2)(2k-x-y)
         + k(v-k)(k(v-k)-1) >= 0.  Equality exactly for 3-designs.
  (H)    ((v-2)/v)(1 + R^3/K^2 - (R+1)^3/(b-K-1)^2)
         - (v-2k)^2 lambda / (k^2(k-1)(v-k)) >= 0.
  Krein  Q_11 >= (v-2k)^2(v-1)/(k(v-k)(v-2)), where Q_11 is normalised as
         ((v-1)^2/b) times the parenthesised part of (H).  That scaling is
         the unique one making the two formulations algebraically identical;
         it is cross-checked, not assumed (see ``full_report``).

(N), (C) and (H) are mutually sign-equivalent whenever the CC identity
holds; ``full_report`` enforces that as an internal consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import tables
from .block_graph import SrgParams, block_graph_params, regular_set_params
from .designs import ArdParams, DerivedParams, QsdParams, derive_params, detect_ard
from .errors import ConsistencyError, DegenerateGraphError, InvalidParametersError, NonDesignError

Rat = int | Fraction

SHRIKHANDE_EXCLUDED = "excluded"
SHRIKHANDE_NOT_EXCLUDED = "not-excluded"
SHRIKHANDE_NOT_ARD = "not-ard-shaped"


@dataclass(frozen=True)
class NeumaierTerms:
    """Triple-count moments for a fixed point, over ordered pairs (v, w).

    ordered_pairs = (v-1)(v-2), triple_sum = r(k-1)(k-2), and
    triple_pair_sum = rd(x-1)(x-2) + r(r-1-d)(y-1)(y-2); the slack is
    AC - B(B-A) with (A, B, C) those three values.
    """

    ordered_pairs: Fraction
    triple_sum: Fraction
    triple_pair_sum: Fraction
    slack: Fraction


@dataclass(frozen=True)
class CriterionReport:
    """Exact values and verdicts for every criterion on one parameter set.

    Verdicts are keyed "CC", "N", "C", "H", "Krein" and read "equality",
    "pass" (strictly positive slack) or "fail" (negative slack).  Note that
    a 2-design forces CC equality, so the scanner treats any nonzero CC
    slack as infeasible even though the verdict here only reports the sign.
    ``degenerate_equality`` flags the k = 2 style case where the triple
    equalities hold because every triple count is zero.
    """

    cc_slack: Fraction
    n_slack: Fraction
    c_value: Fraction
    h_value: Fraction
    krein_lhs: Fraction
    krein_rhs: Fraction
    shrikhande: str
    verdicts: dict[str, str]
    degenerate_equality: bool
    external_comment: str | None


def cc_slack(v: int, k: int, x: int, y: int, b: Rat) -> Fraction:
    """RHS minus LHS of the block-count inequality; zero exactly for 2-designs."""
    if not 0 <= y < x < k < v:
        raise InvalidParametersError("need 0 <= y < x < k < v")
    b = Fraction(b)
    if b <= 0:
        raise InvalidParametersError("block count must be positive")
    rhs = Fraction(k * (v - k), v * (v - 1)) * Fraction(
        (v - 1) * (2 * k - x - y) - k * (v - k), (k - x) * (k - y)
    )
    return rhs - (1 - Fraction(1, b))


def b_from_cc(v: Rat, k: Rat, x: Rat, y: Rat) -> Fraction:
    """The unique block count with zero CC slack, b = 1/(1 - T).

    T is the right-hand side of the inequality.  Raises NonDesignError when
    T >= 1, since then no positive block count attains equality.
    """
    v, k, x, y = Fraction(v), Fraction(k), Fraction(x), Fraction(y)
    if not 0 <= y < x < k < v:
        raise InvalidParametersError("need 0 <= y < x < k < v")
    t = (k * (v - k) / (v * (v - 1))) * (
        ((v - 1) * (2 * k - x - y) - k * (v - k)) / ((k - x) * (k - y))
    )
    if t >= 1:
        raise NonDesignError(f"no positive block count attains equality (T = {t} >= 1)")
    return 1 / (1 - t)


def calderbank_value(v: Rat, k: Rat, x: Rat, y: Rat) -> Fraction:
    """The (C) polynomial in the complementary intersection numbers k-x, k-y."""
    v, k, x, y = Fraction(v), Fraction(k), Fraction(x), Fraction(y)
    xb, yb = k - x, k - y
    kv = k * (v - k)
    return (v - 1) * (v - 2) * xb * yb - kv * (v - 2) * (xb + yb) + kv * (kv - 1)


def calderbank(p: QsdParams) -> Fraction:
    """(C) for a parameter set; nonnegative for feasible designs, zero iff 3-design."""
    return calderbank_value(p.v, p.k, p.x, p.y)


def neumaier_terms(
    v: Rat, k: Rat, x: Rat, y: Rat, lam: Rat, r: Rat, degree: Rat
) -> NeumaierTerms:
    """(N) moments and slack from raw rational inputs."""
    v, k, x, y = Fraction(v), Fraction(k), Fraction(x), Fraction(y)
    lam, r, degree = Fraction(lam), Fraction(r), Fraction(degree)
    a = (v - 1) * (v - 2)
    b = r * (k - 1) * (k - 2)
    c = r * degree * (x - 1) * (x - 2) + r * (r - 1 - degree) * (y - 1) * (y - 2)
    return NeumaierTerms(
        ordered_pairs=a, triple_sum=b, triple_pair_sum=c, slack=a * c - b * (b - a)
    )


def neumaier(p: QsdParams, d: DerivedParams | None = None, rs=None) -> NeumaierTerms:
    """(N) for a parameter set; slack is zero exactly for 3-designs."""
    if d is None:
        d = derive_params(p)
    if rs is None:
        rs = regular_set_params(p, d)
    return neumaier_terms(p.v, p.k, p.x, p.y, p.lam, d.r, rs.degree)


def hobart_value(v: Rat, k: Rat, lam: Rat, b: Rat, valency: Rat, eig_r: Rat) -> Fraction:
    """(H) from raw rational inputs.

    Requires a nonzero valency and b - K - 1 != 0 (both squared in
    denominators); violations raise DegenerateGraphError.
    """
    v, k, lam, b = Fraction(v), Fraction(k), Fraction(lam), Fraction(b)
    kk, r = Fraction(valency), Fraction(eig_r)
    if kk == 0:
        raise DegenerateGraphError("valency K = 0: division by zero in (H)")
    if b - kk - 1 == 0:
        raise DegenerateGraphError("b - K - 1 = 0: division by zero in (H)")
    paren = 1 + r**3 / kk**2 - (r + 1) ** 3 / (b - kk - 1) ** 2
    return Fraction(v - 2, 1) / v * paren - (v - 2 * k) ** 2 * lam / (
        k * k * (k - 1) * (v - k)
    )


def hobart(p: QsdParams, d: DerivedParams | None = None, s: SrgParams | None = None) -> Fraction:
    """(H) for a parameter set; nonnegative for feasible designs."""
    if d is None:
        d = derive_params(p)
    if s is None:
        s = block_graph_params(p, d)
    return hobart_value(p.v, p.k, p.lam, d.b, s.valency, s.eig_r)


def krein_values(
    v: Rat, k: Rat, b: Rat, valency: Rat, eig_r: Rat
) -> tuple[Fraction, Fraction]:
    """Krein parameter Q_11 and its lower bound, as exact rationals.

    Q_11 is normalised as ((v-1)^2/b) times the parenthesised part of (H);
    the bound is (v-2k)^2(v-1)/(k(v-k)(v-2)).  With this scaling the margin
    equals v(v-1)^2/((v-2)b) times (H), so the two criteria agree in sign.
    """
    v, k, b = Fraction(v), Fraction(k), Fraction(b)
    kk, r = Fraction(valency), Fraction(eig_r)
    if kk == 0:
        raise DegenerateGraphError("valency K = 0: division by zero in Krein form")
    if b - kk - 1 == 0:
        raise DegenerateGraphError("b - K - 1 = 0: division by zero in Krein form")
    paren = 1 + r**3 / kk**2 - (r + 1) ** 3 / (b - kk - 1) ** 2
    lhs = (v - 1) ** 2 / b * paren
    rhs = (v - 2 * k) ** 2 * (v - 1) / (k * (v - k) * (v - 2))
    return lhs, rhs


def krein_form(
    p: QsdParams, d: DerivedParams | None = None, s: SrgParams | None = None
) -> tuple[Fraction, Fraction]:
    """(Q_11, bound) for a parameter set; see ``krein_values``."""
    if d is None:
        d = derive_params(p)
    if s is None:
        s = block_graph_params(p, d)
    return krein_values(p.v, p.k, d.b, s.valency, s.eig_r)


def squarefree_part(n: int) -> int:
    """Product of the primes dividing n to an odd power."""
    if n < 1:
        raise InvalidParametersError(f"need n >= 1, got {n}")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            count = 0
            while m % p == 0:
                m //= p
                count += 1
            if count % 2:
                result *= p
        p += 1 if p == 2 else 2
    return result * m


def shrikhande_ard(a: ArdParams) -> bool:
    """True when no ARD(n, t) exists by the Hasse-invariant obstruction:
    n = 2 (mod 4) and the squarefree part of n has a prime factor = 3 (mod 4).
    The verdict does not depend on t."""
    n = a.n
    if n % 4 != 2:
        return False
    sf = squarefree_part(n)
    p = 2
    while p * p <= sf:
        if sf % p == 0:
            if p % 4 == 3:
                return True
            while sf % p == 0:
                sf //= p
        p += 1 if p == 2 else 2
    return sf > 1 and sf % 4 == 3


def _verdict(value: Fraction) -> str:
    if value == 0:
        return "equality"
    return "pass" if value > 0 else "fail"


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def full_report(p: QsdParams) -> CriterionReport:
    """Evaluate every criterion on p and cross-check their coherence.

    Requires integral r and b and a nondegenerate block graph.  When the CC
    identity holds (as it must for any actual design), the signs of (N),
    (C), (H) and the Krein margin are checked to agree; disagreement raises
    ConsistencyError because it would contradict an algebraic identity.
    """
    d = derive_params(p)
    if not d.integral:
        raise InvalidParametersError("full report needs integral r and b")
    s = block_graph_params(p, d)
    rs = regular_set_params(p, d)
    cc = cc_slack(p.v, p.k, p.x, p.y, d.b)
    nt = neumaier(p, d, rs)
    c_val = calderbank(p)
    h_val = hobart(p, d, s)
    k_lhs, k_rhs = krein_form(p, d, s)

    if cc == 0:
        signs = {_sign(nt.slack), _sign(c_val), _sign(h_val), _sign(k_lhs - k_rhs)}
        if len(signs) != 1:
            raise ConsistencyError(
                f"criteria disagree in sign on {p}: "
                f"N={nt.slack} C={c_val} H={h_val} Krein={k_lhs - k_rhs}"
            )

    ard = detect_ard(p)
    if ard is None:
        shrik = SHRIKHANDE_NOT_ARD
    else:
        shrik = SHRIKHANDE_EXCLUDED if shrikhande_ard(ard) else SHRIKHANDE_NOT_EXCLUDED

    verdicts = {
        "CC": _verdict(cc),
        "N": _verdict(nt.slack),
        "C": _verdict(c_val),
        "H": _verdict(h_val),
        "Krein": _verdict(k_lhs - k_rhs),
    }
    return CriterionReport(
        cc_slack=cc,
        n_slack=nt.slack,
        c_value=c_val,
        h_value=h_val,
        krein_lhs=k_lhs,
        krein_rhs=k_rhs,
        shrikhande=shrik,
        verdicts=verdicts,
        degenerate_equality=(nt.slack == 0 and nt.triple_sum == 0),
        external_comment=tables.external_comment(p),
    )
