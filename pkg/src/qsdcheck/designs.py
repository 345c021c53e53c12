"""Parameter records and derived quantities for quasisymmetric 2-designs.

A quasisymmetric 2-(v,k,lambda) design has v points, constant block size k,
every point pair on exactly lambda blocks, and exactly two distinct block
intersection sizes x > y.  Everything here is exact integer / rational
arithmetic; no floating point is used anywhere in the package's computation
paths, because several feasibility criteria hinge on detecting exact zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParametersError, NonDesignError, NotQuasisymmetricError


@dataclass(frozen=True)
class QsdParams:
    """Candidate parameter set (v, k, lambda, x, y).

    Canonical ordering k > x > y >= 0 is enforced at construction; inputs
    with x < y are normalised by swapping.  Requires 1 < k < v and
    lambda >= 1.
    """

    v: int
    k: int
    lam: int
    x: int
    y: int

    def __post_init__(self) -> None:
        for name in ("v", "k", "lam", "x", "y"):
            val = getattr(self, name)
            if not isinstance(val, int) or isinstance(val, bool):
                raise InvalidParametersError(f"{name} must be an integer, got {val!r}")
        if not 1 < self.k < self.v:
            raise InvalidParametersError(f"need 1 < k < v, got k={self.k}, v={self.v}")
        if self.lam < 1:
            raise InvalidParametersError(f"lambda must be >= 1, got {self.lam}")
        if self.x == self.y:
            raise InvalidParametersError("intersection numbers x, y must be distinct")
        if self.x < self.y:
            x, y = self.y, self.x
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)
        if self.y < 0:
            raise InvalidParametersError(f"intersection numbers must be >= 0, got y={self.y}")
        if self.x >= self.k:
            raise InvalidParametersError(
                f"need k > x (blocks are distinct as sets), got k={self.k}, x={self.x}"
            )


@dataclass(frozen=True)
class DerivedParams:
    """Replication number r = lambda(v-1)/(k-1) and block count b = vr/k."""

    r: Fraction
    b: Fraction
    integral: bool


@dataclass(frozen=True)
class ArdParams:
    """Affine resolvable design shape ARD(n, t) with n >= 2, t >= 0."""

    n: int
    t: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidParametersError(f"ARD needs n >= 2, got {self.n}")
        if self.t < 0:
            raise InvalidParametersError(f"ARD needs t >= 0, got {self.t}")


def derive_params(p: QsdParams) -> DerivedParams:
    """Return the exact replication number and block count for p."""
    r = Fraction(p.lam * (p.v - 1), p.k - 1)
    b = r * p.v / p.k
    return DerivedParams(r=r, b=b, integral=(r.denominator == 1 and b.denominator == 1))


def complement(p: QsdParams, d: DerivedParams | None = None) -> tuple[QsdParams, DerivedParams]:
    """Parameters of the complementary design (each block replaced by its complement).

    The map is v' = v, k' = v-k, lambda' = b-2r+lambda, b' = b, r' = b-r,
    x' = v-2k+x, y' = v-2k+y.  Raises NonDesignError when the image cannot
    be a design (lambda' < 1 or a negative intersection number).
    """
    if d is None:
        d = derive_params(p)
    if not d.integral:
        raise NonDesignError("complementation needs integral r and b")
    b = int(d.b)
    r = int(d.r)
    lam_c = b - 2 * r + p.lam
    y_c = p.v - 2 * p.k + p.y
    if y_c < 0:
        raise NonDesignError(
            f"complement intersection number v-2k+y = {y_c} is negative"
        )
    if lam_c < 1:
        raise NonDesignError(f"complement pair count b-2r+lambda = {lam_c} is not positive")
    pc = QsdParams(v=p.v, k=p.v - p.k, lam=lam_c, x=p.v - 2 * p.k + p.x, y=y_c)
    dc = DerivedParams(r=Fraction(b - r), b=Fraction(b), integral=True)
    return pc, dc


def bh_family(q: int) -> QsdParams:
    """Parameter set of the known infinite family on v = q^3 points, q a power of two.

    v = q^3, k = q^2(q-1)/2, lambda = q(q^3-q^2-2)/4, x = k/2, y = x - q^2/4.
    """
    if not isinstance(q, int) or q < 2 or q & (q - 1) != 0:
        raise InvalidParametersError(f"q must be a power of two >= 2, got {q!r}")
    v = q**3
    k2 = q * q * (q - 1)
    if k2 % 2:
        raise InvalidParametersError("internal: k not integral")
    k = k2 // 2
    lam4 = q * (q**3 - q * q - 2)
    if lam4 % 4:
        raise InvalidParametersError("internal: lambda not integral")
    lam = lam4 // 4
    x = k // 2
    y = x - (q * q) // 4
    return QsdParams(v=v, k=k, lam=lam, x=x, y=y)


def ard_params(a: ArdParams) -> QsdParams:
    """Parameter set of an affine resolvable design ARD(n, t).

    v = n^2((n-1)t+1), k = v/n, lambda = nt+1, x = k^2/v = (n-1)t+1, y = 0.
    Raises NotQuasisymmetricError if the derived intersection numbers
    coincide (no such n, t exist, but the guard is kept).
    """
    n, t = a.n, a.t
    x = (n - 1) * t + 1
    v = n * n * x
    k = n * x
    lam = n * t + 1
    if x == 0:
        raise NotQuasisymmetricError("derived intersection numbers coincide (x = y = 0)")
    return QsdParams(v=v, k=k, lam=lam, x=x, y=0)


def ard_derived(a: ArdParams) -> DerivedParams:
    """Closed-form r = n^2 t + n + 1 and b = nr for an ARD(n, t)."""
    r = a.n * a.n * a.t + a.n + 1
    return DerivedParams(r=Fraction(r), b=Fraction(a.n * r), integral=True)


def detect_ard(p: QsdParams) -> ArdParams | None:
    """Recognise the ARD(n, t) parameter shape, if any.

    Matches when y = 0, n := v/k is an integer >= 2, x = k^2/v, and
    t := (x-1)/(n-1) is a nonnegative integer with lambda = nt+1.  This is
    shape detection only; it does not certify that a resolution exists.
    """
    if p.y != 0:
        return None
    if p.v % p.k != 0:
        return None
    n = p.v // p.k
    if n < 2:
        return None
    if p.k * p.k != p.v * p.x:
        return None
    if (p.x - 1) % (n - 1) != 0:
        return None
    t = (p.x - 1) // (n - 1)
    if t < 0:
        return None
    if p.lam != n * t + 1:
        return None
    return ArdParams(n=n, t=t)
