"""The strongly regular graph on the blocks of a quasisymmetric 2-design.

Two blocks are adjacent when they meet in x points (the larger intersection
number).  The adjacency matrix has exactly three eigenvalues,

    K = ((r-1)k - (b-1)y) / (x-y)        (valency)
    R = (r - lambda - k + y) / (x-y)
    S = -(k-y) / (x-y)

with multiplicities 1, v-1 and b-v, and the remaining strongly regular
parameters follow from RS = M - K and R + S = Lambda - M.  All values are
computed as exact rationals; integrality is a separate feasibility question
handled by the scanner, not an error here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .designs import DerivedParams, QsdParams, derive_params
from .errors import DegenerateGraphError, InvalidParametersError


@dataclass(frozen=True)
class SrgParams:
    """Strongly regular graph data (vertices, valency, lam, mu) plus spectrum.

    ``lam`` counts common neighbours of adjacent pairs, ``mu`` of
    nonadjacent pairs.  ``eig_r`` and ``eig_s`` are the two restricted
    eigenvalues with multiplicities ``mult_r`` and ``mult_s``.
    """

    vertices: int
    valency: Fraction
    lam: Fraction
    mu: Fraction
    eig_r: Fraction
    eig_s: Fraction
    mult_r: int
    mult_s: int


@dataclass(frozen=True)
class RegularSetParams:
    """A regular vertex subset: every inside vertex has ``degree`` neighbours
    in the set, every outside vertex has ``nexus`` neighbours in it."""

    size: int
    degree: Fraction
    nexus: Fraction


def block_graph_params(p: QsdParams, d: DerivedParams | None = None) -> SrgParams:
    """Strongly regular parameters of the intersection-x graph of p.

    Raises DegenerateGraphError when b <= v (the eigenvalue multiplicity
    b - v would not be positive) or when the smallest eigenvalue is -1,
    which would force x = k.
    """
    if d is None:
        d = derive_params(p)
    if not d.integral:
        raise InvalidParametersError("block graph needs integral r and b")
    b = int(d.b)
    r = int(d.r)
    if b <= p.v:
        raise DegenerateGraphError(f"block count b={b} must exceed v={p.v}")
    dxy = p.x - p.y
    valency = Fraction((r - 1) * p.k - (b - 1) * p.y, dxy)
    eig_r = Fraction(r - p.lam - p.k + p.y, dxy)
    eig_s = Fraction(-(p.k - p.y), dxy)
    if eig_s == -1:
        raise DegenerateGraphError("smallest eigenvalue -1 (x = k): not quasisymmetric")
    mu = valency + eig_r * eig_s
    lam = eig_r + eig_s + mu
    return SrgParams(
        vertices=b,
        valency=valency,
        lam=lam,
        mu=mu,
        eig_r=eig_r,
        eig_s=eig_s,
        mult_r=p.v - 1,
        mult_s=b - p.v,
    )


def regular_set_params(p: QsdParams, d: DerivedParams | None = None) -> RegularSetParams:
    """Degree and nexus of the set of r blocks through a fixed point.

    degree = ((lambda-1)(k-1) - (r-1)(y-1)) / (x-y)
    nexus  = (lambda k - r y) / (x-y)
    """
    if d is None:
        d = derive_params(p)
    if not d.integral:
        raise InvalidParametersError("regular set parameters need integral r")
    r = int(d.r)
    dxy = p.x - p.y
    degree = Fraction((p.lam - 1) * (p.k - 1) - (r - 1) * (p.y - 1), dxy)
    nexus = Fraction(p.lam * p.k - r * p.y, dxy)
    return RegularSetParams(size=r, degree=degree, nexus=nexus)


def srg_sanity(s: SrgParams) -> list[str]:
    """Re-check the defining relations; return the violated ones (empty if none).

    Checked exactly: RS = M - K, R + S = Lambda - M, and that the three
    multiplicities sum to the vertex count.
    """
    violated = []
    if s.eig_r * s.eig_s != s.mu - s.valency:
        violated.append("RS = M - K")
    if s.eig_r + s.eig_s != s.lam - s.mu:
        violated.append("R + S = Lambda - M")
    if 1 + s.mult_r + s.mult_s != s.vertices:
        violated.append("1 + mult_R + mult_S = V")
    return violated
