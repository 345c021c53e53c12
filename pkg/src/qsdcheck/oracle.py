"""Explicit small designs and brute-force verification of the closed forms.

Everything the rest of the package computes from formulas (replication
number, block count, intersection numbers, block-graph parameters and
spectrum, regular-set degree and nexus, triple-count moments, complement
parameters) is re-derived here by literal counting on concrete block lists,
and any disagreement raises OracleMismatchError naming the quantity.

Three constructions are provided: the pair design (all 2-subsets of n
points), the unique 2-(6,3,2) design (hard-coded block list; its block
graph is the Petersen graph), and the Steiner system S(4,7,23) built from
scratch as the supports of the weight-7 words of the greedy lexicographic
binary code of length 23 and minimum distance 7.  The lexicode construction
is deterministic and self-checked (every 4-set of points must lie in
exactly one block) before anything downstream trusts it.

Spectrum verification never touches floating point: with predicted
eigenvalues R and S and mu = K + RS, the adjacency matrix must satisfy
A^2 - (R+S)A + RS*I = mu*J exactly, which pins the spectrum on the
complement of the all-ones eigenvector, and the two multiplicities follow
from the zero trace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .block_graph import block_graph_params, regular_set_params
from .criteria import neumaier
from .designs import QsdParams, complement, derive_params
from .errors import (
    ConsistencyError,
    InvalidParametersError,
    NotQuasisymmetricError,
    OracleMismatchError,
)


@dataclass(frozen=True)
class ExplicitDesign:
    """A concrete design: points 0..v-1 and a list of sorted point tuples."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.v < 1 or not self.blocks:
            raise InvalidParametersError("need at least one point and one block")
        for block in self.blocks:
            if tuple(sorted(set(block))) != block:
                raise InvalidParametersError(f"block {block} not sorted and duplicate-free")
            if block[0] < 0 or block[-1] >= self.v:
                raise InvalidParametersError(f"block {block} out of point range")

    def masks(self) -> list[int]:
        """Blocks as bit masks (bit i set iff point i in the block)."""
        out = []
        for block in self.blocks:
            m = 0
            for i in block:
                m |= 1 << i
            out.append(m)
        return out


@dataclass(frozen=True)
class OracleReport:
    """All quantities measured by counting on one design."""

    params: QsdParams
    r: int
    b: int
    srg_vertices: int
    srg_valency: int
    srg_lam: int
    srg_mu: int
    eig_r: int
    eig_s: int
    mult_r: int
    mult_s: int
    degree: int
    nexus: int
    triple_moments: tuple[int, int, int]


def build_pair_design(n: int) -> ExplicitDesign:
    """All 2-subsets of an n-set: the 2-(n,2,1) design, b = n(n-1)/2.

    Quasisymmetric (intersections {0,1}) for n >= 4; for n = 3 only
    intersection size 1 occurs and verification flags it.
    """
    if n < 3:
        raise InvalidParametersError(f"need n >= 3, got {n}")
    return ExplicitDesign(v=n, blocks=tuple(itertools.combinations(range(n), 2)))


def build_6_3_2() -> ExplicitDesign:
    """The unique 2-(6,3,2) design, one canonical labelling.

    Ten blocks on points 0..5; any two blocks meet in 1 or 2 points and the
    intersection-2 graph is the Petersen graph.
    """
    blocks = (
        (0, 1, 3),
        (0, 1, 5),
        (0, 2, 3),
        (0, 2, 4),
        (0, 4, 5),
        (1, 2, 4),
        (1, 2, 5),
        (1, 3, 4),
        (2, 3, 5),
        (3, 4, 5),
    )
    return ExplicitDesign(v=6, blocks=blocks)


def _lexicode_words(length: int = 23, distance: int = 7) -> list[int]:
    """Greedy lexicographic binary code: scan 0..2^length-1, keep every word
    at Hamming distance >= ``distance`` from all kept words.

    A word is rejected iff it lies in a radius-(distance-1) ball around a
    kept word, so rejection is tracked with one boolean per word and each
    acceptance marks the ball around the new word.
    """
    size = 1 << length
    ball = []
    for weight in range(distance):
        for combo in itertools.combinations(range(length), weight):
            m = 0
            for i in combo:
                m |= 1 << i
            ball.append(m)
    ball_arr = np.array(ball, dtype=np.uint32)
    blocked = np.zeros(size, dtype=bool)
    words: list[int] = []
    chunk = 1 << 16
    pos = 0
    while pos < size:
        if blocked[pos]:
            free = np.flatnonzero(~blocked[pos : pos + chunk])
            if free.size == 0:
                pos += chunk
                continue
            pos += int(free[0])
        words.append(pos)
        blocked[np.bitwise_xor(ball_arr, np.uint32(pos))] = True
        pos += 1
    return words


@lru_cache(maxsize=1)
def build_witt_23() -> ExplicitDesign:
    """S(4,7,23) as the weight-7 supports of the length-23 distance-7 lexicode.

    Self-checks before returning: the code has 4096 words, exactly 253 of
    weight 7, and every 4-subset of the 23 points lies in exactly one of
    those supports.
    """
    words = _lexicode_words(23, 7)
    if len(words) != 4096:
        raise ConsistencyError(f"lexicode has {len(words)} words, expected 4096")
    blocks = sorted(
        tuple(i for i in range(23) if w >> i & 1) for w in words if w.bit_count() == 7
    )
    if len(blocks) != 253:
        raise ConsistencyError(f"{len(blocks)} weight-7 words, expected 253")
    quads: dict[tuple[int, ...], int] = {}
    for block in blocks:
        for quad in itertools.combinations(block, 4):
            quads[quad] = quads.get(quad, 0) + 1
    total = 23 * 22 * 21 * 20 // 24
    if len(quads) != total or any(c != 1 for c in quads.values()):
        raise ConsistencyError("some 4-set of points is not in exactly one block")
    return ExplicitDesign(v=23, blocks=tuple(blocks))


def design_to_text(d: ExplicitDesign) -> str:
    """Serialise as: first line "v b", then one block per line of
    space-separated 0-based point indices.  Bit-exact round trip."""
    lines = [f"{d.v} {len(d.blocks)}"]
    lines.extend(" ".join(str(i) for i in block) for block in d.blocks)
    return "\n".join(lines) + "\n"


def design_from_text(text: str) -> ExplicitDesign:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidParametersError("empty design text")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidParametersError(f"bad header line {lines[0]!r}")
    v, b = int(head[0]), int(head[1])
    blocks = tuple(tuple(int(t) for t in line.split()) for line in lines[1:])
    if len(blocks) != b:
        raise InvalidParametersError(f"header promises {b} blocks, found {len(blocks)}")
    return ExplicitDesign(v=v, blocks=blocks)


def _measure_basic(d: ExplicitDesign):
    """Count (v, k, lambda, r, b, x, y) directly from the block list."""
    v, blocks = d.v, d.blocks
    b = len(blocks)
    sizes = {len(block) for block in blocks}
    if len(sizes) != 1:
        raise NotQuasisymmetricError(f"block sizes {sorted(sizes)} not constant")
    k = sizes.pop()

    pair_counts: dict[tuple[int, int], int] = {}
    for block in blocks:
        for pair in itertools.combinations(block, 2):
            pair_counts[pair] = pair_counts.get(pair, 0) + 1
    lam_values = set(pair_counts.values())
    if len(pair_counts) != v * (v - 1) // 2 or len(lam_values) != 1:
        raise NotQuasisymmetricError("point pairs are not all covered equally often")
    lam = lam_values.pop()

    point_counts = [0] * v
    for block in blocks:
        for i in block:
            point_counts[i] += 1
    r_values = set(point_counts)
    if len(r_values) != 1:
        raise NotQuasisymmetricError("points do not all lie on the same number of blocks")
    r = r_values.pop()

    masks = d.masks()
    inter = {(masks[i] & masks[j]).bit_count() for i in range(b) for j in range(i + 1, b)}
    if len(inter) != 2:
        raise NotQuasisymmetricError(
            f"block intersections take sizes {sorted(inter)}, need exactly two"
        )
    x, y = max(inter), min(inter)
    return v, k, lam, r, b, x, y, masks


def verify_design(d: ExplicitDesign) -> OracleReport:
    """Measure every quantity by counting and compare with the closed forms.

    Raises OracleMismatchError (naming the quantity) on the first
    disagreement, NotQuasisymmetricError if the design is not a
    quasisymmetric 2-design at all.
    """
    v, k, lam, r, b, x, y, masks = _measure_basic(d)
    p = QsdParams(v=v, k=k, lam=lam, x=x, y=y)
    derived = derive_params(p)
    if not derived.integral or int(derived.r) != r:
        raise OracleMismatchError("replication number", f"counted {r}, formula {derived.r}")
    if int(derived.b) != b:
        raise OracleMismatchError("block count", f"counted {b}, formula {derived.b}")

    # Block graph on the larger intersection number, by counting.
    adj = np.zeros((b, b), dtype=np.int64)
    for i in range(b):
        for j in range(i + 1, b):
            if (masks[i] & masks[j]).bit_count() == x:
                adj[i, j] = adj[j, i] = 1
    srg = block_graph_params(p, derived)
    for name, val in (("valency K", srg.valency), ("eigenvalue R", srg.eig_r),
                      ("eigenvalue S", srg.eig_s), ("Lambda", srg.lam), ("M", srg.mu)):
        if Fraction(val).denominator != 1:
            raise OracleMismatchError(name, f"formula value {val} not an integer")
    kk, rr, ss = int(srg.valency), int(srg.eig_r), int(srg.eig_s)
    lam_g, mu_g = int(srg.lam), int(srg.mu)

    degs = adj.sum(axis=1)
    if not np.all(degs == kk):
        raise OracleMismatchError("valency K", f"counted degrees {sorted(set(degs.tolist()))}, formula {kk}")
    adj2 = adj @ adj
    off = ~np.eye(b, dtype=bool)
    adj_mask = adj.astype(bool)
    common_adj = adj2[adj_mask & off]
    common_non = adj2[~adj_mask & off]
    if common_adj.size and not np.all(common_adj == lam_g):
        raise OracleMismatchError("Lambda", f"counted {sorted(set(common_adj.tolist()))}, formula {lam_g}")
    if common_non.size and not np.all(common_non == mu_g):
        raise OracleMismatchError("M", f"counted {sorted(set(common_non.tolist()))}, formula {mu_g}")

    # (A - R I)(A - S I) = mu J annihilates everything orthogonal to the
    # all-ones vector, so this equality verifies the spectrum exactly.
    lhs = adj2 - (rr + ss) * adj + rr * ss * np.eye(b, dtype=np.int64)
    if not np.array_equal(lhs, np.full((b, b), mu_g, dtype=np.int64)):
        raise OracleMismatchError("spectrum annihilation", "(A-RI)(A-SI) != M*J")
    # Multiplicities from the zero trace: f+g = b-1, K + fR + gS = 0.
    f_num = -kk - (b - 1) * ss
    if f_num % (rr - ss):
        raise OracleMismatchError("eigenvalue multiplicities", "trace equations non-integral")
    mult_r = f_num // (rr - ss)
    mult_s = b - 1 - mult_r
    if mult_r != srg.mult_r or mult_s != srg.mult_s:
        raise OracleMismatchError(
            "eigenvalue multiplicities",
            f"counted ({mult_r}, {mult_s}), formula ({srg.mult_r}, {srg.mult_s})",
        )

    # Regular sets: the r blocks through each point.
    rs = regular_set_params(p, derived)
    if Fraction(rs.degree).denominator != 1 or Fraction(rs.nexus).denominator != 1:
        raise OracleMismatchError("regular set", f"formula degree/nexus {rs.degree}/{rs.nexus} not integral")
    deg_f, nex_f = int(rs.degree), int(rs.nexus)
    incidence = np.zeros((b, v), dtype=bool)
    for i, block in enumerate(d.blocks):
        incidence[i, list(block)] = True
    for u in range(v):
        on_u = incidence[:, u]
        inside = adj[np.ix_(on_u, on_u)].sum(axis=1)
        outside = adj[np.ix_(~on_u, on_u)].sum(axis=1)
        if not np.all(inside == deg_f):
            raise OracleMismatchError(
                "regular set degree", f"point {u}: counted {sorted(set(inside.tolist()))}, formula {deg_f}"
            )
        if outside.size and not np.all(outside == nex_f):
            raise OracleMismatchError(
                "regular set nexus", f"point {u}: counted {sorted(set(outside.tolist()))}, formula {nex_f}"
            )

    # Triple moments for each point u, over ordered pairs (p, q).
    nt = neumaier(p, derived, rs)
    a_f, b_f, c_f = int(nt.ordered_pairs), int(nt.triple_sum), int(nt.triple_pair_sum)
    for u in range(v):
        t = np.zeros((v, v), dtype=np.int64)
        for i in np.flatnonzero(incidence[:, u]):
            others = [q for q in d.blocks[i] if q != u]
            t[np.ix_(others, others)] += 1
        np.fill_diagonal(t, 0)
        t[u, :] = 0
        t[:, u] = 0
        a_m = (v - 1) * (v - 2)
        b_m = int(t.sum())
        c_m = int((t * (t - 1)).sum())
        if (a_m, b_m, c_m) != (a_f, b_f, c_f):
            raise OracleMismatchError(
                "triple moments", f"point {u}: counted {(a_m, b_m, c_m)}, formula {(a_f, b_f, c_f)}"
            )
        # Sum of squared deviations from the mean triple count, exactly.
        mean = Fraction(b_f, a_f)
        dev = sum(
            (Fraction(int(t[pp, qq])) - mean) ** 2
            for pp in range(v)
            for qq in range(v)
            if pp != qq and pp != u and qq != u
        )
        if dev != b_f + c_f - Fraction(b_f * b_f, a_f):
            raise OracleMismatchError("triple variance identity", f"point {u}")
        if dev < 0:
            raise OracleMismatchError("triple variance nonnegativity", f"point {u}")

    # Complement design: parameters must follow the complement map, and the
    # graph on the larger intersection number must be the same graph.
    pc, dc = complement(p, derived)
    comp = ExplicitDesign(
        v=v, blocks=tuple(tuple(i for i in range(v) if not m >> i & 1) for m in masks)
    )
    vc, kc, lamc, rc, bc, xc, yc, comp_masks = _measure_basic(comp)
    if (vc, kc, lamc, xc, yc) != (pc.v, pc.k, pc.lam, pc.x, pc.y):
        raise OracleMismatchError(
            "complement parameters",
            f"counted {(vc, kc, lamc, xc, yc)}, map {(pc.v, pc.k, pc.lam, pc.x, pc.y)}",
        )
    if (rc, bc) != (int(dc.r), int(dc.b)):
        raise OracleMismatchError("complement r, b", f"counted {(rc, bc)}, map {(int(dc.r), int(dc.b))}")
    for i in range(b):
        for j in range(i + 1, b):
            same = (comp_masks[i] & comp_masks[j]).bit_count() == xc
            if same != bool(adj[i, j]):
                raise OracleMismatchError("complement block graph", f"blocks {i}, {j}")

    return OracleReport(
        params=p,
        r=r,
        b=b,
        srg_vertices=b,
        srg_valency=kk,
        srg_lam=lam_g,
        srg_mu=mu_g,
        eig_r=rr,
        eig_s=ss,
        mult_r=mult_r,
        mult_s=mult_s,
        degree=deg_f,
        nexus=nex_f,
        triple_moments=(a_f, b_f, c_f),
    )
