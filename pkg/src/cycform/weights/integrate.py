"""Graph-weight estimation: Monte Carlo over disk configurations with a
counter-based RNG (deterministic under any parallel schedule), a small
tensor-product quadrature alternative, and exact closed forms for graphs
without aerial vertices.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from ..conventions import CONVENTIONS
from ..graphs import ShoikhetGraph, boundary_index, is_boundary
from . import _fallback

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class Configuration:
    """Point configuration for a graph: aerial positions in the open disk
    and all boundary angles, with the slice vertex pinned at angle 0 and
    the labels in counterclockwise order starting from it."""

    interior: tuple[tuple[float, float], ...]
    angles: tuple[float, ...]
    slice_index: int = 0

    def __post_init__(self):
        for x, y in self.interior:
            if x * x + y * y >= 1.0:
                raise ValueError("aerial points must lie in the open unit disk")
        m = len(self.angles) - 1
        if not 0 <= self.slice_index <= m:
            raise ValueError("slice index out of range")
        if self.angles[self.slice_index] != 0.0:
            raise ValueError("the slice vertex must sit at angle 0")
        ordered = [self.angles[(self.slice_index + t) % (m + 1)] for t in range(1, m + 1)]
        if any(not 0.0 < a < 2.0 * math.pi for a in ordered) or ordered != sorted(ordered):
            raise ValueError("boundary angles must increase counterclockwise from the slice")


@dataclass(frozen=True)
class IntegrationSpec:
    """Everything that determines a weight estimate (and its cache key)."""

    method: str = "mc"  # "mc" | "quadrature"
    samples: int = 1_000_000
    seed: int = 42
    slice_index: int = 0
    orientation: str = "ccw"
    mesh: int = 32  # points per axis for quadrature
    jobs: int = 1  # parallel block evaluation; does not affect the result

    def method_tag(self) -> str:
        """Cache tag; bakes in every value-relevant field except samples
        and seed (which get their own cache columns)."""
        tag = self.method if self.method != "quadrature" else f"quad{self.mesh}"
        if self.slice_index != 0:
            tag += f"@s{self.slice_index}"
        if self.orientation != "ccw":
            tag += f"!{self.orientation}"
        return tag

    def with_slice(self, j: int) -> "IntegrationSpec":
        return replace(self, slice_index=j)


@dataclass(frozen=True)
class WeightEstimate:
    value: float
    stderr: float
    samples: int
    seed: int
    method: str
    graph: str
    rejected: int = 0

    def agrees_with(self, other: "WeightEstimate", nsigma: float = 4.0, floor: float = 0.0) -> bool:
        combined = math.sqrt(self.stderr**2 + other.stderr**2)
        return abs(self.value - other.value) <= max(nsigma * combined, floor)


def _check_spec(graph: ShoikhetGraph, spec: IntegrationSpec) -> None:
    if spec.orientation != "ccw":
        raise ValueError(f"unsupported orientation tag {spec.orientation!r}")
    if not 0 <= spec.slice_index <= graph.m:
        raise ValueError(f"slice index {spec.slice_index} out of range 0..{graph.m}")
    if spec.method not in ("mc", "quadrature"):
        raise ValueError(f"unknown method {spec.method!r}")


def integrand_vanishes_identically(graph: ShoikhetGraph) -> bool:
    """Exact zeros: a central edge to 0bar carries the zero one-form, and a
    repeated target within one star wedges a one-form with itself."""
    for star in graph.stars:
        if len(set(star)) != len(star):
            return True
    zero_bar = -1
    return zero_bar in graph.central_star


def star_prefactor(graph: ShoikhetGraph) -> Fraction:
    out = Fraction(1)
    for star in graph.stars:
        out /= math.factorial(len(star))
    return out


def domain_volume(graph: ShoikhetGraph) -> float:
    """Lebesgue volume of the sampling domain: disk per aerial vertex,
    ordered simplex of free boundary angles."""
    n, m = graph.n, graph.m
    return math.pi**n * (2.0 * math.pi) ** m / math.factorial(m)


def orientation_factor(spec: IntegrationSpec) -> int:
    return CONVENTIONS.slice_sign**spec.slice_index


def _edge_arrays(graph: ShoikhetGraph) -> tuple[list[int], list[int]]:
    src = []
    tgt = []
    for s, t in graph.edges():
        src.append(s)
        tgt.append(t)
    return src, tgt


def _density_constants() -> tuple[float, float]:
    two_pi = 2.0 * math.pi
    cc = CONVENTIONS.central_angle_sign / two_pi
    ct = CONVENTIONS.boundary_angle_sign / two_pi
    return cc, ct


def compute_weight(graph: ShoikhetGraph, spec: IntegrationSpec) -> WeightEstimate:
    """Weight per the defining integral: star-factorial prefactor times the
    integral of the edge-form density over the configuration domain.

    Exact zero (zero error) when the edge count does not match the domain
    dimension or the density vanishes identically; otherwise Monte Carlo or
    quadrature per the spec.  Deterministic for a fixed spec, independent
    of the number of parallel jobs.
    """
    _check_spec(graph, spec)
    tag = spec.method_tag()
    encoding = graph.encode()
    if graph.edge_count != graph.dimension or integrand_vanishes_identically(graph):
        return WeightEstimate(0.0, 0.0, 0, spec.seed, tag, encoding)

    prefactor = float(star_prefactor(graph))
    if graph.dimension == 0:
        # single configuration, empty wedge: the integral is 1
        return WeightEstimate(prefactor, 0.0, 0, spec.seed, tag, encoding)

    scale = prefactor * domain_volume(graph) * orientation_factor(spec)
    if spec.method == "quadrature":
        value = _quadrature_integral(graph, spec)
        return WeightEstimate(scale * value, 0.0, spec.mesh, spec.seed, tag, encoding)

    total, total_sq, rejects = _mc_sums(graph, spec)
    n = spec.samples
    mean = total / n
    var = max(total_sq - total * total / n, 0.0) / (n - 1) if n > 1 else 0.0
    stderr = abs(scale) * math.sqrt(var / n)
    return WeightEstimate(scale * mean, stderr, n, spec.seed, tag, encoding, rejects)


def _mc_sums(graph: ShoikhetGraph, spec: IntegrationSpec) -> tuple[float, float, int]:
    from . import kernel  # resolved backend

    src, tgt = _edge_arrays(graph)
    cc, ct = _density_constants()
    state = _fallback.seed_state(spec.seed)
    blocks = [
        (start, min(BLOCK_SIZE, spec.samples - start))
        for start in range(0, spec.samples, BLOCK_SIZE)
    ]

    def run(block):
        start, count = block
        return kernel.block_sums(
            graph.n, graph.m, spec.slice_index, src, tgt, cc, ct, state, start, count
        )

    if spec.jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
            partials = list(pool.map(run, blocks))
    else:
        partials = [run(b) for b in blocks]

    # reduce in block order so that parallel == serial bit for bit
    total = 0.0
    total_sq = 0.0
    rejects = 0
    for s, s2, rej in partials:
        total += s
        total_sq += s2
        rejects += rej
    return total, total_sq, rejects


def exact_pure_central_weight(graph: ShoikhetGraph) -> Fraction | None:
    """Closed-form weight for graphs without aerial vertices; None when the
    graph has aerial vertices (no closed form implemented).

    The density matrix is a signed permutation slice: the weight is the
    star-order permutation sign over (m!)^2, nonzero exactly when the
    central star hits each of 1bar..mbar once.
    """
    if graph.n != 0:
        return None
    m = graph.m
    star = graph.central_star
    if len(star) != m or graph.edge_count != graph.dimension:
        return Fraction(0)
    ks = [boundary_index(t) for t in star if is_boundary(t)]
    if len(ks) != m or sorted(ks) != list(range(1, m + 1)):
        return Fraction(0)
    sign = _permutation_sign(ks)
    return Fraction(sign, math.factorial(m) ** 2)


def _permutation_sign(values) -> int:
    vals = list(values)
    sign = 1
    for i in range(1, len(vals)):
        j = i
        while j > 0 and vals[j - 1] > vals[j]:
            vals[j - 1], vals[j] = vals[j], vals[j - 1]
            sign = -sign
            j -= 1
    return sign


def integrand(graph: ShoikhetGraph, config: Configuration) -> float:
    """Signed density at a validated configuration."""
    return density_at(graph, list(config.interior), list(config.angles), config.slice_index)


def density_at(
    graph: ShoikhetGraph,
    interior: list[tuple[float, float]],
    angles: list[float],
    slice_index: int = 0,
) -> float:
    """Signed density (the Jacobian determinant of the edge angle maps) at
    an explicit configuration; used by tests and the quadrature path.

    `interior` lists the aerial positions 1..n; `angles` lists all m+1
    boundary angles with angles[slice_index] == 0."""
    n, m = graph.n, graph.m
    if len(interior) != n or len(angles) != m + 1:
        raise ValueError("configuration does not match the graph")
    xs = [0.0] * (n + 1)
    ys = [0.0] * (n + 1)
    for j, (x, y) in enumerate(interior, start=1):
        xs[j] = x
        ys[j] = y
    bx = [math.cos(a) for a in angles]
    by = [math.sin(a) for a in angles]
    cc, ct = _density_constants()
    dim = 2 * n + m
    mat = [[0.0] * dim for _ in range(dim)]
    for row, (s, t) in zip(mat, graph.edges()):
        _fallback._fill_row(row, s, t, n, slice_index, xs, ys, bx, by, cc, ct)
    return _fallback._lu_det(mat, dim)


def _quadrature_integral(graph: ShoikhetGraph, spec: IntegrationSpec) -> float:
    """Tensor-product Gauss-Legendre mean over the sampling domain
    (normalized: returns the average density, like the MC mean)."""
    import numpy as np

    n, m = graph.n, graph.m
    dim = graph.dimension
    if dim > 3:
        raise ValueError("quadrature supports dimension <= 3 only")
    nodes, weights = np.polynomial.legendre.leggauss(spec.mesh)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights

    axes = [(nodes, weights)] * dim
    total = 0.0
    # iterate the tensor grid; dim <= 3 keeps this small
    import itertools

    for combo in itertools.product(*(range(spec.mesh) for _ in range(dim))):
        u = [axes[i][0][combo[i]] for i in range(dim)]
        wgt = 1.0
        for i in range(dim):
            wgt *= axes[i][1][combo[i]]
        interior = []
        jac = 1.0
        for j in range(n):
            r = u[2 * j]
            theta = 2.0 * math.pi * u[2 * j + 1]
            interior.append((r * math.cos(theta), r * math.sin(theta)))
            jac *= 2.0 * r  # disk area element vs. the unit square, normalized
        # ordered angles from the cube, descending chain map
        vs = u[2 * n :]
        ts = [0.0] * m
        prev = 2.0 * math.pi
        for k in range(m - 1, -1, -1):
            ts[k] = prev * vs[k]
            prev = ts[k]
        simplex_jac = 1.0
        prev = 2.0 * math.pi
        for k in range(m - 1, -1, -1):
            simplex_jac *= prev
            prev = ts[k]
        # normalize to a mean over the domain volume
        simplex_jac /= (2.0 * math.pi) ** m / math.factorial(m)
        angles = [0.0] * (m + 1)
        for t_idx in range(1, m + 1):
            label = (spec.slice_index + t_idx) % (m + 1)
            angles[label] = ts[t_idx - 1]
        # Gauss-Legendre nodes are interior, so no configuration on the
        # grid hits a singular locus in dimension <= 3 (single aerial point
        # strictly inside the disk, angles strictly ordered).
        val = density_at(graph, interior, angles, spec.slice_index)
        total += wgt * val * jac * simplex_jac
    return total
