"""Graph spectra, integrity and the graph-to-lines pipeline for short intersecting codes.

A projective system of n distinct points with minimum distance d, together with a
graph on those points whose integrity is at least n - d + 1, yields a line set with
the avoidance property; three points per line then form a non-2-cohyperplanar set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import BudgetExceeded, NotConverged
from .finite_field import prime_power
from .projective_geometry import Line, ProjectiveSystem, make_line

SPECTRUM_MAX_N = 512
JACOBI_TOL = 1e-10
JACOBI_SWEEPS = 100
INTEGRITY_MAX_N = 24
REGULAR_TOL = 1e-8


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"repeated edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Graph":
        """Edge list, one "u v" pair per line, 0-indexed; blank lines and # comments ignored."""
        edges = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {raw!r}")
            edges.append((int(parts[0]), int(parts[1])))
        size = n if n is not None else 1 + max((max(e) for e in edges), default=-1)
        return cls.from_edges(size, edges)

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    @cached_property
    def neighbour_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.adjacency.sum(axis=1))

    def regular_degree(self) -> int | None:
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


# ---------- spectrum ----------


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: tuple[float, ...]
    sweeps: int

    @property
    def top(self) -> float:
        return self.eigenvalues[0]

    @property
    def second(self) -> float:
        """max |eigenvalue| over all but the largest."""
        return max((abs(x) for x in self.eigenvalues[1:]), default=0.0)

    def is_ramanujan(self, degree: int) -> bool:
        return self.second <= 2 * math.sqrt(degree - 1) + REGULAR_TOL


def jacobi_eigenvalues(m: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_SWEEPS) -> tuple[np.ndarray, int]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending."""
    a = np.array(m, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T):
        raise ValueError("matrix must be square and symmetric")
    for sweep in range(max_sweeps + 1):
        # direct sum; ||A||^2 - ||diag||^2 cancels catastrophically near convergence
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < tol:
            return np.sort(np.diag(a))[::-1], sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if abs(apr) < 1e-300:
                    continue
                theta = (a[r, r] - a[p, p]) / (2 * apr)
                if abs(theta) > 1e150:
                    # theta^2 would overflow; t ~ 1/(2 theta)
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                row_p, row_r = a[p].copy(), a[r].copy()
                a[p], a[r] = c * row_p - s * row_r, s * row_p + c * row_r
                col_p, col_r = a[:, p].copy(), a[:, r].copy()
                a[:, p], a[:, r] = c * col_p - s * col_r, s * col_p + c * col_r
                a[p, r] = a[r, p] = 0.0
    raise NotConverged(f"Jacobi off-diagonal norm {off:.3e} after {max_sweeps} sweeps")


def spectrum(g: Graph) -> SpectralSummary:
    if g.n > SPECTRUM_MAX_N:
        raise BudgetExceeded("eigensolve vertices", g.n, SPECTRUM_MAX_N)
    if g.n == 0:
        return SpectralSummary((), 0)
    vals, sweeps = jacobi_eigenvalues(g.adjacency)
    return SpectralSummary(tuple(float(x) for x in vals), sweeps)


# ---------- integrity ----------


def largest_component(g: Graph, removed: int) -> int:
    """Order of the largest connected component of g minus the vertex set ``removed`` (bitmask)."""
    nbrs = g.neighbour_masks
    left = ((1 << g.n) - 1) & ~removed
    best = 0
    while left:
        seed = left & -left
        comp = frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nbrs[v] & left & ~comp
            comp |= new
            frontier |= new
        left &= ~comp
        best = max(best, comp.bit_count())
    return best


def integrity(g: Graph, max_n: int = INTEGRITY_MAX_N) -> tuple[int, frozenset[int]]:
    """Exact min over S of |S| + largest component of g - S.

    Ties go to the smallest S, then the lexicographically least one.
    """
    if g.n > max_n:
        raise BudgetExceeded("integrity vertices", g.n, max_n)
    best, best_set = largest_component(g, 0), frozenset()
    for size in range(1, g.n):
        # a nonempty remainder keeps a component of order >= 1
        if size + 1 >= best:
            break
        for s in itertools.combinations(range(g.n), size):
            mask = sum(1 << v for v in s)
            val = size + largest_component(g, mask)
            if val < best:
                best, best_set = val, frozenset(s)
    return best, best_set


def spectral_integrity_lower_bound(g: Graph) -> Fraction:
    """n (t - lam) / (t + lam) for a t-regular graph, lam the second absolute eigenvalue.

    lam comes from the eigensolve and is snapped to the nearest fraction with denominator <= 10^6.
    """
    t = g.regular_degree()
    if t is None or t == 0:
        raise ValueError("graph is not regular of positive degree")
    lam = Fraction(spectrum(g).second).limit_denominator(10**6)
    return g.n * (t - lam) / (t + lam)


# ---------- graph to lines ----------


def lines_from_graph(sys: ProjectiveSystem, g: Graph) -> list[Line]:
    """The secant line through the points of each edge; vertex i is the i-th point of ``sys``."""
    if (sys.multiplicity != 1).any():
        raise ValueError("points with multiplicity > 1 are not supported")
    if sys.size != g.n:
        raise ValueError(f"graph has {g.n} vertices but the system has {sys.size} points")
    return [make_line(sys.ctx, sys.points[u], sys.points[v]) for u, v in g.edges]


def avoidance_threshold(sys: ProjectiveSystem) -> int:
    """Integrity n - d + 1 sufficient for the graph's line set to have the avoidance property."""
    return sys.size - sys.min_distance() + 1


# ---------- alpha optimizer ----------


ALPHA_T_MAX = 10000
ALPHA_PATIENCE = 50


def ramanujan_rate(q: float, t: int) -> float:
    """R(q, t) = (t - 2 sqrt(t-1)) / (t + 2 sqrt(t-1)) - 1/(sqrt(q) - 1)."""
    s = 2 * math.sqrt(t - 1)
    return (t - s) / (t + s) - 1 / (math.sqrt(q) - 1)


def alpha_value(q: float, t: int) -> float:
    r = ramanujan_rate(q, t)
    return (1 + t / 2) / r if r > 0 else math.inf


def alpha_optimizer(q: int, t_max: int = ALPHA_T_MAX, patience: int = ALPHA_PATIENCE) -> tuple[int, float]:
    """Minimize alpha(q, t) over integers 3 <= t <= t_max."""
    ph = prime_power(q)
    if ph is None or ph[1] % 2:
        raise ValueError(f"{q} is not an even power of a prime")
    if q == 4:
        raise ValueError("no degree gives a positive rate over GF(4)")
    return minimize_alpha(q, t_max, patience)


def minimize_alpha(q: float, t_max: int = ALPHA_T_MAX, patience: int = ALPHA_PATIENCE) -> tuple[int, float]:
    best_t, best = 0, math.inf
    prev, rising = math.inf, 0
    for t in range(3, t_max + 1):
        a = alpha_value(q, t)
        if a < best:
            best_t, best = t, a
        if a > prev and math.isfinite(a):
            rising += 1
            if rising >= patience:
                break
        else:
            rising = 0
        prev = a
    if not math.isfinite(best):
        raise ValueError(f"no degree t <= {t_max} gives a positive rate for q = {q}")
    return best_t, best


def alpha_limit(t: int = 10) -> float:
    """lim over q of alpha(q, t) = (1 + t/2) / ((t - 2 sqrt(t-1)) / (t + 2 sqrt(t-1)))."""
    return alpha_value(math.inf, t)
