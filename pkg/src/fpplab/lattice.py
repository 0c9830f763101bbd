"""Finite-box geometry of Z^2 and its dual lattice.

Vertices are integer pairs ``(x, y)``.  An edge is a canonically ordered
pair of adjacent vertices (lexicographically smaller endpoint first).
Dual vertices sit at half-integer points ``(x + 1/2, y + 1/2)``; to keep
all arithmetic exact they are stored with *doubled* coordinates, so the
dual vertex ``(x + 1/2, y + 1/2)`` is the integer pair ``(2x+1, 2y+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]
DualVertex = tuple[int, int]  # doubled coordinates, both odd
DualEdge = tuple[DualVertex, DualVertex]


def edge(u: Vertex, v: Vertex) -> Edge:
    """Canonical form of the undirected edge {u, v}."""
    if abs(u[0] - v[0]) + abs(u[1] - v[1]) != 1:
        raise ValueError(f"vertices {u} and {v} are not adjacent")
    return (u, v) if u <= v else (v, u)


def edge_is_horizontal(e: Edge) -> bool:
    return e[0][1] == e[1][1]


def neighbors(v: Vertex) -> list[Vertex]:
    x, y = v
    return [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]


def dual_of(e: Edge) -> DualEdge:
    """The unique dual edge bisecting e (doubled coordinates)."""
    (x1, y1), (x2, y2) = e
    if y1 == y2:  # horizontal primal -> vertical dual through midpoint
        return ((x1 + x2, 2 * y1 - 1), (x1 + x2, 2 * y1 + 1))
    return ((2 * x1 - 1, y1 + y2), (2 * x1 + 1, y1 + y2))


def primal_of(d: DualEdge) -> Edge:
    """Inverse of dual_of."""
    (a1, b1), (a2, b2) = d
    if a1 == a2:  # vertical dual -> horizontal primal
        if b2 - b1 != 2 or a1 % 2 == 0 or b1 % 2 == 0:
            raise ValueError(f"not a dual edge: {d}")
        x, y = (a1 - 1) // 2, (b1 + b2) // 4
        return ((x, y), (x + 1, y))
    if b1 != b2 or a2 - a1 != 2 or b1 % 2 == 0 or a1 % 2 == 0:
        raise ValueError(f"not a dual edge: {d}")
    x, y = (a1 + a2) // 4, (b1 - 1) // 2
    return ((x, y), (x, y + 1))


def dual_edge(a: DualVertex, b: DualVertex) -> DualEdge:
    """Canonical form of an undirected dual edge (doubled coordinates)."""
    d = (a, b) if a <= b else (b, a)
    primal_of(d)  # validates
    return d


@dataclass(frozen=True)
class Box:
    """The box B(n) = [-n, n]^2, optionally shifted by an integer center."""

    n: int
    center: Vertex = (0, 0)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("box radius must be nonnegative")

    @property
    def rect(self) -> "Rect":
        cx, cy = self.center
        return Rect(cx - self.n, cy - self.n, cx + self.n, cy + self.n)

    def contains(self, v: Vertex) -> bool:
        cx, cy = self.center
        return max(abs(v[0] - cx), abs(v[1] - cy)) <= self.n

    def contains_strict(self, v: Vertex) -> bool:
        """True iff v lies in the open box (-n, n)^2 (shifted)."""
        cx, cy = self.center
        return max(abs(v[0] - cx), abs(v[1] - cy)) < self.n

    def vertices(self) -> list[Vertex]:
        return self.rect.vertices()

    def edges(self) -> list[Edge]:
        return self.rect.edges()

    def boundary(self) -> set[Vertex]:
        """Vertices at l-infinity distance exactly n from the center."""
        cx, cy = self.center
        n = self.n
        if n == 0:
            return {self.center}
        out: set[Vertex] = set()
        for t in range(-n, n + 1):
            out.add((cx - n, cy + t))
            out.add((cx + n, cy + t))
            out.add((cx + t, cy - n))
            out.add((cx + t, cy + n))
        return out


@dataclass(frozen=True)
class Rect:
    """Axis-aligned vertex rectangle [x0, x1] x [y0, y1], inclusive."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError("degenerate rectangle")

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0

    def contains(self, v: Vertex) -> bool:
        return self.x0 <= v[0] <= self.x1 and self.y0 <= v[1] <= self.y1

    def contains_rect(self, other: "Rect") -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)

    def vertices(self) -> list[Vertex]:
        return [(x, y) for y in range(self.y0, self.y1 + 1)
                for x in range(self.x0, self.x1 + 1)]

    def edges(self) -> list[Edge]:
        """All edges with both endpoints in the rectangle, canonical order."""
        out: list[Edge] = []
        for x in range(self.x0, self.x1 + 1):
            for y in range(self.y0, self.y1 + 1):
                if y < self.y1:
                    out.append(((x, y), (x, y + 1)))
                if x < self.x1:
                    out.append(((x, y), (x + 1, y)))
        out.sort()
        return out


def boundary_vertices(n: int, center: Vertex = (0, 0)) -> set[Vertex]:
    """The l-infinity sphere of radius n: vertices of ∂B(n)."""
    return Box(n, center).boundary()


def edges_of_box(b: Box) -> list[Edge]:
    return b.edges()


@dataclass(frozen=True)
class Annulus:
    """Ann(m, n) = B(n) \\ B(m), centered at the origin.

    Edge membership: an edge belongs to the annulus iff both endpoints lie
    in B(n) and at least one endpoint lies outside the open box (-m, m)^2.
    Circuits "in the annulus" may therefore touch ∂B(m) and ∂B(n).
    """

    inner: int
    outer: int

    def __post_init__(self):
        if not 0 <= self.inner < self.outer:
            raise ValueError("need 0 <= inner < outer")

    def contains_edge(self, e: Edge) -> bool:
        (x1, y1), (x2, y2) = e
        n, m = self.outer, self.inner
        if max(abs(x1), abs(y1)) > n or max(abs(x2), abs(y2)) > n:
            return False
        return max(abs(x1), abs(y1)) >= m or max(abs(x2), abs(y2)) >= m

    def edges(self) -> list[Edge]:
        return [e for e in Box(self.outer).edges() if self.contains_edge(e)]


def annulus_edges(a: Annulus) -> list[Edge]:
    return a.edges()


@dataclass(frozen=True)
class RealBox:
    """A box with half-integer corners, stored as doubled integers.

    Used for the witness boxes whose offsets are odd multiples of 1/2.
    An edge belongs to the box iff its midpoint lies in the closed box.
    """

    x0d: int
    y0d: int
    x1d: int
    y1d: int

    @classmethod
    def from_corner(cls, x0: float, y0: float, side: float) -> "RealBox":
        vals = (2 * x0, 2 * y0, 2 * (x0 + side), 2 * (y0 + side))
        ints = tuple(round(v) for v in vals)
        if any(abs(i - v) > 1e-9 for i, v in zip(ints, vals)):
            raise ValueError("corners must be half-integers")
        return cls(*ints)

    def contains_edge(self, e: Edge) -> bool:
        (x1, y1), (x2, y2) = e
        mxd, myd = x1 + x2, y1 + y2  # doubled midpoint
        return self.x0d <= mxd <= self.x1d and self.y0d <= myd <= self.y1d

    def edge_candidates(self) -> list[Edge]:
        """All lattice edges whose midpoint lies in the closed box."""
        out: list[Edge] = []
        xlo, xhi = self.x0d // 2 - 1, self.x1d // 2 + 1
        ylo, yhi = self.y0d // 2 - 1, self.y1d // 2 + 1
        for x in range(xlo, xhi + 1):
            for y in range(ylo, yhi + 1):
                for e in (((x, y), (x + 1, y)), ((x, y), (x, y + 1))):
                    if self.contains_edge(e):
                        out.append(e)
        out.sort()
        return out


class Grid:
    """Array indexing for the vertices and edges of a Rect.

    Vertices are numbered row-major; horizontal edges come first, then
    vertical ones.  This layout is internal; canonical (lexicographic)
    edge order is used wherever ties must be broken deterministically.
    """

    def __init__(self, rect: Rect):
        self.rect = rect
        self.nx = rect.width + 1
        self.ny = rect.height + 1
        self.vertex_count = self.nx * self.ny
        self.h_count = (self.nx - 1) * self.ny
        self.v_count = self.nx * (self.ny - 1)
        self.edge_count = self.h_count + self.v_count
        self._arrays = None

    def vertex_id(self, v: Vertex) -> int:
        x, y = v
        r = self.rect
        if not r.contains(v):
            raise ValueError(f"vertex {v} outside grid {r}")
        return (x - r.x0) + self.nx * (y - r.y0)

    def vertex_at(self, vid: int) -> Vertex:
        r = self.rect
        return (r.x0 + vid % self.nx, r.y0 + vid // self.nx)

    def edge_id(self, e: Edge) -> int:
        (x1, y1), (x2, y2) = e
        r = self.rect
        if y1 == y2:  # horizontal
            if not (r.x0 <= x1 and x2 <= r.x1 and r.y0 <= y1 <= r.y1):
                raise ValueError(f"edge {e} outside grid")
            return (x1 - r.x0) + (self.nx - 1) * (y1 - r.y0)
        if not (r.x0 <= x1 <= r.x1 and r.y0 <= y1 and y2 <= r.y1):
            raise ValueError(f"edge {e} outside grid")
        return self.h_count + (x1 - r.x0) + self.nx * (y1 - r.y0)

    def edge_at(self, eid: int) -> Edge:
        r = self.rect
        if eid < self.h_count:
            x = r.x0 + eid % (self.nx - 1)
            y = r.y0 + eid // (self.nx - 1)
            return ((x, y), (x + 1, y))
        eid -= self.h_count
        x = r.x0 + eid % self.nx
        y = r.y0 + eid // self.nx
        return ((x, y), (x, y + 1))

    def contains_edge(self, e: Edge) -> bool:
        return self.rect.contains(e[0]) and self.rect.contains(e[1])

    def _build_arrays(self):
        r = self.rect
        nx, ny = self.nx, self.ny
        # horizontal edges: (x,y)-(x+1,y)
        hx = np.tile(np.arange(r.x0, r.x1), ny)
        hy = np.repeat(np.arange(r.y0, r.y1 + 1), nx - 1)
        # vertical edges: (x,y)-(x,y+1)
        vx = np.tile(np.arange(r.x0, r.x1 + 1), ny - 1)
        vy = np.repeat(np.arange(r.y0, r.y1), nx)
        ex = np.concatenate([hx, vx])
        ey = np.concatenate([hy, vy])
        horiz = np.zeros(self.edge_count, dtype=np.int64)
        horiz[: self.h_count] = 1
        u = (ex - r.x0) + nx * (ey - r.y0)
        v = np.where(horiz == 1, u + 1, u + nx)
        self._arrays = (ex.astype(np.int64), ey.astype(np.int64), horiz,
                        u.astype(np.int32), v.astype(np.int32))

    @property
    def edge_coords(self):
        """(x, y, is_horizontal) arrays of each edge's smaller endpoint."""
        if self._arrays is None:
            self._build_arrays()
        return self._arrays[0], self._arrays[1], self._arrays[2]

    @property
    def edge_endpoint_ids(self):
        """(u, v) vertex-id arrays for all edges."""
        if self._arrays is None:
            self._build_arrays()
        return self._arrays[3], self._arrays[4]


@lru_cache(maxsize=64)
def grid_for_box(n: int) -> Grid:
    return Grid(Box(n).rect)


def edge_count_of_box(n: int) -> int:
    """|edges of B(n)| = 4n(2n+1)."""
    return 4 * n * (2 * n + 1)
