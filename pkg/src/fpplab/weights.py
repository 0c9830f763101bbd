"""Coupled edge randomness: uniform values, weight distributions, p-open status.

Every edge of Z^2 carries one uniform value ``omega_e`` in [0, 1).  The values
are produced by a counter-based generator keyed by (seed, edge), so a config
sampled on a larger box agrees with one sampled on a smaller box wherever they
overlap, and single edges can be evaluated lazily without streaming.

Edge weights are ``t_e = F^{-1}(omega_e)`` for a distribution F with an atom
of mass exactly 1/2 at zero (the critical case).  An edge is p-open iff
``omega_e <= p``; its dual edge inherits the status.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .lattice import Box, Edge, Grid, Rect, edge

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

GENERATOR_ID = "splitmix64-edgekey/v1"

_COORD_LIMIT = 1 << 20  # coordinate capacity of the 64-bit edge key


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def _zigzag(v: int) -> int:
    return 2 * v if v >= 0 else -2 * v - 1


def edge_key(e: Edge) -> int:
    """Stable 64-bit key of a lattice edge, independent of any box."""
    (x, y), (x2, y2) = e
    if abs(x) >= _COORD_LIMIT or abs(y) >= _COORD_LIMIT:
        raise ValueError(f"edge {e} outside coordinate capacity")
    orient = 1 if y2 == y else 0  # horizontal=1, vertical=0
    return (_zigzag(x) << 23) | (_zigzag(y) << 1) | orient


def subseed(seed: int, index: int) -> int:
    """Fixed sample-index -> sub-seed map used by all Monte Carlo drivers."""
    return _mix64((seed & _MASK) ^ _mix64(index))


def _omega_scalar(seedmix: int, key: int) -> float:
    return (_mix64((seedmix + key * _GOLDEN) & _MASK) >> 11) * 2.0 ** -53


def _omega_array(seedmix: int, keys: np.ndarray) -> np.ndarray:
    acc = np.uint64(seedmix) + keys.astype(np.uint64) * np.uint64(_GOLDEN)
    return (_mix64_np(acc) >> np.uint64(11)) * 2.0 ** -53


class WeightModel:
    """A critical weight distribution: F(0) = 1/2, right-continuous.

    Supported families:

    * ``half_uniform(theta)`` -- F = 1/2 δ_0 + 1/2 Uniform(0, theta]
    * ``power_tail(kappa)``   -- F(x) = 1/2 + x^kappa / 2 on [0, 1]
    * ``atoms({x: mass})``    -- 1/2 δ_0 plus finitely many atoms
    * ``table([(x, F(x))])``  -- right-continuous breakpoint table
    """

    def __init__(self, name: str, inverse, inverse_vec, params: dict):
        self.name = name
        self._inv = inverse
        self._inv_vec = inverse_vec
        self.params = params

    def __repr__(self):
        return f"WeightModel({self.name}, {self.params})"

    def inverse(self, t: float) -> float:
        """Generalized inverse F^{-1}(t) = inf{x : F(x) >= t} for t in (0, 1]."""
        if not 0.0 < t <= 1.0:
            raise ValueError(f"F^-1 defined on (0, 1], got {t}")
        return self._inv(t)

    def inverse_array(self, t: np.ndarray) -> np.ndarray:
        return self._inv_vec(np.asarray(t, dtype=np.float64))

    @staticmethod
    def half_uniform(theta: float = 1.0) -> "WeightModel":
        if theta <= 0:
            raise ValueError("theta must be positive")

        def inv(t):
            return 0.0 if t <= 0.5 else theta * (2.0 * t - 1.0)

        def inv_vec(t):
            return np.where(t <= 0.5, 0.0, theta * (2.0 * t - 1.0))

        return WeightModel("half_uniform", inv, inv_vec, {"theta": theta})

    @staticmethod
    def power_tail(kappa: float) -> "WeightModel":
        if kappa <= 0:
            raise ValueError("kappa must be positive")

        def inv(t):
            return 0.0 if t <= 0.5 else (2.0 * t - 1.0) ** (1.0 / kappa)

        def inv_vec(t):
            return np.where(t <= 0.5, 0.0,
                            np.maximum(2.0 * t - 1.0, 0.0) ** (1.0 / kappa))

        return WeightModel("power_tail", inv, inv_vec, {"kappa": kappa})

    @staticmethod
    def atoms(masses: dict[float, float]) -> "WeightModel":
        """Finite atomic distribution; the atom at zero must have mass 1/2.

        ``masses`` maps weight values to probabilities and must sum to 1;
        the zero atom may be left implicit.
        """
        m = dict(masses)
        zero = m.pop(0.0, 0.5)
        if abs(zero - 0.5) > 1e-12:
            raise ValueError("the atom at zero must have mass exactly 1/2")
        pts = sorted(m)
        if any(x <= 0 for x in pts) or any(v < 0 for v in m.values()):
            raise ValueError("atoms must have positive location and mass")
        support = [0.0] + pts
        cum = [0.5]
        for x in pts:
            cum.append(cum[-1] + m[x])
        if abs(cum[-1] - 1.0) > 1e-12:
            raise ValueError("atom masses must sum to 1")
        sup_arr = np.array(support)
        cum_arr = np.array(cum)

        def inv(t):
            i = int(np.searchsorted(cum_arr, t, side="left"))
            return float(sup_arr[min(i, len(sup_arr) - 1)])

        def inv_vec(t):
            idx = np.searchsorted(cum_arr, t, side="left")
            return sup_arr[np.minimum(idx, len(sup_arr) - 1)]

        return WeightModel("atoms", inv, inv_vec,
                           {"support": support, "cum": cum})

    @staticmethod
    def table(breakpoints: list[tuple[float, float]]) -> "WeightModel":
        """Right-continuous step distribution from (x, F(x)) breakpoints.

        The first breakpoint must be (0, 1/2); F must reach 1.
        """
        pts = sorted(breakpoints)
        xs = np.array([p[0] for p in pts])
        fs = np.array([p[1] for p in pts])
        if xs[0] != 0.0 or fs[0] != 0.5:
            raise ValueError("table must start at (0, 1/2)")
        if fs[-1] != 1.0:
            raise ValueError("table must reach F = 1")
        if np.any(np.diff(fs) < 0) or np.any(np.diff(xs) <= 0):
            raise ValueError("breakpoints must be increasing")

        def inv(t):
            i = int(np.searchsorted(fs, t, side="left"))
            return float(xs[min(i, len(xs) - 1)])

        def inv_vec(t):
            idx = np.searchsorted(fs, t, side="left")
            return xs[np.minimum(idx, len(xs) - 1)]

        return WeightModel("table", inv, inv_vec, {"breakpoints": pts})


def generalized_inverse(model: WeightModel, t: float) -> float:
    return model.inverse(t)


@dataclass
class LatticeConfig:
    """One realization of the edge randomness on a finite box.

    Generated configs are *extendable*: omega values exist for every edge of
    the lattice (within coordinate capacity), the box only records the region
    a run nominally works in.  Table configs are bounded by their table.
    """

    box: Box
    seed: int | None
    generator: str = GENERATOR_ID
    _table: dict[Edge, float] | None = None
    _table_default: float | None = None
    _seedmix: int = field(default=0, repr=False)

    def __post_init__(self):
        if self.seed is not None:
            self._seedmix = _mix64(self.seed)

    @property
    def extendable(self) -> bool:
        return self._table is None

    def omega(self, e: Edge) -> float:
        """The uniform value on edge e."""
        if self._table is not None:
            val = self._table.get(e)
            if val is None:
                if self._table_default is not None and self.contains_edge(e):
                    return self._table_default
                raise KeyError(f"edge {e} not covered by table config")
            return val
        return _omega_scalar(self._seedmix, edge_key(e))

    def omega_grid(self, grid: Grid) -> np.ndarray:
        """Vectorized omega values for every edge of a grid, in grid order."""
        if self._table is not None:
            vals = np.empty(grid.edge_count)
            default = self._table_default
            for i in range(grid.edge_count):
                e = grid.edge_at(i)
                v = self._table.get(e, default)
                if v is None:
                    raise KeyError(f"edge {e} not covered by table config")
                vals[i] = v
            return vals
        ex, ey, horiz = grid.edge_coords
        zx = np.where(ex >= 0, 2 * ex, -2 * ex - 1).astype(np.uint64)
        zy = np.where(ey >= 0, 2 * ey, -2 * ey - 1).astype(np.uint64)
        keys = (zx << np.uint64(23)) | (zy << np.uint64(1)) | horiz.astype(np.uint64)
        return _omega_array(self._seedmix, keys)

    def contains_edge(self, e: Edge) -> bool:
        return self.box.contains(e[0]) and self.box.contains(e[1])

    def weight(self, model: WeightModel, e: Edge) -> float:
        if not self.contains_edge(e):
            raise ValueError(f"edge {e} outside config box")
        om = self.omega(e)
        # F^-1 is defined on (0, 1]; omega = 0 maps into the zero atom anyway
        return model.inverse(om) if om > 0.0 else 0.0

    def is_p_open(self, e: Edge, p: float) -> bool:
        return self.omega(e) <= p

    def manifest(self) -> dict:
        """Serializable description; omega values are never stored."""
        return {"box_n": self.box.n, "box_center": list(self.box.center),
                "seed": self.seed, "generator": self.generator}

    def to_table_text(self, edges=None) -> str:
        """Edge table dump, one line per edge: ``x1 y1 x2 y2 omega``."""
        if edges is None:
            if self._table is not None:
                edges = sorted(self._table)
            else:
                edges = self.box.edges()
        buf = io.StringIO()
        for e in edges:
            (x1, y1), (x2, y2) = e
            buf.write(f"{x1} {y1} {x2} {y2} {self.omega(e):.17g}\n")
        return buf.getvalue()


def sample_config(box: Box, seed: int) -> LatticeConfig:
    """Fresh i.i.d. uniform values on the box, reproducible from the seed."""
    if box.rect.x1 - box.rect.x0 < 0:
        raise ValueError("box must be nonempty")
    return LatticeConfig(box=box, seed=seed)


def config_from_table(box: Box, table: dict[Edge, float],
                      default: float | None = None) -> LatticeConfig:
    """Deterministic config from an explicit edge -> omega map."""
    for e, v in table.items():
        edge(*e)  # validates adjacency and canonical form
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"omega {v} outside [0, 1]")
    return LatticeConfig(box=box, seed=None, generator="table",
                         _table=dict(table), _table_default=default)


def config_from_table_text(box: Box, text: str,
                           default: float | None = None) -> LatticeConfig:
    table: dict[Edge, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        x1, y1, x2, y2, om = line.split()
        table[edge((int(x1), int(y1)), (int(x2), int(y2)))] = float(om)
    return config_from_table(box, table, default)


def weight_of(model: WeightModel, cfg: LatticeConfig, e: Edge) -> float:
    """t_e = F^{-1}(omega_e); raises if e lies outside the config box."""
    return cfg.weight(model, e)


def is_p_open(cfg: LatticeConfig, e: Edge, p: float) -> bool:
    return cfg.is_p_open(e, p)
