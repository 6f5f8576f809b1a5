"""Gridded ocean-current fields: archive I/O, synthetic fields, 4-D sampling.

A flow field is stored on a rectilinear grid with ascending axes x, y
(meters), z (depth, meters positive down) and t (seconds).  The two
horizontal current components u (east) and v (north) are kept as 4-D
arrays indexed [t][z][y][x].  Sampling interpolates in four stages:
first in the horizontal plane per depth layer, then across depth, then
across time, independently for u and v.
"""

from __future__ import annotations

import json
import math
from array import array
from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConfigError, FlowFormatError, LandContactError, OutOfDomainError

XY_METHODS = ("nearest", "bilinear", "bicubic")
ZT_METHODS = ("nearest", "linear", "cubic", "akima")

FILL_DEFAULT = -9999.0
FORMAT_VERSION = 1

SYNTH_KINDS = ("uniform", "gyre", "tidal_channel")


class CurrentVector(NamedTuple):
    """Horizontal current sample, meters per second."""

    u: float
    v: float

    @property
    def magnitude(self) -> float:
        return math.hypot(self.u, self.v)


@dataclass(frozen=True)
class InterpScheme:
    """Interpolation method per pipeline stage.

    xy_method applies to both horizontal axes; z_method and t_method are
    one-dimensional.  Axes with too few knots degrade automatically
    (cubic/akima -> linear below three knots, anything -> nearest on a
    single knot); see effective_scheme for the degraded report.
    """

    xy_method: str = "bilinear"
    z_method: str = "linear"
    t_method: str = "linear"

    def __post_init__(self) -> None:
        if self.xy_method not in XY_METHODS:
            raise ConfigError(
                f"xy_method must be one of {XY_METHODS}, got {self.xy_method!r}")
        if self.z_method not in ZT_METHODS:
            raise ConfigError(
                f"z_method must be one of {ZT_METHODS}, got {self.z_method!r}")
        if self.t_method not in ZT_METHODS:
            raise ConfigError(
                f"t_method must be one of {ZT_METHODS}, got {self.t_method!r}")


DEFAULT_SCHEME = InterpScheme()


def _as_axis(values, name: str) -> np.ndarray:
    ax = np.asarray(values, dtype=np.float64)
    if ax.ndim != 1 or ax.size == 0:
        raise FlowFormatError(f"{name}: must be a non-empty 1-D array")
    if not np.all(np.isfinite(ax)):
        raise FlowFormatError(f"{name}: contains non-finite values")
    if ax.size > 1 and not np.all(np.diff(ax) > 0):
        raise FlowFormatError(f"{name}: not strictly ascending")
    return ax


@dataclass(eq=False)
class FlowGrid:
    """In-memory gridded flow field.

    u and v have shape (len(t_steps), len(z_levels), len(y_coords),
    len(x_coords)).  Grid nodes equal to fill_sentinel (or NaN) mark
    invalid data; a horizontal cell whose column is filled at every
    depth and time step counts as land.  Instances are treated as
    immutable after construction.
    """

    x_coords: np.ndarray
    y_coords: np.ndarray
    z_levels: np.ndarray
    t_steps: np.ndarray
    u: np.ndarray
    v: np.ndarray
    fill_sentinel: float = FILL_DEFAULT

    def __post_init__(self) -> None:
        self.x_coords = _as_axis(self.x_coords, "axes.x")
        self.y_coords = _as_axis(self.y_coords, "axes.y")
        self.z_levels = _as_axis(self.z_levels, "axes.z")
        self.t_steps = _as_axis(self.t_steps, "axes.t")
        self.fill_sentinel = float(self.fill_sentinel)
        shape = (self.t_steps.size, self.z_levels.size,
                 self.y_coords.size, self.x_coords.size)
        for name in ("u", "v"):
            comp = np.asarray(getattr(self, name), dtype=np.float64)
            if comp.shape != shape:
                raise FlowFormatError(
                    f"{name}: shape {comp.shape} does not match axes {shape}")
            bad = ~np.isfinite(comp) & ~self._isfill(comp)
            if bad.any():
                raise FlowFormatError(f"{name}: contains non-finite values")
            setattr(self, name, comp)
        # Hot-path caches: plain lists for bisect, packed doubles for
        # scalar indexing (both are much faster than ndarray scalar access).
        self._xl = self.x_coords.tolist()
        self._yl = self.y_coords.tolist()
        self._zl = self.z_levels.tolist()
        self._tl = self.t_steps.tolist()
        self._fu = array("d", self.u.ravel())
        self._fv = array("d", self.v.ravel())
        self._land_mask = None

    def _isfill(self, a: np.ndarray) -> np.ndarray:
        if math.isnan(self.fill_sentinel):
            return np.isnan(a)
        return (a == self.fill_sentinel) | np.isnan(a)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.u.shape

    @property
    def land_mask(self) -> np.ndarray:
        """Boolean (ny, nx); True where the column is invalid at every z, t."""
        if self._land_mask is None:
            filled = self._isfill(self.u) | self._isfill(self.v)
            self._land_mask = filled.all(axis=(0, 1))
        return self._land_mask

    def horizontal_bounds(self) -> tuple[float, float, float, float]:
        """(x_min, y_min, x_max, y_max) of the gridded domain."""
        return (self._xl[0], self._yl[0], self._xl[-1], self._yl[-1])

    def land_at(self, x: float, y: float) -> bool:
        """True if the grid node nearest to (x, y) is land.

        Raises OutOfDomainError outside the horizontal bounds.  This is
        the blocking predicate used when lattice edges are screened.
        """
        xl, yl = self._xl, self._yl
        if not (xl[0] <= x <= xl[-1] and yl[0] <= y <= yl[-1]):
            raise OutOfDomainError(
                f"position ({x:g}, {y:g}) outside flow domain")
        ix = _nearest_index(xl, x)
        iy = _nearest_index(yl, y)
        return bool(self.land_mask[iy, ix])


def _nearest_index(coords: list, q: float) -> int:
    """Index of the knot nearest q; ties resolve to the lower knot."""
    n = len(coords)
    if n == 1:
        return 0
    i = bisect_right(coords, q) - 1
    if i < 0:
        return 0
    if i >= n - 1:
        return n - 1
    return i if (q - coords[i]) <= (coords[i + 1] - q) else i + 1


def _cell_index(coords: list, q: float) -> int:
    """Left knot of the cell containing q, clamped to [0, n-2]."""
    i = bisect_right(coords, q) - 1
    if i < 0:
        return 0
    n2 = len(coords) - 2
    return n2 if i > n2 else i


def effective_method(method: str, n_knots: int) -> str:
    """Degrade an interpolation method to what n_knots can support."""
    if n_knots == 1:
        return "nearest"
    if n_knots == 2 and method in ("cubic", "akima", "bicubic"):
        return "linear" if method != "bicubic" else "bilinear"
    return method


def effective_scheme(scheme: InterpScheme, grid: FlowGrid) -> InterpScheme:
    """The scheme actually applied to this grid after axis degradation.

    The horizontal label reflects the weaker of the two axes; internally
    each axis degrades independently.
    """
    n_xy = min(grid.x_coords.size, grid.y_coords.size)
    return InterpScheme(
        xy_method=effective_method(scheme.xy_method, n_xy),
        z_method=effective_method(scheme.z_method, grid.z_levels.size),
        t_method=effective_method(scheme.t_method, grid.t_steps.size),
    )


def _hermite(x0: float, x1: float, y0: float, y1: float,
             m0: float, m1: float, q: float) -> float:
    h = x1 - x0
    s = (q - x0) / h
    s2 = s * s
    s3 = s2 * s
    return (y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + y1 * (3.0 * s2 - 2.0 * s3)
            + m0 * h * (s3 - 2.0 * s2 + s) + m1 * h * (s3 - s2))


def _cubic_axis_weights(coords: list, q: float) -> tuple[int, list[float]]:
    """Node weights for a Catmull-Rom cubic along one axis.

    Tangents are centered differences of the neighbouring knots, falling
    back to one-sided slopes at the axis ends, which keeps the stencil
    inside the grid and reproduces straight lines exactly.  Returns
    (first node index, weights) over a window of two to four knots.
    """
    n = len(coords)
    i = _cell_index(coords, q)
    x0, x1 = coords[i], coords[i + 1]
    h = x1 - x0
    s = (q - x0) / h
    s2 = s * s
    s3 = s2 * s
    h00 = 2.0 * s3 - 3.0 * s2 + 1.0
    h01 = 3.0 * s2 - 2.0 * s3
    h10 = (s3 - 2.0 * s2 + s) * h
    h11 = (s3 - s2) * h

    lo = i - 1 if i > 0 else i
    hi = i + 2 if i + 2 <= n - 1 else i + 1
    w = [0.0] * (hi - lo + 1)
    w[i - lo] += h00
    w[i + 1 - lo] += h01
    # tangent at knot i
    if i > 0:
        a = 1.0 / (coords[i + 1] - coords[i - 1])
        w[i - 1 - lo] -= h10 * a
        w[i + 1 - lo] += h10 * a
    else:
        a = 1.0 / h
        w[i - lo] -= h10 * a
        w[i + 1 - lo] += h10 * a
    # tangent at knot i + 1
    if i + 2 <= n - 1:
        a = 1.0 / (coords[i + 2] - coords[i])
        w[i - lo] -= h11 * a
        w[i + 2 - lo] += h11 * a
    else:
        a = 1.0 / h
        w[i - lo] -= h11 * a
        w[i + 1 - lo] += h11 * a
    return lo, w


def _axis_weights(coords: list, q: float, method: str) -> tuple[int, list[float]]:
    """Stencil (start index, node weights) for one axis; q pre-clamped."""
    n = len(coords)
    method = effective_method(method, n)
    if method in ("nearest",):
        return _nearest_index(coords, q), [1.0]
    if method in ("linear", "bilinear"):
        i = _cell_index(coords, q)
        f = (q - coords[i]) / (coords[i + 1] - coords[i])
        return i, [1.0 - f, f]
    # cubic / bicubic
    return _cubic_axis_weights(coords, q)


def _akima_node_slope(m_prev2: float, m_prev: float, m_cur: float,
                      m_next: float) -> float:
    w1 = abs(m_next - m_cur)
    w2 = abs(m_prev - m_prev2)
    den = w1 + w2
    if den == 0.0:
        return 0.5 * (m_prev + m_cur)
    return (w1 * m_prev + w2 * m_cur) / den


def _akima_eval(xs: Sequence[float], ys: Sequence[float], q: float) -> float:
    """Akima spline value at q for n >= 3 knots.

    Segment slopes beyond the data are extended with the standard
    quadratic rule (each ghost slope continues the trend of the two
    slopes inside it), and where both curvature weights vanish the node
    slope falls back to the average of its two segment slopes.
    """
    n = len(xs)
    j = _cell_index(xs, q)

    def seg(k: int) -> float:
        # segment slope with ghost extension outside [0, n-2]
        if 0 <= k <= n - 2:
            return (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k])
        if k < 0:
            return 2.0 * seg(k + 1) - seg(k + 2)
        return 2.0 * seg(k - 1) - seg(k - 2)

    m_m2, m_m1, m_0, m_1, m_2 = (seg(j - 2), seg(j - 1), seg(j),
                                 seg(j + 1), seg(j + 2))
    t0 = _akima_node_slope(m_m2, m_m1, m_0, m_1)
    t1 = _akima_node_slope(m_m1, m_0, m_1, m_2)
    return _hermite(xs[j], xs[j + 1], ys[j], ys[j + 1], t0, t1, q)


def interp_1d(knots, values, q: float, method: str) -> float:
    """Interpolate 1-D samples at q.

    method is one of nearest, linear, cubic (Catmull-Rom) or akima.
    Queries outside the knot range clamp to the boundary value, and the
    method degrades when the axis has too few knots (cubic/akima need
    three, anything beyond one knot can do linear).
    """
    if method not in ZT_METHODS:
        raise ConfigError(f"method must be one of {ZT_METHODS}, got {method!r}")
    xs = list(knots)
    ys = list(values)
    if len(xs) != len(ys) or not xs:
        raise ConfigError("knots and values must be non-empty, equal length")
    n = len(xs)
    if q <= xs[0]:
        q = xs[0]
    elif q >= xs[-1]:
        q = xs[-1]
    method = effective_method(method, n)
    if method == "akima":
        return _akima_eval(xs, ys, q)
    i0, w = _axis_weights(xs, q, method)
    return math.fsum(w[k] * ys[i0 + k] for k in range(len(w)))


def interp_xy(layer, x_coords, y_coords, x: float, y: float,
              method: str = "bilinear") -> float:
    """Interpolate a 2-D scalar slice (indexed [y][x]) at one position.

    method is one of nearest, bilinear or bicubic.  Positions outside
    the axes raise OutOfDomainError; fill values are not interpreted
    here (land handling belongs to sample()).
    """
    if method not in XY_METHODS:
        raise ConfigError(f"method must be one of {XY_METHODS}, got {method!r}")
    lay = np.asarray(layer, dtype=np.float64)
    xs = list(x_coords)
    ys = list(y_coords)
    if lay.shape != (len(ys), len(xs)):
        raise ConfigError(
            f"layer shape {lay.shape} does not match axes ({len(ys)}, {len(xs)})")
    if not (xs[0] <= x <= xs[-1] and ys[0] <= y <= ys[-1]):
        raise OutOfDomainError(
            f"position ({x:g}, {y:g}) outside slice domain")
    ix0, wx = _axis_weights(xs, x, method)
    iy0, wy = _axis_weights(ys, y, method)
    acc = 0.0
    for jy, wyv in enumerate(wy):
        row = 0.0
        for jx, wxv in enumerate(wx):
            row += wxv * lay[iy0 + jy, ix0 + jx]
        acc += wyv * row
    return acc


def _zt_stencil(coords: list, q: float, method: str):
    """(clamped q, mode, payload) for one clamped 1-D axis.

    mode "w": payload is (start, weights).  mode "a": payload is the
    knot window (lo, hi) feeding an Akima evaluation.
    """
    n = len(coords)
    if q <= coords[0]:
        q = coords[0]
    elif q >= coords[-1]:
        q = coords[-1]
    method = effective_method(method, n)
    if method == "akima":
        j = _cell_index(coords, q)
        lo = j - 2 if j - 2 > 0 else 0
        hi = j + 3 if j + 3 < n - 1 else n - 1
        return q, "a", (lo, hi)
    return q, "w", _axis_weights(coords, q, method)


def sample(grid: FlowGrid, x: float, y: float, z: float, t: float,
           scheme: InterpScheme = DEFAULT_SCHEME) -> CurrentVector:
    """Sample the current at one space-time point.

    Interpolates each component through the four-stage pipeline
    (horizontal per layer, then depth, then time).  Depth and time
    clamp to the grid range; horizontal queries outside the domain
    raise OutOfDomainError.  If any grid node in the support stencil
    is a fill value the sample raises LandContactError.

    Returns:
        CurrentVector(u, v) in m/s.
    """
    xl, yl = grid._xl, grid._yl
    if not (xl[0] <= x <= xl[-1] and yl[0] <= y <= yl[-1]):
        raise OutOfDomainError(f"position ({x:g}, {y:g}) outside flow domain")
    ix0, wx = _axis_weights(xl, x, scheme.xy_method)
    iy0, wy = _axis_weights(yl, y, scheme.xy_method)
    z, zmode, zpay = _zt_stencil(grid._zl, z, scheme.z_method)
    t, tmode, tpay = _zt_stencil(grid._tl, t, scheme.t_method)

    nx = len(xl)
    ny = len(yl)
    nz = len(grid._zl)
    fill = grid.fill_sentinel
    nwx = len(wx)
    nwy = len(wy)
    plane = ny * nx

    if tmode == "w":
        t_idx = range(tpay[0], tpay[0] + len(tpay[1]))
    else:
        t_idx = range(tpay[0], tpay[1] + 1)
    if zmode == "w":
        z_idx = range(zpay[0], zpay[0] + len(zpay[1]))
    else:
        z_idx = range(zpay[0], zpay[1] + 1)

    out = []
    for flat in (grid._fu, grid._fv):
        t_vals = []
        for it in t_idx:
            z_vals = []
            for iz in z_idx:
                base = (it * nz + iz) * plane + iy0 * nx + ix0
                acc = 0.0
                for jy in range(nwy):
                    row = base + jy * nx
                    r = 0.0
                    for jx in range(nwx):
                        val = flat[row + jx]
                        if val == fill or val != val:
                            raise LandContactError(
                                f"fill value in stencil near ({x:g}, {y:g})")
                        r += wx[jx] * val
                    acc += wy[jy] * r
                z_vals.append(acc)
            if zmode == "w":
                zw = zpay[1]
                zv = 0.0
                for k in range(len(zw)):
                    zv += zw[k] * z_vals[k]
            else:
                zv = _akima_eval(grid._zl[zpay[0]:zpay[1] + 1], z_vals, z)
            t_vals.append(zv)
        if tmode == "w":
            tw = tpay[1]
            tv = 0.0
            for k in range(len(tw)):
                tv += tw[k] * t_vals[k]
        else:
            tv = _akima_eval(grid._tl[tpay[0]:tpay[1] + 1], t_vals, t)
        out.append(tv)
    return CurrentVector(out[0], out[1])


# ---------------------------------------------------------------------------
# synthetic fields

def synth_field(kind: str, x_coords, y_coords, z_levels=(0.0,),
                t_steps=(0.0,), params: dict | None = None,
                fill_sentinel: float = FILL_DEFAULT) -> FlowGrid:
    """Generate a synthetic flow field on the given axes.

    Kinds:
        uniform        constant (u0, v0) everywhere
        gyre           time-perturbed divergence-free double gyre
                       (amplitude, epsilon, period)
        tidal_channel  spatially uniform u = amplitude*sin(2*pi*t/period)

    The gyre follows the standard two-cell benchmark: with the domain
    rescaled to [0, 2] x [0, 1], f(x, t) = a*x^2 + b*x where
    a = epsilon*sin(2*pi*t/period) and b = 1 - 2a, giving
    u = -pi*A*sin(pi*f)*cos(pi*y) and v = pi*A*cos(pi*f)*sin(pi*y)*df/dx.
    Both components derive from one stream function, so the field is
    divergence-free; on domains that are not twice as wide as they are
    tall this scales v by 2*height/width.
    """
    params = dict(params or {})
    if kind not in SYNTH_KINDS:
        raise ConfigError(f"kind must be one of {SYNTH_KINDS}, got {kind!r}")
    x = _as_axis(x_coords, "axes.x")
    y = _as_axis(y_coords, "axes.y")
    z = _as_axis(z_levels, "axes.z")
    t = _as_axis(t_steps, "axes.t")
    shape = (t.size, z.size, y.size, x.size)

    def take(name: str, default: float) -> float:
        return float(params.pop(name, default))

    if kind == "uniform":
        u0 = take("u0", 0.0)
        v0 = take("v0", 0.0)
        u = np.full(shape, u0)
        v = np.full(shape, v0)
    elif kind == "gyre":
        amplitude = take("amplitude", 0.1)
        epsilon = take("epsilon", 0.25)
        period = take("period", 43200.0)
        if period <= 0:
            raise ConfigError("gyre period must be positive")
        xr = x[-1] - x[0]
        yr = y[-1] - y[0]
        xn = (2.0 * (x - x[0]) / xr) if xr > 0 else np.zeros_like(x)
        yn = ((y - y[0]) / yr) if yr > 0 else np.zeros_like(y)
        # v carries the stream-function aspect factor 2*height/width so
        # the field stays divergence-free on any rectangle
        aspect = (2.0 * yr / xr) if xr > 0 and yr > 0 else 1.0
        tt = t.reshape(-1, 1, 1, 1)
        xg = xn.reshape(1, 1, 1, -1)
        yg = yn.reshape(1, 1, -1, 1)
        a = epsilon * np.sin(2.0 * np.pi * tt / period)
        b = 1.0 - 2.0 * a
        f = a * xg * xg + b * xg
        dfdx = 2.0 * a * xg + b
        u = np.broadcast_to(
            -np.pi * amplitude * np.sin(np.pi * f) * np.cos(np.pi * yg),
            shape).copy()
        v = np.broadcast_to(
            np.pi * amplitude * aspect
            * np.cos(np.pi * f) * np.sin(np.pi * yg) * dfdx,
            shape).copy()
    else:  # tidal_channel
        amplitude = take("amplitude", 0.2)
        period = take("period", 43200.0)
        if period <= 0:
            raise ConfigError("tidal_channel period must be positive")
        ut = amplitude * np.sin(2.0 * np.pi * t / period)
        u = np.broadcast_to(ut.reshape(-1, 1, 1, 1), shape).copy()
        v = np.zeros(shape)

    if params:
        raise ConfigError(
            f"unknown parameters for kind {kind!r}: {sorted(params)}")
    return FlowGrid(x, y, z, t, u, v, fill_sentinel=fill_sentinel)


# ---------------------------------------------------------------------------
# archive I/O

def _header_dict(grid: FlowGrid, encoding: str) -> dict:
    return {
        "version": FORMAT_VERSION,
        "encoding": encoding,
        "fill_sentinel": grid.fill_sentinel,
        "axes": {
            "x": grid.x_coords.tolist(),
            "y": grid.y_coords.tolist(),
            "z": grid.z_levels.tolist(),
            "t": grid.t_steps.tolist(),
        },
    }


def save_flow_grid(grid: FlowGrid, path, encoding: str = "inline") -> None:
    """Write a grid archive; encoding is "inline" (text) or "binary".

    The text variant stores u and v as flat row-major [t][z][y][x]
    JSON arrays and round-trips float64 exactly.  The binary variant
    appends little-endian float32 blocks (u then v) after the header
    line and records their byte offset in the header.
    """
    if encoding not in ("inline", "binary"):
        raise ConfigError(f'encoding must be "inline" or "binary", got {encoding!r}')
    header = _header_dict(grid, encoding)
    if encoding == "inline":
        header["u"] = grid.u.ravel().tolist()
        header["v"] = grid.v.ravel().tolist()
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(header, fh, separators=(",", ":"))
            fh.write("\n")
        return
    header["data_offset"] = 0
    while True:
        blob = json.dumps(header, separators=(",", ":")).encode("utf-8")
        offset = len(blob) + 1
        if header["data_offset"] == offset:
            break
        header["data_offset"] = offset
    with open(path, "wb") as fh:
        fh.write(blob)
        fh.write(b"\n")
        fh.write(np.ascontiguousarray(grid.u, dtype="<f4").tobytes())
        fh.write(np.ascontiguousarray(grid.v, dtype="<f4").tobytes())


def _require(header: dict, key: str):
    if key not in header:
        raise FlowFormatError(f"{key}: missing header key")
    return header[key]


def _parse_header(header: dict) -> tuple[np.ndarray, ...]:
    version = _require(header, "version")
    if version != FORMAT_VERSION:
        raise FlowFormatError(f"version: unsupported value {version!r}")
    axes = _require(header, "axes")
    if not isinstance(axes, dict):
        raise FlowFormatError("axes: must be an object")
    out = []
    for name in ("x", "y", "z", "t"):
        if name not in axes:
            raise FlowFormatError(f"axes.{name}: missing")
        out.append(_as_axis(axes[name], f"axes.{name}"))
    fill = _require(header, "fill_sentinel")
    if not isinstance(fill, (int, float)):
        raise FlowFormatError("fill_sentinel: must be numeric")
    return (*out, float(fill))


def load_flow_grid(path) -> FlowGrid:
    """Read a grid archive written by save_flow_grid.

    Malformed files raise FlowFormatError naming the offending key;
    loading never mutates the file.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    header = None
    try:
        header = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        pass
    if header is None:
        line, _, _ = raw.partition(b"\n")
        try:
            header = json.loads(line.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise FlowFormatError(f"header: not parseable ({exc})") from exc
    if not isinstance(header, dict):
        raise FlowFormatError("header: must be an object")
    x, y, z, t, fill = _parse_header(header)
    encoding = _require(header, "encoding")
    shape = (t.size, z.size, y.size, x.size)
    count = int(np.prod(shape))

    if encoding == "inline":
        comps = []
        for name in ("u", "v"):
            vals = _require(header, name)
            arr = np.asarray(vals, dtype=np.float64)
            if arr.ndim != 1 or arr.size != count:
                raise FlowFormatError(
                    f"{name}: expected {count} values, got {arr.size}")
            comps.append(arr.reshape(shape))
        return FlowGrid(x, y, z, t, comps[0], comps[1], fill_sentinel=fill)
    if encoding == "binary":
        offset = _require(header, "data_offset")
        if not isinstance(offset, int) or offset < 0:
            raise FlowFormatError("data_offset: must be a non-negative integer")
        need = offset + 2 * count * 4
        if len(raw) != need:
            raise FlowFormatError(
                f"data_offset: file holds {len(raw)} bytes, expected {need}")
        block = np.frombuffer(raw, dtype="<f4", count=2 * count, offset=offset)
        u = block[:count].astype(np.float64).reshape(shape)
        v = block[count:].astype(np.float64).reshape(shape)
        return FlowGrid(x, y, z, t, u, v, fill_sentinel=fill)
    raise FlowFormatError(f"encoding: unsupported value {encoding!r}")
