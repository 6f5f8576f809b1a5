"""Independent reference implementations used only by the tests.

Each oracle recomputes a quantity the library also computes, but with a
different algorithmic structure (vectorized instead of windowed,
exhaustive instead of label-setting) so shared bugs are unlikely.
"""

import math

import numpy as np


def akima_reference(xs, ys, q):
    """Akima spline at q, vectorized over the whole knot array.

    Builds the full extended slope table (two quadratic ghost segments
    per end), derives every node slope at once, then evaluates the cubic
    on the containing segment from its polynomial coefficients rather
    than a Hermite basis.  Matches the convention that a vanishing
    weight denominator falls back to the mean of the two adjacent
    segment slopes.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    n = xs.size
    if n < 3:
        raise ValueError("need at least 3 knots")
    q = min(max(q, xs[0]), xs[-1])

    dx = np.diff(xs)
    m = np.diff(ys) / dx                      # n - 1 interior slopes
    ext = np.empty(n + 3)
    ext[2:n + 1] = m
    ext[1] = 2.0 * ext[2] - ext[3]            # ghosts, left
    ext[0] = 2.0 * ext[1] - ext[2]
    ext[n + 1] = 2.0 * ext[n] - ext[n - 1]    # ghosts, right
    ext[n + 2] = 2.0 * ext[n + 1] - ext[n]

    w1 = np.abs(ext[3:] - ext[2:-1])          # |m[i+1] - m[i]|
    w2 = np.abs(ext[1:-2] - ext[:-3])         # |m[i-1] - m[i-2]|
    den = w1 + w2
    safe = np.where(den == 0.0, 1.0, den)
    slopes = np.where(
        den == 0.0,
        0.5 * (ext[1:-2] + ext[2:-1]),
        (w1 * ext[1:-2] + w2 * ext[2:-1]) / safe)

    i = int(np.searchsorted(xs, q, side="right") - 1)
    i = min(max(i, 0), n - 2)
    h = xs[i + 1] - xs[i]
    t0, t1 = slopes[i], slopes[i + 1]
    seg = m[i]
    c2 = (3.0 * seg - 2.0 * t0 - t1) / h
    c3 = (t0 + t1 - 2.0 * seg) / (h * h)
    d = q - xs[i]
    return float(ys[i] + t0 * d + c2 * d * d + c3 * d * d * d)


def effective_speed_reference(speed, cu, cv, hx, hy):
    """Ground speed along (hx, hy) via the quadratic |t*d - c| = speed.

    Solves for the ground speed t directly instead of splitting the
    current into components: t^2 - 2 t (c . d) + |c|^2 - s^2 = 0, taking
    the larger root.  Returns None when no positive root exists.
    """
    norm = math.hypot(hx, hy)
    dx, dy = hx / norm, hy / norm
    b = cu * dx + cv * dy
    c = cu * cu + cv * cv - speed * speed
    disc = b * b - c
    if disc < 0:
        return None
    t = b + math.sqrt(disc)
    if t <= 0:
        return None
    return t


def brute_force_arrival(n_vertices, out_edges, cost_fn, start, goal, t0):
    """Earliest goal arrival by exhaustive search over simple paths.

    out_edges maps vertex -> iterable of neighbor vertices.  cost_fn
    (a, b, depart) returns seconds (math.inf allowed).  Prunes branches
    whose arrival already meets or exceeds the best goal arrival, which
    is exact for non-negative edge times.  Returns (arrival, path) or
    None when the goal is unreachable.
    """
    best = [math.inf, None]
    on_path = [False] * n_vertices
    stack = [start]

    def walk(vertex, clock):
        if clock >= best[0]:
            return
        if vertex == goal:
            best[0] = clock
            best[1] = list(stack)
            return
        on_path[vertex] = True
        for nbr in out_edges[vertex]:
            if on_path[nbr]:
                continue
            dt = cost_fn(vertex, nbr, clock)
            if math.isinf(dt):
                continue
            stack.append(nbr)
            walk(nbr, clock + dt)
            stack.pop()
        on_path[vertex] = False

    walk(start, t0)
    if best[1] is None:
        return None
    return best[0], best[1]


def static_shortest_time(n_vertices, edges, start, goal):
    """Shortest time on a time-independent graph via scipy csgraph.

    edges is a list of (a, b, seconds) directed triples.  Returns inf
    when unreachable.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import dijkstra as sp_dijkstra

    if not edges:
        return math.inf if start != goal else 0.0
    rows = [a for a, _, _ in edges]
    cols = [b for _, b, _ in edges]
    vals = [w for _, _, w in edges]
    mat = coo_matrix((vals, (rows, cols)), shape=(n_vertices, n_vertices))
    dist = sp_dijkstra(mat.tocsr(), directed=True, indices=start)
    return float(dist[goal])


def bilinear_reference(layer, xs, ys, x, y):
    """Four-corner bilinear formula written out longhand."""
    xs = list(xs)
    ys = list(ys)
    i = max(0, min(np.searchsorted(xs, x, side="right") - 1, len(xs) - 2))
    j = max(0, min(np.searchsorted(ys, y, side="right") - 1, len(ys) - 2))
    fx = (x - xs[i]) / (xs[i + 1] - xs[i])
    fy = (y - ys[j]) / (ys[j + 1] - ys[j])
    lay = np.asarray(layer, dtype=np.float64)
    return float(
        lay[j, i] * (1 - fx) * (1 - fy)
        + lay[j, i + 1] * fx * (1 - fy)
        + lay[j + 1, i] * (1 - fx) * fy
        + lay[j + 1, i + 1] * fx * fy)
