"""Vehicle kinematics: effective speed, leg travel times, dive profiles.

Travel times are plain floats in seconds; the distinguished value
INFEASIBLE (infinity) marks legs that cannot be flown.  Infinity
propagates through every chained computation, so callers can add and
compare times without special-casing impassable legs.
"""

from __future__ import annotations

import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, LandContactError, OutOfDomainError
from .flowfield import DEFAULT_SCHEME, FlowGrid, InterpScheme, sample

INFEASIBLE = math.inf

THREADS_ENV = "GLIDERPLAN_THREADS"


@dataclass(frozen=True)
class VehicleSpec:
    """Vehicle performance envelope."""

    speed_through_water: float = 0.3

    def __post_init__(self) -> None:
        s = self.speed_through_water
        if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
            raise ConfigError(
                f"speed_through_water must be positive and finite, got {s!r}")


@dataclass(frozen=True)
class DiveProfile:
    """Sawtooth dive band: climb apex depth and dive floor depth, meters down."""

    z_climb_to: float
    z_dive_to: float

    def __post_init__(self) -> None:
        if not self.z_dive_to > self.z_climb_to:
            raise ConfigError(
                f"z_dive_to ({self.z_dive_to!r}) must exceed z_climb_to "
                f"({self.z_climb_to!r})")

    @property
    def amplitude(self) -> float:
        return self.z_dive_to - self.z_climb_to


@dataclass(frozen=True)
class ProfileFamilySpec:
    """Parameters spanning a family of candidate dive profiles."""

    z_min: float
    z_climb_to_max: float
    z_max: float
    z_min_range: float
    n_climb_to_levels: int = 1
    n_dive_to_levels: int = 1

    def __post_init__(self) -> None:
        if not (self.z_min <= self.z_climb_to_max <= self.z_max):
            raise ConfigError(
                "profile family requires z_min <= z_climb_to_max <= z_max, "
                f"got {self.z_min!r} / {self.z_climb_to_max!r} / {self.z_max!r}")
        if not self.z_min_range > 0:
            raise ConfigError(
                f"z_min_range must be positive, got {self.z_min_range!r}")
        if self.z_min_range > self.z_max - self.z_min:
            raise ConfigError(
                f"z_min_range ({self.z_min_range!r}) exceeds the available "
                f"depth band ({self.z_max - self.z_min!r})")
        if self.n_climb_to_levels < 1 or self.n_dive_to_levels < 1:
            raise ConfigError("level counts must be at least 1")


def effective_speed(vehicle: VehicleSpec, current, direction) -> float | None:
    """Over-ground speed along a unit 3-D direction, or None when infeasible.

    The current (horizontal, zero vertical component) is split into the
    component along the direction of travel and the cross component the
    vehicle must crab against.  What remains of the through-water speed
    after cancelling the cross component drives progress:

        v = c_par + sqrt(speed^2 - c_perp^2)

    Infeasible when the cross current exceeds the speed through water,
    or when the along-track sum is not positive (swept backwards).
    """
    cu = current[0]
    cv = current[1]
    dx = direction[0]
    dy = direction[1]
    c_par = cu * dx + cv * dy
    c_perp2 = cu * cu + cv * cv - c_par * c_par
    s2 = vehicle.speed_through_water ** 2 - c_perp2
    if s2 < 0.0:
        return None
    v = c_par + math.sqrt(s2)
    if v <= 0.0:
        return None
    return v


def travel_time(p_start, p_end, t_start: float, grid: FlowGrid,
                vehicle: VehicleSpec, scheme: InterpScheme = DEFAULT_SCHEME,
                n_sub: int = 4) -> float:
    """Travel time in seconds along a straight 3-D leg, or INFEASIBLE.

    The leg is split into n_sub equal sub-segments.  Each sub-segment
    samples the current once -- at its starting horizontal position,
    its mid depth, and the clock time accumulated so far -- and holds
    the resulting over-ground speed constant across the sub-segment.
    A sub-segment that is infeasible, leaves the domain, or touches
    land makes the whole leg INFEASIBLE.

    Args:
        p_start: (x, y, z) meters, z positive down.
        p_end: (x, y, z) meters.
        t_start: departure clock time, seconds.
        grid: flow field to sample.
        vehicle: performance envelope.
        scheme: interpolation scheme for sampling.
        n_sub: number of sub-segments (>= 1).
    """
    if math.isinf(t_start):
        return INFEASIBLE
    if n_sub < 1:
        raise ConfigError(f"n_sub must be at least 1, got {n_sub!r}")
    x0, y0, z0 = p_start
    dx = p_end[0] - x0
    dy = p_end[1] - y0
    dz = p_end[2] - z0
    length = math.sqrt(dx * dx + dy * dy + dz * dz)
    if length == 0.0:
        return 0.0
    inv = 1.0 / length
    ux = dx * inv
    uy = dy * inv
    uz = dz * inv
    step = length / n_sub
    t = t_start
    for i in range(n_sub):
        f = i / n_sub
        fm = (i + 0.5) / n_sub
        try:
            cur = sample(grid, x0 + f * dx, y0 + f * dy, z0 + fm * dz, t,
                         scheme)
        except (OutOfDomainError, LandContactError):
            return INFEASIBLE
        v = effective_speed(vehicle, cur, (ux, uy, uz))
        if v is None:
            return INFEASIBLE
        t += step / v
    return t - t_start


def glider_travel_time(p_start_2d, p_end_2d, profile: DiveProfile,
                       t_start: float, grid: FlowGrid, vehicle: VehicleSpec,
                       h: float = 0.25, scheme: InterpScheme = DEFAULT_SCHEME,
                       n_sub: int = 4) -> float:
    """Travel time of a sawtooth dive run between two surface positions.

    The horizontal run is divided into ceil(1/h) equal segments.  Each
    segment is flown as one straight slant from the profile's climb
    apex down to its dive floor, departing when the previous segment
    arrived, so later segments see the field at later times.  Returns
    seconds, or INFEASIBLE as soon as any segment is impassable.

    Args:
        p_start_2d: (x, y) meters at the start of the run.
        p_end_2d: (x, y) meters at the end of the run.
        profile: dive band flown on every segment.
        t_start: departure clock time, seconds (INFEASIBLE passes through).
        h: fraction of the run covered by one segment, 0 < h <= 1.
    """
    if math.isinf(t_start):
        return INFEASIBLE
    if not (0.0 < h <= 1.0):
        raise ConfigError(f"h must lie in (0, 1], got {h!r}")
    # 1/h is taken with a small backoff so float noise cannot add a segment
    n_seg = math.ceil(1.0 / h - 1e-9)
    x0, y0 = p_start_2d
    dx = p_end_2d[0] - x0
    dy = p_end_2d[1] - y0
    t = t_start
    for i in range(n_seg):
        f0 = i / n_seg
        f1 = (i + 1) / n_seg
        dt = travel_time(
            (x0 + f0 * dx, y0 + f0 * dy, profile.z_climb_to),
            (x0 + f1 * dx, y0 + f1 * dy, profile.z_dive_to),
            t, grid, vehicle, scheme, n_sub)
        if math.isinf(dt):
            return INFEASIBLE
        t += dt
    return t - t_start


def _levels(lo: float, hi: float, n: int, single_at_top: bool) -> list[float]:
    # A single level sits at the extreme of its range: the shallowest
    # climb-to, but the deepest dive-to.
    if n == 1:
        return [hi if single_at_top else lo]
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n - 1)] + [hi]


def make_dive_profiles(spec: ProfileFamilySpec) -> list[DiveProfile]:
    """Expand a family spec into its feasible dive profiles.

    Climb-to levels are evenly spaced over [z_min, z_climb_to_max] and
    dive-to levels over [z_min + z_min_range, z_max]; their cross
    product is kept where the band amplitude reaches z_min_range.
    Profiles are ordered climb-to first, then dive-to, duplicates
    removed.  An empty family raises ConfigError.
    """
    climbs = _levels(spec.z_min, spec.z_climb_to_max,
                     spec.n_climb_to_levels, single_at_top=False)
    dives = _levels(spec.z_min + spec.z_min_range, spec.z_max,
                    spec.n_dive_to_levels, single_at_top=True)
    out: dict[DiveProfile, None] = {}
    for c in climbs:
        for d in dives:
            if d - c >= spec.z_min_range - 1e-9:
                out.setdefault(DiveProfile(c, d), None)
    if not out:
        raise ConfigError(
            "profile family is empty: no climb-to/dive-to pair reaches "
            f"z_min_range={spec.z_min_range!r}")
    return list(out)


_pool_lock = threading.Lock()
_pool: ThreadPoolExecutor | None = None
_pool_size = 0


def resolve_workers(workers: int | None = None) -> int:
    """Worker count for profile-family evaluation.

    Explicit argument wins, then the GLIDERPLAN_THREADS environment
    variable, then the machine's CPU count.
    """
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(
                f"{THREADS_ENV} must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def _family_pool(size: int) -> ThreadPoolExecutor:
    global _pool, _pool_size
    with _pool_lock:
        if _pool is None or _pool_size != size:
            if _pool is not None:
                _pool.shutdown(wait=False)
            _pool = ThreadPoolExecutor(max_workers=size)
            _pool_size = size
        return _pool


def evaluate_profile_times(p_start_2d, p_end_2d, t_start: float,
                           profiles, grid: FlowGrid, vehicle: VehicleSpec,
                           h: float = 0.25,
                           scheme: InterpScheme = DEFAULT_SCHEME,
                           n_sub: int = 4,
                           workers: int | None = None) -> list[float]:
    """Travel time of every profile in the family, in family order.

    With workers > 1 the profiles are evaluated on a shared thread
    pool; results are collected back in family order, so the output is
    identical to a sequential evaluation.
    """
    k = resolve_workers(workers)

    def one(profile: DiveProfile) -> float:
        return glider_travel_time(p_start_2d, p_end_2d, profile, t_start,
                                  grid, vehicle, h, scheme, n_sub)

    if k <= 1 or len(profiles) <= 1:
        return [one(p) for p in profiles]
    pool = _family_pool(min(k, len(profiles)))
    return list(pool.map(one, profiles))


def optimal_profile_cost(p_start_2d, p_end_2d, t_start: float, profiles,
                         grid: FlowGrid, vehicle: VehicleSpec,
                         h: float = 0.25,
                         scheme: InterpScheme = DEFAULT_SCHEME,
                         n_sub: int = 4, mode: str = "fastest",
                         slack_factor: float = 1.1,
                         workers: int | None = None
                         ) -> tuple[Optional[DiveProfile], float]:
    """Pick the best dive profile for one horizontal leg.

    mode "fastest" returns the minimum-time profile, preferring the
    larger amplitude and then family order on ties.  mode
    "max_amplitude" returns the largest-amplitude profile whose time is
    within slack_factor of the fastest (falling back to the fastest
    when none qualifies), preferring the faster profile on amplitude
    ties.  Returns (profile, time); when every profile in the family is
    infeasible the result is (None, INFEASIBLE).
    """
    if mode not in ("fastest", "max_amplitude"):
        raise ConfigError(
            f'mode must be "fastest" or "max_amplitude", got {mode!r}')
    profiles = list(profiles)
    if not profiles:
        raise ConfigError("profile family is empty")
    times = evaluate_profile_times(p_start_2d, p_end_2d, t_start, profiles,
                                   grid, vehicle, h, scheme, n_sub, workers)

    def fastest_key(i: int):
        return (times[i], -profiles[i].amplitude, i)

    best = min(range(len(profiles)), key=fastest_key)
    if math.isinf(times[best]):
        return None, INFEASIBLE
    if mode == "fastest":
        return profiles[best], times[best]
    limit = slack_factor * times[best]
    within = [i for i in range(len(profiles)) if times[i] <= limit]
    if not within:
        return profiles[best], times[best]
    pick = min(within, key=lambda i: (-profiles[i].amplitude, times[i], i))
    return profiles[pick], times[pick]
