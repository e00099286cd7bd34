"""Radial Dirac-Coulomb shooting solver, independent of the algebraic ledger.

Units hbar = m = c = 1, V(r) = -Z alpha / r.  With the binding w = 1 - eps as
the unknown the radial system reads::

    G' = -(kappa_d / r) G + (2 - w + Z alpha / r) F
    F' =  (kappa_d / r) F + (w - Z alpha / r) G

It is integrated in x = ln r with fixed-step RK4, outward from r_min
(Frobenius start, leading power r^gamma) and inward from r_max (asymptotic
ratio F/G = -sqrt(w / (2 - w))).  The two pieces meet at the virial radius
Z alpha / (2 w), and the eigenvalue is found by bisection on the sign of the
normalized Wronskian there.  Working in w rather than eps keeps the
fine-structure scale (~1e-10 in eps for hydrogen) well above round-off.
"""

from __future__ import annotations

import math
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from . import ledger
from .errors import (
    BracketError,
    ConvergenceError,
    NoBoundStateError,
    NodeCountError,
    SolverError,
    SupercriticalError,
)

@dataclass(frozen=True)
class SolverConfig:
    """Grid and bisection settings.

    ``r_max=None`` means 40 n^2 / (Z alpha), i.e. 40 n^2 Bohr radii.
    ``tol`` is relative to the binding energy 1 - eps.  ``seed`` selects the
    search window: ``"ledger"`` brackets the closed-form binding by
    +-``eps_bracket``; ``"bohr"`` uses only the nonrelativistic level pattern.
    """

    r_min: float = 1e-6
    r_max: float | None = None
    steps: int = 20000
    eps_bracket: float = 0.10
    tol: float = 1e-12
    seed: str = "ledger"
    max_iter: int = 200
    scan_points: int = 9

    def __post_init__(self):
        if not self.r_min > 0:
            raise ValueError(f"r_min must be positive, got {self.r_min}")
        if self.r_max is not None and not self.r_max > self.r_min:
            raise ValueError(f"r_max={self.r_max} must exceed r_min={self.r_min}")
        if self.steps < 1000:
            raise ValueError(f"steps must be >= 1000, got {self.steps}")
        if self.tol < 1e-12:
            raise ValueError(f"tol must be >= 1e-12, got {self.tol}")
        if not 0 < self.eps_bracket < 1:
            raise ValueError(f"eps_bracket must lie in (0, 1), got {self.eps_bracket}")
        if self.seed not in ("ledger", "bohr"):
            raise ValueError(f"seed must be 'ledger' or 'bohr', got {self.seed!r}")
        if self.scan_points < 2:
            raise ValueError("scan_points must be >= 2")

    def radial_max(self, n: int, Z: float, alpha: float) -> float:
        return self.r_max if self.r_max is not None else 40.0 * n * n / (Z * alpha)


@dataclass(frozen=True)
class RadialSolution:
    Z: float
    kappa_d: int
    nr: int
    eps: float
    binding: float
    nodes: int
    residual: float

    @property
    def n(self) -> int:
        return self.nr + abs(self.kappa_d)


@njit(cache=True, nogil=True)
def _rhs(r, kappa_d, za, w, g, f):
    dg = -kappa_d * g + (r * (2.0 - w) + za) * f
    df = kappa_d * f + (r * w - za) * g
    return dg, df


@njit(cache=True, nogil=True)
def _rk4_sweep(x0, h, nsteps, kappa_d, za, w, g, f):
    """Integrate nsteps RK4 steps of size h (h < 0 runs inward).

    Returns final (g, f), the number of sign changes of g, and the log10 of
    the rescaling applied to keep values finite.
    """
    nodes = 0
    scale_log = 0.0
    x = x0
    for _ in range(nsteps):
        r0 = math.exp(x)
        rh = math.exp(x + 0.5 * h)
        r1 = math.exp(x + h)
        k1g, k1f = _rhs(r0, kappa_d, za, w, g, f)
        k2g, k2f = _rhs(rh, kappa_d, za, w, g + 0.5 * h * k1g, f + 0.5 * h * k1f)
        k3g, k3f = _rhs(rh, kappa_d, za, w, g + 0.5 * h * k2g, f + 0.5 * h * k2f)
        k4g, k4f = _rhs(r1, kappa_d, za, w, g + h * k3g, f + h * k3f)
        g_new = g + h * (k1g + 2.0 * k2g + 2.0 * k3g + k4g) / 6.0
        f_new = f + h * (k1f + 2.0 * k2f + 2.0 * k3f + k4f) / 6.0
        if g_new * g < 0.0:
            nodes += 1
        g = g_new
        f = f_new
        x += h
        big = abs(g) + abs(f)
        if big > 1e100:
            g /= big
            f /= big
            scale_log += math.log10(big)
    return g, f, nodes, scale_log


def _frobenius_start(r: float, kappa_d: int, za: float, w: float, terms: int = 4):
    """Series G = r^gamma sum a_k r^k, F = r^gamma sum b_k r^k, normalized to a_0 = 1."""
    gam = math.sqrt(kappa_d * kappa_d - za * za)
    a = [1.0]
    # pick the algebraically equivalent form without cancellation
    b = [za / (kappa_d - gam) if kappa_d < 0 else (kappa_d + gam) / za]
    for k in range(1, terms):
        m11, m12 = gam + k + kappa_d, -za
        m21, m22 = za, gam + k - kappa_d
        r1 = (2.0 - w) * b[k - 1]
        r2 = w * a[k - 1]
        det = m11 * m22 - m12 * m21
        a.append((r1 * m22 - m12 * r2) / det)
        b.append((m11 * r2 - m21 * r1) / det)
    g = sum(ak * r**k for k, ak in enumerate(a))
    f = sum(bk * r**k for k, bk in enumerate(b))
    # drop the common r^gamma; only the ratio and the sign matter
    return g, f


@dataclass(frozen=True)
class _Shot:
    mismatch: float
    nodes: int


class _Shooter:
    """Fixed grid and coupling for one (Z, kappa_d); evaluates trial bindings."""

    def __init__(self, Z: float, kappa_d: int, alpha: float, r_min: float, r_max: float, steps: int):
        if Z <= 0:
            raise ValueError("the Coulomb oracle needs Z > 0")
        if kappa_d == 0:
            raise ValueError("kappa_d must be a nonzero integer")
        self.za = Z * alpha
        if self.za >= abs(kappa_d):
            raise SupercriticalError(f"Z*alpha={self.za:.6g} >= |kappa_d|={abs(kappa_d)}")
        self.kappa_d = int(kappa_d)
        self.x_min = math.log(r_min)
        self.x_max = math.log(r_max)
        self.steps = steps
        self.h = (self.x_max - self.x_min) / steps

    def match_index(self, w: float) -> int:
        r_match = self.za / (2.0 * w)
        i = int(round((math.log(r_match) - self.x_min) / self.h))
        if not 10 <= i <= self.steps - 10:
            raise ConvergenceError(
                f"matching radius {r_match:.4g} lies outside the grid "
                f"[{math.exp(self.x_min):.3g}, {math.exp(self.x_max):.4g}]; enlarge r_max"
            )
        return i

    def shoot(self, w: float) -> _Shot:
        im = self.match_index(w)
        g0, f0 = _frobenius_start(math.exp(self.x_min), self.kappa_d, self.za, w)
        go, fo, n_out, _ = _rk4_sweep(self.x_min, self.h, im, self.kappa_d, self.za, w, g0, f0)
        g1 = 1.0
        f1 = -math.sqrt(w / (2.0 - w))
        gi, fi, n_in, _ = _rk4_sweep(self.x_max, -self.h, self.steps - im, self.kappa_d, self.za, w, g1, f1)
        norm = math.hypot(go, fo) * math.hypot(gi, fi)
        return _Shot((go * fi - fo * gi) / norm, n_out + n_in)


def _bisect(shooter: _Shooter, lo: float, hi: float, s_lo: float, tol: float, max_iter: int):
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        shot = shooter.shoot(mid)
        if shot.mismatch == 0.0:
            return mid, shot
        if (shot.mismatch > 0) == (s_lo > 0):
            lo, s_lo = mid, shot.mismatch
        else:
            hi = mid
        if hi - lo <= tol * mid:
            w = 0.5 * (lo + hi)
            return w, shooter.shoot(w)
    raise ConvergenceError(f"bisection did not reach tol={tol} in {max_iter} iterations")


def scan_levels(Z: float, kappa_d: int, w_lo: float, w_hi: float, points: int = 64,
                config: SolverConfig | None = None, alpha: float = ledger.CODATA_ALPHA,
                n_grid: int | None = None) -> list[RadialSolution]:
    """All bound levels of ``kappa_d`` with binding in [w_lo, w_hi].

    The window is sampled on a geometric grid of ``points`` trial bindings and
    every sign change of the matching determinant is bisected.  Levels closer
    together than the sampling resolution may be missed.
    """
    config = config or SolverConfig()
    if not 0 < w_lo < w_hi < 1:
        raise ValueError(f"need 0 < w_lo < w_hi < 1, got {w_lo}, {w_hi}")
    if n_grid is None:
        n_grid = max(1, math.ceil(Z * alpha / math.sqrt(2 * w_lo)))
    shooter = _Shooter(Z, kappa_d, alpha, config.r_min, config.radial_max(n_grid, Z, alpha), config.steps)
    ws = np.geomspace(w_lo, w_hi, points)
    shots = [shooter.shoot(w) for w in ws]
    out = []
    for (wa, sa), (wb, sb) in zip(zip(ws, shots), zip(ws[1:], shots[1:])):
        if sa.mismatch * sb.mismatch < 0:
            w, shot = _bisect(shooter, wa, wb, sa.mismatch, config.tol, config.max_iter)
            nr = shot.nodes + 1 if kappa_d > 0 else shot.nodes
            out.append(RadialSolution(Z, kappa_d, nr, 1.0 - w, w, shot.nodes, abs(shot.mismatch)))
    return out


def _window(Z: float, n: int, kappa_abs: int, config: SolverConfig, alpha: float):
    if config.seed == "ledger":
        w_ref = ledger.binding(n, Fraction(2 * kappa_abs - 1, 2), Z, alpha)
        return (1 - config.eps_bracket) * w_ref, (1 + config.eps_bracket) * w_ref
    za2 = (Z * alpha) ** 2
    lo = za2 / (2 * (n + 0.5) ** 2)
    hi = min(za2 / (2 * (n - 0.5) ** 2), 1 - 1e-9)
    return lo, hi


def expected_nodes(kappa_d: int, nr: int) -> int:
    """Sign changes of the large component G: n - l - 1 with l the orbital of G.

    That is ``nr`` for kappa_d < 0 and ``nr - 1`` for kappa_d > 0; a negative
    value means the level does not exist.
    """
    return nr - 1 if kappa_d > 0 else nr


def solve_bound_state(Z: float, kappa_d: int, nr: int, config: SolverConfig | None = None,
                      alpha: float = ledger.CODATA_ALPHA) -> RadialSolution:
    """Bound level with ``nr`` radial nodes for Dirac quantum number ``kappa_d``.

    The level is accepted only if G has :func:`expected_nodes` sign changes.
    Raises :class:`NoBoundStateError` if the search window contains no level
    (this is what happens for kappa_d > 0, nr = 0, which is still searched
    numerically rather than rejected up front) and :class:`NodeCountError` if
    the level found has the wrong node count.
    """
    config = config or SolverConfig()
    if int(nr) != nr or nr < 0:
        raise ValueError(f"nr must be a non-negative integer, got {nr}")
    n = nr + abs(kappa_d)
    want = expected_nodes(kappa_d, nr)
    w_lo, w_hi = _window(Z, n, abs(kappa_d), config, alpha)
    shooter = _Shooter(Z, kappa_d, alpha, config.r_min, config.radial_max(n, Z, alpha), config.steps)
    ws = np.geomspace(w_lo, w_hi, config.scan_points)
    shots = [shooter.shoot(w) for w in ws]
    found = []
    for i in range(len(ws) - 1):
        if shots[i].mismatch * shots[i + 1].mismatch < 0:
            w, shot = _bisect(shooter, ws[i], ws[i + 1], shots[i].mismatch, config.tol, config.max_iter)
            if shot.nodes == want:
                return RadialSolution(Z, kappa_d, nr, 1.0 - w, w, shot.nodes, abs(shot.mismatch))
            found.append((w, shot.nodes))
    if not found:
        kind = NoBoundStateError if (kappa_d > 0 and nr == 0) else BracketError
        raise kind(
            f"no level for kappa_d={kappa_d}, nr={nr} with binding in [{w_lo:.6g}, {w_hi:.6g}]"
        )
    raise NodeCountError(f"levels found at {found} (binding, nodes), none with {want} nodes")


def _states(n_max: int):
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            nr = n - k
            for kappa_d in ((-k,) if nr == 0 else (-k, k)):
                yield kappa_d, nr


def spectrum(Z: float, n_max: int, config: SolverConfig | None = None,
             alpha: float = ledger.CODATA_ALPHA, workers: int = 1) -> list[RadialSolution]:
    """Every admissible (kappa_d, nr) with n = nr + |kappa_d| <= n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    states = list(_states(n_max))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda st: solve_bound_state(Z, st[0], st[1], config, alpha), states))
    return [solve_bound_state(Z, kd, nr, config, alpha) for kd, nr in states]


@dataclass(frozen=True)
class Comparison:
    Z: float
    kappa_d: int
    nr: int
    eps_oracle: float
    eps_ledger: float
    rel_dev: float
    nodes: int
    residual: float

    @property
    def n(self) -> int:
        return self.nr + abs(self.kappa_d)


def compare_states(Z: float, n_max: int, config: SolverConfig | None = None,
                   alpha: float = ledger.CODATA_ALPHA, workers: int = 1) -> list[Comparison]:
    """Per-state oracle vs closed-form energies; deviation relative to the binding."""
    if Z == 0:
        return []
    rows = []
    for sol in spectrum(Z, n_max, config, alpha, workers):
        j = Fraction(2 * abs(sol.kappa_d) - 1, 2)
        w_ref = ledger.binding(sol.n, j, Z, alpha)
        rows.append(Comparison(Z, sol.kappa_d, sol.nr, sol.eps, 1.0 - w_ref,
                               abs(sol.binding - w_ref) / w_ref, sol.nodes, sol.residual))
    return rows


def compare(Z: float, n_max: int, config: SolverConfig | None = None,
            alpha: float = ledger.CODATA_ALPHA, workers: int = 1) -> float:
    """max |eps_oracle - eps_ledger| / (1 - eps_ledger); 0.0 when Z = 0."""
    rows = compare_states(Z, n_max, config, alpha, workers)
    return max((r.rel_dev for r in rows), default=0.0)


__all__ = [
    "SolverConfig", "RadialSolution", "Comparison", "solve_bound_state", "scan_levels",
    "spectrum", "compare", "compare_states", "expected_nodes", "SolverError",
]
