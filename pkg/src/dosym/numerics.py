"""Gauss-Legendre quadrature, semi-infinite integrals and bisection."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

QUAD_TOL = 1e-8
ROOT_TOL = 1e-10


class ConvergenceError(ArithmeticError):
    """A numerical routine ran out of budget before meeting its tolerance."""


class BracketError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """``n``-point Gauss-Legendre rule on ``[a, b]``, exact through degree ``2n-1``."""
    if n < 1:
        raise ValueError("need at least one node")
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return QuadratureRule(half * x + 0.5 * (a + b), half * w, (float(a), float(b)))


def integrate_panels(f, breakpoints, n: int = 32) -> float:
    """Composite Gauss-Legendre over consecutive ``breakpoints``."""
    x, w = np.polynomial.legendre.leggauss(n)
    bp = np.asarray(breakpoints, dtype=float)
    lo, hi = bp[:-1, None], bp[1:, None]
    half = 0.5 * (hi - lo)
    nodes = half * x + 0.5 * (hi + lo)
    vals = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return float(np.sum(np.sum(half * w * vals, axis=1)))


def geometric_breakpoints(lo_scale: float, upper: float) -> np.ndarray:
    """``0, s, 2s, 4s, ...`` up to ``upper``; resolves structure near the origin."""
    s = min(lo_scale, upper)
    pts = [0.0]
    x = s
    while x < upper:
        pts.append(x)
        x *= 2.0
    pts.append(upper)
    return np.asarray(pts)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    tail_coeff: float,
    tol: float = QUAD_TOL,
    scale: float = 1.0,
    max_nodes: int = 512,
) -> float:
    """``int_0^inf f(t) dt`` for integrands with ``f(t) ~ tail_coeff / t**2``.

    The range is cut at ``T`` with ``|tail_coeff| / T <= tol / 10``; the
    remainder is added analytically as ``tail_coeff / T``. Panels double
    from ``scale`` outward. Node count per panel is doubled until two
    successive estimates agree to ``tol``.
    """
    t_cut = max(10.0 * abs(tail_coeff) / tol, 10.0 * scale, 1.0)
    bp = geometric_breakpoints(scale / 4.0, t_cut)
    tail = tail_coeff / t_cut
    n = 16
    prev = integrate_panels(f, bp, n)
    while n < max_nodes:
        n *= 2
        cur = integrate_panels(f, bp, n)
        if abs(cur - prev) <= tol / 10:
            return cur + tail
        prev = cur
    raise ConvergenceError(f"semi-infinite integral did not settle within {max_nodes} nodes per panel")


@dataclass
class RootResult:
    root: float
    residual: float
    iterations: int
    converged: bool
    history: list[float] = field(default_factory=list, repr=False)


def find_root_bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = ROOT_TOL,
    xtol: float | None = None,
    max_iter: int = 500,
) -> RootResult:
    """Bisection on a sign-changing bracket.

    Stops when ``|f| <= tol`` or the bracket is narrower than ``xtol``
    (defaults to ``tol``). ``history`` holds the best residual seen after
    each step, so it never increases.
    """
    xtol = tol if xtol is None else xtol
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return RootResult(lo, 0.0, 0, True, [0.0])
    if fhi == 0.0:
        return RootResult(hi, 0.0, 0, True, [0.0])
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {flo}, {fhi}")
    best_x, best_r = (lo, abs(flo)) if abs(flo) < abs(fhi) else (hi, abs(fhi))
    history = [best_r]
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= best_r:
            best_x, best_r = mid, abs(fm)
        history.append(best_r)
        if fm == 0.0 or abs(fm) <= tol or (hi - lo) <= xtol:
            return RootResult(mid, abs(fm), it, True, history)
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootResult(best_x, best_r, max_iter, False, history)
