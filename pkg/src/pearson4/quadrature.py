"""Adaptive Simpson quadrature with Richardson extrapolation."""

import math

from .errors import QuadratureError

_EPS = 2.220446049250313e-16


def adaptive_simpson(f, a, b, tol=1e-12, max_depth=60, breaks=()):
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    ``breaks`` are extra points (inside ``(a, b)``) where the initial panels
    are split; passing the location of a sharp peak keeps the first Simpson
    estimate from stepping over it.  The tolerance is shared between panels
    in proportion to their width.  A panel that is still unconverged at
    ``max_depth`` raises :class:`QuadratureError`.
    """
    if b == a:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth, breaks)
    pts = sorted({a, b, *(p for p in breaks if a < p < b)})
    # 4 starting panels between consecutive breakpoints
    edges = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        step = (hi - lo) / 4.0
        edges.extend(lo + k * step for k in range(4))
    edges.append(b)
    width = b - a
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        flo, fhi = f(lo), f(hi)
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        whole = (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0
        total += _refine(f, lo, hi, flo, fmid, fhi, whole, tol * (hi - lo) / width, max_depth)
    return total


def _refine(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    both = left + right
    err = both - whole
    if abs(err) <= 15.0 * max(tol, 64.0 * _EPS * abs(both)) or m in (a, b):
        return both + err / 15.0
    if depth <= 0:
        raise QuadratureError(f"adaptive Simpson did not converge on [{a!r}, {b!r}]")
    return (_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + _refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))


def golden_section_max(f, lo, hi, tol=1e-10, max_iter=500):
    """Maximizer of a unimodal ``f`` on ``[lo, hi]`` by golden-section search."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)
