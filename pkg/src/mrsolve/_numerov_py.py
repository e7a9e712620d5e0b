"""Pure-Python Numerov recurrences; same contract as the compiled ``_numerov``."""

from __future__ import annotations

_BIG = 1e200
_SMALL = 1e-200


def integrate_outward(g, h2, u0, u1, stop, out):
    c = h2 / 12.0
    gl = g.tolist() if hasattr(g, "tolist") else list(g)
    vals = [0.0] * (stop + 1)
    vals[0] = u0
    vals[1] = u1
    nodes = 1 if u0 * u1 < 0 else 0
    wm = 1.0 - c * gl[0]
    w0 = 1.0 - c * gl[1]
    for i in range(1, stop):
        wp = 1.0 - c * gl[i + 1]
        up = ((12.0 - 10.0 * w0) * vals[i] - wm * vals[i - 1]) / wp
        vals[i + 1] = up
        if (up < 0) != (vals[i] < 0) and up != 0.0:
            nodes += 1
        if abs(up) > _BIG:
            for k in range(i + 2):
                vals[k] *= _SMALL
        wm = w0
        w0 = wp
    out[: stop + 1] = vals
    return nodes


def integrate_inward(g, h2, ulast, unext, stop, out):
    c = h2 / 12.0
    gl = g.tolist() if hasattr(g, "tolist") else list(g)
    n = len(gl)
    vals = [0.0] * n
    vals[n - 1] = ulast
    vals[n - 2] = unext
    wp = 1.0 - c * gl[n - 1]
    w0 = 1.0 - c * gl[n - 2]
    i = n - 2
    while i > stop:
        wm = 1.0 - c * gl[i - 1]
        vals[i - 1] = ((12.0 - 10.0 * w0) * vals[i] - wp * vals[i + 1]) / wm
        wp = w0
        w0 = wm
        i -= 1
    out[stop:] = vals[stop:]
