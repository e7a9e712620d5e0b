# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov recurrences for u'' = g(t) u on a uniform grid."""

from libc.math cimport fabs

cdef double BIG = 1e200
cdef double SMALL = 1e-200


def integrate_outward(const double[::1] g, double h2, double u0, double u1,
                      Py_ssize_t stop, double[::1] out):
    """Fill out[0..stop] from the two start values; return interior sign changes.

    If the running solution exceeds 1e200 the already-computed part is
    rescaled, which leaves signs (and the node count) unchanged.
    """
    cdef Py_ssize_t i, k
    cdef double c = h2 / 12.0
    cdef double wm, w0, wp, up
    cdef int nodes = 0
    out[0] = u0
    out[1] = u1
    if u0 * u1 < 0:
        nodes += 1
    wm = 1.0 - c * g[0]
    w0 = 1.0 - c * g[1]
    for i in range(1, stop):
        wp = 1.0 - c * g[i + 1]
        up = ((12.0 - 10.0 * w0) * out[i] - wm * out[i - 1]) / wp
        out[i + 1] = up
        if (up < 0) != (out[i] < 0) and up != 0.0:
            nodes += 1
        if fabs(up) > BIG:
            for k in range(i + 2):
                out[k] *= SMALL
        wm = w0
        w0 = wp
    return nodes


def integrate_inward(const double[::1] g, double h2, double ulast, double unext,
                     Py_ssize_t stop, double[::1] out):
    """Fill out[stop..N-1] backwards from the two outermost values; no rescaling."""
    cdef Py_ssize_t N = g.shape[0]
    cdef Py_ssize_t i
    cdef double c = h2 / 12.0
    cdef double wm, w0, wp
    out[N - 1] = ulast
    out[N - 2] = unext
    wp = 1.0 - c * g[N - 1]
    w0 = 1.0 - c * g[N - 2]
    i = N - 2
    while i > stop:
        wm = 1.0 - c * g[i - 1]
        out[i - 1] = ((12.0 - 10.0 * w0) * out[i] - wp * out[i + 1]) / wm
        wp = w0
        w0 = wm
        i -= 1
    return None
