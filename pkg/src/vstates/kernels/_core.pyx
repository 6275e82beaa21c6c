# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the boundary kernel sums.

Semantics match `numpy_backend.kernel_sums` exactly; see there for the
formula.  Targets are distributed over threads with a static schedule
and each per-target sum is accumulated sequentially, so results do not
depend on the thread count.
"""

import numpy as np

from cython.parallel cimport prange


cdef extern from "complex.h" nogil:
    double complex conj(double complex)


def kernel_sums(target_z, source_z, source_dz, bint self_source):
    tz_arr = np.ascontiguousarray(target_z, dtype=np.complex128)
    sz_arr = np.ascontiguousarray(source_z, dtype=np.complex128)
    sdz_arr = np.ascontiguousarray(source_dz, dtype=np.complex128)
    cdef double complex[::1] tz = tz_arr
    cdef double complex[::1] sz = sz_arr
    cdef double complex[::1] sdz = sdz_arr
    cdef Py_ssize_t nt = tz.shape[0]
    cdef Py_ssize_t ns = sz.shape[0]
    if self_source and nt > ns:
        raise ValueError("self-source targets must be a leading slice of the source")
    out_arr = np.empty(nt, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex scale = 1.0 / (1j * ns)
    cdef double complex z, acc, d
    cdef Py_ssize_t i, k
    with nogil:
        for i in prange(nt, schedule="static"):
            z = tz[i]
            acc = 0
            for k in range(ns):
                if self_source and k == i:
                    acc = acc + conj(sdz[i])
                else:
                    d = sz[k] - z
                    acc = acc + (conj(d) / d) * sdz[k]
            out[i] = acc * scale
    return out_arr
