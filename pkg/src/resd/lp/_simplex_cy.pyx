# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tableau pivot kernel; bit-compatible with the pure-Python twin."""

BACKEND = "cython"

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITERATION_LIMIT = 2
STATUS_BREAKDOWN = 3

from libc.math cimport INFINITY, fabs


def run_simplex(double[:, ::1] tab, long long[::1] basis, long long allowed,
                double eps, double pivtol, long long max_iter,
                long long degen_limit):
    cdef Py_ssize_t m = tab.shape[0] - 1
    cdef Py_ssize_t rhs = tab.shape[1] - 1
    cdef Py_ssize_t ncol = tab.shape[1]
    cdef bint bland = False
    cdef long long degen = 0
    cdef long long it = 0
    cdef Py_ssize_t i, j, p, q
    cdef double best, ratio, rmin, piv, f
    cdef long long bestbasis

    while it < max_iter:
        # entering column
        if not bland:
            q = 0
            best = tab[m, 0]
            for j in range(1, allowed):
                if tab[m, j] < best:
                    best = tab[m, j]
                    q = j
            if best >= -eps:
                return STATUS_OPTIMAL, it
        else:
            q = -1
            for j in range(allowed):
                if tab[m, j] < -eps:
                    q = j
                    break
            if q < 0:
                return STATUS_OPTIMAL, it

        # ratio test: min ratio, ties broken by lowest basis index
        rmin = INFINITY
        for i in range(m):
            if tab[i, q] > pivtol:
                ratio = tab[i, rhs] / tab[i, q]
                if ratio < rmin:
                    rmin = ratio
        if rmin == INFINITY:
            return STATUS_UNBOUNDED, it
        p = -1
        bestbasis = -1
        for i in range(m):
            if tab[i, q] > pivtol:
                ratio = tab[i, rhs] / tab[i, q]
                if ratio == rmin:
                    if p < 0 or basis[i] < bestbasis:
                        p = i
                        bestbasis = basis[i]

        piv = tab[p, q]
        if fabs(piv) < pivtol:
            return STATUS_BREAKDOWN, it
        for j in range(ncol):
            tab[p, j] /= piv
        for i in range(m + 1):
            if i == p:
                continue
            f = tab[i, q]
            if f != 0.0:
                for j in range(ncol):
                    tab[i, j] = tab[i, j] - f * tab[p, j]
        basis[p] = q

        if rmin == 0.0:
            degen += 1
            if degen >= degen_limit:
                bland = True
        else:
            degen = 0
        it += 1
    return STATUS_ITERATION_LIMIT, it
