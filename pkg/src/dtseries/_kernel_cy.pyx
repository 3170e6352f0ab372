# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fixed-point summation kernel; contract identical to _kernel_py.

The weight products are arbitrary-precision Python ints (they overflow
machine words already at moderate n), so the win here is loop and call
overhead, not machine arithmetic.
"""

from math import gcd

BACKEND_NAME = "cython"


cdef class _Acc:
    cdef object num
    cdef object den

    def __cinit__(self):
        self.num = 0
        self.den = 1

    cdef void add(self, object tn, object td):
        cdef object g
        if td < 0:
            tn = -tn
            td = -td
        g = gcd(self.den, td)
        self.num = self.num * (td // g) + tn * (self.den // g)
        self.den = self.den * (td // g)


cdef void _walk(list co_tables, list tan_tables, Py_ssize_t m, Py_ssize_t c,
                Py_ssize_t remaining, object co_acc, object tan_acc, _Acc acc):
    cdef Py_ssize_t k, i, sz
    cdef list cos, tans
    if c == m - 1:
        cos = <list> co_tables[c][remaining]
        tans = <list> tan_tables[c][remaining]
        sz = len(cos)
        for i in range(sz):
            acc.add(co_acc * cos[i], tan_acc * tans[i])
        return
    for k in range(remaining + 1):
        cos = <list> co_tables[c][k]
        tans = <list> tan_tables[c][k]
        sz = len(cos)
        for i in range(sz):
            _walk(co_tables, tan_tables, m, c + 1, remaining - k,
                  co_acc * cos[i], tan_acc * tans[i], acc)


def sum_ratio_products(co_tables, tan_tables, n):
    cdef _Acc acc = _Acc()
    cdef list co = [list(t) for t in co_tables]
    cdef list tan = [list(t) for t in tan_tables]
    _walk(co, tan, len(tan), 0, n, 1, 1, acc)
    g = gcd(acc.num, acc.den)
    return acc.num // g, acc.den // g
