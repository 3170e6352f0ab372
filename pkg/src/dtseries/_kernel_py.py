"""Pure-Python fixed-point summation kernel.

Same contract as the compiled twin in _kernel_cy: given, per chart, the
evaluated integer weight products for every partition of every size up to n,
sum prod(co)/prod(tan) over all chart assignments of total size n and return
the reduced (numerator, denominator) pair.  Kept dependency-free and simple;
the compiled version only accelerates the loop bookkeeping, the big-int
arithmetic is identical.
"""

from math import gcd

BACKEND_NAME = "pure-python"


def sum_ratio_products(co_tables, tan_tables, n):
    m = len(tan_tables)
    acc_num = 0
    acc_den = 1

    def leaf(c, remaining, co_acc, tan_acc):
        nonlocal acc_num, acc_den
        cos = co_tables[c][remaining]
        tans = tan_tables[c][remaining]
        for i in range(len(cos)):
            tn = co_acc * cos[i]
            td = tan_acc * tans[i]
            if td < 0:
                tn, td = -tn, -td
            g = gcd(acc_den, td)
            acc_num = acc_num * (td // g) + tn * (acc_den // g)
            acc_den = acc_den * (td // g)

    def walk(c, remaining, co_acc, tan_acc):
        if c == m - 1:
            leaf(c, remaining, co_acc, tan_acc)
            return
        for k in range(remaining + 1):
            cos = co_tables[c][k]
            tans = tan_tables[c][k]
            for i in range(len(cos)):
                walk(c + 1, remaining - k, co_acc * cos[i], tan_acc * tans[i])

    walk(0, n, 1, 1)
    g = gcd(acc_num, acc_den)
    return acc_num // g, acc_den // g
