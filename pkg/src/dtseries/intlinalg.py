"""Exact linear algebra over Z and Q for small dense matrices.

Everything here works on plain nested lists/tuples of ints or Fractions;
ranks in this package never exceed single digits, so clarity wins over
asymptotics.  No floating point anywhere.
"""

from fractions import Fraction
from math import isqrt


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def smith_normal_form(A):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (D, U, V) with U*A*V == D, U and V unimodular, D diagonal with
    d_i | d_{i+1}.  Standard elimination: repeatedly move a minimal nonzero
    entry to the pivot, reduce its row and column, fix divisibility.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = identity_matrix(m)
    V = identity_matrix(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    t = 0
    while t < min(m, n):
        # locate a nonzero entry of minimal absolute value in the tail block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, m):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                add_row(i, t, -q)
                dirty = dirty or D[i][t] != 0
        for j in range(t + 1, n):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                add_col(j, t, -q)
                dirty = dirty or D[t][j] != 0
        if dirty:
            continue  # remainders survived; repeat with a smaller pivot
        # divisibility: d_t must divide every later entry
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i][j] % D[t][t] != 0:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if D[t][t] < 0:
                add_row(t, t, -2)  # flip sign: row *= -1 via adding -2*itself
            t += 1
    return D, U, V


def solve_integer_system(A, target):
    """All integer solutions x of A x = target.

    Returns (x0, basis) where basis spans the integer kernel, or None when
    no integral solution exists.  target entries may be Fractions; they
    must be integers for solvability.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    t = [Fraction(x) for x in target]
    if any(x.denominator != 1 for x in t):
        return None
    D, U, V = smith_normal_form(A)
    c = mat_vec(U, [x.numerator for x in t])
    y = [0] * n
    rank = 0
    for i in range(min(m, n)):
        if D[i][i] != 0:
            rank = i + 1
    for i in range(m):
        if i < rank:
            if c[i] % D[i][i] != 0:
                return None
            y[i] = c[i] // D[i][i]
        elif c[i] != 0:
            return None
    x0 = mat_vec(V, y)
    basis = [[V[r][j] for r in range(n)] for j in range(rank, n)]
    return x0, basis


def solve_rational(A, b):
    """Solve the square nonsingular system A x = b over Q."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def symmetric_signature(G):
    """Signature (n_plus, n_minus, n_zero) of a rational symmetric matrix.

    Congruence elimination with the usual fix when only off-diagonal
    entries are nonzero (add a row to make a nonzero diagonal pivot).
    """
    n = len(G)
    M = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][i] != 0), None)
        if piv is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if M[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += n - k
                break
            i, j = off
            for r in range(n):
                M[i][r] += M[j][r]
            for r in range(n):
                M[r][i] += M[r][j]
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for r in range(n):
                M[r][k], M[r][piv] = M[r][piv], M[r][k]
        p = M[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if M[i][k] != 0:
                f = M[i][k] / p
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
                for j in range(k, n):
                    M[j][i] = M[i][j]
    return pos, neg, zero


def is_negative_definite(G):
    pos, neg, zero = symmetric_signature(G)
    return pos == 0 and zero == 0


def quadratic_completion(Q):
    """Write a positive definite rational form as sum of completed squares.

    Returns (d, u) with Q(x) = sum_i d_i * (x_i + sum_{j>i} u[i][j] x_j)^2.
    Raises ValueError if Q is not positive definite.
    """
    n = len(Q)
    A = [[Fraction(Q[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        d[k] = A[k][k]
        if d[k] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(k + 1, n):
            u[k][j] = A[k][j] / d[k]
        for i in range(k + 1, n):
            for j in range(i, n):
                A[i][j] -= A[k][i] * A[k][j] / d[k]
                A[j][i] = A[i][j]
    return d, u


def floor_sqrt_fraction(x):
    """floor(sqrt(x)) for a nonnegative Fraction, exactly."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    return isqrt(x.numerator * x.denominator) // x.denominator


def solve_completed_square(d, u, offsets, value):
    """Integer solutions x of sum_i d_i (x_i + c_i(x))^2 == value.

    Here c_i(x) = offsets[i] + sum_{j>i} u[i][j] x_j, with d from
    quadratic_completion.  Enumerates from the last coordinate down; all
    bounds are exact (integer square roots of rationals).
    """
    n = len(d)
    value = Fraction(value)
    if value < 0:
        return []
    out = []
    x = [0] * n

    def descend(i, remaining):
        if i < 0:
            if remaining == 0:
                out.append(tuple(x))
            return
        t = offsets[i] + sum(u[i][j] * x[j] for j in range(i + 1, n))
        budget = remaining / d[i]
        q = t.denominator
        p = t.numerator
        m = isqrt((budget.numerator * q * q) // budget.denominator)
        lo = -(-(-p - m) // q)  # ceil((-p - m)/q)
        hi = (-p + m) // q
        for xi in range(lo, hi + 1):
            x[i] = xi
            descend(i - 1, remaining - d[i] * (xi + t) ** 2)
        x[i] = 0

    descend(n - 1, value)
    return out
