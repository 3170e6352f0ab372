"""Enumeration of surface curve classes compatible with a fixed character.

The divisor-level character pins the pushforward of a contributing class
beta to gamma + L^2/2; the solutions form an affine lattice inside the
surface curve lattice.  On the orthogonal complement of an ample class the
intersection form is negative definite (index theorem), so each square
beta^2 is attained by finitely many classes and a completed-square descent
enumerates them exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

from .geometry import delta_invariant, pair_h4_h2, triple_product
from .intlinalg import (
    quadratic_completion,
    solve_completed_square,
    solve_integer_system,
    solve_rational,
)


class NoSheafError(ValueError):
    """Requested degree-6 data admits no sheaf (non-integral or negative length)."""


class IndefiniteKernelError(ValueError):
    """Residual form on the constraint lattice is not negative definite."""


@dataclass(frozen=True)
class AffineLattice:
    """origin + Z-span(basis) inside Z^s."""

    origin: tuple
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    def element(self, coords):
        v = list(self.origin)
        for c, b in zip(coords, self.basis):
            for i in range(len(v)):
                v[i] += c * b[i]
        return tuple(v)


def _round_half_to_zero(x):
    f = Fraction(x)
    n, d = f.numerator, f.denominator
    q, r = divmod(abs(n), d)
    if 2 * r > d:
        q += 1
    return q if n >= 0 else -q


def _reduce_origin(S, origin, basis):
    """Translate the particular solution by the kernel so it (nearly)
    minimizes -beta^2; makes window-based enumeration symmetric and the
    output independent of internal row-reduction choices."""
    m = len(basis)
    if m == 0:
        return tuple(origin)
    G = S.gram
    s = S.h2_rank
    A = [[-sum(G[i][j] * basis[a][i] * basis[b][j] for i in range(s) for j in range(s))
          for b in range(m)] for a in range(m)]
    rhs = [sum(G[i][j] * basis[a][i] * origin[j] for i in range(s) for j in range(s))
           for a in range(m)]
    try:
        x = solve_rational(A, rhs)
    except ValueError:
        return tuple(origin)
    shift = [_round_half_to_zero(c) for c in x]
    v = list(origin)
    for c, b in zip(shift, basis):
        for i in range(s):
            v[i] += c * b[i]
    return tuple(v)


def beta_constraint_lattice(S, gamma, L2):
    """Affine lattice of classes with pushforward gamma + L2/2, or None when
    the target is non-integral or outside the image."""
    target = [Fraction(g) + Fraction(l, 2) for g, l in zip(gamma, L2)]
    if any(t.denominator != 1 for t in target):
        return None
    sol = solve_integer_system([list(row) for row in S.pushforward], target)
    if sol is None:
        return None
    x0, basis = sol
    x0 = _reduce_origin(S, x0, basis)
    return AffineLattice(origin=tuple(x0), basis=tuple(tuple(b) for b in basis))


def _kernel_form(S, lattice):
    """(A, b, c) with beta(x)^2 = x^T A x + 2 b.x + c on the lattice."""
    m = lattice.rank
    s = S.h2_rank
    G = S.gram
    bas = lattice.basis
    o = lattice.origin
    A = [[sum(G[i][j] * bas[a][i] * bas[b][j] for i in range(s) for j in range(s))
          for b in range(m)] for a in range(m)]
    b = [sum(G[i][j] * bas[a][i] * o[j] for i in range(s) for j in range(s)) for a in range(m)]
    c = S.dot(o, o)
    return A, b, c


def enumerate_beta(S, gamma, beta_sq):
    """All classes beta in the constraint lattice with beta.beta == beta_sq.

    The quadratic form on the lattice directions must be negative definite
    (guaranteed on the orthogonal complement of an ample class); otherwise
    IndefiniteKernelError is raised rather than returning a wrong finite list.
    """
    L2 = S.push(S.L_S)
    lattice = beta_constraint_lattice(S, gamma, L2)
    if lattice is None:
        return []
    if lattice.rank == 0:
        beta = lattice.origin
        return [beta] if S.dot(beta, beta) == beta_sq else []
    A, b, c = _kernel_form(S, lattice)
    negA = [[-x for x in row] for row in A]
    try:
        d, u = quadratic_completion(negA)
    except ValueError as exc:
        raise IndefiniteKernelError(str(exc)) from exc
    # -beta^2 = Q(x - x*) - (c + b.x*) with Q = x^T(-A)x positive definite
    # and (-A) x* = b; squares are in the shifted variable, so the constant
    # offsets absorb both x* and its triangular cross terms.
    m = lattice.rank
    center = solve_rational(negA, b)
    const = c + sum(b[i] * center[i] for i in range(m))
    value = Fraction(const) - beta_sq
    offs = [
        Fraction(-center[i]) - sum(u[i][j] * center[j] for j in range(i + 1, m))
        for i in range(m)
    ]
    sols = solve_completed_square(d, u, offs, value)
    out = [lattice.element(x) for x in sols]
    out.sort()
    return out


def n_from_xi(S, X, gamma, beta, xi):
    """Box count n = beta^2/2 + gamma.L/2 + 2L^3/3 - xi; must be a
    nonnegative integer for a sheaf to exist."""
    bsq = S.dot(beta, beta)
    gL = pair_h4_h2(X, gamma, X.L)
    L3 = triple_product(X, X.L, X.L, X.L)
    n = Fraction(bsq, 2) + Fraction(gL) / 2 + Fraction(2 * L3, 3) - Fraction(xi)
    if n.denominator != 1:
        raise NoSheafError(f"n = {n} is not an integer")
    if n < 0:
        raise NoSheafError(f"n = {n} is negative")
    return n.numerator


def xi_from_n(S, X, gamma, beta, n):
    """Inverse of n_from_xi."""
    if n < 0:
        raise NoSheafError("n must be nonnegative")
    bsq = S.dot(beta, beta)
    gL = pair_h4_h2(X, gamma, X.L)
    L3 = triple_product(X, X.L, X.L, X.L)
    return Fraction(bsq, 2) + Fraction(gL) / 2 + Fraction(2 * L3, 3) - n


@dataclass(frozen=True)
class BetaData:
    beta: tuple
    beta_sq: int
    n: int
    xi: Fraction
    q_exponent: Fraction


@dataclass(frozen=True)
class ContributionTable:
    gamma: tuple
    window: int
    max_power: Fraction
    delta: int
    rows: tuple

    def require_single_gamma(self):
        if not self.gamma or not all(isinstance(g, Fraction) for g in self.gamma):
            raise ValueError("table does not carry a single character vector")
        return self

    def merge(self, other):
        if self.gamma != other.gamma:
            raise ValueError("cannot merge contribution tables with different gamma")
        rows = sorted(set(self.rows) | set(other.rows), key=lambda r: (r.q_exponent, r.beta))
        return ContributionTable(
            gamma=self.gamma,
            window=max(self.window, other.window),
            max_power=max(self.max_power, other.max_power),
            delta=self.delta,
            rows=tuple(rows),
        )


def enumerate_contributions(S, X, gamma, max_power, window):
    """Contribution rows (beta, beta_sq, n, xi, exponent) with exponent
    beta^2/2 + delta/24 + n at most max_power, scanning lattice coordinates
    in the box [-window, window]^rank."""
    if window < 0:
        raise ValueError("window must be nonnegative")
    gamma = tuple(Fraction(g) for g in gamma)
    delta = delta_invariant(S)
    max_power = Fraction(max_power)
    L2 = S.push(S.L_S)
    lattice = beta_constraint_lattice(S, gamma, L2)
    rows = []
    if lattice is not None:
        for coords in _box(lattice.rank, window):
            beta = lattice.element(coords)
            bsq = S.dot(beta, beta)
            base = Fraction(bsq, 2) + Fraction(delta, 24)
            n = 0
            while base + n <= max_power:
                xi = xi_from_n(S, X, gamma, beta, n)
                rows.append(
                    BetaData(beta=beta, beta_sq=bsq, n=n, xi=xi, q_exponent=base + n)
                )
                n += 1
    rows.sort(key=lambda r: (r.q_exponent, r.beta))
    return ContributionTable(
        gamma=gamma, window=window, max_power=max_power, delta=delta, rows=tuple(rows)
    )


def _box(rank, radius):
    if rank == 0:
        yield ()
        return
    for first in range(-radius, radius + 1):
        for rest in _box(rank - 1, radius):
            yield (first,) + rest
