"""Intersection arithmetic for a polarized threefold carrying a surface class.

A ThreefoldModel is pure linear-algebra data: the triple-intersection tensor
on a basis of divisor classes, the canonical class, a polarization, the
distinguished surface class L, and a basis of curve classes (degree-4
cohomology) with its pairing against divisors.  A SurfaceModel carries the
intersection form of a member S of |L| together with the pushforward of its
curve classes into the threefold.  All checks below are exact integer or
rational identities; nothing is approximated.
"""

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import symmetric_signature


class ModelError(ValueError):
    """Model data violates a structural invariant."""


def _tuplify(x):
    if isinstance(x, (list, tuple)):
        return tuple(_tuplify(y) for y in x)
    return x


@dataclass(frozen=True)
class ChernVector:
    """Character data (0, L, gamma, xi) of a sheaf supported on |L|.

    gamma is a rational vector in the curve-class basis (half-integral
    entries occur naturally), xi the degree-6 component as a rational.
    """

    gamma: tuple
    xi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(Fraction(g) for g in self.gamma))
        object.__setattr__(self, "xi", Fraction(self.xi))


@dataclass(frozen=True)
class ThreefoldModel:
    name: str
    h2_rank: int
    triple: tuple  # triple[a][b][c] = D_a . D_b . D_c
    canonical: tuple  # K_X in the divisor basis
    polarization: tuple  # O(1) in the divisor basis
    L: tuple  # the surface class
    h4_rank: int
    quad: tuple  # quad[a][b] = curve-class coordinates of D_a . D_b
    h4_h2_pairing: tuple  # pairing[i][a] = C_i . D_a
    vanishing_asserted: bool
    dim_linear_system: int | None = None

    def __post_init__(self):
        for f in ("triple", "canonical", "polarization", "L", "quad", "h4_h2_pairing"):
            object.__setattr__(self, f, _tuplify(getattr(self, f)))

    def validate(self):
        r, h = self.h2_rank, self.h4_rank
        if len(self.triple) != r or any(
            len(p) != r or any(len(row) != r for row in p) for p in self.triple
        ):
            raise ModelError(f"{self.name}: triple tensor must be {r}x{r}x{r}")
        for v in (self.canonical, self.polarization, self.L):
            if len(v) != r:
                raise ModelError(f"{self.name}: divisor vectors must have length {r}")
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    s = {self.triple[a][b][c], self.triple[a][c][b], self.triple[b][a][c],
                         self.triple[b][c][a], self.triple[c][a][b], self.triple[c][b][a]}
                    if len(s) != 1:
                        raise ModelError(f"{self.name}: triple tensor not symmetric at {(a, b, c)}")
        if len(self.quad) != r or any(len(row) != r for row in self.quad):
            raise ModelError(f"{self.name}: quad must be {r}x{r} of curve classes")
        if any(len(self.quad[a][b]) != h for a in range(r) for b in range(r)):
            raise ModelError(f"{self.name}: quad entries must have length {h}")
        if len(self.h4_h2_pairing) != h or any(len(row) != r for row in self.h4_h2_pairing):
            raise ModelError(f"{self.name}: pairing must be {h}x{r}")
        for a in range(r):
            for b in range(r):
                if self.quad[a][b] != self.quad[b][a]:
                    raise ModelError(f"{self.name}: quad not symmetric at {(a, b)}")
                # contracting D_a.D_b (as a curve class) with D_c must give the triple product
                for c in range(r):
                    lhs = sum(
                        self.quad[a][b][i] * self.h4_h2_pairing[i][c] for i in range(h)
                    )
                    if lhs != self.triple[a][b][c]:
                        raise ModelError(
                            f"{self.name}: quad/pairing disagree with triple at {(a, b, c)}"
                        )
        return self

    @property
    def h4_pairing(self):
        """Pairing of the curve-class basis against the polarization."""
        return tuple(
            sum(row[a] * self.polarization[a] for a in range(self.h2_rank))
            for row in self.h4_h2_pairing
        )


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    h2_rank: int  # rank s of the surface divisor lattice
    gram: tuple  # s x s intersection form, signature (1, s-1)
    K_S: tuple
    L_S: tuple  # restriction of L to S
    O1_S: tuple  # restriction of the polarization to S
    euler: int
    pushforward: tuple  # h4_rank x s matrix into the threefold curve basis
    torsion_note: str = ""

    def __post_init__(self):
        for f in ("gram", "K_S", "L_S", "O1_S", "pushforward"):
            object.__setattr__(self, f, _tuplify(getattr(self, f)))

    def validate(self):
        s = self.h2_rank
        if len(self.gram) != s or any(len(row) != s for row in self.gram):
            raise ModelError(f"{self.name}: gram must be {s}x{s}")
        for i in range(s):
            for j in range(s):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ModelError(f"{self.name}: gram not symmetric")
        for v in (self.K_S, self.L_S, self.O1_S):
            if len(v) != s:
                raise ModelError(f"{self.name}: surface divisor vectors must have length {s}")
        if any(len(row) != s for row in self.pushforward):
            raise ModelError(f"{self.name}: pushforward rows must have length {s}")
        sig = symmetric_signature([list(row) for row in self.gram])
        if sig != (1, s - 1, 0):
            raise ModelError(
                f"{self.name}: intersection form has signature {sig}, want (1, {s - 1}, 0)"
            )
        return self

    def dot(self, u, v):
        """Intersection number u . v on the surface."""
        return sum(self.gram[i][j] * u[i] * v[j] for i in range(self.h2_rank) for j in range(self.h2_rank))

    def push(self, beta):
        """Pushforward of a surface curve class into the threefold curve basis."""
        return tuple(sum(row[j] * beta[j] for j in range(self.h2_rank)) for row in self.pushforward)


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass(frozen=True)
class StabilityEntry:
    candidate: tuple
    forbidden_m: Fraction
    is_integer: bool

    @property
    def gap_holds(self):
        return not self.is_integer


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of the numeric hypotheses behind the product formula.

    Parts not evaluated are None; `passed` treats them as vacuous.
    """

    ineq_KL2_gt_L3: InequalityCheck | None = None
    ineq_KLO1_pos: InequalityCheck | None = None
    vanishing_asserted: bool | None = None
    irreducible: bool = False
    stability_gap: tuple | None = None

    @property
    def passed(self):
        for iq in (self.ineq_KL2_gt_L3, self.ineq_KLO1_pos):
            if iq is not None and not iq.holds:
                return False
        if self.vanishing_asserted is False:
            return False
        if self.stability_gap is not None and not all(e.gap_holds for e in self.stability_gap):
            return False
        return True

    @property
    def failures(self):
        out = []
        for iq in (self.ineq_KL2_gt_L3, self.ineq_KLO1_pos):
            if iq is not None and not iq.holds:
                out.append(iq.label)
        if self.vanishing_asserted is False:
            out.append("cohomology vanishing")
        if self.stability_gap is not None:
            out.extend(
                f"stability gap at {e.candidate}" for e in self.stability_gap if not e.gap_holds
            )
        return out


def triple_product(X, a, b, c):
    """Cup product a.b.c of three divisor vectors (entries may be rational)."""
    r = X.h2_rank
    if not (len(a) == len(b) == len(c) == r):
        raise ModelError("divisor vector of wrong length")
    total = 0
    for i in range(r):
        if not a[i]:
            continue
        for j in range(r):
            if not b[j]:
                continue
            row = X.triple[i][j]
            total += a[i] * b[j] * sum(row[k] * c[k] for k in range(r) if c[k])
    return total


def pair_h4_h2(X, u, v):
    """Pair a curve-class vector u against a divisor vector v."""
    if len(u) != X.h4_rank or len(v) != X.h2_rank:
        raise ModelError("vector of wrong length")
    return sum(
        u[i] * X.h4_h2_pairing[i][a] * v[a] for i in range(X.h4_rank) for a in range(X.h2_rank)
    )


def l_squared_h4(X):
    """Curve-class coordinates of L^2."""
    r = X.h2_rank
    out = [0] * X.h4_rank
    for a in range(r):
        for b in range(r):
            if X.L[a] and X.L[b]:
                for i in range(X.h4_rank):
                    out[i] += X.L[a] * X.L[b] * X.quad[a][b][i]
    return tuple(out)


def minus(v):
    return tuple(-x for x in v)


def sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def check_assumption0(X):
    """The two positivity inequalities plus the asserted cohomology vanishing."""
    mK = minus(X.canonical)
    lhs1 = triple_product(X, mK, X.L, X.L)
    rhs1 = triple_product(X, X.L, X.L, X.L)
    val2 = triple_product(X, mK, X.L, X.polarization)
    return AssumptionReport(
        ineq_KL2_gt_L3=InequalityCheck("-K.L^2 > L^3", Fraction(lhs1), Fraction(rhs1), lhs1 > rhs1),
        ineq_KLO1_pos=InequalityCheck("-K.L.O(1) > 0", Fraction(val2), Fraction(0), val2 > 0),
        vanishing_asserted=X.vanishing_asserted,
    )


def hilbert_coeffs(X, ch):
    """Leading and subleading Hilbert polynomial coefficients (a2, a1) of a
    sheaf with character (0, L, gamma, xi)."""
    a2 = Fraction(triple_product(X, X.L, X.polarization, X.polarization), 2)
    a1 = Fraction(pair_h4_h2(X, ch.gamma, X.polarization)) - Fraction(
        triple_product(X, X.L, X.canonical, X.polarization), 2
    )
    return a2, a1


def stability_forbidden_m(X, a2, a1, L1):
    """The unique twist m at which a destabilizing sub with support L1 could
    have matching reduced Hilbert polynomial; stability is unobstructed
    whenever this is not an integer."""
    num = Fraction(a1, 1) / a2 * triple_product(X, L1, X.polarization, X.polarization)
    num -= triple_product(X, sub(L1, X.canonical), L1, X.polarization)
    return num / 2


def check_stability_gap(X, ch, candidates, irreducible=False):
    """Evaluate the forbidden-twist criterion for each decomposition L = L1 + L2.

    Empty candidate list passes vacuously (in particular when the class of
    L is irreducible and no decomposition exists).
    """
    a2, a1 = hilbert_coeffs(X, ch)
    entries = []
    for L1 in candidates:
        L1 = tuple(L1)
        if all(x == 0 for x in L1):
            raise ModelError("candidate decomposition class is zero")
        if L1 == tuple(X.L):
            raise ModelError("candidate decomposition class equals L")
        m = stability_forbidden_m(X, a2, a1, L1)
        entries.append(StabilityEntry(candidate=L1, forbidden_m=m, is_integer=m.denominator == 1))
    return AssumptionReport(irreducible=irreducible, stability_gap=tuple(entries))


def run_all_checks(X, ch, candidates, irreducible=False):
    """Positivity plus stability in a single merged report."""
    pos = check_assumption0(X)
    stab = check_stability_gap(X, ch, candidates, irreducible=irreducible)
    return AssumptionReport(
        ineq_KL2_gt_L3=pos.ineq_KL2_gt_L3,
        ineq_KLO1_pos=pos.ineq_KLO1_pos,
        vanishing_asserted=pos.vanishing_asserted,
        irreducible=irreducible,
        stability_gap=stab.stability_gap,
    )


def virtual_dimension(X):
    """Expected dimension -K.L^2/2 + 1 of the space of supports; under the
    standard hypotheses it equals dim |L|."""
    t = triple_product(X, minus(X.canonical), X.L, X.L)
    if t % 2 != 0:
        raise ModelError(f"{X.name}: -K.L^2 = {t} is odd, virtual dimension is not an integer")
    return t // 2 + 1


def delta_invariant(S, divisor=None):
    """e(S) - K_S.D + D.D for a divisor class D on S (default D = L_S):
    the Euler-product exponent of the series."""
    D = S.L_S if divisor is None else tuple(divisor)
    return S.euler - S.dot(S.K_S, D) + S.dot(D, D)


def check_consistency(X, S):
    """Cross-checks tying a surface model to its ambient threefold:
    restriction degrees, adjunction, and the pushforward of L_S."""
    if S.dot(S.L_S, S.L_S) != triple_product(X, X.L, X.L, X.L):
        raise ModelError(f"{S.name}: L_S.L_S differs from L^3")
    KplusL = tuple(k + l for k, l in zip(X.canonical, X.L))
    if S.dot(S.K_S, S.L_S) != triple_product(X, KplusL, X.L, X.L):
        raise ModelError(f"{S.name}: adjunction K_S.L_S = (K_X+L).L^2 fails")
    if S.push(S.L_S) != l_squared_h4(X):
        raise ModelError(f"{S.name}: pushforward of L_S is not the class of L^2")
    return True
