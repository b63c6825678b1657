"""Mordell curves y^2 = x^3 + k, the 3-isogeny pair, and descent maps.

For squarefree D the pair is E_D: y^2 = x^3 + 16D and E_D': Y^2 = X^3 - 432D,
linked by the degree-3 isogeny

    lambda(x, y) = ((y^2 + 48D)/x^2,  y(x^3 - 128D)/x^3)

whose kernel is {O, (0, +-4 sqrt(D))}.  The dual comes back with X/9, Y/27.
The descent homomorphisms land in quadratic field multiplicative groups
modulo cubes:

    psi (x, y) on E_D  -> class of  y + 4 sqrt(D)   in Q(sqrt D)* / cubes
    psi'(X, Y) on E_D' -> class of  Y + 12 sqrt(D') in Q(sqrt D')* / cubes

with D' = -3D.  ker psi' = lambda(E_D(Q)), so a point of E_D' is in the
image of lambda iff its psi'-value is a cube, and span_dim_mod_lambda /
span_dim_mod_3 turn sets of points into F_3-dimensions of the groups
E_D'(Q)/lambda(E_D(Q)) and E_D'(Q)/3E_D'(Q).

All arithmetic is exact (Fraction coordinates, integit root isolation),
so points with thousand-digit coordinates are fine.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import integer_roots_monic_cubic
from .errors import (CurveMismatch, DegenerateDenominator, KernelXZero,
                     OffCurve, PreimageMissing, TorsionImage, ZeroInput)
from .quadfield import QuadElem, is_cube


@dataclass(frozen=True)
class MordellCurve:
    k: int

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("k = 0 is singular")

    @staticmethod
    def e_d(D: int) -> "MordellCurve":
        return MordellCurve(16 * D)

    @staticmethod
    def e_d_prime(D: int) -> "MordellCurve":
        return MordellCurve(-432 * D)

    def __str__(self):
        return f"y^2 = x^3 + ({self.k})"


class CurvePoint:
    """A rational point, exact.  CurvePoint(E) is the point at infinity."""

    __slots__ = ("curve", "x", "y", "infinite")

    def __init__(self, curve: MordellCurve, x=None, y=None):
        self.curve = curve
        if x is None and y is None:
            self.infinite = True
            self.x = self.y = None
            return
        self.infinite = False
        x, y = Fraction(x), Fraction(y)
        if y * y != x**3 + curve.k:
            raise OffCurve(f"({x}, {y}) not on {curve}")
        # denominators of an affine rational point are (w^2, w^3)
        w2, w3 = x.denominator, y.denominator
        assert isqrt(w2) ** 2 == w2 and isqrt(w2) ** 3 == w3
        self.x, self.y = x, y

    def uvw(self):
        """x = u/w^2, y = v/w^3 in lowest terms, w > 0."""
        if self.infinite:
            raise ZeroInput("point at infinity has no affine coordinates")
        w = isqrt(self.x.denominator)
        return (self.x.numerator, self.y.numerator, w)

    def __eq__(self, other):
        return (isinstance(other, CurvePoint) and self.curve == other.curve
                and self.infinite == other.infinite
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash((self.curve.k, self.infinite, self.x, self.y))

    def __neg__(self):
        if self.infinite:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __str__(self):
        return "O" if self.infinite else f"({self.x}, {self.y})"

    __repr__ = __str__


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.curve != Q.curve:
        raise CurveMismatch(f"{P.curve} vs {Q.curve}")
    if P.infinite:
        return Q
    if Q.infinite:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return CurvePoint(P.curve)
        s = (3 * P.x * P.x) / (2 * P.y)
    else:
        s = (Q.y - P.y) / (Q.x - P.x)
    x3 = s * s - P.x - Q.x
    y3 = s * (P.x - x3) - P.y
    return CurvePoint(P.curve, x3, y3)


def mul_scalar(n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return mul_scalar(-n, -P)
    R = CurvePoint(P.curve)
    Q = P
    while n:
        if n & 1:
            R = add(R, Q)
        n >>= 1
        if n:
            Q = add(Q, Q)
    return R


# --- the isogeny pair ---

def lambda_map(P: CurvePoint, D: int) -> CurvePoint:
    """E_D -> E_D', kernel {O, (0, +-4 sqrt D)} (rational only if D square)."""
    E = MordellCurve.e_d(D)
    E2 = MordellCurve.e_d_prime(D)
    if P.curve != E:
        raise CurveMismatch(f"expected {E}")
    if P.infinite:
        return CurvePoint(E2)
    if P.x == 0:
        raise KernelXZero("kernel point maps to infinity")
    X = (P.y * P.y + 48 * D) / (P.x * P.x)
    Y = P.y * (P.x**3 - 128 * D) / P.x**3
    return CurvePoint(E2, X, Y)


def lambda_dual(S: CurvePoint, D: int) -> CurvePoint:
    """E_D' -> E_D; the composite lambda_dual . lambda_map is [3] on E_D."""
    E2 = MordellCurve.e_d_prime(D)
    E = MordellCurve.e_d(D)
    if S.curve != E2:
        raise CurveMismatch(f"expected {E2}")
    if S.infinite:
        return CurvePoint(E)
    if S.x == 0:
        raise KernelXZero("kernel point maps to infinity")
    K = -432 * D
    X = (S.y * S.y + 3 * K) / (S.x * S.x)
    Y = S.y * (S.x**3 - 8 * K) / S.x**3
    return CurvePoint(E, X / 9, Y / 27)


def lambda_preimage(S: CurvePoint, D: int) -> CurvePoint | None:
    """The rational P on E_D with lambda(P) = S, or None.

    At most one exists: two preimages differ by a kernel point, which is
    irrational for squarefree D.  x satisfies x^3 - X_S x^2 + 64D = 0;
    writing X_S = U/W^2 and z = W^2 x makes it monic integral, solved by
    exact root isolation (no factoring of 64*D*W^6 needed)."""
    E2 = MordellCurve.e_d_prime(D)
    if S.curve != E2:
        raise CurveMismatch(f"expected {E2}")
    E = MordellCurve.e_d(D)
    if S.infinite:
        return CurvePoint(E)
    U, W2 = S.x.numerator, S.x.denominator
    roots = integer_roots_monic_cubic(-U, 0, 64 * D * W2**3)
    for z in roots:
        x = Fraction(z, W2)
        if x == 0:
            continue
        den = x**3 - 128 * D
        if den == 0:
            # would force y^2 = 144D, irrational for squarefree D
            continue
        y = S.y * x**3 / den
        if y * y == x**3 + 16 * D:
            P = CurvePoint(E, x, y)
            if lambda_map(P, D) == S:
                return P
    return None


# --- descent maps into quadratic fields mod cubes ---

@dataclass(frozen=True)
class DescentClass:
    """An element of Q(sqrt d)* / (Q(sqrt d)*)^3: a representative with the
    denominators cleared, plus a triviality flag for the group identity."""
    d: int
    value: QuadElem | None     # None encodes the trivial class (from O)

    def __post_init__(self):
        if self.value is not None:
            assert self.value.d == self.d and not self.value.is_zero()

    @property
    def trivial_rep(self) -> bool:
        return self.value is None

    def is_cube_class(self) -> bool:
        return self.value is None or is_cube(self.value) is not None


def psi(P: CurvePoint, D: int) -> DescentClass:
    """P = (u/w^2, v/w^3) on E_D maps to v + 4w^3 sqrt(D), a cube times
    y + 4 sqrt(D); its norm is u^3."""
    if P.curve != MordellCurve.e_d(D):
        raise CurveMismatch("psi wants a point of E_D")
    if P.infinite:
        return DescentClass(D, None)
    if P.x == 0:
        raise TorsionImage("x = 0 is the kernel of psi's curve map")
    u, v, w = P.uvw()
    alpha = QuadElem.from_pair(D, v, 4 * w**3)
    assert alpha.norm() == u**3
    return DescentClass(D, alpha)


def psi_prime(S: CurvePoint, D: int) -> DescentClass:
    """S = (U/W^2, V/W^3) on E_D' maps to V + 12 W^3 sqrt(D'), D' = -3D;
    its norm is U^3.  Kernel = lambda(E_D(Q))."""
    if S.curve != MordellCurve.e_d_prime(D):
        raise CurveMismatch("psi_prime wants a point of E_D'")
    dp = -3 * D
    if S.infinite:
        return DescentClass(dp, None)
    if S.x == 0:
        raise TorsionImage("X = 0 is the kernel of psi_prime's curve map")
    U, V, W = S.uvw()
    alpha = QuadElem.from_pair(dp, V, 12 * W**3)
    assert alpha.norm() == U**3
    return DescentClass(dp, alpha)


def in_lambda_image(S: CurvePoint, D: int) -> bool:
    """S in lambda(E_D(Q)), decided through psi' (exact)."""
    if S.infinite:
        return True
    if S.x == 0:
        # (0, +-12 sqrt(-3D)) rational only for -3D square; excluded upstream
        raise TorsionImage("X = 0")
    return psi_prime(S, D).is_cube_class()


# --- monic lattice search ---

def search_monic_points(D: int, bound: int) -> list[CurvePoint]:
    """Points of E_D' from monic trinomials x^3 - mx + n of discriminant D.

    Two integer lattices, disjoint because 3 never divides M in the second:
      (i)  integral (m, n):   27 n^2 = 4 m^3 - D        -> (12m, +-108n)
      (ii) (m, n) = (M/3, N/27), 3 not | M:  N^2 = 4M^3 - 27D -> (4M, +-4N)
    Scanned for |m| <= bound and |M| <= 3*bound, ascending."""
    E2 = MordellCurve.e_d_prime(D)
    out = []
    for m in range(-bound, bound + 1):
        t = 4 * m**3 - D
        if t < 0 or t % 27:
            continue
        n2 = t // 27
        n = isqrt(n2)
        if n * n != n2:
            continue
        for s in ((n, -n) if n else (0,)):
            out.append(CurvePoint(E2, 12 * m, 108 * s))
    for M in range(-3 * bound, 3 * bound + 1):
        if M % 3 == 0:
            continue
        t = 4 * M**3 - 27 * D
        if t < 0:
            continue
        N = isqrt(t)
        if N * N != t:
            continue
        for s in ((N, -N) if N else (0,)):
            out.append(CurvePoint(E2, 4 * M, 4 * s))
    out.sort(key=lambda P: (P.x, P.y))
    return out


# --- F_3 spans of point sets in the two descent quotients ---

def _nonzero_combos(k):
    """Representatives of nonzero F_3^k up to sign: first nonzero coord = 1."""
    def rec(i, vec, started):
        if i == k:
            if started:
                yield tuple(vec)
            return
        coeffs = (0, 1, 2) if started else (0, 1)
        for c in coeffs:
            vec.append(c)
            yield from rec(i + 1, vec, started or c != 0)
            vec.pop()
    yield from rec(0, [], False)


def span_dim_mod_lambda(points: list[CurvePoint], D: int) -> int:
    """dim of the image of the given E_D' points in E_D'(Q)/lambda(E_D(Q)).

    Incremental: a new point joins the basis unless some combination with
    the current basis dies in the quotient (psi'-value a cube)."""
    return _span_dim(points, D, _trivial_mod_lambda)


def span_dim_mod_3(points: list[CurvePoint], D: int) -> int:
    """dim of the image of the given E_D' points in E_D'(Q)/3E_D'(Q)."""
    return _span_dim(points, D, _trivial_mod_3)


def _trivial_mod_lambda(S: CurvePoint, D: int) -> bool:
    if S.infinite:
        return True
    if S.x == 0:
        raise TorsionImage("X = 0")
    return psi_prime(S, D).is_cube_class()


def _trivial_mod_3(S: CurvePoint, D: int) -> bool:
    """S in 3 E_D'(Q)?  Since 3 = lambda . lambda_dual, S in 3E' iff
    S = lambda(P) for rational P and P = lambda_dual(T) for rational T;
    the first is the psi'-cube test, the second is the psi-cube test on
    the (unique) preimage."""
    if S.infinite:
        return True
    if not _trivial_mod_lambda(S, D):
        return False
    P = lambda_preimage(S, D)
    if P is None:
        raise PreimageMissing(f"psi'({S}) is a cube but no rational preimage found")
    if P.infinite or P.x == 0:
        return True
    return psi(P, D).is_cube_class()


def _span_dim(points, D, trivial):
    basis = []
    for S in points:
        if S.infinite:
            continue
        new_dim = True
        for combo in _nonzero_combos(len(basis) + 1):
            if combo[-1] == 0:
                continue
            T = CurvePoint(S.curve)
            for c, B in zip(combo, basis + [S]):
                T = add(T, mul_scalar(c, B))
            if trivial(T, D):
                new_dim = False
                break
        if new_dim:
            basis.append(S)
    return len(basis)
