"""Binary cubic forms: Hessian, GL2(Z) action, reduction, class enumeration.

A form (a,b,c,d) is ax^3 + bx^2y + cxy^2 + dy^3.  Classes of irreducible
forms with squarefree discriminant D biject with cubic fields of
discriminant D, so enumerate_classes(D) is how the 3-rank of Q(sqrt(D))
gets counted downstream.

Reduction splits on the sign of the discriminant:

* disc > 0: the Hessian (b^2-3ac, bc-9ad, c^2-3bd) is positive definite;
  Gauss-reduce it, carry the transform back to the cubic, and fix the
  residual +-F symmetry by sign and lexicographic order.
* disc < 0: the Hessian is indefinite, so instead canonicalize through the
  complex root: F(x,1) = a(x - theta)(x^2 + px + q) has one real root and
  the class has a unique representative (up to sign) whose complex root
  xi lies in the classical fundamental domain |Re xi| <= 1/2 <= |xi|.
  Because theta is irrational for irreducible F, xi never lands on the
  boundary and every domain test reduces to the sign of F at one rational
  point, keeping the whole walk exact.

Both branches are wrapped over GL2 by also canonicalizing F(x,-y) and
taking the lexicographic minimum.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import iroot, is_squarefree, rational_roots
from .errors import (DegenerateDiscriminant, DiscriminantMismatch,
                     CountNotOfExpectedShape, NotSquarefree, NotUnimodular,
                     ReducibleForm, ReduciblePolynomial, ZeroDiscriminant)

_S = ((0, -1), (1, 0))
_J = ((1, 0), (0, -1))


def _matmul(M, N):
    return ((M[0][0] * N[0][0] + M[0][1] * N[1][0],
             M[0][0] * N[0][1] + M[0][1] * N[1][1]),
            (M[1][0] * N[0][0] + M[1][1] * N[1][0],
             M[1][0] * N[0][1] + M[1][1] * N[1][1]))


def _det(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


@dataclass(frozen=True)
class QuadraticForm:
    A: int
    B: int
    C: int

    def disc(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def transform(self, M) -> "QuadraticForm":
        (p, q), (r, s) = M
        A2 = self.A * p * p + self.B * p * r + self.C * r * r
        B2 = 2 * self.A * p * q + self.B * (p * s + q * r) + 2 * self.C * r * s
        C2 = self.A * q * q + self.B * q * s + self.C * s * s
        return QuadraticForm(A2, B2, C2)

    def coeffs(self):
        return (self.A, self.B, self.C)


@dataclass(frozen=True)
class BinaryCubicForm:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0:
            raise ValueError("zero form")

    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    def __neg__(self):
        return BinaryCubicForm(-self.a, -self.b, -self.c, -self.d)

    def __call__(self, x, y):
        return ((self.a * x + self.b * y) * x + self.c * y * y) * x + self.d * y**3

    def __str__(self):
        return f"[{self.a},{self.b},{self.c},{self.d}]"


def disc(F: BinaryCubicForm) -> int:
    a, b, c, d = F.coeffs()
    return (18 * a * b * c * d + b * b * c * c - 4 * a * c**3
            - 4 * b**3 * d - 27 * a * a * d * d)


def hessian(F: BinaryCubicForm) -> QuadraticForm:
    a, b, c, d = F.coeffs()
    return QuadraticForm(b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)


def act(F: BinaryCubicForm, M) -> BinaryCubicForm:
    """Substitution (x, y) <- (px + qy, rx + sy) for M = ((p,q),(r,s))."""
    if _det(M) not in (1, -1):
        raise NotUnimodular(f"det = {_det(M)}")
    (p, q), (r, s) = M
    a, b, c, d = F.coeffs()
    a2 = F(p, r)
    d2 = F(q, s)
    b2 = (3 * a * p * p * q + b * (p * p * s + 2 * p * q * r)
          + c * (2 * p * r * s + q * r * r) + 3 * d * r * r * s)
    c2 = (3 * a * p * q * q + b * (q * q * r + 2 * p * q * s)
          + c * (p * s * s + 2 * q * r * s) + 3 * d * r * s * s)
    return BinaryCubicForm(a2, b2, c2, d2)


def is_irreducible(F: BinaryCubicForm) -> bool:
    """No rational zero in P^1, i.e. no linear factor over Q."""
    if F.a == 0 or F.d == 0:
        return False
    return not rational_roots([F.d, F.c, F.b, F.a])


def _check_reducible(F: BinaryCubicForm):
    if disc(F) == 0:
        raise ZeroDiscriminant(str(F))
    if not is_irreducible(F):
        raise ReducibleForm(str(F))


# --- positive-definite quadratic form reduction (used when disc(F) > 0) ---

def reduce_posdef(q: QuadraticForm):
    """Gauss reduction with transform tracking: returns (q0, M) with
    q.transform(M) = q0 and q0 the unique reduced representative
    (-A < B <= A <= C, B >= 0 when A = C)."""
    assert q.A > 0 and q.disc() < 0
    A, B, C = q.coeffs()
    M = ((1, 0), (0, 1))
    for _ in range(10000):
        if C < A or (C == A and B < 0):
            A, B, C = C, -B, A
            M = _matmul(M, _S)
            continue
        if B > A or B <= -A:
            k = (A - B) // (2 * A)
            C = A * k * k + B * k + C
            B = B + 2 * A * k
            M = _matmul(M, ((1, k), (0, 1)))
            continue
        return QuadraticForm(A, B, C), M
    raise AssertionError("posdef reduction did not terminate")


# --- exact real-root comparisons (used when disc(F) < 0) ---

def _eval1(F: BinaryCubicForm, r: Fraction):
    return ((F.a * r + F.b) * r + F.c) * r + F.d


def _u_gt(F: BinaryCubicForm, s: Fraction) -> bool:
    """Re(xi) > s, where xi is the complex root of F(x,1) and a > 0.

    Re(xi) = -(b/a + theta)/2 and r > theta iff F(r) > 0, so this is one
    exact sign evaluation.  Equality cannot occur (theta irrational)."""
    r = Fraction(-F.b, F.a) - 2 * s
    return _eval1(F, r) > 0


def _q_gt_one(F: BinaryCubicForm) -> bool:
    """|xi|^2 > 1.  |xi|^2 = -d/(a*theta) and sign(theta) = -sign(d)."""
    v = _eval1(F, Fraction(-F.d, F.a))
    return v > 0 if F.d < 0 else v < 0


def _theta_mid(F: BinaryCubicForm) -> Fraction:
    """Rational approximation of the real root theta, within 1/8."""
    lo, hi = None, None
    if _eval1(F, Fraction(0)) > 0:
        step = 1
        while _eval1(F, Fraction(-step)) > 0:
            step *= 2
        lo, hi = Fraction(-step), Fraction(-step // 2 if step > 1 else 0)
    else:
        step = 1
        while _eval1(F, Fraction(step)) < 0:
            step *= 2
        lo, hi = Fraction(step // 2 if step > 1 else 0), Fraction(step)
    while hi - lo > Fraction(1, 8):
        mid = (lo + hi) / 2
        if _eval1(F, mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def _round_u(F: BinaryCubicForm) -> int:
    """Nearest integer to Re(xi); never a tie."""
    u_est = -(Fraction(F.b, F.a) + _theta_mid(F)) / 2
    k = round(u_est)
    while not _u_gt(F, Fraction(2 * k - 1, 2)):   # need u > k - 1/2
        k -= 1
    while _u_gt(F, Fraction(2 * k + 1, 2)):       # need u <= k + 1/2
        k += 1
    return k


def _canonical_sl2_neg(F: BinaryCubicForm) -> BinaryCubicForm:
    if F.a < 0:
        F = -F
    for _ in range(500):
        k = _round_u(F)
        if k:
            F = act(F, ((1, k), (0, 1)))
        if _q_gt_one(F):
            return F
        F = act(F, _S)
        if F.a < 0:
            F = -F
    raise AssertionError(f"reduction loop did not terminate on {F}")


def _canonical_sl2_pos(F: BinaryCubicForm) -> BinaryCubicForm:
    H = hessian(F)
    # disc(H) = -3 disc(F) <= -147 for irreducible F, so Aut(H) = {+-I}
    assert H.disc() < -4 and H.A > 0
    _, M = reduce_posdef(H)
    G = act(F, M)
    return G if G.a > 0 else -G


def reduce(F: BinaryCubicForm) -> BinaryCubicForm:
    """Canonical representative of the GL2(Z)-class of F.  Positive leading
    coefficient; ties between the two SL2-sheets broken lexicographically."""
    _check_reducible(F)
    branch = _canonical_sl2_pos if disc(F) > 0 else _canonical_sl2_neg
    c1 = branch(F)
    c2 = branch(act(F, _J))
    return min(c1, c2, key=lambda G: G.coeffs())


def equivalent(F: BinaryCubicForm, G: BinaryCubicForm) -> bool:
    if disc(F) != disc(G):
        _check_reducible(F)
        _check_reducible(G)
        return False
    return reduce(F) == reduce(G)


# --- complete enumeration by discriminant ---

def _d_solutions(a: int, Bd: int, Cd: int):
    """Integer roots of 27a^2 d^2 + Bd*d + Cd = 0."""
    A2 = 27 * a * a
    dd = Bd * Bd - 4 * A2 * Cd
    if dd < 0:
        return
    s = isqrt(dd)
    if s * s != dd:
        return
    for sg in ((s, -s) if s else (0,)):
        num = -Bd + sg
        if num % (2 * A2) == 0:
            yield num // (2 * A2)


def _candidates_pos(D: int):
    """Forms (a>0,b,c,d) of discriminant D > 0 covering every class: bounds
    follow from the reduced positive-definite Hessian (P,Q,R):
    P <= sqrt(D), 4P^3 >= 27Da^2 (syzygy at (1,0)), b^2 <= P + 3a|b|
    (from 9a^2 R = P^2 - P b^2 + 3abQ with R >= P >= |Q|)."""
    sq = isqrt(D)
    amax = isqrt(max(4 * sq // 27, 1)) + 1
    for a in range(1, amax + 1):
        pmin = max(1, iroot(27 * D * a * a // 4, 3) - 1)
        bmax = (3 * a + isqrt(9 * a * a + 4 * sq)) // 2 + 1
        for b in range(-bmax, bmax + 1):
            plo = max(pmin, b * b - 3 * a * abs(b))
            if plo > sq:
                continue
            chi = (b * b - plo) // (3 * a)
            clo = -((sq - b * b) // (3 * a))
            b3 = 4 * b**3
            for c in range(clo, chi + 1):
                Bd = b3 - 18 * a * b * c
                Cd = D + 4 * a * c**3 - b * b * c * c
                for d in _d_solutions(a, Bd, Cd):
                    yield BinaryCubicForm(a, b, c, d)


def _candidates_neg(D: int):
    """Forms of discriminant D < 0 covering every class: bounds follow from
    the fundamental-domain representative (a <= (16|D|/27)^(1/4),
    |b| <= 3a/2 + (|D|/3)^(1/4), |c| <= (|D|/4a)^(1/3) + 3a/4 + (|D|/3)^(1/4))."""
    Dm = -D
    amax = iroot(16 * Dm // 27, 4) + 1
    t4 = iroot(Dm // 3, 4) + 1
    for a in range(1, amax + 1):
        bmax = (3 * a) // 2 + t4 + 1
        cmax = iroot(Dm // (4 * a), 3) + a + t4 + 2
        for b in range(-bmax, bmax + 1):
            b3 = 4 * b**3
            for c in range(-cmax, cmax + 1):
                Bd = b3 - 18 * a * b * c
                Cd = D + 4 * a * c**3 - b * b * c * c
                for d in _d_solutions(a, Bd, Cd):
                    yield BinaryCubicForm(a, b, c, d)


def _validate_enum_disc(D: int):
    if D in (0, 1, -3, -4):
        raise DegenerateDiscriminant(f"D = {D}")
    if D % 4 != 1:
        raise DegenerateDiscriminant(f"D = {D} is not 1 mod 4; not a seed discriminant")
    if not is_squarefree(D):
        raise NotSquarefree(f"D = {D}")


def enumerate_classes(D: int) -> list[BinaryCubicForm]:
    """All GL2(Z)-classes of irreducible integral binary cubic forms of
    discriminant exactly D, as canonical representatives, sorted.  The count
    must come out as (3^r - 1)/2 (anything else is an enumeration bug or a
    non-fundamental input)."""
    _validate_enum_disc(D)
    reps = {}
    gen = _candidates_pos(D) if D > 0 else _candidates_neg(D)
    for F in gen:
        if disc(F) != D or not is_irreducible(F):
            continue
        R = reduce(F)
        reps[R.coeffs()] = R
    classes = sorted(reps.values(), key=lambda f: f.coeffs())
    twice1 = 2 * len(classes) + 1
    r = 0
    while 3**r < twice1:
        r += 1
    if 3**r != twice1:
        raise CountNotOfExpectedShape(f"{len(classes)} classes for D = {D}")
    return classes


# --- monic representability and depression ---

def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class MonicSearch:
    status: str                      # 'already_monic' | 'found' | 'not_found'
    matrix: tuple | None = None
    form: BinaryCubicForm | None = None
    bound: int = 0

    @property
    def found(self) -> bool:
        return self.status in ('already_monic', 'found')


def _unit_pairs_numpy(F: BinaryCubicForm, bound: int):
    import numpy as np
    a, b, c, d = F.coeffs()
    xs = np.arange(-bound, bound + 1, dtype=np.int64)
    hits = []
    for q in range(-bound, bound + 1):
        v = ((a * xs + b * q) * xs + c * q * q) * xs + d * q**3
        for i in np.nonzero(v == 1)[0]:
            hits.append((int(xs[i]), q))
    return hits


def _unit_pairs_python(F: BinaryCubicForm, bound: int):
    hits = []
    for q in range(-bound, bound + 1):
        for p in range(-bound, bound + 1):
            if F(p, q) == 1:
                hits.append((p, q))
    return hits


def monic_representative(F: BinaryCubicForm, bound: int) -> MonicSearch:
    """Bounded search for coprime (p, q), |p|,|q| <= bound, F(p, q) = 1;
    the first hit (max-norm rings, then lexicographic) is completed to a
    unimodular matrix giving an equivalent monic form.  'not_found' is a
    semi-decision, valid only up to the bound."""
    _check_reducible(F)
    if F.a == 1:
        return MonicSearch('already_monic', ((1, 0), (0, 1)), F, bound)
    maxc = max(abs(t) for t in F.coeffs())
    try:
        import numpy  # noqa: F401
        have_numpy = True
    except ImportError:
        have_numpy = False
    if have_numpy and 4 * maxc * (bound + 1)**3 < 2**62:
        hits = _unit_pairs_numpy(F, bound)
    else:
        hits = _unit_pairs_python(F, bound)
    hits.sort(key=lambda pq: (max(abs(pq[0]), abs(pq[1])), pq))
    for p, q in hits:
        if gcd(p, q) != 1:
            continue
        assert F(p, q) == 1
        g, x0, y0 = _xgcd(p, q)
        assert g == 1
        M = ((p, -y0), (q, x0))
        G = act(F, M)
        assert G.a == 1
        return MonicSearch('found', M, G, bound)
    return MonicSearch('not_found', None, None, bound)


@dataclass(frozen=True)
class DepressedCubic:
    """X^3 - mX + n; (m, n) integral or exactly (M/3, N/27)."""
    m: Fraction
    n: Fraction

    def __post_init__(self):
        dm, dn = self.m.denominator, self.n.denominator
        if (dm, dn) not in ((1, 1), (3, 27)):
            raise ValueError(f"bad denominator pattern ({dm}, {dn})")

    def disc(self) -> int:
        val = 4 * self.m**3 - 27 * self.n**2
        assert val.denominator == 1
        return int(val)

    @property
    def integral(self) -> bool:
        return self.m.denominator == 1


def depress(a, b, c) -> DepressedCubic:
    """Depress monic x^3 + ax^2 + bx + c to X^3 - mX + n; the discriminant
    is unchanged."""
    if rational_roots([Fraction(c), Fraction(b), Fraction(a), Fraction(1)]):
        raise ReduciblePolynomial(f"x^3 + {a}x^2 + {b}x + {c}")
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    m = a * a / 3 - b
    n = c + 2 * a**3 / 27 - a * b / 3
    return DepressedCubic(m, n)


def point_from_depressed(dc: DepressedCubic, seed):
    """The rational point (12m, 108n) on E_D': Y^2 = X^3 - 432D."""
    from .mordell import CurvePoint, MordellCurve
    if dc.disc() != seed.D:
        raise DiscriminantMismatch(f"{dc.disc()} != {seed.D}")
    E = MordellCurve.e_d_prime(seed.D)
    return CurvePoint(E, 12 * dc.m, 108 * dc.n)
