"""Exact integer arithmetic helpers: roots, squarefree tests, cubic residues.

Everything here is exact; floats appear only as starting guesses for integer
Newton iterations and every result is verified by integer arithmetic before it
is returned.
"""

from fractions import Fraction
from math import gcd, isqrt

import sympy

from .errors import BadPrime, FactorizationBudgetExceeded, ZeroInput

# Trial division bound used before the rho fallback kicks in.
TRIAL_BOUND = 10**6

_small_primes: list[int] | None = None


def small_primes() -> list[int]:
    """Primes up to TRIAL_BOUND, sieved once and cached."""
    global _small_primes
    if _small_primes is None:
        _small_primes = list(sympy.sieve.primerange(2, TRIAL_BOUND + 1))
    return _small_primes


def primes_upto(n: int) -> list[int]:
    return list(sympy.sieve.primerange(2, n + 1))


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("iroot needs n >= 0")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    # Newton iteration on integers.  The seed 2^ceil(bits/k) exceeds the
    # root, and from above the iteration decreases monotonically, so the
    # trailing adjustments are O(1) steps.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def cube_root_exact(n: int):
    """Integer r with r^3 = n, or None.  Works for negative n."""
    if n == 0:
        return 0
    r = iroot(abs(n), 3)
    if r**3 != abs(n):
        return None
    return r if n > 0 else -r


def _pollard_rho(n: int, budget: int) -> int | None:
    """Brent's rho.  Returns a nontrivial factor of composite n, or None
    once the iteration budget runs out."""
    if n % 2 == 0:
        return 2
    spent = 0
    for c in range(1, 64):
        y, m = 2, 128
        r, q, g = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += min(m, r - k)
                g = gcd(q, n)
                spent += min(m, r - k) + 1
                if spent > budget:
                    return None
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factorize(n: int, budget: int = 10**6) -> dict[int, int]:
    """Prime factorization of |n| as {p: e}.  Raises ZeroInput on 0 and
    FactorizationBudgetExceeded if the rho fallback gives up."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if sympy.isprime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        f = _pollard_rho(m, budget)
        if f is None or f in (1, m):
            raise FactorizationBudgetExceeded(f"gave up factoring {m}")
        stack.extend([f, m // f])
    return out


def divisors(n: int, budget: int = 10**6) -> list[int]:
    """Positive divisors of |n|, sorted ascending."""
    fac = factorize(n, budget)
    out = [1]
    for p, e in fac.items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def squarefree_status(n: int, trial_bound: int = TRIAL_BOUND,
                      budget: int = 10**5) -> bool | None:
    """True / False / None (= could not decide within the effort budget)."""
    if n == 0:
        raise ZeroInput("squarefree is undefined for 0")
    n = abs(n)
    if n == 1:
        return True
    for p in small_primes():
        if p > trial_bound or p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
    if n == 1 or n <= trial_bound:
        return True
    if sympy.isprime(n):
        return True
    r = isqrt(n)
    if r * r == n:
        return False
    if n < trial_bound**3:
        # no factor <= trial_bound and not a square: n = p or p*q, distinct
        return True
    try:
        fac = factorize(n, budget)
    except FactorizationBudgetExceeded:
        return None
    return all(e == 1 for e in fac.values())


def is_squarefree(n: int) -> bool:
    """Exact squarefree test; treats n and -n alike.  Raises ZeroInput on 0."""
    st = squarefree_status(n, budget=10**7)
    if st is None:
        raise FactorizationBudgetExceeded(f"squarefree test on {n} gave up")
    return st


def is_cubic_residue(y: int, l: int) -> bool:
    """Whether y is a cube mod the prime l = 1 (mod 3).

    Euler-style criterion: y^((l-1)/3) == 1 (mod l).
    """
    if not sympy.isprime(l):
        raise BadPrime(f"{l} is not prime")
    if l % 3 != 1:
        raise BadPrime(f"{l} is not 1 mod 3; cubing is a bijection there")
    if y % l == 0:
        raise BadPrime(f"{y} is divisible by {l}")
    return pow(y, (l - 1) // 3, l) == 1


# --- polynomial root extraction ---

def _horner(coeffs_desc, x):
    v = 0
    for c in coeffs_desc:
        v = v * x + c
    return v


def rational_roots(coeffs) -> list[Fraction]:
    """All rational roots of c0 + c1 x + ... + cn x^n, each listed once.

    coeffs is ascending, entries int or Fraction.  Denominators are cleared,
    then candidate roots p/q run over divisor pairs of the constant and
    leading coefficients.  Exact throughout; no numerics.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ZeroInput("zero polynomial")
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ics = [int(c * lcm) for c in cs]
    roots: set[Fraction] = set()
    shift = 0
    while ics[0] == 0:
        roots.add(Fraction(0))
        ics = ics[1:]
        shift += 1
        if not ics:
            return sorted(roots)
    if len(ics) == 1:
        return sorted(roots)
    desc = ics[::-1]
    for p in divisors(ics[0]):
        for q in divisors(ics[-1]):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _horner(desc, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _bisect_root(f, lo: int, hi: int, increasing: bool) -> int | None:
    """Integer root of f on [lo, hi] where f is monotone there.  None if the
    sign change straddles a non-integer root."""
    if lo > hi:
        return None
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if not increasing:
        flo, fhi = fhi, flo
    if flo > 0 or fhi < 0:
        return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        v = f(mid)
        if v == 0:
            return mid
        if (v < 0) == increasing:
            lo = mid
        else:
            hi = mid
    return None


def integer_roots_monic_cubic(A: int, B: int, C: int) -> list[int]:
    """Integer roots of x^3 + A x^2 + B x + C.

    Bisection between the critical points, so it stays fast when the
    coefficients have thousands of digits (no divisor enumeration).
    """
    def f(x):
        return ((x + A) * x + B) * x + C

    M = 2 + max(abs(A), abs(B), abs(C))
    t = A * A - 3 * B
    roots = []
    if t <= 0:
        r = _bisect_root(f, -M, M, True)
        return [r] if r is not None else []
    # critical points (-A -/+ sqrt(t))/3; find exact integer floors
    s = isqrt(t)

    def dval(k):
        return 3 * k * k + 2 * A * k + B

    # k1 = floor(left critical point): largest k with dval(k) >= 0, 3k <= -A
    k1 = (-A - s) // 3 - 1
    while dval(k1 + 1) >= 0 and 3 * (k1 + 1) <= -A:
        k1 += 1
    # k2 = floor(right critical point): largest k with 3k <= -A or dval(k) <= 0
    k2 = (-A + s) // 3 - 1
    while (3 * (k2 + 1) <= -A) or dval(k2 + 1) <= 0:
        k2 += 1
    for lo, hi, inc in ((-M, k1, True), (k1 + 1, k2, False), (k2 + 1, M, True)):
        r = _bisect_root(f, lo, hi, inc)
        if r is not None and r not in roots:
            roots.append(r)
    return sorted(roots)
