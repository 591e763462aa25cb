"""Exact Laurent polynomials in ``p`` and ``q`` with integer coefficients.

Exponents of ``q`` are stored in quarter units: the key ``(e_p, e_q4)`` stands
for the monomial ``p**e_p * q**(e_q4/4)``.  Coefficients are Python ints, so
all arithmetic is exact.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvalAtZero, ZeroPolynomial


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in dict(terms).items():
                if c:
                    clean[(int(key[0]), int(key[1]))] = int(c)
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, coeff=1, e_p=0, e_q4=0):
        return cls({(e_p, e_q4): coeff})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def p(cls, e=1):
        return cls({(e, 0): 1})

    @classmethod
    def q(cls, e=1):
        """``q**e`` for integral ``e``."""
        return cls({(0, 4 * e): 1})

    @classmethod
    def q4(cls, e4=1):
        """``q**(e4/4)``."""
        return cls({(0, e4): 1})

    @classmethod
    def from_p_coeffs(cls, coeffs, shift=0):
        """Univariate in ``p`` from ascending integer coefficients."""
        return cls({(shift + k, 0): c for k, c in enumerate(coeffs) if c})

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for (ep, eq4), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = []
            if ep == 1:
                mono.append("p")
            elif ep:
                mono.append(f"p^{ep}")
            if eq4:
                e = Fraction(eq4, 4)
                if e == 1:
                    mono.append("q")
                elif e.denominator == 1:
                    mono.append(f"q^{e.numerator}")
                else:
                    mono.append(f"q^({e})")
            body = "*".join(mono)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if body:
                term = body if mag == 1 else f"{mag}*{body}"
            else:
                term = str(mag)
            out.append((sign, term))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            s += f" {sign} {term}"
        return s

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for k, c in other._terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return _raw(t)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        t = {}
        for (bp, bq), bc in b.items():
            for (ap, aq), ac in a.items():
                k = (ap + bp, aq + bq)
                v = t.get(k, 0) + ac * bc
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        return _raw(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((ep, eq4), c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPoly({(ep * n, eq4 * n): c ** (-n)})
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e_p=0, e_q4=0):
        return _raw({(ep + e_p, eq4 + e_q4): c for (ep, eq4), c in self._terms.items()})

    def scale(self, k):
        if not k:
            return LaurentPoly()
        return _raw({key: c * k for key, c in self._terms.items()})

    # -- inspection -------------------------------------------------------
    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        return self.is_monomial() and abs(next(iter(self._terms.values()))) == 1

    def p_range(self):
        eps = [k[0] for k in self._terms]
        return min(eps), max(eps)

    def q4_range(self):
        eqs = [k[1] for k in self._terms]
        return min(eqs), max(eqs)

    def has_integral_q(self):
        return all(eq4 % 4 == 0 for _, eq4 in self._terms)

    def coefficient_sum(self):
        return sum(self._terms.values())

    def abs_coefficient_sum(self):
        return sum(abs(c) for c in self._terms.values())

    def p_coefficients(self):
        """Map ``e_p -> LaurentPoly in q`` (the coefficient of ``p**e_p``)."""
        out = {}
        for (ep, eq4), c in self._terms.items():
            out.setdefault(ep, {})[(0, eq4)] = c
        return {ep: _raw(t) for ep, t in sorted(out.items())}

    def swap_roles(self):
        """Exchange the roles of p and q (q must be integral)."""
        if not self.has_integral_q():
            raise ValueError("quarter q-exponents cannot become p-exponents")
        return _raw({(eq4 // 4, 4 * ep): c for (ep, eq4), c in self._terms.items()})

    # -- evaluation -------------------------------------------------------
    def eval(self, p=1, q=1):
        """Evaluate at a point; ``q**(1/4)`` uses the principal branch.

        Exact when ``p`` and ``q`` are ints/Fractions and every q-exponent
        needed is integral; complex otherwise.
        """
        total = 0
        for (ep, eq4), c in self._terms.items():
            total += c * _power(p, ep, "p") * _qpower(q, eq4)
        return total

    def specialize_q(self, q):
        """Substitute a value for q, returning ``{e_p: coefficient}``."""
        out = {}
        for (ep, eq4), c in self._terms.items():
            out[ep] = out.get(ep, 0) + c * _qpower(q, eq4)
        return {k: v for k, v in sorted(out.items()) if v != 0}

    def at_q(self, q):
        """Substitute an integer for q (integral exponents), giving a p-polynomial."""
        if not isinstance(q, int):
            raise TypeError("at_q needs an integer; use specialize_q for other values")
        vals = self.specialize_q(q)
        t = {}
        for ep, v in vals.items():
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError("non-integral coefficient after substitution")
                v = v.numerator
            t[(ep, 0)] = int(v)
        return _raw(t)

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return [[ep, eq4, str(c)] for (ep, eq4), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({(int(ep), int(eq4)): int(c) for ep, eq4, c in data})


def _raw(terms):
    obj = LaurentPoly.__new__(LaurentPoly)
    obj._terms = terms
    obj._hash = None
    return obj


def _power(x, e, name):
    if e >= 0:
        return x ** e
    if x == 0:
        raise EvalAtZero(f"negative power of {name} evaluated at 0")
    if isinstance(x, int):
        return Fraction(1, x ** -e)
    return x ** e


def _qpower(q, eq4):
    if eq4 % 4 == 0:
        return _power(q, eq4 // 4, "q")
    if q == 0:
        if eq4 < 0:
            raise EvalAtZero("negative power of q evaluated at 0")
        return 0
    if isinstance(q, (int, Fraction)) and q > 0:
        # q^(eq4/4) = (q^(1/b))^a with a/b in lowest terms
        b = 4 // math.gcd(eq4, 4)
        root = _exact_root(Fraction(q), b)
        if root is not None:
            return _power(root, eq4 * b // 4, "q")
    if isinstance(q, complex) or q < 0:
        root = cmath.exp(cmath.log(complex(q)) / 4)
    else:
        root = float(q) ** 0.25
    return root ** eq4


def _exact_root(x, b):
    """Exact b-th root (b in 1, 2, 4) of a positive rational, or None."""

    def iroot(n):
        r = n
        for _ in range(b.bit_length() - 1):
            r = math.isqrt(r)
        return r if r ** b == n else None

    num, den = iroot(x.numerator), iroot(x.denominator)
    if num is None or den is None:
        return None
    return num if den == 1 else Fraction(num, den)


@dataclass(frozen=True)
class UnitMonomial:
    """An invertible element ``sign * p**e_p * q**(e_q4/4)``."""

    sign: int = 1
    e_p: int = 0
    e_q4: int = 0

    def as_poly(self):
        return LaurentPoly.monomial(self.sign, self.e_p, self.e_q4)

    def inverse(self):
        return UnitMonomial(self.sign, -self.e_p, -self.e_q4)

    def __mul__(self, other):
        return UnitMonomial(self.sign * other.sign, self.e_p + other.e_p, self.e_q4 + other.e_q4)


def canonicalize(P):
    """Split ``P = u * P'`` with ``P'`` in unit-normal form.

    ``P'`` has minimal p- and q-exponents 0 and a positive coefficient on its
    lexicographically least monomial.  Two polynomials agree up to a unit
    monomial exactly when their canonical parts are equal.
    """
    if not P:
        raise ZeroPolynomial("cannot canonicalize the zero polynomial")
    mp = P.p_range()[0]
    mq = P.q4_range()[0]
    Q = P.shift(-mp, -mq)
    lead = Q._terms[min(Q._terms)]
    sign = 1 if lead > 0 else -1
    if sign < 0:
        Q = -Q
    return Q, UnitMonomial(sign, mp, mq)


def canonical(P):
    """Canonical part only; the zero polynomial maps to itself."""
    if not P:
        return P
    return canonicalize(P)[0]


def equal_up_to_unit(P, Q):
    if not P or not Q:
        return not P and not Q
    return canonical(P) == canonical(Q)


# ---------------------------------------------------------------------------
# determinants


def det_cofactor(M):
    """Laplace expansion along the first row.  Reference implementation."""
    n = len(M)
    if n == 0:
        return LaurentPoly.one()
    for row in M:
        if len(row) != n:
            raise ValueError("matrix is not square")
    M = [[_as_poly(x) for x in row] for row in M]
    memo = {}

    def minor(r, cols):
        if r == n:
            return LaurentPoly.one()
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = LaurentPoly()
        sign = 1
        for c in range(n):
            if not (cols >> c) & 1:
                continue
            entry = M[r][c]
            if entry:
                sub = minor(r + 1, cols & ~(1 << c))
                acc = acc + (entry * sub if sign > 0 else -(entry * sub))
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(int(x))


def det_exact(M, engine="bareiss"):
    """Exact determinant of a square matrix of Laurent polynomials.

    ``engine`` is ``"bareiss"`` (fraction-free elimination; cofactor expansion
    below 7x7) or ``"interp"`` (integer evaluation and interpolation).
    """
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("matrix is not square")
    M = [[_as_poly(x) for x in row] for row in M]
    if n <= 6 and engine == "bareiss":
        return det_cofactor(M)
    rows, unit = _normalize_rows_cols(M)
    if rows is None:
        return LaurentPoly()
    if engine == "bareiss":
        det = _bareiss_flint(rows)
    elif engine == "interp":
        det = _det_interp(rows)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return det * unit


def _normalize_rows_cols(M):
    """Shift rows and columns so every exponent is >= 0 and all share a stride.

    Returns ``(int_rows, unit)`` where ``int_rows`` holds dicts keyed by
    ``(e_p, e_q)`` in the compressed exponent lattice, and ``unit`` is the
    Laurent monomial to multiply the reduced determinant by.
    """
    n = len(M)
    total_p = total_q = 0
    work = [[dict(x._terms) for x in row] for row in M]
    for i, row in enumerate(work):
        keys = [k for e in row for k in e]
        if not keys:
            return None, None
        mp = min(k[0] for k in keys)
        mq = min(k[1] for k in keys)
        total_p += mp
        total_q += mq
        work[i] = [{(a - mp, b - mq): c for (a, b), c in e.items()} for e in row]
    for j in range(n):
        keys = [k for i in range(n) for k in work[i][j]]
        if not keys:
            return None, None
        mp = min(k[0] for k in keys)
        mq = min(k[1] for k in keys)
        total_p += mp
        total_q += mq
        for i in range(n):
            work[i][j] = {(a - mp, b - mq): c for (a, b), c in work[i][j].items()}
    g = 0
    for row in work:
        for e in row:
            for (_, b) in e:
                g = math.gcd(g, b)
    g = g or 1
    rows = [[{(a, b // g): c for (a, b), c in e.items()} for e in row] for row in work]
    unit = LaurentPoly.monomial(1, total_p, total_q)
    return (rows, g), unit


def _unstride(terms, g):
    return LaurentPoly({(a, b * g): c for (a, b), c in terms.items()})


def _bareiss_flint(packed):
    import flint

    rows, g = packed
    n = len(rows)
    ctx = flint.fmpz_mpoly_ctx.get(("p", "q"), "lex")
    zero = ctx.from_dict({})
    A = [[ctx.from_dict({k: v for k, v in e.items()}) if e else zero for e in row] for row in rows]
    sign = 1
    prev = ctx.from_dict({(0, 0): 1})
    for k in range(n - 1):
        # pick the smallest nonzero pivot in column k
        best = None
        for i in range(k, n):
            if A[i][k] != 0:
                size = len(A[i][k])
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            return LaurentPoly()
        piv = best[1]
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi = A[i]
            for j in range(k + 1, n):
                v = akk * rowi[j]
                if aik != 0 and rowk[j] != 0:
                    v = v - aik * rowk[j]
                if v != 0 and k > 0:
                    v = v // prev
                rowi[j] = v
            rowi[k] = zero
        prev = akk
    det = A[n - 1][n - 1]
    terms = {tuple(int(e) for e in k): int(c) for k, c in det.to_dict().items()}
    out = _unstride(terms, g)
    return out if sign > 0 else -out


def _det_interp(packed):
    """Evaluate at integer points, take integer determinants, interpolate."""
    rows, g = packed
    n = len(rows)
    dp = min(sum(max((k[0] for e in row for k in e), default=0) for row in rows),
             sum(max((k[0] for i in range(n) for k in rows[i][j]), default=0) for j in range(n)))
    dq = min(sum(max((k[1] for e in row for k in e), default=0) for row in rows),
             sum(max((k[1] for i in range(n) for k in rows[i][j]), default=0) for j in range(n)))
    xs = list(range(1, dp + 2))
    ys = list(range(1, dq + 2))
    values = {}
    for x in xs:
        for y in ys:
            mat = [[sum(c * x ** a * y ** b for (a, b), c in e.items()) for e in row] for row in rows]
            values[(x, y)] = _int_det(mat)
    # interpolate in q for each fixed p, then in p coefficientwise
    per_x = {}
    for x in xs:
        per_x[x] = _interpolate(ys, [values[(x, y)] for y in ys])
    terms = {}
    for b in range(dq + 1):
        col = _interpolate(xs, [per_x[x][b] if b < len(per_x[x]) else 0 for x in xs])
        for a, c in enumerate(col):
            if c:
                terms[(a, b)] = c
    return _unstride(terms, g)


def _int_det(mat):
    import flint

    return int(flint.fmpz_mat(mat).det()) if mat else 1


def _interpolate(xs, ys):
    """Exact coefficients (ascending) of the polynomial through the points."""
    m = len(xs)
    coef = [Fraction(v) for v in ys]
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> monomial form
    poly = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * m
        for k in range(m - 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * xs[i]
        new[0] += coef[i]
        poly = new
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer coefficient")
        out.append(c.numerator)
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# root powers


def root_power(P, n):
    """The n-th root power of ``P`` viewed as a polynomial in p.

    If ``P = a (p - l_1) ... (p - l_m) p**b`` then the result is
    ``a**n (p - (-1)**(n+1) l_1**n) ... p**b``.  Coefficients may lie in the
    q-ring.  Computed as the norm of ``P(-w Y)`` over ``w**n = -1`` with
    ``Y**n = p``: the determinant of the negacyclic multiplication matrix.
    """
    if not P:
        raise ZeroPolynomial("root power of the zero polynomial")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return P
    b = P.p_range()[0]
    coeffs = P.shift(-b).p_coefficients()
    alpha = [LaurentPoly() for _ in range(n)]
    for k, c in coeffs.items():
        m, r = divmod(k, n)
        sign = (-1) ** k * (-1) ** m
        alpha[r] = alpha[r] + c.shift(k).scale(sign)
    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mat[i][j] = alpha[i - j] if i >= j else -alpha[n + i - j]
    norm = det_exact(mat)
    out = {}
    for (ep, eq4), c in norm._terms.items():
        if ep % n:
            raise ArithmeticError("root power left a non-multiple exponent")
        out[(ep // n + b, eq4)] = c
    return LaurentPoly(out)


def univariate_coeffs(P):
    """Ascending integer coefficients of a p-only polynomial and its valuation."""
    if not P:
        return [], 0
    if any(eq4 for _, eq4 in P._terms):
        raise ValueError("polynomial depends on q")
    lo, hi = P.p_range()
    coeffs = [0] * (hi - lo + 1)
    for (ep, _), c in P._terms.items():
        coeffs[ep - lo] = c
    return coeffs, lo


def elementary_symmetric(values, k):
    """``sigma_k`` of a list of numbers by the usual recurrence."""
    e = [1] + [0] * len(values)
    for x in values:
        for j in range(len(values), 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k] if 0 <= k <= len(values) else 0


def random_poly(rng, n_terms=3, p_span=2, q_span=2, coeff=3, quarter=False):
    """Small random Laurent polynomial, for property tests."""
    t = {}
    for _ in range(n_terms):
        ep = rng.randint(-p_span, p_span)
        eq = rng.randint(-q_span, q_span) * (1 if quarter else 4)
        t[(ep, eq)] = t.get((ep, eq), 0) + rng.randint(-coeff, coeff)
    return LaurentPoly(t)


__all__ = [
    "LaurentPoly",
    "UnitMonomial",
    "canonicalize",
    "canonical",
    "equal_up_to_unit",
    "det_exact",
    "det_cofactor",
    "root_power",
    "univariate_coeffs",
    "elementary_symmetric",
]

_ = itertools  # kept for downstream helpers
