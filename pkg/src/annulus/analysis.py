"""Root analysis of flux polynomials and spectral checks of connection matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import functools

import mpmath
import numpy as np

from .errors import WallsPresent, ZeroPolynomial
from .laurent import LaurentPoly, canonical, elementary_symmetric, root_power


@dataclass
class RootReport:
    roots: list  # nonzero roots, complex
    errors: list  # relative backward error per root
    valuation: int
    leading: object
    real_negative: bool
    distinct: bool
    unit_modulus: bool
    min_separation: float = float("inf")
    verdict: str | None = None
    notes: list = field(default_factory=list)


def _coeffs_at(P, q=None):
    """Ascending coefficients (numbers) of P in p, after fixing q; and valuation."""
    if isinstance(P, (list, tuple)):
        coeffs = list(P)
        lo = 0
    else:
        if not P:
            raise ZeroPolynomial("no roots of the zero polynomial")
        if q is None:
            if not all(eq4 == 0 for (_, eq4), _c in P.items()):
                raise ValueError("polynomial depends on q; pass a value for q")
            vals = {ep: c for (ep, _), c in P.items()}
        else:
            vals = P.specialize_q(q)
        lo, hi = min(vals), max(vals)
        coeffs = [vals.get(lo + i, 0) for i in range(hi - lo + 1)]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        lo += 1
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("no roots of the zero polynomial")
    return coeffs, lo


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpmathify(x)


def numeric_roots(P, q=None, dps=50, tol=1e-8):
    """Nonzero roots by companion-matrix eigenvalues plus a Newton polish."""
    coeffs, lo = _coeffs_at(P, q)
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    if deg == 0:
        return RootReport([], [], lo, lead, True, True, True)
    c = [complex(x) for x in coeffs]
    approx = np.roots(c[::-1])
    with mpmath.workdps(dps):
        mc = [_to_mp(x) for x in coeffs]
        roots, errors = [], []
        for z in approx:
            r = mpmath.mpc(z)
            for _ in range(30):
                f = mpmath.polyval(mc[::-1], r)
                df = mpmath.polyval([mc[i] * i for i in range(deg, 0, -1)], r)
                if df == 0:
                    break
                step = f / df
                r -= step
                if abs(step) <= abs(r) * mpmath.mpf(10) ** (-dps + 5):
                    break
            val = abs(mpmath.polyval(mc[::-1], r))
            scale = sum(abs(mc[i]) * abs(r) ** i for i in range(deg + 1))
            roots.append(complex(r))
            errors.append(float(val / scale) if scale else 0.0)
    roots.sort(key=lambda z: (z.real, z.imag))
    real_neg = all(abs(z.imag) < tol * abs(z) and z.real < 0 for z in roots)
    sep = float("inf")
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = abs(roots[i] - roots[j]) / max(abs(roots[i]), abs(roots[j]))
            sep = min(sep, d)
    distinct = sep > tol
    unit = all(abs(abs(z) - 1) < tol for z in roots)
    return RootReport(roots, errors, lo, lead, real_neg, distinct, unit, sep)


def check_q_positive(P, q, walls=0, tol=1e-8):
    """Nonzero roots of Phi(., q) are distinct negative reals (wall-free case).

    With walls, a root -1 of multiplicity ``walls - 1`` is expected and the
    other roots are not judged.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if walls:
        raise WallsPresent(f"{walls} walls present")
    rep = numeric_roots(P, q, tol=tol)
    rep.verdict = "pass" if rep.real_negative and rep.distinct else "fail"
    return rep


def minus_one_multiplicity(P):
    """Exact multiplicity of the root p = -1 of an integer polynomial in p."""
    coeffs, _ = _coeffs_at(P, None if isinstance(P, (list, tuple)) else 1)
    coeffs = [int(c) for c in coeffs]
    m = 0
    while len(coeffs) > 1:
        q, r = _divide(coeffs, [1, 1])
        if any(r):
            break
        coeffs = q
        m += 1
    return m


# ---------------------------------------------------------------------------
# cyclotomic factorization


def _divide(num, den):
    """Exact division of ascending integer coefficient lists; (quotient, remainder)."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    lead = den[-1]
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1 - dn, -1, -1):
        c = num[i + dn]
        if c % lead:
            return None, [1]
        c //= lead
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[:dn] if dn else [0]
    return quot, rem


@functools.lru_cache(maxsize=None)
def _cyclotomic(d):
    return tuple(cyclotomic_poly(d))


def cyclotomic_poly(d):
    """Phi_d as ascending integer coefficients: (x^d - 1) / prod_{e | d, e < d} Phi_e."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num, rem = _divide(num, list(_cyclotomic(e)))
            assert not any(rem)
    return num


def _totient(n):
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@dataclass
class CyclotomicFactorization:
    factors: dict  # d -> multiplicity
    residual: int  # remaining constant
    valuation: int
    ok: bool


def cyclotomic_part(P):
    """Divide out cyclotomic factors exactly; ``ok`` iff nothing else remains."""
    if isinstance(P, LaurentPoly):
        if not P:
            raise ZeroPolynomial("zero polynomial")
        if any(eq4 for (_, eq4), _c in P.items()):
            raise ValueError("polynomial depends on q")
        vals = {ep: c for (ep, _), c in P.items()}
        lo, hi = min(vals), max(vals)
        coeffs = [vals.get(lo + i, 0) for i in range(hi - lo + 1)]
    else:
        coeffs, lo = _coeffs_at(P)
        coeffs = [int(c) for c in coeffs]
    if not any(coeffs):
        raise ZeroPolynomial("the zero polynomial has no factorization")
    deg = len(coeffs) - 1
    factors = {}
    # phi(d) >= sqrt(d / 2), so only d <= 2 deg^2 can contribute
    for d in range(1, 2 * deg * deg + 2):
        if len(coeffs) == 1:
            break
        if _totient(d) > len(coeffs) - 1:
            continue
        cp = list(_cyclotomic(d))
        while len(coeffs) > 1:
            qt, rem = _divide(coeffs, cp)
            if qt is None or any(rem):
                break
            coeffs = qt
            factors[d] = factors.get(d, 0) + 1
    ok = len(coeffs) == 1
    return CyclotomicFactorization(factors, coeffs[0] if ok else 0, lo, ok)


# ---------------------------------------------------------------------------
# symmetric functions and traces


def symmetric_check(T, blocks_at_q, n, q, tol=1e-6):
    """Compare tr C_f^n with a^n sigma_{fmax-f}((-lambda)^n) at a fixed q.

    ``T`` is the trace polynomial; ``blocks_at_q`` maps f to numeric blocks.
    Returns (ok, worst relative error, details).
    """
    coeffs, lo = _coeffs_at(T, q)
    fmax = lo + len(coeffs) - 1
    rep = numeric_roots(T, q)
    a = complex(coeffs[-1])
    powered = [(-z) ** n for z in rep.roots]
    worst = 0.0
    details = {}
    for f, mat in blocks_at_q.items():
        if len(mat) == 0:
            lhs = 0.0
        else:
            lhs = complex(np.trace(np.linalg.matrix_power(np.asarray(mat, dtype=complex), n)))
        k = fmax - f
        rhs = a ** n * elementary_symmetric(powered, k) if 0 <= k <= len(powered) else 0
        scale = max(abs(lhs), abs(rhs), 1.0)
        err = abs(lhs - rhs) / scale
        details[f] = (lhs, rhs)
        worst = max(worst, err)
    return worst <= tol, worst, details


def trace_power_polynomial(C, n):
    """Sum over f of p^f tr(C_f^n), exactly."""
    from .track import mat_pow, trace

    total = LaurentPoly()
    for f, (rows, cols, mat) in C.blocks.items():
        if not rows:
            continue
        total = total + trace(mat_pow(mat, n)).shift(f, 0)
    return total


def exact_trace_corollary(C, n):
    """Exact form of the trace corollary: traces of powers are root powers."""
    from .track import trace_polynomial

    T = trace_polynomial(C)
    return trace_power_polynomial(C, n) == root_power(T, n)


# ---------------------------------------------------------------------------
# concavity


def log_concave(seq):
    return all(seq[i] ** 2 >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def concavity_report(P, qs=(0.5, 1, 2)):
    """Log-concavity of a_f at each q, concavity of b_f and convexity of c_f."""
    out = {"log_concave": {}, "b_concave": None, "c_convex": None}
    for q in qs:
        qq = Fraction(q).limit_denominator(1000) if not isinstance(q, int) else q
        coeffs, _ = _coeffs_at(P, qq)
        out["log_concave"][q] = log_concave(coeffs)
    per = P.p_coefficients() if isinstance(P, LaurentPoly) else {}
    fs = sorted(per)
    b = [max(e for (_, e), _c in per[f].items()) for f in fs]
    c = [min(e for (_, e), _c in per[f].items()) for f in fs]
    out["b"] = b
    out["c"] = c
    # exponents are in quarter units; gaps in f are not expected
    contiguous = fs == list(range(fs[0], fs[-1] + 1)) if fs else True
    out["contiguous"] = contiguous
    out["b_concave"] = all(2 * b[i] >= b[i - 1] + b[i + 1] for i in range(1, len(b) - 1))
    out["c_convex"] = all(2 * c[i] <= c[i - 1] + c[i + 1] for i in range(1, len(c) - 1))
    return out


# ---------------------------------------------------------------------------
# spectra of connection-matrix blocks


def zeta8_matrix(mat):
    """Exact matrix over Z[zeta_8] at q = -1, q^(1/4) = zeta_8 (principal branch)."""
    out = []
    for row in mat:
        r = []
        for x in row:
            v = [0, 0, 0, 0]
            for (ep, e4), c in x.items():
                e = e4 % 8
                sign = 1
                if e >= 4:
                    e -= 4
                    sign = -1
                v[e] += sign * c
            r.append(tuple(v))
        out.append(r)
    return out


def _z8_mul(a, b):
    out = [0, 0, 0, 0]
    for i in range(4):
        if a[i] == 0:
            continue
        for j in range(4):
            if b[j] == 0:
                continue
            k = i + j
            if k >= 4:
                out[k - 4] -= a[i] * b[j]
            else:
                out[k] += a[i] * b[j]
    return tuple(out)


def _z8_matmul(a, b):
    n, m, inner = len(a), len(b[0]), len(b)
    zero = (0, 0, 0, 0)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = [0, 0, 0, 0]
            for k in range(inner):
                if a[i][k] != zero and b[k][j] != zero:
                    p = _z8_mul(a[i][k], b[k][j])
                    for t in range(4):
                        acc[t] += p[t]
            row.append(tuple(acc))
        out.append(row)
    return out


def eventual_period(mat, horizon=64):
    """Smallest (a, b), a < b <= horizon, with M^a = M^b exactly; None if not found.

    ``mat`` is a matrix of LaurentPoly evaluated at q = -1 in Z[zeta_8].
    """
    Z = zeta8_matrix(mat)
    if not Z:
        return (0, 1)
    seen = {}
    P = Z
    for k in range(1, horizon + 1):
        key = tuple(tuple(r) for r in P)
        if key in seen:
            return (seen[key], k)
        seen[key] = k
        P = _z8_matmul(P, Z)
    return None


def z8_to_complex(mat):
    w = np.exp(1j * np.pi / 4)
    basis = np.array([1, w, w * w, w ** 3])
    return np.array([[np.dot(np.array(v, dtype=float), basis) for v in row] for row in mat], dtype=complex)


def unit_or_zero_moduli(mat, horizon=64, tol=1e-8):
    """Eigenvalues of a block at q = -1 are 0 or roots of unity.

    Exact: eventual periodicity of powers.  Numeric: eigenvalues of M^a
    (semisimple once M^a = M^b) have modulus 0 or 1 within ``tol``.
    """
    per = eventual_period(mat, horizon)
    if per is None:
        return None, None
    a, b = per
    Z = zeta8_matrix(mat)
    if not Z:
        return per, True
    M = z8_to_complex(Z)
    Ma = np.linalg.matrix_power(M, max(a, 1))
    ev = np.linalg.eigvals(Ma)
    ok = all(abs(x) < tol or abs(abs(x) - 1) < tol for x in ev)
    return per, ok


def nonzero_spectrum(M, tol=1e-8):
    ev = np.linalg.eigvals(np.asarray(M, dtype=complex)) if len(M) else np.array([])
    scale = max([1.0] + [abs(x) for x in ev])
    return sorted((x for x in ev if abs(x) > 1e-6 * scale), key=lambda z: (round(z.real, 6), round(z.imag, 6)))


def spectra_match(M1, M2, tol=1e-8):
    """Nonzero spectra agree as multisets (relative tolerance)."""
    a = nonzero_spectrum(M1)
    b = nonzero_spectrum(M2)
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for x in a:
        best = None
        for j, y in enumerate(b):
            if used[j]:
                continue
            d = abs(x - y) / max(abs(x), abs(y), 1e-300)
            if best is None or d < best[0]:
                best = (d, j)
        if best is None or best[0] > tol:
            return False
        used[best[1]] = True
    return True


def power_traces_equal(M1, M2, kmax):
    """Exact identity tr(M1^k) = tr(M2^k) for k <= kmax (LaurentPoly matrices)."""
    from .track import mat_mul, trace

    if not M1 and not M2:
        return True
    P1, P2 = M1, M2
    for k in range(1, kmax + 1):
        t1 = trace(P1) if P1 else LaurentPoly()
        t2 = trace(P2) if P2 else LaurentPoly()
        if t1 != t2:
            return False
        if k < kmax:
            P1 = mat_mul(P1, M1) if M1 else P1
            P2 = mat_mul(P2, M2) if M2 else P2
    return True


def perron_check(M, tol=1e-8):
    """Top eigenvalue real, positive, simple and strictly dominant."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return True, None
    ev = np.linalg.eigvals(M)
    order = sorted(ev, key=lambda z: -abs(z))
    top = order[0]
    if abs(top.imag) > tol * abs(top) or top.real <= 0:
        return False, top
    if len(order) > 1 and abs(order[1]) >= abs(top) * (1 - tol):
        return False, top
    return True, top.real


def primitive_pattern(M):
    """Some power of the 0/1 pattern is entrywise positive (Wielandt bound)."""
    A = (np.asarray(M) != 0).astype(np.int64)
    n = A.shape[0]
    if n == 0:
        return True
    P = A.copy()
    for _ in range((n - 1) ** 2 + 1):
        if np.all(P > 0):
            return True
        P = ((P @ A) > 0).astype(np.int64)
    return bool(np.all(P > 0))


def growth_rate(C, f, q, nmax=12):
    """log tr C_f^n / n for increasing n: tends to log of the top eigenvalue."""
    from .track import eval_matrix

    M = eval_matrix(C.block(f), q)
    out = []
    P = np.eye(len(M))
    for n in range(1, nmax + 1):
        P = P @ M
        tr = float(np.real(np.trace(P)))
        out.append(np.log(tr) / n if tr > 0 else float("nan"))
    return out


def canonical_at_minus_one(P):
    vals = P.specialize_q(-1)
    out = {}
    for ep, v in vals.items():
        out[(ep, 0)] = int(v)
    Q = LaurentPoly(out)
    return canonical(Q) if Q else Q


__all__ = [
    "RootReport",
    "numeric_roots",
    "check_q_positive",
    "minus_one_multiplicity",
    "cyclotomic_poly",
    "CyclotomicFactorization",
    "cyclotomic_part",
    "symmetric_check",
    "trace_power_polynomial",
    "exact_trace_corollary",
    "log_concave",
    "concavity_report",
    "eventual_period",
    "unit_or_zero_moduli",
    "spectra_match",
    "power_traces_equal",
    "perron_check",
    "primitive_pattern",
    "growth_rate",
    "canonical_at_minus_one",
]
