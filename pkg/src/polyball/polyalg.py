"""Polynomial algebra on C^n: Laplacians, Almansi decompositions, dimensions.

Polynomials are sparse dicts mapping exponent tuples to coefficients, in one
of two modes:

* exact: coefficients are Gaussian rationals (``QQi``, a pair of Fractions).
  Decomposition routines require this mode and produce exact results; Python
  integers never overflow, so there is no precision failure mode.
* numeric: coefficients are Python complex.

The Almansi ladder writes a homogeneous q of degree m uniquely as

    q = u_m + |x|^2 u_{m-2} + |x|^4 u_{m-4} + ...        (u_k harmonic)

by repeatedly solving Delta(|x|^2 r) = Delta(q) for r in P_{m-2}, an
invertible square linear system over the rationals.  Grouping the ladder in
blocks of p gives the order-p decomposition with Delta^p-annihilated
components.

Text format: terms joined by " + ", each term "c * x1^a1 x2^a2 ...", with
rational coefficients "p/q" and complex ones "(re,im)".  Printing then
parsing reproduces the polynomial bit-exactly in both modes.
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction

import numpy as np

from .geometry import RotatedVector

__all__ = [
    "QQi",
    "MultiPoly",
    "dim_P",
    "dim_H",
    "dim_Hp",
    "harmonic_almansi",
    "polyharmonic_almansi",
    "polyharmonic_split",
    "almansi_reassemble",
    "is_polyharmonic",
    "harmonic_basis",
    "polyharmonic_basis",
]


# --------------------------------------------------------------------------
# Gaussian rational scalar
# --------------------------------------------------------------------------

class QQi:
    """Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("QQi is immutable")

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, (int, Fraction)):
            return QQi(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QQi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero in QQi")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return QQi(1) / self ** (-k)
        out = QQi(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QQi({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re},{self.im})"


def _as_scalar(value, exact: bool):
    """Coerce a user coefficient to the mode's scalar type."""
    if exact:
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Fraction)):
            return QQi(value)
        raise TypeError(f"exact mode needs int/Fraction/QQi, got {type(value).__name__}")
    if isinstance(value, QQi):
        return complex(value)
    return complex(value)


# --------------------------------------------------------------------------
# sparse multivariate polynomials
# --------------------------------------------------------------------------

def _term_order(item):
    exps, _ = item
    return (-sum(exps), exps)


class MultiPoly:
    """Sparse polynomial in n variables, exact (QQi) or numeric (complex)."""

    __slots__ = ("n", "exact", "terms")

    def __init__(self, n: int, terms=None, exact: bool = True):
        if n < 2:
            raise ValueError("n must be >= 2")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for n={n}")
            c = _as_scalar(c, exact)
            if (c if exact else c != 0):
                clean[exps] = clean.get(exps, _as_scalar(0, exact)) + c
        clean = {e: c for e, c in clean.items() if (c if exact else c != 0)}
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exact", bool(exact))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "MultiPoly":
        return cls(n, {}, exact)

    @classmethod
    def constant(cls, n: int, c, exact: bool = True) -> "MultiPoly":
        return cls(n, {(0,) * n: c}, exact)

    @classmethod
    def variable(cls, n: int, i: int, exact: bool = True) -> "MultiPoly":
        if not 0 <= i < n:
            raise ValueError("variable index out of range")
        exps = [0] * n
        exps[i] = 1
        return cls(n, {tuple(exps): 1 if exact else 1.0}, exact)

    @classmethod
    def monomial(cls, n: int, exps, c=1, exact: bool = True) -> "MultiPoly":
        return cls(n, {tuple(exps): c}, exact)

    @classmethod
    def radial_square(cls, n: int, exact: bool = True) -> "MultiPoly":
        """|x|^2 = x1^2 + ... + xn^2 (as a bilinear square of real x)."""
        terms = {}
        for i in range(n):
            exps = [0] * n
            exps[i] = 2
            terms[tuple(exps)] = 1 if exact else 1.0
        return cls(n, terms, exact)

    # -- ring operations ---------------------------------------------------

    def _check_mode(self, other: "MultiPoly"):
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        if self.exact != other.exact:
            raise ValueError("cannot mix exact and numeric polynomials; "
                             "convert with to_numeric()")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_mode(other)
        terms = dict(self.terms)
        zero = _as_scalar(0, self.exact)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, zero) + c
        return MultiPoly(self.n, terms, self.exact)

    def __neg__(self):
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()}, self.exact)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_mode(other)
            terms = {}
            zero = _as_scalar(0, self.exact)
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, zero) + c1 * c2
            return MultiPoly(self.n, terms, self.exact)
        c = _as_scalar(other, self.exact)
        return MultiPoly(self.n, {e: v * c for e, v in self.terms.items()}, self.exact)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = MultiPoly.constant(self.n, 1 if self.exact else 1.0, self.exact)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.n == other.n and self.exact == other.exact
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.exact, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------

    def laplacian(self) -> "MultiPoly":
        """Sum of second partials; degree drops by 2."""
        terms = {}
        zero = _as_scalar(0, self.exact)
        for exps, c in self.terms.items():
            for i, e in enumerate(exps):
                if e >= 2:
                    new = list(exps)
                    new[i] = e - 2
                    key = tuple(new)
                    terms[key] = terms.get(key, zero) + c * (e * (e - 1))
        return MultiPoly(self.n, terms, self.exact)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict:
        """Map degree -> homogeneous part (only nonzero parts appear)."""
        parts = {}
        for exps, c in self.terms.items():
            parts.setdefault(sum(exps), {})[exps] = c
        return {d: MultiPoly(self.n, t, self.exact)
                for d, t in sorted(parts.items())}

    def coefficient_scale(self) -> float:
        """Largest coefficient modulus (0.0 for the zero polynomial)."""
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def to_numeric(self) -> "MultiPoly":
        if not self.exact:
            return self
        return MultiPoly(self.n, {e: complex(c) for e, c in self.terms.items()},
                         exact=False)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point) -> complex:
        """Value at a point (complex sequence or RotatedVector)."""
        if isinstance(point, RotatedVector):
            if point.n != self.n:
                raise ValueError("dimension mismatch")
            return complex(self.eval_at(point.coords[None, :],
                                        phase=np.exp(1j * point.angle))[0])
        z = np.asarray(point, dtype=complex)
        if z.shape != (self.n,):
            raise ValueError("dimension mismatch")
        return complex(self.eval_at(z[None, :])[0])

    def eval_at(self, points, phase=1.0) -> np.ndarray:
        """Values q(phase * points) for an (R, n) array of points.

        ``phase`` is a complex scalar multiplying every point; it enters each
        term as phase**degree, which keeps rotated-point evaluation free of
        unnecessary complex coordinate arithmetic when points are real.
        """
        pts = np.asarray(points)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError("points must have shape (R, n)")
        out = np.zeros(pts.shape[0], dtype=complex)
        phase = complex(phase)
        for exps, c in sorted(self.terms.items(), key=_term_order):
            mono = np.ones(pts.shape[0], dtype=pts.dtype)
            for i, e in enumerate(exps):
                if e:
                    mono = mono * pts[:, i] ** e
            out += (complex(c) * phase ** sum(exps)) * mono
        return out

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), key=_term_order):
            cs = _coeff_to_text(c, self.exact)
            factors = " ".join(f"x{i + 1}^{e}" for i, e in enumerate(exps) if e)
            parts.append(f"{cs} * {factors}" if factors else cs)
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, n: int | None = None,
                  exact: bool = True) -> "MultiPoly":
        return _parse_poly(text, n, exact)

    def __repr__(self):
        mode = "exact" if self.exact else "numeric"
        return f"MultiPoly(n={self.n}, {mode}, {self.to_text()!r})"


# --------------------------------------------------------------------------
# text format helpers
# --------------------------------------------------------------------------

def _coeff_to_text(c, exact: bool) -> str:
    if exact:
        return str(c)
    if c.imag == 0.0:
        return repr(c.real)
    return f"({c.real!r},{c.imag!r})"


_TOKEN = _re.compile(r"""
      (?P<var>x\d+)
    | (?P<num>\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
    | (?P<op>[()^*+,-])
    | (?P<ws>\s+)
""", _re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"polynomial text: bad character at position {pos}: "
                             f"{text[pos:pos + 10]!r}")
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, exact: bool):
        self.toks = tokens
        self.i = 0
        self.exact = exact

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val = self.next()
        if val != value:
            raise ValueError(f"polynomial text: expected {value!r}, got {val!r}")

    def number(self, allow_sign=True):
        sign = 1
        while allow_sign and self.peek()[1] in ("+", "-"):
            if self.next()[1] == "-":
                sign = -sign
        kind, val = self.next()
        if kind != "num":
            raise ValueError(f"polynomial text: expected a number, got {val!r}")
        if self.exact:
            return sign * Fraction(val)
        return sign * float(Fraction(val) if "/" in val else val)

    def coefficient(self):
        if self.peek()[1] == "(":
            self.next()
            re_part = self.number()
            self.expect(",")
            im_part = self.number()
            self.expect(")")
            if self.exact:
                return QQi(re_part, im_part)
            return complex(re_part, im_part)
        value = self.number(allow_sign=False)
        return QQi(value) if self.exact else complex(value)

    def term(self):
        coeff = None
        if self.peek()[0] == "num" or self.peek()[1] == "(":
            coeff = self.coefficient()
            if self.peek()[1] == "*":
                self.next()
        factors = {}
        while self.peek()[0] == "var":
            _, name = self.next()
            idx = int(name[1:])
            if idx < 1:
                raise ValueError(f"polynomial text: bad variable {name!r}")
            power = 1
            if self.peek()[1] == "^":
                self.next()
                kind, val = self.next()
                if kind != "num" or not val.isdigit():
                    raise ValueError(f"polynomial text: bad exponent {val!r}")
                power = int(val)
            factors[idx - 1] = factors.get(idx - 1, 0) + power
        if coeff is None:
            if not factors:
                raise ValueError("polynomial text: empty term")
            coeff = QQi(1) if self.exact else 1.0 + 0j
        return coeff, factors


def _parse_poly(text: str, n: int | None, exact: bool) -> MultiPoly:
    toks = _tokenize(text)
    if not toks:
        raise ValueError("polynomial text: empty input")
    parser = _Parser(toks, exact)
    raw = []  # (coeff, factor-dict) pairs with signs folded in
    sign = 1
    while parser.peek()[1] in ("+", "-"):
        if parser.next()[1] == "-":
            sign = -sign
    while True:
        coeff, factors = parser.term()
        raw.append((coeff * sign if exact else coeff * sign, factors))
        kind, val = parser.peek()
        if kind is None:
            break
        if val not in ("+", "-"):
            raise ValueError(f"polynomial text: expected + or -, got {val!r}")
        sign = 1
        while parser.peek()[1] in ("+", "-"):
            if parser.next()[1] == "-":
                sign = -sign
    max_idx = max((max(f, default=-1) for _, f in raw), default=-1)
    dim = n if n is not None else max(max_idx + 1, 2)
    if max_idx + 1 > dim:
        raise ValueError(f"polynomial text: variable x{max_idx + 1} exceeds n={dim}")
    terms = {}
    zero = _as_scalar(0, exact)
    for coeff, factors in raw:
        exps = [0] * dim
        for i, e in factors.items():
            exps[i] = e
        key = tuple(exps)
        terms[key] = terms.get(key, zero) + coeff
    poly = MultiPoly(dim, terms, exact)
    return poly


# --------------------------------------------------------------------------
# dimension formulas
# --------------------------------------------------------------------------

def dim_P(n: int, m: int) -> int:
    """Dimension of homogeneous degree-m polynomials in n variables."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if m < 0:
        return 0
    return math.comb(n + m - 1, n - 1)


def dim_H(n: int, m: int) -> int:
    """Dimension of degree-m harmonic homogeneous polynomials."""
    if m < 0:
        return 0
    return dim_P(n, m) - dim_P(n, m - 2)


def dim_Hp(n: int, m: int, p: int) -> int:
    """Dimension of degree-m polyharmonic-of-order-p homogeneous polynomials."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if m < 0:
        return 0
    return dim_P(n, m) - dim_P(n, m - 2 * p)


# --------------------------------------------------------------------------
# exact linear algebra (small dense systems over QQi)
# --------------------------------------------------------------------------

def _monomials(n: int, m: int) -> list:
    """All exponent tuples of total degree m, graded-lex order."""
    if m < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), m, n)
    return out


def _solve_exact(matrix, rhs):
    """Solve a square QQi system by Gaussian elimination, first-nonzero pivot."""
    size = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ArithmeticError("singular system in exact solve")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = QQi(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


# --------------------------------------------------------------------------
# Almansi decompositions
# --------------------------------------------------------------------------

def _require_exact_homogeneous(q: MultiPoly, what: str):
    if not q.exact:
        raise ValueError(f"{what} requires an exact-mode polynomial")
    if not q.is_homogeneous():
        raise ValueError(f"{what} requires a homogeneous polynomial")


def harmonic_almansi(q: MultiPoly) -> list:
    """Components [u_m, u_{m-2}, ...] with q = sum_k |x|^{2k} u_{m-2k}.

    Exact and unique; zero components are kept so the k-th entry always has
    degree m - 2k.  The zero polynomial decomposes as [].
    """
    _require_exact_homogeneous(q, "harmonic_almansi")
    if q.is_zero():
        return []
    m = q.degree()
    components = []
    r2 = MultiPoly.radial_square(q.n)
    current = q
    for k in range((m // 2) + 1):
        deg = m - 2 * k
        lap = current.laplacian()
        if lap.is_zero() or deg <= 1:
            components.append(current)
            current = MultiPoly.zero(q.n)
            # remaining components are zero; pad below
            for dd in range(deg - 2, -1, -2):
                components.append(MultiPoly.zero(q.n))
            break
        # solve Delta(|x|^2 r) = Delta(current) for r in P_{deg-2}
        basis = _monomials(q.n, deg - 2)
        index = {e: i for i, e in enumerate(basis)}
        size = len(basis)
        matrix = [[QQi(0)] * size for _ in range(size)]
        for col, exps in enumerate(basis):
            image = (r2 * MultiPoly.monomial(q.n, exps)).laplacian()
            for e, c in image.terms.items():
                matrix[index[e]][col] = c
        rhs = [QQi(0)] * size
        for e, c in lap.terms.items():
            rhs[index[e]] = c
        sol = _solve_exact(matrix, rhs)
        r = MultiPoly(q.n, {e: c for e, c in zip(basis, sol)})
        components.append(current - r2 * r)
        current = r
    return components


def almansi_reassemble(components: list, n: int, p: int = 1) -> MultiPoly:
    """sum_k |x|^{2kp} * components[k]."""
    if p < 1:
        raise ValueError("p must be >= 1")
    out = MultiPoly.zero(n, exact=all(c.exact for c in components) if components else True)
    r2p = MultiPoly.radial_square(n, out.exact) ** p
    weight = MultiPoly.constant(n, 1 if out.exact else 1.0, out.exact)
    for comp in components:
        out = out + weight * comp
        weight = weight * r2p
    return out


def polyharmonic_almansi(q: MultiPoly, p: int) -> list:
    """Order-p components [q_0, q_1, ...] with q = sum_k |x|^{2kp} q_k.

    Each component satisfies Delta^p q_k = 0; obtained by grouping the
    harmonic ladder in blocks of p.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    _require_exact_homogeneous(q, "polyharmonic_almansi")
    if q.is_zero():
        return []
    ladder = harmonic_almansi(q)
    r2 = MultiPoly.radial_square(q.n)
    groups = []
    for start in range(0, len(ladder), p):
        block = MultiPoly.zero(q.n)
        weight = MultiPoly.constant(q.n, 1)
        for u in ladder[start:start + p]:
            block = block + weight * u
            weight = weight * r2
        groups.append(block)
    return groups


def polyharmonic_split(q: MultiPoly, p: int) -> tuple:
    """One Almansi step at order p: q = h + |x|^{2p} r with Delta^p h = 0."""
    groups = polyharmonic_almansi(q, p)
    if not groups:
        zero = MultiPoly.zero(q.n)
        return zero, zero
    head = groups[0]
    rest = almansi_reassemble(groups[1:], q.n, p)
    return head, rest


def is_polyharmonic(q: MultiPoly, p: int) -> bool:
    """Whether Delta^p q = 0 (exact test, or 1e-9 relative in numeric mode)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    out = q
    for _ in range(p):
        out = out.laplacian()
    if q.exact:
        return out.is_zero()
    return out.coefficient_scale() <= 1e-9 * max(1.0, q.coefficient_scale())


# --------------------------------------------------------------------------
# harmonic bases
# --------------------------------------------------------------------------

def _nullspace_basis(n: int, m: int, p: int) -> list:
    """Exact basis of ker(Delta^p) on P_m, deterministic RREF construction."""
    cols = _monomials(n, m)
    rows = _monomials(n, m - 2 * p)
    row_index = {e: i for i, e in enumerate(rows)}
    matrix = []
    for exps in cols:
        mono = MultiPoly.monomial(n, exps)
        for _ in range(p):
            mono = mono.laplacian()
        column = [Fraction(0)] * len(rows)
        for e, c in mono.terms.items():
            column[row_index[e]] = c.re  # Laplacian of real monomial is real
        matrix.append(column)
    # RREF of the (rows x cols) map, tracking pivot columns
    nrows, ncols = len(rows), len(cols)
    aug = [[matrix[c][r] for c in range(ncols)] for r in range(nrows)]
    pivots = []
    lead = 0
    for col in range(ncols):
        pivot = next((r for r in range(lead, nrows) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[lead], aug[pivot] = aug[pivot], aug[lead]
        inv = 1 / aug[lead][col]
        aug[lead] = [v * inv for v in aug[lead]]
        for r in range(nrows):
            if r != lead and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[lead])]
        pivots.append(col)
        lead += 1
        if lead == nrows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for prow, pcol in enumerate(pivots):
            if aug[prow][free]:
                vec[pcol] = -aug[prow][free]
        terms = {cols[i]: QQi(v) for i, v in vec.items() if v}
        basis.append(MultiPoly(n, terms))
    return basis


def polyharmonic_basis(n: int, m: int, p: int) -> list:
    """Exact basis of H_m^p: homogeneous degree-m polynomials with
    Delta^p = 0, in deterministic graded-lex order.  dim = dim_Hp(n, m, p)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if m < 0:
        raise ValueError("m must be >= 0")
    if p < 1:
        raise ValueError("p must be >= 1")
    return _nullspace_basis(n, m, p)


def harmonic_basis(n: int, m: int, orthonormal: bool = False,
                   rule=None) -> list:
    """Basis of the degree-m harmonic homogeneous polynomials.

    The raw basis is exact (rational coefficients) and deterministic, built
    from the reduced row echelon form of the Laplacian in graded-lex monomial
    order.  With ``orthonormal=True`` the basis is Gram-Schmidt orthonormalized
    under the normalized surface inner product on the unit sphere, realized by
    a quadrature rule of exactness >= 2m (supplied or auto-built; only n = 2, 3
    carry deterministic rules).  Orthonormalized output is numeric mode.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    raw = _nullspace_basis(n, m, 1)
    if not orthonormal:
        return raw
    from . import quadrature as quad

    if rule is None:
        if n not in (2, 3):
            raise ValueError("orthonormalization needs an explicit rule for n >= 4")
        rule = quad.sphere_rule(n, quad.resolution_for_exactness(n, 2 * m))
    if rule.exactness < 2 * m:
        raise ValueError("rule exactness must cover degree 2m")
    values = [b.eval_at(rule.nodes).astype(complex) for b in raw]
    ortho_vals = []
    ortho_polys = []
    numeric = [b.to_numeric() for b in raw]
    for vec, poly in zip(values, numeric):
        v, q = vec, poly
        for ov, oq in zip(ortho_vals, ortho_polys):
            coef = quad.weighted_dot(rule, v, ov)
            v = v - coef * ov
            q = q - coef * oq
        norm = math.sqrt(abs(quad.weighted_dot(rule, v, v)))
        if norm < 1e-12:
            raise ArithmeticError("rank collapse during orthonormalization")
        ortho_vals.append(v / norm)
        ortho_polys.append(q * (1.0 / norm))
    return ortho_polys
