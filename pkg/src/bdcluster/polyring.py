"""Exact sparse multivariate polynomials over the rationals.

Polynomials live in Q[x[1,1], ..., x[n,n], y[1,1], ..., y[n,n]], the
coordinate ring of one or two n-by-n matrices of indeterminates.  A
polynomial is a map from monomials to nonzero rational coefficients;
the zero polynomial is the empty map.

Monomials are packed into Python integers, one byte per variable, with
the byte for x[1,1] most significant and y[n,n] least significant.
Comparing two packed monomials as integers is then exactly the
lexicographic comparison of exponent vectors in variable order
x[1,1] < x[1,2] < ... < y[n,n] (earlier variables dominate), which is
the monomial order used for leading terms, division, and printing.
Packing also makes monomial multiplication a single integer addition.
Exponents must stay below 128 per variable; nothing in this package
gets anywhere near that.

Coefficients are Python ints whenever the value is integral and
fractions.Fraction otherwise, so arithmetic stays exact throughout.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple, Union

Scalar = Union[int, Fraction]
VarId = Tuple[str, int, int]  # ("x" | "y", row, col), 1-based

_BITS = 8
_DIGIT_MASK = (1 << _BITS) - 1


def _normalize_scalar(c: Scalar) -> Scalar:
    """Collapse integral Fractions to plain ints."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class DivisionByZero(ZeroDivisionError):
    """Raised when the divisor of an exact division is the zero polynomial."""


class NotDivisible(ArithmeticError):
    """Raised when exact division leaves a nonzero remainder."""


class MissingAssignment(LookupError):
    """Raised when evaluation lacks a value for some variable."""

    def __init__(self, missing: Iterable[VarId]):
        self.missing = sorted(missing)
        super().__init__(f"no value assigned to {self.missing}")


class NotConstant(ValueError):
    """Raised when a constant value is requested from a non-constant polynomial."""


class PolyRing:
    """The ring Q[x[i,j], y[i,j] : 1 <= i, j <= n] with a fixed monomial order."""

    def __init__(self, n: int, symbols: Tuple[str, ...] = ("x", "y")):
        if n < 1:
            raise ValueError(f"matrix size must be positive, got {n}")
        self.n = n
        self.symbols = symbols
        self.nvars = len(symbols) * n * n
        # Variable 0 (= x[1,1]) occupies the most significant byte.
        self._shift = {i: (self.nvars - 1 - i) * _BITS for i in range(self.nvars)}
        self._ids: List[VarId] = [
            (s, i, j) for s in symbols for i in range(1, n + 1) for j in range(1, n + 1)
        ]
        self._index = {v: k for k, v in enumerate(self._ids)}
        # High bit of every variable byte; used for the packed divisibility test.
        hi = 0
        for i in range(self.nvars):
            hi |= 0x80 << self._shift[i]
        self._himask = hi
        self.zero = Poly(self, {})
        self.one = Poly(self, {0: 1})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.n == self.n
            and other.symbols == self.symbols
        )

    def __hash__(self):
        return hash((self.n, self.symbols))

    def __repr__(self):
        return f"PolyRing(n={self.n}, symbols={self.symbols})"

    def var_index(self, v: VarId) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"{v} is not a variable of {self!r}") from None

    def var(self, sym: str, i: int, j: int) -> "Poly":
        idx = self.var_index((sym, i, j))
        return Poly(self, {1 << self._shift[idx]: 1})

    def x(self, i: int, j: int) -> "Poly":
        return self.var("x", i, j)

    def y(self, i: int, j: int) -> "Poly":
        return self.var("y", i, j)

    def const(self, c: Scalar) -> "Poly":
        c = _normalize_scalar(c)
        return Poly(self, {0: c} if c else {})

    def monomial_exponents(self, mono: int) -> Dict[VarId, int]:
        """Unpack a monomial key into {variable: exponent}, nonzero entries only."""
        out: Dict[VarId, int] = {}
        if mono:
            raw = mono.to_bytes(self.nvars, "big")
            for i, e in enumerate(raw):
                if e:
                    out[self._ids[i]] = e
        return out


class Poly:
    """Immutable sparse polynomial; do not mutate the underlying dict."""

    __slots__ = ("ring", "_d")

    def __init__(self, ring: PolyRing, terms: Dict[int, Scalar]):
        self.ring = ring
        self._d = terms

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self) -> bool:
        return bool(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def leading_monomial(self) -> int:
        if not self._d:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._d)

    def leading_coefficient(self) -> Scalar:
        return self._d[self.leading_monomial()]

    def total_degree(self) -> int:
        if not self._d:
            return 0
        n = self.ring.nvars
        return max(sum(m.to_bytes(n, "big")) for m in self._d)

    def as_terms(self) -> List[Tuple[Dict[VarId, int], Scalar]]:
        """Terms as (exponent map, coefficient), leading term first."""
        ring = self.ring
        return [
            (ring.monomial_exponents(m), self._d[m])
            for m in sorted(self._d, reverse=True)
        ]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._d == o._d

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self._d.items()})

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._d, o._d
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        get = out.get
        for m, c in b.items():
            v = get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._d)
        get = out.get
        for m, c in o._d.items():
            v = get(m, 0) - c
            if v:
                out[m] = v
            else:
                del out[m]
        return Poly(self.ring, out)

    def __rsub__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = _normalize_scalar(other)
            if not other:
                return self.ring.zero
            return Poly(self.ring, {m: c * other for m, c in self._d.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._d, o._d
        if len(a) < len(b):
            a, b = b, a
        out: Dict[int, Scalar] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                out[k] = get(k, 0) + ca * cb
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return render(self)


def arith(p: Poly, q: Poly, op: str) -> Poly:
    """Combine two polynomials with one of the operators '+', '-', '*'."""
    if op == "+":
        return p + q
    if op == "-":
        return p - q
    if op == "*":
        return p * q
    raise ValueError(f"unknown operator {op!r}")


def partial_derivative(p: Poly, v: VarId) -> Poly:
    ring = p.ring
    shift = ring._shift[ring.var_index(v)]
    out: Dict[int, Scalar] = {}
    for m, c in p._d.items():
        e = (m >> shift) & _DIGIT_MASK
        if e:
            out[m - (1 << shift)] = c * e
    return Poly(ring, out)


def evaluate(p: Poly, assignment: Mapping[VarId, Scalar]) -> Fraction:
    """Evaluate at rational values; every variable occurring in p needs a value."""
    ring = p.ring
    nv = ring.nvars
    used = [False] * nv
    for m in p._d:
        if m:
            for idx, e in enumerate(m.to_bytes(nv, "big")):
                if e:
                    used[idx] = True
    missing = [ring._ids[idx] for idx in range(nv) if used[idx] and ring._ids[idx] not in assignment]
    if missing:
        raise MissingAssignment(missing)
    values = {idx: Fraction(assignment[ring._ids[idx]]) for idx in range(nv) if used[idx]}
    total = Fraction(0)
    for m, c in p._d.items():
        term = Fraction(c)
        if m:
            raw = m.to_bytes(nv, "big")
            for idx, e in enumerate(raw):
                if e:
                    term *= values[idx] ** e
        total += term
    return total


def constant_value(p: Poly) -> Fraction:
    if not p._d:
        return Fraction(0)
    if len(p._d) == 1 and 0 in p._d:
        return Fraction(p._d[0])
    raise NotConstant(f"{p} is not constant")


def _monomial_divides(divisor: int, mono: int, himask: int) -> bool:
    # Bytewise divisor <= mono, checked with one borrow-free subtraction.
    # Valid because every exponent byte stays below 0x80.
    return ((mono | himask) - divisor) & himask == himask


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return p / q when q divides p exactly; raise NotDivisible otherwise.

    Leading-term reduction: repeatedly cancel the remainder's leading
    term against the divisor's.  A max-heap of candidate monomials keeps
    each step cheap; entries whose coefficient has since cancelled are
    skipped lazily.
    """
    if not q._d:
        raise DivisionByZero("division by the zero polynomial")
    if p.ring != q.ring:
        raise ValueError("polynomials belong to different rings")
    if not p._d:
        return p.ring.zero
    himask = p.ring._himask
    qd = q._d
    qlead = max(qd)
    qlc = qd[qlead]
    rem = dict(p._d)
    quot: Dict[int, Scalar] = {}
    heap = [-m for m in rem]
    heapq.heapify(heap)
    while heap:
        m = -heapq.heappop(heap)
        c = rem.get(m)
        if not c:
            continue
        if not _monomial_divides(qlead, m, himask):
            raise NotDivisible(
                f"remainder term of degree profile {p.ring.monomial_exponents(m)} "
                "is not reducible by the divisor's leading term"
            )
        tmono = m - qlead
        tc = _normalize_scalar(Fraction(c, qlc) if isinstance(c, int) and isinstance(qlc, int) else c / qlc)
        quot[tmono] = tc
        for m2, c2 in qd.items():
            k = tmono + m2
            v = rem.get(k, 0) - tc * c2
            if v:
                if k not in rem:
                    heapq.heappush(heap, -k)
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly(p.ring, quot)


def _scalar_str(c: Scalar) -> str:
    return str(c)


def render(p: Poly) -> str:
    """Deterministic text form, terms in decreasing monomial order."""
    if not p._d:
        return "0"
    pieces: List[str] = []
    for m in sorted(p._d, reverse=True):
        c = p._d[m]
        exps = p.ring.monomial_exponents(m)
        factors = []
        for (sym, i, j), e in exps.items():
            name = f"{sym}[{i},{j}]"
            factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        neg = c < 0
        mag = -c if neg else c
        if body and mag == 1:
            term = body
        elif body:
            term = f"{_scalar_str(mag)}*{body}"
        else:
            term = _scalar_str(mag)
        if not pieces:
            pieces.append(f"-{term}" if neg else term)
        else:
            pieces.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(pieces)
