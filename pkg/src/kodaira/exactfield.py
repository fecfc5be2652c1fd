"""Exact scalar arithmetic over rings of purely imaginary symbols.

Every scalar in this package is a finite rational combination of monomials in
declared symbols.  Two kinds of symbols exist:

* quadratic ``s`` with ``s**2 == -d`` for a squarefree positive integer ``d``
  (the imaginary unit ``i`` is the case ``d == 1`` and is always present);
* transcendental ``t`` with no polynomial relation at all, modelling numbers
  like pi*i whose only usable property is independence.

All symbols are purely imaginary by convention, so conjugation negates each
symbol and a monomial is real exactly when its total degree is even.  This
keeps "imaginary part" questions decidable without ever touching floats:
``Im(tau) > 0`` becomes a sign check on one rational coefficient.

The module also provides lattice utilities for Lambda_tau = Z*tau + Z
(decomposition, the skew form D_tau, membership) and an integer Smith normal
form, which the group-theoretic modules use for abelian invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor


class DomainError(Exception):
    """Base class for all mathematical-domain failures in this package."""


class NotInvertible(DomainError):
    """Division by a value with no inverse in the declared ring."""


class NotInSpan(DomainError):
    """Value does not lie in Q*tau + Q."""


class NotCommensurable(DomainError):
    """Imaginary part is not a rational multiple of Im(tau)."""


def _is_squarefree(n):
    if n <= 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class SymbolDecl:
    """A declared generator of the ring.

    ``d`` set means quadratic (the symbol squares to -d); ``d = None`` means
    transcendental.  ``approx`` optionally records the magnitude of the
    symbol's imaginary part for display-only numeric embeddings (sqrt(d) is
    used automatically for quadratic symbols, so ``approx`` only matters for
    transcendental ones, e.g. 3.14159... for a symbol standing for pi*i).
    """

    name: str
    d: int | None = None
    approx: float | None = None

    def __post_init__(self):
        if self.d is not None and not _is_squarefree(self.d):
            raise ValueError(f"quadratic symbol {self.name!r} needs squarefree d > 0, got {self.d}")

    @property
    def is_quadratic(self):
        return self.d is not None


# A monomial is a sorted tuple of (symbol_index, exponent) pairs with nonzero
# exponents; quadratic symbols never exceed exponent 1 after reduction, while
# transcendental symbols may carry negative exponents (the ring is Laurent in
# them, which is what makes quotients like 1/Im(tau) exist exactly).
ONE_MONO = ()


class NumberRing:
    """The ring generated over Q by a list of purely imaginary symbols.

    The imaginary unit is prepended automatically when not declared:

    >>> R = NumberRing([SymbolDecl("t")])
    >>> [s.name for s in R.symbols]
    ['i', 't']
    """

    def __init__(self, symbols=()):
        decls = list(symbols)
        if not any(s.name == "i" for s in decls):
            decls.insert(0, SymbolDecl("i", d=1))
        names = [s.name for s in decls]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        for s in decls:
            if s.name == "i" and s.d != 1:
                raise ValueError("the symbol 'i' is reserved for the imaginary unit")
        self.symbols = tuple(decls)
        self._index = {s.name: k for k, s in enumerate(self.symbols)}
        self._check_independence()

    def _check_independence(self):
        # The fields Q(sqrt(-d_1), ..., sqrt(-d_k)) are linearly disjoint iff
        # no even-sized subset has a perfect-square product of d's (odd-sized
        # products are automatically fine: (-1)^odd * positive is no square).
        quads = [s.d for s in self.symbols if s.is_quadratic]
        for mask in range(1, 1 << len(quads)):
            if bin(mask).count("1") % 2:
                continue
            prod = 1
            for j, d in enumerate(quads):
                if mask >> j & 1:
                    prod *= d
            r = int(prod**0.5)
            while r * r < prod:
                r += 1
            if r * r == prod:
                raise ValueError(f"dependent quadratic symbols: product of d's {prod} is a square")

    def __eq__(self, other):
        return isinstance(other, NumberRing) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"NumberRing({', '.join(s.name for s in self.symbols)})"

    def symbol(self, name):
        """The symbol with this name, as a value."""
        k = self._index[name]
        return NumberValue(self, {((k, 1),): Fraction(1)})

    def value(self, x):
        """Coerce a rational (or pass through a value of this ring)."""
        if isinstance(x, NumberValue):
            if x.ring != self:
                raise ValueError("ring mismatch")
            return x
        return NumberValue(self, {ONE_MONO: Fraction(x)} if x else {})

    def zero(self):
        return NumberValue(self, {})

    def one(self):
        return self.value(1)

    def i(self):
        return self.symbol("i")

    def _mul_mono(self, m1, m2):
        """Product of two monomials as (rational factor, reduced monomial)."""
        exps = dict(m1)
        for k, e in m2:
            exps[k] = exps.get(k, 0) + e
        factor = Fraction(1)
        out = []
        for k in sorted(exps):
            e = exps[k]
            if not e:
                continue
            s = self.symbols[k]
            if s.is_quadratic:
                # s^2 = -d, and exponents of quadratic symbols are at most 1
                # in reduced monomials, so e here is at most 2.
                assert e <= 2
                if e == 2:
                    factor *= -s.d
                    continue
            out.append((k, e))
        return factor, tuple(out)


def _mono_degree(mono):
    return sum(e for _, e in mono)


class NumberValue:
    """An element of a NumberRing: a finite map monomial -> Fraction.

    Supports the usual operators; ``/`` is restricted division (see divide).
    Instances are immutable and hashable.
    """

    __slots__ = ("ring", "_c", "_key_cache")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self._c = {m: q for m, q in coeffs.items() if q}
        self._key_cache = None

    def _key(self):
        if self._key_cache is None:
            self._key_cache = tuple(sorted(self._c.items()))
        return self._key_cache

    def coeff(self, mono):
        return self._c.get(mono, Fraction(0))

    def monomials(self):
        return sorted(self._c)

    def items(self):
        return self._key()

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.value(other)
        if not isinstance(other, NumberValue):
            return NotImplemented
        return self.ring == other.ring and self._c == other._c

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.value(other)
        elif not isinstance(other, NumberValue):
            return NotImplemented
        out = dict(self._c)
        for m, q in other._c.items():
            out[m] = out.get(m, Fraction(0)) + q
        return NumberValue(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NumberValue(self.ring, {m: -q for m, q in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.value(other)
        elif not isinstance(other, NumberValue):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.value(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NumberValue(self.ring, {m: c * q for m, c in self._c.items()})
        if not isinstance(other, NumberValue):
            return NotImplemented
        out = {}
        for m1, q1 in self._c.items():
            for m2, q2 in other._c.items():
                f, m = self.ring._mul_mono(m1, m2)
                out[m] = out.get(m, Fraction(0)) + q1 * q2 * f
        return NumberValue(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                raise NotInvertible("division by zero")
            return self * (1 / q)
        return divide(self, other)

    def __pow__(self, n):
        assert n >= 0
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self):
        """The ring involution negating every symbol."""
        return NumberValue(
            self.ring,
            {m: (-q if _mono_degree(m) % 2 else q) for m, q in self._c.items()},
        )

    def is_real(self):
        return all(_mono_degree(m) % 2 == 0 for m in self._c)

    def is_rational(self):
        return set(self._c) <= {ONE_MONO}

    def rational(self):
        """This value as a Fraction; raises NotInSpan when not rational."""
        if not self.is_rational():
            raise NotInSpan(f"{self} is not rational")
        return self._c.get(ONE_MONO, Fraction(0))

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for m, q in self._key():
            word = "*".join(
                self.ring.symbols[k].name + (f"^{e}" if e != 1 else "") for k, e in m
            )
            if not word:
                parts.append(str(q))
            elif q == 1:
                parts.append(word)
            elif q == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{q}*{word}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def divide(x, y):
    """Exact division x/y in the ring, when y is invertible.

    y is invertible when it is a rational multiple of a single monomial
    (transcendental factors invert to negative exponents) or lies in the
    purely quadratic subring (then conjugation passes rationalize the
    denominator).  A transcendental symbol spread across several monomials
    has no inverse here.

    >>> R = NumberRing([])
    >>> divide(R.one(), R.i())
    -i
    """
    ring = x.ring
    y = ring.value(y)
    if not y:
        raise NotInvertible("division by zero")
    if len(y._c) == 1:
        ((mono, q),) = y._c.items()
        quad_part, transc_part = [], []
        for k, e in mono:
            (quad_part if ring.symbols[k].is_quadratic else transc_part).append((k, e))
        out = x * (1 / q)
        for k, e in quad_part:
            # 1/s = -s/d since s^2 = -d
            s = NumberValue(ring, {((k, 1),): Fraction(-1, ring.symbols[k].d)})
            for _ in range(e):
                out = out * s
        if transc_part:
            # monomial-by-monomial; exponents may go negative (Laurent)
            need = dict(transc_part)
            quo = {}
            for m, c in out._c.items():
                exps = dict(m)
                for k, e in need.items():
                    exps[k] = exps.get(k, 0) - e
                m2 = tuple((k, e) for k, e in sorted(exps.items()) if e)
                quo[m2] = quo.get(m2, Fraction(0)) + c
            out = NumberValue(ring, quo)
        return out
    quad_only = all(
        all(ring.symbols[k].is_quadratic for k, _ in m) for m in y._c
    )
    if not quad_only:
        raise NotInvertible(f"{y} is not invertible in this ring")
    # Rationalize one quadratic symbol at a time: multiplying by the value
    # with s negated removes s (the product is fixed by the flip and the
    # flip-invariant monomials have even s-degree, i.e. none).
    num, den = x, y
    while not den.is_rational():
        k = next(k for m in den._c for k, _ in m)
        flip = NumberValue(
            den.ring,
            {m: (-q if dict(m).get(k, 0) % 2 else q) for m, q in den._c.items()},
        )
        num = num * flip
        den = den * flip
        assert all(dict(m).get(k, 0) == 0 for m in den._c)
    return num * (1 / den.rational())


class Tau:
    """A point of the upper half-plane, represented exactly.

    The defining constraint: value - conjugate(value) is a positive rational
    multiple of a single declared symbol.  Since all symbols are positively
    oriented imaginaries, that makes Im(tau) > 0 a stored fact.
    """

    __slots__ = ("value", "_im_index", "_im_coeff")

    def __init__(self, value):
        if isinstance(value, Tau):
            value = value.value
        w = value - value.conjugate()
        monos = w.monomials()
        ok = len(monos) == 1 and len(monos[0]) == 1 and monos[0][0][1] == 1
        if not ok or w.coeff(monos[0]) <= 0:
            raise ValueError(f"not a valid upper-half-plane point: {value}")
        self.value = value
        self._im_index = monos[0][0][0]
        self._im_coeff = w.coeff(monos[0]) / 2  # coefficient of the symbol in tau

    @property
    def ring(self):
        return self.value.ring

    def conjugate(self):
        return self.value.conjugate()

    def imag_symbol_index(self):
        """Index of the symbol carrying Im(tau)."""
        return self._im_index

    def imag_coeff(self):
        """The positive rational q with tau - conj(tau) = 2*q*symbol."""
        return self._im_coeff

    def is_quadratic_mode(self):
        """True iff tau = q0 + q1*s with s a quadratic symbol."""
        if not self.ring.symbols[self._im_index].is_quadratic:
            return False
        return set(self.value.monomials()) <= {ONE_MONO, ((self._im_index, 1),)}

    def __eq__(self, other):
        return isinstance(other, Tau) and self.value == other.value

    def __hash__(self):
        return hash(("Tau", self.value))

    def __repr__(self):
        return f"Tau({self.value})"


@dataclass(frozen=True)
class LatticeElement:
    """a*tau + b with integer a, b: an element of Lambda_tau."""

    a: int
    b: int
    tau: Tau

    def value(self):
        return self.tau.value * self.a + self.tau.ring.value(self.b)


def decompose(x, tau):
    """Write x = a*tau + b with rational a, b.

    >>> R = NumberRing([])
    >>> t = Tau(R.i() + 1)
    >>> decompose(2 * t.value - 3, t)
    (Fraction(2, 1), Fraction(-3, 1))
    """
    v = tau.value
    x = v.ring.value(x)
    a = Fraction(0)
    for m in v.monomials():
        if m != ONE_MONO:
            a = x.coeff(m) / v.coeff(m)
            break
    b = x.coeff(ONE_MONO) - a * v.coeff(ONE_MONO)
    if x != v * a + b:
        raise NotInSpan(f"{x} is not in Q*tau + Q for tau = {v}")
    return a, b


def d_form(tau, x, y):
    """The skew form D_tau with D_tau(tau, 1) = 1: for x = a*tau + b and
    y = a'*tau + b' this is a*b' - b*a'."""
    a, b = decompose(x, tau)
    a2, b2 = decompose(y, tau)
    return a * b2 - b * a2


def in_lattice(x, tau):
    """Membership in Lambda_tau = Z*tau + Z (NotInSpan counts as False)."""
    try:
        a, b = decompose(x, tau)
    except NotInSpan:
        return False
    return a.denominator == 1 and b.denominator == 1


def lattice_coords(x, tau):
    """Integer coordinates (a, b) of a lattice member x = a*tau + b."""
    a, b = decompose(x, tau)
    if a.denominator != 1 or b.denominator != 1:
        raise NotInSpan(f"{x} is not in the lattice of {tau}")
    return int(a), int(b)


def mod_lattice(x, tau):
    """Canonical representative of x modulo Lambda_tau.

    Reduces the tau-coordinate and the rational part into [0, 1) by
    subtracting lattice elements; any components outside Q*tau + Q ride along
    untouched, so the map is constant on cosets for arbitrary ring values.
    """
    x = tau.ring.value(x)
    im_mono = ((tau.imag_symbol_index(), 1),)
    a = x.coeff(im_mono) / tau.imag_coeff()
    out = x - tau.value * floor(a)
    return out - floor(out.coeff(ONE_MONO))


def im_ratio(x, tau):
    """Im(x)/Im(tau) as an exact rational.

    Raises NotCommensurable when x - conj(x) is not a rational multiple of
    tau - conj(tau).
    """
    x = tau.ring.value(x)
    n = x - x.conjugate()
    if not n:
        return Fraction(0)
    d = tau.value - tau.conjugate()
    mono = d.monomials()[0]
    r = n.coeff(mono) / d.coeff(mono)
    if n != d * r:
        raise NotCommensurable(f"Im({x}) is not commensurable with Im({tau.value})")
    return r


def to_payload(x):
    """Serialize a value as [[monomial, "p/q"], ...] with named symbols."""
    out = []
    for m, q in x.items():
        mono = [[x.ring.symbols[k].name, e] for k, e in m]
        out.append([mono, f"{q.numerator}/{q.denominator}"])
    return out


def from_payload(ring, payload):
    """Inverse of to_payload; validates symbol names against the ring."""
    coeffs = {}
    for mono, q in payload:
        m = tuple(sorted((ring._index[name], int(e)) for name, e in mono))
        num, _, den = str(q).partition("/")
        coeffs[m] = Fraction(int(num), int(den) if den else 1)
    total = ring.zero()
    for m, q in coeffs.items():
        total = total + NumberValue(ring, {ONE_MONO: q}) * NumberValue(ring, {m: Fraction(1)})
    return total


def approx_complex(x, symbol_values):
    """Float evaluation of x given a complex number for each symbol index.

    Display-only: decision procedures in this package never call this.
    """
    total = 0j
    for m, q in x.items():
        term = complex(q)
        for k, e in m:
            term *= symbol_values[k] ** e
        total += term
    return total


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Smith normal form over Z.

    Returns (U, D, V) with U*mat*V = D, U and V unimodular, D diagonal with
    d_i dividing d_{i+1} and all d_i >= 0.

    >>> U, D, V = smith_normal_form([[4, 0], [0, 6]])
    >>> [D[0][0], D[1][1]]
    [2, 12]
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    A = [[int(v) for v in row] for row in mat]
    U = _identity(rows)
    V = _identity(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(cols):
            A[i][k] -= q * A[j][k]
        for k in range(rows):
            U[i][k] -= q * U[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(rows):
            A[k][i] -= q * A[k][j]
        for k in range(cols):
            V[k][i] -= q * V[k][j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for k in range(rows):
            A[k][i], A[k][j] = A[k][j], A[k][i]
        for k in range(cols):
            V[k][i], V[k][j] = V[k][j], V[k][i]

    t = 0
    while t < min(rows, cols):
        # pick the nonzero entry of smallest magnitude as pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, rows):
            if A[i][t]:
                q, r = divmod(A[i][t], A[t][t])
                row_op(i, t, q)
                dirty = dirty or r != 0
        for j in range(t + 1, cols):
            if A[t][j]:
                q, r = divmod(A[t][j], A[t][t])
                col_op(j, t, q)
                dirty = dirty or r != 0
        if dirty:
            continue  # smaller remainders appeared; redo this pivot
        # pivot must divide the rest of the submatrix for the chain to work
        stray = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if A[i][j] % A[t][t]:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            row_op(t, stray, -1)  # fold the offending row in and redo
            continue
        if A[t][t] < 0:
            for k in range(cols):
                A[t][k] = -A[t][k]
            for k in range(rows):
                U[t][k] = -U[t][k]
        t += 1
    return U, A, V


def cokernel_invariants(mat, ambient_rank):
    """Invariants (free rank, torsion divisors > 1) of Z^ambient / col(mat).

    ``mat`` has ambient_rank rows; its columns generate the subgroup.
    """
    if not mat or not mat[0]:
        return ambient_rank, []
    _, D, _ = smith_normal_form(mat)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nonzero = [d for d in diag if d]
    torsion = [d for d in nonzero if d > 1]
    return ambient_rank - len(nonzero), torsion
