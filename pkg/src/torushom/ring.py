"""Exact graded polynomial arithmetic over Q[t1,...,tr] with deg ti = 2.

Coefficients are `fractions.Fraction` (always in lowest terms, positive
denominator), so every computation in the system is exact.  Monomials are
exponent tuples of length `rank`; the internal degree of a monomial is twice
its exponent sum, and that factor of two is baked in at construction time,
never inferred later.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction
Exponent = tuple  # tuple[int, ...] of length rank

Scalar = Union[int, Fraction]


class RankMismatchError(ValueError):
    """Arithmetic between polynomials over rings of different rank."""


class NotHomogeneousError(ValueError):
    pass


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: degree answer for the zero polynomial (it is homogeneous of any degree)
ANY_DEGREE = _Sentinel("ANY_DEGREE")
#: degree answer for a polynomial mixing distinct degrees
NOT_HOMOGENEOUS = _Sentinel("NOT_HOMOGENEOUS")


def mono_degree(exp: Exponent) -> int:
    return 2 * sum(exp)


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponent, b: Exponent) -> bool:
    """Whether t^a divides t^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exponent, a: Exponent) -> Exponent:
    """Exponent of t^b / t^a; requires divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class GradedPoly:
    """Multivariate polynomial with exact rational coefficients.

    Immutable by convention: no method mutates `terms` after construction,
    so values can be shared freely between threads and caches.
    """

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.rank = rank
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != rank:
                    raise RankMismatchError(
                        f"exponent {exp} has length {len(exp)}, expected {rank}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    # ---------- constructors ----------

    @classmethod
    def zero(cls, rank: int) -> "GradedPoly":
        return cls(rank)

    @classmethod
    def constant(cls, rank: int, c: Scalar) -> "GradedPoly":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def one(cls, rank: int) -> "GradedPoly":
        return cls.constant(rank, 1)

    @classmethod
    def variable(cls, rank: int, i: int) -> "GradedPoly":
        """The generator t_{i+1} (0-based index i), internal degree 2."""
        if not 0 <= i < rank:
            raise ValueError(f"variable index {i} out of range for rank {rank}")
        exp = tuple(1 if j == i else 0 for j in range(rank))
        return cls(rank, {exp: 1})

    @classmethod
    def monomial(cls, rank: int, exp: Iterable[int], coeff: Scalar = 1) -> "GradedPoly":
        return cls(rank, {tuple(exp): coeff})

    # ---------- queries ----------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((0,) * self.rank, Fraction(0))

    def degree(self):
        """Common internal degree, or ANY_DEGREE / NOT_HOMOGENEOUS."""
        if not self.terms:
            return ANY_DEGREE
        degs = {mono_degree(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return NOT_HOMOGENEOUS

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        d = self.degree()
        if d is NOT_HOMOGENEOUS:
            return False
        if degree is None or d is ANY_DEGREE:
            return True
        return d == degree

    def homogeneous_degree(self) -> Optional[int]:
        """Degree of a homogeneous polynomial; None for zero; raises otherwise."""
        d = self.degree()
        if d is NOT_HOMOGENEOUS:
            raise NotHomogeneousError(f"{self} is not homogeneous")
        return None if d is ANY_DEGREE else d

    # ---------- arithmetic ----------

    def _check_rank(self, other: "GradedPoly"):
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check_rank(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return GradedPoly(self.rank, terms)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        self._check_rank(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) - c
        return GradedPoly(self.rank, terms)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.rank, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_rank(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return GradedPoly(self.rank, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "GradedPoly":
        c = Fraction(c)
        if not c:
            return GradedPoly.zero(self.rank)
        return GradedPoly(self.rank, {e: c * v for e, v in self.terms.items()})

    def mono_shift(self, exp: Exponent) -> "GradedPoly":
        """Multiply by the monomial t^exp."""
        return GradedPoly(self.rank, {mono_mul(e, exp): c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "GradedPoly":
        if n < 0:
            raise ValueError("negative power")
        out = GradedPoly.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, point) -> Fraction:
        """Exact evaluation at a rational point; independent check for identities."""
        point = [Fraction(x) for x in point]
        if len(point) != self.rank:
            raise RankMismatchError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= x ** k
            total += v
        return total

    # ---------- ordering hooks ----------

    def leading_term(self, order: "MonomialOrder"):
        """(exponent, coefficient) of the order-largest monomial; None if zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    # ---------- comparisons / display ----------

    def __eq__(self, other):
        return (isinstance(other, GradedPoly) and self.rank == other.rank
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"GradedPoly({self.rank}, {format_poly(self)!r})"


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials, compatible with multiplication.

    `key` maps an exponent tuple to a sort key; larger key = larger monomial.
    """

    kind: str  # "grevlex" or "lex"

    def key(self, exp: Exponent):
        if self.kind == "grevlex":
            # Largest degree first; ties broken so that the monomial whose
            # last non-zero entry of the difference is negative wins.
            return (sum(exp), tuple(-e for e in reversed(exp)))
        if self.kind == "lex":
            return tuple(exp)
        raise ValueError(f"unknown order kind {self.kind}")


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class ModuleOrder:
    """Order on free-module monomials (position, exponent).

    position-over-term compares positions first (earlier in the priority
    list = larger), then monomials; term-over-position the other way round.
    The default natural priority makes lower positions dominate, which is
    exactly the elimination property used by the syzygy computations.
    """

    term_order: MonomialOrder = GREVLEX
    scheme: str = "position-over-term"
    priority: Optional[tuple] = None  # position ranks, earlier = larger

    def _pos_key(self, pos: int):
        if self.priority is None:
            return -pos
        return -self.priority.index(pos)

    def key(self, mono):
        pos, exp = mono
        if self.scheme == "position-over-term":
            return (self._pos_key(pos), self.term_order.key(exp))
        if self.scheme == "term-over-position":
            return (self.term_order.key(exp), self._pos_key(pos))
        raise ValueError(f"unknown scheme {self.scheme}")


POT_GREVLEX = ModuleOrder()


def poly_degree(p: GradedPoly):
    """Spec-facing degree query; returns int, ANY_DEGREE or NOT_HOMOGENEOUS."""
    return p.degree()


def poly_divmod(p: GradedPoly, divisors, order: MonomialOrder = GREVLEX):
    """Multivariate division: p = sum(q_i * d_i) + rem.

    No monomial of the remainder is divisible by any divisor's leading
    monomial.  Standard division algorithm; exact in Q.
    """
    divisors = list(divisors)
    if any(d.is_zero() for d in divisors):
        raise ZeroDivisionError("zero divisor in division")
    rank = p.rank
    leads = [d.leading_term(order) for d in divisors]
    quots = [GradedPoly.zero(rank) for _ in divisors]
    rem = GradedPoly.zero(rank)
    work = p
    while not work.is_zero():
        e, c = work.leading_term(order)
        for i, (le, lc) in enumerate(leads):
            if mono_divides(le, e):
                factor = GradedPoly.monomial(rank, mono_div(e, le), c / lc)
                quots[i] = quots[i] + factor
                work = work - factor * divisors[i]
                break
        else:
            t = GradedPoly.monomial(rank, e, c)
            rem = rem + t
            work = work - t
    return quots, rem


# ---------- text form ----------
#
# Fixture grammar: sum of terms `c*t1^a1*...*tr^ar`, `c` a rational literal
# `p/q`; unit coefficients and zero exponents may be omitted.


def format_poly(p: GradedPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms, key=GREVLEX.key, reverse=True):
        c = p.terms[exp]
        factors = []
        for i, e in enumerate(exp):
            if e == 1:
                factors.append(f"t{i + 1}")
            elif e > 1:
                factors.append(f"t{i + 1}^{e}")
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, rank: int) -> GradedPoly:
    """Parse the fixture text form of a polynomial."""
    s = text.replace(" ", "")
    if not s:
        raise PolyParseError("empty polynomial string")
    terms = {}
    i = 0
    n = len(s)
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise PolyParseError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exp = [0] * rank
        saw_factor = False
        while True:
            if i < n and s[i].isdigit():
                j = i
                while j < n and s[j].isdigit():
                    j += 1
                num = int(s[i:j])
                i = j
                if i < n and s[i] == "/":
                    i += 1
                    j = i
                    while j < n and s[j].isdigit():
                        j += 1
                    if j == i:
                        raise PolyParseError(f"bad rational in {text!r}")
                    coeff *= Fraction(num, int(s[i:j]))
                    i = j
                else:
                    coeff *= num
                saw_factor = True
            elif i < n and s[i] == "t":
                j = i + 1
                while j < n and s[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise PolyParseError(f"variable needs an index in {text!r}")
                vi = int(s[i + 1:j]) - 1
                if not 0 <= vi < rank:
                    raise PolyParseError(
                        f"variable t{vi + 1} out of range for rank {rank} in {text!r}")
                i = j
                power = 1
                if i < n and s[i] == "^":
                    i += 1
                    j = i
                    while j < n and s[j].isdigit():
                        j += 1
                    if j == i:
                        raise PolyParseError(f"bad exponent in {text!r}")
                    power = int(s[i:j])
                    i = j
                exp[vi] += power
                saw_factor = True
            else:
                raise PolyParseError(f"unexpected character at {s[i:]!r} in {text!r}")
            if i < n and s[i] == "*":
                i += 1
                continue
            break
        if not saw_factor:
            raise PolyParseError(f"empty term in {text!r}")
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    return GradedPoly(rank, terms)
