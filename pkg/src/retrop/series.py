"""Exact coefficient fields and finite Puiseux series in t.

Coefficients live in Q or in a single quadratic extension Q(u) declared by a
monic irreducible minimal polynomial u^2 + b*u + c.  An element is stored as
rat + ext*u together with its extension context; plain rationals have no
context and mix freely with extended elements, but elements of two different
extensions refuse to combine.

A Puiseux element is a finite sum of terms coef * t^q with rational exponents
q (negative exponents are legal).  The valuation is the smallest exponent
appearing, with val(0) treated as +infinity; init_t extracts the coefficient
at the valuation.  Everything is exact: no floats, no truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class UnsupportedError(Exception):
    """Raised when a computation needs machinery the engine refuses to fake."""


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact rational square root, or None if q is not a perfect square."""
    if q < 0:
        return None
    n = math.isqrt(q.numerator)
    d = math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class QuadraticExtension:
    """The field Q(u) with u^2 + b*u + c = 0, b and c rational."""

    b: Fraction
    c: Fraction
    name: str = "u"

    def __post_init__(self):
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        disc = self.b * self.b - 4 * self.c
        root = _sqrt_fraction(disc)
        if root is not None:
            r1 = (-self.b + root) / 2
            r2 = (-self.b - root) / 2
            raise ValueError(
                "reducible minimal polynomial: u^2 + (%s)*u + (%s) has rational "
                "roots %s and %s" % (self.b, self.c, r1, r2)
            )

    def element(self, rat, ext=0) -> FieldElem:
        return FieldElem(Fraction(rat), Fraction(ext), self)

    @property
    def generator(self) -> FieldElem:
        return FieldElem(Fraction(0), Fraction(1), self)


def adjoin_quadratic(b, c, name: str = "u") -> QuadraticExtension:
    """Declare Q(u) with u^2 + b*u + c = 0; error if that splits over Q."""
    return QuadraticExtension(Fraction(b), Fraction(c), name)


Rat = Union[int, Fraction]


def _merge_ctx(a: QuadraticExtension | None, b: QuadraticExtension | None):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise UnsupportedError(
        "elements of two different quadratic extensions cannot be combined; "
        "only one adjunction is supported"
    )


@dataclass(frozen=True)
class FieldElem:
    """rat + ext*u in Q or a declared quadratic extension of Q."""

    rat: Fraction
    ext: Fraction = Fraction(0)
    ctx: QuadraticExtension | None = None

    def __post_init__(self):
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "ext", Fraction(self.ext))
        if self.ctx is None and self.ext:
            raise ValueError("extension part without a declared extension")

    @staticmethod
    def coerce(x) -> FieldElem:
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElem(Fraction(x))
        raise TypeError("cannot interpret %r as a field element" % (x,))

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.ext)

    def __add__(self, other) -> FieldElem:
        other = FieldElem.coerce(other)
        ctx = _merge_ctx(self.ctx, other.ctx)
        return FieldElem(self.rat + other.rat, self.ext + other.ext, ctx)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.rat, -self.ext, self.ctx)

    def __sub__(self, other) -> FieldElem:
        return self + (-FieldElem.coerce(other))

    def __rsub__(self, other) -> FieldElem:
        return FieldElem.coerce(other) + (-self)

    def __mul__(self, other) -> FieldElem:
        other = FieldElem.coerce(other)
        ctx = _merge_ctx(self.ctx, other.ctx)
        rat = self.rat * other.rat
        ext = self.rat * other.ext + self.ext * other.rat
        if self.ext and other.ext:
            # u^2 = -b*u - c
            square = self.ext * other.ext
            rat -= ctx.c * square
            ext -= ctx.b * square
        return FieldElem(rat, ext, ctx)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if not self.ext:
            return FieldElem(1 / self.rat, Fraction(0), self.ctx)
        b, c = self.ctx.b, self.ctx.c
        norm = self.rat * self.rat - b * self.rat * self.ext + c * self.ext * self.ext
        return FieldElem((self.rat - b * self.ext) / norm, -self.ext / norm, self.ctx)

    def __truediv__(self, other) -> FieldElem:
        return self * FieldElem.coerce(other).inverse()

    def __rtruediv__(self, other) -> FieldElem:
        return FieldElem.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElem(Fraction(1), Fraction(0), self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            other = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        if bool(self.ext) != bool(other.ext):
            return False
        if self.ext and self.ctx != other.ctx:
            return False
        return self.rat == other.rat and self.ext == other.ext

    def __hash__(self):
        if not self.ext:
            return hash(self.rat)
        return hash((self.rat, self.ext, self.ctx))

    def order_key(self) -> tuple[Fraction, Fraction]:
        """Total order used to pick canonical roots: rational part first."""
        return (self.rat, self.ext)

    def __str__(self) -> str:
        if not self.ext:
            return str(self.rat)
        name = self.ctx.name
        if self.ext == 1:
            upart = name
        elif self.ext == -1:
            upart = "-" + name
        else:
            upart = "%s*%s" % (self.ext, name)
        if not self.rat:
            return upart
        sign = "+" if self.ext > 0 else "-"
        mag = abs(self.ext)
        upart = name if mag == 1 else "%s*%s" % (mag, name)
        return "%s %s %s" % (self.rat, sign, upart)

    __repr__ = __str__


FE_ZERO = FieldElem(Fraction(0))
FE_ONE = FieldElem(Fraction(1))


CoefLike = Union[int, Fraction, FieldElem]


class PuiseuxElement:
    """Finite sum of coef * t^q, exponents rational and strictly increasing."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Fraction, FieldElem]] = (), *, _raw=False):
        if _raw:
            self.terms = tuple(terms)
            return
        acc: dict[Fraction, FieldElem] = {}
        for exp, coef in terms:
            exp = Fraction(exp)
            coef = FieldElem.coerce(coef)
            if exp in acc:
                acc[exp] = acc[exp] + coef
            else:
                acc[exp] = coef
        self.terms = tuple(
            (exp, acc[exp]) for exp in sorted(acc) if acc[exp]
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> PuiseuxElement:
        return PuiseuxElement((), _raw=True)

    @staticmethod
    def one() -> PuiseuxElement:
        return PuiseuxElement.constant(1)

    @staticmethod
    def constant(c: CoefLike) -> PuiseuxElement:
        c = FieldElem.coerce(c)
        if not c:
            return PuiseuxElement.zero()
        return PuiseuxElement(((Fraction(0), c),), _raw=True)

    @staticmethod
    def term(coef: CoefLike, exp) -> PuiseuxElement:
        coef = FieldElem.coerce(coef)
        if not coef:
            return PuiseuxElement.zero()
        return PuiseuxElement(((Fraction(exp), coef),), _raw=True)

    @staticmethod
    def t_power(exp) -> PuiseuxElement:
        return PuiseuxElement.term(1, exp)

    @staticmethod
    def coerce(x) -> PuiseuxElement:
        if isinstance(x, PuiseuxElement):
            return x
        if isinstance(x, (int, Fraction, FieldElem)):
            return PuiseuxElement.constant(x)
        raise TypeError("cannot interpret %r as a Puiseux element" % (x,))

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def val(self):
        """Smallest exponent present; math.inf for the zero element."""
        if not self.terms:
            return math.inf
        return self.terms[0][0]

    def init_t(self) -> FieldElem:
        """Coefficient at the valuation."""
        if not self.terms:
            raise ValueError("the zero element has no initial coefficient")
        return self.terms[0][1]

    def coefficient(self, exp) -> FieldElem:
        exp = Fraction(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return FE_ZERO

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def exponent_denominator(self) -> int:
        """lcm of the exponent denominators (1 for the zero element)."""
        out = 1
        for e, _ in self.terms:
            out = out * e.denominator // math.gcd(out, e.denominator)
        return out

    def extension(self) -> QuadraticExtension | None:
        ctx = None
        for _, c in self.terms:
            ctx = _merge_ctx(ctx, c.ctx)
        return ctx

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> PuiseuxElement:
        other = PuiseuxElement.coerce(other)
        return PuiseuxElement(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> PuiseuxElement:
        return PuiseuxElement(
            tuple((e, -c) for e, c in self.terms), _raw=True
        )

    def __sub__(self, other) -> PuiseuxElement:
        return self + (-PuiseuxElement.coerce(other))

    def __rsub__(self, other) -> PuiseuxElement:
        return PuiseuxElement.coerce(other) + (-self)

    def __mul__(self, other) -> PuiseuxElement:
        other = PuiseuxElement.coerce(other)
        acc: dict[Fraction, FieldElem] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                p = c1 * c2
                if e in acc:
                    acc[e] = acc[e] + p
                else:
                    acc[e] = p
        return PuiseuxElement(acc.items())

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PuiseuxElement:
        if n < 0:
            if not self.is_single_term():
                raise ValueError("negative powers need a single-term element")
            e, c = self.terms[0]
            return PuiseuxElement.term(c ** n, e * n)
        out = PuiseuxElement.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> PuiseuxElement:
        """Division by a single-term element only; anything else would need
        infinite expansion."""
        other = PuiseuxElement.coerce(other)
        if not other:
            raise ZeroDivisionError("division of a Puiseux element by zero")
        if not other.is_single_term():
            raise ValueError(
                "division is only defined by a single term, got %s" % (other,)
            )
        e, c = other.terms[0]
        inv = c.inverse()
        return PuiseuxElement(
            tuple((ei - e, ci * inv) for ei, ci in self.terms), _raw=True
        )

    def __eq__(self, other) -> bool:
        try:
            other = PuiseuxElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # -- printing ----------------------------------------------------------

    @staticmethod
    def _fmt_exp(e: Fraction) -> str:
        if e == 1:
            return "t"
        if e.denominator == 1:
            return "t^%d" % e
        return "t^(%s)" % e

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            if c == FE_ONE:
                parts.append(self._fmt_exp(e))
            elif c.ext or c.rat < 0:
                parts.append("(%s)*%s" % (c, self._fmt_exp(e)))
            else:
                parts.append("%s*%s" % (c, self._fmt_exp(e)))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return str(self)
