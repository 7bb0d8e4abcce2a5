"""Sparse polynomials in up to four named variables over Puiseux series.

A PlanePoly maps exponent tuples (aligned with an ordered variable tuple) to
nonzero Puiseux coefficients.  The heights of a two-variable polynomial are
h(a) = -val(c_a); tropicalization uses the max convention throughout, so the
tropical value of g at w is max_a (h(a) + <w, a>).

The substitutions used by the re-embedding pipeline live here:

  * shift_substitute: x -> z - A * t^(-l), the eliminant of a lifting of x;
  * skew_substitute:  x -> z - A * t^(-l) * y, same along a diagonal line;
  * substitute / affine_compose: general resp. invertible-affine changes.

Rescaling by t-powers of the variables (rescale_normalize) moves a chosen
supporting plane of the lifted Newton points to height zero, which is the
normal position for reading off feeding formulas.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .series import PuiseuxElement

Exponent = tuple[int, ...]

MAX_VARS = 4


def _binomial(n: int, k: int) -> int:
    return math.comb(n, k)


class PlanePoly:
    """Polynomial over the Puiseux field in named variables (at most four)."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, variables: tuple[str, ...], coeffs: Mapping[Exponent, object]):
        variables = tuple(variables)
        if not 1 <= len(variables) <= MAX_VARS:
            raise ValueError("between one and %d variables supported" % MAX_VARS)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names in %r" % (variables,))
        clean: dict[Exponent, PuiseuxElement] = {}
        for exp, c in coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ValueError("exponent %r does not match %r" % (exp, variables))
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent in %r" % (exp,))
            c = PuiseuxElement.coerce(c)
            if not c:
                continue
            if exp in clean:
                c = clean[exp] + c
                if not c:
                    del clean[exp]
                    continue
            clean[exp] = c
        self.vars = variables
        self.coeffs = clean

    # -- basic structure ---------------------------------------------------

    def support(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self.coeffs))

    def coefficient(self, exp: Exponent) -> PuiseuxElement:
        return self.coeffs.get(tuple(exp), PuiseuxElement.zero())

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanePoly):
            return NotImplemented
        return self.vars == other.vars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.coeffs.items()))))

    def total_degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(e) for e in self.coeffs)

    def var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ValueError("no variable %r in %r" % (name, self.vars)) from None

    def heights(self) -> dict[Exponent, Fraction]:
        """h(a) = -val(c_a) over the support."""
        return {exp: -c.val() for exp, c in self.coeffs.items()}

    def row(self, j: int, axis: int = 1) -> dict[int, PuiseuxElement]:
        """Coefficients with fixed exponent j on the given axis (two-variable).

        The returned dict is indexed by the exponent on the other axis.
        """
        if len(self.vars) != 2:
            raise ValueError("rows only make sense for two variables")
        other = 1 - axis
        return {
            exp[other]: c for exp, c in self.coeffs.items() if exp[axis] == j
        }

    def is_cubic(self) -> bool:
        return len(self.vars) == 2 and all(
            sum(e) <= 3 for e in self.coeffs
        ) and self.total_degree() == 3

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> PlanePoly:
        if isinstance(other, PlanePoly):
            if other.vars != self.vars:
                raise ValueError(
                    "variable mismatch: %r vs %r" % (self.vars, other.vars)
                )
            return other
        c = PuiseuxElement.coerce(other)
        return PlanePoly(self.vars, {(0,) * len(self.vars): c})

    def __add__(self, other) -> PlanePoly:
        other = self._coerce(other)
        acc = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            acc[exp] = acc.get(exp, PuiseuxElement.zero()) + c
        return PlanePoly(self.vars, acc)

    __radd__ = __add__

    def __neg__(self) -> PlanePoly:
        out = PlanePoly(self.vars, {})
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other) -> PlanePoly:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> PlanePoly:
        if not isinstance(other, PlanePoly):
            c = PuiseuxElement.coerce(other)
            return PlanePoly(
                self.vars, {e: cc * c for e, cc in self.coeffs.items()}
            )
        other = self._coerce(other)
        acc: dict[Exponent, PuiseuxElement] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc[e] = acc.get(e, PuiseuxElement.zero()) + prod
        return PlanePoly(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PlanePoly:
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = PlanePoly(self.vars, {(0,) * len(self.vars): PuiseuxElement.one()})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- tropical data -----------------------------------------------------

    def init_form(self, w: tuple) -> PlanePoly:
        """Monomials attaining max_a (h(a) + <w, a>), with initial coefficients."""
        if not self.coeffs:
            raise ValueError("the zero polynomial has no initial form")
        w = tuple(Fraction(x) for x in w)
        if len(w) != len(self.vars):
            raise ValueError("weight length does not match variable count")
        best = None
        for exp, c in self.coeffs.items():
            score = -c.val() + sum(wi * ei for wi, ei in zip(w, exp))
            if best is None or score > best:
                best = score
        out = {}
        for exp, c in self.coeffs.items():
            score = -c.val() + sum(wi * ei for wi, ei in zip(w, exp))
            if score == best:
                out[exp] = PuiseuxElement.constant(c.init_t())
        return PlanePoly(self.vars, out)

    # -- substitutions -----------------------------------------------------

    def rename(self, old: str, new: str) -> PlanePoly:
        i = self.var_index(old)
        if new in self.vars and new != old:
            raise ValueError("variable %r already present" % new)
        variables = tuple(new if k == i else v for k, v in enumerate(self.vars))
        out = PlanePoly(variables, {})
        out.coeffs = dict(self.coeffs)
        return out

    def shift_substitute(
        self, var: str, amount: PuiseuxElement, level, new_name: str | None = None
    ) -> PlanePoly:
        """Substitute var = z - amount * t^(-level), z named new_name.

        This is the planar eliminant of the lifting z = var + amount*t^(-level).
        """
        i = self.var_index(var)
        level = Fraction(level)
        shift = -PuiseuxElement.coerce(amount) * PuiseuxElement.t_power(-level)
        acc: dict[Exponent, PuiseuxElement] = {}
        shift_powers = [PuiseuxElement.one()]
        max_deg = max((e[i] for e in self.coeffs), default=0)
        for _ in range(max_deg):
            shift_powers.append(shift_powers[-1] * shift)
        for exp, c in self.coeffs.items():
            k = exp[i]
            for m in range(k + 1):
                # (z + shift)^k expands with binomials
                e = tuple(m if a == i else exp[a] for a in range(len(exp)))
                term = c * _binomial(k, m) * shift_powers[k - m]
                acc[e] = acc.get(e, PuiseuxElement.zero()) + term
        out = PlanePoly(self.vars, acc)
        if new_name is not None and new_name != var:
            out = out.rename(var, new_name)
        return out

    def skew_substitute(
        self,
        var: str,
        other_var: str,
        amount: PuiseuxElement,
        level,
        new_name: str | None = None,
    ) -> PlanePoly:
        """Substitute var = z - amount * t^(-level) * other_var."""
        i = self.var_index(var)
        j = self.var_index(other_var)
        level = Fraction(level)
        shift_c = -PuiseuxElement.coerce(amount) * PuiseuxElement.t_power(-level)
        acc: dict[Exponent, PuiseuxElement] = {}
        max_deg = max((e[i] for e in self.coeffs), default=0)
        powers = [PuiseuxElement.one()]
        for _ in range(max_deg):
            powers.append(powers[-1] * shift_c)
        for exp, c in self.coeffs.items():
            k = exp[i]
            for m in range(k + 1):
                e = list(exp)
                e[i] = m
                e[j] = exp[j] + (k - m)
                term = c * _binomial(k, m) * powers[k - m]
                key = tuple(e)
                acc[key] = acc.get(key, PuiseuxElement.zero()) + term
        out = PlanePoly(self.vars, acc)
        if new_name is not None and new_name != var:
            out = out.rename(var, new_name)
        return out

    def substitute(self, var: str, expr: PlanePoly) -> PlanePoly:
        """Substitute an arbitrary polynomial expression for one variable.

        The remaining variables of self must appear in expr.vars as well; the
        result lives in expr's variable tuple.
        """
        i = self.var_index(var)
        rest = [v for v in self.vars if v != var]
        for v in rest:
            if v not in expr.vars:
                raise ValueError(
                    "substitution target lacks variable %r" % v
                )
        max_deg = max((e[i] for e in self.coeffs), default=0)
        powers = [PlanePoly(expr.vars, {(0,) * len(expr.vars): PuiseuxElement.one()})]
        for _ in range(max_deg):
            powers.append(powers[-1] * expr)
        out = PlanePoly(expr.vars, {})
        for exp, c in self.coeffs.items():
            mono_exp = [0] * len(expr.vars)
            for v, e in zip(self.vars, exp):
                if v != var:
                    mono_exp[expr.vars.index(v)] = e
            mono = PlanePoly(expr.vars, {tuple(mono_exp): c})
            out = out + mono * powers[exp[i]]
        return out

    def affine_compose(
        self,
        new_vars: tuple[str, ...],
        images: Mapping[str, tuple[object, Mapping[str, object]]],
    ) -> PlanePoly:
        """Apply an invertible affine change: each old variable maps to
        const + sum(coef * new variable).

        images[v] = (const, {new_name: coef}).  The linear part must be a
        square invertible matrix over the Puiseux field or ValueError is
        raised.
        """
        new_vars = tuple(new_vars)
        if set(images) != set(self.vars):
            raise ValueError("images must be given for exactly the variables")
        if len(new_vars) != len(self.vars):
            raise ValueError("affine change must preserve the variable count")
        matrix = []
        for v in self.vars:
            _, lin = images[v]
            row = [PuiseuxElement.coerce(lin.get(nv, 0)) for nv in new_vars]
            matrix.append(row)
        if not _nonzero_det(matrix):
            raise ValueError("affine substitution is not invertible")
        out = PlanePoly(new_vars, {})
        zero_exp = (0,) * len(new_vars)
        for exp, c in self.coeffs.items():
            term = PlanePoly(new_vars, {zero_exp: c})
            for v, e in zip(self.vars, exp):
                if e == 0:
                    continue
                const, lin = images[v]
                img = {zero_exp: PuiseuxElement.coerce(const)}
                for nv, coef in lin.items():
                    key = tuple(1 if n == nv else 0 for n in new_vars)
                    img[key] = PuiseuxElement.coerce(coef)
                term = term * PlanePoly(new_vars, img) ** e
            out = out + term
        return out

    def rescale_normalize(self, alpha, beta, gamma) -> tuple[PlanePoly, tuple]:
        """Multiply c_(i,j) by t^(alpha*i + beta*j + gamma) (two variables).

        With (alpha, beta, gamma) the supporting plane of a marked cell this
        puts the cell's heights at zero and every other height at or below
        zero.  Returns the rescaled polynomial and the record needed to undo
        the rescaling.
        """
        if len(self.vars) != 2:
            raise ValueError("rescaling is defined for two variables")
        alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
        acc = {}
        for (i, j), c in self.coeffs.items():
            acc[(i, j)] = c * PuiseuxElement.t_power(alpha * i + beta * j + gamma)
        out = PlanePoly(self.vars, acc)
        return out, (alpha, beta, gamma)

    def evaluate(self, values: Mapping[str, object]) -> PuiseuxElement:
        if set(values) != set(self.vars):
            raise ValueError("values must be given for exactly the variables")
        vals = [PuiseuxElement.coerce(values[v]) for v in self.vars]
        total = PuiseuxElement.zero()
        for exp, c in self.coeffs.items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exp in sorted(self.coeffs):
            c = self.coeffs[exp]
            mono = "*".join(
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(self.vars, exp)
                if e
            )
            cs = str(c)
            if len(c.terms) > 1 or (cs.startswith("-") or "+" in cs) and mono:
                cs = "(%s)" % cs
            parts.append("%s*%s" % (cs, mono) if mono else cs)
        return " + ".join(parts)

    __repr__ = __str__


def _nonzero_det(matrix: list[list[PuiseuxElement]]) -> bool:
    """Exact determinant nonzero test by permutation expansion (n <= 4)."""
    n = len(matrix)
    total = PuiseuxElement.zero()
    for perm, sign in _permutations_signed(n):
        term = PuiseuxElement.one()
        for r, c in enumerate(perm):
            term = term * matrix[r][c]
        total = total + (term if sign > 0 else -term)
    return bool(total)


def _permutations_signed(n: int):
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                length += 1
            if length % 2 == 0:
                sign = -sign
        yield perm, sign


def poly_from_pairs(
    variables: tuple[str, ...], pairs: Iterable[tuple[Exponent, object]]
) -> PlanePoly:
    """Build a PlanePoly from (exponent, coefficient) pairs."""
    acc: dict[Exponent, PuiseuxElement] = {}
    for exp, c in pairs:
        exp = tuple(exp)
        c = PuiseuxElement.coerce(c)
        acc[exp] = acc.get(exp, PuiseuxElement.zero()) + c
    return PlanePoly(variables, acc)
