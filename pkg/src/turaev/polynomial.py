"""
Exact sparse polynomials with integer coefficients.

:class:`LaurentPoly` is a univariate Laurent polynomial (variable ``A`` or
``t``); :class:`MultiPoly` is a multivariate polynomial over a declared
variable list, where some variables may carry negative exponents.
Both are immutable and hashable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "MultiPoly",
    "VariableMismatch",
    "UnboundVariable",
    "add",
    "mul",
    "substitute",
    "span",
    "equal_up_to_units",
    "delta",
]


class VariableMismatch(ValueError):
    """Operands live in different polynomial rings."""


class UnboundVariable(ValueError):
    """A substitution left a variable without a value."""


def _clean(terms: Mapping) -> dict:
    return {k: int(v) for k, v in terms.items() if v}


class LaurentPoly:
    """Univariate Laurent polynomial ``sum c_k x^k`` with ``c_k`` in ZZ.

    >>> A = LaurentPoly.monomial(1)
    >>> str((A**2 + 1) * (A**-2 - 1))
    'A^-2 - A^2'
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "A"):
        self._terms = _clean(terms or {})
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "A") -> "LaurentPoly":
        return cls({0: c}, var)

    # -- access ------------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def span(self) -> int:
        return self.max_degree() - self.min_degree()

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._terms and self._terms:
                # constants are variable-free, so they mix freely
                if not (other.is_constant() or self.is_constant()):
                    raise VariableMismatch(f"{self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def _result_var(self, other: "LaurentPoly") -> str:
        if self.is_constant() and not other.is_constant():
            return other.var
        return self.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self._result_var(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.var)

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
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out, self._result_var(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible over ZZ")
            return LaurentPoly({k * n: c ** (-n)}, self.var)
        result = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def evaluate(self, x):
        """Evaluate at a number; negative powers go through :class:`Fraction`."""
        total = 0
        for k, c in self._terms.items():
            total += c * (Fraction(x) ** k if k < 0 else x ** k)
        return total

    def with_var(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self._terms, var)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self._terms != other._terms:
            return False
        return self.is_constant() or self.var == other.var

    def __hash__(self):
        if self._hash is None:
            key = tuple(sorted(self._terms.items()))
            self._hash = hash((key, None if self.is_constant() else self.var))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            if k == 0:
                body = str(abs(c))
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, var={self.var!r})"

    def to_json(self) -> list[list[int]]:
        return [[k, c] for k, c in self.items()]

    @classmethod
    def from_json(cls, pairs: Iterable, var: str = "A") -> "LaurentPoly":
        out: dict[int, int] = {}
        for k, c in pairs:
            out[int(k)] = out.get(int(k), 0) + int(c)
        return cls(out, var)

    _TERM = re.compile(r"([+-])?(\d+)?([A-Za-z])?(?:\^(-?\d+))?")

    @classmethod
    def parse(cls, text: str, var: str = "A") -> "LaurentPoly":
        """Inverse of ``str``: ``'A^-8 - A^-4 + 1 - A^4 + A^8'``."""
        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls({}, var)
        out: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            sign, digits, letter, exp = m.groups()
            if m.end() == pos or (digits is None and letter is None):
                raise ValueError(f"cannot parse {text!r} at offset {pos}")
            if pos and sign is None:
                raise ValueError(f"missing operator in {text!r} at offset {pos}")
            if letter and letter != var:
                raise VariableMismatch(f"expected variable {var}, got {letter}")
            if exp is not None and letter is None:
                raise ValueError(f"exponent without variable in {text!r}")
            k = (int(exp) if exp is not None else 1) if letter else 0
            c = int(digits) if digits else 1
            out[k] = out.get(k, 0) + (-c if sign == "-" else c)
            pos = m.end()
        return cls(out, var)


class MultiPoly:
    """Polynomial over an ordered variable list.

    Variables named in ``laurent`` may have negative exponents; the others
    must not.
    """

    __slots__ = ("variables", "laurent", "_terms")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[tuple, int] | None = None,
        laurent: Iterable[str] = (),
    ):
        self.variables = tuple(variables)
        self.laurent = frozenset(laurent)
        n = len(self.variables)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError("exponent vector length does not match variables")
            if not c:
                continue
            for v, e in zip(self.variables, mono):
                if e < 0 and v not in self.laurent:
                    raise ValueError(f"negative exponent for non-Laurent variable {v}")
            clean[mono] = clean.get(mono, 0) + int(c)
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def gen(cls, variables: Iterable[str], name: str, laurent: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {mono: 1}, laurent)

    @classmethod
    def constant(cls, variables: Iterable[str], c: int, laurent: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c}, laurent)

    @property
    def terms(self) -> dict[tuple, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, mono: tuple) -> int:
        return self._terms.get(tuple(mono), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _check(self, other: "MultiPoly"):
        if other.variables != self.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.variables, other, self.laurent)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.variables, out, self.laurent | other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {m: -c for m, c in self._terms.items()}, self.laurent)

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
        out: dict[tuple, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.variables, out, self.laurent | other.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            ((m, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible over ZZ")
            return MultiPoly(self.variables, {tuple(e * n for e in m): c ** (-n)}, self.variables)
        result = MultiPoly.constant(self.variables, 1, self.laurent)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self._terms.items()))))

    def subs(self, bindings: Mapping[str, "MultiPoly | int"]) -> "MultiPoly":
        """Substitute MultiPoly values (all over one common variable list)."""
        target = None
        for v in bindings.values():
            if isinstance(v, MultiPoly):
                if target is None:
                    target = v
                else:
                    target._check(v)
        if target is None:
            raise ValueError("subs needs at least one MultiPoly binding")
        missing = [v for v in self.variables if v not in bindings]
        if missing:
            raise UnboundVariable(", ".join(missing))
        vals = [
            bindings[v] if isinstance(bindings[v], MultiPoly)
            else MultiPoly.constant(target.variables, bindings[v], target.laurent)
            for v in self.variables
        ]
        total = MultiPoly(target.variables, {}, target.laurent)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for mono, c in self._terms.items():
            term = MultiPoly.constant(target.variables, c, target.laurent)
            for i, e in enumerate(mono):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = vals[i] ** e
                    term = term * cache[(i, e)]
            total = total + term
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in sorted(self._terms.items(), key=lambda mc: (sum(mc[0]), mc[0])):
            factors = []
            for v, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                body = str(abs(c))
            elif abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.variables}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [[list(m), c] for m, c in self.items()],
        }


Poly = Union[LaurentPoly, MultiPoly]


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def substitute(p: MultiPoly, bindings: Mapping[str, "LaurentPoly | int"]) -> LaurentPoly:
    """Evaluate ``p`` with every variable bound to a Laurent polynomial.

    Negative exponents of ``p`` are only allowed where the bound value is a
    unit monomial.
    """
    missing = [v for v in p.variables if v not in bindings]
    if missing:
        raise UnboundVariable(", ".join(missing))
    var = next(
        (b.var for b in bindings.values() if isinstance(b, LaurentPoly) and not b.is_constant()),
        "A",
    )
    vals = []
    for v in p.variables:
        b = bindings[v]
        vals.append(b if isinstance(b, LaurentPoly) else LaurentPoly.constant(b, var))
    total = LaurentPoly({}, var)
    cache: dict[tuple[int, int], LaurentPoly] = {}
    for mono, c in p._terms.items():
        term = LaurentPoly.constant(c, var)
        for i, e in enumerate(mono):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = vals[i] ** e
                term = term * cache[(i, e)]
        total = total + term
    return total.with_var(var)


def span(p: LaurentPoly) -> int:
    if p.is_zero():
        raise ValueError("span of the zero polynomial is undefined")
    return p.span()


def equal_up_to_units(p: LaurentPoly, q: LaurentPoly) -> tuple[bool, int, int]:
    """Decide ``p == sign * x**k * q``; returns ``(ok, sign, k)``.

    ``(0, 0)`` counts as equal with witness ``(True, 1, 0)``.
    """
    if p.is_zero() and q.is_zero():
        return True, 1, 0
    if p.is_zero() or q.is_zero():
        return False, 0, 0
    k = p.min_degree() - q.min_degree()
    for sign in (1, -1):
        if p == q.shift(k) * sign:
            return True, sign, k
    return False, 0, 0


def delta(var: str = "A") -> LaurentPoly:
    """The loop value ``-A^2 - A^-2``."""
    return LaurentPoly({2: -1, -2: -1}, var)
