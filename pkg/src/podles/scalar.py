"""Exact arithmetic in K = Q(s), the field of rational functions with q = s**2.

Every coefficient in the package is a :class:`ScalarK`.  Values are immutable
and always stored in canonical form: numerator and denominator are coprime
integer polynomials in ``s``, the denominator has positive leading
coefficient and the integer content of the pair is 1.  Zero is ``0/1``.
"""

from __future__ import annotations

import ast
import os
from dataclasses import dataclass
from fractions import Fraction

from flint import fmpq, fmpz_poly

__all__ = [
    "ScalarK",
    "Params",
    "DegreeCapExceeded",
    "PoleError",
    "ZERO",
    "ONE",
    "S",
    "Q",
    "q_pow",
    "s_pow",
    "add",
    "mul",
    "neg",
    "inv",
    "eq",
    "eval_at",
    "parse_scalar",
    "set_degree_cap",
    "get_degree_cap",
]


class DegreeCapExceeded(ArithmeticError):
    """An intermediate polynomial exceeded the configured degree bound."""


class PoleError(ZeroDivisionError):
    """Evaluation point is a root of the denominator."""


_DEGREE_CAP = int(os.environ.get("PODLES_DEGREE_CAP", "512"))


def set_degree_cap(cap: int) -> int:
    """Set the global degree bound (in s); returns the previous value."""
    global _DEGREE_CAP
    old, _DEGREE_CAP = _DEGREE_CAP, int(cap)
    return old


def get_degree_cap() -> int:
    return _DEGREE_CAP


_P0 = fmpz_poly(0)
_P1 = fmpz_poly(1)


class ScalarK:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _canonical=False):
        if not isinstance(num, fmpz_poly):
            num = fmpz_poly(num) if isinstance(num, (int, list)) else _coerce_poly(num)
        if not isinstance(den, fmpz_poly):
            den = fmpz_poly(den) if isinstance(den, (int, list)) else _coerce_poly(den)
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_fraction(cls, x) -> "ScalarK":
        x = Fraction(x)
        return cls(fmpz_poly(x.numerator), fmpz_poly(x.denominator))

    @classmethod
    def coerce(cls, x) -> "ScalarK":
        if isinstance(x, ScalarK):
            return x
        if isinstance(x, int):
            return _from_int(x)
        if isinstance(x, (Fraction, fmpq)):
            return cls.from_fraction(Fraction(int(x.numerator), int(x.denominator)))
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ScalarK")

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def __bool__(self):
        return not self.num.is_zero()

    def degree(self) -> int:
        """Total size used by pivot heuristics: deg(num) + deg(den)."""
        return max(self.num.degree(), 0) + self.den.degree()

    # field operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ScalarK):
            if isinstance(other, int):
                other = _from_int(other)
            else:
                return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return ScalarK(self.num + other.num, self.den)
        return ScalarK(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarK(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, ScalarK):
            if isinstance(other, int):
                other = _from_int(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ScalarK):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if other == 1:
                    return self
                return ScalarK(self.num * other, self.den)
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            n = self.num * other.num
            _check_cap(n, _P1)
            return ScalarK(n, _P1, _canonical=True)
        # cross-reduce before multiplying
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num // g1, other.den // g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num // g2, self.den // g2)
        n, d = n1 * n2, d1 * d2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        _check_cap(n, d)
        return ScalarK(n, d, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarK":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return ScalarK(n, d, _canonical=True)

    def __truediv__(self, other):
        if not isinstance(other, ScalarK):
            if isinstance(other, int):
                other = _from_int(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ONE
        n, d = self.num ** e, self.den ** e
        _check_cap(n, d)
        return ScalarK(n, d, _canonical=True)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = _from_int(other)
        elif not isinstance(other, ScalarK):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # evaluation and text --------------------------------------------------

    def eval_at(self, s0) -> Fraction:
        v = self._eval_fmpq(fmpq(*_frac_pair(s0)))
        return Fraction(int(v.p), int(v.q))

    def _eval_fmpq(self, s0: fmpq) -> fmpq:
        dv = self.den(s0)
        if dv == 0:
            raise PoleError(f"{self} has a pole at s = {s0}")
        return self.num(s0) / dv

    def to_str(self) -> str:
        coeff_lists = [self.num.coeffs(), self.den.coeffs()]
        even = all(int(c) == 0 for cs in coeff_lists for i, c in enumerate(cs) if i % 2)
        var, step = ("q", 2) if even else ("s", 1)
        num = _poly_str(self.num, var, step)
        if self.den.is_one():
            return num
        den = _poly_str(self.den, var, step)
        if _n_terms(self.num) > 1:
            num = f"({num})"
        if _n_terms(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    __str__ = to_str

    def __repr__(self):
        return f"ScalarK({self.to_str()!r})"


def _coerce_poly(x) -> fmpz_poly:
    if isinstance(x, ScalarK):
        if not x.den.is_one():
            raise ValueError("not a polynomial")
        return x.num
    return fmpz_poly(x)


def _check_cap(n: fmpz_poly, d: fmpz_poly):
    if n.degree() > _DEGREE_CAP or d.degree() > _DEGREE_CAP:
        raise DegreeCapExceeded(
            f"polynomial degree {max(n.degree(), d.degree())} exceeds cap {_DEGREE_CAP}"
        )


def _normalize(num: fmpz_poly, den: fmpz_poly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _P0, _P1
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    _check_cap(num, den)
    return num, den


def _frac_pair(x):
    if isinstance(x, fmpq):
        return int(x.p), int(x.q)
    f = Fraction(x)
    return f.numerator, f.denominator


def _n_terms(p: fmpz_poly) -> int:
    return sum(1 for c in p.coeffs() if int(c) != 0)


def _poly_str(p: fmpz_poly, var: str, step: int) -> str:
    coeffs = [int(c) for c in p.coeffs()]
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        e = i // step
        if e == 0:
            mono = str(abs(c))
        else:
            pw = var if e == 1 else f"{var}^{e}"
            mono = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
        if not parts:
            parts.append(f"-{mono}" if c < 0 else mono)
        else:
            parts.append(f"- {mono}" if c < 0 else f"+ {mono}")
    return " ".join(parts)


_INT_CACHE: dict[int, ScalarK] = {}


def _from_int(n: int) -> ScalarK:
    v = _INT_CACHE.get(n)
    if v is None:
        v = ScalarK(fmpz_poly(n), _P1, _canonical=True) if n else ScalarK(_P0, _P1, _canonical=True)
        if -64 <= n <= 64:
            _INT_CACHE[n] = v
    return v


ZERO = _from_int(0)
ONE = _from_int(1)
S = ScalarK(fmpz_poly([0, 1]), _P1, _canonical=True)
Q = ScalarK(fmpz_poly([0, 0, 1]), _P1, _canonical=True)

_S_POW_CACHE: dict[int, ScalarK] = {}


def s_pow(k: int) -> ScalarK:
    """s**k for any integer k (cached)."""
    v = _S_POW_CACHE.get(k)
    if v is None:
        mono = fmpz_poly([0] * abs(k) + [1])
        v = ScalarK(mono, _P1, _canonical=True) if k >= 0 else ScalarK(_P1, mono, _canonical=True)
        _S_POW_CACHE[k] = v
    return v


def q_pow(k: int) -> ScalarK:
    """q**k = s**(2k)."""
    return s_pow(2 * k)


# functional spellings --------------------------------------------------------

def add(x, y) -> ScalarK:
    return ScalarK.coerce(x) + ScalarK.coerce(y)


def mul(x, y) -> ScalarK:
    return ScalarK.coerce(x) * ScalarK.coerce(y)


def neg(x) -> ScalarK:
    return -ScalarK.coerce(x)


def inv(x) -> ScalarK:
    return ScalarK.coerce(x).inverse()


def eq(x, y) -> bool:
    return ScalarK.coerce(x) == ScalarK.coerce(y)


def eval_at(x, s0) -> Fraction:
    return ScalarK.coerce(x).eval_at(s0)


# parsing ---------------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_scalar(text: str) -> ScalarK:
    """Parse expressions such as ``"q^-2"``, ``"(1-q^2)/(1+q)"``, ``"3/2"``.

    Accepted names are ``q`` and ``s``; ``^`` and ``**`` both mean power and
    exponents must be integers.
    """
    src = str(text).strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    return _eval_node(tree.body, text)


def _eval_node(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return _from_int(node.value)
    if isinstance(node, ast.Name):
        if node.id == "q":
            return Q
        if node.id == "s":
            return S
        raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_node(node.left, text)
            e = _int_exponent(node.right, text)
            return base ** e
        op = _BINOPS.get(type(node.op))
        if op is not None:
            return op(_eval_node(node.left, text), _eval_node(node.right, text))
    raise ValueError(f"unsupported syntax in {text!r}")


def _int_exponent(node, text) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _int_exponent(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    raise ValueError(f"exponent must be an integer in {text!r}")


@dataclass(frozen=True)
class Params:
    """Parameters (c, d) of the algebra A(c, d); c + d must be nonzero."""

    c: ScalarK
    d: ScalarK

    def __post_init__(self):
        object.__setattr__(self, "c", ScalarK.coerce(self.c))
        object.__setattr__(self, "d", ScalarK.coerce(self.d))
        if (self.c + self.d).is_zero():
            raise ValueError("A(c, d) requires c + d != 0")

    @property
    def cd(self) -> ScalarK:
        return self.c * self.d

    def rescaled(self, r) -> "Params":
        r = ScalarK.coerce(r)
        if r.is_zero():
            raise ValueError("rescaling factor must be nonzero")
        return Params(r * self.c, r * self.d)

    def __str__(self):
        return f"(c={self.c}, d={self.d})"
