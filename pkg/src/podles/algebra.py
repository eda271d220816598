"""The Podleś sphere algebra A(c, d) on its PBW basis.

Monomials are pairs ``(j, k)``: ``B^j A^k`` for ``j >= 0`` and ``B*^(-j) A^k``
for ``j < 0``.  Products of basis monomials are computed in closed form and
cached; :meth:`PodlesAlgebra.normal_form` is an independent word-rewriting
engine used to cross-check them.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .scalar import ONE, ZERO, Params, ScalarK, q_pow

Monomial = tuple  # (bexp, aexp) for the sphere; other algebras use their own tuples
UNIT = (0, 0)
MIXED = "mixed"


class Element:
    """Finite linear combination of PBW monomials of some algebra.

    ``terms`` maps monomials to nonzero :class:`ScalarK` coefficients.
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # container protocol
    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m) -> ScalarK:
        return self.terms.get(m, ZERO)

    def support(self):
        return sorted(self.terms, key=self.alg.mono_sort_key)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg and other.alg != self.alg:
                raise ValueError("elements of different algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            out[m] = c if v is None else v + c
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = ScalarK.coerce(c)
        if c.is_zero():
            return Element(self.alg)
        return Element(self.alg, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.mul(self, other)
        if isinstance(other, (ScalarK, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (ScalarK, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined")
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, ScalarK)):
            other = self.alg.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"<{self}>"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.support():
            c = self.terms[m]
            ms = self.alg.mono_str(m)
            if ms == "1":
                parts.append(f"({c})")
            elif c.is_one():
                parts.append(ms)
            else:
                parts.append(f"({c})*{ms}")
        return " + ".join(parts)

    def to_pairs(self):
        """Serialization as ``[(coefficient text, monomial text), ...]``."""
        return [[str(self.terms[m]), self.alg.mono_str(m)] for m in self.support()]


class PBWAlgebra:
    """Shared behaviour of the algebras with a closed-form monomial product."""

    unit: tuple

    def one(self) -> Element:
        return Element(self, {self.unit: ONE})

    def zero(self) -> Element:
        return Element(self)

    def scalar(self, c) -> Element:
        return Element(self, {self.unit: ScalarK.coerce(c)})

    def from_monomial(self, m, c=ONE) -> Element:
        return Element(self, {m: ScalarK.coerce(c)})

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c12 = c1 * c2
                for m, c in self.mul_monomials(m1, m2).items():
                    v = out.get(m)
                    out[m] = c12 * c if v is None else v + c12 * c
        return Element(self, out)

    def mul_monomials(self, m1, m2) -> dict:
        raise NotImplementedError

    def mono_sort_key(self, m):
        return (self.mono_degree(m), m)

    def mono_degree(self, m) -> int:
        raise NotImplementedError

    def mono_str(self, m) -> str:
        raise NotImplementedError


# -- polynomials in a single commuting generator, as lists of ScalarK --------

def _poly_mul(p, r):
    out = [ZERO] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(r):
            out[i + j] = out[i + j] + a * b
    return out


def _poly_rescale(p, t: ScalarK):
    """p(x) -> p(t x)."""
    out, tp = [], ONE
    for a in p:
        out.append(a * tp)
        tp = tp * t
    return out


@dataclass(frozen=True)
class Automorphism:
    """Diagonal automorphism: B -> lam B, B* -> lam^-1 B*, A -> sign A.

    ``sign = +1`` is the family sigma_lam; ``sign = -1`` (legal only when
    c = d) is tau_lam.  The eigenvalue on ``B^j A^k`` is ``lam^j sign^k``.
    """

    lam: ScalarK
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lam", ScalarK.coerce(self.lam))
        if self.lam.is_zero():
            raise ValueError("automorphism parameter lambda must be nonzero")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def mu(self) -> int:
        return self.sign

    def eigenvalue(self, m) -> ScalarK:
        j, k = m
        v = _lam_pow(self.lam, j)
        if self.sign == -1 and k % 2:
            v = -v
        return v

    def tuple_eigenvalue(self, ms) -> ScalarK:
        j = sum(m[0] for m in ms)
        k = sum(m[1] for m in ms)
        v = _lam_pow(self.lam, j)
        if self.sign == -1 and k % 2:
            v = -v
        return v

    def is_identity(self) -> bool:
        return self.sign == 1 and self.lam.is_one()

    def compose(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(self.lam * other.lam, self.sign * other.sign)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.lam.inverse(), self.sign)

    def check_legal(self, params: Params):
        if self.sign == -1 and params.c != params.d:
            raise ValueError("A -> -A is an automorphism of A(c, d) only when c = d")

    def __str__(self):
        name = "sigma" if self.sign == 1 else "tau"
        return f"{name}[{self.lam}]"


@lru_cache(maxsize=4096)
def _lam_pow(lam: ScalarK, j: int) -> ScalarK:
    return lam ** j


def sigma(lam) -> Automorphism:
    return Automorphism(ScalarK.coerce(lam), 1)


def tau(lam) -> Automorphism:
    return Automorphism(ScalarK.coerce(lam), -1)


def sigma_mod() -> Automorphism:
    """Modular automorphism of the invariant functional: B -> q^-2 B."""
    return Automorphism(q_pow(-2), 1)


IDENTITY = Automorphism(ONE, 1)


class PodlesAlgebra(PBWAlgebra):
    """A(c, d): BA = q^2 AB, AB* = q^2 B*A, B*B and BB* quadratic in A."""

    unit = UNIT

    def __init__(self, params: Params | tuple):
        if not isinstance(params, Params):
            params = Params(*params)
        self.params = params
        c, d = params.c, params.d
        cd = c * d
        # B*B = p1(A), BB* = p2(A)
        self._p1 = [cd, c - d, -ONE]
        self._p2 = [cd, q_pow(2) * (c - d), -q_pow(4)]
        self._cache: dict = {}
        self.A = self.from_monomial((0, 1))
        self.B = self.from_monomial((1, 0))
        self.Bs = self.from_monomial((-1, 0))

    def __eq__(self, other):
        return isinstance(other, PodlesAlgebra) and self.params == other.params

    def __hash__(self):
        return hash(("podles", self.params))

    def __repr__(self):
        return f"PodlesAlgebra{self.params}"

    @classmethod
    def rescaled(cls, params: Params, r) -> "PodlesAlgebra":
        """A(rc, rd), isomorphic to A(c, d) as an algebra."""
        return cls(params.rescaled(r))

    @property
    def is_standard(self) -> bool:
        return self.params.c == ONE and self.params.d == ZERO

    # -- basis ---------------------------------------------------------------

    def mono_degree(self, m) -> int:
        return abs(m[0]) + m[1]

    def mono_sort_key(self, m):
        # degree, then B-side before B*-side, then exponents
        return (abs(m[0]) + m[1], m[0] < 0, abs(m[0]), m[1])

    def mono_str(self, m) -> str:
        j, k = m
        parts = []
        if j > 0:
            parts.append("B" if j == 1 else f"B^{j}")
        elif j < 0:
            parts.append("B*" if j == -1 else f"B*^{-j}")
        if k:
            parts.append("A" if k == 1 else f"A^{k}")
        return " ".join(parts) if parts else "1"

    def monomials(self, max_degree: int, weight: int | None = None) -> list:
        out = []
        for deg in range(max_degree + 1):
            for j in range(-deg, deg + 1):
                if weight is not None and j != weight:
                    continue
                out.append((j, deg - abs(j)))
        return sorted(out, key=self.mono_sort_key)

    # -- multiplication -----------------------------------------------------

    def mul_monomials(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        j, k = m1
        m, l = m2
        coeff = q_pow(-2 * k * m) if k and m else ONE
        if j == 0 or m == 0 or (j > 0) == (m > 0):
            out = {(j + m, k + l): coeff}
        else:
            if j > 0:  # B^j B*^n
                n = -m
                base, step = self._p2, q_pow(2)
            else:  # B*^j' B^n
                n = m
                base, step = self._p1, q_pow(-2)
            r = min(abs(j), n)
            poly = [ONE]
            for i in range(1, r + 1):
                poly = _poly_mul(poly, _poly_rescale(base, step ** (n - i)))
            out = {}
            for i, a in enumerate(poly):
                if not a.is_zero():
                    out[(j + m, k + l + i)] = coeff * a
        self._cache[key] = out
        return out

    def monomial_power(self, m, e: int) -> Element:
        x = self.one()
        g = self.from_monomial(m)
        for _ in range(e):
            x = x * g
        return x

    # -- word rewriting -------------------------------------------------------

    def _rules(self):
        c, d = self.params.c, self.params.d
        cd = c * d
        return {
            ("A", "B"): [(q_pow(-2), ("B", "A"))],
            ("A", "B*"): [(q_pow(2), ("B*", "A"))],
            ("B*", "B"): [(cd, ()), (c - d, ("A",)), (-ONE, ("A", "A"))],
            ("B", "B*"): [(cd, ()), (q_pow(2) * (c - d), ("A",)), (-q_pow(4), ("A", "A"))],
        }

    def normal_form(self, word) -> Element:
        """Rewrite a word in the generators to its PBW expansion.

        Rewriting is leftmost-first on adjacent out-of-order pairs.  Every
        rule either removes an inversion (A before B or B*) or shortens the
        word, so the process terminates.
        """
        word = parse_word(word)
        rules = self._rules()
        pending: dict = {tuple(word): ONE}
        done: dict = {}
        while pending:
            w, coeff = pending.popitem()
            if coeff.is_zero():
                continue
            for i in range(len(w) - 1):
                rhs = rules.get((w[i], w[i + 1]))
                if rhs is not None:
                    for c, repl in rhs:
                        if c.is_zero():
                            continue
                        nw = w[:i] + repl + w[i + 2:]
                        v = pending.get(nw)
                        pending[nw] = coeff * c if v is None else v + coeff * c
                    break
            else:
                m = _word_to_monomial(w)
                v = done.get(m)
                done[m] = coeff if v is None else v + coeff
        return Element(self, done)

    # -- automorphisms and gradings ----------------------------------------

    def apply_automorphism(self, sig: Automorphism, x: Element) -> Element:
        sig.check_legal(self.params)
        return Element(self, {m: c * sig.eigenvalue(m) for m, c in x.terms.items()})

    def parse(self, text: str) -> Element:
        return parse_element(text, self)


def _word_to_monomial(w) -> tuple:
    j = 0
    k = 0
    for g in w:
        if g == "A":
            k += 1
        elif g == "B":
            j += 1
        else:
            j -= 1
    return (j, k)


_LETTERS = {"A": "A", "B": "B", "B*": "B*", "Bs": "B*", "S": "B*"}


def parse_word(word) -> list:
    """Accept ``"B* B A"``, ``["B*", "B"]`` or ``"B*BA"``; returns letters."""
    if isinstance(word, str):
        toks = word.replace(",", " ").split()
        if len(toks) == 1 and len(toks[0]) > 2:
            s, toks = toks[0], []
            i = 0
            while i < len(s):
                if s[i] == "B" and i + 1 < len(s) and s[i + 1] == "*":
                    toks.append("B*")
                    i += 2
                else:
                    toks.append(s[i])
                    i += 1
        word = toks
    out = []
    for g in word:
        if g not in _LETTERS:
            raise ValueError(f"unknown generator {g!r}")
        out.append(_LETTERS[g])
    return out


def weight(x: Element):
    """Common weight (B-exponent) of a homogeneous element, else ``"mixed"``."""
    ws = {m[0] for m in x.terms}
    if not ws:
        return 0
    if len(ws) == 1:
        return ws.pop()
    return MIXED


def degree(x: Element) -> int:
    if not x.terms:
        return 0
    return max(x.alg.mono_degree(m) for m in x.terms)


def apply_automorphism(sig: Automorphism, x: Element) -> Element:
    return x.alg.apply_automorphism(sig, x)


def normal_form(word, params) -> Element:
    return PodlesAlgebra(params).normal_form(word)


def iter_words(alphabet: Iterable[str], length: int) -> Iterator[tuple]:
    from itertools import product

    return product(tuple(alphabet), repeat=length)


# -- element parsing ------------------------------------------------------------

def parse_element(text: str, alg: PodlesAlgebra) -> Element:
    """Parse e.g. ``"B*^2 A - q^2*A^3 + 1"`` into an element of ``alg``.

    Juxtaposition is multiplication, so ``"B A^2"`` is ``B*A^2``.
    """
    src = str(text).replace("B*", "Bs").replace("^", "**")
    src = _insert_products(src)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse element {text!r}") from exc
    names = {"A": alg.A, "B": alg.B, "Bs": alg.Bs}
    return _as_element(_eval(tree.body, names, text), alg)


def _insert_products(src: str) -> str:
    # "B A**2" -> "B*A**2"; only inserts between an operand end and a name/paren start
    toks = src.split()
    out = []
    for t in toks:
        if out and (out[-1][-1].isalnum() or out[-1][-1] == ")") and (t[0].isalpha() or t[0] == "("):
            out.append("*")
        out.append(t)
    return " ".join(out)


def _as_element(v, alg):
    if isinstance(v, Element):
        return v
    return alg.scalar(v)


def _eval(node, names, text):
    from .scalar import Q, S

    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return ScalarK.coerce(node.value)
    if isinstance(node, ast.Name):
        if node.id in names:
            return names[node.id]
        if node.id == "q":
            return Q
        if node.id == "s":
            return S
        raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, names, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval(node.left, names, text)
        if isinstance(node.op, ast.Pow):
            e = node.right
            sign = 1
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                sign, e = -1, e.operand
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise ValueError(f"exponent must be an integer in {text!r}")
            return left ** (sign * e.value)
        right = _eval(node.right, names, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, Element):
                raise ValueError("division by an algebra element")
            return left * right.inverse() if isinstance(left, Element) else left / right
    raise ValueError(f"unsupported syntax in {text!r}")
