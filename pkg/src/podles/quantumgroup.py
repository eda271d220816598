"""Quantum SU(2): PBW algebra, Hopf structure, U_q(su2) actions, Haar state.

Monomials are triples ``(k, m, n)`` meaning ``a^k c^m c*^n`` for ``k >= 0``
and ``a*^(-k) c^m c*^n`` for ``k < 0``.  ``c`` and ``c*`` commute, and the
standard sphere sits inside as the algebra generated by

    A = c*c,   B = a c,   B* = c*a*.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .algebra import Element, PBWAlgebra, PodlesAlgebra, _poly_mul, _poly_rescale
from .scalar import ONE, ZERO, ScalarK, parse_scalar, q_pow, s_pow

GENERATORS = ("E", "F", "K", "Kinv")
SUQ_LETTERS = ("a", "a*", "c", "c*")

_GEN_MONO = {"a": (1, 0, 0), "a*": (-1, 0, 0), "c": (0, 1, 0), "c*": (0, 0, 1)}


@dataclass(frozen=True)
class PairingTable:
    """Pairing values <f, g> for f in {E, F, K, Kinv} and g in {a, a*, c, c*}."""

    version: str
    values: tuple  # ((f, g, ScalarK), ...)
    coproduct: tuple  # ((f, text), ...)

    def value(self, f: str, g: str) -> ScalarK:
        for ff, gg, v in self.values:
            if ff == f and gg == g:
                return v
        raise KeyError((f, g))

    def as_dict(self) -> dict:
        out: dict = {}
        for f, g, v in self.values:
            out.setdefault(f, {})[g] = str(v)
        return out


def load_pairing_table(path=None) -> PairingTable:
    if path is None:
        text = resources.files("podles").joinpath("fixtures/pairing_table.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = json.loads(text)
    vals = []
    for f in GENERATORS:
        row = raw["pairing"][f]
        for g in SUQ_LETTERS:
            vals.append((f, g, parse_scalar(row[g])))
    return PairingTable(raw["version"], tuple(vals), tuple(sorted(raw["coproduct"].items())))


@lru_cache(maxsize=1)
def default_pairing_table() -> PairingTable:
    return load_pairing_table()


def fixtures_version() -> str:
    return default_pairing_table().version


class SUq2Algebra(PBWAlgebra):
    """A(SU_q(2)) with ac = q ca, ac* = q c*a, cc* = c*c,
    a*a + c*c = 1 and aa* + q^2 c*c = 1."""

    unit = (0, 0, 0)

    def __init__(self, table: PairingTable | None = None):
        self.table = table or default_pairing_table()
        # a*a = p1(x), aa* = p2(x) with x = cc*
        self._p1 = [ONE, -ONE]
        self._p2 = [ONE, -q_pow(2)]
        self._cache: dict = {}
        self._act_cache: dict = {}
        self.a = self.from_monomial((1, 0, 0))
        self.astar = self.from_monomial((-1, 0, 0))
        self.c = self.from_monomial((0, 1, 0))
        self.cstar = self.from_monomial((0, 0, 1))

    def __eq__(self, other):
        return isinstance(other, SUq2Algebra) and self.table == other.table

    def __hash__(self):
        return hash(("suq2", self.table.version))

    def mono_degree(self, m) -> int:
        return abs(m[0]) + m[1] + m[2]

    def mono_sort_key(self, m):
        return (abs(m[0]) + m[1] + m[2], m[0] < 0, abs(m[0]), m[1], m[2])

    def mono_str(self, m) -> str:
        k, mm, n = m
        parts = []
        if k > 0:
            parts.append("a" if k == 1 else f"a^{k}")
        elif k < 0:
            parts.append("a*" if k == -1 else f"a*^{-k}")
        if mm:
            parts.append("c" if mm == 1 else f"c^{mm}")
        if n:
            parts.append("c*" if n == 1 else f"c*^{n}")
        return " ".join(parts) if parts else "1"

    def generator(self, g: str) -> Element:
        return self.from_monomial(_GEN_MONO[g])

    def monomials(self, max_degree: int) -> list:
        out = []
        for deg in range(max_degree + 1):
            for k in range(-deg, deg + 1):
                rest = deg - abs(k)
                for m in range(rest + 1):
                    out.append((k, m, rest - m))
        return out

    def mul_monomials(self, m1, m2) -> dict:
        key = (m1, m2)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        k1, c1, d1 = m1
        k2, c2, d2 = m2
        # c^m c*^n a^k = q^{-(m+n)k} a^k c^m c*^n for signed k
        coeff = q_pow(-(c1 + d1) * k2) if (c1 + d1) and k2 else ONE
        if k1 == 0 or k2 == 0 or (k1 > 0) == (k2 > 0):
            poly = [ONE]
        else:
            if k1 > 0:  # a^j a*^n
                n, base, step = -k2, self._p2, q_pow(2)
            else:  # a*^j a^n
                n, base, step = k2, self._p1, q_pow(-2)
            poly = [ONE]
            for i in range(1, min(abs(k1), n) + 1):
                poly = _poly_mul(poly, _poly_rescale(base, step ** (n - i)))
        out = {}
        for i, v in enumerate(poly):
            if not v.is_zero():
                out[(k1 + k2, c1 + c2 + i, d1 + d2 + i)] = coeff * v
        self._cache[key] = out
        return out

    # -- rewriting oracle -----------------------------------------------------

    def _rules(self):
        q, qi = q_pow(1), q_pow(-1)
        return {
            ("c", "a"): [(qi, ("a", "c"))],
            ("c*", "a"): [(qi, ("a", "c*"))],
            ("c", "a*"): [(q, ("a*", "c"))],
            ("c*", "a*"): [(q, ("a*", "c*"))],
            ("c*", "c"): [(ONE, ("c", "c*"))],
            ("a*", "a"): [(ONE, ()), (-ONE, ("c", "c*"))],
            ("a", "a*"): [(ONE, ()), (-q_pow(2), ("c", "c*"))],
        }

    def normal_form(self, word) -> Element:
        """PBW expansion of a word in a, a*, c, c* by leftmost rewriting."""
        word = parse_suq_word(word)
        rules = self._rules()
        pending = {tuple(word): ONE}
        done: dict = {}
        while pending:
            w, coeff = pending.popitem()
            if coeff.is_zero():
                continue
            for i in range(len(w) - 1):
                rhs = rules.get((w[i], w[i + 1]))
                if rhs is not None:
                    for c, repl in rhs:
                        nw = w[:i] + repl + w[i + 2:]
                        v = pending.get(nw)
                        pending[nw] = coeff * c if v is None else v + coeff * c
                    break
            else:
                k = sum(1 if g == "a" else -1 if g == "a*" else 0 for g in w)
                m = (k, w.count("c"), w.count("c*"))
                v = done.get(m)
                done[m] = coeff if v is None else v + coeff
        return Element(self, done)

    def monomial_word(self, m) -> list:
        k, mm, n = m
        w = ["a"] * k if k > 0 else ["a*"] * (-k)
        return w + ["c"] * mm + ["c*"] * n

    # -- Hopf structure -------------------------------------------------------

    def counit(self, x: Element) -> ScalarK:
        out = ZERO
        for (k, m, n), c in x.terms.items():
            if m == 0 and n == 0:
                out = out + c
        return out

    def coproduct(self, x: Element) -> "Tensor":
        out = Tensor(self)
        for mono, c in x.terms.items():
            t = Tensor.unit(self)
            for g in self.monomial_word(mono):
                t = t * self._generator_coproduct(g)
            out = out + t.scale(c)
        return out

    def _generator_coproduct(self, g: str) -> "Tensor":
        a, ast_, c, cs = _GEN_MONO["a"], _GEN_MONO["a*"], _GEN_MONO["c"], _GEN_MONO["c*"]
        q = q_pow(1)
        terms = {
            "a": {(a, a): ONE, (cs, c): -q},
            "c": {(c, a): ONE, (ast_, c): ONE},
            "c*": {(cs, ast_): ONE, (a, cs): ONE},
            "a*": {(ast_, ast_): ONE, (c, cs): -q},
        }[g]
        return Tensor(self, terms)

    def pairing(self, f: str, x: Element) -> ScalarK:
        """<f, x> = eps(x <| f)."""
        return self.counit(self.act_right(f, x))

    def pairing_by_coproduct(self, f: str, x: Element) -> ScalarK:
        """<f, x> from generator values and Delta(f), without using the action."""
        out = ZERO
        for mono, c in x.terms.items():
            out = out + c * self._pair_word(f, self.monomial_word(mono))
        return out

    def _pair_word(self, f: str, word) -> ScalarK:
        tab = self.table
        if f in ("K", "Kinv"):
            v = ONE
            for g in word:
                v = v * tab.value(f, g)
            return v
        # Delta f = f (x) K + Kinv (x) f
        out = ZERO
        for i, g in enumerate(word):
            v = tab.value(f, g)
            if v.is_zero():
                continue
            for h in word[:i]:
                v = v * tab.value("Kinv", h)
            for h in word[i + 1:]:
                v = v * tab.value("K", h)
            out = out + v
        return out

    def _generator_action(self, f: str, g: str, side: str) -> Element:
        # x <| f = sum <f, x1> x2 ;  f |> x = sum x1 <f, x2>
        out = self.zero()
        for (m1, m2), c in self._generator_coproduct(g).terms.items():
            left, right = self.from_monomial(m1), self.from_monomial(m2)
            if side == "right":
                v = self.pairing_by_coproduct(f, left)
                out = out + right.scale(c * v)
            else:
                v = self.pairing_by_coproduct(f, right)
                out = out + left.scale(c * v)
        return out

    def _act_monomial(self, f: str, mono, side: str) -> Element:
        key = (f, mono, side)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        word = self.monomial_word(mono)
        if f in ("K", "Kinv"):
            out = self.one()
            for g in word:
                out = out * self._generator_action(f, g, side)
        else:
            # (xy) <| f = (x <| f1)(y <| f2) with Delta f = f (x) K + Kinv (x) f
            out = self.zero()
            for i, g in enumerate(word):
                term = self.one()
                for j, h in enumerate(word):
                    if j < i:
                        term = term * self._generator_action("Kinv", h, side)
                    elif j == i:
                        term = term * self._generator_action(f, h, side)
                    else:
                        term = term * self._generator_action("K", h, side)
                out = out + term
        self._act_cache[key] = out
        return out

    def act_right(self, f: str, x: Element) -> Element:
        if f not in GENERATORS:
            raise ValueError(f"unknown U_q(su2) generator {f!r}")
        out = self.zero()
        for mono, c in x.terms.items():
            out = out + self._act_monomial(f, mono, "right").scale(c)
        return out

    def act_left(self, f: str, x: Element) -> Element:
        """Left action f |> x = sum x1 <f, x2>, read off the full coproduct."""
        if f not in GENERATORS:
            raise ValueError(f"unknown U_q(su2) generator {f!r}")
        out = self.zero()
        for mono, c in x.terms.items():
            out = out + self._act_left_monomial(f, mono).scale(c)
        return out

    def _act_left_monomial(self, f, mono):
        key = (f, mono, "left")
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        out = self.zero()
        for (m1, m2), c in self.coproduct(self.from_monomial(mono)).terms.items():
            v = self.pairing_by_coproduct(f, self.from_monomial(m2))
            if not v.is_zero():
                out = out + self.from_monomial(m1, c * v)
        self._act_cache[key] = out
        return out

    def act_right_by_coproduct(self, f: str, x: Element) -> Element:
        """x <| f evaluated literally as sum <f, x1> x2 over the full coproduct."""
        out = self.zero()
        for (m1, m2), c in self.coproduct(x).terms.items():
            v = self.pairing_by_coproduct(f, self.from_monomial(m1))
            if not v.is_zero():
                out = out + self.from_monomial(m2, c * v)
        return out

    # -- Haar state -----------------------------------------------------------

    def haar(self, x: Element) -> ScalarK:
        """h(a^k c^m c*^n) = 0 unless k = 0 and m = n; h((cc*)^m) = (1-q^2)/(1-q^{2m+2})."""
        out = ZERO
        for (k, m, n), c in x.terms.items():
            if k == 0 and m == n:
                out = out + c * _haar_power(m)
        return out

    # -- the standard sphere --------------------------------------------------

    def embed_sphere(self, x: Element) -> Element:
        alg = x.alg
        if not isinstance(alg, PodlesAlgebra) or not alg.is_standard:
            raise ValueError("embed_sphere is defined only for the standard sphere (c, d) = (1, 0)")
        out = self.zero()
        for mono, c in x.terms.items():
            out = out + self._embed_monomial(mono).scale(c)
        return out

    def _embed_monomial(self, mono) -> Element:
        key = ("embed", mono)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        j, k = mono
        B = self.a * self.c
        Bs = self.cstar * self.astar
        A = self.c * self.cstar
        out = (B if j > 0 else Bs) ** abs(j) * A ** k
        self._act_cache[key] = out
        return out

    def deriv_E(self, x: Element) -> Element:
        return self.act_right("E", self.embed_sphere(x))

    def deriv_F(self, x: Element) -> Element:
        return self.act_right("F", self.embed_sphere(x))


@lru_cache(maxsize=None)
def _haar_power(m: int) -> ScalarK:
    return (ONE - q_pow(2)) / (ONE - q_pow(2 * m + 2))


class Tensor:
    """Element of A (x) A as a dict {(mono1, mono2): coefficient}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def unit(cls, alg) -> "Tensor":
        return cls(alg, {(alg.unit, alg.unit): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            out[k] = v if w is None else w + v
        return Tensor(self.alg, out)

    def scale(self, c):
        return Tensor(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        alg = self.alg
        out: dict = {}
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                c12 = c1 * c2
                for mx, cx in alg.mul_monomials(x1, x2).items():
                    for my, cy in alg.mul_monomials(y1, y2).items():
                        key = (mx, my)
                        v = c12 * cx * cy
                        w = out.get(key)
                        out[key] = v if w is None else w + v
        return Tensor(alg, out)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.terms == other.terms

    def apply_left(self, fn) -> Element:
        """sum fn(x1) x2 for a scalar-valued fn on monomials."""
        out = self.alg.zero()
        for (m1, m2), c in self.terms.items():
            v = fn(m1)
            if not v.is_zero():
                out = out + self.alg.from_monomial(m2, c * v)
        return out

    def apply_right(self, fn) -> Element:
        out = self.alg.zero()
        for (m1, m2), c in self.terms.items():
            v = fn(m2)
            if not v.is_zero():
                out = out + self.alg.from_monomial(m1, c * v)
        return out

    def __len__(self):
        return len(self.terms)


def parse_suq_word(word) -> list:
    if isinstance(word, str):
        word = word.replace(",", " ").split()
    out = list(word)
    for g in out:
        if g not in SUQ_LETTERS:
            raise ValueError(f"unknown SU_q(2) generator {g!r}")
    return out


def suq_normal_form(word) -> Element:
    return SUq2Algebra().normal_form(word)


def suq_mul(x: Element, y: Element) -> Element:
    return x.alg.mul(x, y)


def half_power(k: int) -> ScalarK:
    """q^{k/2} = s^k."""
    return s_pow(k)

