"""Hochschild chains on A(c, d) and the operators acting on them.

A chain of degree n is a sparse map from (n+1)-tuples of PBW monomials to
scalars.  The operators follow the usual conventions:

    b'(a_0..a_n)      = sum_{j<n} (-1)^j (.., a_j a_{j+1}, ..)
    b_sigma(a_0..a_n) = b'(a_0..a_n) + (-1)^n (sigma(a_n) a_0, a_1, .., a_{n-1})
    lambda(a_0..a_n)  = (-1)^n (sigma(a_n), a_0, .., a_{n-1})

Diagonal automorphisms act on a tuple by a single eigenvalue, so the
quotient by (id - lambda^{n+1}) is realised by discarding tuples whose
eigenvalue differs from 1 (:func:`project_sigma`).
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Automorphism, Element, PodlesAlgebra
from .scalar import ONE, ZERO, ScalarK, q_pow


class Chain:
    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: PodlesAlgebra, n: int, terms=None):
        self.alg = alg
        self.n = n
        self.terms = {t: c for t, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def zero(cls, alg, n):
        return cls(alg, n)

    @classmethod
    def basis(cls, alg, tup, coeff=ONE):
        return cls(alg, len(tup) - 1, {tuple(tup): ScalarK.coerce(coeff)})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, tup) -> ScalarK:
        return self.terms.get(tuple(tup), ZERO)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"chain degrees differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return Chain(self.alg, self.n, out)

    def __neg__(self):
        return Chain(self.alg, self.n, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = ScalarK.coerce(c)
        return Chain(self.alg, self.n, {t: v * c for t, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, ScalarK)):
            return self.scale(c)
        return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def support(self):
        key = self.alg.mono_sort_key
        return sorted(self.terms, key=lambda t: (sum(self.alg.mono_degree(m) for m in t), [key(m) for m in t]))

    def degree(self) -> int:
        return max((sum(self.alg.mono_degree(m) for m in t) for t in self.terms), default=0)

    def weights(self) -> set:
        return {sum(m[0] for m in t) for t in self.terms}

    def to_pairs(self):
        ms = self.alg.mono_str
        return [[str(self.terms[t]), [ms(m) for m in t]] for t in self.support()]

    def __str__(self):
        if not self.terms:
            return "0"
        ms = self.alg.mono_str
        return " + ".join(f"({self.terms[t]})*({', '.join(ms(m) for m in t)})" for t in self.support())

    __repr__ = __str__


def _accumulate(out: dict, items, scale=None):
    for k, v in items:
        if scale is not None:
            v = v * scale
        w = out.get(k)
        out[k] = v if w is None else w + v


def tensor(*elements: Element) -> Chain:
    """Multilinear expansion of (x_0, ..., x_n)."""
    alg = elements[0].alg
    acc = {(): ONE}
    for x in elements:
        nxt: dict = {}
        for t, c in acc.items():
            for m, v in x.terms.items():
                _accumulate(nxt, [(t + (m,), c * v)])
        acc = nxt
    return Chain(alg, len(elements) - 1, acc)


# -- boundary operators on single tuples -------------------------------------

def b_tuple(alg: PodlesAlgebra, tup, sig: Automorphism | None) -> dict:
    """b' (sig None) or b_sigma of a basis tuple, as a dict."""
    n = len(tup) - 1
    out: dict = {}
    for j in range(n):
        sign = ONE if j % 2 == 0 else -ONE
        prod = alg.mul_monomials(tup[j], tup[j + 1])
        head, tail = tup[:j], tup[j + 2:]
        for m, c in prod.items():
            _accumulate(out, [(head + (m,) + tail, sign * c)])
    if sig is not None:
        sign = ONE if n % 2 == 0 else -ONE
        ev = sig.eigenvalue(tup[n])
        for m, c in alg.mul_monomials(tup[n], tup[0]).items():
            _accumulate(out, [((m,) + tup[1:n], sign * ev * c)])
    return out


def _apply_tuplewise(x: Chain, fn, n_out: int) -> Chain:
    out: dict = {}
    for t, c in x.terms.items():
        _accumulate(out, fn(t).items(), c)
    return Chain(x.alg, n_out, out)


def b_prime(x: Chain) -> Chain:
    if x.n < 1:
        raise ValueError("b' needs a chain of degree >= 1")
    return _apply_tuplewise(x, lambda t: b_tuple(x.alg, t, None), x.n - 1)


def b_sigma(sig: Automorphism, x: Chain) -> Chain:
    if x.n < 1:
        raise ValueError("b_sigma needs a chain of degree >= 1")
    sig.check_legal(x.alg.params)
    return _apply_tuplewise(x, lambda t: b_tuple(x.alg, t, sig), x.n - 1)


def cyclic_op(sig: Automorphism, x: Chain) -> Chain:
    """lambda_sigma(a_0..a_n) = (-1)^n (sigma(a_n), a_0, .., a_{n-1})."""
    sign = ONE if x.n % 2 == 0 else -ONE
    out = {}
    for t, c in x.terms.items():
        out[(t[-1],) + t[:-1]] = c * sign * sig.eigenvalue(t[-1])
    return Chain(x.alg, x.n, out)


def sigma_tensor(sig: Automorphism, x: Chain) -> Chain:
    return Chain(x.alg, x.n, {t: c * sig.tuple_eigenvalue(t) for t, c in x.terms.items()})


def project_sigma(sig: Automorphism, x: Chain) -> Chain:
    """Representative in the eigenvalue-1 block of A^{(n+1)}/(id - lambda^{n+1})."""
    if sig.is_identity():
        return x
    return Chain(x.alg, x.n, {t: c for t, c in x.terms.items() if sig.tuple_eigenvalue(t).is_one()})


def insert_unit(x: Chain) -> Chain:
    u = x.alg.unit
    return Chain(x.alg, x.n + 1, {(u,) + t: c for t, c in x.terms.items()})


def connes_B(sig: Automorphism, x: Chain) -> Chain:
    """B = (id - lambda) s N with N = sum_{i<=n} lambda^i, projected."""
    acc = x
    total = x
    for _ in range(x.n):
        acc = cyclic_op(sig, acc)
        total = total + acc
    y = insert_unit(total)
    return project_sigma(sig, y - cyclic_op(sig, y))


def B0_display(sig: Automorphism, a0: Element) -> Chain:
    one = a0.alg.one()
    return project_sigma(sig, tensor(one, a0) + tensor(a0.alg.apply_automorphism(sig, a0), one))


def B1_display(sig: Automorphism, a0: Element, a1: Element) -> Chain:
    alg = a0.alg
    one = alg.one()
    sa1 = alg.apply_automorphism(sig, a1)
    return project_sigma(
        sig,
        tensor(one, a0, a1) - tensor(sa1, one, a0) - tensor(one, sa1, a0) + tensor(a0, one, a1),
    )


class ConventionMismatch(AssertionError):
    pass


def convention_guard(sig: Automorphism, alg: PodlesAlgebra, max_degree: int = 2) -> bool:
    """Require the general B to agree with the low-degree displays on all
    eigenvalue-1 basis inputs of degree <= max_degree; raise otherwise."""
    monos = alg.monomials(max_degree)
    for m in monos:
        x = alg.from_monomial(m)
        if not sig.eigenvalue(m).is_one():
            continue
        got = connes_B(sig, Chain.basis(alg, (m,)))
        if got != B0_display(sig, x):
            raise ConventionMismatch(f"B_0 disagrees on {alg.mono_str(m)}")
    for m0 in monos:
        for m1 in monos:
            if alg.mono_degree(m0) + alg.mono_degree(m1) > max_degree:
                continue
            if not sig.tuple_eigenvalue((m0, m1)).is_one():
                continue
            got = connes_B(sig, Chain.basis(alg, (m0, m1)))
            want = B1_display(sig, alg.from_monomial(m0), alg.from_monomial(m1))
            if got != want:
                raise ConventionMismatch(f"B_1 disagrees on ({alg.mono_str(m0)}, {alg.mono_str(m1)})")
    return True


def first_homology_relation_check(sig: Automorphism, t: Element, m: int) -> bool:
    """Check b(sum_j alpha^j (t^j, t^{m-j}, t) - (t^{m+1}, 1, 1))
    = (sum_j alpha^j)(t^m, t) - (1, t^{m+1}) in the eigenvalue-1 quotient,
    where sigma(t) = alpha t."""
    alg = t.alg
    st = alg.apply_automorphism(sig, t)
    alpha = _eigen_ratio(t, st)
    one = alg.one()
    pw = [one]
    for _ in range(m + 1):
        pw.append(pw[-1] * t)
    lhs_chain = tensor(pw[m + 1], one, one).scale(-1)
    total = ZERO
    for j in range(m + 1):
        lhs_chain = lhs_chain + tensor(pw[j], pw[m - j], t).scale(alpha ** j)
        total = total + alpha ** j
    lhs = project_sigma(sig, b_sigma(sig, lhs_chain))
    rhs = project_sigma(sig, tensor(pw[m], t).scale(total) - tensor(one, pw[m + 1]))
    return lhs == rhs


def _eigen_ratio(t: Element, st: Element) -> ScalarK:
    if t.is_zero():
        raise ValueError("t must be nonzero")
    m = next(iter(t.terms))
    alpha = st.coefficient(m) / t.coefficient(m)
    if st != t.scale(alpha):
        raise ValueError("t is not an eigenvector of sigma")
    return alpha


def is_degenerate(tup) -> bool:
    """True if some entry after the first is the unit (normalized complex)."""
    return any(m == (0, 0) for m in tup[1:])


# -- linear functionals on A(c, d) ------------------------------------------------

class Functional:
    """Linear functional given by a rule on PBW monomials."""

    def __init__(self, name: str, alg: PodlesAlgebra, rule):
        self.name = name
        self.alg = alg
        self._rule = rule
        self._memo: dict = {}

    def on_monomial(self, m) -> ScalarK:
        v = self._memo.get(m)
        if v is None:
            v = self._rule(m)
            self._memo[m] = v
        return v

    def __call__(self, x: Element) -> ScalarK:
        out = ZERO
        for m, c in x.terms.items():
            v = self.on_monomial(m)
            if not v.is_zero():
                out = out + c * v
        return out

    def __repr__(self):
        return f"Functional({self.name})"


def eval_functional(phi: Functional, x: Element) -> ScalarK:
    return phi(x)


def invariant_functional(alg: PodlesAlgebra) -> Functional:
    """h(A^n) = f(0)/f(n) (c^{n+1} - (-d)^{n+1})/(c+d), f(n) = q^-2 - q^{2n};
    zero on monomials involving B or B*."""
    c, d = alg.params.c, alg.params.d

    def f(n):
        return q_pow(-2) - q_pow(2 * n)

    def rule(m):
        j, n = m
        if j:
            return ZERO
        return f(0) / f(n) * (c ** (n + 1) - (-d) ** (n + 1)) / (c + d)

    return Functional("h", alg, rule)


def _g(c: ScalarK, d: ScalarK, t: int) -> ScalarK:
    return (c * d) / (c + d) * (c ** t - (-d) ** t)


def tau0(alg: PodlesAlgebra, b: int) -> Functional:
    """0-cocycle dual to [1] at lambda = q^{-(2b+2)}.

    For cd != 0: tau_0(A^n) = g(n-b-1)/f(n) with f(n) = lambda^{-1} - q^{2n},
    n != b+1.  For cd = 0: the indicator of the unit.
    """
    c, d = alg.params.c, alg.params.d
    lam_inv = q_pow(2 * b + 2)

    def rule(m):
        j, n = m
        if j:
            return ZERO
        if (c * d).is_zero():
            return ONE if n == 0 else ZERO
        if n == b + 1:
            return ZERO
        return _g(c, d, n - b - 1) / (lam_inv - q_pow(2 * n))

    return Functional("tau0", alg, rule)


def tau_top(alg: PodlesAlgebra, b: int) -> Functional:
    """Indicator of A^{b+1}."""
    return Functional(f"tau{b + 1}", alg, lambda m: ONE if m == (0, b + 1) else ZERO)


def tau0_standard(alg: PodlesAlgebra) -> Functional:
    """Indicator of the unit (dual to [1] on the standard sphere)."""
    return Functional("tau0", alg, lambda m: ONE if m == (0, 0) else ZERO)


def h_A(alg: PodlesAlgebra) -> Functional:
    """h_A(1) = 0, h_A(A^{r+1}) = (1-q^4)/(1-q^{2r+4}), zero off powers of A."""

    def rule(m):
        j, n = m
        if j or n == 0:
            return ZERO
        return (ONE - q_pow(4)) / (ONE - q_pow(2 * n + 2))

    return Functional("h_A", alg, rule)


def haar_restricted(alg: PodlesAlgebra) -> Functional:
    """h(A^r) = (1-q^2)/(1-q^{2r+2}) on the standard sphere."""

    def rule(m):
        j, n = m
        if j:
            return ZERO
        return (ONE - q_pow(2)) / (ONE - q_pow(2 * n + 2))

    return Functional("haar", alg, rule)


def is_twisted_zero_cocycle(phi: Functional, sig: Automorphism, pairs) -> bool:
    """phi(a_0 a_1) == phi(sigma(a_1) a_0) for every (a_0, a_1) in pairs."""
    alg = phi.alg
    for a0, a1 in pairs:
        if phi(a0 * a1) != phi(alg.apply_automorphism(sig, a1) * a0):
            return False
    return True


# -- periodicity pairing and named chains ------------------------------------------

def S_chain(x: Chain) -> Element:
    """Sum of coefficient * (a_0 a_1 ... a_n)."""
    alg = x.alg
    out = alg.zero()
    for t, c in x.terms.items():
        prod = alg.from_monomial(t[0])
        for m in t[1:]:
            prod = prod * alg.from_monomial(m)
        out = out + prod.scale(c)
    return out


def S_pair(phi: Functional, x: Chain) -> ScalarK:
    return phi(S_chain(x))


def make_eta(alg: PodlesAlgebra) -> Chain:
    A, B, Bs = alg.A, alg.B, alg.Bs
    q2, qm2 = q_pow(2), q_pow(-2)
    return (
        tensor(Bs, A, B)
        + tensor(B, Bs, A).scale(q2)
        + tensor(A, B, Bs).scale(q2)
        - tensor(Bs, B, A).scale(qm2)
        - tensor(A, Bs, B).scale(qm2)
        - tensor(B, A, Bs)
        + tensor(A, A, A).scale(q_pow(6) - qm2)
    )


def make_omega2(alg: PodlesAlgebra, b: int) -> Chain:
    """The degree-2 cycle generating HH_2 at lambda = q^{-(2b+2)}."""
    A, B, Bs = alg.A, alg.B, alg.Bs
    one = alg.one()
    c, d = alg.params.c, alg.params.d
    Ab = A ** b
    Ab1 = A ** (b + 1)
    AbB = Ab * B
    qm2 = q_pow(-2)
    inner = (
        tensor(Ab1, B, Bs)
        - tensor(Ab1, Bs, B)
        + tensor(AbB, Bs, A).scale(2)
        - tensor(AbB, A, Bs).scale(2 * qm2)
    )
    tail = tensor(Ab, Bs, B) - tensor(Ab, B, Bs).scale(qm2) + tensor(Ab, A, A).scale(ONE - q_pow(2))
    return (
        inner.scale(2)
        + tensor(Ab1, A, A).scale(2 * (q_pow(4) - ONE))
        + tensor(Ab, one, one).scale((ONE - qm2) * c * d * (c - d))
        + tail.scale(c - d)
    )


# -- the degree-2 cocycle on the standard sphere --------------------------------------

class TauCocycle:
    """tau(a_0, a_1, a_2) = h(a_0 [(a_1<|F)(a_2<|E) - q^2 (a_1<|E)(a_2<|F)])
    on the standard sphere, with h the Haar state of quantum SU(2)."""

    def __init__(self, alg: PodlesAlgebra, group=None):
        if not alg.is_standard:
            raise ValueError("tau is defined on the standard sphere (c, d) = (1, 0)")
        from .quantumgroup import SUq2Algebra

        self.alg = alg
        self.G = group or SUq2Algebra()
        self._memo: dict = {}
        self._emb: dict = {}
        self._dE: dict = {}
        self._dF: dict = {}

    def _embed(self, m):
        v = self._emb.get(m)
        if v is None:
            v = self.G.embed_sphere(self.alg.from_monomial(m))
            self._emb[m] = v
        return v

    def _deriv(self, which, m):
        cache = self._dE if which == "E" else self._dF
        v = cache.get(m)
        if v is None:
            v = self.G.act_right(which, self._embed(m))
            cache[m] = v
        return v

    def on_tuple(self, t) -> ScalarK:
        v = self._memo.get(t)
        if v is None:
            m0, m1, m2 = t
            inner = self._deriv("F", m1) * self._deriv("E", m2) - (
                self._deriv("E", m1) * self._deriv("F", m2)
            ).scale(q_pow(2))
            v = self.G.haar(self._embed(m0) * inner)
            self._memo[t] = v
        return v

    def __call__(self, x: Chain) -> ScalarK:
        if x.n != 2:
            raise ValueError("tau is evaluated on 2-chains")
        out = ZERO
        for t, c in x.terms.items():
            v = self.on_tuple(t)
            if not v.is_zero():
                out = out + c * v
        return out


@lru_cache(maxsize=None)
def _tau_for_standard():
    return TauCocycle(PodlesAlgebra((1, 0)))


def tau_cocycle(x: Chain) -> ScalarK:
    if not x.alg.is_standard:
        raise ValueError("tau is defined on the standard sphere (c, d) = (1, 0)")
    return _tau_for_standard()(x)


def sw_sigma() -> Automorphism:
    """The twist of tau: B -> q^2 B."""
    return Automorphism(q_pow(2), 1)
