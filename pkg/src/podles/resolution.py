"""The free A^e-resolution of A(c, d) in levels 0..4 and its twisted coefficients.

Level n is free of rank 1, 3, 4, 4, 4 with the ordered bases in ``LABELS``.
Each differential is stored at module level as a table of A^e coefficients,

    d_n(e_i) = sum_j u_ij e_j,      u_ij in A^e = A (x) A^op,

and the twisted complex sigmaA (x)_{A^e} M_n = A^rank is obtained from the right
action a.(x (x) y^o) = sigma(y) a x.  The closed formulas used in hand
calculations are kept separately (``displayed``) so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Automorphism, Element, PodlesAlgebra
from .chains import Chain, is_degenerate, tensor
from .linalg import SparseMatrix
from .scalar import ONE, ZERO, ScalarK, q_pow

RANKS = (1, 3, 4, 4, 4)

LABELS = {
    0: ("1",),
    1: ("e_A", "e_B*", "e_B"),
    2: ("e_A^e_B*", "e_A^e_B", "th_S", "th_T"),
    3: ("e_A^th_S", "e_A^th_T", "e_B*^th_S", "e_B^th_T"),
    4: ("e_A^e_B*^th_S", "e_A^e_B^th_T", "th2_S", "th2_T"),
}

WEIGHT_OFFSETS = {
    0: (0,),
    1: (0, -1, 1),
    2: (-1, 1, 0, 0),
    3: (0, 0, -1, 1),
    4: (-1, 1, 0, 0),
}

# A-parity carried by a basis label (one for every e_A factor)
PARITY_OFFSETS = {
    0: (0,),
    1: (1, 0, 0),
    2: (1, 1, 0, 0),
    3: (1, 1, 0, 0),
    4: (1, 1, 0, 0),
}


def degree_offset(level: int) -> int:
    return level


class NotACycle(ValueError):
    pass


# -- A^e ---------------------------------------------------------------------------

class AeElement:
    """sum c (x (x) y^o) over pairs of PBW monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PodlesAlgebra, terms=None):
        self.alg = alg
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def pure(cls, x: Element, y: Element) -> "AeElement":
        out: dict = {}
        for mx, cx in x.terms.items():
            for my, cy in y.terms.items():
                out[(mx, my)] = out.get((mx, my), ZERO) + cx * cy
        return cls(x.alg, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return AeElement(self.alg, out)

    def __neg__(self):
        return AeElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AeElement":
        c = ScalarK.coerce(c)
        return AeElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "AeElement") -> "AeElement":
        # (x (x) y^o)(x' (x) y'^o) = x x' (x) (y' y)^o
        mul = self.alg.mul_monomials
        out: dict = {}
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                px = mul(x1, x2)
                py = mul(y2, y1)
                for mx, cx in px.items():
                    for my, cy in py.items():
                        k = (mx, my)
                        out[k] = out.get(k, ZERO) + c1 * c2 * cx * cy
        return AeElement(self.alg, out)

    def __eq__(self, other):
        return isinstance(other, AeElement) and (self - other).is_zero()

    def act(self, a: Element, sig: Automorphism) -> Element:
        """a . u with a.(x (x) y^o) = sigma(y) a x."""
        alg = self.alg
        out = alg.zero()
        for (mx, my), c in self.terms.items():
            y = alg.from_monomial(my, c * sig.eigenvalue(my))
            out = out + y * a * alg.from_monomial(mx)
        return out

    def on_tuple(self, chain: Chain) -> Chain:
        """Left A^e-action on the bar resolution: (x (x) y^o)(a_0..a_k) = (x a_0, .., a_k y)."""
        if chain.n < 1:
            raise ValueError("bar resolution elements have at least two entries")
        alg = self.alg
        out = Chain.zero(alg, chain.n)
        for (mx, my), c in self.terms.items():
            for t, v in chain.terms.items():
                first = alg.from_monomial(mx) * alg.from_monomial(t[0])
                last = alg.from_monomial(t[-1]) * alg.from_monomial(my)
                mids = [alg.from_monomial(m) for m in t[1:-1]]
                out = out + tensor(first, *mids, last).scale(c * v)
        return out


def _L(x: Element) -> AeElement:
    return AeElement.pure(x, x.alg.one())


def _R(y: Element) -> AeElement:
    return AeElement.pure(y.alg.one(), y)


def _unit(alg, c) -> AeElement:
    return AeElement.pure(alg.scalar(c), alg.one())


def module_differential(alg: PodlesAlgebra, n: int) -> list:
    """Rows of d_n: for each basis vector of M_n a list of (target slot, u)."""
    A, B, Bs = alg.A, alg.B, alg.Bs
    q, q2, q3 = q_pow(1), q_pow(2), q_pow(3)
    qi, qi3 = q_pow(-1), q_pow(-3)
    cmd = alg.params.c - alg.params.d
    LA, RA, LB, RB, LBs, RBs = _L(A), _R(A), _L(B), _R(B), _L(Bs), _R(Bs)
    sym = LA + RA
    if n == 1:
        return [[(0, LA - RA)], [(0, LBs - RBs)], [(0, LB - RB)]]
    if n == 2:
        return [
            [(1, LA - RA.scale(q2)), (0, -(LBs.scale(q2) - RBs))],
            [(2, LA.scale(q2) - RA), (0, -(LB - RB.scale(q2)))],
            [(1, LB.scale(-qi)), (2, RBs.scale(-qi)), (0, (sym.scale(q2) - _unit(alg, cmd)).scale(-q))],
            [(1, RB.scale(-qi)), (2, LBs.scale(-qi)), (0, (sym - _unit(alg, cmd)).scale(-qi))],
        ]
    if n == 3:
        return [
            [(2, LA - RA), (0, LB.scale(qi3)), (1, RBs.scale(qi3))],
            [(3, LA - RA), (0, RB.scale(qi)), (1, LBs.scale(qi))],
            [(2, LBs), (3, -RBs), (0, (LA + RA.scale(q2) - _unit(alg, cmd)).scale(-qi))],
            [(3, LB), (2, -RB), (1, (LA.scale(q2) + RA - _unit(alg, cmd)).scale(-qi))],
        ]
    if n == 4:
        return [
            [(2, LA - RA.scale(q2)), (0, LBs.scale(-q2)), (1, RBs)],
            [(3, LA.scale(q2) - RA), (1, -LB), (0, RB.scale(q2))],
            [(2, LB.scale(-qi)), (3, RBs.scale(-qi)), (0, (sym.scale(q2) - _unit(alg, cmd)).scale(-q))],
            [(2, RB.scale(-qi)), (3, LBs.scale(-qi)), (1, (sym - _unit(alg, cmd)).scale(-qi))],
        ]
    raise ValueError(f"differential d_{n} is only implemented for 1 <= n <= 4")


def module_composite(alg: PodlesAlgebra, n: int) -> list:
    """d_{n-1} d_n on each basis vector of M_n (n >= 2), as lists of A^e coefficients."""
    if n < 2:
        raise ValueError("composite needs n >= 2")
    upper = module_differential(alg, n)
    lower = module_differential(alg, n - 1)
    out = []
    for row in upper:
        acc = [AeElement(alg) for _ in range(RANKS[n - 2])]
        for j, u in row:
            for k, v in lower[j]:
                acc[k] = acc[k] + u * v
        out.append(acc)
    return out


def augmentation(u: AeElement) -> Element:
    """The multiplication map A^e -> A, x (x) y^o -> x y."""
    alg = u.alg
    out = alg.zero()
    for (mx, my), c in u.terms.items():
        out = out + alg.from_monomial(mx, c) * alg.from_monomial(my)
    return out


# -- coordinate vectors ---------------------------------------------------------------

@dataclass(frozen=True)
class ModuleVector:
    """An element sum_i a_i (x) e_i of sigmaA (x)_{A^e} M_level."""

    level: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != RANKS[self.level]:
            raise ValueError(f"level {self.level} needs {RANKS[self.level]} coordinates")

    @classmethod
    def zero(cls, alg, level):
        return cls(level, tuple(alg.zero() for _ in range(RANKS[level])))

    @classmethod
    def unit(cls, alg, level, slot, coeff=None):
        cs = [alg.zero() for _ in range(RANKS[level])]
        cs[slot] = coeff if coeff is not None else alg.one()
        return cls(level, tuple(cs))

    def __add__(self, other):
        return ModuleVector(self.level, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return ModuleVector(self.level, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c):
        return ModuleVector(self.level, tuple(a.scale(c) for a in self.coords))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.level == other.level and (self - other).is_zero()

    def __hash__(self):
        return hash(self.level)

    def __str__(self):
        parts = [f"({a}) {LABELS[self.level][i]}" for i, a in enumerate(self.coords) if not a.is_zero()]
        return " + ".join(parts) or "0"


def induced(alg: PodlesAlgebra, sig: Automorphism, v: ModuleVector) -> ModuleVector:
    """Twisted differential computed from the module-level tables."""
    n = v.level
    table = module_differential(alg, n)
    out = [alg.zero() for _ in range(RANKS[n - 1])]
    for i, a in enumerate(v.coords):
        if a.is_zero():
            continue
        for j, u in table[i]:
            out[j] = out[j] + u.act(a, sig)
    return ModuleVector(n - 1, tuple(out))


def displayed(alg: PodlesAlgebra, sig: Automorphism, v: ModuleVector) -> ModuleVector:
    """The same twisted differential written out as closed formulas."""
    A, B, Bs = alg.A, alg.B, alg.Bs
    lam = sig.lam
    lami = ONE / lam
    mu = ScalarK.coerce(sig.sign)
    q, q2 = q_pow(1), q_pow(2)
    qi, qi3 = q_pow(-1), q_pow(-3)
    cmd = alg.params.c - alg.params.d
    dmc = -cmd
    n = v.level
    if n == 1:
        a1, a2, a3 = v.coords
        x = (a1 * A - (A * a1).scale(mu)) + (a2 * Bs - (Bs * a2).scale(lami)) + (a3 * B - (B * a3).scale(lam))
        return ModuleVector(0, (x,))
    if n == 2:
        b1, b2, b3, b4 = v.coords
        eA = ((Bs * b1).scale(lami) - (b1 * Bs).scale(q2)) + ((B * b2).scale(q2 * lam) - b2 * B) \
            - ((b3 * A + (A * b3).scale(mu)).scale(q2) + b3.scale(dmc)).scale(q) \
            - (b4 * A + (A * b4).scale(mu) + b4.scale(dmc)).scale(qi)
        eBs = (b1 * A - (A * b1).scale(q2 * mu)) - (b3 * B + (B * b4).scale(lam)).scale(qi)
        eB = ((b2 * A).scale(q2) - (A * b2).scale(mu)) - ((Bs * b3).scale(lami) + b4 * Bs).scale(qi)
        return ModuleVector(1, (eA, eBs, eB))
    if n == 3:
        a1, a2, a3, a4 = v.coords
        x1 = (a1 * B).scale(qi3) + (B * a2).scale(qi * lam) \
            - (a3 * A + (A * a3).scale(q2 * mu) - a3.scale(cmd)).scale(qi)
        x2 = (Bs * a1).scale(qi3 * lami) + (a2 * Bs).scale(qi) \
            - ((a4 * A).scale(q2) + (A * a4).scale(mu) - a4.scale(cmd)).scale(qi)
        x3 = (a1 * A - (A * a1).scale(mu)) + a3 * Bs - (B * a4).scale(lam)
        x4 = (a2 * A - (A * a2).scale(mu)) - (Bs * a3).scale(lami) + a4 * B
        return ModuleVector(2, (x1, x2, x3, x4))
    if n == 4:
        b1, b2, b3, b4 = v.coords
        y1 = (b1 * Bs).scale(-q2) + (B * b2).scale(q2 * lam) \
            - ((b3 * A).scale(q2) + (A * b3).scale(mu * q2) - b3.scale(cmd)).scale(q)
        y2 = (Bs * b1).scale(lami) - b2 * B - (b4 * A + (A * b4).scale(mu) - b4.scale(cmd)).scale(qi)
        y3 = (b1 * A - (A * b1).scale(q2 * mu)) - (b3 * B).scale(qi) - (B * b4).scale(qi * lam)
        y4 = ((b2 * A).scale(q2) - (A * b2).scale(mu)) - (Bs * b3).scale(qi * lami) - (b4 * Bs).scale(qi)
        return ModuleVector(3, (y1, y2, y3, y4))
    raise ValueError(f"no differential out of level {n}")


def d1(alg, sig, v):
    return induced(alg, sig, v)


d2 = d3 = d4 = d1


# -- comparison with the bar resolution ----------------------------------------------------

def f_basis(alg: PodlesAlgebra, level: int, slot: int) -> Chain:
    """f_level on a basis vector: a chain with level+2 entries."""
    one, A, B, Bs = alg.one(), alg.A, alg.B, alg.Bs
    if level == 0:
        return tensor(one, one)
    if level == 1:
        t = (A, Bs, B)[slot]
        return tensor(one, t, one)
    if level == 2:
        cd = alg.params.c * alg.params.d
        q2, q3, qi = q_pow(2), q_pow(3), q_pow(-1)
        if slot == 0:
            return tensor(one, A, Bs, one) - tensor(one, Bs, A, one).scale(q2)
        if slot == 1:
            return tensor(one, A, B, one).scale(q2) - tensor(one, B, A, one)
        if slot == 2:
            return (tensor(one, B, Bs, one).scale(-qi) - tensor(one, A, A, one).scale(q3)
                    - tensor(one, one, one, one).scale(qi * cd))
        return (tensor(one, Bs, B, one).scale(-qi) - tensor(one, A, A, one).scale(qi)
                - tensor(one, one, one, one).scale(qi * cd))
    raise ValueError("comparison maps are implemented for levels 0, 1, 2")


def f_map(alg: PodlesAlgebra, level: int, coeffs: list) -> Chain:
    """f_level of sum_i u_i e_i with u_i in A^e (a list indexed by slot)."""
    out = Chain.zero(alg, level + 1)
    for slot, u in enumerate(coeffs):
        if u is None or u.is_zero():
            continue
        out = out + u.on_tuple(f_basis(alg, level, slot))
    return out


def f0(u: AeElement) -> Chain:
    return u.on_tuple(tensor(u.alg.one(), u.alg.one()))


def chain_map_defect(alg: PodlesAlgebra, level: int, slot: int) -> Chain:
    """b' f_level(e) - f_{level-1}(d_level e); zero when the square commutes."""
    from .chains import b_prime

    lhs = b_prime(f_basis(alg, level, slot))
    row = module_differential(alg, level)[slot]
    coeffs = [None] * RANKS[level - 1]
    for j, u in row:
        coeffs[j] = u if coeffs[j] is None else coeffs[j] + u
    if level == 1:
        rhs = f0(coeffs[0])
    else:
        rhs = f_map(alg, level - 1, coeffs)
    return lhs - rhs


def to_bar_cycle(alg: PodlesAlgebra, sig: Automorphism, v: ModuleVector, normalized: bool = True,
                 check: bool = True) -> Chain:
    """Contract f_n(v) with the twisted coefficients:
    a (x) (a_0, .., a_{n+1}) -> (sigma(a_{n+1}) a a_0, a_1, .., a_n)."""
    n = v.level
    if n > 2:
        raise ValueError("to_bar_cycle is available for levels <= 2")
    if check and n >= 1 and not induced(alg, sig, v).is_zero():
        raise NotACycle("vector is not in the kernel of the differential")
    out: dict = {}
    for slot, a in enumerate(v.coords):
        if a.is_zero():
            continue
        for t, c in f_basis(alg, n, slot).terms.items():
            last = t[-1]
            head = alg.from_monomial(last, c * sig.eigenvalue(last)) * a * alg.from_monomial(t[0])
            for m, x in head.terms.items():
                key = (m,) + t[1:-1]
                out[key] = out.get(key, ZERO) + x
    ch = Chain(alg, n, out)
    if normalized:
        ch = Chain(alg, n, {t: c for t, c in ch.terms.items() if not is_degenerate(t)})
    return ch


# -- matrices over weight blocks ---------------------------------------------------------

def admitted(sig: Automorphism, weight: int, parity: int) -> bool:
    return sig.eigenvalue((weight, parity)).is_one()


def coordinate_basis(alg: PodlesAlgebra, level: int, max_degree: int, weight: int, parity=None) -> list:
    """(slot, monomial) pairs of total weight ``weight`` and total degree at most
    ``max_degree``; with ``parity`` set, only that total A-parity."""
    out = []
    for slot in range(RANKS[level]):
        room = max_degree - degree_offset(level)
        if room < 0:
            continue
        w = weight - WEIGHT_OFFSETS[level][slot]
        for m in alg.monomials(room, weight=w):
            if parity is not None and (m[1] + PARITY_OFFSETS[level][slot]) % 2 != parity:
                continue
            out.append((slot, m))
    return out


def basis_degree(alg: PodlesAlgebra, level: int, label) -> int:
    return alg.mono_degree(label[1]) + degree_offset(level)


def differential_matrix(alg: PodlesAlgebra, sig: Automorphism, level: int, src: list, tgt: list | None = None):
    """Matrix of the twisted d_level from the span of ``src`` to level-1 coordinates.

    Rows are ``tgt`` when given (entries outside it raise), otherwise the rows
    hit, in sorted order.  Returns (matrix, row labels).
    """
    table = module_differential(alg, level)
    offs_out = WEIGHT_OFFSETS[level - 1]
    cols_raw = []
    for slot, m in src:
        a = alg.from_monomial(m)
        col: dict = {}
        for j, u in table[slot]:
            for mm, c in u.act(a, sig).terms.items():
                key = (j, mm)
                col[key] = col.get(key, ZERO) + c
        cols_raw.append({k: c for k, c in col.items() if not c.is_zero()})
        wt = m[0] + WEIGHT_OFFSETS[level][slot]
        for (j, mm) in cols_raw[-1]:
            if mm[0] + offs_out[j] != wt:
                raise AssertionError("differential is not weight homogeneous")
    if tgt is None:
        keys = set()
        for col in cols_raw:
            keys.update(col)
        tgt = sorted(keys, key=lambda k: (k[0], alg.mono_sort_key(k[1])))
    idx = {k: i for i, k in enumerate(tgt)}
    cols = []
    for col in cols_raw:
        try:
            cols.append({idx[k]: c for k, c in col.items()})
        except KeyError as exc:
            raise ValueError(f"image leaves the target basis at {exc}") from None
    return SparseMatrix(len(tgt), len(src), cols), tgt


def vector_from_coords(level: int, labels: list, coeffs: dict, alg: PodlesAlgebra) -> ModuleVector:
    cs = [alg.zero() for _ in range(RANKS[level])]
    for i, c in coeffs.items():
        slot, m = labels[i]
        cs[slot] = cs[slot] + alg.from_monomial(m, c)
    return ModuleVector(level, tuple(cs))


# -- explicit vectors from hand calculations ----------------------------------------------

def hh3_kernel_vector(alg: PodlesAlgebra, sig: Automorphism, j: int) -> ModuleVector:
    """(-lambda q^{2j+2} A^j, A^j, 0, 0) at level 3."""
    Aj = alg.A ** j
    return ModuleVector(3, (Aj.scale(-sig.lam * q_pow(2 * j + 2)), Aj, alg.zero(), alg.zero()))


def hh3_witness(alg: PodlesAlgebra, sig: Automorphism, j: int, alpha1) -> ModuleVector:
    """Preimage under d_4 of :func:`hh3_kernel_vector`, for cd != 0 and c != d."""
    c, d = alg.params.c, alg.params.d
    if (c * d).is_zero() or (c - d).is_zero():
        raise ValueError("this witness needs cd != 0 and c != d")
    lam = sig.lam
    alpha1 = ScalarK.coerce(alpha1)
    gamma = ScalarK.coerce(4) / ((c + d) * (c + d))
    if alpha1 == lam * gamma:
        raise ValueError("alpha1 must differ from lambda * gamma")
    A, B, Bs = alg.A, alg.B, alg.Bs
    Aj = A ** j
    one = alg.one()
    b1 = (B * Aj).scale(4 * alpha1)
    b2 = (Bs * Aj).scale(4 * q_pow(2 * j) * (alpha1 / lam - gamma))
    b3 = (Aj * (A.scale(2 * q_pow(2)) - one.scale(c - d))).scale(lam * gamma * q_pow(2 * j + 1))
    b4 = (Aj * (A.scale(2) - one.scale(c - d))).scale(-gamma * q_pow(1))
    return ModuleVector(4, (b1, b2, b3, b4))
