"""Truncated twisted Hochschild and cyclic homology of A(c, d).

Two engines compute HH_n on eigenvalue-1 blocks (fixed weight, and fixed
A-parity when sigma flips A):

* ``bar``: normalized Hochschild chains, filtered by total degree and by the
  number of B, B* letters beyond the weight;
* ``resolution``: coordinate vectors of the twisted free resolution, filtered
  by coefficient degree plus level.

On a window (N, M) the reported dimension is that of Z_N / (Z_N cap b F_{N+M}),
computed from ranks only (see :func:`podles.linalg.truncated_homology_dim`).
A report is *stable* when the probe window (N+1, M+2) gives the same numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass, field, replace
from functools import lru_cache

from . import resolution as res
from .algebra import Automorphism, Element, PodlesAlgebra, sigma
from .chains import (
    Chain,
    Functional,
    TauCocycle,
    S_chain,
    b_sigma,
    connes_B,
    cyclic_op,
    h_A,
    is_degenerate,
    tau0,
    tau_top,
    tensor,
)
from .linalg import (
    Echelon,
    SparseMatrix,
    _eliminate,
    in_image,
    kernel_basis,
    rank,
    rank_of_vectors,
    shadow_check,
)
from .scalar import ONE, ZERO, ScalarK, q_pow


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class TruncationWindow:
    N: int
    M: int
    weights: tuple | None = None
    excess: int | None = None  # bar engine: B-letters allowed beyond |weight|
    excess_margin: int = 2

    def __post_init__(self):
        if self.N < 1 or self.M < 0:
            raise ValueError("window needs N >= 1 and M >= 0")

    def probe(self) -> "TruncationWindow":
        return replace(self, N=self.N + 1, M=self.M + 2)

    def to_dict(self) -> dict:
        out = {"N": self.N, "M": self.M}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.excess is not None:
            out["excess"] = self.excess
            out["excess_margin"] = self.excess_margin
        return out


RESOLUTION_WINDOWS = {0: TruncationWindow(8, 4), 1: TruncationWindow(8, 4),
                      2: TruncationWindow(8, 4), 3: TruncationWindow(6, 4)}
BAR_WINDOWS = {0: TruncationWindow(8, 4, excess=2), 1: TruncationWindow(6, 2, excess=2),
               2: TruncationWindow(4, 1, excess=2), 3: TruncationWindow(4, 1, excess=2)}

# rational value of s at which bar-engine probes are evaluated
PROBE_POINT = Fraction(29, 17)


def default_window(engine: str, n: int) -> TruncationWindow:
    table = BAR_WINDOWS if engine == "bar" else RESOLUTION_WINDOWS
    return table[n]


def eigen_blocks(sig: Automorphism, window: TruncationWindow) -> list:
    """(weight, parity) pairs on which sigma acts with eigenvalue 1; parity is
    None unless sigma flips A."""
    ws = window.weights if window.weights is not None else range(-window.N, window.N + 1)
    out = []
    for w in ws:
        if sig.sign == 1:
            if sig.eigenvalue((w, 0)).is_one():
                out.append((w, None))
        else:
            for p in (0, 1):
                if sig.eigenvalue((w, p)).is_one():
                    out.append((w, p))
    return out


# -- the bar engine -------------------------------------------------------------------

def _mono_excess(m) -> int:
    return abs(m[0])


def bar_basis(alg: PodlesAlgebra, n: int, max_degree: int, weight: int, parity=None, excess=None) -> list:
    """Normalized (n+1)-tuples of monomials with the given weight (and A-parity),
    total degree <= max_degree and at most |weight| + excess B-letters."""
    mons = alg.monomials(max_degree)
    cap = None if excess is None else abs(weight) + excess
    out = []

    def rec(prefix, deg, wt, bc, par):
        k = len(prefix)
        if k == n + 1:
            if wt == weight and (parity is None or par % 2 == parity):
                out.append(tuple(prefix))
            return
        for m in mons:
            if k > 0 and m == (0, 0):
                continue
            dm = alg.mono_degree(m)
            if deg + dm > max_degree:
                continue
            if cap is not None and bc + abs(m[0]) > cap:
                continue
            rec(prefix + [m], deg + dm, wt + m[0], bc + abs(m[0]), par + m[1])

    rec([], 0, 0, 0, 0)
    key = alg.mono_sort_key
    out.sort(key=lambda t: (sum(alg.mono_degree(m) for m in t), tuple(key(m) for m in t)))
    return out


class BarEngine:
    name = "bar"

    def __init__(self, alg: PodlesAlgebra, sig: Automorphism):
        self.alg, self.sig = alg, sig

    def basis(self, n, max_degree, block, excess):
        return bar_basis(self.alg, n, max_degree, block[0], block[1], excess)

    def matrix(self, n, src, tgt) -> SparseMatrix:
        from .chains import b_tuple

        idx = {t: i for i, t in enumerate(tgt)}
        cols = []
        for t in src:
            col: dict = {}
            for tt, c in b_tuple(self.alg, t, self.sig).items():
                if is_degenerate(tt) or c.is_zero():
                    continue
                i = idx.get(tt)
                if i is None:
                    raise WindowTooSmall(f"boundary term {tt} outside the target window")
                col[i] = col.get(i, ZERO) + c
            cols.append({i: c for i, c in col.items() if not c.is_zero()})
        return SparseMatrix(len(tgt), len(src), cols)

    def degree(self, label) -> int:
        return sum(self.alg.mono_degree(m) for m in label)

    def excess(self, label, weight) -> int:
        return sum(abs(m[0]) for m in label) - abs(weight)

    def to_object(self, n, labels, vec) -> Chain:
        return Chain(self.alg, n, {labels[i]: c for i, c in vec.items()})

    def from_object(self, obj: Chain, index: dict, block) -> dict:
        if isinstance(obj, Element):
            obj = tensor(obj)
        out: dict = {}
        for t, c in obj.terms.items():
            if is_degenerate(t) or not _in_block(t, block):
                continue
            i = index.get(t)
            if i is None:
                raise WindowTooSmall(f"tuple {t} outside the window")
            out[i] = out.get(i, ZERO) + c
        return {i: c for i, c in out.items() if not c.is_zero()}

    def describe(self, obj: Chain) -> str:
        return str(obj)


def _in_block(t, block) -> bool:
    w, p = block
    if sum(m[0] for m in t) != w:
        return False
    return p is None or sum(m[1] for m in t) % 2 == p


# -- the resolution engine --------------------------------------------------------------

class ResolutionEngine:
    name = "resolution"

    def __init__(self, alg: PodlesAlgebra, sig: Automorphism):
        self.alg, self.sig = alg, sig

    def basis(self, n, max_degree, block, excess):
        return res.coordinate_basis(self.alg, n, max_degree, block[0], block[1])

    def matrix(self, n, src, tgt) -> SparseMatrix:
        M, _ = res.differential_matrix(self.alg, self.sig, n, src, tgt)
        return M

    def degree(self, label) -> int:
        return self.alg.mono_degree(label[1])

    def excess(self, label, weight) -> int:
        return 0

    def to_object(self, n, labels, vec) -> res.ModuleVector:
        return res.vector_from_coords(n, labels, vec, self.alg)

    def from_object(self, obj: res.ModuleVector, index: dict, block) -> dict:
        out: dict = {}
        for slot, a in enumerate(obj.coords):
            for m, c in a.terms.items():
                i = index.get((slot, m))
                if i is None:
                    raise WindowTooSmall(f"coordinate {(slot, m)} outside the window")
                out[i] = c
        return out

    def describe(self, obj) -> str:
        return str(obj)


ENGINES = {"bar": BarEngine, "resolution": ResolutionEngine}


# -- block computation -------------------------------------------------------------------------

@dataclass
class BlockResult:
    weight: int
    parity: int | None
    dim_chains: int
    rank_out: int
    dim_ker: int
    rank_in: int
    dim_im: int
    dim: int
    shadow: dict | None = None
    # working data, not serialized
    engine: object = field(default=None, repr=False)
    n: int = 0
    labels: list = field(default_factory=list, repr=False)
    d_out: SparseMatrix | None = field(default=None, repr=False)
    boundaries: list = field(default_factory=list, repr=False)
    _gens: list | None = field(default=None, repr=False)
    _ech: Echelon | None = field(default=None, repr=False)

    @property
    def block(self):
        return (self.weight, self.parity)

    def to_dict(self) -> dict:
        out = {"weight": self.weight, "dim_chains": self.dim_chains, "rank_out": self.rank_out,
               "dim_ker": self.dim_ker, "rank_in": self.rank_in, "dim_im": self.dim_im, "dim": self.dim}
        if self.parity is not None:
            out["parity"] = self.parity
        if self.shadow is not None:
            out["shadow"] = self.shadow
        return out

    # -- classes
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def boundary_echelon(self) -> Echelon:
        if self._ech is None:
            ech = Echelon()
            for v in self.boundaries:
                ech.add(v)
            self._ech = ech
        return self._ech

    def vector(self, obj) -> dict:
        return self.engine.from_object(obj, self.index(), self.block)

    def is_cycle(self, vec: dict) -> bool:
        if self.d_out is None:
            return True
        return not any(not c.is_zero() for c in self.d_out.apply(vec).values())

    def residual(self, vec: dict) -> dict:
        r, _ = self.boundary_echelon().reduce(vec)
        return r

    def is_boundary(self, vec: dict) -> bool:
        return not self.residual(vec)

    def rank_modulo_boundaries(self, vecs: list) -> int:
        return rank_of_vectors([self.residual(v) for v in vecs])

    def is_basis(self, objs: list) -> bool:
        """True if the given cycles represent a basis of this block's homology."""
        vecs = [self.vector(o) for o in objs]
        if not all(self.is_cycle(v) for v in vecs):
            return False
        return len(vecs) == self.dim and self.rank_modulo_boundaries(vecs) == self.dim

    def generators(self) -> list:
        """Representatives of a homology basis: minimal degree first, then
        lexicographic in the basis order."""
        if self._gens is None:
            if self.d_out is None:
                kernel = [{j: ONE} for j in range(len(self.labels))]
            else:
                kernel = kernel_basis(self.d_out)
            ech = Echelon()
            for v in self.boundaries:
                ech.add(v)
            gens = []
            for v in kernel:
                if len(gens) == self.dim:
                    break
                if ech.add(v):
                    gens.append(v)
            self._gens = gens
        return [self.engine.to_object(self.n, self.labels, v) for v in self._gens]


def _split_with_leftover(M: SparseMatrix, high_rows) -> tuple:
    rest: list = []
    r_high, _ = _eliminate(M.cols, "markowitz", allowed=set(high_rows), leftover=rest)
    return r_high, rest


def compute_block(engine, n: int, window: TruncationWindow, block, keep: bool = False,
                  shadow: bool = False, point=None) -> BlockResult:
    """Truncated homology of one block; with ``point`` the ranks are taken
    after substituting that rational value for s."""
    w = block[0]
    N, M = window.N, window.M
    e_lo = window.excess
    e_hi = None if e_lo is None else e_lo + window.excess_margin
    low = engine.basis(n, N, block, e_lo)
    if n >= 1:
        tgt = engine.basis(n - 1, N, block, e_lo)
        d_out = engine.matrix(n, low, tgt)
        if point is not None:
            d_out = d_out.specialize(point)
        r_out = rank(d_out)
    else:
        d_out, r_out = None, 0
    high = engine.basis(n, N + M, block, e_hi)
    up = engine.basis(n + 1, N + M, block, e_hi)
    d_in = engine.matrix(n + 1, up, high)
    if point is not None:
        d_in = d_in.specialize(point)
    low_set = set(low)
    high_rows = [i for i, lab in enumerate(high) if lab not in low_set]
    r_high, rest = _split_with_leftover(d_in, high_rows)
    r_low = rank_of_vectors(rest) if rest else 0
    r_in = r_high + r_low
    dim_ker = len(low) - r_out
    result = BlockResult(w, block[1], len(low), r_out, dim_ker, r_in, r_low, dim_ker - r_low,
                         engine=engine, n=n)
    if shadow:
        info = {"in": shadow_check(d_in, r_in)}
        if d_out is not None:
            info["out"] = shadow_check(d_out, r_out)
        result.shadow = info
    if keep:
        pos = {lab: i for i, lab in enumerate(low)}
        hpos = {i: pos[lab] for i, lab in enumerate(high) if lab in pos}
        result.labels = low
        result.d_out = d_out
        result.boundaries = [{hpos[i]: c for i, c in v.items()} for v in rest]
    return result


# -- reports ---------------------------------------------------------------------------------------

def case_dict(alg: PodlesAlgebra, sig: Automorphism) -> dict:
    return {"c": str(alg.params.c), "d": str(alg.params.d), "lambda": str(sig.lam), "sign": sig.sign}


@dataclass
class HomologyReport:
    engine: str
    case: dict
    n: int
    window: TruncationWindow
    blocks: list
    probe_blocks: list | None = None
    probe_point: str | None = None
    generators: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def stable(self) -> bool:
        if self.probe_blocks is None:
            return False
        return [(b.block, b.dim) for b in self.blocks] == [(b.block, b.dim) for b in self.probe_blocks]

    def block(self, weight=0, parity=None) -> BlockResult:
        for b in self.blocks:
            if b.weight == weight and b.parity == parity:
                return b
        raise KeyError((weight, parity))

    def dims_by_block(self) -> dict:
        return {_block_key(b): b.dim for b in self.blocks}

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "n": self.n,
            "window": self.window.to_dict(),
            "dims": {"total": self.dim, "blocks": self.dims_by_block()},
            "generators": list(self.generators),
            "stable": self.stable,
            "engine": self.engine,
            "blocks": [b.to_dict() for b in self.blocks],
        }
        if self.probe_blocks is not None:
            out["probe"] = {"window": self.window.probe().to_dict(), "point": self.probe_point,
                            "dims": {_block_key(b): b.dim for b in self.probe_blocks}}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _block_key(b: BlockResult) -> str:
    return f"w={b.weight}" if b.parity is None else f"w={b.weight},p={b.parity}"


def hh(alg: PodlesAlgebra, sig: Automorphism, n: int, window: TruncationWindow | None = None,
       engine: str = "bar", probe: bool = True, keep: bool = False, shadow: bool = False,
       with_generators: bool = False, probe_point="auto") -> HomologyReport:
    """HH_n on every eigenvalue-1 block of the window.

    The probe window is evaluated exactly for the resolution engine and at
    :data:`PROBE_POINT` for the bar engine unless ``probe_point`` says otherwise.
    """
    if probe_point == "auto":
        probe_point = PROBE_POINT if engine == "bar" else None
    if n not in (0, 1, 2, 3):
        raise ValueError("homology is computed for 0 <= n <= 3")
    sig.check_legal(alg.params)
    window = window or default_window(engine, n)
    eng = ENGINES[engine](alg, sig)
    blocks = [compute_block(eng, n, window, blk, keep=keep or with_generators, shadow=shadow)
              for blk in eigen_blocks(sig, window)]
    probe_blocks = None
    if probe:
        pw = window.probe()
        pblocks = [blk for blk in eigen_blocks(sig, pw) if blk in {b.block for b in blocks}]
        probe_blocks = [compute_block(eng, n, pw, blk, point=probe_point) for blk in pblocks]
    rep = HomologyReport(engine, case_dict(alg, sig), n, window, blocks, probe_blocks,
                         probe_point=None if probe_point is None else str(probe_point))
    if with_generators:
        rep.generators = [eng.describe(g) for b in blocks for g in b.generators()]
    return rep


def hh_bar(alg, sig, n, window=None, **kw) -> HomologyReport:
    return hh(alg, sig, n, window, engine="bar", **kw)


def hh_resolution(alg, sig, n, window=None, **kw) -> HomologyReport:
    return hh(alg, sig, n, window, engine="resolution", **kw)


@lru_cache(maxsize=256)
def cached_hh(alg: PodlesAlgebra, sig: Automorphism, n: int, engine: str,
              window: TruncationWindow | None = None) -> HomologyReport:
    """Memoized report with working data kept (for generators and B maps)."""
    return hh(alg, sig, n, window, engine=engine, keep=True)


def boundary_witness(alg: PodlesAlgebra, sig: Automorphism, target: Chain, max_degree: int):
    """An (n+1)-chain w with b_sigma(w) = target exactly, searched among all
    eigenvalue-1 tuples (units allowed) of degree <= max_degree; None if the
    window holds no preimage."""
    from .chains import b_tuple

    weights = target.weights()
    if len(weights) != 1:
        raise ValueError("target must be weight-homogeneous")
    w = weights.pop()
    n = target.n + 1
    mons = alg.monomials(max_degree)
    tups = []

    def rec(prefix, deg, wt):
        if len(prefix) == n + 1:
            if wt == w and sig.tuple_eigenvalue(prefix).is_one():
                tups.append(tuple(prefix))
            return
        for m in mons:
            dm = alg.mono_degree(m)
            if deg + dm <= max_degree:
                rec(prefix + [m], deg + dm, wt + m[0])

    rec([], 0, 0)
    rows: dict = {}
    cols = []
    for t in tups:
        col: dict = {}
        for tt, c in b_tuple(alg, t, sig).items():
            i = rows.setdefault(tt, len(rows))
            col[i] = col.get(i, ZERO) + c
        cols.append({i: c for i, c in col.items() if not c.is_zero()})
    vec = {}
    for tt, c in target.terms.items():
        if tt not in rows:
            return None
        vec[rows[tt]] = c
    x = in_image(SparseMatrix(len(rows), len(cols), cols), vec)
    if x is None:
        return None
    return Chain(alg, n, {tups[j]: c for j, c in x.items()})


# -- HH_0 in closed form ----------------------------------------------------------------------------

def _neg_q_exponent(lam: ScalarK, bound: int = 64):
    """k >= 1 with lam = q^{-k}, or None."""
    for k in range(1, bound + 1):
        if lam == q_pow(-k):
            return k
    return None


@dataclass
class HH0Prediction:
    basis: list            # Elements, or None for the infinite case
    certificates: list     # Functionals dual to the basis, possibly empty
    infinite: bool = False
    description: str = ""

    def pairing_matrix(self) -> list:
        return [[phi(x) for x in self.basis] for phi in self.certificates]


def hh0_closed_form(alg: PodlesAlgebra, sig: Automorphism) -> HH0Prediction:
    """Predicted HH_0 basis and dual twisted 0-cocycles where available."""
    c, d = alg.params.c, alg.params.d
    A, one = alg.A, alg.one()
    lam = sig.lam
    if lam.is_one():
        desc = "[1], [A], [B^m], [B*^m] (m >= 1)" if sig.sign == 1 else "[1], [B^m], [B*^m] (m >= 1)"
        return HH0Prediction(None, [], infinite=True, description=desc)
    if sig.sign == -1:
        # no tau-twisted 0-cocycle is nonzero on 1 here: phi(BB*) = lam^-1 phi(B*B)
        # and phi(A^2) = 0 force phi(1) = 0, so no certificate is offered
        return HH0Prediction([one], [], description="[1]")
    k = _neg_q_exponent(lam)
    if k is None or k % 2:
        certs = [_recurrence_cocycle(alg, sig, c), _recurrence_cocycle(alg, sig, -d)]
        return HH0Prediction([one, A], certs, description="[1], [A]")
    b = k // 2 - 1
    if c == d and b % 2 == 1:
        basis = [A, A ** (b + 1)]
        desc = f"[A], [A^{b + 1}]"
    else:
        basis = [one, A ** (b + 1)]
        desc = "[1], [A]" if b == 0 else f"[1], [A^{b + 1}]"
    t0 = tau0(alg, b)
    certs = [t0, tau_top(alg, b)]
    pred = HH0Prediction(basis, certs, description=desc)
    m = pred.pairing_matrix()
    if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero():
        pred.certificates = []
    return pred


def _recurrence_cocycle(alg: PodlesAlgebra, sig: Automorphism, root: ScalarK) -> Functional:
    """phi(A^n) = root^n / f(n), f(n) = lambda^{-1} - q^{2n}; zero off powers of A."""
    lam_inv = ONE / sig.lam
    root = ScalarK.coerce(root)

    def rule(m):
        j, n = m
        if j:
            return ZERO
        return root ** n / (lam_inv - q_pow(2 * n))

    return Functional(f"phi[{root}]", alg, rule)


class RecurrencePredictor:
    """x_n = f(n)[A^n] with f(n) = lambda^{-1} - q^{2n} satisfies
    x_{n+2} + (d-c) x_{n+1} - cd x_n = 0 in HH_0."""

    def __init__(self, alg: PodlesAlgebra, sig: Automorphism):
        if sig.sign != 1:
            raise ValueError("the recurrence is stated for sigma_lambda")
        self.alg, self.sig = alg, sig
        self.c, self.d = alg.params.c, alg.params.d

    def f(self, n: int) -> ScalarK:
        return ONE / self.sig.lam - q_pow(2 * n)

    def g(self, t: int) -> ScalarK:
        c, d = self.c, self.d
        return (c * d) / (c + d) * (c ** t - (-d) ** t)

    def relation(self, n: int) -> Element:
        A = self.alg.A
        c, d = self.c, self.d
        return ((A ** (n + 2)).scale(self.f(n + 2)) + (A ** (n + 1)).scale((d - c) * self.f(n + 1))
                - (A ** n).scale(c * d * self.f(n)))

    def witness(self, n: int) -> Chain:
        """A 1-chain whose boundary is :meth:`relation`: -q^{2n} lambda^{-1} (B* A^n, B)."""
        alg = self.alg
        return tensor(alg.Bs * alg.A ** n, alg.B).scale(-q_pow(2 * n) / self.sig.lam)

    def check(self, n: int) -> bool:
        lhs = b_sigma(self.sig, self.witness(n))
        rhs = tensor(self.relation(n))
        return lhs == rhs


# -- induced B and cyclic homology ------------------------------------------------------------------

def _reps(report: HomologyReport) -> dict:
    return {b.block: b.generators() for b in report.blocks}


def induced_B(alg: PodlesAlgebra, sig: Automorphism, src: HomologyReport, tgt: HomologyReport) -> dict:
    """Rank of B: HH_m -> HH_{m+1} on computed representatives, per block."""
    out = {}
    tblocks = {b.block: b for b in tgt.blocks}
    for b in src.blocks:
        reps = b.generators()
        if not reps:
            out[b.block] = {"rank": 0, "images": []}
            continue
        tb = tblocks.get(b.block)
        if tb is None:
            raise WindowTooSmall(f"target report lacks block {b.block}")
        imgs = []
        for r in reps:
            chain = r if isinstance(r, Chain) else res.to_bar_cycle(alg, sig, r)
            imgs.append(tb.vector(connes_B(sig, chain)))
        rk = tb.rank_modulo_boundaries(imgs)
        out[b.block] = {"rank": rk, "images": imgs}
    return out


def B_image_class(alg, sig, x: Chain, tgt_block: BlockResult) -> dict:
    """Residual of B(x) modulo boundaries (empty when the class vanishes)."""
    return tgt_block.residual(tgt_block.vector(connes_B(sig, x)))


@dataclass
class CyclicReport:
    case: dict
    hh: list        # dims of HH_0, HH_1, HH_2
    B_ranks: list   # ranks of B: HH_0 -> HH_1, HH_1 -> HH_2
    hc: list        # HC_0 .. HC_{n_max}
    e2: dict
    stable: bool
    kernel_B0: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"case": self.case, "hh": self.hh, "B_ranks": self.B_ranks, "hc": self.hc,
                "e2": {str(k): v for k, v in sorted(self.e2.items())}, "stable": self.stable,
                "ker_B0": self.kernel_B0}


def hc_dims(alg: PodlesAlgebra, sig: Automorphism, n_max: int = 4, windows: dict | None = None,
            engine: str = "bar") -> CyclicReport:
    """HC_n from the E^2 page of the column spectral sequence of the mixed complex.

    E^2(0, m) = HH_m / im B and E^2(p, m) = ker B / im B for p >= 1; HH_m = 0
    for m >= 3 so nothing further happens.  Dimensions are summed over
    eigenvalue-1 blocks.
    """
    windows = windows or {}
    reps = [cached_hh(alg, sig, m, "bar", windows.get(m)) for m in (0, 1, 2)]
    h = [r.dim for r in reps]
    r0 = sum(v["rank"] for v in induced_B(alg, sig, reps[0], reps[1]).values())
    r1 = sum(v["rank"] for v in induced_B(alg, sig, reps[1], reps[2]).values())
    img = [0, r0, r1]          # rank of B landing in HH_m
    ker = [h[0] - r0, h[1] - r1, h[2]]
    e2 = {}
    for m in range(3):
        e2[(0, m)] = h[m] - img[m]
        e2[(1, m)] = ker[m] - img[m]
    hc = []
    for n in range(n_max + 1):
        tot = e2[(0, n)] if n <= 2 else 0
        for p in range(1, n // 2 + 1):
            m = n - 2 * p
            if 0 <= m <= 2:
                tot += e2[(1, m)]
        hc.append(tot)
    kernel_B0 = _kernel_B0_labels(alg, sig, reps[0], reps[1])
    return CyclicReport(case_dict(alg, sig), h, [r0, r1], hc, e2, all(r.stable for r in reps), kernel_B0)


def _kernel_B0_labels(alg, sig, src: HomologyReport, tgt: HomologyReport) -> list:
    out = []
    tblocks = {b.block: b for b in tgt.blocks}
    for b in src.blocks:
        reps = b.generators()
        tb = tblocks[b.block]
        imgs = [tb.residual(tb.vector(connes_B(sig, r))) for r in reps]
        # combinations of representatives with vanishing image
        M = SparseMatrix(len(tb.labels), len(imgs), imgs)
        for comb in kernel_basis(M):
            x = Chain.zero(alg, 0)
            for j, c in comb.items():
                x = x + reps[j].scale(c)
            out.append(str(x))
    return out


# -- the degree-2 cocycle and beta -----------------------------------------------------------------

@dataclass
class BetaResult:
    found: bool
    beta: ScalarK | None
    witness: Chain | None
    window: int
    kernel_dim: int
    detail: str

    def message(self) -> str:
        if self.found:
            return f"found beta = {self.beta}"
        return "not found within window"

    def to_dict(self) -> dict:
        return {"found": self.found, "beta": None if self.beta is None else str(self.beta),
                "window": {"N": self.window}, "kernel_dim": self.kernel_dim, "detail": self.detail,
                "message": self.message()}


def _cyclic_basis(alg: PodlesAlgebra, n: int, max_degree: int) -> list:
    """All (n+1)-tuples of weight 0 and total degree <= max_degree (units allowed)."""
    mons = alg.monomials(max_degree)
    out = []

    def rec(prefix, deg, wt):
        if len(prefix) == n + 1:
            if wt == 0:
                out.append(tuple(prefix))
            return
        for m in mons:
            dm = alg.mono_degree(m)
            if deg + dm <= max_degree:
                rec(prefix + [m], deg + dm, wt + m[0])

    rec([], 0, 0)
    key = alg.mono_sort_key
    out.sort(key=lambda t: (sum(alg.mono_degree(m) for m in t), tuple(key(m) for m in t)))
    return out


def beta_search(N: int = 4, alg: PodlesAlgebra | None = None) -> BetaResult:
    """Look for a cyclic 2-cycle a (b_sigma a in im(1 - lambda_sigma)) on the
    standard sphere with h_A(a_0 a_1 a_2) != 0, and report tau(a)/h_A(S a).

    The candidate value is accepted only if tau - beta (S h_A) vanishes on every
    cycle found in the window.
    """
    from .chains import b_tuple

    alg = alg or PodlesAlgebra((1, 0))
    sig = sigma(q_pow(2))
    two = _cyclic_basis(alg, 2, N)
    one = _cyclic_basis(alg, 1, N)
    idx = {t: i for i, t in enumerate(one)}
    cols = []
    for t in two:
        col: dict = {}
        for tt, c in b_tuple(alg, t, sig).items():
            col[idx[tt]] = col.get(idx[tt], ZERO) + c
        cols.append(col)
    for t in one:
        # -(1 - lambda_sigma) t
        col = {idx[t]: -ONE}
        for tt, c in cyclic_op(sig, Chain.basis(alg, t)).terms.items():
            col[idx[tt]] = col.get(idx[tt], ZERO) + c
        cols.append(col)
    M = SparseMatrix(len(one), len(cols), [{i: c for i, c in col.items() if not c.is_zero()} for col in cols])
    kernel = kernel_basis(M)
    hA = h_A(alg)
    tau = TauCocycle(alg)
    cycles = []
    for v in kernel:
        a = Chain(alg, 2, {two[j]: c for j, c in v.items() if j < len(two)})
        if a.is_zero():
            continue
        cycles.append(a)
    pairs = [(hA(S_chain(a)), tau(a)) for a in cycles]
    pick = next((i for i, (s, _) in enumerate(pairs) if not s.is_zero()), None)
    if pick is None:
        return BetaResult(False, None, None, N, len(cycles),
                          "every cyclic 2-cycle in the window pairs to zero with S h_A")
    s0, t0 = pairs[pick]
    beta = t0 / s0
    if any(t != beta * s for s, t in pairs):
        return BetaResult(False, None, None, N, len(cycles),
                          "candidate ratios disagree across cycles; no consistent beta")
    witness = cycles[pick].scale(ONE / s0)
    return BetaResult(True, beta, witness, N, len(cycles), "verified on every cycle in the window")
