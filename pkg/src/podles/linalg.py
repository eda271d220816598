"""Exact sparse linear algebra over K = Q(s) (and over Q for specializations).

Matrices are stored by columns: each column is a dict ``row -> entry``.
Everything reduces to elimination on a list of sparse vectors, which works
over any field whose elements support ``+ - * /`` and a zero test.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction

from flint import fmpq

from .scalar import ONE, PoleError, ScalarK, parse_scalar


class DimensionMismatch(ValueError):
    pass


class ContainmentError(ArithmeticError):
    """An image was expected to lie inside a given subspace but does not."""


class ShadowMismatch(ArithmeticError):
    """Exact rank disagrees with rational specializations at three points."""


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    cols: list = field(default_factory=list)  # list of dict row -> entry
    row_labels: list | None = None
    col_labels: list | None = None

    def __post_init__(self):
        if not self.cols:
            self.cols = [{} for _ in range(self.ncols)]
        if len(self.cols) != self.ncols:
            raise DimensionMismatch("column count does not match ncols")
        for col in self.cols:
            for r in [r for r, v in col.items() if _is_zero(v)]:
                del col[r]
            for r in col:
                if not 0 <= r < self.nrows:
                    raise DimensionMismatch(f"row index {r} out of range")

    @classmethod
    def from_columns(cls, nrows, cols, row_labels=None, col_labels=None):
        return cls(nrows, len(cols), [dict(c) for c in cols], row_labels, col_labels)

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                v = ScalarK.coerce(v) if not isinstance(v, (ScalarK, fmpq)) else v
                if not _is_zero(v):
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: ONE} for i in range(n)])

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def entry(self, i, j):
        return self.cols[j].get(i)

    def to_dense(self, zero=None):
        zero = ScalarK(0) if zero is None else zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def rows_permuted(self, perm) -> "SparseMatrix":
        """Row i of the result is row perm[i] of self."""
        inv = {p: i for i, p in enumerate(perm)}
        return SparseMatrix(self.nrows, self.ncols, [{inv[r]: v for r, v in c.items()} for c in self.cols])

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.nrows != self.nrows:
            raise DimensionMismatch("row counts differ")
        return SparseMatrix(self.nrows, self.ncols + other.ncols, [dict(c) for c in self.cols + other.cols])

    def restrict_rows(self, keep) -> "SparseMatrix":
        """Keep only rows in ``keep`` (renumbered in the given order)."""
        idx = {r: i for i, r in enumerate(keep)}
        cols = [{idx[r]: v for r, v in c.items() if r in idx} for c in self.cols]
        return SparseMatrix(len(idx), self.ncols, cols)

    def specialize(self, s0) -> "SparseMatrix":
        s0 = fmpq(s0.numerator, s0.denominator) if isinstance(s0, Fraction) else fmpq(s0)
        cols = []
        for c in self.cols:
            cols.append({r: v._eval_fmpq(s0) for r, v in c.items()})
        return SparseMatrix(self.nrows, self.ncols, cols)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            for i, v in self.cols[j].items():
                w = out.get(i)
                out[i] = a * v if w is None else w + a * v
        return {i: v for i, v in out.items() if not _is_zero(v)}


def _is_zero(v) -> bool:
    if isinstance(v, ScalarK):
        return v.is_zero()
    return v == 0


def _weight(v) -> int:
    if isinstance(v, ScalarK):
        return v.degree()
    if isinstance(v, fmpq):
        return int(v.p).bit_length() + int(v.q).bit_length()
    return 0


# -- elimination core -------------------------------------------------------------

def _eliminate(vectors, strategy="markowitz", keep_pivots=False, allowed=None, leftover=None):
    """Gaussian elimination on a list of sparse vectors (dict index -> entry).

    Returns (rank, pivots) where pivots is a list of (index, vector) pairs in
    elimination order when ``keep_pivots`` is set.

    With ``allowed`` (a set of indices) pivots are taken only there; vectors
    reduced to have no allowed entry are appended to ``leftover``.
    """
    vecs = {k: dict(v) for k, v in enumerate(vectors) if v}
    for k in list(vecs):
        vecs[k] = {i: x for i, x in vecs[k].items() if not _is_zero(x)}
        if not vecs[k]:
            del vecs[k]
    occ: dict = {}
    for k, v in vecs.items():
        for i in v:
            occ.setdefault(i, set()).add(k)
    rank = 0
    pivots = []
    if strategy == "markowitz":
        heap = [(len(v), k) for k, v in vecs.items()]
        heapq.heapify(heap)
    elif strategy != "naive":
        raise ValueError(f"unknown pivot strategy {strategy!r}")
    order = sorted(vecs)
    pos = 0
    while vecs:
        if strategy == "markowitz":
            while True:
                ln, k = heapq.heappop(heap)
                if k in vecs and len(vecs[k]) == ln:
                    break
            row = vecs.pop(k)
        else:
            while order[pos] not in vecs:
                pos += 1
            k = order[pos]
            row = vecs.pop(k)
        for i in row:
            occ[i].discard(k)
        cands = row if allowed is None else [i for i in row if i in allowed]
        if not cands:
            leftover.append(row)
            continue
        if strategy == "markowitz":
            piv = min(cands, key=lambda i: (len(occ[i]), _weight(row[i]), i))
        else:
            piv = min(cands)
        pv = row[piv]
        for k2 in sorted(occ[piv]):
            other = vecs[k2]
            factor = other[piv] / pv
            for i, x in row.items():
                y = other.get(i)
                if y is None:
                    other[i] = -factor * x
                    occ[i].add(k2)
                else:
                    z = y - factor * x
                    if _is_zero(z):
                        del other[i]
                        occ[i].discard(k2)
                    else:
                        other[i] = z
            if not other:
                del vecs[k2]
            elif strategy == "markowitz":
                heapq.heappush(heap, (len(other), k2))
        occ[piv] = set()
        rank += 1
        if keep_pivots:
            pivots.append((piv, row))
    return rank, pivots


def rank(M: SparseMatrix, strategy: str = "markowitz") -> int:
    r, _ = _eliminate(M.cols, strategy)
    return r


def rank_of_vectors(vectors, strategy: str = "markowitz") -> int:
    r, _ = _eliminate(list(vectors), strategy)
    return r


def split_rank(M: SparseMatrix, high_rows) -> tuple:
    """(rank M, rank of M restricted to ``high_rows``) from one elimination.

    Pivots are drawn from the high rows first; whatever is left has support in
    the remaining rows and contributes the difference.
    """
    rest: list = []
    r_high, _ = _eliminate(M.cols, "markowitz", allowed=set(high_rows), leftover=rest)
    return r_high + rank_of_vectors(rest), r_high


class Echelon:
    """Incrementally built echelon basis of a column space, with optional
    tracking of each basis vector as a combination of the inserted inputs."""

    def __init__(self, track: bool = False):
        self.track = track
        self.basis: dict = {}  # pivot index -> (vector, combination)
        self.count = 0

    def reduce(self, v: dict, comb: dict | None = None):
        v = {i: x for i, x in v.items() if not _is_zero(x)}
        comb = dict(comb) if comb is not None else ({} if self.track else None)
        while v:
            piv = min(v)
            hit = self.basis.get(piv)
            if hit is None:
                break
            bv, bc = hit
            factor = v[piv] / bv[piv]
            for i, x in bv.items():
                y = v.get(i)
                z = -factor * x if y is None else y - factor * x
                if _is_zero(z):
                    v.pop(i, None)
                else:
                    v[i] = z
            if comb is not None:
                for i, x in bc.items():
                    y = comb.get(i)
                    z = -factor * x if y is None else y - factor * x
                    if _is_zero(z):
                        comb.pop(i, None)
                    else:
                        comb[i] = z
        return v, comb

    def add(self, v: dict, label=None) -> bool:
        """Insert v; return True if it was independent of the current span."""
        comb = {label if label is not None else self.count: ONE} if self.track else None
        self.count += 1
        r, comb = self.reduce(v, comb)
        if not r:
            return False
        self.basis[min(r)] = (r, comb)
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)


def kernel_basis(M: SparseMatrix) -> list:
    """Basis of {x : M x = 0} as sparse dicts over column indices."""
    ech = Echelon(track=True)
    kernel = []
    for j, col in enumerate(M.cols):
        r, comb = ech.reduce(col, {j: ONE})
        if r:
            ech.basis[min(r)] = (r, comb)
        else:
            kernel.append(comb)
    return kernel


def in_image(M: SparseMatrix, v: dict):
    """Return a witness x with M x = v, or None if v is not in the image."""
    ech = Echelon(track=True)
    for j, col in enumerate(M.cols):
        ech.add(col, label=j)
    r, comb = ech.reduce(v, {})
    if r:
        return None
    return {j: -c for j, c in comb.items() if not _is_zero(c)}


def quotient_dim(B_in: SparseMatrix, Z: list) -> int:
    """dim span(Z) - rank(B_in), after checking that im(B_in) lies in span(Z)."""
    rz = rank_of_vectors(Z)
    rzb = rank_of_vectors(list(Z) + list(B_in.cols))
    if rzb != rz:
        raise ContainmentError("image of the incoming map is not contained in the cycle space")
    return rz - rank(B_in)


def truncated_homology_dim(d_out: SparseMatrix, d_in: SparseMatrix, low_rows: list) -> dict:
    """Dimension of Z_N / (Z_N cap im d_in).

    ``d_out`` is the outgoing differential restricted to the low window F_N
    (columns = basis of F_N C_n).  ``d_in`` is the incoming differential on the
    high window, with rows indexed in F_{N+M} C_n; ``low_rows`` lists the row
    indices of d_in that belong to F_N, ordered like the columns of d_out.

    Uses dim(Z_N cap im) = rank(d_in) - rank(pi_high d_in), where pi_high
    drops the F_N rows; so no kernel basis is needed.
    """
    n_low = d_out.ncols
    r_out = rank(d_out)
    z = n_low - r_out
    low = set(low_rows)
    r_in, r_high = split_rank(d_in, [i for i in range(d_in.nrows) if i not in low])
    inter = r_in - r_high
    return {"dim_chains": n_low, "rank_out": r_out, "dim_ker": z, "rank_in": r_in,
            "dim_im": inter, "dim": z - inter}


# -- rational specializations -------------------------------------------------------

_POINT_RNG_SEED = 20240607


def random_points(k: int, seed: int = _POINT_RNG_SEED) -> list:
    rng = random.Random(seed)
    pts = []
    while len(pts) < k:
        p = Fraction(rng.randint(2, 97), rng.randint(2, 97))
        if p not in (0, 1, -1) and p not in pts:
            pts.append(p)
    return pts


def specialized_rank(M: SparseMatrix, s0) -> int:
    return rank(M.specialize(s0))


def shadow_check(M: SparseMatrix, exact_rank: int, seed: int = _POINT_RNG_SEED) -> dict:
    """Confirm an exact rank at two rational points, with a third as tie-breaker.

    Specialization can only lower the rank, so equality at a point certifies
    the exact value there.  Points where an entry has a pole are skipped.
    """
    pts = random_points(8, seed)
    used, ranks = [], []
    for p in pts:
        try:
            r = specialized_rank(M, p)
        except PoleError:
            continue
        used.append(p)
        ranks.append(r)
        if len(used) == 2:
            break
    agree = all(r == exact_rank for r in ranks)
    if not agree:
        for p in pts[len(used):]:
            if p in used:
                continue
            try:
                r3 = specialized_rank(M, p)
            except PoleError:
                continue
            used.append(p)
            ranks.append(r3)
            if r3 != exact_rank:
                raise ShadowMismatch(
                    f"exact rank {exact_rank} vs specializations {ranks} at {[str(u) for u in used]}"
                )
            break
    return {"points": [str(p) for p in used], "ranks": ranks, "confirmed": True}


# -- triplet export ----------------------------------------------------------------------

def export_triplets(M: SparseMatrix) -> str:
    lines = [f"{M.nrows} {M.ncols} {M.nnz()}"]
    for j, col in enumerate(M.cols):
        for i in sorted(col):
            lines.append(f"{i} {j} {col[i]}")
    return "\n".join(lines) + "\n"


def import_triplets(text: str) -> SparseMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    nrows, ncols, nnz = (int(t) for t in lines[0].split())
    cols = [{} for _ in range(ncols)]
    for ln in lines[1:]:
        i, j, val = ln.split(" ", 2)
        cols[int(j)][int(i)] = parse_scalar(val)
    if sum(len(c) for c in cols) != nnz:
        raise ValueError("triplet count does not match header")
    return SparseMatrix(nrows, ncols, cols)
