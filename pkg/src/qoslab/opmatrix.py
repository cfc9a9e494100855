"""Sparse matrices over auxiliary spaces with algebra-valued entries.

A shape is an ordered tuple of (label, dim) pairs; the flat index of a
multi-index follows the label order with the first label varying slowest.
Rows are incoming (subscript) indices and columns outgoing (superscript)
ones, so a left-to-right product chain of operators is a plain matmul
with the left factor's entries multiplied on the left.
"""

from __future__ import annotations

from .laurent import LaurentPoly
from .algebra import Algebra, AlgElem


class OpMatrix:
    __slots__ = ("shape_rows", "shape_cols", "entries", "algebra")

    def __init__(self, algebra, shape_rows, shape_cols, entries=None):
        self.algebra = algebra
        self.shape_rows = tuple(shape_rows)
        self.shape_cols = tuple(shape_cols)
        self.entries = {}
        if entries:
            for (i, j), e in entries.items():
                if not e.is_zero():
                    self.entries[(i, j)] = e

    # -- shape helpers ---------------------------------------------------

    @property
    def nrows(self):
        return _total_dim(self.shape_rows)

    @property
    def ncols(self):
        return _total_dim(self.shape_cols)

    def row_multi(self, flat):
        return _unflatten(flat, self.shape_rows)

    def col_multi(self, flat):
        return _unflatten(flat, self.shape_cols)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(algebra, shape):
        n = _total_dim(shape)
        one = algebra.one()
        return OpMatrix(algebra, shape, shape, {(i, i): one for i in range(n)})

    @staticmethod
    def from_entry_grid(algebra, shape_rows, shape_cols, grid):
        """Build from a dense nested list of AlgElem/int/LaurentPoly entries."""
        entries = {}
        for i, row in enumerate(grid):
            for j, v in enumerate(row):
                if isinstance(v, (int, LaurentPoly)):
                    v = algebra.scalar(
                        LaurentPoly.const(v) if isinstance(v, int) else v
                    )
                if not v.is_zero():
                    entries[(i, j)] = v
        return OpMatrix(algebra, shape_rows, shape_cols, entries)

    # -- algebra -----------------------------------------------------------

    def __matmul__(self, other):
        if self.shape_cols != other.shape_rows:
            raise ValueError(
                f"shape mismatch: {self.shape_cols} vs {other.shape_rows}"
            )
        alg = self.algebra.merged_with(other.algebra)
        by_row = {}
        for (i, k), e in other.entries.items():
            by_row.setdefault(i, []).append((k, e))
        out = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                prod = a * b
                if prod.is_zero():
                    continue
                cur = out.get((i, j))
                cur = prod if cur is None else cur + prod
                if cur.is_zero():
                    out.pop((i, j), None)
                else:
                    out[(i, j)] = cur
        return OpMatrix(alg, self.shape_rows, other.shape_cols, out)

    def __add__(self, other):
        if self.shape_rows != other.shape_rows or self.shape_cols != other.shape_cols:
            raise ValueError("shape mismatch in addition")
        alg = self.algebra.merged_with(other.algebra)
        out = dict(self.entries)
        for ij, e in other.entries.items():
            cur = out.get(ij)
            cur = e if cur is None else cur + e
            if cur.is_zero():
                out.pop(ij, None)
            else:
                out[ij] = cur
        return OpMatrix(alg, self.shape_rows, self.shape_cols, out)

    def __neg__(self):
        return OpMatrix(
            self.algebra,
            self.shape_rows,
            self.shape_cols,
            {ij: -e for ij, e in self.entries.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return OpMatrix(
            self.algebra,
            self.shape_rows,
            self.shape_cols,
            {ij: e * c for ij, e in self.entries.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return (
            self.shape_rows == other.shape_rows
            and self.shape_cols == other.shape_cols
            and self.entries == other.entries
        )

    def is_zero(self):
        return not self.entries

    def map_entries(self, fn):
        out = {}
        for ij, e in self.entries.items():
            v = fn(e)
            if not v.is_zero():
                out[ij] = v
        return OpMatrix(self.algebra, self.shape_rows, self.shape_cols, out)

    def first_nonzero(self):
        """(row multi-index, col multi-index, entry) witness, or None."""
        for (i, j) in sorted(self.entries):
            return self.row_multi(i), self.col_multi(j), self.entries[(i, j)]
        return None


def kron(a: OpMatrix, b: OpMatrix) -> OpMatrix:
    alg = a.algebra.merged_with(b.algebra)
    nb_r, nb_c = b.nrows, b.ncols
    out = {}
    for (i1, j1), e1 in a.entries.items():
        for (i2, j2), e2 in b.entries.items():
            out[(i1 * nb_r + i2, j1 * nb_c + j2)] = e1 * e2
    return OpMatrix(alg, a.shape_rows + b.shape_rows, a.shape_cols + b.shape_cols, out)


def embed(local: OpMatrix, target_labels, full_shape) -> OpMatrix:
    """Embed a square operator acting on the named spaces, identity elsewhere.

    The local matrix's row/column shapes must match the targeted spaces'
    dimensions in the order given by target_labels.
    """
    full_shape = tuple(full_shape)
    labels = [lbl for lbl, _ in full_shape]
    for t in target_labels:
        if t not in labels:
            raise ValueError(f"label {t!r} not in shape {labels}")
    if len(target_labels) != len(local.shape_rows):
        raise ValueError("target label count does not match local shape")
    target_pos = [labels.index(t) for t in target_labels]
    dims = [d for _, d in full_shape]
    for pos, (_, d) in zip(target_pos, local.shape_rows):
        if dims[pos] != d:
            raise ValueError("dimension mismatch in embed")
    spectator_pos = [p for p in range(len(dims)) if p not in target_pos]

    out = {}
    spect_dims = [dims[p] for p in spectator_pos]
    for (li, lj), e in local.entries.items():
        lrow = _unflatten(li, local.shape_rows)
        lcol = _unflatten(lj, local.shape_cols)
        for spect in _iter_multi(spect_dims):
            row = [0] * len(dims)
            col = [0] * len(dims)
            for pos, v in zip(spectator_pos, spect):
                row[pos] = v
                col[pos] = v
            for pos, vr, vc in zip(target_pos, lrow, lcol):
                row[pos] = vr
                col[pos] = vc
            out[(_flatten(row, dims), _flatten(col, dims))] = e
    return OpMatrix(local.algebra, full_shape, full_shape, out)


def reshape_sum_to_tensor(a: OpMatrix, labels=("x", "y")) -> OpMatrix:
    """Reinterpret a 4x4 direct-sum matrix over spaces (alpha,beta,gamma,delta)
    as a matrix over two 2-dimensional tensor factors.

    The component correspondence is alpha->(0,0), beta->(1,0), gamma->(0,1),
    delta->(1,1), i.e. the basis permutation (0,2,1,3).
    """
    if _total_dim(a.shape_rows) != 4 or _total_dim(a.shape_cols) != 4:
        raise ValueError("reshape requires a 4x4 matrix")
    perm = [0, 2, 1, 3]  # new flat index -> old component
    inv = [perm.index(i) for i in range(4)]
    shape = ((labels[0], 2), (labels[1], 2))
    out = {}
    for (i, j), e in a.entries.items():
        out[(inv[i], inv[j])] = e
    return OpMatrix(a.algebra, shape, shape, out)


def chain(factors):
    """Left-to-right product of operator matrices (reading order)."""
    it = iter(factors)
    out = next(it)
    for f in it:
        out = out @ f
    return out


def _total_dim(shape):
    n = 1
    for _, d in shape:
        n *= d
    return n


def _unflatten(flat, shape):
    dims = [d for _, d in shape]
    out = []
    for d in reversed(dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


def _flatten(multi, dims):
    flat = 0
    for v, d in zip(multi, dims):
        flat = flat * d + v
    return flat


def _iter_multi(dims):
    if not dims:
        yield ()
        return
    head, rest = dims[0], dims[1:]
    for v in range(head):
        for tail in _iter_multi(rest):
            yield (v,) + tail
