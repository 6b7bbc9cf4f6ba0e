"""Delta-modular integer matrices: certification, reduction and minors."""
from __future__ import annotations

import itertools
from math import comb

from .matroid import BudgetError, LinearMatroid
from .matroid.core import _int_rank_basis


class IntegerMatrix:
    """Dense exact-integer matrix, stored row-major."""

    def __init__(self, rows, ncols: int | None = None):
        self.entries = tuple(tuple(int(x) for x in row) for row in rows)
        self.nrows = len(self.entries)
        if ncols is None:
            ncols = len(self.entries[0]) if self.entries else 0
        self.ncols = ncols
        if any(len(row) != ncols for row in self.entries):
            raise ValueError("rows have different lengths")
        self._rank = None

    @property
    def shape(self):
        return self.nrows, self.ncols

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = len(_int_rank_basis(self.entries))
        return self._rank

    def submatrix(self, rows, cols) -> "IntegerMatrix":
        return IntegerMatrix([[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def column_matroid(self) -> LinearMatroid:
        return LinearMatroid(self.columns(), 0, rows=self.nrows)

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self.entries]})"


def det(rows) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def delta_of(a: IntegerMatrix, budget: int = 5_000_000) -> int:
    """Largest |det| over all rank(a) x rank(a) submatrices."""
    r = a.rank
    if r == 0:
        raise ValueError("delta is undefined for a zero matrix")
    work = comb(a.nrows, r) * comb(a.ncols, r)
    if work > budget:
        raise BudgetError(f"{work} submatrices exceed the budget of {budget}")
    best = 0
    rowsets = [tuple(range(a.nrows))] if a.nrows == r else itertools.combinations(range(a.nrows), r)
    for rs in rowsets:
        rows = [a.entries[i] for i in rs]
        for cs in itertools.combinations(range(a.ncols), r):
            d = abs(det([[row[j] for j in cs] for row in rows]))
            if d > best:
                best = d
    return best


def is_delta_modular(a: IntegerMatrix, delta: int) -> bool:
    return delta_of(a) <= delta


def _euclid_column(rows, active, e):
    """Row operations on the active rows until exactly one has a nonzero entry in column e.

    Only row negation and adding integer multiples of one row to another are used.
    Returns the index of the surviving row.
    """
    for i in active:
        if rows[i][e] < 0:
            rows[i] = [-x for x in rows[i]]

    def sub(i, j, q):  # row i -= q * row j
        ri, rj = rows[i], rows[j]
        rows[i] = [x - q * y for x, y in zip(ri, rj)]

    while True:
        nz = [i for i in active if rows[i][e] != 0]
        if not nz:
            raise ValueError("column is zero on the remaining rows")
        if len(nz) == 1:
            return nz[0]
        first, others = nz[0], nz[1:]
        a1 = rows[first][e]
        vals = [rows[i][e] for i in others]
        if all(v == a1 for v in vals):
            for i in others:
                sub(i, first, 1)
        elif all(v >= a1 for v in vals):
            for i in others:
                ai = rows[i][e]
                if ai > a1:
                    sub(i, first, (ai - 1) // a1)
        else:
            j = next(i for i in others if rows[i][e] < a1)
            aj = rows[j][e]
            sub(first, j, (a1 - 1) // aj)


def _reduce(a: IntegerMatrix, x):
    rows = [list(r) for r in a.entries]
    pivots = []
    for e in x:
        active = [i for i in range(a.nrows) if i not in pivots]
        pivots.append(_euclid_column(rows, active, e))
    order = pivots + [i for i in range(a.nrows) if i not in pivots]
    return IntegerMatrix([rows[i] for i in order], a.ncols)


def reduce_upper_triangular(a: IntegerMatrix, x) -> IntegerMatrix:
    """Row-equivalent matrix whose columns x form an upper-triangular block on the leading rows.

    Rows are only negated, swapped, or changed by integer multiples of other rows,
    so every full-rank minor keeps its absolute value.
    """
    x = list(x)
    if a.rank != a.nrows:
        raise ValueError("matrix must have full row rank")
    if len(set(x)) != len(x) or any(not 0 <= j < a.ncols for j in x):
        raise ValueError("bad column set")
    if len(_int_rank_basis([a.column(j) for j in x])) != len(x):
        raise ValueError("column set is dependent")
    return _reduce(a, x)


def _row_basis(a: IntegerMatrix) -> IntegerMatrix:
    if a.rank == a.nrows:
        return a
    keep = []
    for i in range(a.nrows):
        if len(_int_rank_basis([a.entries[j] for j in keep + [i]])) == len(keep) + 1:
            keep.append(i)
    return a.submatrix(keep, range(a.ncols))


def _column_basis(a: IntegerMatrix):
    keep = []
    for j in range(a.ncols):
        if len(_int_rank_basis([a.column(c) for c in keep + [j]])) == len(keep) + 1:
            keep.append(j)
    return keep


def delta_contract(a: IntegerMatrix, e: int) -> IntegerMatrix:
    """Representation of M/e: clear column e to one nonzero entry, then drop that row and column."""
    if not 0 <= e < a.ncols:
        raise ValueError("no such column")
    if not any(a.column(e)):
        raise ValueError("cannot contract a zero column")
    b = _reduce(_row_basis(a), [e])
    keep = [j for j in range(a.ncols) if j != e]
    return b.submatrix(range(1, b.nrows), keep)


def delta_delete(a: IntegerMatrix, cols) -> IntegerMatrix:
    """Representation of M \\ cols, brought back to full row rank without changing any minor's size."""
    drop = set(cols)
    if any(not 0 <= j < a.ncols for j in drop):
        raise ValueError("no such column")
    keep = [j for j in range(a.ncols) if j not in drop]
    b = _row_basis(a).submatrix(range(_row_basis(a).nrows), keep)
    if b.rank == b.nrows:
        return b
    # rows below the pivots vanish on every kept column once a column basis is triangular
    x = _column_basis(b)
    c = _reduce(b, x)
    return c.submatrix(range(len(x)), range(c.ncols))


def distinct_columns(a: IntegerMatrix) -> int:
    return len(set(a.columns()))


def _small_primes_above(delta):
    for p in range(delta + 1, 2 * delta + 1):
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            return p
    raise ValueError("no prime in (delta, 2 delta]")


def line_minor_search(delta: int):
    """Largest set of pairwise non-parallel columns in [-delta, delta]^2 with all 2x2 |det| <= delta.

    Returns (size, witness columns, prime p used for the mod-p check).
    """
    if not 1 <= delta <= 3:
        raise ValueError("line search supports 1 <= delta <= 3")
    vecs = []
    for u in range(-delta, delta + 1):
        for v in range(-delta, delta + 1):
            if (u, v) == (0, 0):
                continue
            # one vector from each +- pair
            if (u, v) > (0, 0):
                vecs.append((u, v))
    n = len(vecs)

    def d(i, j):
        return vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0]

    ok = [[0 < abs(d(i, j)) <= delta for j in range(n)] for i in range(n)]
    best: list[int] = []

    def grow(clique, cand):
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        if len(clique) + len(cand) <= len(best):
            return
        for idx, v in enumerate(cand):
            grow(clique + [v], [w for w in cand[idx + 1:] if ok[v][w]])

    grow([], list(range(n)))
    p = _small_primes_above(delta)
    return len(best), [vecs[i] for i in best], p


def line_minor_bound_check(delta: int) -> bool:
    """No delta-modular simple line has 2*delta + 2 points.

    Checked twice: by the bounded search, and by confirming that every compatible
    pair of columns stays non-parallel modulo a prime p with delta < p <= 2 delta,
    which caps a line at p + 1 points.
    """
    size, witness, p = line_minor_search(delta)
    if size >= 2 * delta + 2:
        return False
    for (a, b), (c, d) in itertools.combinations(witness, 2):
        if (a * d - b * c) % p == 0:
            return False
    return p + 1 <= 2 * delta + 1


def parse_csv_matrix(text: str) -> IntegerMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for colno, tok in enumerate(line.split(","), start=1):
            tok = tok.strip()
            try:
                row.append(int(tok))
            except ValueError:
                raise ValueError(f"line {lineno}, column {colno}: non-integer token {tok!r}") from None
        if rows and len(row) != len(rows[0]):
            raise ValueError(f"line {lineno}: expected {len(rows[0])} entries, got {len(row)}")
        rows.append(row)
    if not rows:
        raise ValueError("empty matrix")
    return IntegerMatrix(rows)


def format_csv_matrix(a: IntegerMatrix) -> str:
    return "".join(",".join(map(str, row)) + "\n" for row in a.entries)


def delta_report(a: IntegerMatrix, delta: int | None = None, c: int | None = None) -> dict:
    d = delta_of(a)
    out = {
        "rows": a.nrows,
        "cols": a.ncols,
        "rank": a.rank,
        "delta": d,
        "distinct_columns": distinct_columns(a),
    }
    if delta is not None:
        out["certified"] = d <= delta
    if c is not None:
        m = a.rank
        out["bound"] = m * m + c * m
        out["within_bound"] = out["distinct_columns"] <= out["bound"]
    return out
