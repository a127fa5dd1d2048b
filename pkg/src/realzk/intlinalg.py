"""Exact integer linear algebra: Smith normal form and cohomology of integer
cochain complexes, with explicit generator representatives.

Matrices are numpy arrays of dtype int64 while entries provably fit, and are
escalated to dtype=object (arbitrary-precision Python ints) before any
operation could overflow.  All pivot choices are deterministic: the pivot is
the entry of minimal absolute value in the working submatrix, first occurrence
in row-major order on ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ComplexInconsistencyError, NotInSpanError

# Escalate to object dtype once any tracked entry might pass this bound.
_INT64_SAFE = 1 << 59
_INT64_BIG = np.int64(1 << 62)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# -- matrix plumbing ----------------------------------------------------------


def as_int_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Normalize to a 2-d integer ndarray; rows/cols disambiguate empty input."""
    if isinstance(data, np.ndarray):
        a = data
    else:
        a = np.array(data, dtype=object)
        if a.size and all(isinstance(x, (int, np.integer)) and abs(int(x)) < _INT64_SAFE
                          for x in a.flat):
            a = a.astype(np.int64)
    if a.ndim == 1:
        a = a.reshape((1, -1)) if a.size else a.reshape((0, 0))
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    if a.size == 0:
        r = rows if rows is not None else a.shape[0]
        c = cols if cols is not None else a.shape[1]
        a = np.zeros((r, c), dtype=np.int64)
    if a.dtype == object:
        return a
    if a.dtype != np.int64:
        a = a.astype(np.int64)
    return a


def zeros_matrix(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity_matrix(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


_FLOAT_EXACT = 1 << 52


def imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    When every partial sum provably stays below 2^53 the product runs in
    float64 (BLAS) and is exact; otherwise it falls back to int64 or to
    arbitrary-precision objects.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros_matrix(a.shape[0], b.shape[1])
    if a.dtype != object and b.dtype != object:
        bound = max_abs(a) * max_abs(b) * a.shape[1]
        if bound < _FLOAT_EXACT:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.rint(prod).astype(np.int64)
        if bound < _INT64_SAFE:
            return a @ b
    return np.dot(a.astype(object), b.astype(object))


def imatvec(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v).reshape((-1, 1)) if np.asarray(v).ndim == 1 else v
    return imatmul(a, v).reshape(-1)


def is_zero_matrix(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


# -- Smith normal form --------------------------------------------------------


@dataclass
class SmithDecomposition:
    """A = U @ D @ V with U, V unimodular and D diagonal, d1 | d2 | ... >= 0."""

    rows: int
    cols: int
    diag: list[int]
    U: np.ndarray
    V: np.ndarray
    Uinv: np.ndarray = field(repr=False)
    Vinv: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return len([d for d in self.diag if d != 0])

    @property
    def D(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=object)
        for i, d in enumerate(self.diag):
            out[i, i] = d
        return out

    def reconstruct(self) -> np.ndarray:
        return imatmul(imatmul(self.U, self.D), self.V)


class _SnfWorker:
    """Row/column reduction engine tracking U, Uinv, V, Vinv alongside D."""

    def __init__(self, a: np.ndarray):
        self.m, self.n = a.shape
        if a.dtype == object or max_abs(a) > _INT64_SAFE:
            a = a.astype(object)
            self.obj = True
        else:
            self.obj = False
        self.D = a.copy()
        dt = object if self.obj else np.int64
        self.U = np.eye(self.m, dtype=np.int64).astype(dt)
        self.Uinv = np.eye(self.m, dtype=np.int64).astype(dt)
        self.V = np.eye(self.n, dtype=np.int64).astype(dt)
        self.Vinv = np.eye(self.n, dtype=np.int64).astype(dt)
        # exact running max |entry| per tracked matrix (int64 mode only):
        # entries outside the changed slice of an op keep their old max
        self.bmax = {"D": max(1, max_abs(self.D)), "U": 1, "Ui": 1, "V": 1, "Vi": 1}
        self.rank = 0

    def _pre(self, factor: int, *keys: str) -> None:
        """Escalate to object dtype unless the op provably fits in int64."""
        if self.obj:
            return
        for key in keys:
            if self.bmax[key] * factor >= _INT64_SAFE:
                self._escalate()
                return

    def _grow(self, key: str, changed: np.ndarray) -> None:
        if self.obj or changed.size == 0:
            return
        v = int(np.abs(changed).max())
        if v > self.bmax[key]:
            self.bmax[key] = v

    def _escalate(self) -> None:
        self.D = self.D.astype(object)
        self.U = self.U.astype(object)
        self.Uinv = self.Uinv.astype(object)
        self.V = self.V.astype(object)
        self.Vinv = self.Vinv.astype(object)
        self.obj = True

    # -- elementary row operations (D <- E @ D, U <- U E^-1, Uinv <- E Uinv)

    def row_swap(self, i, k):
        self.D[[i, k], :] = self.D[[k, i], :]
        self.U[:, [i, k]] = self.U[:, [k, i]]
        self.Uinv[[i, k], :] = self.Uinv[[k, i], :]

    def row_negate(self, i):
        self.D[i, :] = -self.D[i, :]
        self.U[:, i] = -self.U[:, i]
        self.Uinv[i, :] = -self.Uinv[i, :]

    def row_sub(self, i, k, q, start=0):
        """row_i -= q * row_k"""
        self._pre(1 + abs(q), "D", "U", "Ui")
        self.D[i, start:] -= q * self.D[k, start:]
        self.U[:, k] += q * self.U[:, i]
        self.Uinv[i, :] -= q * self.Uinv[k, :]
        self._grow("D", self.D[i, start:])
        self._grow("U", self.U[:, k])
        self._grow("Ui", self.Uinv[i, :])

    def row_combine(self, i, k, a, b, c, d, start=0):
        """rows (i,k) <- (a ri + b rk, c ri + d rk); ad - bc = ±1."""
        det = a * d - b * c
        self._pre(max(abs(a) + abs(b), abs(c) + abs(d)), "D", "U", "Ui")
        ri = self.D[i, start:].copy()
        rk = self.D[k, start:]
        self.D[i, start:] = a * ri + b * rk
        self.D[k, start:] = c * ri + d * rk
        ui = self.U[:, i].copy()
        uk = self.U[:, k]
        self.U[:, i] = det * (d * ui - c * uk)
        self.U[:, k] = det * (-b * ui + a * uk)
        wi = self.Uinv[i, :].copy()
        wk = self.Uinv[k, :]
        self.Uinv[i, :] = a * wi + b * wk
        self.Uinv[k, :] = c * wi + d * wk
        self._grow("D", self.D[[i, k], start:])
        self._grow("U", self.U[:, [i, k]])
        self._grow("Ui", self.Uinv[[i, k], :])

    # -- elementary column operations (D <- D F, V <- F^-1 V, Vinv <- Vinv F)

    def col_swap(self, j, k):
        self.D[:, [j, k]] = self.D[:, [k, j]]
        self.V[[j, k], :] = self.V[[k, j], :]
        self.Vinv[:, [j, k]] = self.Vinv[:, [k, j]]

    def col_sub(self, j, k, q, start=0):
        """col_j -= q * col_k"""
        self._pre(1 + abs(q), "D", "V", "Vi")
        self.D[start:, j] -= q * self.D[start:, k]
        self.V[k, :] += q * self.V[j, :]
        self.Vinv[:, j] -= q * self.Vinv[:, k]
        self._grow("D", self.D[start:, j])
        self._grow("V", self.V[k, :])
        self._grow("Vi", self.Vinv[:, j])

    def col_combine(self, j, k, a, b, c, d, start=0):
        """cols (j,k) <- (a cj + b ck, c cj + d ck); ad - bc = ±1."""
        det = a * d - b * c
        self._pre(max(abs(a) + abs(b), abs(c) + abs(d)), "D", "V", "Vi")
        cj = self.D[start:, j].copy()
        ck = self.D[start:, k]
        self.D[start:, j] = a * cj + b * ck
        self.D[start:, k] = c * cj + d * ck
        vj = self.V[j, :].copy()
        vk = self.V[k, :]
        self.V[j, :] = det * (d * vj - c * vk)
        self.V[k, :] = det * (-b * vj + a * vk)
        wj = self.Vinv[:, j].copy()
        wk = self.Vinv[:, k]
        self.Vinv[:, j] = a * wj + b * wk
        self.Vinv[:, k] = c * wj + d * wk
        self._grow("D", self.D[start:, [j, k]])
        self._grow("V", self.V[[j, k], :])
        self._grow("Vi", self.Vinv[:, [j, k]])

    # -- main loop

    def _find_pivot(self, t):
        sub = self.D[t:, t:]
        if sub.size == 0:
            return None
        nz = sub != 0
        if not nz.any():
            return None
        absd = np.abs(sub)
        big = (int(absd.max()) + 1) if self.obj else _INT64_BIG
        masked = np.where(nz, absd, big)
        flat = int(np.argmin(masked))
        di, dj = divmod(flat, sub.shape[1])
        return t + di, t + dj

    def _clear_at(self, t):
        # read via self.D throughout: _escalate() rebinds the arrays mid-loop
        while True:
            for i in range(t + 1, self.m):
                x = int(self.D[i, t])
                if x == 0:
                    continue
                p = int(self.D[t, t])
                if x % p == 0:
                    self.row_sub(i, t, x // p, start=t)
                else:
                    g, u, w = xgcd(p, x)
                    self.row_combine(t, i, u, w, -(x // g), p // g, start=t)
            if not np.any(self.D[t, t + 1:] != 0):
                break
            for j in range(t + 1, self.n):
                x = int(self.D[t, j])
                if x == 0:
                    continue
                p = int(self.D[t, t])
                if x % p == 0:
                    self.col_sub(j, t, x // p, start=t)
                else:
                    g, u, w = xgcd(p, x)
                    self.col_combine(t, j, u, w, -(x // g), p // g, start=t)
            if not np.any(self.D[t + 1:, t] != 0):
                break

    def _clear_pair(self, i, j):
        """Re-diagonalize the 2x2 block at (i,i),(i,j),(j,i),(j,j)."""
        while True:
            x = int(self.D[j, i])
            if x != 0:
                p = int(self.D[i, i])
                if x % p == 0:
                    self.row_sub(j, i, x // p)
                else:
                    g, u, w = xgcd(p, x)
                    self.row_combine(i, j, u, w, -(x // g), p // g)
            if int(self.D[i, j]) == 0 and int(self.D[j, i]) == 0:
                return
            x = int(self.D[i, j])
            if x != 0:
                p = int(self.D[i, i])
                if x % p == 0:
                    self.col_sub(j, i, x // p)
                else:
                    g, u, w = xgcd(p, x)
                    self.col_combine(i, j, u, w, -(x // g), p // g)
            if int(self.D[i, j]) == 0 and int(self.D[j, i]) == 0:
                return

    def run(self):
        t = 0
        while t < min(self.m, self.n):
            piv = self._find_pivot(t)
            if piv is None:
                break
            pi, pj = piv
            if pi != t:
                self.row_swap(t, pi)
            if pj != t:
                self.col_swap(t, pj)
            self._clear_at(t)
            t += 1
        self.rank = t
        for i in range(self.rank):
            if int(self.D[i, i]) < 0:
                self.row_negate(i)
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                di, dj = int(self.D[i, i]), int(self.D[j, j])
                if dj % di == 0:
                    continue
                self.col_sub(i, j, -1)  # col_i += col_j
                self._clear_pair(i, j)
        for i in range(self.rank):
            if int(self.D[i, i]) < 0:
                self.row_negate(i)


def smith_normal_form(a) -> SmithDecomposition:
    a = as_int_matrix(a)
    w = _SnfWorker(a)
    w.run()
    diag = [int(w.D[i, i]) for i in range(min(w.m, w.n))]
    return SmithDecomposition(
        rows=w.m, cols=w.n, diag=diag, U=w.U, V=w.V, Uinv=w.Uinv, Vinv=w.Vinv
    )


def solve_integer(a: np.ndarray, b) -> np.ndarray | None:
    """One integer solution x of a @ x = b, or None if none exists."""
    a = as_int_matrix(a)
    b = np.asarray(b).reshape(-1)
    if b.shape[0] != a.shape[0]:
        raise ValueError("right-hand side length mismatch")
    snf = smith_normal_form(a)
    y = imatvec(snf.Uinv, b)
    x_v = []
    for i in range(a.shape[1]):
        d = snf.diag[i] if i < len(snf.diag) else 0
        yi = int(y[i]) if i < y.shape[0] else 0
        if d == 0:
            if yi != 0:
                return None
            x_v.append(0)
        else:
            if yi % d != 0:
                return None
            x_v.append(yi // d)
    for i in range(a.shape[1], y.shape[0]):
        if int(y[i]) != 0:
            return None
    x_v = np.array(x_v, dtype=object).reshape((-1, 1)) if x_v else zeros_matrix(0, 1)
    return imatmul(snf.Vinv, as_int_matrix(x_v, rows=a.shape[1], cols=1)).reshape(-1)


def in_column_span(a: np.ndarray, b) -> bool:
    return solve_integer(a, b) is not None


# -- lattice reduction helper ------------------------------------------------


def column_hnf(a: np.ndarray) -> list[tuple[int, np.ndarray]]:
    """Column echelon form of the column lattice of `a`.

    Returns [(pivot_row, column), ...] with strictly increasing pivot rows and
    positive pivot entries; the columns generate the same lattice as `a`.
    """
    cols = [list(int(x) for x in a[:, j]) for j in range(a.shape[1])]
    cols = [c for c in cols if any(c)]
    out: list[tuple[int, np.ndarray]] = []
    row = 0
    nrows = a.shape[0]
    while row < nrows and cols:
        live = [c for c in cols if c[row] != 0]
        if not live:
            row += 1
            continue
        rest = [c for c in cols if c[row] == 0]
        piv = live[0]
        for c in live[1:]:
            # combine piv and c to gcd at this row
            g, x, y = xgcd(piv[row], c[row])
            pr, cr = piv[row] // g, c[row] // g
            piv, c[:] = (
                [x * p + y * q for p, q in zip(piv, c)],
                [-cr * p + pr * q for p, q in zip(piv, c)],
            )
            if any(c):
                rest.append(c)
        if piv[row] < 0:
            piv = [-x for x in piv]
        out.append((row, np.array(piv, dtype=object)))
        cols = rest
        row += 1
    return out


def reduce_mod_lattice(vec: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Canonical representative of vec modulo the column lattice of `a`."""
    vec = np.array([int(x) for x in np.asarray(vec).reshape(-1)], dtype=object)
    for row, col in column_hnf(a):
        q = int(vec[row]) // int(col[row])
        if q:
            vec = vec - q * col
    return vec


# -- cochain complexes and cohomology -----------------------------------------


@dataclass
class CohomologyGroup:
    """H = Z^free_rank + Z/t1 + ... with explicit cocycle representatives.

    `representatives` holds one coordinate vector per free generator followed
    by one per torsion generator (torsion orders listed in divisibility order).
    """

    free_rank: int
    torsion: list[int]
    representatives: list[np.ndarray]
    dim: int
    _check_rows: np.ndarray | None = field(default=None, repr=False)
    _coord_rows: np.ndarray | None = field(default=None, repr=False)
    _u2inv: np.ndarray | None = field(default=None, repr=False)
    _free_slots: list[int] = field(default_factory=list, repr=False)
    _torsion_slots: list[int] = field(default_factory=list, repr=False)
    _slot_orders: list[int] = field(default_factory=list, repr=False)

    @property
    def n_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> list[int]:
        """Per public generator slot: 0 for free, the torsion order otherwise."""
        return [0] * self.free_rank + list(self.torsion)

    def is_trivial(self) -> bool:
        return self.n_generators == 0

    def coordinates(self, vec, check: bool = True) -> list[int]:
        """Coordinates of the class of the cocycle `vec` (free first, torsion mod order)."""
        v = np.asarray(vec).reshape(-1)
        if v.shape[0] != self.dim:
            raise ValueError(f"vector length {v.shape[0]} != chain dimension {self.dim}")
        if self.dim == 0:
            return [0] * self.n_generators
        if check and self._check_rows is not None and self._check_rows.size:
            if np.any(imatvec(self._check_rows, v) != 0):
                raise NotInSpanError("vector is not a cocycle")
        if self.n_generators == 0:
            return []
        c = imatvec(self._coord_rows, v)
        w = imatvec(self._u2inv, c)
        out = [int(w[s]) for s in self._free_slots]
        out += [int(w[s]) % self._slot_orders[s] for s in self._torsion_slots]
        return out

    def coordinates_matrix(self, mat: np.ndarray, check: bool = True) -> list[list[int]]:
        """Coordinates of each column of `mat` at once (see coordinates)."""
        mat = as_int_matrix(mat, rows=self.dim, cols=0)
        if mat.shape[0] != self.dim:
            raise ValueError(f"column length {mat.shape[0]} != chain dimension {self.dim}")
        ncols = mat.shape[1]
        if self.dim == 0:
            return [[0] * self.n_generators for _ in range(ncols)]
        if check and self._check_rows is not None and self._check_rows.size:
            if np.any(imatmul(self._check_rows, mat) != 0):
                raise NotInSpanError("some column is not a cocycle")
        if self.n_generators == 0:
            return [[] for _ in range(ncols)]
        w = imatmul(self._u2inv, imatmul(self._coord_rows, mat))
        out = []
        for j in range(ncols):
            coords = [int(w[s, j]) for s in self._free_slots]
            coords += [int(w[s, j]) % self._slot_orders[s] for s in self._torsion_slots]
            out.append(coords)
        return out

    def same_shape(self, other: "CohomologyGroup") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def trivial_group(dim: int = 0) -> CohomologyGroup:
    return CohomologyGroup(free_rank=0, torsion=[], representatives=[], dim=dim)


def cohomology_of_pair(d_out: np.ndarray, d_in: np.ndarray) -> CohomologyGroup:
    """Cohomology ker(d_out)/im(d_in) at a single spot of a cochain complex.

    d_out: (n_up x n); d_in: (n x n_dn).  Raises ComplexInconsistencyError if
    d_out @ d_in != 0.
    """
    d_out = as_int_matrix(d_out)
    d_in = as_int_matrix(d_in)
    n = d_out.shape[1]
    if d_in.shape[0] != n:
        raise ValueError("coboundary shapes are inconsistent")
    if not is_zero_matrix(imatmul(d_out, d_in)):
        raise ComplexInconsistencyError("d o d != 0")
    if n == 0:
        return trivial_group(0)
    s1 = smith_normal_form(d_out)
    r = s1.rank
    k = n - r
    check_rows = s1.V[:r, :]
    coord_rows = s1.V[r:, :]
    kernel = s1.Vinv[:, r:]
    m_img = imatmul(coord_rows, d_in)
    s2 = smith_normal_form(m_img)
    slot_orders = [
        (s2.diag[i] if i < len(s2.diag) and i < s2.rank else 0) for i in range(k)
    ]
    free_slots = [i for i, d in enumerate(slot_orders) if d == 0]
    torsion_slots = [i for i, d in enumerate(slot_orders) if d >= 2]
    reps = [imatvec(kernel, s2.U[:, s]) for s in free_slots]
    reps += [imatvec(kernel, s2.U[:, s]) for s in torsion_slots]
    return CohomologyGroup(
        free_rank=len(free_slots),
        torsion=[slot_orders[s] for s in torsion_slots],
        representatives=reps,
        dim=n,
        _check_rows=check_rows,
        _coord_rows=coord_rows,
        _u2inv=s2.Uinv,
        _free_slots=free_slots,
        _torsion_slots=torsion_slots,
        _slot_orders=slot_orders,
    )


class IntegerCochainComplex:
    """Ordered bases per degree plus coboundary matrices d^p: C^p -> C^{p+1}."""

    def __init__(self, bases: dict[int, list], coboundaries: dict[int, np.ndarray]):
        self.bases = {p: list(b) for p, b in bases.items() if len(b)}
        self.coboundaries = {}
        for p, mat in coboundaries.items():
            mat = as_int_matrix(mat, rows=self.dim(p + 1), cols=self.dim(p))
            if mat.shape != (self.dim(p + 1), self.dim(p)):
                raise ValueError(
                    f"coboundary at degree {p} has shape {mat.shape}, "
                    f"expected {(self.dim(p + 1), self.dim(p))}"
                )
            self.coboundaries[p] = mat
        self._groups: dict[int, CohomologyGroup] = {}

    def dim(self, p: int) -> int:
        return len(self.bases.get(p, ()))

    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def coboundary(self, p: int) -> np.ndarray:
        if p in self.coboundaries:
            return self.coboundaries[p]
        return zeros_matrix(self.dim(p + 1), self.dim(p))

    def validate(self) -> None:
        for p in self.degrees():
            if not is_zero_matrix(imatmul(self.coboundary(p), self.coboundary(p - 1))):
                raise ComplexInconsistencyError(f"d o d != 0 at degree {p - 1}")

    def cohomology(self, p: int) -> CohomologyGroup:
        if p not in self._groups:
            self._groups[p] = cohomology_of_pair(self.coboundary(p), self.coboundary(p - 1))
        return self._groups[p]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * self.dim(p) for p in self.degrees())

    def to_json_dict(self) -> dict:
        degs = self.degrees()
        return {
            "degrees": degs,
            "dims": [self.dim(p) for p in degs],
            "coboundaries": [
                [[int(x) for x in row] for row in self.coboundary(p)] for p in degs
            ],
        }


def express_in_quotient(target, cocycle_basis, coboundary) -> list[int]:
    """Coordinates of [target] w.r.t. cocycle_basis, modulo the coboundary image.

    Solves target = B c + D z over Z, then reduces c canonically modulo the
    lattice of relations {c : B c lies in im D}; in particular the coordinate
    of a torsion generator comes back reduced modulo its order.  Raises
    NotInSpanError when no solution exists (an upstream bug for true cocycles).
    """
    target = np.asarray(target).reshape(-1)
    n = target.shape[0]
    g = len(cocycle_basis)
    b_mat = zeros_matrix(n, g).astype(object)
    for j, vec in enumerate(cocycle_basis):
        col = np.asarray(vec).reshape(-1)
        if col.shape[0] != n:
            raise ValueError("basis vector length mismatch")
        b_mat[:, j] = col
    d_mat = as_int_matrix(coboundary, rows=n, cols=0)
    if d_mat.shape[0] != n:
        raise ValueError("coboundary row count mismatch")
    w = np.concatenate([b_mat, d_mat.astype(object)], axis=1)
    w = as_int_matrix(w, rows=n, cols=g + d_mat.shape[1])
    sol = solve_integer(w, target)
    if sol is None:
        raise NotInSpanError("target is not in the span of basis and coboundaries")
    coords = sol[:g]
    snf = smith_normal_form(w)
    relations = snf.Vinv[:g, snf.rank:]
    reduced = reduce_mod_lattice(coords, relations)
    return [int(x) for x in reduced]
