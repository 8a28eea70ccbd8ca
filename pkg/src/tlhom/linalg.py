"""
Exact linear algebra over Z, Q and F_p.

Matrices are sparse ``RingMatrix`` wrappers around sympy ``DomainMatrix``; ranks,
field kernels and Smith invariants come from sympy. Integer kernels and lattice
membership use an xgcd-driven echelon form so that spans over Z are exact and
not merely of finite index.
"""
import heapq
import logging
from pathlib import Path
from typing import Iterable

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .coeff import RingSpec, RingValue, parse_ring_tag
from .errors import ParseError, SizeMismatch

logger = logging.getLogger(__name__)

SparseVector = dict[int, RingValue]


class RingMatrix:
    """A rows x cols matrix over a RingSpec, stored sparsely."""

    __slots__ = ("ring", "dm")

    def __init__(self, ring: RingSpec, dm: DomainMatrix):
        self.ring = ring
        self.dm = dm

    # Construction

    @classmethod
    def from_dod(cls, ring: RingSpec, rows: int, cols: int, dod: dict[int, dict[int, RingValue]]) -> "RingMatrix":
        convert = ring.domain.convert
        clean = {}
        for i, row in dod.items():
            kept = {j: convert(v) for j, v in row.items() if v}
            if kept:
                clean[i] = kept
        return cls(ring, DomainMatrix(clean, (rows, cols), ring.domain))

    @classmethod
    def from_columns(cls, ring: RingSpec, rows: int, columns: list[SparseVector]) -> "RingMatrix":
        dod: dict[int, dict[int, RingValue]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    dod.setdefault(i, {})[j] = v
        return cls.from_dod(ring, rows, len(columns), dod)

    @classmethod
    def from_rows(cls, ring: RingSpec, cols: int, rows: list[list[RingValue]]) -> "RingMatrix":
        dod = {i: {j: v for j, v in enumerate(row)} for i, row in enumerate(rows)}
        return cls.from_dod(ring, len(rows), cols, dod)

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "RingMatrix":
        return cls(ring, DomainMatrix({}, (rows, cols), ring.domain))

    @classmethod
    def identity(cls, ring: RingSpec, size: int) -> "RingMatrix":
        return cls.from_dod(ring, size, size, {i: {i: ring.one} for i in range(size)})

    @classmethod
    def scalar(cls, ring: RingSpec, value: RingValue) -> "RingMatrix":
        return cls.from_dod(ring, 1, 1, {0: {0: value}})

    # Shape and entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.dm.shape

    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    def to_dod(self) -> dict[int, dict[int, RingValue]]:
        return self.dm.to_sparse().to_dod()

    def entries(self) -> list[tuple[int, int, RingValue]]:
        """Nonzero (row, col, value) triples, sorted."""
        dod = self.to_dod()
        return sorted(
            ((i, j, v) for i, row in dod.items() for j, v in row.items() if v),
            key=lambda t: (t[0], t[1]),
        )

    def get(self, i: int, j: int) -> RingValue:
        return self.to_dod().get(i, {}).get(j, self.ring.zero)

    def column(self, j: int) -> SparseVector:
        return {i: row[j] for i, row in self.to_dod().items() if row.get(j)}

    def columns(self) -> list[SparseVector]:
        cols: list[SparseVector] = [{} for _ in range(self.cols)]
        for i, row in self.to_dod().items():
            for j, v in row.items():
                if v:
                    cols[j][i] = v
        return cols

    def dense_rows(self) -> list[list[RingValue]]:
        zero = self.ring.zero
        out = [[zero] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    # Arithmetic

    def _same(self, other: "RingMatrix") -> None:
        if self.ring != other.ring:
            raise SizeMismatch(f"matrices over {self.ring} and {other.ring}")

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._same(other)
        if self.cols != other.rows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if 0 in (self.rows, self.cols, other.cols):
            return RingMatrix.zeros(self.ring, self.rows, other.cols)
        return RingMatrix(self.ring, self.dm.matmul(other.dm))

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"cannot add {self.shape} and {other.shape}")
        return RingMatrix(self.ring, self.dm + other.dm)

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.ring, -self.dm)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def scale(self, c: RingValue) -> "RingMatrix":
        return RingMatrix(self.ring, self.dm.mul(c)) if c else RingMatrix.zeros(self.ring, *self.shape)

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.dm.transpose())

    def apply(self, vec: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, row in self.to_dod().items():
            total = self.ring.zero
            for j, v in row.items():
                x = vec.get(j)
                if x:
                    total += v * x
            if total:
                out[i] = total
        return out

    def is_zero(self) -> bool:
        return not self.to_dod()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries() == other.entries()

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols} over {self.ring}, nnz={len(self.entries())})"

    def submatrix(self, rows: list[int], cols: list[int]) -> "RingMatrix":
        row_pos = {r: k for k, r in enumerate(rows)}
        col_pos = {c: k for k, c in enumerate(cols)}
        dod: dict[int, dict[int, RingValue]] = {}
        for i, row in self.to_dod().items():
            if i in row_pos:
                for j, v in row.items():
                    if j in col_pos:
                        dod.setdefault(row_pos[i], {})[col_pos[j]] = v
        return RingMatrix.from_dod(self.ring, len(rows), len(cols), dod)

    @staticmethod
    def block(ring: RingSpec, row_sizes: list[int], col_sizes: list[int],
              blocks: dict[tuple[int, int], "RingMatrix"]) -> "RingMatrix":
        """Assemble a block matrix; missing blocks are zero."""
        row_off = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
        col_off = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
        dod: dict[int, dict[int, RingValue]] = {}
        for (bi, bj), m in blocks.items():
            if m.shape != (row_sizes[bi], col_sizes[bj]):
                raise SizeMismatch(f"block ({bi},{bj}) has shape {m.shape}")
            for i, j, v in m.entries():
                dod.setdefault(row_off[bi] + i, {})[col_off[bj] + j] = v
        return RingMatrix.from_dod(ring, sum(row_sizes), sum(col_sizes), dod)

    # Invariants

    def rank(self) -> int:
        if 0 in self.shape or self.is_zero():
            return 0
        dm = self.dm.convert_to(QQ) if self.ring.is_integers else self.dm
        return dm.rank()

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            return False
        if self.rows == 0:
            return True
        if self.ring.is_field:
            return self.rank() == self.rows
        return abs(int(self.dm.to_dense().det())) == 1


# Echelon submodules


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
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
    return x, y, g


class Submodule:
    """
    A submodule of R^N for R in {Z, Q, F_p}, kept in row-echelon form.

    Rows are sparse and keyed by their pivot (first nonzero) column. Over a
    field pivots are normalised to 1; over Z rows are combined with xgcd so
    the row set is always a basis of the lattice spanned so far.
    """

    __slots__ = ("ring", "N", "_rows")

    def __init__(self, ring: RingSpec, ambient_dimension: int):
        self.ring = ring
        self.N = ambient_dimension
        self._rows: dict[int, SparseVector] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[SparseVector]:
        return [dict(self._rows[p]) for p in self.pivots()]

    def is_full(self) -> bool:
        """Whether the span is all of R^N."""
        if len(self._rows) != self.N:
            return False
        return all(self.ring.is_unit(row[p]) for p, row in self._rows.items())

    @staticmethod
    def _axpy(vec: SparseVector, q: RingValue, row: SparseVector, heap: list[int]) -> None:
        """vec -= q * row, pushing new indices onto the heap."""
        for k, r in row.items():
            new = vec.get(k, 0) - q * r
            if new:
                if k not in vec:
                    heapq.heappush(heap, k)
                vec[k] = new
            else:
                vec.pop(k, None)

    def _reduce(self, vec: SparseVector, insert: bool) -> tuple[bool, SparseVector]:
        """
        Eliminate vec against the rows.

        Returns whether vec reduced to zero, and the multipliers used per pivot.
        With ``insert`` the leftover is added as a new row.
        """
        ring = self.ring
        vec = {k: v for k, v in vec.items() if v}
        heap = list(vec)
        heapq.heapify(heap)
        coords: SparseVector = {}
        while heap:
            j = heapq.heappop(heap)
            b = vec.get(j)
            if not b:
                continue
            row = self._rows.get(j)
            if row is None:
                if not insert:
                    return False, coords
                if ring.is_field:
                    inv = ring.inv(b)
                    vec = {k: v * inv for k, v in vec.items()}
                self._rows[j] = vec
                return False, coords
            a = row[j]
            if ring.is_field:
                q = b  # pivots are 1
            elif b % a == 0:
                q = b // a
            elif not insert:
                return False, coords
            else:
                x, y, g = xgcd(int(a), int(b))
                ag, mbg = a // g, -b // g
                keys = set(row) | set(vec)
                new_row = {}
                new_vec = {}
                for k in keys:
                    aa, bb = row.get(k, 0), vec.get(k, 0)
                    r = x * aa + y * bb
                    v = mbg * aa + ag * bb
                    if r:
                        new_row[k] = r
                    if v:
                        new_vec[k] = v
                self._rows[j] = new_row
                vec = new_vec
                heap = list(vec)
                heapq.heapify(heap)
                continue
            coords[j] = coords.get(j, 0) + q
            self._axpy(vec, q, row, heap)
        return True, coords

    def add(self, vec: SparseVector) -> bool:
        """Add vec to the span; return True if the span grew."""
        before = len(self._rows)
        snapshot = None if self.ring.is_field else {p: row for p, row in self._rows.items()}
        self._reduce(vec, insert=True)
        if len(self._rows) != before:
            return True
        return snapshot is not None and snapshot != self._rows

    def __contains__(self, vec: SparseVector) -> bool:
        contained, _ = self._reduce(vec, insert=False)
        return contained

    def coordinates(self, vec: SparseVector) -> list[RingValue] | None:
        """Coefficients of vec in ``basis()``, or None when vec is not in the span."""
        contained, coords = self._reduce(vec, insert=False)
        if not contained:
            return None
        zero = self.ring.zero
        return [coords.get(p, zero) for p in self.pivots()]

    def __le__(self, other: "Submodule") -> bool:
        return all(row in other for row in self._rows.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self <= other and other <= self


def span(ring: RingSpec, dimension: int, vectors: Iterable[SparseVector]) -> Submodule:
    sub = Submodule(ring, dimension)
    for v in vectors:
        sub.add(v)
    return sub


# Kernels, images, Smith invariants


def _partial_smithify(A: list[list[int]], num_cols: int) -> tuple[list[list[int]], list[list[int]]]:
    """
    Find diagonal D and unimodular T with S*A*T = D for some unimodular S.

    No divisibility is enforced on D; only its zero pattern is used.
    """
    D = [row.copy() for row in A]
    m, n = len(D), num_cols
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def rows_op(i1, i2, j):
        a, b = D[i1][j], D[i2][j]
        if b == 0:
            return
        if a == 0:
            D[i1], D[i2] = D[i2], D[i1]
        elif b % a == 0:
            q = b // a
            D[i2] = [y - q * x for x, y in zip(D[i1], D[i2])]
        else:
            x, y, g = xgcd(a, b)
            r1, r2 = D[i1], D[i2]
            D[i1] = [x * p + y * s for p, s in zip(r1, r2)]
            D[i2] = [(-b // g) * p + (a // g) * s for p, s in zip(r1, r2)]

    def cols_op(j1, j2, i):
        a, b = D[i][j1], D[i][j2]
        if b == 0:
            return
        for M in (D, T):
            for row in M:
                p, s = row[j1], row[j2]
                if a == 0:
                    row[j1], row[j2] = s, p
                elif b % a == 0:
                    row[j2] = s - (b // a) * p
                else:
                    x, y, g = xgcd(a, b)
                    row[j1] = x * p + y * s
                    row[j2] = (-b // g) * p + (a // g) * s

    for k in range(min(m, n)):
        while True:
            for i in range(k + 1, m):
                rows_op(k, i, k)
            if all(D[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                cols_op(k, j, k)
            if all(D[i][k] == 0 for i in range(k + 1, m)):
                break
    return D, T


def kernel_basis(M: RingMatrix) -> list[SparseVector]:
    """
    A basis of {x : M x = 0}: a vector-space basis over fields, a lattice basis over Z.
    """
    ring = M.ring
    rows, cols = M.shape
    if cols == 0:
        return []
    if M.is_zero():
        return [{j: ring.one} for j in range(cols)]
    if ring.is_field:
        null = M.dm.nullspace()
        return [
            {j: v for j, v in row.items() if v}
            for _, row in sorted(null.to_sparse().to_dod().items())
        ]
    A = [[int(v) for v in row] for row in M.dense_rows()]
    D, T = _partial_smithify(A, cols)
    kernel_cols = [j for j in range(cols) if j >= rows or D[j][j] == 0]
    return [
        {i: ring(T[i][j]) for i in range(cols) if T[i][j]}
        for j in kernel_cols
    ]


def kernel_module(M: RingMatrix) -> Submodule:
    """The kernel of M in echelon form."""
    return span(M.ring, M.cols, kernel_basis(M))


def image_module(M: RingMatrix) -> Submodule:
    """The column span of M in echelon form."""
    return span(M.ring, M.rows, M.columns())


def smith_invariants(M: RingMatrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, as positive ints."""
    if 0 in M.shape or M.is_zero():
        return []
    dm = M.dm.to_dense()
    if not M.ring.is_integers:
        dm = dm.convert_to(QQ)
    factors = invariant_factors(dm)
    return [abs(int(f)) for f in factors if f]


def solve(M: RingMatrix, b: SparseVector) -> SparseVector | None:
    """A solution x of M x = b over the ring, or None when there is none."""
    ring = M.ring
    augmented = RingMatrix.from_columns(ring, M.rows, [{i: -v for i, v in b.items()}] + M.columns())
    sub = kernel_module(augmented)
    row = next((r for r in sub.basis() if 0 in r), None)
    if row is None or not ring.is_unit(row[0]):
        return None
    inv = ring.inv(row[0])
    return {j - 1: v * inv for j, v in row.items() if j > 0 and v}


# tlmat files


def save_matrix(M: RingMatrix, path: str | Path) -> None:
    """Write ``tlmat <rows> <cols> <ring-tag>`` then 1-based ``row col value`` triples."""
    lines = [f"tlmat {M.rows} {M.cols} {M.ring.tag}"]
    lines += [f"{i + 1} {j + 1} {M.ring.format(v)}" for i, j, v in M.entries()]
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix(path: str | Path) -> RingMatrix:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")
    lines = [line.split() for line in path.read_text().splitlines() if line.strip()]
    if not lines or len(lines[0]) != 4 or lines[0][0] != "tlmat":
        raise ParseError(f"{path} is not a tlmat file")
    rows, cols, ring = int(lines[0][1]), int(lines[0][2]), parse_ring_tag(lines[0][3])
    dod: dict[int, dict[int, RingValue]] = {}
    for parts in lines[1:]:
        if len(parts) != 3:
            raise ParseError(f"bad entry line {' '.join(parts)!r} in {path}")
        dod.setdefault(int(parts[0]) - 1, {})[int(parts[1]) - 1] = ring.parse_value(parts[2])
    return RingMatrix.from_dod(ring, rows, cols, dod)
