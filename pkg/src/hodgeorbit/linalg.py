"""Exact matrices and subspaces over Q(i).

Conventions used throughout the package:

* operators act on column vectors, ``m.apply(v)``;
* a :class:`Subspace` stores its basis as the *rows* of a matrix in reduced
  row-echelon form.  The echelon form is canonical, so two subspaces are
  equal iff their basis matrices are identical -- this is the equality
  witness for every filtration comparison downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import GaussScalar, ZERO, ONE


def _coerce(x) -> GaussScalar:
    return x if isinstance(x, GaussScalar) else GaussScalar.of(x)


class Matrix:
    """A dense rows x cols matrix with GaussScalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        rows = tuple(tuple(_coerce(x) for x in row) for row in entries)
        ncols = len(rows[0]) if rows else (cols if cols is not None else 0)
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix([[ZERO] * cols for _ in range(rows)], cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if not rows:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            return Matrix.zeros(0, cols)
        return Matrix(rows)

    @staticmethod
    def column(vec) -> "Matrix":
        return Matrix([[x] for x in vec])

    # -- basic algebra -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries and self.cols == other.cols

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        return Matrix([[c * a for a in row] for row in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = other.entries
        out = []
        for row in self.entries:
            new = [ZERO] * other.cols
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                orow = ot[k]
                for j in range(other.cols):
                    b = orow[j]
                    if not b.is_zero():
                        new[j] = new[j] + a * b
            out.append(new)
        return Matrix.from_rows(out, other.cols)

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.entries:
            s = ZERO
            for a, x in zip(row, vec):
                if not (a.is_zero() or _coerce(x).is_zero()):
                    s = s + a * _coerce(x)
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix([[] for _ in range(self.cols)], 0)
        return Matrix(list(zip(*self.entries)), self.rows)

    def conjugate(self) -> "Matrix":
        return Matrix([[a.conjugate() for a in row] for row in self.entries])

    def conj_transpose(self) -> "Matrix":
        return self.conjugate().transpose()

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def is_rational(self) -> bool:
        return all(a.im == 0 for row in self.entries for a in row)

    def row(self, i) -> tuple:
        return self.entries[i]

    def col(self, j) -> tuple:
        return tuple(row[j] for row in self.entries)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return Matrix.from_rows(list(self.entries) + list(other.entries), self.cols)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; (A kron B)(e_i x e_j) = A e_i x B e_j."""
        out = []
        for arow in self.entries:
            for brow in other.entries:
                out.append([a * b for a in arow for b in brow])
        return Matrix.from_rows(out, self.cols * other.cols)

    def det(self) -> GaussScalar:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        det = ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if piv is None:
                return ZERO
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv = ONE / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv
                if f.is_zero():
                    continue
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return det

    def is_nilpotent(self) -> bool:
        if self.rows != self.cols:
            return False
        p = self
        for _ in range(self.rows):
            if p.is_zero():
                return True
            p = p @ self
        return p.is_zero()

    def nilpotency_degree(self) -> int:
        """Least d with self**d = 0; raises for non-nilpotent input."""
        p = Matrix.identity(self.rows)
        for d in range(self.rows + 1):
            if p.is_zero():
                return d
            p = p @ self
        if p.is_zero():
            return self.rows + 1
        raise ValueError("matrix is not nilpotent")

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(" ".join(repr(a) for a in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def echelonize(m: Matrix) -> Matrix:
    """Canonical reduced row-echelon form with zero rows dropped.

    Row space is preserved; the result is the unique RREF basis, which makes
    it usable as an equality witness for row spaces.
    """
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    piv_row = 0
    pivots = []
    for col in range(ncols):
        r = next((i for i in range(piv_row, nrows) if not rows[i][col].is_zero()), None)
        if r is None:
            continue
        rows[piv_row], rows[r] = rows[r], rows[piv_row]
        piv_val = rows[piv_row][col]
        if piv_val != ONE:
            inv = ONE / piv_val
            rows[piv_row] = [x if x.is_zero() else inv * x for x in rows[piv_row]]
        pivot = rows[piv_row]
        for i in range(nrows):
            if i == piv_row:
                continue
            f = rows[i][col]
            if f.is_zero():
                continue
            rows[i] = [x if y.is_zero() else x - f * y for x, y in zip(rows[i], pivot)]
        pivots.append(col)
        piv_row += 1
        if piv_row == nrows:
            break
    return Matrix.from_rows(rows[:piv_row], ncols)


def _pivot_cols(rref: Matrix) -> list[int]:
    pivots = []
    for row in rref.entries:
        for j, a in enumerate(row):
            if not a.is_zero():
                pivots.append(j)
                break
    return pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q(i)^n held by its canonical echelon row basis."""

    ambient: int
    basis: Matrix

    @staticmethod
    def from_vectors(ambient: int, vectors) -> "Subspace":
        vecs = [tuple(_coerce(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        return Subspace(ambient, echelonize(Matrix.from_rows(vecs, ambient)))

    @staticmethod
    def from_matrix_rows(m: Matrix) -> "Subspace":
        return Subspace(m.cols, echelonize(m))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.zeros(0, ambient))

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> list[int]:
        return _pivot_cols(self.basis)

    def reduce(self, vec) -> tuple:
        """Subtract the projection onto the pivot coordinates; the result is
        zero iff ``vec`` lies in the subspace."""
        v = [_coerce(x) for x in vec]
        if len(v) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        for row, p in zip(self.basis.entries, self.pivots()):
            c = v[p]
            if not c.is_zero():
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return all(x.is_zero() for x in self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.entries)

    def coords_of(self, vec) -> tuple:
        """Coordinates in the canonical basis; raises if not a member."""
        if not self.contains(vec):
            raise ValueError("vector not in subspace")
        v = [_coerce(x) for x in vec]
        return tuple(v[p] for p in self.pivots())

    def vector_from_coords(self, coords) -> tuple:
        coords = [_coerce(c) for c in coords]
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        out = [ZERO] * self.ambient
        for c, row in zip(coords, self.basis.entries):
            if c.is_zero():
                continue
            out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def conjugate(self) -> "Subspace":
        # Conjugation of an RREF basis is again RREF (pivots stay 1).
        return Subspace(self.ambient, self.basis.conjugate())

    def is_rational(self) -> bool:
        # The RREF basis of a conjugation-stable subspace is real.
        return self.basis.is_rational()

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on the subspace, via the standard bilinear
        dot product (no conjugation)."""
        return kernel(self.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"


def kernel(m: Matrix) -> Subspace:
    """Right null space {v : m v = 0}."""
    rref = echelonize(m)
    pivots = _pivot_cols(rref)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [ZERO] * m.cols
        v[j] = ONE
        for row, p in zip(rref.entries, pivots):
            v[p] = -row[j]
        basis.append(v)
    return Subspace.from_vectors(m.cols, basis)


def image(m: Matrix) -> Subspace:
    """Column space of m, i.e. the image of v -> m v."""
    return Subspace.from_matrix_rows(m.transpose())


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: one elimination on [[A|A],[B|0]]; rows with vanishing
    left half span the intersection on the right."""
    if a.ambient != b.ambient:
        raise ValueError("ambient dimension mismatch")
    n = a.ambient
    rows = [list(r) + list(r) for r in a.basis.entries]
    rows += [list(r) + [ZERO] * n for r in b.basis.entries]
    rref = echelonize(Matrix.from_rows(rows, 2 * n))
    out = [row[n:] for row in rref.entries if all(x.is_zero() for x in row[:n])]
    return Subspace.from_vectors(n, out)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimension mismatch")
    return Subspace.from_matrix_rows(a.basis.stack(b.basis))


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """{v : m v in s}."""
    if m.rows != s.ambient:
        raise ValueError("ambient dimension mismatch")
    ann = s.annihilator().basis
    return kernel(ann @ m)


def image_of_subspace(m: Matrix, s: Subspace) -> Subspace:
    if m.cols != s.ambient:
        raise ValueError("ambient dimension mismatch")
    vecs = [m.apply(row) for row in s.basis.entries]
    return Subspace.from_vectors(m.rows, vecs)


def tensor_subspace(a: Subspace, b: Subspace) -> Subspace:
    """span{s x t} inside the Kronecker-indexed product space."""
    vecs = []
    for u in a.basis.entries:
        for v in b.basis.entries:
            vecs.append(tuple(x * y for x in u for y in v))
    return Subspace.from_vectors(a.ambient * b.ambient, vecs)


def solve(m: Matrix, rhs) -> tuple | None:
    """One exact solution of m x = rhs, or None.

    The particular solution is canonical: free coordinates are set to zero
    after reduction to echelon form, so repeated calls give identical lifts.
    """
    rhs = [_coerce(x) for x in rhs]
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    aug = Matrix.from_rows(
        [list(row) + [r] for row, r in zip(m.entries, rhs)] if m.rows else [],
        m.cols + 1,
    )
    rref = echelonize(aug)
    x = [ZERO] * m.cols
    for row in rref.entries:
        lead = next((j for j, a in enumerate(row) if not a.is_zero()), None)
        if lead is None:
            continue
        if lead == m.cols:
            return None
        x[lead] = row[m.cols]
    # Back-check: with free coordinates zero the pivot assignment solves the
    # system only if consistent; the explicit multiply guards degenerate rows.
    if any((u - v) for u, v in zip(m.apply(x), rhs)):
        return None
    return tuple(x)


def quotient_projection(s: Subspace) -> Matrix:
    """Canonical projection Q(i)^n -> Q(i)^(n-k) with kernel exactly s.

    Coordinates of the quotient are the non-pivot coordinates of the
    canonical basis of s, evaluated after reduction by s.
    """
    n = s.ambient
    pivots = s.pivots()
    nonpiv = [j for j in range(n) if j not in pivots]
    cols = []
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        red = s.reduce(e)
        cols.append([red[t] for t in nonpiv])
    return Matrix.from_rows(list(zip(*cols)) if nonpiv else [], n)


def quotient_section(s: Subspace) -> Matrix:
    """Right inverse of :func:`quotient_projection` (zero on pivot coords)."""
    n = s.ambient
    pivots = s.pivots()
    nonpiv = [j for j in range(n) if j not in pivots]
    rows = []
    for j in range(n):
        row = [ZERO] * len(nonpiv)
        if j in nonpiv:
            row[nonpiv.index(j)] = ONE
        rows.append(row)
    return Matrix.from_rows(rows, len(nonpiv))


def is_positive_definite_hermitian(m: Matrix) -> bool:
    """Sylvester test: all leading principal minors strictly positive.

    Raises ValueError unless the input equals its conjugate transpose; the
    minors of a Hermitian matrix are real rationals, which keeps the test
    exact.
    """
    if m.rows != m.cols:
        raise ValueError("non-square matrix")
    if m != m.conj_transpose():
        raise ValueError("matrix is not Hermitian")
    for k in range(1, m.rows + 1):
        minor = Matrix.from_rows([row[:k] for row in m.entries[:k]], k).det()
        if minor.im != 0:
            raise ValueError("Hermitian minor came out non-real")
        if minor.re <= 0:
            return False
    return True
