"""Filtered objects: mixed data, orbit data, pairings, and their functors.

A :class:`HodgeDatum` packages a finite-dimensional Q(i)-space with an
increasing (rational) weight filtration, a decreasing Hodge filtration,
a family of commuting nilpotent rational operators, graded pairings, and a
formal Tate-twist tag.  An :class:`OrbitDatum` is the pure counterpart: a
single weight, one global pairing, and operators N_0..N_n.

Graded pairings are stored in the canonical coordinates of the graded piece
(see :func:`graded_maps`); every construction that moves pairings around does
so by explicit base change, so equality of canonical forms is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Matrix,
    Subspace,
    echelonize,
    image_of_subspace,
    intersect,
    kernel,
    quotient_projection,
    quotient_section,
    subspace_sum,
    tensor_subspace,
)
from .filtration import Filtration, trivial_weight_filtration
from .scalars import GaussScalar, ONE, ZERO


def matrix_inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = Matrix.from_rows(
        [list(row) + list(Matrix.identity(n).entries[i]) for i, row in enumerate(m.entries)],
        2 * n,
    )
    rref = echelonize(aug)
    if rref.rows != n or any(rref.entries[i][i] != ONE for i in range(n)):
        raise ValueError("matrix is singular")
    return Matrix.from_rows([row[n:] for row in rref.entries], n)


# ---------------------------------------------------------------------------
# Pairings


@dataclass(frozen=True)
class Pairing:
    """A bilinear form u, v -> u^T M v with values in Q * (2 pi i)^twist."""

    matrix: Matrix
    twist: int
    symmetry: int  # +1 or -1

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("pairing matrix must be square")
        if self.symmetry not in (1, -1):
            raise ValueError("symmetry must be +1 or -1")
        if not self.matrix.is_rational():
            raise ValueError("pairing matrix must be rational")
        if self.matrix.transpose() != self.matrix.scale(self.symmetry):
            raise ValueError("pairing does not have the declared symmetry")

    def evaluate(self, u, v) -> GaussScalar:
        mv = self.matrix.apply(v)
        s = ZERO
        for a, b in zip(u, mv):
            s = s + GaussScalar.of(a) * b
        return s

    def is_perfect(self) -> bool:
        return self.matrix.rows == 0 or not self.matrix.det().is_zero()

    def negate(self) -> "Pairing":
        return Pairing(-self.matrix, self.twist, self.symmetry)

    def base_change(self, phi_inv: Matrix) -> "Pairing":
        """Pairing in new coordinates x, given old = phi_inv(new)."""
        return Pairing(phi_inv.transpose() @ self.matrix @ phi_inv, self.twist, self.symmetry)


def dual_pairing(p: Pairing) -> Pairing:
    """The induced pairing on the dual space, in dual-basis coordinates."""
    if p.matrix.rows == 0:
        return Pairing(p.matrix, -p.twist, p.symmetry)
    return Pairing(matrix_inverse(p.matrix).transpose(), -p.twist, p.symmetry)


# ---------------------------------------------------------------------------
# Graded coordinates


@dataclass(frozen=True)
class GradedMaps:
    """Canonical coordinates on gr^W_w = W_w / W_{w-1}.

    ``project`` is a (g x n)-matrix valid on W_w, killing W_{w-1};
    ``section`` maps graded coordinates to canonical representatives in W_w.
    """

    weight: int
    dim: int
    project: Matrix
    section: Matrix


def graded_maps(weight_filtration: Filtration, w: int) -> GradedMaps:
    ww = weight_filtration.at(w)
    wlow = weight_filtration.at(w - 1)
    proj_low = quotient_projection(wlow)
    gr_sub = image_of_subspace(proj_low, ww)
    pivots = gr_sub.pivots()
    row_select = Matrix.from_rows(
        [[ONE if j == p else ZERO for j in range(proj_low.rows)] for p in pivots],
        proj_low.rows,
    )
    project = row_select @ proj_low
    section = quotient_section(wlow) @ gr_sub.basis.transpose()
    return GradedMaps(w, gr_sub.dim, project, section)


# ---------------------------------------------------------------------------
# The mixed datum


@dataclass(frozen=True)
class HodgeDatum:
    weight_filtration: Filtration
    hodge_filtration: Filtration
    operators: tuple
    graded_pairings: tuple  # sorted ((weight, Pairing), ...), possibly partial
    twist_tag: int = 0

    def __post_init__(self):
        n = self.weight_filtration.ambient_dim
        if not self.weight_filtration.increasing:
            raise ValueError("weight filtration must be increasing")
        if self.hodge_filtration.increasing:
            raise ValueError("Hodge filtration must be decreasing")
        if self.hodge_filtration.ambient_dim != n:
            raise ValueError("filtration ambient dimensions differ")
        if not self.weight_filtration.is_rational():
            raise ValueError("weight filtration must be rational")
        for op in self.operators:
            if op.shape != (n, n):
                raise ValueError("operator has wrong shape")
            if not op.is_rational():
                raise ValueError("operators must be rational")
            if not op.is_nilpotent():
                raise ValueError("operator is not nilpotent")
            for _, s in self.weight_filtration.steps:
                if not s.contains_subspace(image_of_subspace(op, s)):
                    raise ValueError("operator does not preserve the weight filtration")
        for i in range(len(self.operators)):
            for j in range(i + 1, len(self.operators)):
                if self.operators[i] @ self.operators[j] != self.operators[j] @ self.operators[i]:
                    raise ValueError("operators do not commute")
        for w, p in self.graded_pairings:
            g = self.weight_filtration.graded_dim(w)
            if p.matrix.rows != g:
                raise ValueError(f"pairing at weight {w} has wrong size")
            if p.twist != -w:
                raise ValueError(f"pairing at weight {w} must have twist {-w}")
            if p.symmetry != (-1) ** (w % 2):
                raise ValueError(f"pairing at weight {w} has wrong symmetry")
            if not p.is_perfect():
                raise ValueError(f"pairing at weight {w} is degenerate")

    # -- accessors ------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.weight_filtration.ambient_dim

    def weights(self) -> tuple:
        return self.weight_filtration.jumps()

    def pairing(self, w: int):
        for ww, p in self.graded_pairings:
            if ww == w:
                return p
        return None

    def graded(self, w: int) -> GradedMaps:
        return graded_maps(self.weight_filtration, w)

    def canonical_key(self):
        return (
            self.dim,
            self.twist_tag,
            tuple((k, s.basis.entries) for k, s in self.weight_filtration.steps),
            tuple((p, s.basis.entries) for p, s in self.hodge_filtration.steps),
            tuple(op.entries for op in self.operators),
            tuple((w, p.matrix.entries, p.twist, p.symmetry) for w, p in self.graded_pairings),
        )


def make_datum(weight_filtration, hodge_filtration, operators, pairings=None, twist_tag=0) -> HodgeDatum:
    items = tuple(sorted((pairings or {}).items()))
    return HodgeDatum(weight_filtration, hodge_filtration, tuple(operators), items, twist_tag)


def with_tag(h: HodgeDatum, twist_tag: int) -> HodgeDatum:
    """Same filtered object with the formal twist tag overridden."""
    return HodgeDatum(h.weight_filtration, h.hodge_filtration, h.operators, h.graded_pairings, twist_tag)


# ---------------------------------------------------------------------------
# The pure orbit datum


@dataclass(frozen=True)
class OrbitDatum:
    """Candidate pure nilpotent-orbit data (V, w, <,>, N_0..N_n, F)."""

    weight: int
    pairing: Pairing
    operators: tuple
    hodge_filtration: Filtration
    twist_tag: int = 0

    def __post_init__(self):
        n = self.pairing.matrix.rows
        if self.hodge_filtration.increasing or self.hodge_filtration.ambient_dim != n:
            raise ValueError("Hodge filtration malformed")
        if self.pairing.twist != -self.weight:
            raise ValueError("pairing twist must be minus the weight")
        if self.pairing.symmetry != (-1) ** (self.weight % 2):
            raise ValueError("pairing has wrong symmetry for the weight")
        if not self.pairing.is_perfect():
            raise ValueError("pairing is degenerate")
        s = self.pairing.matrix
        for op in self.operators:
            if op.shape != (n, n) or not op.is_rational():
                raise ValueError("operator malformed")
            if not op.is_nilpotent():
                raise ValueError("operator is not nilpotent")
            if not (op.transpose() @ s + s @ op).is_zero():
                raise ValueError("operator is not infinitesimally isotropic")
        for i in range(len(self.operators)):
            for j in range(i + 1, len(self.operators)):
                if self.operators[i] @ self.operators[j] != self.operators[j] @ self.operators[i]:
                    raise ValueError("operators do not commute")
        lo = self.hodge_filtration.min_index()
        hi = self.hodge_filtration.max_index()
        for p in range(min(lo, self.weight + 1 - hi) - 1, max(hi, self.weight + 1 - lo) + 2):
            fp = self.hodge_filtration.at(p)
            ann = kernel(fp.basis @ s) if fp.dim else Subspace.full(n)
            if ann != self.hodge_filtration.at(self.weight + 1 - p):
                raise ValueError(
                    f"annihilator of F^{p} is not F^{self.weight + 1 - p}"
                )

    @property
    def dim(self) -> int:
        return self.pairing.matrix.rows

    def canonical_key(self):
        return (
            self.dim,
            self.weight,
            self.twist_tag,
            self.pairing.matrix.entries,
            tuple(op.entries for op in self.operators),
            tuple((p, s.basis.entries) for p, s in self.hodge_filtration.steps),
        )


@dataclass(frozen=True)
class PairedDatum:
    """A mixed datum with a global pairing and a distinguished nilpotent
    operator N: H -> H(-1); the data of the correspondence with weight-w
    pure objects over one extra log direction."""

    datum: HodgeDatum
    weight: int
    pairing: Pairing
    log_operator: Matrix

    def __post_init__(self):
        h, w, s, nn = self.datum, self.weight, self.pairing, self.log_operator
        n = h.dim
        if s.matrix.rows != n:
            raise ValueError("global pairing has wrong size")
        if s.twist != -w or s.symmetry != (-1) ** (w % 2):
            raise ValueError("global pairing has wrong twist or symmetry")
        if not s.is_perfect():
            raise ValueError("global pairing is degenerate")
        if nn.shape != (n, n) or not nn.is_rational() or not nn.is_nilpotent():
            raise ValueError("log operator malformed")
        if not (nn.transpose() @ s.matrix + s.matrix @ nn).is_zero():
            raise ValueError("log operator is not infinitesimally isotropic")
        for op in h.operators:
            if op @ nn != nn @ op:
                raise ValueError("log operator does not commute with the operators")
        for k, sub in h.weight_filtration.steps:
            if not sub.contains_subspace(image_of_subspace(nn, sub)):
                raise ValueError("log operator does not preserve the weight filtration")
        # Pairing compatibility with W: <W_a, W_b> = 0 once a + b < 2w.
        for a, sa in h.weight_filtration.steps:
            for b, sb in h.weight_filtration.steps:
                if a + b < 2 * w and sa.dim and sb.dim:
                    if not (sa.basis @ s.matrix @ sb.basis.transpose()).is_zero():
                        raise ValueError("pairing does not respect the weight filtration")
        # Pairing compatibility with F: <F^a, F^b> = 0 once a + b > w;
        # the binding instances can sit between stored jumps, so the whole
        # index range is walked.
        lo_f, hi_f = h.hodge_filtration.min_index() - 1, h.hodge_filtration.max_index()
        for a in range(lo_f, hi_f + 1):
            for b in range(lo_f, hi_f + 1):
                fa, fb = h.hodge_filtration.at(a), h.hodge_filtration.at(b)
                if a + b > w and fa.dim and fb.dim:
                    if not (fa.basis @ s.matrix @ fb.basis.transpose()).is_zero():
                        raise ValueError("pairing does not respect the Hodge filtration")
        # N F^p inside F^{p-1}: N is a morphism into the (-1)-twist.  The
        # distinct instances sit at the jumps and one degree above them.
        for p in range(h.hodge_filtration.min_index(), h.hodge_filtration.max_index() + 2):
            img = image_of_subspace(nn, h.hodge_filtration.at(p))
            if not h.hodge_filtration.at(p - 1).contains_subspace(img):
                raise ValueError("log operator violates Griffiths transversality")


# ---------------------------------------------------------------------------
# Morphisms


def morphism_defects(f: Matrix, a: HodgeDatum, b: HodgeDatum, strict: bool = True) -> list:
    """Reasons why f is not a (strict) morphism a -> b; empty list if it is."""
    defects = []
    if f.shape != (b.dim, a.dim):
        return [f"shape {f.shape} does not map dim {a.dim} to dim {b.dim}"]
    if a.twist_tag != b.twist_tag:
        defects.append("twist tags differ")
    if len(a.operators) != len(b.operators):
        defects.append("operator counts differ")
    else:
        for j, (na, nb) in enumerate(zip(a.operators, b.operators)):
            if f @ na != nb @ f:
                defects.append(f"does not intertwine operator {j}")
    idx = sorted(set(a.weight_filtration.jumps()) | set(b.weight_filtration.jumps()))
    fa_img = image_of_subspace(f, Subspace.full(a.dim))
    for k in idx:
        img = image_of_subspace(f, a.weight_filtration.at(k))
        if not b.weight_filtration.at(k).contains_subspace(img):
            defects.append(f"does not preserve W_{k}")
        elif strict and img != intersect(fa_img, b.weight_filtration.at(k)):
            defects.append(f"not strict at W_{k}")
    for p in sorted(set(a.hodge_filtration.jumps()) | set(b.hodge_filtration.jumps())):
        img = image_of_subspace(f, a.hodge_filtration.at(p))
        if not b.hodge_filtration.at(p).contains_subspace(img):
            defects.append(f"does not preserve F^{p}")
    return defects


def is_morphism(f: Matrix, a: HodgeDatum, b: HodgeDatum, strict: bool = True) -> bool:
    return not morphism_defects(f, a, b, strict)


# ---------------------------------------------------------------------------
# Functors


def _transport_pairing(p: Pairing, phi: Matrix) -> Pairing:
    """Pairing in new graded coordinates; phi maps old coords to new."""
    return p.base_change(matrix_inverse(phi))


def dual(h: HodgeDatum) -> HodgeDatum:
    """Dual datum: W_k^* = ann W_{-k-1}, F^p^* = ann F^{1-p}, N^* = -N^T."""
    n = h.dim
    w_pairs = []
    for k in h.weight_filtration.jumps():
        for idx in (-k, -k - 1):
            w_pairs.append((idx, h.weight_filtration.at(-idx - 1).annihilator()))
    wf = Filtration.make(n, True, w_pairs)
    f_pairs = []
    for p in h.hodge_filtration.jumps():
        for idx in (1 - p, 1 - p + 1):
            f_pairs.append((idx, h.hodge_filtration.at(1 - idx).annihilator()))
    ff = Filtration.make(n, False, f_pairs)
    ops = tuple(-op.transpose() for op in h.operators)
    partial = HodgeDatum(wf, ff, ops, (), -h.twist_tag)
    pairings = {}
    for w, p in h.graded_pairings:
        gm_dual = partial.graded(-w)
        gm = h.graded(w)
        if gm.dim == 0:
            continue
        # Evaluation matrix between gr_{-w}(h^*) and gr_w(h) canonical bases.
        ev = gm_dual.section.transpose() @ gm.section
        dp = dual_pairing(p)
        evi = matrix_inverse(ev)
        pairings[-w] = Pairing(evi.transpose() @ dp.matrix @ evi, dp.twist, dp.symmetry)
    return make_datum(wf, ff, ops, pairings, -h.twist_tag)


def tate_twist(h: HodgeDatum, r: int) -> HodgeDatum:
    """Tensor with the rank-one twist: weights shift by -2r, F by -r."""
    wf = Filtration(h.dim, True, tuple((k - 2 * r, s) for k, s in h.weight_filtration.steps))
    ff = Filtration(h.dim, False, tuple((p - r, s) for p, s in h.hodge_filtration.steps))
    pairings = {
        w - 2 * r: Pairing(p.matrix, p.twist + 2 * r, p.symmetry)
        for w, p in h.graded_pairings
    }
    return make_datum(wf, ff, h.operators, pairings, h.twist_tag + r)


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for row in a.entries:
        rows.append(list(row) + [ZERO] * b.cols)
    for row in b.entries:
        rows.append([ZERO] * a.cols + list(row))
    return Matrix.from_rows(rows, a.cols + b.cols)


def _direct_sum_subspace(s: Subspace, t: Subspace) -> Subspace:
    vecs = [tuple(row) + (ZERO,) * t.ambient for row in s.basis.entries]
    vecs += [(ZERO,) * s.ambient + tuple(row) for row in t.basis.entries]
    return Subspace.from_vectors(s.ambient + t.ambient, vecs)


def tensor(a: HodgeDatum, b: HodgeDatum) -> HodgeDatum:
    """Tensor product with Leibniz operators and multiplicative pairings."""
    if len(a.operators) != len(b.operators):
        raise ValueError("operator counts differ")
    n = a.dim * b.dim
    wa, wb = a.weight_filtration, b.weight_filtration
    if a.dim == 0 or b.dim == 0:
        return zero_datum(0, len(a.operators), a.twist_tag + b.twist_tag)
    w_pairs = []
    for k in range(wa.min_index() + wb.min_index(), wa.max_index() + wb.max_index() + 1):
        total = Subspace.zero(n)
        for i in range(wa.min_index(), wa.max_index() + 1):
            total = subspace_sum(total, tensor_subspace(wa.at(i), wb.at(k - i)))
        w_pairs.append((k, total))
    wf = Filtration.make(n, True, w_pairs)
    fa, fb = a.hodge_filtration, b.hodge_filtration
    f_pairs = []
    lo = (fa.min_index() - 1) + (fb.min_index() - 1)
    hi = fa.max_index() + fb.max_index()
    for p in range(lo, hi + 1):
        total = Subspace.zero(n)
        for i in range(fa.min_index() - 1, fa.max_index() + 1):
            total = subspace_sum(total, tensor_subspace(fa.at(i), fb.at(p - i)))
        f_pairs.append((p, total))
    ff = Filtration.make(n, False, f_pairs)
    ia, ib = Matrix.identity(a.dim), Matrix.identity(b.dim)
    ops = tuple(na.kron(ib) + ia.kron(nb) for na, nb in zip(a.operators, b.operators))
    pairings = {}
    for w in wf.jumps():
        gm = graded_maps(wf, w)
        if gm.dim == 0:
            continue
        cols = []
        blocks = []
        ok = True
        for i in wa.jumps():
            j = w - i
            ga, gb = a.graded(i), b.graded(j)
            if ga.dim == 0 or gb.dim == 0:
                continue
            pa, pb = a.pairing(i), b.pairing(j)
            if pa is None or pb is None:
                ok = False
                break
            blocks.append(pa.matrix.kron(pb.matrix))
            for alpha in range(ga.dim):
                ua = ga.section.col(alpha)
                for beta in range(gb.dim):
                    vb = gb.section.col(beta)
                    vec = tuple(x * y for x in ua for y in vb)
                    cols.append(gm.project.apply(vec))
        if not ok or not cols:
            continue
        phi = Matrix.from_rows(list(zip(*cols)), len(cols))
        if phi.rows != gm.dim or len(cols) != gm.dim:
            continue  # graded piece not exhausted by paired blocks
        src = blocks[0]
        for blk in blocks[1:]:
            src = _block_diag(src, blk)
        phi_inv = matrix_inverse(phi)
        pairings[w] = Pairing(phi_inv.transpose() @ src @ phi_inv, -w, (-1) ** (w % 2))
    return make_datum(wf, ff, ops, pairings, a.twist_tag + b.twist_tag)


def direct_sum(a: HodgeDatum, b: HodgeDatum) -> HodgeDatum:
    if len(a.operators) != len(b.operators):
        raise ValueError("operator counts differ")
    if a.twist_tag != b.twist_tag:
        raise ValueError("twist tags differ")
    n = a.dim + b.dim
    ks = sorted(set(a.weight_filtration.jumps()) | set(b.weight_filtration.jumps()))
    wf = Filtration.make(
        n, True, [(k, _direct_sum_subspace(a.weight_filtration.at(k), b.weight_filtration.at(k))) for k in ks]
    )
    ps = sorted(set(a.hodge_filtration.jumps()) | set(b.hodge_filtration.jumps()))
    ff = Filtration.make(
        n, False, [(p, _direct_sum_subspace(a.hodge_filtration.at(p), b.hodge_filtration.at(p))) for p in ps]
    )
    ops = tuple(_block_diag(na, nb) for na, nb in zip(a.operators, b.operators))
    pairings = {}
    for w in wf.jumps():
        gm = graded_maps(wf, w)
        ga, gb = a.graded(w), b.graded(w)
        pa, pb = a.pairing(w), b.pairing(w)
        if ga.dim and pa is None:
            continue
        if gb.dim and pb is None:
            continue
        cols = []
        for alpha in range(ga.dim):
            vec = tuple(ga.section.col(alpha)) + (ZERO,) * b.dim
            cols.append(gm.project.apply(vec))
        for beta in range(gb.dim):
            vec = (ZERO,) * a.dim + tuple(gb.section.col(beta))
            cols.append(gm.project.apply(vec))
        if len(cols) != gm.dim:
            continue
        phi = Matrix.from_rows(list(zip(*cols)), len(cols))
        blocks = [p.matrix for p in (pa, pb) if p is not None and p.matrix.rows]
        if not blocks:
            continue
        src = blocks[0]
        for blk in blocks[1:]:
            src = _block_diag(src, blk)
        phi_inv = matrix_inverse(phi)
        pairings[w] = Pairing(phi_inv.transpose() @ src @ phi_inv, -w, (-1) ** (w % 2))
    return make_datum(wf, ff, ops, pairings, a.twist_tag)


def zero_datum(dim: int, n_ops: int, twist_tag: int = 0) -> HodgeDatum:
    if dim != 0:
        raise ValueError("zero_datum builds the zero object")
    wf = Filtration.make(0, True, [])
    ff = Filtration.make(0, False, [])
    return make_datum(wf, ff, [Matrix.zeros(0, 0)] * n_ops, {}, twist_tag)


def graded_piece(h: HodgeDatum, w: int) -> HodgeDatum:
    """The weight-w graded quotient as a standalone pure datum."""
    gm = h.graded(w)
    g = gm.dim
    if g == 0:
        return zero_datum(0, len(h.operators), h.twist_tag)
    wf = trivial_weight_filtration(g, w)
    ww = h.weight_filtration.at(w)
    f_pairs = []
    for p in h.hodge_filtration.jumps():
        fp = intersect(h.hodge_filtration.at(p), ww)
        f_pairs.append((p, image_of_subspace(gm.project, fp)))
    f_pairs.append((h.hodge_filtration.max_index() + 1, Subspace.zero(g)))
    ff = Filtration.make(g, False, f_pairs)
    ops = tuple(gm.project @ op @ gm.section for op in h.operators)
    pairings = {}
    p = h.pairing(w)
    if p is not None:
        pairings[w] = p
    return make_datum(wf, ff, ops, pairings, h.twist_tag)


def sub_truncate(h: HodgeDatum, j: int):
    """The sub-datum W_j(h) in its canonical coordinates.

    Returns (datum, inclusion matrix into h).
    """
    s = h.weight_filtration.at(j)
    k = s.dim
    incl = s.basis.transpose()
    pivots = s.pivots()
    restrict = Matrix.from_rows(
        [[ONE if c == p else ZERO for c in range(h.dim)] for p in pivots], h.dim
    )
    w_pairs = [(kk, image_of_subspace(restrict, intersect(v, s))) for kk, v in h.weight_filtration.steps if kk <= j]
    wf = Filtration.make(k, True, w_pairs)
    f_pairs = [(p, image_of_subspace(restrict, intersect(h.hodge_filtration.at(p), s))) for p in h.hodge_filtration.jumps()]
    f_pairs.append((h.hodge_filtration.max_index() + 1, Subspace.zero(k)))
    ff = Filtration.make(k, False, f_pairs)
    ops = tuple(restrict @ op @ incl for op in h.operators)
    partial = HodgeDatum(wf, ff, ops, (), h.twist_tag)
    pairings = {}
    for w, p in h.graded_pairings:
        if w > j:
            continue
        gm_sub = partial.graded(w)
        gm = h.graded(w)
        if gm.dim == 0:
            continue
        phi = gm_sub.project @ restrict @ gm.section
        pairings[w] = _transport_pairing(p, phi)
    return make_datum(wf, ff, ops, pairings, h.twist_tag), incl


def quotient_datum(h: HodgeDatum, j: int):
    """The quotient h / W_j in canonical coordinates.

    Returns (datum, projection matrix from h).
    """
    s = h.weight_filtration.at(j)
    proj = quotient_projection(s)
    sec = quotient_section(s)
    q = proj.rows
    w_pairs = [(kk, image_of_subspace(proj, v)) for kk, v in h.weight_filtration.steps if kk > j]
    wf = Filtration.make(q, True, w_pairs)
    f_pairs = [(p, image_of_subspace(proj, h.hodge_filtration.at(p))) for p in h.hodge_filtration.jumps()]
    ff = Filtration.make(q, False, f_pairs)
    ops = tuple(proj @ op @ sec for op in h.operators)
    partial = HodgeDatum(wf, ff, ops, (), h.twist_tag)
    pairings = {}
    for w, p in h.graded_pairings:
        if w <= j:
            continue
        gm_q = partial.graded(w)
        gm = h.graded(w)
        if gm.dim == 0:
            continue
        phi = gm_q.project @ proj @ gm.section
        pairings[w] = _transport_pairing(p, phi)
    return make_datum(wf, ff, ops, pairings, h.twist_tag), proj


def pushout(f: Matrix, g: Matrix, a: HodgeDatum, b: HodgeDatum, c: HodgeDatum):
    """Pushout (b + c) / {(f x, -g x)} of b <- a -> c along strict morphisms.

    Returns (datum, map_from_b, map_from_c).
    """
    for name, (mp, src, dst) in {
        "f": (f, a, b),
        "g": (g, a, c),
    }.items():
        defects = morphism_defects(mp, src, dst, strict=True)
        if defects:
            raise ValueError(f"pushout leg {name} is not a strict morphism: {defects}")
    if b.twist_tag != c.twist_tag:
        raise ValueError("pushout legs have different twist tags")
    n = b.dim + c.dim
    rel_vecs = []
    for col in range(a.dim):
        e = [ZERO] * a.dim
        e[col] = ONE
        rel_vecs.append(tuple(f.apply(e)) + tuple((-g).apply(e)))
    rel = Subspace.from_vectors(n, rel_vecs)
    proj = quotient_projection(rel)
    sec = quotient_section(rel)
    emb_b = Matrix.from_rows([list(row) + [ZERO] * c.dim for row in Matrix.identity(b.dim).entries], n).transpose()
    emb_c = Matrix.from_rows([[ZERO] * b.dim + list(row) for row in Matrix.identity(c.dim).entries], n).transpose()
    map_b = proj @ emb_b
    map_c = proj @ emb_c
    ks = sorted(set(b.weight_filtration.jumps()) | set(c.weight_filtration.jumps()))
    wf = Filtration.make(
        proj.rows,
        True,
        [
            (k, image_of_subspace(proj, _direct_sum_subspace(b.weight_filtration.at(k), c.weight_filtration.at(k))))
            for k in ks
        ],
    )
    ps = sorted(set(b.hodge_filtration.jumps()) | set(c.hodge_filtration.jumps()))
    ff = Filtration.make(
        proj.rows,
        False,
        [
            (p, image_of_subspace(proj, _direct_sum_subspace(b.hodge_filtration.at(p), c.hodge_filtration.at(p))))
            for p in ps
        ],
    )
    ops = []
    for nb, nc in zip(b.operators, c.operators):
        big = _block_diag(nb, nc)
        moved = image_of_subspace(big, rel)
        if not rel.contains_subspace(moved):
            raise ValueError("operators do not descend to the pushout")
        ops.append(proj @ big @ sec)
    out = make_datum(wf, ff, ops, {}, b.twist_tag)
    return out, map_b, map_c


def sum_operators(h, i: int, j: int):
    """Replace the operator pair (N_i, N_j) by the single sum N_i + N_j."""
    ops = list(h.operators)
    if i == j or not (0 <= i < len(ops)) or not (0 <= j < len(ops)):
        raise ValueError("bad operator indices")
    lo, hi = min(i, j), max(i, j)
    merged = ops[lo] + ops[hi]
    ops = ops[:lo] + [merged] + ops[lo + 1 : hi] + ops[hi + 1 :]
    if isinstance(h, OrbitDatum):
        return OrbitDatum(h.weight, h.pairing, tuple(ops), h.hodge_filtration, h.twist_tag)
    return HodgeDatum(h.weight_filtration, h.hodge_filtration, tuple(ops), h.graded_pairings, h.twist_tag)
