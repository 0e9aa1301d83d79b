"""Monodromy weight filtrations, absolute and relative to a weight filtration.

The absolute filtration W(N) of a nilpotent N is computed by the classical
peel-off recursion (top layer from ker/im of the highest nonzero power, then
recurse on the subquotient) and verified against its two defining axioms
before being returned.

The relative filtration M(N, W) is computed by peeling the bottom weight
layer A = W_a: writing V as an extension of B = V/A, a filtered lift of the
recursively computed M on B is a single linear unknown phi: B -> A, and the
compatibility of N with the candidate filtration is a linear constraint
system in phi.  The system is solvable iff the relative filtration exists;
any solution produces it, and the output is verified against the defining
axioms regardless.
"""

from __future__ import annotations

from dataclasses import dataclass

from .filtration import Filtration
from .linalg import (
    Matrix,
    Subspace,
    image_of_subspace,
    intersect,
    kernel,
    quotient_projection,
    quotient_section,
    subspace_sum,
)
from .scalars import ONE, ZERO


@dataclass(frozen=True)
class MonodromyFiltration:
    filtration: Filtration
    center: int


# ---------------------------------------------------------------------------
# Axiom checks


def _induced_map_on_graded(n: Matrix, filt: Filtration, k_from: int, k_to: int, power: int):
    """The map N^power : gr_k_from -> gr_k_to of filt, as a matrix, or None
    if N^power does not send the filtration step correctly."""
    top_from = filt.at(k_from)
    low_from = filt.at(k_from - 1)
    top_to = filt.at(k_to)
    low_to = filt.at(k_to - 1)
    np = n.power(power)
    if not top_to.contains_subspace(image_of_subspace(np, top_from)):
        return None
    proj_to = quotient_projection(low_to)
    gr_to = image_of_subspace(proj_to, top_to)
    pivots = gr_to.pivots()
    sel = Matrix.from_rows(
        [[ONE if c == p else ZERO for c in range(proj_to.rows)] for p in pivots], proj_to.rows
    )
    proj_low_from = quotient_projection(low_from)
    gr_from = image_of_subspace(proj_low_from, top_from)
    sec_from = quotient_section(low_from) @ gr_from.basis.transpose()
    return (sel @ proj_to) @ np @ sec_from


def satisfies_monodromy_axioms(n: Matrix, filt: Filtration, center: int = 0) -> bool:
    """Direct check of the two axioms: N shifts the filtration by -2 and
    N^j induces isomorphisms gr_{c+j} -> gr_{c-j}."""
    for k, s in filt.steps:
        if not filt.at(k - 2).contains_subspace(image_of_subspace(n, s)):
            return False
    lo, hi = filt.min_index(), filt.max_index()
    span = max(hi - center, center - lo, 0)
    for j in range(1, span + 1):
        g_hi = filt.graded_dim(center + j)
        g_lo = filt.graded_dim(center - j)
        if g_hi != g_lo:
            return False
        if g_hi == 0:
            continue
        m = _induced_map_on_graded(n, filt, center + j, center - j, j)
        if m is None or m.rows != m.cols or m.det().is_zero():
            return False
    # Graded dimensions outside the symmetric range must vanish.
    for k in range(lo, hi + 1):
        if abs(k - center) > span and filt.graded_dim(k) != 0:
            return False
    return True


def satisfies_relative_axioms(n: Matrix, w: Filtration, m: Filtration) -> bool:
    """N M_k inside M_{k-2}, and on every gr^W_w the induced filtration of M
    satisfies the centered monodromy axioms for the induced operator."""
    for k, s in m.steps:
        if not m.at(k - 2).contains_subspace(image_of_subspace(n, s)):
            return False
    for wt in w.jumps():
        ww = w.at(wt)
        wlow = w.at(wt - 1)
        proj = quotient_projection(wlow)
        gr = image_of_subspace(proj, ww)
        g = gr.dim
        if g == 0:
            continue
        pivots = gr.pivots()
        sel = Matrix.from_rows(
            [[ONE if c == p else ZERO for c in range(proj.rows)] for p in pivots], proj.rows
        )
        to_gr = sel @ proj
        sec = quotient_section(wlow) @ gr.basis.transpose()
        n_gr = to_gr @ n @ sec
        pairs = []
        for k in range(m.min_index() - 1, m.max_index() + 1):
            val = image_of_subspace(to_gr, intersect(m.at(k), ww))
            pairs.append((k, val))
        try:
            induced = Filtration.make(g, True, pairs)
        except ValueError:
            return False
        if not satisfies_monodromy_axioms(n_gr, induced, center=wt):
            return False
    return True


# ---------------------------------------------------------------------------
# Absolute monodromy filtration


def _weight_monodromy_raw(n: Matrix) -> list:
    """Jump pairs of W(N) centered at 0, by the peel-off recursion."""
    dim = n.rows
    if dim == 0:
        return []
    d = n.nilpotency_degree()
    if d <= 1:
        return [(0, Subspace.full(dim))]
    k = d - 1  # highest index with N^k != 0
    nk = n.power(k)
    ker_top = kernel(nk)
    im_bot = image_of_subspace(nk, Subspace.full(dim))
    # Recurse on ker N^k / im N^k with the induced operator.
    proj = quotient_projection(im_bot)
    sub = image_of_subspace(proj, ker_top)
    pivots = sub.pivots()
    sel = Matrix.from_rows(
        [[ONE if c == p else ZERO for c in range(proj.rows)] for p in pivots], proj.rows
    )
    to_q = sel @ proj
    sec = quotient_section(im_bot) @ sub.basis.transpose()
    n_q = to_q @ n @ sec
    inner = _weight_monodromy_raw(n_q)
    pairs = [(k, Subspace.full(dim)), (k - 1, ker_top), (-k, im_bot)]
    for j, s in inner:
        if j >= k - 1 or j < -k:
            continue
        lifted = subspace_sum(im_bot, preimage_in(ker_top, to_q, s))
        pairs.append((j, lifted))
    return pairs


def preimage_in(domain: Subspace, mp: Matrix, target: Subspace) -> Subspace:
    """{v in domain : mp v in target}."""
    from .linalg import preimage

    return intersect(domain, preimage(mp, target))


def weight_monodromy(n: Matrix) -> MonodromyFiltration:
    """The unique increasing filtration centered at 0 with N W_k within
    W_{k-2} and N^k : gr_k ~ gr_{-k}; verified against both axioms."""
    if n.rows != n.cols:
        raise ValueError("operator must be square")
    if not n.is_nilpotent():
        raise ValueError("operator is not nilpotent")
    pairs = _weight_monodromy_raw(n)
    filt = Filtration.make(n.rows, True, pairs)
    if not satisfies_monodromy_axioms(n, filt, center=0):
        raise AssertionError("peel-off produced a filtration violating the axioms")
    return MonodromyFiltration(filt, 0)


def shift(m: MonodromyFiltration, w: int) -> Filtration:
    """W(N)[-w]: the value at k of the result is the value at k - w."""
    return m.filtration.shift(w)


# ---------------------------------------------------------------------------
# Relative monodromy filtration


def _relative_pairs(n: Matrix, w: Filtration):
    """Jump pairs of M(N, W) or None when it does not exist."""
    dim = n.rows
    if dim == 0:
        return []
    jumps = w.jumps()
    a = jumps[0]
    if len(jumps) == 1:
        return [(k + a, s) for k, s in _weight_monodromy_raw(n)]
    # Peel the bottom layer A = W_a.
    asub = w.at(a)
    pivots = asub.pivots()
    incl_a = asub.basis.transpose()
    restrict_a = Matrix.from_rows(
        [[ONE if c == p else ZERO for c in range(dim)] for p in pivots], dim
    )
    n_a = restrict_a @ n @ incl_a
    m_a_pairs = [(k + a, s) for k, s in _weight_monodromy_raw(n_a)]
    proj = quotient_projection(asub)
    sec = quotient_section(asub)
    n_b = proj @ n @ sec
    w_b = Filtration.make(proj.rows, True, [(k, image_of_subspace(proj, s)) for k, s in w.steps if k > a])
    m_b_pairs = _relative_pairs(n_b, w_b)
    if m_b_pairs is None:
        return None
    m_a = Filtration.make(asub.dim, True, m_a_pairs) if asub.dim else None
    m_b = Filtration.make(proj.rows, True, m_b_pairs)
    # rho measures the failure of the coordinate section to commute with N.
    rho = n @ sec - sec @ n_b  # lands in A
    # Solve for phi: B -> A with N_A phi - phi N_B + rho mapping M^B_k into
    # M^A_{k-2} for every k.  Unknowns are the entries of phi.
    nb_dim, na_dim = proj.rows, asub.dim
    unknowns = na_dim * nb_dim
    rows = []
    rhs = []
    lo = min([k for k, _ in m_b_pairs], default=0)
    hi = max([k for k, _ in m_b_pairs], default=0)
    for k in range(lo, hi + 1):
        mbk = m_b.at(k)
        if mbk.dim == 0:
            continue
        mak2 = m_a.at(k - 2) if m_a else Subspace.zero(0)
        # Constraints live in A-coordinates modulo M^A_{k-2}.
        red = quotient_projection(mak2)
        for b_vec in mbk.basis.entries:
            # rho(b) + N_A phi(b) - phi(N_B b) must reduce to zero.
            rho_b = restrict_a.apply(rho.apply(b_vec))
            nb_b = n_b.apply(b_vec)
            const = red.apply(rho_b)
            # coefficient of phi[r][c]: N_A e_r * b[c] - e_r * (N_B b)[c]
            coeff_rows = [[ZERO] * unknowns for _ in range(red.rows)]
            for r in range(na_dim):
                e_r = [ONE if t == r else ZERO for t in range(na_dim)]
                na_er = red.apply(n_a.apply(e_r))
                red_er = red.apply(e_r)
                for c in range(nb_dim):
                    idx = r * nb_dim + c
                    for t in range(red.rows):
                        coeff_rows[t][idx] = (
                            coeff_rows[t][idx] + na_er[t] * b_vec[c] - red_er[t] * nb_b[c]
                        )
            for t in range(red.rows):
                rows.append(coeff_rows[t])
                rhs.append(-const[t])
    if rows:
        from .linalg import solve

        sol = solve(Matrix.from_rows(rows, unknowns), rhs)
        if sol is None:
            return None
        phi = Matrix.from_rows(
            [[sol[r * nb_dim + c] for c in range(nb_dim)] for r in range(na_dim)], nb_dim
        )
    else:
        phi = Matrix.zeros(na_dim, nb_dim)
    lift = sec + incl_a @ phi  # the filtered section t = s + phi
    pairs = []
    all_k = sorted(set([k for k, _ in m_a_pairs] + [k for k, _ in m_b_pairs]))
    for k in all_k:
        part_a = image_of_subspace(incl_a, m_a.at(k)) if m_a else Subspace.zero(dim)
        part_b = image_of_subspace(lift, m_b.at(k))
        pairs.append((k, subspace_sum(part_a, part_b)))
    return pairs


def relative_monodromy(n: Matrix, w: Filtration):
    """Deligne's relative monodromy filtration M(N, W), or None.

    Existence can fail; the returned filtration is always verified against
    the two defining properties, and a verification failure is reported as
    non-existence.
    """
    if n.rows != n.cols or n.rows != w.ambient_dim:
        raise ValueError("operator and filtration dimensions differ")
    if not n.is_nilpotent():
        raise ValueError("operator is not nilpotent")
    for _, s in w.steps:
        if not s.contains_subspace(image_of_subspace(n, s)):
            raise ValueError("operator does not preserve the weight filtration")
    pairs = _relative_pairs(n, w)
    if pairs is None:
        return None
    filt = Filtration.make(w.ambient_dim, True, pairs)
    if not satisfies_relative_axioms(n, w, filt):
        return None
    return MonodromyFiltration(filt, 0)


# ---------------------------------------------------------------------------
# Admissibility-flavoured reports


@dataclass(frozen=True)
class AdmissibilityReport:
    partial_sums_exist: bool
    sampled_cone_constant: bool
    details: tuple

    @property
    def admissible(self) -> bool:
        return self.partial_sums_exist and self.sampled_cone_constant


def admissibility_report(w: Filtration, operators, samples=((1,), (2, 3))) -> AdmissibilityReport:
    """Partial-sum relative filtrations exist, plus a spot check that the
    relative filtration is constant across sampled positive combinations.

    The two clauses are reported separately: partial sums follow the order
    given, the cone samples are positive rational coefficient vectors.
    """
    details = []
    ops = list(operators)
    partial_ok = True
    ref = None
    running = None
    for j, op in enumerate(ops):
        running = op if running is None else running + op
        m = relative_monodromy(running, w)
        details.append((f"partial_sum_{j + 1}", m is not None))
        if m is None:
            partial_ok = False
        if j == len(ops) - 1 and m is not None:
            ref = m.filtration
    cone_ok = True
    if ops and partial_ok:
        if ref is None:
            cone_ok = False
        else:
            from fractions import Fraction

            for sample in samples:
                coeffs = list(sample) * ((len(ops) + len(sample) - 1) // len(sample))
                total = Matrix.zeros(w.ambient_dim, w.ambient_dim)
                for c, op in zip(coeffs, ops):
                    total = total + op.scale(Fraction(c))
                m = relative_monodromy(total, w)
                same = m is not None and m.filtration == ref
                details.append((f"cone_sample_{sample}", same))
                if not same:
                    cone_ok = False
    return AdmissibilityReport(partial_ok, cone_ok, tuple(details))


@dataclass(frozen=True)
class OperatorSumFacts:
    """Booleans for the iterated-relative-filtration facts used when two
    log directions are merged into one."""

    first_exists: bool
    first_is_mixed_orbit: bool
    iterated_matches_sum: bool
    sum_is_mixed_orbit: bool
    details: tuple

    @property
    def all_pass(self) -> bool:
        return (
            self.first_exists
            and self.first_is_mixed_orbit
            and self.iterated_matches_sum
            and self.sum_is_mixed_orbit
        )
