"""Finite filtrations of Q(i)^n by nested subspaces.

An increasing filtration W stores the indices where its value jumps up; below
the first jump it is zero and it must reach the full space.  A decreasing
filtration F stores the indices where its value drops; below the first stored
index it is the full space and it must reach zero.  Both evaluations are
constant between stored indices, so a filtration is a finite object with a
decidable equality given by the canonical echelon bases of its steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, Subspace, image_of_subspace, subspace_sum


@dataclass(frozen=True)
class Filtration:
    ambient_dim: int
    increasing: bool
    steps: tuple  # ((index, Subspace), ...) sorted, duplicates removed

    @staticmethod
    def make(ambient_dim: int, increasing: bool, pairs) -> "Filtration":
        pairs = sorted(pairs, key=lambda kv: kv[0])
        norm = []
        prev = Subspace.zero(ambient_dim) if increasing else Subspace.full(ambient_dim)
        for k, s in pairs:
            if s.ambient != ambient_dim:
                raise ValueError("filtration step in wrong ambient space")
            if s == prev:
                continue
            norm.append((k, s))
            prev = s
        filt = Filtration(ambient_dim, increasing, tuple(norm))
        filt._validate()
        return filt

    def _validate(self):
        default = Subspace.zero(self.ambient_dim) if self.increasing else Subspace.full(self.ambient_dim)
        prev = default
        for _, s in self.steps:
            if self.increasing:
                if not (s.contains_subspace(prev) and s.dim > prev.dim):
                    raise ValueError("increasing filtration is not strictly nested")
            else:
                if not (prev.contains_subspace(s) and s.dim < prev.dim):
                    raise ValueError("decreasing filtration is not strictly nested")
            prev = s
        top_dim = prev.dim
        want = self.ambient_dim if self.increasing else 0
        if top_dim != want:
            kind = "full space" if self.increasing else "zero"
            raise ValueError(f"filtration never reaches the {kind}")

    # -- evaluation ----------------------------------------------------

    def at(self, k: int) -> Subspace:
        value = Subspace.zero(self.ambient_dim) if self.increasing else Subspace.full(self.ambient_dim)
        for idx, s in self.steps:
            if idx <= k:
                value = s
            else:
                break
        return value

    def jumps(self) -> tuple:
        return tuple(k for k, _ in self.steps)

    def min_index(self) -> int:
        return self.steps[0][0] if self.steps else 0

    def max_index(self) -> int:
        return self.steps[-1][0] if self.steps else 0

    def graded_dim(self, k: int) -> int:
        if self.increasing:
            return self.at(k).dim - self.at(k - 1).dim
        return self.at(k).dim - self.at(k + 1).dim

    # -- transforms ----------------------------------------------------

    def shift(self, d: int) -> "Filtration":
        """Index shift: value at k of the result is the value at k - d."""
        return Filtration(self.ambient_dim, self.increasing, tuple((k + d, s) for k, s in self.steps))

    def map_image(self, m: Matrix) -> "Filtration":
        """Image filtration under a linear map (quotients, isomorphisms)."""
        pairs = [(k, image_of_subspace(m, s)) for k, s in self.steps]
        return Filtration.make(m.rows, self.increasing, pairs)

    def is_rational(self) -> bool:
        return all(s.is_rational() for _, s in self.steps)

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.increasing == other.increasing
            and self.steps == other.steps
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.increasing, self.steps))

    def __repr__(self):
        kind = "W" if self.increasing else "F"
        body = ", ".join(f"{k}:{s.dim}" for k, s in self.steps)
        return f"{kind}[{body}] on dim {self.ambient_dim}"


def trivial_weight_filtration(ambient_dim: int, weight: int) -> Filtration:
    """Increasing filtration concentrated at a single weight."""
    return Filtration.make(ambient_dim, True, [(weight, Subspace.full(ambient_dim))])


def filtration_sum(a: Filtration, b: Filtration, offsets=(0, 0)) -> Filtration:
    """Pointwise sum of two filtrations in the same ambient space."""
    if a.ambient_dim != b.ambient_dim or a.increasing != b.increasing:
        raise ValueError("incompatible filtrations")
    ks = sorted(set(k + offsets[0] for k in a.jumps()) | set(k + offsets[1] for k in b.jumps()))
    pairs = [(k, subspace_sum(a.at(k - offsets[0]), b.at(k - offsets[1]))) for k in ks]
    return Filtration.make(a.ambient_dim, a.increasing, pairs)
