"""Block upper triangular structure and the classification pipeline.

A block shape is an ordered composition (l_1, ..., l_k) of n.  Against a
shape, a subalgebra of block upper triangular matrices is sorted into one of
two buckets: either it is the full block upper triangular algebra of that
shape (and then it does not satisfy the standard identity of degree 2n-2,
witnessed explicitly), or it falls into one of three structural cases that
each force the identity to hold at degree 2n-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import (
    CharacteristicError,
    ContractViolationError,
    DimensionError,
    NotBlockTriangularError,
    NotSimpleBlocksError,
    UnsupportedRingError,
)
from .matrices import Echelon, Matrix, matrix_unit
from .rings import Ring
from .standardpoly import eval_standard_dp
from .subalgebra import SubalgebraBasis, is_semisimple, span_basis


@dataclass(frozen=True)
class BlockShape:
    """An ordered composition of n giving block sizes along the diagonal."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise DimensionError("a block shape needs at least one part")
        if any(p < 1 for p in parts):
            raise DimensionError(f"block sizes must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def num_blocks(self) -> int:
        return len(self.parts)

    def offsets(self) -> tuple:
        """Prefix sums: block i (1-based) covers rows offsets[i-1]..offsets[i]."""
        out = [0]
        for p in self.parts:
            out.append(out[-1] + p)
        return tuple(out)

    def row_range(self, i: int) -> tuple:
        """0-based half-open row window of block i (1-based)."""
        if not 1 <= i <= self.num_blocks:
            raise DimensionError(f"block index {i} out of range 1..{self.num_blocks}")
        off = self.offsets()
        return off[i - 1], off[i]

    def block_of(self, r: int) -> int:
        """1-based block containing 0-based row index r."""
        if not 0 <= r < self.n:
            raise DimensionError(f"row {r} out of range for n={self.n}")
        off = self.offsets()
        for i in range(1, self.num_blocks + 1):
            if r < off[i]:
                return i
        raise AssertionError

    def triangular_dim(self) -> int:
        """Dimension of the full block upper triangular algebra."""
        p = self.parts
        return sum(p[i] * p[j] for i in range(len(p)) for j in range(i, len(p)))

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class NonvanishingWitness:
    """A tuple of algebra elements where a standard polynomial is nonzero."""

    degree: int
    mats: tuple
    value: Matrix


@dataclass(frozen=True)
class FullBlockTriangular:
    shape: BlockShape
    witness: NonvanishingWitness

    def describe(self) -> str:
        return f"full-block-triangular{self.shape}"


@dataclass(frozen=True)
class ProperSimpleBlock:
    """Some diagonal block projection is a proper subalgebra of its M_l."""

    block_index: int  # 1-based

    def describe(self) -> str:
        return f"proper-simple-block[{self.block_index}]"


@dataclass(frozen=True)
class Repetition:
    """Two diagonal blocks carry isomorphic actions (lex-first such pair)."""

    first: int
    second: int  # 1-based, first < second

    def describe(self) -> str:
        return f"repetition[{self.first},{self.second}]"


@dataclass(frozen=True)
class NotUniserial:
    """The coupling between adjacent blocks i, i+1 is semisimple (splits)."""

    coupling_index: int  # 1-based i

    def describe(self) -> str:
        return f"not-uniserial[{self.coupling_index}]"


@dataclass(frozen=True)
class SatisfiesLowDegree:
    """The algebra satisfies the standard identity of degree 2n-2."""

    reason: Union[ProperSimpleBlock, Repetition, NotUniserial]

    def describe(self) -> str:
        return f"satisfies-low-degree({self.reason.describe()})"


@dataclass(frozen=True)
class NotCanonical:
    """A basis element breaks block upper triangularity for the shape."""

    basis_index: int  # 1-based index into the canonical basis
    row: int          # 1-based entry position
    col: int

    def describe(self) -> str:
        return f"not-canonical(basis {self.basis_index} entry ({self.row},{self.col}))"


ClassificationVerdict = Union[FullBlockTriangular, SatisfiesLowDegree, NotCanonical]


def first_below_block_violation(x: Matrix, shape: BlockShape) -> Optional[tuple]:
    """First (row, col), 1-based, strictly below the block diagonal with a
    nonzero entry; None if x is block upper triangular."""
    if not x.is_square or x.rows != shape.n:
        raise DimensionError(f"matrix is {x.shape_str()}, shape wants {shape.n}x{shape.n}")
    zero = x.ring.zero
    off = shape.offsets()
    block_row = []
    for i, p in enumerate(shape.parts, start=1):
        block_row.extend([i] * p)
    n = shape.n
    for r in range(n):
        upto = off[block_row[r] - 1]  # columns strictly left of r's block
        base = r * n
        for c in range(upto):
            if x.data[base + c] != zero:
                return (r + 1, c + 1)
    return None


def is_block_triangular(x: Matrix, shape: BlockShape) -> bool:
    return first_below_block_violation(x, shape) is None


def diag_block(x: Matrix, shape: BlockShape, i: int) -> Matrix:
    start, stop = shape.row_range(i)
    return x.submatrix(start, stop, start, stop)


def window_block(x: Matrix, shape: BlockShape, i: int, j: int) -> Matrix:
    """The square window spanning blocks i..j (rows and columns)."""
    if not 1 <= i <= j <= shape.num_blocks:
        raise DimensionError(f"block window ({i},{j}) out of range")
    start = shape.row_range(i)[0]
    stop = shape.row_range(j)[1]
    return x.submatrix(start, stop, start, stop)


def project(a: SubalgebraBasis, shape: BlockShape, i: int, j: int) -> SubalgebraBasis:
    """Corner projection onto the window spanning blocks i..j.

    For block upper triangular matrices, cutting this window out is an
    algebra homomorphism, so the image of a closed span is closed.  Raises
    if some basis element is not block upper triangular for the shape.
    """
    if shape.n != a.n:
        raise DimensionError(f"shape is for n={shape.n}, algebra has n={a.n}")
    for idx, b in enumerate(a.mats, start=1):
        viol = first_below_block_violation(b, shape)
        if viol is not None:
            raise NotBlockTriangularError(
                f"basis element {idx} has a nonzero entry at {viol} below the "
                f"block diagonal of {shape}"
            )
    cut = [window_block(b, shape, i, j) for b in a.mats]
    sub_n = shape.row_range(j)[1] - shape.row_range(i)[0]
    return span_basis(a.ring, sub_n, cut, label=f"{a.label}|{i}..{j}")


def ur_corner(x: Matrix, l: int, m: int) -> Matrix:
    """Upper-right l x l corner of a (2l+m) x (2l+m) matrix."""
    n = 2 * l + m
    if not x.is_square or x.rows != n:
        raise DimensionError(f"matrix is {x.shape_str()}, expected {n}x{n}")
    return x.submatrix(0, l, l + m, n)


def intertwiner_space(a: SubalgebraBasis, shape: BlockShape, i: int, j: int) -> list:
    """Solutions T of T * pi_i(x) = pi_j(x) * T for all x in the algebra.

    Blocks i and j must have equal size l; T ranges over l x l matrices and
    the returned list is a canonical basis of the solution space.  A nonzero
    solution exists exactly when the two diagonal block actions are
    isomorphic, provided both diagonal projections are the full M_l.
    """
    if not a.ring.is_field:
        raise UnsupportedRingError(f"intertwiner computation needs a field, not {a.ring.name}")
    if i == j:
        raise DimensionError("need two distinct blocks")
    li = shape.parts[i - 1] if 1 <= i <= shape.num_blocks else None
    lj = shape.parts[j - 1] if 1 <= j <= shape.num_blocks else None
    if li is None or lj is None:
        raise DimensionError(f"block pair ({i},{j}) out of range for {shape}")
    if li != lj:
        raise DimensionError(f"blocks {i} and {j} have different sizes {li} != {lj}")
    l = li
    ring = a.ring
    zero = ring.zero
    ech = Echelon(ring, l * l)
    for b in a.mats:
        A = diag_block(b, shape, i)
        B = diag_block(b, shape, j)
        for prow in range(l):
            for q in range(l):
                row = [zero] * (l * l)
                for v in range(l):
                    av = A[v, q]
                    if av != zero:
                        row[prow * l + v] = ring.add(row[prow * l + v], av)
                for u in range(l):
                    bu = B[prow, u]
                    if bu != zero:
                        row[u * l + q] = ring.sub(row[u * l + q], bu)
                ech.insert(row)
        if ech.rank == l * l:
            break
    return [Matrix._new(ring, l, l, list(vec)) for vec in ech.nullspace_basis()]


def detect_repetition(a: SubalgebraBasis, shape: BlockShape) -> Optional[tuple]:
    """Lex-first pair (i, j), i < j, of equal-size blocks with a nonzero
    intertwiner; None when no pair has one.

    Precondition: every diagonal projection is the full matrix algebra of
    its block (checked; NotSimpleBlocksError otherwise).  Under that
    precondition a nonzero intertwiner is automatically invertible, so a
    hit means the two block actions are isomorphic.
    """
    for k in range(1, shape.num_blocks + 1):
        lk = shape.parts[k - 1]
        if project(a, shape, k, k).dim != lk * lk:
            raise NotSimpleBlocksError(
                f"diagonal projection {k} is proper; repetition detection "
                f"needs full diagonal blocks"
            )
    for i in range(1, shape.num_blocks + 1):
        for j in range(i + 1, shape.num_blocks + 1):
            if shape.parts[i - 1] != shape.parts[j - 1]:
                continue
            if intertwiner_space(a, shape, i, j):
                return (i, j)
    return None


def is_uniserial(a: SubalgebraBasis, shape: BlockShape) -> bool:
    """False when some adjacent coupling window projects to a semisimple
    algebra (the chain of blocks splits there), True otherwise.

    Needs at least two blocks; with none adjacent the question is empty.
    """
    if shape.num_blocks < 2:
        raise DimensionError(
            f"uniseriality needs at least 2 blocks, got shape {shape}"
        )
    return _first_split_coupling(a, shape) is None


def _first_split_coupling(a: SubalgebraBasis, shape: BlockShape) -> Optional[int]:
    for i in range(1, shape.num_blocks):
        if is_semisimple(project(a, shape, i, i + 1)):
            return i
    return None


def staircase_units(ring: Ring, n: int) -> list:
    """The staircase sequence e_{1,1}, e_{1,2}, e_{2,2}, ..., e_{n,n}.

    2n-1 matrix units walking down the first superdiagonal; the standard
    polynomial of degree 2n-1 evaluates on it to e_{1,n}.
    """
    if n < 1:
        raise DimensionError(f"need n >= 1, got {n}")
    units = []
    for i in range(1, n + 1):
        units.append(matrix_unit(ring, n, i, i))
        if i < n:
            units.append(matrix_unit(ring, n, i, i + 1))
    return units


def tail_staircase_units(ring: Ring, n: int) -> list:
    """The staircase with its first unit dropped: 2n-2 matrices starting at
    e_{1,2}.  The standard polynomial of degree 2n-2 evaluates on it to
    e_{1,n}, which exhibits failure of that identity inside the upper
    triangular matrices (hence inside any full block triangular algebra)."""
    return staircase_units(ring, n)[1:]


def _nonvanishing_witness(a: SubalgebraBasis) -> NonvanishingWitness:
    ring, n = a.ring, a.n
    if n == 1:
        mats = (matrix_unit(ring, 1, 1, 1),)
        return NonvanishingWitness(1, mats, mats[0])
    mats = tuple(tail_staircase_units(ring, n))
    for u in mats:
        if not a.contains(u):
            raise ContractViolationError(
                "staircase witness element escapes the algebra; the span "
                "is not the full block triangular algebra it claimed to be"
            )
    value = eval_standard_dp(mats)
    if value.is_zero():
        raise ContractViolationError("staircase witness evaluated to zero")
    return NonvanishingWitness(2 * n - 2, mats, value)


def classify(a: SubalgebraBasis, shape: BlockShape) -> ClassificationVerdict:
    """Sort a subalgebra presented against a block shape.

    Pipeline, in order: (1) any basis element below-block nonzero entry
    gives NotCanonical; (2) a proper diagonal block projection, (3) a
    repeated block action, or (4) a semisimple adjacent coupling each give
    SatisfiesLowDegree with that reason; (5) otherwise the span must be the
    whole block upper triangular algebra of the shape, returned with an
    explicit tuple where the degree 2n-2 standard polynomial is nonzero.
    Step (5) cross-checks dimensions and raises ContractViolationError on
    any mismatch, since the first four steps exhaust the structural ways a
    proper subalgebra can sit inside the shape.

    Reading a SatisfiesLowDegree verdict as "s_(2n-2) vanishes on the
    algebra" is a theorem when every diagonal projection that step (2)
    inspects is either the full block or a (nonzero) simple algebra, which
    holds in particular for unital algebras presented against a shape
    refining their composition series.  A presentation with an identically
    ZERO diagonal projection still classifies as ProperSimpleBlock per the
    pipeline, but such non-unital algebras can escape the low-degree
    conclusion: span{e11, e12, e13, e22, e23} in the 3x3 upper triangular
    matrices has zero (3,3) projection and s_4(e11, e12, e22, e23) = e13.
    Callers wanting the theorem's guarantee should adjoin the identity
    before closing (see close_generators / random_triangular_closures).
    """
    ring = a.ring
    if not ring.is_field:
        raise UnsupportedRingError(f"classification needs a field, not {ring.name}")
    if ring.characteristic != 0 and ring.characteristic <= a.n:
        raise CharacteristicError(
            f"classification needs characteristic 0 or > {a.n}, got {ring.characteristic}"
        )
    if shape.n != a.n:
        raise DimensionError(f"shape {shape} is for n={shape.n}, algebra has n={a.n}")
    for idx, b in enumerate(a.mats, start=1):
        viol = first_below_block_violation(b, shape)
        if viol is not None:
            return NotCanonical(idx, viol[0], viol[1])
    for i in range(1, shape.num_blocks + 1):
        li = shape.parts[i - 1]
        if project(a, shape, i, i).dim < li * li:
            return SatisfiesLowDegree(ProperSimpleBlock(i))
    pair = detect_repetition(a, shape)
    if pair is not None:
        return SatisfiesLowDegree(Repetition(pair[0], pair[1]))
    split = _first_split_coupling(a, shape)
    if split is not None:
        return SatisfiesLowDegree(NotUniserial(split))
    # no structural obstruction: the span must be everything
    for i in range(1, shape.num_blocks):
        li, lj = shape.parts[i - 1], shape.parts[i]
        want = li * li + lj * lj + li * lj
        got = project(a, shape, i, i + 1).dim
        if got != want:
            raise ContractViolationError(
                f"coupling {i},{i + 1} has dimension {got}, expected full {want}; "
                f"input span is inconsistent with the pipeline invariants"
            )
    if a.dim != shape.triangular_dim():
        raise ContractViolationError(
            f"algebra has dimension {a.dim} but no structural obstruction; "
            f"full block triangular algebra of shape {shape} has dimension "
            f"{shape.triangular_dim()}"
        )
    return FullBlockTriangular(shape, _nonvanishing_witness(a))
