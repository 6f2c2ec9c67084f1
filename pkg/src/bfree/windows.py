"""Desk-scale views of the free/covered split: boxes of indicator bits,
zero-window search and construction, syndetic periods, and density profiles.

The ambient Folner sequence is fixed to centered boxes {-n, ..., n}^m.  All
counts are integers and all ratios are exact fractions.
"""

import base64
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    NotAZeroWindowError,
    NotCoprimeError,
    NotEnoughIdealsError,
    NotRectangularError,
    TooLargeError,
)
from .families import FamilySpec
from .lattices import Lattice, Point, as_point, intersect_all
from .numtheory import crt_integers

DEFAULT_CELL_LIMIT = 10**8


@dataclass(frozen=True)
class Box:
    """Axis-aligned integer box [lo_1, hi_1] x ... x [lo_m, hi_m]."""

    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise ValueError("lo and hi must be nonempty vectors of equal length")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box is empty")

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def sides(self) -> Point:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @property
    def volume(self) -> int:
        out = 1
        for s in self.sides:
            out *= s
        return out

    def contains(self, p) -> bool:
        return all(a <= x <= b for x, a, b in zip(p, self.lo, self.hi, strict=True))

    def points(self):
        """Lexicographic iteration; also the row-major bit order of windows."""
        return product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def index_of(self, p) -> int:
        idx = 0
        for x, a, s in zip(p, self.lo, self.sides, strict=True):
            idx = idx * s + (x - a)
        return idx

    def shifted(self, g) -> "Box":
        g = as_point(g)
        return Box(
            tuple(a + x for a, x in zip(self.lo, g)),
            tuple(b + x for b, x in zip(self.hi, g)),
        )

    @classmethod
    def centered(cls, n: int, dim: int) -> "Box":
        return cls((-n,) * dim, (n,) * dim)

    @classmethod
    def parse(cls, text: str) -> "Box":
        """Parse "lo:hi,lo:hi,..." into a box."""
        lo, hi = [], []
        for part in text.split(","):
            a, _, b = part.partition(":")
            lo.append(int(a))
            hi.append(int(b))
        return cls(tuple(lo), tuple(hi))

    def format(self) -> str:
        return ",".join(f"{a}:{b}" for a, b in zip(self.lo, self.hi))


@dataclass(frozen=True)
class Shape:
    """A finite pattern of offsets; order is meaningful for CRT pairing."""

    offsets: tuple[Point, ...]

    def __post_init__(self):
        if not self.offsets:
            raise ValueError("shape must be non-empty")
        if len(set(self.offsets)) != len(self.offsets):
            raise ValueError("shape offsets must be distinct")
        m = len(self.offsets[0])
        if any(len(f) != m for f in self.offsets):
            raise ValueError("shape offsets of mixed dimension")

    @property
    def dim(self) -> int:
        return len(self.offsets[0])

    def __len__(self):
        return len(self.offsets)

    @classmethod
    def from_offsets(cls, offsets) -> "Shape":
        seen = []
        for f in offsets:
            f = as_point(f)
            if f not in seen:
                seen.append(f)
        return cls(tuple(seen))

    @classmethod
    def from_box(cls, box: Box) -> "Shape":
        return cls(tuple(box.points()))

    @classmethod
    def segment(cls, k: int, dim: int, axis: int = 0) -> "Shape":
        """The k+1 cells 0, e_axis, 2*e_axis, ..., k*e_axis."""
        offs = []
        for i in range(k + 1):
            v = [0] * dim
            v[axis] = i
            offs.append(tuple(v))
        return cls(tuple(offs))

    @classmethod
    def parse(cls, text: str, dim: int) -> "Shape":
        """Parse "a:bxc:d" rectangle syntax (one range per dimension)."""
        ranges = []
        for part in text.split("x"):
            a, _, b = part.partition(":")
            ranges.append((int(a), int(b)))
        if len(ranges) != dim:
            raise ValueError(f"shape has {len(ranges)} ranges, expected {dim}")
        return cls.from_box(Box(tuple(a for a, _ in ranges), tuple(b for _, b in ranges)))

    def bounds(self) -> tuple[Point, Point]:
        m = self.dim
        lo = tuple(min(f[i] for f in self.offsets) for i in range(m))
        hi = tuple(max(f[i] for f in self.offsets) for i in range(m))
        return lo, hi


@dataclass(frozen=True)
class FreeWindow:
    """Indicator bits of the free set over a box, packed row-major LSB-first."""

    box: Box
    bits: bytes

    def __post_init__(self):
        if len(self.bits) != (self.box.volume + 7) // 8:
            raise ValueError("bit payload does not match the box volume")

    def get(self, p) -> int:
        i = self.box.index_of(p)
        return (self.bits[i >> 3] >> (i & 7)) & 1

    def ones(self) -> int:
        total = sum(bin(b).count("1") for b in self.bits)
        return total

    def to_json_dict(self) -> dict:
        return {
            "box": {"lo": list(self.box.lo), "hi": list(self.box.hi)},
            "bits": base64.b64encode(self.bits).decode("ascii"),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FreeWindow":
        box = Box(tuple(data["box"]["lo"]), tuple(data["box"]["hi"]))
        return cls(box, base64.b64decode(data["bits"]))

    def to_csv(self) -> str:
        """Rows of 0/1 values; for 2-d windows row 0 is the highest y."""
        return "\n".join(",".join(row) for row in self._grid_rows()) + "\n"

    def to_pgm(self) -> str:
        """Plain PGM (P2) with maxval 1; row 0 is the highest y."""
        rows = self._grid_rows()
        width = len(rows[0])
        height = len(rows)
        body = "\n".join(" ".join(row) for row in rows)
        return f"P2\n{width} {height}\n1\n{body}\n"

    def _grid_rows(self) -> list[list[str]]:
        if self.box.dim == 1:
            return [[str(self.get((x,))) for x in range(self.box.lo[0], self.box.hi[0] + 1)]]
        if self.box.dim == 2:
            (xlo, ylo), (xhi, yhi) = self.box.lo, self.box.hi
            return [
                [str(self.get((x, y))) for x in range(xlo, xhi + 1)]
                for y in range(yhi, ylo - 1, -1)
            ]
        raise ValueError("grid export only supports dimensions 1 and 2; use JSON")


def free_window(
    spec: FamilySpec,
    box: Box,
    *,
    cell_limit: int = DEFAULT_CELL_LIMIT,
    workers: int = 1,
) -> FreeWindow:
    """Exact free-set indicator over a box.

    Evaluation is pure per cell, so the box may be partitioned across
    workers; the result does not depend on the worker count.
    """
    _check_dim(spec, box.dim)
    vol = box.volume
    if vol > cell_limit:
        raise TooLargeError(f"window volume {vol} exceeds the limit of {cell_limit}")
    points = list(box.points())
    if workers > 1:
        chunk = (len(points) + workers - 1) // workers
        parts = [points[i : i + chunk] for i in range(0, len(points), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda ps: [spec.eta(p) for p in ps], parts))
        flat = [b for ch in chunks for b in ch]
    else:
        flat = [spec.eta(p) for p in points]
    out = bytearray((vol + 7) // 8)
    for i, bit in enumerate(flat):
        if bit:
            out[i >> 3] |= 1 << (i & 7)
    return FreeWindow(box, bytes(out))


def find_zero_window(
    spec: FamilySpec,
    shape: Shape,
    search: Box,
    *,
    cell_limit: int = DEFAULT_CELL_LIMIT,
):
    """First translate g (lexicographic over the search box) with every cell
    of g + shape covered, or None if the box holds none.

    Absence here is not a nonexistence proof; see the proximality module for
    the periodic-exact route.
    """
    _check_dim(spec, shape.dim)
    if search.dim != shape.dim:
        raise ValueError("search box dimension mismatch")
    if search.volume * len(shape) > cell_limit:
        raise TooLargeError("scan exceeds the cell limit")
    cache: dict[Point, bool] = {}
    for g in search.points():
        ok = True
        for f in shape.offsets:
            p = tuple(a + b for a, b in zip(g, f))
            hit = cache.get(p)
            if hit is None:
                hit = spec.covered(p)
                cache[p] = hit
            if not hit:
                ok = False
                break
        if ok:
            return g
    return None


def all_zero_windows(
    spec: FamilySpec,
    shape: Shape,
    search: Box,
    *,
    cell_limit: int = DEFAULT_CELL_LIMIT,
) -> list[Point]:
    """Every valid translate in the search box, in lexicographic order."""
    out = []
    cache: dict[Point, bool] = {}
    if search.volume * len(shape) > cell_limit:
        raise TooLargeError("scan exceeds the cell limit")
    for g in search.points():
        ok = True
        for f in shape.offsets:
            p = tuple(a + b for a, b in zip(g, f))
            hit = cache.get(p)
            if hit is None:
                hit = spec.covered(p)
                cache[p] = hit
            if not hit:
                ok = False
                break
        if ok:
            out.append(g)
    return out


def zero_window_by_crt(lattices, shape: Shape) -> Point:
    """Translate placing the whole shape inside the union, built by the
    Chinese Remainder Theorem over rectangular (diagonal) lattices.

    Cell i is paired with lattices[i] in list order; the result a satisfies
    a + shape.offsets[i] in lattices[i] and is reduced to the canonical
    representative modulo the intersection of the used lattices.
    """
    lattices = list(lattices)
    if len(lattices) < len(shape):
        raise NotEnoughIdealsError(
            f"{len(shape)} cells need at least that many lattices, got {len(lattices)}"
        )
    used = lattices[: len(shape)]
    m = shape.dim
    for lat in used:
        if lat.dim != m:
            raise ValueError("lattice dimension mismatch")
        if not lat.is_diagonal():
            raise NotRectangularError("CRT construction needs rectangular (diagonal) lattices")
    for i in range(len(used)):
        for j in range(i + 1, len(used)):
            if not used[i].coprime(used[j]):
                raise NotCoprimeError(
                    f"lattices {i} and {j} are not coprime"
                )
    coords = []
    for axis in range(m):
        moduli = [lat.diagonal[axis] for lat in used]
        residues = [-f[axis] % q for f, q in zip(shape.offsets, moduli)]
        coords.append(crt_integers(residues, moduli))
    period = intersect_all(used)
    return period.reduce(tuple(coords))


def syndetic_period(spec: FamilySpec, translate, shape: Shape) -> Lattice:
    """A finite-index lattice H with translate + H + shape inside the union.

    H is the intersection of one covering member per shape cell, so every
    H-translate of the zero window is again a zero window; a nonempty zero
    window is therefore syndetic.
    """
    translate = as_point(translate)
    members = []
    for f in shape.offsets:
        p = tuple(a + b for a, b in zip(translate, f))
        member = spec.member_containing(p)
        if member is None:
            raise NotAZeroWindowError(f"cell {f} lands on a free point at {p}")
        members.append(member)
    return intersect_all(members)


@dataclass(frozen=True)
class ProfileRow:
    side: int
    shift: Point
    ratio: Fraction


@dataclass(frozen=True)
class DensityProfile:
    """Best covered-fraction of centered boxes over a shift search.

    Each ratio is a lower bound for the upper Banach density of the covered
    set: the supremum over all shifts is approached, never computed.
    """

    rows: tuple[ProfileRow, ...]

    def __post_init__(self):
        sides = [r.side for r in self.rows]
        if any(a >= b for a, b in zip(sides, sides[1:])):
            raise ValueError("sides must be strictly increasing")
        if any(not 0 <= r.ratio <= 1 for r in self.rows):
            raise ValueError("ratios must lie in [0, 1]")

    def to_csv(self) -> str:
        lines = ["side,shift,ratio"]
        for r in self.rows:
            shift = " ".join(str(x) for x in r.shift)
            lines.append(f"{r.side},{shift},{r.ratio.numerator}/{r.ratio.denominator}")
        return "\n".join(lines) + "\n"


def density_profile(
    spec: FamilySpec,
    sides,
    shift_search: Box,
    *,
    cell_limit: int = DEFAULT_CELL_LIMIT,
) -> DensityProfile:
    """For each side n, the exact maximum over shifts x in the search box of
    |covered set  intersect  ([-n, n]^m + x)| / (2n+1)^m.

    Uses one window evaluation over the Minkowski-sum box plus integral-image
    counting, so each cell is evaluated once.
    """
    sides = [int(n) for n in sides]
    m = spec.dim
    if shift_search.dim != m:
        raise ValueError("shift box dimension mismatch")
    rows = []
    for n in sides:
        lo = tuple(a - n for a in shift_search.lo)
        hi = tuple(b + n for b in shift_search.hi)
        grid = Box(lo, hi)
        if grid.volume > cell_limit:
            raise TooLargeError(f"combined grid volume {grid.volume} exceeds {cell_limit}")
        counts = _prefix_sums(spec, grid)
        total = (2 * n + 1) ** m
        best = None
        best_shift = None
        for x in shift_search.points():
            a = tuple(xi - n - g for xi, g in zip(x, grid.lo))
            b = tuple(xi + n - g for xi, g in zip(x, grid.lo))
            cnt = _box_count(counts, grid.sides, a, b)
            if best is None or cnt > best:
                best = cnt
                best_shift = x
        rows.append(ProfileRow(n, best_shift, Fraction(best, total)))
    return DensityProfile(tuple(rows))


def _prefix_sums(spec: FamilySpec, grid: Box) -> list[int]:
    """Flat inclusive prefix-sum array of covered-cell counts over the grid."""
    sides = grid.sides
    vals = [1 if spec.covered(p) else 0 for p in grid.points()]
    strides = [0] * len(sides)
    acc = 1
    for i in reversed(range(len(sides))):
        strides[i] = acc
        acc *= sides[i]
    for axis in range(len(sides)):
        stride = strides[axis]
        size = sides[axis]
        for i in range(len(vals)):
            pos = (i // stride) % size
            if pos:
                vals[i] += vals[i - stride]
    return vals


def _box_count(prefix: list[int], sides, a, b) -> int:
    """Sum over grid cells with a_j <= idx_j <= b_j, via inclusion-exclusion."""
    m = len(sides)
    strides = [0] * m
    acc = 1
    for i in reversed(range(m)):
        strides[i] = acc
        acc *= sides[i]
    total = 0
    for corner in product((0, 1), repeat=m):
        idx = 0
        skip = False
        for j, c in enumerate(corner):
            coord = b[j] if c == 0 else a[j] - 1
            if coord < 0:
                skip = True
                break
            idx += coord * strides[j]
        if skip:
            continue
        sign = -1 if sum(corner) % 2 else 1
        total += sign * prefix[idx]
    return total


def _check_dim(spec: FamilySpec, dim: int):
    if spec.dim != dim:
        raise ValueError(f"family is {spec.dim}-dimensional, got {dim}-dimensional input")
