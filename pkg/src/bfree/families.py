"""Finite descriptions of (possibly infinite) families of lattices.

A family is a list of entries, each one of:

* ``Static`` -- a single lattice, given explicitly;
* ``Rectangular`` -- a single diagonal lattice a_1 Z x ... x a_m Z;
* ``Template`` -- a triangular base matrix whose single scaled diagonal
  entry is multiplied by a parameter t running over a sequence;
* ``RectTemplate`` -- a diagonal pattern whose slots are c * t**e, again
  over a parameter sequence.

Parameter sequences are primes (with optional exclusions), powers of a fixed
base, or an explicit finite list.  Membership of a point in the union of all
members is decided exactly: divisibility constraints pin down finitely many
candidate parameters, so no sampling or truncation is involved.

A family may carry a unimodular change of coordinates; the described family
is then the image of every entry under that map.  Membership is evaluated by
pulling points back through the inverse.
"""

import json
import re
from dataclasses import dataclass, replace
from math import gcd

from .errors import FamilyParseError, UnknownPresetError
from .lattices import Lattice, Point, UnimodularMap, as_point, hnf
from .numtheory import factor, iroot, is_prime, primes_up_to, valuation

# Primes below this bound are tried directly before any factorization, so
# membership that holds via a small prime never factors a huge constraint.
_PROBE_BOUND = 1000


# ---------------------------------------------------------------------------
# parameter sequences


@dataclass(frozen=True)
class Primes:
    """All primes, minus an optional finite exclusion set."""

    exclude: tuple[int, ...] = ()

    def __post_init__(self):
        if any(not is_prime(x) for x in self.exclude):
            raise ValueError("exclusions must be primes")

    is_infinite = True

    def __contains__(self, t: int) -> bool:
        return t not in self.exclude and is_prime(t)

    def values_up_to(self, bound: int) -> list[int]:
        return [p for p in primes_up_to(bound) if p not in self.exclude]

    def min_value(self) -> int:
        p = 2
        while p in self.exclude:
            p = next_prime(p)
        return p

    def power_gcd(self, e: int) -> int:
        """gcd of t**e over the whole sequence (1: distinct primes are coprime)."""
        return 1

    def candidates(self, constraints) -> list[int]:
        """All sequence members t with t**e dividing v for every (v, e) given.

        At least one v must be nonzero.  Decided by factoring the gcd of the
        nonzero v's.
        """
        g = 0
        for v, _ in constraints:
            g = gcd(g, v)
        g = abs(g)
        if g == 0:
            raise ValueError("all constraint values are zero")
        out = []
        for p, _ in factor(g):
            if p in self.exclude:
                continue
            if all(v == 0 or v % p**e == 0 for v, e in constraints):
                out.append(p)
        return out

    def residues_mod(self, n: int) -> set[int]:
        """Exact set {t mod n : t in the sequence}.

        Every unit class mod n contains infinitely many primes, so finite
        exclusions never empty it; non-unit classes are reached only by the
        primes dividing n themselves.
        """
        out = {u for u in range(1, n) if gcd(u, n) == 1}
        for p, _ in factor(n):
            if p not in self.exclude:
                out.add(p % n)
        if n == 1:
            out.add(0)
        return out

    def value_in_class(self, rho: int, n: int):
        """Smallest sequence member congruent to rho mod n, or None."""
        bound = max(1000, 60 * n)
        for p in primes_up_to(bound):
            if p % n == rho and p not in self.exclude:
                return p
        return None

    def describe(self) -> str:
        if self.exclude:
            return "primes excluding {%s}" % ", ".join(map(str, self.exclude))
        return "all primes"


def odd_primes() -> Primes:
    return Primes(exclude=(2,))


def next_prime(p: int) -> int:
    q = p + 1
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class Geometric:
    """Powers base**k for k >= start (base >= 2)."""

    base: int
    start: int = 1

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("geometric base must be >= 2")
        if self.start < 0:
            raise ValueError("exponent offset must be >= 0")

    is_infinite = True

    def __contains__(self, t: int) -> bool:
        if t < self.base**self.start:
            return False
        while t % self.base == 0:
            t //= self.base
        return t == 1

    def values_up_to(self, bound: int) -> list[int]:
        out = []
        v = self.base**self.start
        while v <= bound:
            out.append(v)
            v *= self.base
        return out

    def min_value(self) -> int:
        return self.base**self.start

    def power_gcd(self, e: int) -> int:
        return self.base ** (self.start * e)

    def candidates(self, constraints) -> list[int]:
        kmax = None
        for v, e in constraints:
            if v == 0:
                continue
            k = valuation(v, self.base) // e
            kmax = k if kmax is None else min(kmax, k)
        if kmax is None:
            raise ValueError("all constraint values are zero")
        return [self.base**k for k in range(self.start, kmax + 1)]

    def residues_mod(self, n: int) -> set[int]:
        out = set()
        r = pow(self.base, self.start, n)
        while r not in out:
            out.add(r)
            r = r * self.base % n
        return out

    def value_in_class(self, rho: int, n: int):
        seen = set()
        k = self.start
        r = pow(self.base, k, n)
        while r not in seen:
            if r == rho:
                return self.base**k
            seen.add(r)
            k += 1
            r = r * self.base % n
        return None

    def describe(self) -> str:
        return f"powers {self.base}^k, k >= {self.start}"


@dataclass(frozen=True)
class Explicit:
    """A finite, strictly increasing list of parameter values."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("explicit parameter list must be non-empty")
        if any(v < 1 for v in self.values):
            raise ValueError("parameters must be positive")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("explicit parameter list must be strictly increasing")

    is_infinite = False

    def __contains__(self, t: int) -> bool:
        return t in self.values

    def values_up_to(self, bound: int) -> list[int]:
        return [v for v in self.values if v <= bound]

    def min_value(self) -> int:
        return self.values[0]

    def power_gcd(self, e: int) -> int:
        g = 0
        for v in self.values:
            g = gcd(g, v**e)
        return g

    def candidates(self, constraints) -> list[int]:
        if all(v == 0 for v, _ in constraints):
            raise ValueError("all constraint values are zero")
        return [
            t
            for t in self.values
            if all(v == 0 or v % t**e == 0 for v, e in constraints)
        ]

    def residues_mod(self, n: int) -> set[int]:
        return {v % n for v in self.values}

    def value_in_class(self, rho: int, n: int):
        return next((v for v in self.values if v % n == rho), None)

    def describe(self) -> str:
        return "{%s}" % ", ".join(map(str, self.values))


ParamSeq = Primes | Geometric | Explicit


# ---------------------------------------------------------------------------
# entries


@dataclass(frozen=True)
class Static:
    """A single lattice member."""

    lattice: Lattice

    def __post_init__(self):
        if not self.lattice.is_proper():
            raise ValueError("family members must be proper (index >= 2)")

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def covered(self, p) -> bool:
        return self.lattice.contains(p)

    def member_containing(self, p):
        return self.lattice if self.lattice.contains(p) else None

    def instances_up_to(self, bound: int) -> list[Lattice]:
        return [self.lattice] if self.lattice.index <= bound else []

    def describe(self) -> str:
        return f"static {self.lattice.to_columns()}"


@dataclass(frozen=True)
class Rectangular:
    """The diagonal lattice a_1 Z x ... x a_m Z with a != (1, ..., 1)."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if any(a < 1 for a in self.entries):
            raise ValueError("rectangular entries must be positive")
        if all(a == 1 for a in self.entries):
            raise ValueError("the all-ones pattern is not a proper lattice")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def lattice(self) -> Lattice:
        return Lattice.from_diagonal(self.entries)

    def covered(self, p) -> bool:
        return all(x % a == 0 for x, a in zip(p, self.entries, strict=True))

    def member_containing(self, p):
        return self.lattice if self.covered(p) else None

    def instances_up_to(self, bound: int) -> list[Lattice]:
        lat = self.lattice
        return [lat] if lat.index <= bound else []

    def describe(self) -> str:
        return "rect [%s]" % ", ".join(map(str, self.entries))


@dataclass(frozen=True)
class RectEntry:
    """One diagonal slot of a rectangular template: the value c * t**e."""

    coeff: int = 1
    exp: int = 0

    def __post_init__(self):
        if self.coeff < 1 or self.exp < 0:
            raise ValueError("slot must be c * t**e with c >= 1 and e >= 0")

    def value(self, t: int) -> int:
        return self.coeff * t**self.exp

    def __str__(self):
        if self.exp == 0:
            return str(self.coeff)
        c = "" if self.coeff == 1 else str(self.coeff)
        return f"{c}t" if self.exp == 1 else f"{c}t^{self.exp}"


@dataclass(frozen=True)
class RectTemplate:
    """Diagonal lattices diag(c_1 t**e_1, ..., c_m t**e_m) over a parameter sequence."""

    entries: tuple[RectEntry, ...]
    params: ParamSeq

    def __post_init__(self):
        if not any(s.exp >= 1 for s in self.entries):
            raise ValueError("a rectangular template needs at least one parameterized slot")
        const = 1
        for s in self.entries:
            const *= s.coeff if s.exp == 0 else 1
        if const == 1 and all(s.coeff == 1 for s in self.entries) and 1 in self.params:
            raise ValueError("parameter 1 would instantiate the improper all-ones member")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def member(self, t: int) -> Lattice:
        return Lattice.from_diagonal(tuple(s.value(t) for s in self.entries))

    def index_of(self, t: int) -> int:
        out = 1
        for s in self.entries:
            out *= s.value(t)
        return out

    def _constraints(self, p):
        """Per-slot divisibility data, or None when a constant slot fails."""
        constraints = []
        for s, x in zip(self.entries, p, strict=True):
            if x % s.coeff:
                return None
            if s.exp >= 1:
                constraints.append((x // s.coeff, s.exp))
        return constraints

    def _probe_first(self, constraints) -> bool:
        # Huge constraint values would make the exact candidate computation
        # factor astronomically large numbers; small primes are tried directly
        # first, so membership that holds via one of them stays cheap.
        return isinstance(self.params, Primes) and any(
            abs(v).bit_length() > 64 for v, _ in constraints
        )

    def covered(self, p) -> bool:
        constraints = self._constraints(p)
        if constraints is None:
            return False
        if all(v == 0 for v, _ in constraints):
            return True  # zero is divisible by every parameter value
        if self._probe_first(constraints):
            for t in self.params.values_up_to(_PROBE_BOUND):
                if all(v % t**e == 0 for v, e in constraints):
                    return True
            return any(t > _PROBE_BOUND for t in self.params.candidates(constraints))
        return bool(self.params.candidates(constraints))

    def member_containing(self, p):
        constraints = self._constraints(p)
        if constraints is None:
            return None
        if all(v == 0 for v, _ in constraints):
            return self.member(self.params.min_value())
        if self._probe_first(constraints):
            for t in self.params.values_up_to(_PROBE_BOUND):
                if all(v % t**e == 0 for v, e in constraints):
                    return self.member(t)
            extra = [t for t in self.params.candidates(constraints) if t > _PROBE_BOUND]
            return self.member(min(extra)) if extra else None
        cands = self.params.candidates(constraints)
        return self.member(min(cands)) if cands else None

    def instances_up_to(self, bound: int) -> list[Lattice]:
        const = 1
        total_exp = 0
        for s in self.entries:
            const *= s.coeff
            total_exp += s.exp
        if const > bound:
            return []
        tmax = iroot(bound // const, total_exp)
        return [
            self.member(t)
            for t in self.params.values_up_to(tmax)
            if self.index_of(t) <= bound and self.index_of(t) >= 2
        ]

    def describe(self) -> str:
        pattern = ", ".join(str(s) for s in self.entries)
        return f"recttemplate [{pattern}] over {self.params.describe()}"


@dataclass(frozen=True)
class Template:
    """Triangular base whose scaled diagonal entry is multiplied by the parameter.

    ``scaled_row`` is the 0-indexed diagonal position; the rest of that
    column (rows below the diagonal) is shared by every member.
    """

    base: Lattice
    scaled_row: int
    params: ParamSeq

    def __post_init__(self):
        if not 0 <= self.scaled_row < self.base.dim:
            raise ValueError("scaled position out of range")
        if self.base.index < 2 and 1 in self.params:
            raise ValueError("parameter 1 would instantiate an improper member")

    @property
    def dim(self) -> int:
        return self.base.dim

    def member_columns(self, t: int) -> list[list[int]]:
        cols = [list(c) for c in self.base.columns]
        r = self.scaled_row
        cols[r][r] = self.base.basis[r][r] * t
        return cols

    def member(self, t: int) -> Lattice:
        return hnf(self.member_columns(t))

    def index_of(self, t: int) -> int:
        return self.base.index * t

    def covered(self, p) -> bool:
        return self._solve(list(as_point(p)), 0, record=None)

    def member_containing(self, p):
        record: list[int] = []
        if self._solve(list(as_point(p)), 0, record=record):
            return self.member(record[0])
        return None

    def _solve(self, res, i, record) -> bool:
        """Back-substitution; the scaled row forks over finitely many candidates."""
        m = self.dim
        if i == m:
            return True
        d = self.base.basis[i][i]
        v = res[i]
        if v % d:
            return False
        w = v // d
        if i != self.scaled_row:
            if w:
                for r in range(i, m):
                    res[r] -= w * self.base.basis[r][i]
            return self._solve(res, i + 1, record)
        if w == 0:
            # Coefficient of the scaled column is forced to 0, so membership
            # is parameter-independent from here on.
            if self._solve(res, i + 1, record):
                if record is not None:
                    record.append(self.params.min_value())
                return True
            return False
        for t in sorted(self.params.candidates(((w, 1),))):
            k = w // t
            branch = res[:]
            branch[i] = 0
            for r in range(i + 1, m):
                branch[r] -= k * self.base.basis[r][i]
            if self._solve(branch, i + 1, record):
                if record is not None:
                    record.append(t)
                return True
        return False

    def instances_up_to(self, bound: int) -> list[Lattice]:
        tmax = bound // self.base.index
        return [
            self.member(t)
            for t in self.params.values_up_to(tmax)
            if self.index_of(t) >= 2
        ]

    def pair_sum_bound(self) -> Lattice:
        """A lattice containing L_t + L_t' for every pair of members.

        Generated by the unscaled columns, the shared tail of the scaled
        column, and c * e_r (c the unscaled diagonal entry).  When this is
        proper, no two members of the entry are coprime.
        """
        m = self.dim
        r = self.scaled_row
        gens = [c for j, c in enumerate(self.base.columns) if j != r]
        gens.append(tuple(self.base.basis[r][r] if i == r else 0 for i in range(m)))
        tail = [0] * m
        for i in range(r + 1, m):
            tail[i] = self.base.basis[i][r]
        gens.append(tuple(tail))
        return hnf(gens, dim=m)

    def describe(self) -> str:
        pos = self.scaled_row + 1
        return (
            f"template base={self.base.to_columns()} scale=({pos},{pos}) "
            f"over {self.params.describe()}"
        )


Entry = Static | Rectangular | RectTemplate | Template


# ---------------------------------------------------------------------------
# family specifications


@dataclass(frozen=True)
class FamilySpec:
    """A finite description of a (possibly infinite) family of lattices.

    ``transform``, when present, maps every described entry through a
    unimodular change of coordinates; membership pulls points back through
    the inverse, so evaluation stays exact.
    """

    dim: int
    entries: tuple[Entry, ...]
    transform: UnimodularMap | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        for e in self.entries:
            if e.dim != self.dim:
                raise ValueError("entry dimension mismatch")
        if self.transform is not None:
            if self.transform.dim != self.dim:
                raise ValueError("transform dimension mismatch")
            object.__setattr__(self, "_inverse", self.transform.inverse())

    def _pullback(self, p) -> Point:
        p = as_point(p)
        if len(p) != self.dim:
            raise ValueError("point dimension mismatch")
        if self.transform is None:
            return p
        return self._inverse.apply_point(p)  # type: ignore[attr-defined]

    def covered(self, p) -> bool:
        """True when the point lies in some member of the family."""
        q = self._pullback(p)
        return any(e.covered(q) for e in self.entries)

    def free(self, p) -> bool:
        return not self.covered(p)

    def eta(self, p) -> int:
        """Indicator bit of the free set: 1 on free points, 0 on covered ones."""
        return 0 if self.covered(p) else 1

    def member_containing(self, p):
        """Some member lattice containing p (first entry, smallest parameter), or None."""
        q = self._pullback(p)
        for e in self.entries:
            found = e.member_containing(q)
            if found is not None:
                return self.transform.apply(found) if self.transform else found
        return None

    def instances_up_to(self, bound: int) -> list[Lattice]:
        """All members with index <= bound, deduplicated, sorted by (index, basis)."""
        seen = {}
        for e in self.entries:
            for lat in e.instances_up_to(bound):
                if self.transform is not None:
                    lat = self.transform.apply(lat)
                seen[lat.basis] = lat
        return sorted(seen.values(), key=lambda l: (l.index, l.basis))

    def base_spec(self) -> "FamilySpec":
        """The same entries with the coordinate change stripped."""
        if self.transform is None:
            return self
        return replace(self, transform=None)

    def describe(self) -> str:
        lines = [f"dim {self.dim}"] + [e.describe() for e in self.entries]
        if self.transform is not None:
            lines.append(f"transform {self.transform.to_rows()}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# presets

#: Built-in example families; see ``preset``.
PRESET_NAMES = ("ex2", "ex1", "squarefree-1d", "rect-demo")


def preset(name: str) -> FamilySpec:
    """Documented example families.

    * ``ex2``: 2Z x Z, Z x 2Z, and (1,1)Z + (0,2p)Z over all primes p.  Its
      free set is the pair of diagonals {(a, a +/- 2) : a odd}.
    * ``ex1``: (1,1)Z + (0,2)Z, Z x 2Z, (2p,1)Z + (0,2)Z over odd primes,
      and (2^(i+1),1)Z + (0,2)Z for i >= 1.  Its free set is
      {-2, 0, 2} x (odd integers).
    * ``squarefree-1d``: the squares p^2 Z over all primes; free points are
      the squarefree integers.
    * ``rect-demo``: the five diagonal lattices p Z x p Z for p in
      {2, 3, 5, 7, 11}.
    """
    if name == "ex2":
        return FamilySpec(
            dim=2,
            entries=(
                Rectangular((2, 1)),
                Rectangular((1, 2)),
                Template(base=hnf([(1, 1), (0, 2)]), scaled_row=1, params=Primes()),
            ),
        )
    if name == "ex1":
        return FamilySpec(
            dim=2,
            entries=(
                Static(hnf([(1, 1), (0, 2)])),
                Rectangular((1, 2)),
                Template(base=hnf([(2, 1), (0, 2)]), scaled_row=0, params=odd_primes()),
                Template(base=hnf([(2, 1), (0, 2)]), scaled_row=0, params=Geometric(2, 1)),
            ),
        )
    if name == "squarefree-1d":
        return FamilySpec(dim=1, entries=(RectTemplate((RectEntry(1, 2),), Primes()),))
    if name == "rect-demo":
        return FamilySpec(
            dim=2,
            entries=tuple(Rectangular((p, p)) for p in (2, 3, 5, 7, 11)),
        )
    raise UnknownPresetError(f"unknown preset {name!r} (choose from {', '.join(PRESET_NAMES)})")


# ---------------------------------------------------------------------------
# text format

_SLOT_RE = re.compile(r"^(?:(\d+)\s*\*?\s*)?t(?:\^(\d+))?$")


def _parse_params(text: str, line_no: int) -> ParamSeq:
    text = text.strip()
    if text.startswith("primes"):
        rest = text[len("primes"):]
        if not rest:
            return Primes()
        if rest.startswith("!"):
            try:
                excl = tuple(int(x) for x in rest[1:].split(","))
            except ValueError:
                raise FamilyParseError(line_no, f"bad exclusion list {rest[1:]!r}")
            return Primes(exclude=excl)
        raise FamilyParseError(line_no, f"bad params {text!r}")
    if text == "oddprimes":
        return odd_primes()
    if text.startswith("geometric:"):
        parts = text.split(":")[1:]
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise FamilyParseError(line_no, f"bad geometric params {text!r}")
        if len(nums) == 1:
            return Geometric(nums[0])
        if len(nums) == 2:
            return Geometric(nums[0], nums[1])
        raise FamilyParseError(line_no, f"bad geometric params {text!r}")
    if text.startswith("explicit:"):
        try:
            vals = tuple(int(x) for x in text[len("explicit:"):].split(","))
        except ValueError:
            raise FamilyParseError(line_no, f"bad explicit params {text!r}")
        return Explicit(vals)
    raise FamilyParseError(line_no, f"unknown parameter sequence {text!r}")


def _parse_slot(text: str, line_no: int) -> RectEntry:
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        return RectEntry(coeff=int(text), exp=0)
    m = _SLOT_RE.fullmatch(text)
    if not m:
        raise FamilyParseError(line_no, f"bad template slot {text!r}")
    coeff = int(m.group(1)) if m.group(1) else 1
    exp = int(m.group(2)) if m.group(2) else 1
    return RectEntry(coeff=coeff, exp=exp)


def _parse_matrix(text: str, line_no: int):
    try:
        cols = json.loads(text)
    except json.JSONDecodeError:
        raise FamilyParseError(line_no, f"bad matrix literal {text!r}")
    if not isinstance(cols, list) or not all(isinstance(c, list) for c in cols):
        raise FamilyParseError(line_no, "matrix must be a list of columns")
    return cols


def parse_family(text: str) -> FamilySpec:
    """Parse the one-entry-per-line family format.

    ::

        # comment
        dim 2
        static [[2,0],[0,1]]
        rect [1,2]
        template base=[[1,1],[0,2]] scale=(2,2) params=primes
        recttemplate [t,2] params=geometric:2
        transform [[1,0],[1,1]]

    Matrices are given as lists of basis columns.  Improper entries (index 1)
    are rejected with a diagnostic naming the offending line.
    """
    dim = None
    entries: list[Entry] = []
    transform = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "dim":
                dim = int(rest)
                continue
            if dim is None:
                raise FamilyParseError(line_no, "dim must come before entries")
            if key == "static":
                lat = hnf(_parse_matrix(rest, line_no), dim=dim)
                entries.append(Static(lat))
            elif key == "rect":
                vec = json.loads(rest)
                entries.append(Rectangular(tuple(int(x) for x in vec)))
            elif key == "template":
                fields = dict(re.findall(r"(\w+)=(\S+)", rest))
                if set(fields) != {"base", "scale", "params"}:
                    raise FamilyParseError(line_no, "template needs base=, scale=, params=")
                base = hnf(_parse_matrix(fields["base"], line_no), dim=dim)
                mscale = re.fullmatch(r"\((\d+),(\d+)\)", fields["scale"])
                if not mscale or mscale.group(1) != mscale.group(2):
                    raise FamilyParseError(line_no, "scale must be a diagonal position (r,r)")
                row = int(mscale.group(1)) - 1
                entries.append(Template(base, row, _parse_params(fields["params"], line_no)))
            elif key == "recttemplate":
                mrow = re.fullmatch(r"\[(.*)\]\s+params=(\S+)", rest)
                if not mrow:
                    raise FamilyParseError(line_no, "recttemplate needs [slots] params=...")
                slots = tuple(_parse_slot(s, line_no) for s in mrow.group(1).split(","))
                entries.append(RectTemplate(slots, _parse_params(mrow.group(2), line_no)))
            elif key == "transform":
                rows = _parse_matrix(rest, line_no)
                transform = UnimodularMap(tuple(tuple(int(x) for x in r) for r in rows))
            else:
                raise FamilyParseError(line_no, f"unknown entry kind {key!r}")
        except FamilyParseError:
            raise
        except (ValueError, TypeError) as exc:
            raise FamilyParseError(line_no, str(exc)) from exc
    if dim is None:
        raise FamilyParseError(0, "missing dim line")
    return FamilySpec(dim=dim, entries=tuple(entries), transform=transform)


def format_family(spec: FamilySpec) -> str:
    """Inverse of parse_family, up to whitespace."""
    lines = [f"dim {spec.dim}"]
    for e in spec.entries:
        if isinstance(e, Static):
            lines.append(f"static {_compact(e.lattice.to_columns())}")
        elif isinstance(e, Rectangular):
            lines.append(f"rect {_compact(list(e.entries))}")
        elif isinstance(e, Template):
            pos = e.scaled_row + 1
            lines.append(
                "template base=%s scale=(%d,%d) params=%s"
                % (_compact(e.base.to_columns()), pos, pos, _format_params(e.params))
            )
        elif isinstance(e, RectTemplate):
            slots = ",".join(str(s) for s in e.entries)
            lines.append(f"recttemplate [{slots}] params={_format_params(e.params)}")
    if spec.transform is not None:
        lines.append(f"transform {_compact(spec.transform.to_rows())}")
    return "\n".join(lines) + "\n"


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _format_params(p: ParamSeq) -> str:
    if isinstance(p, Primes):
        if p.exclude:
            return "primes!" + ",".join(map(str, p.exclude))
        return "primes"
    if isinstance(p, Geometric):
        return f"geometric:{p.base}:{p.start}" if p.start != 1 else f"geometric:{p.base}"
    return "explicit:" + ",".join(map(str, p.values))
