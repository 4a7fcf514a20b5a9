"""The projective line over a finite field and its permutations.

Points are integers: field element indices 0..q-1 stand for themselves and
q stands for the point at infinity.  Permutations are stored as image
tuples.  Composition follows function order: (a * b) applies b first, then
a, so that (a * b)(x) == a(b(x)).

Cycle notation is the exchange format: cycles in parentheses, points
space-separated, infinity spelled "inf".  Canonical form lists cycles by
smallest member, each rotated to start at its smallest member; the identity
renders as "()".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .fields import Field, field_of_order


class DomainMismatch(ValueError):
    pass


class NotABijection(ValueError):
    pass


class WrongLength(ValueError):
    pass


class ParseError(ValueError):
    pass


class OverlappingCycles(ValueError):
    pass


class UnknownPoint(ValueError):
    pass


class NonUnitDeterminant(ValueError):
    pass


class ZeroScaling(ValueError):
    pass


# -- raw image-tuple helpers (shared with the group engine) ----------------


def identity_images(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def compose_images(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Apply b first, then a."""
    return tuple(map(a.__getitem__, b))


def invert_images(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class ProjLine:
    """The q+1 points of the projective line over GF(q)."""

    def __init__(self, field: Field):
        self.field = field
        self.size = field.order + 1
        self.infinity = field.order

    @classmethod
    def over_prime(cls, p: int) -> "ProjLine":
        return cls(Field(p))

    @classmethod
    def of_order(cls, q: int) -> "ProjLine":
        return cls(field_of_order(q))

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.field == other.field

    def __hash__(self):
        return hash(self.field)

    def __repr__(self):
        return f"ProjLine({self.field!r})"

    def points(self) -> range:
        return range(self.size)

    def point_name(self, pt: int) -> str:
        return "inf" if pt == self.infinity else str(pt)

    # -- permutation constructors --

    def identity(self) -> "Permutation":
        return Permutation(self, identity_images(self.size))

    def perm(self, images) -> "Permutation":
        images = tuple(images)
        if len(images) != self.size:
            raise WrongLength(f"expected {self.size} images, got {len(images)}")
        seen = [False] * self.size
        for x in images:
            if not isinstance(x, int) or not 0 <= x < self.size:
                raise NotABijection(f"image {x!r} is not a point")
            if seen[x]:
                raise NotABijection(f"point {self.point_name(x)} repeated")
            seen[x] = True
        return Permutation(self, images)

    def from_cycles(self, text: str) -> "Permutation":
        cycles = _parse_cycle_text(text)
        images = list(identity_images(self.size))
        used: set[int] = set()
        for cycle in cycles:
            pts = []
            for token in cycle:
                if token == "inf":
                    pt = self.infinity
                else:
                    pt = int(token)
                    if not 0 <= pt < self.size - 1:
                        raise UnknownPoint(f"point {token} not on this line")
                pts.append(pt)
            for pt in pts:
                if pt in used:
                    raise OverlappingCycles(f"point {self.point_name(pt)} in two cycles")
                used.add(pt)
            for cur, nxt in zip(pts, pts[1:] + pts[:1]):
                images[cur] = nxt
        return Permutation(self, tuple(images))

    # -- the standard maps --

    def translation(self, a: int) -> "Permutation":
        f = self.field
        images = [f.add(z, a) for z in f.elements()]
        images.append(self.infinity)
        return Permutation(self, tuple(images))

    def scaling(self, a: int) -> "Permutation":
        f = self.field
        if a % f.order == 0:
            raise ZeroScaling("scaling factor must be a unit")
        images = [f.mul(a, z) for z in f.elements()]
        images.append(self.infinity)
        return Permutation(self, tuple(images))

    def moebius(self, a: int, b: int, c: int, d: int) -> "Permutation":
        return MoebiusMap(self.field, a, b, c, d).permutation(self)

    def neg_reciprocal(self) -> "Permutation":
        """The involution z -> -1/z."""
        return self.moebius(0, self.field.neg(1), 1, 0)


class Permutation:
    """A bijection of a fixed projective line, stored as an image tuple."""

    __slots__ = ("line", "images")

    def __init__(self, line: ProjLine, images: tuple[int, ...]):
        self.line = line
        self.images = images

    def __call__(self, pt: int) -> int:
        return self.images[pt]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.line != other.line:
            raise DomainMismatch("permutations live on different lines")
        return Permutation(self.line, compose_images(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(self.line, invert_images(self.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return (
            isinstance(other, Permutation)
            and self.images == other.images
            and self.line == other.line
        )

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its smallest member, ordered
        by smallest member."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            cur = self.images[start]
            while cur != start:
                seen[cur] = True
                cycle.append(cur)
                cur = self.images[cur]
            out.append(tuple(cycle))
        return tuple(out)

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if i == j)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        name = self.line.point_name
        return "".join("(" + " ".join(name(pt) for pt in c) + ")" for c in cycles)

    def __str__(self):
        return self.cycle_notation()

    def __repr__(self):
        return f"Permutation({self.cycle_notation()})"


_CYCLE_TOKEN_RE = re.compile(r"\(|\)|inf|\d+|\S")


def _parse_cycle_text(text: str) -> list[list[str]]:
    cycles: list[list[str]] = []
    current: list[str] | None = None
    for match in _CYCLE_TOKEN_RE.finditer(text):
        token = match.group()
        if token == "(":
            if current is not None:
                raise ParseError("nested '('")
            current = []
        elif token == ")":
            if current is None:
                raise ParseError("')' without '('")
            if current:
                cycles.append(current)
            current = None
        elif token == "inf" or token.isdigit():
            if current is None:
                raise ParseError(f"point {token!r} outside parentheses")
            current.append(token)
        else:
            raise ParseError(f"unexpected character {token!r}")
    if current is not None:
        raise ParseError("unclosed '('")
    return cycles


@dataclass(frozen=True)
class MoebiusMap:
    """A determinant-one fractional-linear map z -> (az+b)/(cz+d)."""

    field: Field
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det != 1:
            raise NonUnitDeterminant(f"determinant is {self.det}, not 1")

    @property
    def det(self) -> int:
        f = self.field
        return f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))

    def __mul__(self, other: "MoebiusMap") -> "MoebiusMap":
        if self.field != other.field:
            raise DomainMismatch("matrices over different fields")
        f = self.field
        return MoebiusMap(
            f,
            f.add(f.mul(self.a, other.a), f.mul(self.b, other.c)),
            f.add(f.mul(self.a, other.b), f.mul(self.b, other.d)),
            f.add(f.mul(self.c, other.a), f.mul(self.d, other.c)),
            f.add(f.mul(self.c, other.b), f.mul(self.d, other.d)),
        )

    def neg(self) -> "MoebiusMap":
        f = self.field
        return MoebiusMap(f, f.neg(self.a), f.neg(self.b), f.neg(self.c), f.neg(self.d))

    def permutation(self, line: ProjLine) -> Permutation:
        if line.field != self.field:
            raise DomainMismatch("map and line use different fields")
        f = self.field
        images = []
        for z in f.elements():
            den = f.add(f.mul(self.c, z), self.d)
            if den == 0:
                images.append(line.infinity)
            else:
                num = f.add(f.mul(self.a, z), self.b)
                images.append(f.div(num, den))
        if self.c == 0:
            images.append(line.infinity)
        else:
            images.append(f.div(self.a, self.c))
        return Permutation(line, tuple(images))
