"""Permutations of {0, ..., n-1}, cycle types and finite permutation groups.

Permutations are immutable image tables.  Groups are materialized by a plain
breadth-first closure over generators; groups whose cycle-type distribution
is known in closed form (symmetric, alternating and their induced actions)
may instead carry class representatives so that Burnside sums never touch
the full element list.
"""

from __future__ import annotations

import math
import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_ELEMENT_CAP = 10**6


class GroupTooLarge(ValueError):
    """Raised when a closure or materialization would exceed the element cap."""

    def __init__(self, cap: int, what: str = "group"):
        super().__init__(f"{what} too large: more than {cap} elements (element cap)")
        self.cap = cap


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0..n-1}; ``image[i]`` is the image of point ``i``."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation of 0..{len(image) - 1}: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        image = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < n:
                    raise ValueError(f"point {a} outside 0..{n - 1}")
                if a in seen:
                    raise ValueError(f"point {a} appears in more than one cycle")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                image[a] = b
        return cls(tuple(image))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """Parse cycle notation such as ``"(0 1)(2 3 4)"``; ``"()"`` is the identity.

        When ``n`` is omitted the degree is the largest mentioned point plus one.
        """
        cycles = parse_cycles(text)
        if n is None:
            n = max((max(c) for c in cycles if c), default=-1) + 1
        return cls.from_cycles(cycles, n)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of length >= 2, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.image[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.image[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.n})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Split cycle notation into integer tuples.  Whitespace and commas are separators."""
    if not _only_cycles(text):
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if pts:
            cycles.append(tuple(pts))
    return cycles


def _only_cycles(text: str) -> bool:
    return re.fullmatch(r"\s*(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", text) is not None


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, i.e. ``i -> p(q(i))``."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.image
    return Permutation(tuple(pi[x] for x in q.image))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for i, x in enumerate(p.image):
        inv[x] = i
    return Permutation(tuple(inv))


def hamming_distance(p: Permutation, q: Permutation) -> int:
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    return sum(a != b for a, b in zip(p.image, q.image))


@dataclass(frozen=True)
class CycleType:
    """Cycle-length multiplicities ``{k: j_k}``; only ``j_k > 0`` are stored."""

    n: int
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        parts = tuple(sorted((int(k), int(j)) for k, j in self.parts if j))
        if any(k < 1 or j < 0 for k, j in parts):
            raise ValueError(f"invalid cycle type parts: {parts}")
        if len({k for k, _ in parts}) != len(parts):
            raise ValueError(f"repeated cycle length in {parts}")
        if sum(k * j for k, j in parts) != self.n:
            raise ValueError(f"cycle lengths {parts} do not sum to n={self.n}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_counts(cls, counts: dict[int, int], n: int | None = None) -> CycleType:
        if n is None:
            n = sum(k * j for k, j in counts.items())
        return cls(n, tuple(counts.items()))

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.parts)

    def j(self, k: int) -> int:
        for kk, jj in self.parts:
            if kk == k:
                return jj
        return 0

    @property
    def fixed_points(self) -> int:
        return self.j(1)

    @property
    def num_cycles(self) -> int:
        return sum(j for _, j in self.parts)

    @property
    def support(self) -> int:
        return self.n - self.fixed_points

    def is_even(self) -> bool:
        return sum((k - 1) * j for k, j in self.parts) % 2 == 0

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}:{j}" for k, j in self.parts) + "}"


def cycle_type(p: Permutation) -> CycleType:
    counts: Counter[int] = Counter(len(c) for c in p.cycles())
    moved = sum(k * j for k, j in counts.items())
    if p.n - moved:
        counts[1] = p.n - moved
    return CycleType(p.n, tuple(counts.items()))


def support_size(ct: CycleType) -> int:
    """Number of points moved: ``n - j_1``."""
    return ct.support


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` in reverse lexicographic order, parts nonincreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def class_size(ct: CycleType) -> int:
    """Size of the conjugacy class of Sym(n) with cycle type ``ct``."""
    denom = 1
    for k, j in ct.parts:
        denom *= k**j * math.factorial(j)
    return math.factorial(ct.n) // denom


def class_representative(ct: CycleType) -> Permutation:
    """Canonical element: consecutive points, longest cycles first."""
    cycles = []
    start = 0
    for k, j in sorted(ct.parts, reverse=True):
        for _ in range(j):
            cycles.append(tuple(range(start, start + k)))
            start += k
    return Permutation.from_cycles(cycles, ct.n)


def symmetric_class_reps(n: int) -> list[tuple[CycleType, int]]:
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for lam in partitions(n):
        ct = CycleType(n, tuple(Counter(lam).items()))
        out.append((ct, class_size(ct)))
    return out


class FiniteGroup:
    """A permutation group of degree ``n`` given by generators.

    ``classes`` optionally lists ``(representative, size)`` pairs covering the
    group, every member of a pair sharing the representative's cycle type.
    When present, cycle-type statistics come from it and the element list is
    only built if someone asks for it.
    """

    def __init__(
        self,
        n: int,
        generators: Sequence[Permutation] = (),
        *,
        elements: Sequence[Permutation] | None = None,
        classes: Sequence[tuple[Permutation, int]] | None = None,
        order: int | None = None,
        element_cap: int = DEFAULT_ELEMENT_CAP,
        name: str | None = None,
    ):
        for g in generators:
            if g.n != n:
                raise ValueError(f"generator {g} has degree {g.n}, expected {n}")
        self.n = n
        self.generators = tuple(generators)
        self.element_cap = element_cap
        self.name = name
        self.classes = tuple(classes) if classes is not None else None
        if elements is not None:
            self.__dict__["elements"] = tuple(sorted(elements))
        if order is None:
            if self.classes is not None:
                order = sum(size for _, size in self.classes)
            else:
                order = len(self.elements)
        self.order = order

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"FiniteGroup({label}, n={self.n}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return _closure(self.n, self.generators, self.element_cap)

    @property
    def is_materialized(self) -> bool:
        return "elements" in self.__dict__

    @cached_property
    def cycle_type_weights(self) -> dict[CycleType, int]:
        """Number of group elements of each cycle type (the cycle index, unnormalized)."""
        weights: Counter[CycleType] = Counter()
        if self.classes is not None:
            for rep, size in self.classes:
                weights[cycle_type(rep)] += size
        else:
            for g in self.elements:
                weights[cycle_type(g)] += 1
        return dict(sorted(weights.items(), key=lambda kv: (kv[0].support, kv[0].parts)))

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)


def _closure(n: int, gens: Sequence[Permutation], cap: int) -> tuple[Permutation, ...]:
    ident = tuple(range(n))
    gen_tables = [g.image for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gen_tables:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLarge(cap)
                queue.append(y)
    return tuple(Permutation(t) for t in sorted(seen))


def generate_group(
    gens: Sequence[Permutation],
    n: int | None = None,
    cap: int = DEFAULT_ELEMENT_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Materialize the group generated by ``gens`` (BFS closure, sorted elements)."""
    if n is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        n = gens[0].n
    elements = _closure(n, gens, cap)
    if n <= 12 and math.factorial(n) % len(elements):
        raise AssertionError(f"closure of order {len(elements)} does not divide {n}!")
    return FiniteGroup(n, gens, elements=elements, element_cap=cap, name=name)
