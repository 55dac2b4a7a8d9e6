"""Concrete permutation groups: symmetric, alternating, cyclic, dihedral,
induced actions of a group on l-subsets, and GL(d, q) / AGL(d, q) acting on
F_q^d.

Vectors of F_q^d are numbered least-significant coordinate first:
``v = (v_0, ..., v_{d-1})`` has index ``sum v_i q^i``.  The l-subsets of a
base domain are numbered in ``itertools.combinations`` order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .perm import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    GroupTooLarge,
    Permutation,
    class_representative,
    generate_group,
    parse_cycles,
    symmetric_class_reps,
)

# Coefficients, constant term first.
IRREDUCIBLES = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
}


@dataclass(frozen=True)
class LabeledDomain:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


class FieldSpec:
    """GF(q) for a prime power q <= 16, elements encoded as ints 0..q-1.

    An element ``sum a_i p^i`` stands for the polynomial ``sum a_i x^i``
    reduced modulo the fixed irreducible of degree e.
    """

    def __init__(self, q: int):
        pe = _prime_power(q)
        if pe is None or q > 16:
            raise ValueError(f"unsupported field size q={q} (prime powers up to 16)")
        self.q = q
        self.p, self.e = pe
        self.modulus = IRREDUCIBLES.get(q, (0, 1))
        self.add = [[self._encode([(a + b) % self.p for a, b in zip(self._digits(x), self._digits(y))])
                     for y in range(q)] for x in range(q)]
        self.mul = [[self._poly_mul(x, y) for y in range(q)] for x in range(q)]
        self.neg = [self._encode([(-a) % self.p for a in self._digits(x)]) for x in range(q)]
        self.inv = [None] + [next(y for y in range(1, q) if self.mul[x][y] == 1) for x in range(1, q)]
        self.primitive = self._find_primitive()
        self.check_axioms()

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _poly_mul(self, x: int, y: int) -> int:
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * self.e - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % self.p
        mod = self.modulus
        for top in range(len(prod) - 1, self.e - 1, -1):
            c = prod[top]
            if c:
                for i, mi in enumerate(mod):
                    prod[top - self.e + i] = (prod[top - self.e + i] - c * mi) % self.p
        return self._encode(prod[: self.e])

    def _find_primitive(self) -> int:
        for g in range(1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul[x][g]
                order += 1
            if order == self.q - 1:
                return g
        raise AssertionError("no primitive element")

    def check_axioms(self) -> None:
        q, add, mul = self.q, self.add, self.mul
        elems = range(q)
        for x in elems:
            if add[x][0] != x or mul[x][1] != x or add[x][self.neg[x]] != 0:
                raise AssertionError(f"GF({q}): identity/negation fails at {x}")
            if x and mul[x][self.inv[x]] != 1:
                raise AssertionError(f"GF({q}): no inverse for {x}")
            for y in elems:
                if add[x][y] != add[y][x] or mul[x][y] != mul[y][x]:
                    raise AssertionError(f"GF({q}): not commutative")
                for z in elems:
                    if add[add[x][y]][z] != add[x][add[y][z]]:
                        raise AssertionError(f"GF({q}): addition not associative")
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                        raise AssertionError(f"GF({q}): multiplication not associative")
                    if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                        raise AssertionError(f"GF({q}): not distributive")


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    return FieldSpec(q)


def vector_domain(d: int, q: int) -> LabeledDomain:
    return LabeledDomain(tuple("(" + ",".join(map(str, v)) + ")" for v in _vectors(d, q)))


def _vectors(d: int, q: int) -> list[tuple[int, ...]]:
    return [tuple(reversed(v)) for v in product(range(q), repeat=d)]


def _vec_index(v: Sequence[int], q: int) -> int:
    return sum(x * q**i for i, x in enumerate(v))


def affine_permutation(F: FieldSpec, A: Sequence[Sequence[int]], t: Sequence[int]) -> Permutation:
    """The map ``v -> A v + t`` on F_q^d as a permutation of vector indices."""
    d = len(A)
    image = []
    for v in _vectors(d, F.q):
        w = []
        for i in range(d):
            acc = t[i]
            for j in range(d):
                acc = F.add[acc][F.mul[A[i][j]][v[j]]]
            w.append(acc)
        image.append(_vec_index(w, F.q))
    return Permutation(tuple(image))


def gl_order(d: int, q: int) -> int:
    return math.prod(q**d - q**j for j in range(d))


def agl_order(d: int, q: int) -> int:
    return q**d * gl_order(d, q)


def _gl_generators(F: FieldSpec, d: int) -> list[Permutation]:
    eye = [[int(i == j) for j in range(d)] for i in range(d)]
    zero = [0] * d
    scale = [row[:] for row in eye]
    scale[0][0] = F.primitive
    gens = [affine_permutation(F, scale, zero)]
    if d >= 2:
        transvection = [row[:] for row in eye]
        transvection[0][1] = 1
        cyc = [[int(j == (i + 1) % d) for j in range(d)] for i in range(d)]
        gens += [affine_permutation(F, transvection, zero), affine_permutation(F, cyc, zero)]
    return [g for g in gens if not g.is_identity()]


def _check_degree(n: int, cap: int) -> None:
    if n > cap:
        raise GroupTooLarge(cap, "domain")


def make_GL(d: int, q: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if d < 1:
        raise ValueError("d must be >= 1")
    F = field(q)
    _check_degree(q**d, cap)
    G = generate_group(_gl_generators(F, d), n=q**d, cap=cap, name=f"GL:{d},{q}")
    if G.order != gl_order(d, q):
        raise AssertionError(f"GL({d},{q}) closure has order {G.order}, expected {gl_order(d, q)}")
    return G


def make_AGL(d: int, q: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if d < 1:
        raise ValueError("d must be >= 1")
    F = field(q)
    _check_degree(q**d, cap)
    eye = [[int(i == j) for j in range(d)] for i in range(d)]
    translation = affine_permutation(F, eye, [1] + [0] * (d - 1))
    G = generate_group(_gl_generators(F, d) + [translation], n=q**d, cap=cap, name=f"AGL:{d},{q}")
    if G.order != agl_order(d, q):
        raise AssertionError(f"AGL({d},{q}) closure has order {G.order}, expected {agl_order(d, q)}")
    return G


def _symmetric_gens(n: int) -> list[Permutation]:
    if n < 2:
        return []
    gens = [Permutation.from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return gens


def make_symmetric(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    classes = [(class_representative(ct), size) for ct, size in symmetric_class_reps(n)]
    return FiniteGroup(n, _symmetric_gens(n), classes=classes, element_cap=cap, name=f"S:{n}")


def make_alternating(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    # Split A_n classes share a cycle type, so S_n classes of even type suffice.
    classes = [(class_representative(ct), size) for ct, size in symmetric_class_reps(n) if ct.is_even()]
    return FiniteGroup(n, gens, classes=classes, element_cap=cap, name=f"A:{n}")


def make_cyclic(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = [Permutation.from_cycles([tuple(range(n))], n)] if n > 1 else []
    return generate_group(gens, n=n, cap=cap, name=f"C:{n}")


def make_dihedral(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return generate_group([rotation, reflection], n=n, cap=cap, name=f"D:{n}")


def ksubset_domain(n: int, ell: int) -> LabeledDomain:
    return LabeledDomain(tuple("{" + ",".join(map(str, s)) + "}" for s in combinations(range(n), ell)))


def induced_permutation(sigma: Permutation, ell: int, index: dict[tuple[int, ...], int] | None = None) -> Permutation:
    """The permutation ``S -> sigma(S)`` of the l-subsets of sigma's domain."""
    subsets = list(combinations(range(sigma.n), ell))
    if index is None:
        index = {s: i for i, s in enumerate(subsets)}
    img = sigma.image
    return Permutation(tuple(index[tuple(sorted(img[x] for x in s))] for s in subsets))


def induced_on_ksubsets(base: FiniteGroup, ell: int, cap: int | None = None) -> FiniteGroup:
    """Image of ``base`` in Sym(X_l), X the base domain."""
    n = base.n
    if not 2 <= ell <= n - 1:
        raise ValueError(f"l={ell} outside 2..{n - 1}")
    cap = base.element_cap if cap is None else cap
    degree = math.comb(n, ell)
    _check_degree(degree, cap)
    index = {s: i for i, s in enumerate(combinations(range(n), ell))}

    def lift(p: Permutation) -> Permutation:
        return induced_permutation(p, ell, index)

    gens = [lift(g) for g in base.generators]
    name = f"{base.name}^{ell}" if base.name else None
    if base.classes is not None:
        classes = [(lift(rep), size) for rep, size in base.classes]
        if any(lifted.is_identity() != rep.is_identity() for (rep, _), (lifted, _) in zip(base.classes, classes)):
            raise AssertionError("induced action is not faithful")
        return FiniteGroup(degree, gens, classes=classes, order=base.order, element_cap=cap, name=name)
    elements = [lift(g) for g in base.elements]
    if len(set(elements)) != len(elements):
        raise AssertionError("induced action is not faithful")
    return FiniteGroup(degree, gens, elements=elements, element_cap=cap, name=name)


def make_induced_symmetric(n: int, ell: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """S_n acting on the l-subsets of an n-set, built from class representatives."""
    G = induced_on_ksubsets(make_symmetric(n, cap), ell, cap)
    G.name = f"S:{n}^{ell}"
    return G


@dataclass(frozen=True)
class GroupSpec:
    """Parsed group specification string, e.g. ``S:5^2`` or ``AGL:2,3``."""

    family: str
    args: tuple[int, ...]
    text: str
    generators: tuple[Permutation, ...] = ()

    @property
    def affine(self) -> tuple[int, int] | None:
        """``(d, q)`` when the group is a subgroup of AGL(d, q) in its natural action."""
        return self.args if self.family in ("AGL", "GL") else None

    def build(self, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
        f, a = self.family, self.args
        if f == "S":
            G = make_symmetric(a[0], cap) if len(a) == 1 else make_induced_symmetric(a[0], a[1], cap)
        elif f == "A":
            G = make_alternating(a[0], cap)
        elif f == "C":
            G = make_cyclic(a[0], cap)
        elif f == "D":
            G = make_dihedral(a[0], cap)
        elif f == "GL":
            G = make_GL(*a, cap=cap)
        elif f == "AGL":
            G = make_AGL(*a, cap=cap)
        else:
            G = generate_group(list(self.generators), n=a[0], cap=cap)
        G.name = self.text
        return G


_SPEC_RE = re.compile(r"^(S|A|C|D):(\d+)(?:\^(\d+))?$|^(GL|AGL):(\d+),(\d+)$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``S:n``, ``A:n``, ``C:n``, ``D:n``, ``S:n^l``, ``GL:d,q``, ``AGL:d,q``
    or ``gens:<cycles>;<cycles>;...``.

    For ``gens:`` the degree is one more than the largest point mentioned;
    write ``gens@n:...`` to fix it explicitly.
    """
    text = text.strip()
    gm = re.match(r"^gens(?:@(\d+))?:(.*)$", text, re.S)
    if gm:
        parts = [s for s in gm.group(2).split(";") if s.strip()]
        cycles = [parse_cycles(s) for s in parts]
        top = max((x for cs in cycles for c in cs for x in c), default=-1) + 1
        n = int(gm.group(1)) if gm.group(1) else top
        if n < top or n < 1:
            raise ValueError(f"degree {n} too small for generators in {text!r}")
        gens = tuple(Permutation.from_cycles(cs, n) for cs in cycles)
        return GroupSpec("gens", (n,), text, gens)
    m = _SPEC_RE.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"unrecognized group spec {text!r}")
    if m.group(1):
        family, n = m.group(1), int(m.group(2))
        if m.group(3):
            if family != "S":
                raise ValueError("induced action '^l' is only supported for S:n")
            return GroupSpec("S", (n, int(m.group(3))), text)
        return GroupSpec(family, (n,), text)
    return GroupSpec(m.group(4), (int(m.group(5)), int(m.group(6))), text)
