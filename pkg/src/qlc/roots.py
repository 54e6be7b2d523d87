"""ADE root types, sets of singularities, and their discriminant data.

A set of singularities is a multiset of irreducible root types A_n (n >= 1),
D_m (m >= 4), E_6, E_7, E_8.  This module knows their discriminant forms,
enumerates all sets up to a given total rank, computes perturbations
(induced subgraphs of the Dynkin graph) and produces generator images of
O(S) acting on the discriminant of the transcendental side.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fqf import FiniteQuadraticForm, direct_sum, make_cyclic, U, V

_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


@dataclass(frozen=True, order=True)
class RootType:
    family: str  # 'A', 'D' or 'E'
    index: int

    def __post_init__(self):
        ok = (self.family == "A" and self.index >= 1) or \
             (self.family == "D" and self.index >= 4) or \
             (self.family == "E" and self.index in (6, 7, 8))
        if not ok:
            raise ValueError(f"no root type {self.family}{self.index}")

    @property
    def rank(self) -> int:
        return self.index

    def __str__(self):
        return f"{self.family}{self.index}"


def disc_form(t: RootType) -> FiniteQuadraticForm:
    """Discriminant form of the (negative definite) root lattice of type t."""
    n = t.index
    if t.family == "A":
        return make_cyclic(-n, n + 1)
    if t.family == "E":
        if n == 6:
            return make_cyclic(2, 3)
        if n == 7:
            return make_cyclic(1, 2)
        return FiniteQuadraticForm()
    if n % 2 == 1:
        return make_cyclic(-n, 4)
    if n % 8 == 0:
        return U(2)
    if n % 8 == 4:
        return V(2)
    if n % 8 == 2:
        return direct_sum(make_cyclic(-1, 2), make_cyclic(-1, 2))
    return direct_sum(make_cyclic(1, 2), make_cyclic(1, 2))  # m = 6 mod 8


class SingularitySet:
    """Canonically ordered multiset of root types."""

    def __init__(self, components):
        key = lambda t: (_FAMILY_ORDER[t.family], -t.index)
        self.components = tuple(sorted(components, key=key))
        self.mu = sum(t.rank for t in self.components)

    def __eq__(self, other):
        return isinstance(other, SingularitySet) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"SingularitySet({format_set(self)!r})"

    def __str__(self):
        return format_set(self)

    def counts(self) -> list[tuple[RootType, int]]:
        out: list[tuple[RootType, int]] = []
        for t in self.components:
            if out and out[-1][0] == t:
                out[-1] = (t, out[-1][1] + 1)
            else:
                out.append((t, 1))
        return out

    def disc(self) -> FiniteQuadraticForm:
        return direct_sum(*(disc_form(t) for t in self.components)) \
            if self.components else FiniteQuadraticForm()

    def contains_type(self, family: str, index: int) -> bool:
        return RootType(family, index) in self.components


_TERM = re.compile(r"^(\d*)([ADE])(\d+)$")


def parse_set(text: str) -> SingularitySet:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty set of singularities")
    comps = []
    for tok in s.split("+"):
        m = _TERM.match(tok)
        if not m:
            raise ValueError(f"malformed term {tok!r}")
        count = int(m.group(1)) if m.group(1) else 1
        if count < 1:
            raise ValueError(f"bad multiplicity in {tok!r}")
        t = RootType(m.group(2), int(m.group(3)))
        comps.extend([t] * count)
    return SingularitySet(comps)


def format_set(s: SingularitySet) -> str:
    parts = []
    for t, c in s.counts():
        parts.append(f"{c}{t}" if c > 1 else str(t))
    return "+".join(parts)


def all_types(rank_max: int) -> list[RootType]:
    out = [RootType("A", n) for n in range(1, rank_max + 1)]
    out += [RootType("D", n) for n in range(4, rank_max + 1)]
    out += [RootType("E", n) for n in (6, 7, 8) if n <= rank_max]
    return sorted(out, key=lambda t: (_FAMILY_ORDER[t.family], -t.index))


def enumerate_sets(mu_max: int):
    """All nonempty multisets of root types with total rank <= mu_max,
    each exactly once, in a deterministic order."""
    if not 1 <= mu_max <= 19:
        raise ValueError("mu_max must be in [1, 19]")
    types = all_types(mu_max)

    def rec(i, remaining, chosen):
        if chosen:
            yield SingularitySet(chosen)
        for j in range(i, len(types)):
            t = types[j]
            if t.rank <= remaining:
                chosen.append(t)
                yield from rec(j, remaining - t.rank, chosen)
                chosen.pop()

    yield from rec(0, mu_max, [])


# -- Dynkin graphs and perturbations ---------------------------------------


def _dynkin_edges(t: RootType) -> list[tuple[int, int]]:
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if t.family == "D":
        # path 0..n-2 plus node n-1 attached at node 1: legs (1, 1, n-3)
        return [(i, i + 1) for i in range(n - 2)] + [(1, n - 1)]
    # E_n: path 0..n-2 plus node n-1 attached at node 2: legs (1, 2, n-4)
    return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]


def _classify_connected(nodes, adj) -> RootType:
    n = len(nodes)
    branch = [v for v in nodes if len(adj[v] & nodes) == 3]
    if not branch:
        return RootType("A", n)
    legs = []
    for w in adj[branch[0]] & nodes:
        length, prev, cur = 1, branch[0], w
        while True:
            nxt = (adj[cur] & nodes) - {prev}
            if not nxt:
                break
            prev, cur = cur, nxt.pop()
            length += 1
        legs.append(length)
    legs.sort()
    if legs[:2] == [1, 1]:
        return RootType("D", n)
    if legs[:2] == [1, 2]:
        return RootType("E", n)
    raise ValueError(f"not an ADE diagram: legs {legs}")


@lru_cache(maxsize=None)
def component_perturbations(t: RootType) -> frozenset:
    """All multisets of root types arising as induced subgraphs of the
    Dynkin graph of t (including the empty one), as sorted tuples."""
    n = t.rank
    adj = {i: set() for i in range(n)}
    for a, b in _dynkin_edges(t):
        adj[a].add(b)
        adj[b].add(a)
    results = set()
    for mask in range(1 << n):
        nodes = {i for i in range(n) if mask >> i & 1}
        comps = []
        left = set(nodes)
        while left:
            stack = [left.pop()]
            comp = set(stack)
            while stack:
                v = stack.pop()
                for w in adj[v] & nodes:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            comps.append(_classify_connected(comp, adj))
        results.add(tuple(sorted(comps)))
    return frozenset(results)


def perturbations(s: SingularitySet) -> set[SingularitySet]:
    """All nonempty sets whose Dynkin graph is an induced subgraph of s's."""
    options = [sorted(component_perturbations(t)) for t in s.components]
    out = set()
    for combo in itertools.product(*options):
        comps = [t for part in combo for t in part]
        if comps:
            out.add(SingularitySet(comps))
    return out


# -- generator images of O(S) on the transcendental discriminant -----------
#
# O(root lattice) = Weyl group extended by diagram symmetries and, for D_n,
# single sign flips; the Weyl group acts trivially on the discriminant.
# Each generator carries
#   * local reflection data: (prime, t) pairs with t = v^2/2 for an explicit
#     vector v in a Jordan model of the transcendental lattice, and
#   * its action on transcendental discriminant coordinates, as tagged ops
#     ("neg", chunk) / ("mat", chunk, rows) / ("swap", chunk_i, chunk_j),
#     where rows[b] gives the image coordinates of chunk generator b.


@dataclass(frozen=True)
class DiscGenerator:
    label: str
    reflections: tuple  # ((prime, Fraction), ...)
    action: tuple  # tagged coordinate operations, see above


def _cyclic_blocks_of(form: FiniteQuadraticForm):
    return [(b.p, b.k, b.m) for b in form.blocks if b.kind == "c"]


def component_symmetry(t: RootType, i: int, tchunk: FiniteQuadraticForm):
    """Image of the diagram symmetry of component #i, or None if trivial."""
    if t.family == "A" and t.index >= 2 or (t.family == "E" and t.index == 6) \
            or (t.family == "D" and t.index % 2 == 1):
        refl = tuple((p, Fraction(p**k * m, 2)) for (p, k, m) in _cyclic_blocks_of(tchunk))
        return DiscGenerator(f"sym {t}", refl, (("neg", i),))
    if t.family == "D" and t.index % 2 == 0 and t.index != 4:
        b = tchunk.blocks[0]
        if b.kind == "U":
            refl = ((2, Fraction(2)),)
        elif b.kind == "V":
            refl = ((2, Fraction(6)),)
        else:
            refl = ((2, Fraction(2 * b.m)),)
        return DiscGenerator(f"sym {t}", refl, (("mat", i, ((0, 1), (1, 0))),))
    return None


def osg_images(s: SingularitySet) -> list[DiscGenerator]:
    """Generators for the image of O(S) in Aut of the transcendental
    discriminant -(disc S + <1/4>)."""
    gens = []
    comps = s.components
    tdisc = [disc_form(t).negated() for t in comps]

    for i, t in enumerate(comps):
        if t == RootType("D", 4):
            # the full S3 on V(2): two transpositions of its nonzero elements
            gens.append(DiscGenerator("sym D4", ((2, Fraction(6)),),
                                      (("mat", i, ((0, 1), (1, 0))),)))
            gens.append(DiscGenerator("sym D4'", ((2, Fraction(2)),),
                                      (("mat", i, ((1, 0), (1, 1))),)))
            continue
        g = component_symmetry(t, i, tdisc[i])
        if g is not None:
            gens.append(g)

    done = set()
    for i, t in enumerate(comps):
        if t in done:
            continue
        js = [j for j in range(len(comps)) if comps[j] == t]
        if len(js) >= 2:
            done.add(t)
            i0, j0 = js[0], js[1]
            form = tdisc[i0]
            if not form.blocks:
                continue  # e.g. a pair of E8 components
            refl = [(p, Fraction(p**k * m)) for (p, k, m) in _cyclic_blocks_of(form)]
            for b in form.blocks:
                if b.kind == "U":
                    refl += [(2, Fraction(4)), (2, Fraction(-4))]
                elif b.kind == "V":
                    refl += [(2, Fraction(12)), (2, Fraction(4))]
            gens.append(DiscGenerator(f"{t}<->{t}", tuple(refl), (("swap", i0, j0),)))
    return gens
