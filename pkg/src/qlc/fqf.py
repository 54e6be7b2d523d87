"""Exact arithmetic on finite quadratic forms.

A finite quadratic form is a finite abelian group L with a map
q: L -> Q/2Z satisfying q(x+y) = q(x) + q(y) + 2b(x,y) and q(nx) = n^2 q(x),
where b: L x L -> Q/Z is the symmetric bilinear form determined by q.

Forms are stored as orthogonal sums of indecomposable prime-power blocks:

* ``Cyclic(p, k, m)``  -- the form <m/p^k> on Z/p^k, q(g) = m/p^k mod 2Z;
* ``U(2^k)``           -- rank two, Gram matrix [[0, 1/2^k], [1/2^k, 0]];
* ``V(2^k)``           -- rank two, Gram [[1/2^(k-1), 1/2^k], [1/2^k, 1/2^(k-1)]].

All values are exact fractions; everything here is immutable and pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

AUT_SEARCH_CAP = 10_000


class FqfError(ValueError):
    pass


def _mod2(x: Fraction) -> Fraction:
    """Reduce a rational into [0, 2)."""
    n, d = x.numerator, x.denominator
    return Fraction(n % (2 * d), d)


def _mod1(x: Fraction) -> Fraction:
    n, d = x.numerator, x.denominator
    return Fraction(n % d, d)


@dataclass(frozen=True, order=True)
class Block:
    """One indecomposable block.  kind is 'c' (cyclic), 'U' or 'V'."""

    p: int
    k: int
    kind: str
    m: int = 0  # cyclic numerator, 0 <= m < 2*p^k, gcd(m, p) = 1

    def __post_init__(self):
        if self.kind == "c":
            n = self.p**self.k
            if gcd(self.m, n) != 1 or self.m % (2 * n) != self.m or (self.m * n) % 2 != 0:
                raise FqfError(f"bad cyclic block <{self.m}/{n}>")
        elif self.kind in ("U", "V"):
            if self.p != 2 or self.k < 1 or self.m != 0:
                raise FqfError("U/V blocks live over 2^k, k >= 1")
        else:
            raise FqfError(f"unknown block kind {self.kind!r}")

    @property
    def order(self) -> int:
        n = self.p**self.k
        return n if self.kind == "c" else n * n

    @property
    def ngens(self) -> int:
        return 1 if self.kind == "c" else 2

    def gen_orders(self) -> tuple[int, ...]:
        n = self.p**self.k
        return (n,) if self.kind == "c" else (n, n)

    def q(self, coords: tuple[int, ...]) -> Fraction:
        n = self.p**self.k
        if self.kind == "c":
            return _mod2(Fraction(self.m * coords[0] * coords[0], n))
        x, y = coords
        if self.kind == "U":
            return _mod2(Fraction(2 * x * y, n))
        return _mod2(Fraction(2 * (x * x + x * y + y * y), n))

    def negated(self) -> "Block":
        if self.kind == "c":
            n = self.p**self.k
            return Block(self.p, self.k, "c", (2 * n - self.m) % (2 * n))
        if self.k == 1:
            # -U(2) ~ U(2) and -V(2) ~ V(2): all values lie in Z/2Z
            return self
        if self.kind == "U":
            return self  # (x, y) -> (x, -y) is an isometry onto the negation
        raise FqfError("negation of V(2^k), k >= 2, is not implemented")

    def text(self) -> str:
        if self.kind == "c":
            n = self.p**self.k
            m = self.m if self.m <= n else self.m - 2 * n  # shortest signed rep
            return f"{m}/{n}"
        return f"{self.kind}({2**self.k})"


class FiniteQuadraticForm:
    """Orthogonal sum of blocks, canonically sorted.  Hashable and immutable."""

    def __init__(self, blocks=()):
        self.blocks = tuple(sorted(blocks))
        self._elements = None
        self._index = None

    def __eq__(self, other):
        return isinstance(other, FiniteQuadraticForm) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"FQF({format_form(self)!r})"

    @property
    def order(self) -> int:
        return prod(b.order for b in self.blocks) if self.blocks else 1

    def gen_orders(self) -> tuple[int, ...]:
        return tuple(o for b in self.blocks for o in b.gen_orders())

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.gen_orders())

    def primes(self) -> list[int]:
        return sorted({b.p for b in self.blocks})

    def p_part(self, p: int) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(b for b in self.blocks if b.p == p)

    def negated(self) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(b.negated() for b in self.blocks)

    # -- elementwise arithmetic -------------------------------------------

    def _chunks(self):
        i = 0
        for b in self.blocks:
            yield b, i
            i += b.ngens

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % o for a, b, o in zip(x, y, self.gen_orders()))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % o for a, o in zip(x, self.gen_orders()))

    def smul(self, n: int, x) -> tuple[int, ...]:
        return tuple((n * a) % o for a, o in zip(x, self.gen_orders()))

    def q(self, x) -> Fraction:
        total = Fraction(0)
        for b, i in self._chunks():
            total += b.q(tuple(x[i : i + b.ngens]))
        return _mod2(total)

    def b(self, x, y) -> Fraction:
        val = self.q(self.add(x, y)) - self.q(x) - self.q(y)
        return _mod1(val / 2)

    def elem_order(self, x) -> int:
        n = 1
        for a, o in zip(x, self.gen_orders()):
            if a:
                n = n * (o // gcd(a, o)) // gcd(n, o // gcd(a, o))
        return n

    def elements(self) -> list[tuple[int, ...]]:
        if self._elements is None:
            ranges = [range(o) for o in self.gen_orders()]
            self._elements = list(itertools.product(*ranges)) if ranges else [()]
            self._index = {e: i for i, e in enumerate(self._elements)}
        return self._elements

    def index_of(self, x) -> int:
        self.elements()
        return self._index[x]

    def gens(self) -> list[tuple[int, ...]]:
        out = []
        n = len(self.gen_orders())
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(tuple(e))
        return out


def make_cyclic(m: int, n: int) -> FiniteQuadraticForm:
    """The form <m/n> on Z/n, split into prime-power blocks by CRT."""
    if n < 1:
        raise FqfError("order must be positive")
    if n == 1:
        return FiniteQuadraticForm()
    if gcd(m, n) != 1:
        raise FqfError(f"gcd({m},{n}) != 1")
    if (m * n) % 2 != 0:
        raise FqfError(f"{m}*{n} is odd")
    blocks = []
    rest = n
    p = 2
    while rest > 1:
        if rest % p == 0:
            k = 0
            while rest % p == 0:
                rest //= p
                k += 1
            pk = p**k
            c = n // pk
            # the p-component of the generator is c*g; q(c*g) = c*m/p^k
            blocks.append(Block(p, k, "c", (c * m) % (2 * pk)))
        p = 3 if p == 2 else p + 2
    return FiniteQuadraticForm(blocks)


def U(n: int) -> FiniteQuadraticForm:
    k = n.bit_length() - 1
    if 2**k != n:
        raise FqfError("U(n) requires n = 2^k")
    return FiniteQuadraticForm([Block(2, k, "U")])


def V(n: int) -> FiniteQuadraticForm:
    k = n.bit_length() - 1
    if 2**k != n:
        raise FqfError("V(n) requires n = 2^k")
    return FiniteQuadraticForm([Block(2, k, "V")])


def direct_sum(*forms: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(b for f in forms for b in f.blocks)


def min_generators(f: FiniteQuadraticForm, p: int | None = None) -> int:
    """l(f), or l_p(f) when a prime is given (U/V blocks count as two)."""
    if p is not None:
        return sum(b.ngens for b in f.blocks if b.p == p)
    return max((min_generators(f, q) for q in f.primes()), default=0)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise FqfError("legendre symbol of a multiple of p")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def brown(f: FiniteQuadraticForm) -> int:
    """Brown invariant in Z/8, by the closed per-block formulas."""
    total = 0
    for b in f.blocks:
        if b.kind == "U":
            continue
        if b.kind == "V":
            total += 4 * b.k
        elif b.p == 2:
            a = b.m
            total += a + b.k * (a * a - 1) // 2
        elif b.k % 2 == 1:
            a = b.m // 2  # m is even for odd p
            total += 2 * legendre(a, b.p) - legendre(-1, b.p) - 1
    return total % 8


def brown_gauss_sum(f: FiniteQuadraticForm) -> int:
    """Brown invariant straight from the Gauss sum; independent slow oracle."""
    import cmath

    s = sum(cmath.exp(1j * cmath.pi * float(f.q(x))) for x in f.elements())
    arg = cmath.phase(s) / (cmath.pi / 4)
    br = round(arg) % 8
    # the sum has modulus sqrt(|L|); fail loudly if numerics look off
    if abs(abs(s) - f.order**0.5) > 1e-6 or abs(arg - round(arg)) > 1e-6:
        raise FqfError("degenerate or numerically unstable Gauss sum")
    return br


def is_even(f: FiniteQuadraticForm) -> bool:
    """True when q(x) is an integer for every element x of order <= 2."""
    f2 = f.p_part(2)
    orders = f2.gen_orders()
    halves = [(0, o // 2) for o in orders]
    for combo in itertools.product(*halves) if halves else [()]:
        if f2.q(tuple(combo)).denominator != 1:
            return False
    return True


def det_p(f: FiniteQuadraticForm, p: int):
    """The unit class u of det_p = u / |L_p|, together with |L_p|.

    For odd p the class is reported as the Legendre character of u (+1/-1);
    for p = 2 as the class of u in (Z/8)^* (requires an even 2-part).
    """
    fp = f.p_part(p)
    size = fp.order
    if p == 2:
        if not is_even(f):
            raise FqfError("undefined-2-adic-determinant: the 2-part is odd")
        u = 1
        for b in fp.blocks:
            if b.kind == "c":
                u = (u * b.m) % 8
            elif b.kind == "U":
                u = (u * 7) % 8
            else:
                u = (u * 3) % 8
        return u, size
    u = 1
    for b in fp.blocks:
        u *= legendre(b.m, p)
    return u, size


# -- generic brute-force isomorphism machinery ----------------------------
#
# These searches run per prime (automorphisms of L respect the p-primary
# splitting), which keeps them small for everything this package builds.


def _search_isometries(dom: FiniteQuadraticForm, cod: FiniteQuadraticForm, sign: int, first_only: bool):
    """All group isomorphisms A: dom -> cod with q(Ax) = sign * q(x).

    Returned as tuples of generator images.  Brute force with pruning on
    element order, q-value and pairwise b-values.
    """
    if dom.order != cod.order:
        return []
    if dom.order > AUT_SEARCH_CAP:
        raise FqfError(f"search cap exceeded: |L| = {dom.order} > {AUT_SEARCH_CAP}")
    gens = dom.gens()
    orders = dom.gen_orders()
    cod_elems = cod.elements()
    candidates = []
    for g, o in zip(gens, orders):
        qg = _mod2(sign * dom.q(g))
        cand = [e for e in cod_elems if cod.elem_order(e) == o and cod.q(e) == qg]
        candidates.append(cand)

    results = []
    images: list[tuple[int, ...]] = []

    def span_size(imgs):
        seen = {cod.zero()}
        for im in imgs:
            for s in list(seen):
                x = s
                while True:
                    x = cod.add(x, im)
                    if x in seen:
                        break
                    seen.add(x)
        return len(seen)

    def rec(i):
        if results and first_only:
            return
        if i == len(gens):
            # images must generate (then the hom is onto, hence bijective)
            if span_size(images) == cod.order:
                results.append(tuple(images))
            return
        g = gens[i]
        for e in candidates[i]:
            ok = True
            for j in range(i):
                want = _mod1(sign * dom.b(g, gens[j]))
                if cod.b(e, images[j]) != want:
                    ok = False
                    break
            if ok:
                images.append(e)
                rec(i + 1)
                images.pop()
                if results and first_only:
                    return

    rec(0)
    return results


class FqfMap:
    """A homomorphism dom -> cod given on generators; precomputes the
    full element permutation so that composition and hashing are cheap."""

    def __init__(self, dom: FiniteQuadraticForm, cod: FiniteQuadraticForm, gen_images):
        self.dom = dom
        self.cod = cod
        self.gen_images = tuple(gen_images)
        elems = dom.elements()
        table = []
        for x in elems:
            acc = cod.zero()
            for xi, im in zip(x, self.gen_images):
                if xi:
                    acc = cod.add(acc, cod.smul(xi, im))
            table.append(cod.index_of(acc))
        self.table = tuple(table)

    def __call__(self, x):
        return self.cod.elements()[self.table[self.dom.index_of(x)]]

    def __eq__(self, other):
        return self.table == other.table and self.dom is other.dom and self.cod is other.cod

    def __hash__(self):
        return hash(self.table)

    def compose(self, other: "FqfMap") -> "FqfMap":
        """self o other (apply other first)."""
        assert other.cod is self.dom
        m = FqfMap.__new__(FqfMap)
        m.dom, m.cod = other.dom, self.cod
        m.gen_images = tuple(self(other.cod.elements()[other.table[other.dom.index_of(g)]])
                             for g in other.dom.gens())
        m.table = tuple(self.table[t] for t in other.table)
        return m

    def inverse(self) -> "FqfMap":
        assert self.dom is self.cod
        inv = [0] * len(self.table)
        for i, t in enumerate(self.table):
            inv[t] = i
        m = FqfMap.__new__(FqfMap)
        m.dom, m.cod = self.dom, self.dom
        m.table = tuple(inv)
        elems = self.dom.elements()
        m.gen_images = tuple(elems[m.table[self.dom.index_of(g)]] for g in self.dom.gens())
        return m


def _per_prime_products(f: FiniteQuadraticForm, per_prime_maps):
    """Combine independent per-prime generator-image lists into FqfMaps on f."""
    primes = f.primes()
    gen_block = []  # (prime, local generator index) per generator of f
    per_prime_gen_count = {p: 0 for p in primes}
    for b in f.blocks:
        for _ in range(b.ngens):
            gen_block.append((b.p, per_prime_gen_count[b.p]))
            per_prime_gen_count[b.p] += 1
    parts = {p: f.p_part(p) for p in primes}
    # embed a p-part element into f
    positions = {p: [] for p in primes}
    i = 0
    for b in f.blocks:
        for _ in range(b.ngens):
            positions[b.p].append(i)
            i += 1
    n = len(f.gen_orders())

    out = []
    for combo in itertools.product(*[per_prime_maps[p] for p in primes]):
        images = []
        for p, j in gen_block:
            local = combo[primes.index(p)][j]
            full = [0] * n
            for pos, val in zip(positions[p], local):
                full[pos] = val
            images.append(tuple(full))
        out.append(FqfMap(f, f, images))
    return out


def aut_group(f: FiniteQuadraticForm) -> list[FqfMap]:
    """All automorphisms of f preserving q, as FqfMaps (product over primes)."""
    per_prime = {}
    for p in f.primes():
        fp = f.p_part(p)
        per_prime[p] = _search_isometries(fp, fp, +1, first_only=False)
    if not f.primes():
        return [FqfMap(f, f, [])]
    return _per_prime_products(f, per_prime)


def is_isometric(a: FiniteQuadraticForm, b: FiniteQuadraticForm):
    """Isometry witness a -> b, or None."""
    if a.order != b.order:
        return None
    for p in a.primes():
        if a.p_part(p).order != b.p_part(p).order:
            return None
    gen_images = {}
    for p in a.primes():
        found = _search_isometries(a.p_part(p), b.p_part(p), +1, first_only=True)
        if not found:
            return None
        gen_images[p] = found[0]
    return _assemble_witness(a, b, gen_images)


def is_anti_isometric(a: FiniteQuadraticForm, b: FiniteQuadraticForm):
    """Anti-isometry witness psi: a -> b with q_b(psi x) = -q_a(x), or None."""
    if a.order != b.order:
        return None
    for p in a.primes():
        if a.p_part(p).order != b.p_part(p).order:
            return None
    gen_images = {}
    for p in a.primes():
        found = _search_isometries(a.p_part(p), b.p_part(p), -1, first_only=True)
        if not found:
            return None
        gen_images[p] = found[0]
    return _assemble_witness(a, b, gen_images)


def _assemble_witness(a, b, gen_images_per_prime):
    primes = a.primes()
    positions_b = {p: [] for p in primes}
    i = 0
    for blk in b.blocks:
        for _ in range(blk.ngens):
            positions_b[blk.p].append(i)
            i += 1
    n_b = len(b.gen_orders())
    images = []
    counters = {p: 0 for p in primes}
    for blk in a.blocks:
        for _ in range(blk.ngens):
            local = gen_images_per_prime[blk.p][counters[blk.p]]
            counters[blk.p] += 1
            full = [0] * n_b
            for pos, val in zip(positions_b[blk.p], local):
                full[pos] = val
            images.append(tuple(full))
    return FqfMap(a, b, images)


# -- text form notation ----------------------------------------------------


def format_form(f: FiniteQuadraticForm) -> str:
    if not f.blocks:
        return "0"
    return "+".join(b.text() for b in f.blocks)


def parse_form(text: str) -> FiniteQuadraticForm:
    text = text.replace(" ", "")
    if text in ("0", ""):
        return FiniteQuadraticForm()
    parts = []
    for tok in text.split("+"):
        if tok.startswith("U(") and tok.endswith(")"):
            parts.append(U(int(tok[2:-1])))
        elif tok.startswith("V(") and tok.endswith(")"):
            parts.append(V(int(tok[2:-1])))
        elif "/" in tok:
            m, n = tok.split("/")
            parts.append(make_cyclic(int(m), int(n)))
        else:
            raise FqfError(f"cannot parse block {tok!r}")
    return direct_sum(*parts)
