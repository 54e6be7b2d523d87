"""Genus descriptors and the existence test for even lattices.

A genus of even lattices is a signature pair together with a finite
quadratic form; existence is decided by four exact arithmetic conditions
(rank versus number of generators, the Brown invariant, and determinant
congruences at the odd primes and at 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fqf import FiniteQuadraticForm, brown, det_p, direct_sum, is_even, legendre, make_cyclic, min_generators
from .roots import SingularitySet


@dataclass(frozen=True)
class GenusDescriptor:
    sig_plus: int
    sig_minus: int
    form: FiniteQuadraticForm

    @property
    def rank(self) -> int:
        return self.sig_plus + self.sig_minus

    @property
    def det(self) -> int:
        """Signed determinant of any lattice in the genus."""
        return (-1) ** self.sig_minus * self.form.order


def exists_even_lattice(g: GenusDescriptor) -> bool:
    """Whether an even lattice with this signature and discriminant exists."""
    f = g.form
    rank = g.rank
    if g.sig_plus < 0 or g.sig_minus < 0 or rank < min_generators(f):
        return False
    if (g.sig_plus - g.sig_minus) % 8 != brown(f):
        return False
    for p in f.primes():
        if p == 2:
            continue
        if rank > min_generators(f, p):
            continue
        u, size = det_p(f, p)
        rest = f.order // size  # prime to p
        want = legendre(((-1) ** g.sig_minus) * rest, p)
        if u != want:
            return False
    if 2 in f.primes():
        if rank > min_generators(f, 2):
            return True
        if not is_even(f.p_part(2)):
            return True
        u, size = det_p(f, 2)
        rest = (f.order // size) % 8
        if u != rest and u != (-rest) % 8:
            return False
    return True


def transcendental_genus(s: SingularitySet) -> GenusDescriptor:
    """Genus of the orthogonal complement of S + Zh (h^2 = 4) in the even
    unimodular lattice of signature (3, 19)."""
    if not 1 <= s.mu <= 19:
        raise ValueError(f"mu = {s.mu} out of range")
    form = direct_sum(s.disc(), make_cyclic(1, 4)).negated()
    return GenusDescriptor(2, 19 - s.mu, form)


def realizable_nonspecial(s: SingularitySet) -> bool:
    """Whether S occurs as the singularities of a non-special simple quartic."""
    return exists_even_lattice(transcendental_genus(s))
