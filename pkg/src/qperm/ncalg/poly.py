"""Noncommutative polynomials in the generators ``a(i,j)`` over several
tensor legs.

A *word* is a tuple of legs; a leg is a tuple of generators ``(i, j)``
(one-based), the empty leg being the unit. A polynomial maps words to
nonzero :class:`QQi` coefficients.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

from qperm.errors import StructuralError
from qperm.ncalg.coeff import QQi

Generator = tuple[int, int]
Leg = tuple[Generator, ...]
Word = tuple[Leg, ...]


def word_key(word: Word):
    return (sum(len(leg) for leg in word), word)


class NCPolynomial:
    def __init__(self, n: int, legs: int, terms: Union[Mapping[Word, object], Iterable] = ()):
        if n < 1 or legs < 1:
            raise StructuralError("n and legs must be positive")
        self.n = n
        self.legs = legs
        acc: dict[Word, QQi] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, c in items:
            word = tuple(tuple((int(i), int(j)) for i, j in leg) for leg in word)
            self._check_word(word)
            acc[word] = acc.get(word, QQi()) + QQi.coerce(c)
        self._terms = {w: acc[w] for w in sorted(acc, key=word_key) if acc[w]}

    def _check_word(self, word: Word) -> None:
        if len(word) != self.legs:
            raise StructuralError(f"word has {len(word)} legs, polynomial has {self.legs}")
        for leg in word:
            for i, j in leg:
                if not (1 <= i <= self.n and 1 <= j <= self.n):
                    raise StructuralError(f"generator a({i},{j}) outside 1..{self.n}")

    @classmethod
    def zero(cls, n: int, legs: int = 1) -> "NCPolynomial":
        return cls(n, legs)

    @classmethod
    def unit(cls, n: int, legs: int = 1, coeff: object = 1) -> "NCPolynomial":
        return cls(n, legs, {((),) * legs: coeff})

    @classmethod
    def gen(cls, n: int, i: int, j: int, legs: int = 1, leg: int = 0) -> "NCPolynomial":
        word = tuple(((i, j),) if k == leg else () for k in range(legs))
        return cls(n, legs, {word: 1})

    @property
    def terms(self) -> Mapping[Word, QQi]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, QQi]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def size(self) -> int:
        """Total number of generator occurrences over all terms."""
        return sum(sum(len(leg) for leg in w) for w in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _same_shape(self, other: "NCPolynomial") -> None:
        if self.n != other.n or self.legs != other.legs:
            raise StructuralError(
                f"shape mismatch: (n={self.n}, legs={self.legs}) vs "
                f"(n={other.n}, legs={other.legs})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return (self.n, self.legs, self._terms) == (other.n, other.legs, other._terms)

    def __hash__(self) -> int:
        return hash((self.n, self.legs, tuple(self._terms.items())))

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        self._same_shape(other)
        return NCPolynomial(self.n, self.legs, list(self.items()) + list(other.items()))

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(self.n, self.legs, {w: -c for w, c in self.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def scale(self, c: object) -> "NCPolynomial":
        c = QQi.coerce(c)
        return NCPolynomial(self.n, self.legs, {w: c * v for w, v in self.items()})

    def __mul__(self, other: object) -> "NCPolynomial":
        """Legwise product (concatenation of each leg's word)."""
        if not isinstance(other, NCPolynomial):
            return self.scale(other)
        self._same_shape(other)
        out = []
        for (w1, c1), (w2, c2) in product(self.items(), other.items()):
            out.append((tuple(a + b for a, b in zip(w1, w2)), c1 * c2))
        return NCPolynomial(self.n, self.legs, out)

    def __rmul__(self, other: object) -> "NCPolynomial":
        return self.scale(other)

    def tensor(self, other: "NCPolynomial") -> "NCPolynomial":
        if self.n != other.n:
            raise StructuralError("tensor product needs equal n")
        out = [(w1 + w2, c1 * c2) for (w1, c1), (w2, c2) in product(self.items(), other.items())]
        return NCPolynomial(self.n, self.legs + other.legs, out)

    def adjoint(self) -> "NCPolynomial":
        """Conjugate coefficients and reverse every leg; generators are
        self-adjoint."""
        return NCPolynomial(self.n, self.legs, {
            tuple(leg[::-1] for leg in w): c.conjugate() for w, c in self.items()})

    def __str__(self) -> str:
        from qperm.ncalg.parser import format_polynomial
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"NCPolynomial(n={self.n}, legs={self.legs}, {str(self)!r})"


def comultiply_leg(p: NCPolynomial, leg: int) -> NCPolynomial:
    """Apply ``a(i,j) -> sum_k a(i,k) # a(k,j)`` to one leg, producing a
    polynomial with one more leg. The comultiplication is multiplicative, so a
    leg word ``g_1 ... g_r`` expands into ``n**r`` words."""
    if not 0 <= leg < p.legs:
        raise StructuralError(f"leg {leg} outside 0..{p.legs - 1}")
    n = p.n
    out = []
    for word, c in p.items():
        gens = word[leg]
        for ks in product(range(1, n + 1), repeat=len(gens)):
            left = tuple((i, k) for (i, _), k in zip(gens, ks))
            right = tuple((k, j) for (_, j), k in zip(gens, ks))
            out.append((word[:leg] + (left, right) + word[leg + 1:], c))
    return NCPolynomial(n, p.legs + 1, out)


def row_sum(n: int, i: int) -> NCPolynomial:
    return NCPolynomial(n, 1, {(((i, j),),): 1 for j in range(1, n + 1)})


def column_sum(n: int, j: int) -> NCPolynomial:
    return NCPolynomial(n, 1, {(((i, j),),): 1 for i in range(1, n + 1)})


def evaluate(p: NCPolynomial, u) -> np.ndarray:
    """Substitute ``u.entry(i, j)`` for ``a(i,j)``: matrix products within a
    leg, Kronecker products across legs. Returns a ``d**legs`` square matrix."""
    if p.n != u.n:
        raise StructuralError(f"polynomial has n={p.n}, magic unitary has n={u.n}")
    d = u.d
    eye = np.eye(d, dtype=complex)
    e = u.entries
    size = d ** p.legs
    total = np.zeros((size, size), dtype=complex)
    for word, c in p.items():
        m = None
        for leg in word:
            f = eye
            for i, j in leg:
                f = f @ e[i - 1, j - 1]
            m = f if m is None else np.kron(m, f)
        total += complex(c) * m
    return total
