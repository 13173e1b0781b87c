"""Normal forms and identity checking for the magic-unitary relations.

Per leg the rewrite rules are

* ``a(i,j) a(i,j) -> a(i,j)``           idempotence
* ``a(i,j) a(i,k) -> 0``  for ``j != k``  same-row orthogonality
* ``a(i,j) a(k,j) -> 0``  for ``i != k``  same-column orthogonality

The orthogonality rules are consequences of projections summing to the unit,
not defining relations. Row and column sums are not rules of the normal form;
:func:`check_identity` applies them as directed collapses.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from itertools import product
from typing import Optional

from qperm.errors import StructuralError
from qperm.ncalg.coeff import QQi
from qperm.ncalg.poly import Leg, NCPolynomial, Word, comultiply_leg
from qperm.report import CheckReport


def _reduce_leg(leg: Leg) -> tuple[Optional[Leg], int]:
    """Reduced leg (``None`` for zero) and the number of rule applications."""
    stack: list[tuple[int, int]] = []
    steps = 0
    for g in leg:
        if stack:
            top = stack[-1]
            if top == g:
                steps += 1
                continue
            if top[0] == g[0] or top[1] == g[1]:
                return None, steps + 1
        stack.append(g)
    return tuple(stack), steps


def normal_form_steps(p: NCPolynomial) -> tuple[NCPolynomial, int]:
    steps = 0
    out: list[tuple[Word, QQi]] = []
    for word, c in p.items():
        legs = []
        for leg in word:
            red, k = _reduce_leg(leg)
            steps += k
            if red is None:
                break
            legs.append(red)
        else:
            out.append((tuple(legs), c))
    return NCPolynomial(p.n, p.legs, out), steps


def normal_form(p: NCPolynomial) -> NCPolynomial:
    return normal_form_steps(p)[0]


def _find_collapse(p: NCPolynomial):
    """First full row or column sum, with equal coefficients and identical
    surrounding context, present in ``p``. Summands that vanish in that
    context may be absent."""
    n = p.n
    groups: dict[tuple, dict[int, tuple[Word, QQi]]] = defaultdict(dict)
    order: list[tuple] = []
    for word, c in p.items():
        for li, leg in enumerate(word):
            for pos, (i, j) in enumerate(leg):
                ctx = (li, leg[:pos], leg[pos + 1:], word[:li], word[li + 1:])
                for key, free in ((("row", i) + ctx, j), (("col", j) + ctx, i)):
                    if key not in groups:
                        order.append(key)
                    groups[key][free] = (word, c)
    for key in order:
        members = groups[key]
        coeffs = {c for _, c in members.values()}
        if len(coeffs) != 1:
            continue
        kind, fixed, li, pre, post = key[:5]
        missing = [f for f in range(1, n + 1) if f not in members]
        # a summand that the context already annihilates counts as present
        if all(_reduce_leg(pre + (((fixed, f) if kind == "row" else (f, fixed)),) + post)[0]
               is None for f in missing):
            return key, [w for w, _ in members.values()], coeffs.pop()
    return None


def collapse_sums(p: NCPolynomial, max_rounds: int = 10_000) -> tuple[NCPolynomial, int]:
    """Repeatedly replace full row/column sums by the unit and renormalize.

    Returns the final polynomial and the number of collapses applied.
    """
    p = normal_form(p)
    rounds = 0
    while rounds < max_rounds:
        found = _find_collapse(p)
        if found is None:
            break
        key, words, c = found
        li, pre, post, left, right = key[2:]
        ctx_word = left + (pre + post,) + right
        terms = dict(p.terms)
        for w in words:
            terms[w] = terms[w] - c
        terms[ctx_word] = terms.get(ctx_word, QQi()) + c
        p = normal_form(NCPolynomial(p.n, p.legs, terms))
        rounds += 1
    return p, rounds


def check_identity(lhs: NCPolynomial, rhs: NCPolynomial) -> CheckReport:
    """Try to prove ``lhs == rhs`` in the algebra.

    Sound but incomplete: a nonzero residue is inconclusive (``passed`` is
    ``None``), never a disproof.
    """
    if lhs.n != rhs.n or lhs.legs != rhs.legs:
        raise StructuralError(
            f"cannot compare (n={lhs.n}, legs={lhs.legs}) with (n={rhs.n}, legs={rhs.legs})")
    residue, rounds = collapse_sums(lhs - rhs)
    metrics = {"collapses": rounds, "residue_terms": len(residue), "residue": str(residue)}
    return CheckReport("identity", True if residue.is_zero() else None, metrics)


def delta(n: int, i: int, j: int) -> NCPolynomial:
    """``Delta(a_ij) = sum_k a(i,k) # a(k,j)``."""
    return comultiply_leg(NCPolynomial.gen(n, i, j), 0)


def _raw_terms(p: NCPolynomial, leg: int) -> Counter:
    # expansion without collecting, so duplicated words are visible
    out: Counter = Counter()
    n = p.n
    for word, c in p.items():
        gens = word[leg]
        for ks in product(range(1, n + 1), repeat=len(gens)):
            left = tuple((i, k) for (i, _), k in zip(gens, ks))
            right = tuple((k, j) for (_, j), k in zip(gens, ks))
            out[(word[:leg] + (left, right) + word[leg + 1:], c)] += 1
    return out


def coassoc_check_symbolic(n: int) -> CheckReport:
    """Compare ``(Delta x id) Delta`` with ``(id x Delta) Delta`` on every
    generator as multisets of 3-leg terms."""
    if n < 1:
        raise StructuralError("n must be positive")
    worst = None
    words = 0
    for i, j in product(range(1, n + 1), repeat=2):
        d = delta(n, i, j)
        left, right = _raw_terms(d, 0), _raw_terms(d, 1)
        words = max(words, sum(left.values()))
        same = left == right and comultiply_leg(d, 0) == comultiply_leg(d, 1)
        if not same and worst is None:
            worst = (i, j)
    metrics = {"n": n, "generators": n * n, "words_per_generator": words}
    worst_case = {"generator": list(worst)} if worst else {}
    return CheckReport("coassoc_symbolic", worst is None, metrics, worst_case)


def technical_lemma_identity(n: int, k: int, c: object) -> CheckReport:
    """Symbolic core of the fiber-constant slice: ``sum_i c*a(k,i) == c*1``."""
    lhs = NCPolynomial(n, 1, {(((k, i),),): c for i in range(1, n + 1)})
    return check_identity(lhs, NCPolynomial.unit(n, 1, c))
