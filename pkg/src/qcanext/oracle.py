"""Slow reference implementations.

Everything here is a literal transcription of a defining formula, written
with plain loops over the carrier and using only the element operations of
the quantale (``mul``, ``leq``, ``join``, ``meet``).  Nothing is imported
from the fast paths, so agreement between the two is meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from .errors import BudgetExceeded

__all__ = [
    "oracle_residual",
    "oracle_space_ok",
    "oracle_bimodule_ok",
    "oracle_presheaves",
    "oracle_copresheaves",
    "oracle_concepts",
    "oracle_witness",
    "oracle_filters",
    "oracle_ideals",
    "fca_concepts",
    "automaton_hom",
    "accepted_words",
    "reaching_words",
]


@lru_cache(maxsize=1 << 16)
def oracle_residual(q, a, c, side="right"):
    """``⊔{b : a·b ⊑ c}`` (right) or ``⊔{b : b·a ⊑ c}`` (left)."""
    if side == "right":
        good = [b for b in q.carrier() if q.leq(q.mul(a, b), c)]
    elif side == "left":
        good = [b for b in q.carrier() if q.leq(q.mul(b, a), c)]
    else:
        raise ValueError(side)
    return q.join(good)


def _rres(q, a, c):
    return oracle_residual(q, a, c, "right")


def _lres(q, c, a):
    return oracle_residual(q, a, c, "left")


def oracle_space_ok(q, hom) -> bool:
    n = len(hom)
    for x in range(n):
        if not q.leq(q.unit, hom[x][x]):
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        if not q.leq(q.mul(hom[x][y], hom[y][z]), hom[x][z]):
            return False
    return True


def oracle_bimodule_ok(q, X, Y, R) -> bool:
    for x2, x, y in itertools.product(range(len(X)), range(len(X)), range(len(Y))):
        if not q.leq(q.mul(X[x2][x], R[x][y]), R[x2][y]):
            return False
    for x, y, y2 in itertools.product(range(len(X)), range(len(Y)), range(len(Y))):
        if not q.leq(q.mul(R[x][y], Y[y][y2]), R[x][y2]):
            return False
    return True


def _all_vectors(q, n, budget):
    size = len(q.carrier()) ** n
    if size > budget:
        raise BudgetExceeded(f"{size} vectors exceed oracle budget {budget}",
                             required=size, budget=budget)
    return itertools.product(q.carrier(), repeat=n)


def oracle_presheaves(q, hom, budget=100_000) -> list:
    n = len(hom)
    return [
        v for v in _all_vectors(q, n, budget)
        if all(q.leq(q.mul(hom[x2][x], v[x]), v[x2]) for x2 in range(n) for x in range(n))
    ]


def oracle_copresheaves(q, hom, budget=100_000) -> list:
    n = len(hom)
    return [
        v for v in _all_vectors(q, n, budget)
        if all(q.leq(q.mul(v[a], hom[a][a2]), v[a2]) for a in range(n) for a2 in range(n))
    ]


def oracle_concepts(q, matrix, n_attributes=None, budget=100_000) -> list:
    """All stable pairs, from every intent vector in ``carrier^|A|``.

    Returns ``(extent, intent)`` tuples sorted by extent in carrier order.
    """
    nx = len(matrix)
    na = len(matrix[0]) if nx else (n_attributes or 0)
    found = {}
    for psi in _all_vectors(q, na, budget):
        ext = tuple(
            q.meet([_lres(q, matrix[x][a], psi[a]) for a in range(na)]) for x in range(nx)
        )
        itt = tuple(
            q.meet([_rres(q, ext[x], matrix[x][a]) for x in range(nx)]) for a in range(na)
        )
        found[ext] = itt
    order = {v: k for k, v in enumerate(q.carrier())}
    return sorted(found.items(), key=lambda kv: [order[v] for v in kv[0]])


def oracle_witness(q, hom, kind, values, weight) -> list:
    """Candidates satisfying a (co)limit equation verbatim.

    ``kind`` is ``"colimit"`` (``B(w, b) = ⊓_d φ(d) ▷ B(Gd, b)``) or
    ``"limit"`` (``B(b, w) = ⊓_d B(b, Gd) ◁ ψ(d)``); ``values`` lists the
    diagram as indices into ``hom``.
    """
    n = len(hom)
    out = []
    for w in range(n):
        ok = True
        for b in range(n):
            if kind == "colimit":
                want = q.meet([_rres(q, p, hom[g][b]) for g, p in zip(values, weight)])
                ok = hom[w][b] == want
            else:
                want = q.meet([_lres(q, hom[b][g], p) for g, p in zip(values, weight)])
                ok = hom[b][w] == want
            if not ok:
                break
        if ok:
            out.append(w)
    return out


def _battery(q, hom, kind):
    n = len(hom)
    e = q.unit
    yield (), ()
    for i in range(n):
        for j in range(i + 1, n):
            yield (i, j), (e, e)
    for c in range(n):
        for r in q.carrier():
            yield (c,), (r,)


def oracle_filters(q, hom, budget=100_000) -> list:
    """Copresheaves ``f`` with ``f(w) = ⊓ f(Gd) ◁ ψ(d)`` at every battery limit."""
    limits = []
    for values, weight in _battery(q, hom, "limit"):
        w = oracle_witness(q, hom, "limit", values, weight)
        if w:
            limits.append((values, weight, w[0]))
    out = []
    for f in oracle_copresheaves(q, hom, budget):
        if all(
            f[w] == q.meet([_lres(q, f[g], p) for g, p in zip(values, weight)])
            for values, weight, w in limits
        ):
            out.append(f)
    return out


def oracle_ideals(q, hom, budget=100_000) -> list:
    colimits = []
    for values, weight in _battery(q, hom, "colimit"):
        w = oracle_witness(q, hom, "colimit", values, weight)
        if w:
            colimits.append((values, weight, w[0]))
    out = []
    for i in oracle_presheaves(q, hom, budget):
        if all(
            i[w] == q.meet([_rres(q, p, i[g]) for g, p in zip(values, weight)])
            for values, weight, w in colimits
        ):
            out.append(i)
    return out


def fca_concepts(matrix) -> set:
    """Textbook formal concepts of a boolean incidence matrix.

    Returns ``(extent, intent)`` pairs of frozensets of indices, obtained by
    closing every object subset under the two derivation operators.
    """
    objects = range(len(matrix))
    attributes = range(len(matrix[0]) if matrix else 0)

    def common_attrs(objs):
        return frozenset(a for a in attributes if all(matrix[g][a] for g in objs))

    def common_objs(attrs):
        return frozenset(g for g in objects if all(matrix[g][a] for a in attrs))

    out = set()
    for k in range(len(matrix) + 1):
        for objs in itertools.combinations(objects, k):
            intent = common_attrs(objs)
            out.add((common_objs(intent), intent))
    return out


# ---------------------------------------------------------------------------
# automata by graph search


def _paths(states, transitions, max_len, start):
    # breadth-first over (state, word) pairs; transitions: {(p, letter): [q, ...]}
    seen = {(start, "")}
    todo = deque(seen)
    while todo:
        p, w = todo.popleft()
        if len(w) == max_len:
            continue
        for (src, letter), targets in transitions.items():
            if src != p:
                continue
            for t in targets:
                item = (t, w + letter)
                if item not in seen:
                    seen.add(item)
                    todo.append(item)
    return seen


def automaton_hom(states, transitions, max_len) -> dict:
    """``{(p, q): set of words of length ≤ max_len leading from p to q}``."""
    out = {(p, r): set() for p in states for r in states}
    for p in states:
        for r, w in _paths(states, transitions, max_len, p):
            out[(p, r)].add(w)
    return out


def accepted_words(states, transitions, final, max_len) -> dict:
    """Words accepted from each state."""
    out = {}
    for p in states:
        out[p] = {w for r, w in _paths(states, transitions, max_len, p) if r in final}
    return out


def reaching_words(states, transitions, initial, max_len) -> dict:
    """Words leading from some initial state to each state."""
    out = {p: set() for p in states}
    for s in initial:
        for r, w in _paths(states, transitions, max_len, s):
            out[r].add(w)
    return out
