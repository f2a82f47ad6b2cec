"""Rewriting arbitrary nested commutators as right-nested combinations.

Trees are nested 2-tuples: a leaf is any non-tuple symbol, ``(x, y)`` is the
bracket ``[x, y]``. Right-nested terms are generator sequences listed
innermost-first, so ``("B", "A", "C")`` means ``[C, [A, B]]``.
"""
from __future__ import annotations

from collections import defaultdict

from .errors import MalformedTreeError
from .numeric import commutator


def _check(tree) -> None:
    if isinstance(tree, tuple):
        if len(tree) != 2:
            raise MalformedTreeError(f"bracket node must have two children, got {len(tree)}")
        _check(tree[0])
        _check(tree[1])
    elif isinstance(tree, list) or tree is None:
        raise MalformedTreeError(f"invalid leaf {tree!r}")


def _bracket(p: tuple, q: tuple) -> dict[tuple, float]:
    """``[val p, val q]`` for right-nested p, q as a right-nested combination."""
    if len(p) == 1:
        return {q + p: 1.0}
    if len(q) == 1:
        return {p + q: -1.0}
    # [P, [a, Q']] = [a, [P, Q']] - [[a, P], Q']
    a, rest = q[-1], q[:-1]
    out: dict[tuple, float] = defaultdict(float)
    for seq, c in _bracket(p, rest).items():
        out[seq + (a,)] += c
    for seq, c in _bracket(p + (a,), rest).items():
        out[seq] -= c
    return out


def _rewrite(tree) -> dict[tuple, float]:
    if not isinstance(tree, tuple):
        return {(tree,): 1.0}
    left, right = _rewrite(tree[0]), _rewrite(tree[1])
    out: dict[tuple, float] = defaultdict(float)
    for p, cp in left.items():
        for q, cq in right.items():
            for seq, c in _bracket(p, q).items():
                out[seq] += cp * cq * c
    return out


def right_nested_rewrite(tree) -> list[tuple[float, tuple]]:
    """Express a commutator tree as ``[(coefficient, sequence), ...]``.

    Sequences whose two innermost symbols coincide have value zero and are
    dropped, as are terms whose coefficients cancel. Already right-nested
    input comes back unchanged with coefficient 1.
    """
    _check(tree)
    terms = _rewrite(tree)
    return [
        (c, seq)
        for seq, c in sorted(terms.items(), key=lambda kv: tuple(map(str, kv[0])))
        if c != 0.0 and not (len(seq) >= 2 and seq[0] == seq[1])
    ]


def expand_over_pair(p, a, b) -> list[tuple[float, tuple]]:
    """Jacobi expansion ``[P, [A, B]] = -[A, [B, P]] + [B, [A, P]]``."""
    return [(-1.0, (p, b, a)), (1.0, (p, a, b))]


def evaluate_tree(tree, assignment):
    _check(tree)
    if not isinstance(tree, tuple):
        return assignment[tree]
    return commutator(evaluate_tree(tree[0], assignment), evaluate_tree(tree[1], assignment))


def evaluate_sequence(seq, assignment):
    """Value ``[s_l, [..., [s_2, s_1]]]`` of an innermost-first sequence."""
    value = assignment[seq[0]]
    for sym in seq[1:]:
        value = commutator(assignment[sym], value)
    return value


def evaluate_terms(terms, assignment):
    total = None
    for c, seq in terms:
        v = c * evaluate_sequence(seq, assignment)
        total = v if total is None else total + v
    if total is None:
        any_op = next(iter(assignment.values()))
        return 0 * any_op
    return total


def tree_to_str(tree) -> str:
    if not isinstance(tree, tuple):
        return str(tree)
    return f"[{tree_to_str(tree[0])},{tree_to_str(tree[1])}]"


def sequence_to_tree(seq: tuple):
    tree = seq[0]
    for sym in seq[1:]:
        tree = (sym, tree)
    return tree
