"""Permutation arithmetic and derangement predicates over S_k.

Permutations are plain tuples of 1-based images in one-line form: ``(2, 3, 1)``
is the map 1->2, 2->3, 3->1.  All values are immutable and all operations are
pure, so they can be shared freely across workers.

Enumeration and ranking APIs are capped at degree 12: dense rank indices are
used as bitset positions elsewhere, and 12! already exceeds any sensible
bitset budget at desk scale.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Iterator, Sequence

Perm = tuple[int, ...]

MAX_ENUM_DEGREE = 12


def is_perm(images: Sequence[int]) -> bool:
    """Check that ``images`` is a bijection on [1..k].

    >>> is_perm((2, 3, 1)), is_perm((2, 2, 1)), is_perm((0, 1, 2))
    (True, False, False)
    """
    return sorted(images) == list(range(1, len(images) + 1))


def check_perm(images: Sequence[int]) -> Perm:
    """Validate and normalize to a tuple; raises ValueError if not a permutation."""
    p = tuple(images)
    if not p or not is_perm(p):
        raise ValueError(f"not a permutation of [1..{len(p)}]: {p}")
    return p


def identity(k: int) -> Perm:
    if k < 1:
        raise ValueError("degree must be >= 1")
    return tuple(range(1, k + 1))


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i)).

    >>> compose((2, 3, 1), (3, 1, 2))
    (1, 2, 3)
    """
    if len(a) != len(b):
        raise ValueError("degree mismatch")
    return tuple(a[x - 1] for x in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x - 1] = i + 1
    return tuple(inv)


def is_derangement(a: Perm) -> bool:
    """True iff a(i) != i for every position i."""
    return all(x != i for i, x in enumerate(a, start=1))


def disagree_everywhere(a: Perm, b: Perm) -> bool:
    """True iff a(i) != b(i) for all i; equivalently inverse(a) o b is a derangement."""
    if len(a) != len(b):
        raise ValueError("degree mismatch")
    return all(x != y for x, y in zip(a, b))


def enumerate_derangements(k: int) -> Iterator[Perm]:
    """Yield the derangements of S_k once each, in lexicographic one-line order.

    >>> list(enumerate_derangements(3))
    [(2, 3, 1), (3, 1, 2)]
    """
    if k < 1:
        raise ValueError("degree must be >= 1")
    if k > MAX_ENUM_DEGREE:
        raise ValueError(f"degree {k} exceeds enumeration cap {MAX_ENUM_DEGREE}")

    prefix: list[int] = []
    used = [False] * (k + 1)

    def rec(pos: int) -> Iterator[Perm]:
        if pos > k:
            yield tuple(prefix)
            return
        for v in range(1, k + 1):
            if v == pos or used[v]:
                continue
            used[v] = True
            prefix.append(v)
            yield from rec(pos + 1)
            prefix.pop()
            used[v] = False

    yield from rec(1)


def derangement_count(k: int) -> int:
    """d(k) via the recurrence d(k) = (k-1)(d(k-1)+d(k-2)), d(1)=0, d(2)=1."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    if k == 1:
        return 0
    if k == 2:
        return 1
    a, b = 0, 1  # d(1), d(2)
    for m in range(3, k + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def rank_perm(a: Perm) -> int:
    """Lexicographic rank of ``a`` in S_k, in [0, k!-1], via the factorial number system.

    >>> rank_perm((1, 2, 3))
    0
    """
    k = len(a)
    rank = 0
    seen = 0  # bitmask of already-placed values (1-based bits)
    for i, x in enumerate(a):
        smaller_unused = x - 1 - bin(seen & ((1 << x) - 1)).count("1")
        rank += smaller_unused * factorial(k - 1 - i)
        seen |= 1 << x
    return rank


def unrank_perm(rank: int, k: int) -> Perm:
    """Inverse of rank_perm: the rank-th permutation of S_k in lexicographic order."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    if not 0 <= rank < factorial(k):
        raise ValueError(f"rank {rank} out of range for degree {k}")
    avail = list(range(1, k + 1))
    out = []
    for i in range(k, 0, -1):
        f = factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(avail.pop(idx))
    return tuple(out)


def all_perms(k: int) -> list[Perm]:
    """All of S_k in lexicographic (= rank) order."""
    if k > MAX_ENUM_DEGREE:
        raise ValueError(f"degree {k} exceeds enumeration cap {MAX_ENUM_DEGREE}")
    return list(itertools.permutations(range(1, k + 1)))


def conjugate(t: Perm, a: Perm) -> Perm:
    """t^-1 o a o t."""
    return compose(inverse(t), compose(a, t))


def cycle_type(a: Perm) -> tuple[int, ...]:
    """Cycle lengths in decreasing order; conjugacy class invariant."""
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = a[j] - 1
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def perm_to_text(a: Perm) -> str:
    """Render in the conventional parenthesized one-line form, e.g. "(3,4,1,2)"."""
    return "(" + ",".join(str(x) for x in a) + ")"


def perm_from_text(text: str) -> Perm:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        images = [int(t) for t in s.split(",")]
    except ValueError as e:
        raise ValueError(f"cannot parse permutation from {text!r}") from e
    return check_perm(images)
