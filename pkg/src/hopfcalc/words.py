"""Free group words over a fixed finite alphabet of generators.

A word is an immutable tuple of int letters, always kept freely reduced.
Generator ``i`` (0-based) contributes two letters: ``2*i`` for the
generator itself and ``2*i + 1`` for its inverse, so the inverse of any
letter is ``letter ^ 1`` and the shortlex order on words over the
alphabet g0 < g0^-1 < g1 < g1^-1 < ... is plain (length, tuple)
comparison of the int tuples.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


def positive_letter(gen: int) -> int:
    return 2 * gen


def inverse_letter_of(gen: int) -> int:
    return 2 * gen + 1


def invert_letter(letter: int) -> int:
    return letter ^ 1


def generator_of(letter: int) -> int:
    return letter >> 1


def is_inverse(letter: int) -> bool:
    return bool(letter & 1)


def free_reduce(letters: Iterable[int]) -> Word:
    """Cancel adjacent mutually inverse letters until none remain."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def concat(*words: Sequence[int]) -> Word:
    """Product of freely reduced words, freely reduced.

    Only boundary cancellation is needed when the inputs are reduced,
    but feeding everything through the same stack keeps this safe for
    arbitrary letter sequences too.
    """
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == x ^ 1:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(x ^ 1 for x in reversed(word))


def power(word: Sequence[int], k: int) -> Word:
    if k == 0:
        return EMPTY
    base = tuple(word) if k > 0 else invert(word)
    out: Word = EMPTY
    for _ in range(abs(k)):
        out = concat(out, base)
    return out


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """g^-1 w g for w = word, g = by."""
    return concat(invert(by), word, by)


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u^-1 v^-1 u v."""
    return concat(invert(u), invert(v), u, v)


def cyclic_reduce(word: Sequence[int]) -> tuple[Word, Word]:
    """Strip matching first/last letters.

    Returns ``(core, conj)`` with ``word == conjugate(core, conj)`` and
    ``core`` cyclically reduced.
    """
    w = free_reduce(word)
    conj: list[int] = []
    while len(w) >= 2 and w[0] == w[-1] ^ 1:
        conj.insert(0, w[-1])
        w = w[1:-1]
    return w, tuple(conj)


def cyclic_rotations(word: Sequence[int]) -> list[Word]:
    w = tuple(word)
    if not w:
        return [EMPTY]
    return [w[i:] + w[:i] for i in range(len(w))]


def exponent_vector(word: Sequence[int], n_generators: int) -> list[int]:
    """Image in Z^n under abelianization: net exponent of each generator."""
    vec = [0] * n_generators
    for x in word:
        vec[x >> 1] += -1 if x & 1 else 1
    return vec


def shortlex_key(word: Sequence[int]) -> tuple[int, Tuple[int, ...]]:
    w = tuple(word)
    return (len(w), w)


def shortlex_less(u: Sequence[int], v: Sequence[int]) -> bool:
    return shortlex_key(u) < shortlex_key(v)


def proper_power_root(word: Sequence[int]) -> tuple[Word, int]:
    """Largest k with word == root**k for a freely reduced word.

    Returns ``(root, k)``; for the empty word returns ``((), 1)``.
    Linear scan over divisors of the length.
    """
    w = tuple(word)
    n = len(w)
    if n == 0:
        return EMPTY, 1
    for d in range(1, n + 1):
        if n % d:
            continue
        root = w[:d]
        if all(w[i] == root[i % d] for i in range(n)):
            return root, n // d
    return w, 1
