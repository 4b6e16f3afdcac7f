"""Shortlex string rewriting over a group alphabet, with Knuth-Bendix completion.

The alphabet interleaves generators and their formal inverses
(g0 < g0^-1 < g1 < g1^-1 < ...), matching the letter encoding in the
words module, and rules always rewrite shortlex-downhill, so every
reduction terminates regardless of completion state. Completion runs
under an explicit effort budget; exhausting it is a normal outcome that
leaves a sound but possibly non-confluent system (normal form ε still
proves a word trivial in the presented group, which is all the homology
pipeline needs from partial systems).

Internally words are bytes objects (one letter per byte) because rule
lookup, interreduction and overlap detection are all substring work,
which bytes do at C speed. The public API speaks letter tuples.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from . import words
from .presentation import Presentation, render_word
from .words import Word


class Overflow(Exception):
    """Element enumeration exceeded its cap."""


class StepLimitExceeded(Exception):
    """A normal-form computation ran out of its step allowance."""


@dataclass(frozen=True)
class Budget:
    max_rules: int = 20000
    max_rule_length: int = 64
    max_steps: int = 2_000_000

    def __post_init__(self):
        if min(self.max_rules, self.max_rule_length, self.max_steps) <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = Budget()


def _shortlex_max_first(u: bytes, v: bytes) -> tuple[bytes, bytes]:
    return (u, v) if (len(u), u) > (len(v), v) else (v, u)


def orient_relator(relator: Word) -> tuple[Word, Word] | None:
    """Best rewriting rule for a relator, or None for ε.

    Every rotation of the cyclically reduced core, and of its inverse, is
    split into halves u·v (the longer half in front), read as the
    equation u = v^-1, and oriented downhill. Among those candidate
    rules the one with the shortlex-smallest left side wins, ties going
    to the smallest (lhs, rhs) pair, which makes the choice independent
    of how the relator was written down.
    """
    core, _ = words.cyclic_reduce(relator)
    if not core:
        return None
    best: tuple[tuple, tuple] | None = None
    for base in (core, words.invert(core)):
        for rot in words.cyclic_rotations(base):
            cut = (len(rot) + 1) // 2
            u, v = rot[:cut], words.invert(rot[cut:])
            lhs, rhs = ((u, v) if (len(u), u) > (len(v), v) else (v, u))
            key = ((len(lhs), lhs), rhs)
            if best is None or key < (
                (len(best[0]), best[0]),
                best[1],
            ):
                best = (lhs, rhs)
    assert best is not None
    return best


class RewriteSystem:
    """Mutable during completion, then treated as immutable."""

    def __init__(self, arity: int):
        self.arity = arity
        self.rules: dict[int, tuple[bytes, bytes]] = {}
        self._lhs_index: dict[bytes, int] = {}
        self._by_len: dict[int, dict[bytes, bytes]] = {}
        self._lengths: list[int] = []
        self._next_id = 0
        self._pending: deque[tuple[bytes, bytes]] = deque()
        self._pairs: list[tuple[int, int, int, int, int]] = []
        self._seq = 0
        self.steps = 0
        self.limited = False
        self.confluent = False
        for g in range(arity):
            a, b = 2 * g, 2 * g + 1
            self._insert(bytes([a, b]), b"")
            self._insert(bytes([b, a]), b"")

    # -- rule bookkeeping ------------------------------------------------

    def _insert(self, lhs: bytes, rhs: bytes):
        """Install an oriented rule, interreduce, queue its overlaps."""
        if lhs in self._lhs_index:
            old = self.rules[self._lhs_index[lhs]][1]
            if old != rhs:
                self._pending.append((rhs, old))
            return
        rid = self._next_id
        self._next_id += 1
        self.rules[rid] = (lhs, rhs)
        self._lhs_index[lhs] = rid
        bucket = self._by_len.setdefault(len(lhs), {})
        if len(lhs) not in self._lengths:
            self._lengths.append(len(lhs))
            self._lengths.sort()
        bucket[lhs] = rhs
        # interreduction: retire rules whose lhs the new rule rewrites,
        # renormalize right sides in place
        for other in list(self.rules):
            if other == rid:
                continue
            l, r = self.rules[other]
            if lhs in l:
                self._retire(other)
                self._pending.append((l, r))
            elif lhs in r:
                nr = self._nf(r)
                self.rules[other] = (l, nr)
                self._by_len[len(l)][l] = nr
        # overlap queue
        for other in list(self.rules):
            if other == rid:
                self._queue_overlaps(rid, rid)
            else:
                self.steps += 2
                self._queue_overlaps(rid, other)
                self._queue_overlaps(other, rid)

    def _retire(self, rid: int):
        lhs, _ = self.rules.pop(rid)
        del self._lhs_index[lhs]
        bucket = self._by_len[len(lhs)]
        del bucket[lhs]
        if not bucket:
            del self._by_len[len(lhs)]
            self._lengths.remove(len(lhs))

    def _queue_overlaps(self, i: int, j: int):
        li = self.rules[i][0]
        lj = self.rules[j][0]
        top = min(len(li), len(lj)) - 1
        for k in range(1, top + 1):
            if li[-k:] == lj[:k]:
                heapq.heappush(
                    self._pairs, (len(li) + len(lj) - k, self._seq, i, j, k)
                )
                self._seq += 1

    # -- reduction --------------------------------------------------------

    def _nf(self, word: bytes, allowance: list[int] | None = None) -> bytes:
        """Leftmost reduction, shortest applicable rule first.

        ``allowance`` is a single-cell mutable step counter; when it runs
        dry StepLimitExceeded is raised. Without one, applications are
        charged to the completion step counter.
        """
        by_len = self._by_len
        lengths = self._lengths
        out = bytearray()
        pending = bytearray(word[::-1])
        while pending:
            out.append(pending.pop())
            n = len(out)
            for ell in lengths:
                if ell > n:
                    break
                tail = bytes(out[n - ell:])
                rhs = by_len[ell].get(tail)
                if rhs is not None:
                    del out[n - ell:]
                    pending.extend(rhs[::-1])
                    if allowance is None:
                        self.steps += 1
                    else:
                        allowance[0] -= 1
                        if allowance[0] < 0:
                            raise StepLimitExceeded
                    break
        return bytes(out)

    def irreducible(self, word: bytes) -> bool:
        for ell in self._lengths:
            if ell > len(word):
                break
            bucket = self._by_len[ell]
            for start in range(len(word) - ell + 1):
                if word[start:start + ell] in bucket:
                    return False
        return True


def initial_rules(pres: Presentation) -> RewriteSystem:
    """Free-group inverse rules plus one oriented rule per relator.

    Relator rules are installed through the same interreduction path the
    completion uses, so the returned system is already consistent; its
    confluence flag is only set for the relator-free case, where the
    inverse rules alone are confluent.
    """
    rws = RewriteSystem(pres.arity)
    trivial = True
    for r in pres.relators:
        oriented = orient_relator(r)
        if oriented is None:
            continue
        trivial = False
        lhs, rhs = oriented
        rws._pending.append((bytes(lhs), bytes(rhs)))
    # drain only the orientation queue; overlaps wait for knuth_bendix
    while rws._pending:
        u, v = rws._pending.popleft()
        un, vn = rws._nf(u), rws._nf(v)
        if un == vn:
            continue
        lhs, rhs = _shortlex_max_first(un, vn)
        rws._insert(lhs, rhs)
    # with only the inverse rules present, the overlaps x·x^-1·x join
    # trivially, so a relator-free system is confluent as it stands
    rws.confluent = trivial
    return rws


def knuth_bendix(rws: RewriteSystem, budget: Budget = DEFAULT_BUDGET) -> RewriteSystem:
    """Complete within the budget; sets confluent iff every pair joined."""
    while True:
        if rws.steps >= budget.max_steps:
            rws.limited = True
            break
        if rws._pending:
            u, v = rws._pending.popleft()
            rws.steps += 1
            un, vn = rws._nf(u), rws._nf(v)
            if un == vn:
                continue
            lhs, rhs = _shortlex_max_first(un, vn)
            if len(lhs) > budget.max_rule_length:
                rws.limited = True
                continue
            if len(rws.rules) >= budget.max_rules:
                rws.limited = True
                break
            rws._insert(lhs, rhs)
        elif rws._pairs:
            _, _, i, j, k = heapq.heappop(rws._pairs)
            rws.steps += 1
            if i not in rws.rules or j not in rws.rules:
                continue
            li, ri = rws.rules[i]
            lj, rj = rws.rules[j]
            if len(li) <= k or len(lj) <= k or li[-k:] != lj[:k]:
                continue
            rws._pending.append((ri + lj[k:], li[:-k] + rj))
        else:
            break
    rws.confluent = not rws.limited and not rws._pending and not rws._pairs
    return rws


def normal_form(rws: RewriteSystem, word: Word, max_steps: int | None = None) -> Word:
    wb = bytes(words.free_reduce(word))
    if max_steps is None:
        before = rws.steps
        out = rws._nf(wb)
        rws.steps = before
        return tuple(out)
    cell = [max_steps]
    return tuple(rws._nf(wb, allowance=cell))


def reduce_with_allowance(rws: RewriteSystem, word: Word, allowance: list[int]) -> Word:
    """Normal form charged against a caller-owned step allowance.

    The single-cell ``allowance`` list is decremented once per rewrite
    application and StepLimitExceeded is raised when it runs dry, so one
    budget can span a whole batch of reduction calls.
    """
    return tuple(rws._nf(bytes(words.free_reduce(word)), allowance=allowance))


def enumerate_elements(rws: RewriteSystem, cap: int) -> list[Word]:
    """All irreducible words in shortlex order; Overflow when more than cap."""
    if not rws.confluent:
        raise ValueError("element enumeration requires a confluent system")
    alphabet = range(2 * rws.arity)
    found: list[bytes] = [b""]
    layer: list[bytes] = [b""]
    while layer:
        nxt: list[bytes] = []
        for w in layer:
            for x in alphabet:
                cand = w + bytes([x])
                n = len(cand)
                ok = True
                for ell in rws._lengths:
                    if ell > n:
                        break
                    if cand[n - ell:] in rws._by_len[ell]:
                        ok = False
                        break
                if ok:
                    nxt.append(cand)
                    if len(found) + len(nxt) > cap:
                        raise Overflow(f"more than {cap} irreducible words")
        found.extend(nxt)
        layer = nxt
    return [tuple(w) for w in found]


def group_order(rws: RewriteSystem, cap: int) -> int | None:
    """Element count when confluent and within cap, else None (unknown)."""
    if not rws.confluent:
        return None
    try:
        return len(enumerate_elements(rws, cap))
    except Overflow:
        return None


def dump_rules(rws: RewriteSystem, generators) -> str:
    lines = [f"# confluent: {'true' if rws.confluent else 'false'}"]
    table = sorted(rws.rules.values(), key=lambda lr: (len(lr[0]), lr[0]))
    for lhs, rhs in table:
        lines.append(
            f"{render_word(tuple(lhs), generators)} -> {render_word(tuple(rhs), generators)}"
        )
    return "\n".join(lines) + "\n"
