"""Mod-p homology dimensions of finitely presented groups.

Given G = F/K with K the normal closure of the relators, the first
homology dimension is read off the relator exponent matrix over F_p.
The second is reached through Hopf's formula: the relators span a
central elementary abelian subgroup A = K/K^p[F,K] inside the cover
group F/K^p[F,K], the mod-p abelianization map sends each spanning
element to its exponent vector, and dim H_2(G;F_p) is the kernel
dimension of that map restricted to A.

What keeps the pipeline honest is the bound kind.  The spanning set
starts as the full relator list and only ever shrinks under replayable
certificates, so ``spanning size minus image rank`` is always a sound
upper bound for h2.  It is promoted to an exact value only when dim A
itself is certified: by counting elements of the group and its cover
through confluent rewriting systems, by the spanning set emptying, or
by the one-relator criterion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fplinalg, words
from .presentation import Presentation, render_word, simplify
from .rewrite import (
    DEFAULT_BUDGET,
    Budget,
    RewriteSystem,
    StepLimitExceeded,
    group_order,
    initial_rules,
    knuth_bendix,
    normal_form,
    reduce_with_allowance,
)
from .words import Word

# Largest group and cover order the exactness certification will count to.
ORDER_CAP = 20000


class BoundKind(enum.Enum):
    """Whether a reported dimension is the true value or only an upper bound."""

    EXACT = "exact"
    UPPER_BOUND = "upper_bound"


@dataclass(frozen=True)
class RemovalCertificate:
    """Proof that one spanning element is redundant.

    The removed word equals the product of the recorded factors in the
    cover group, so its image lies in the span of the survivors.
    ``factors`` holds (index, exponent) pairs over the original spanning
    list; ``test_word`` is inverse(removed word) times the factor
    product, whose cover normal form was the empty word when the
    certificate was issued.  ``replay_certificate`` rechecks all of it.
    """

    removed_index: int
    removed_word: Word
    factors: tuple[tuple[int, int], ...]
    test_word: Word


@dataclass(frozen=True)
class HopfResult:
    """Immutable record of one pipeline run on one presentation at one prime."""

    group: str | None
    generators: tuple[str, ...]
    prime: int
    n_generators: int
    h1_dim: int
    dim_a: int
    dim_a_kind: BoundKind
    rank_image: int
    h2_value: int
    h2_kind: BoundKind
    spanning_set: tuple[Word, ...]
    candidates: tuple[tuple[tuple[int, ...], Word], ...]
    certificates: tuple[RemovalCertificate, ...]
    confluent_base: bool
    confluent_cover: bool
    budget_report: dict


def _require_prime(p) -> None:
    if isinstance(p, bool) or not isinstance(p, int):
        raise ValueError(f"modulus must be a prime integer, got {p!r}")
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus must be prime, got {p}")


def exponent_matrix(relators: Sequence[Word], n: int, p: int) -> np.ndarray:
    """One row per word: its exponent vector reduced mod p."""
    rows = [words.exponent_vector(r, n) for r in relators]
    return np.array(rows, dtype=np.int64).reshape(len(rows), n) % p


def h1_dimension(pres: Presentation, p: int) -> int:
    """dim H_1(G;F_p) = n minus the rank of the relator exponent matrix.

    Abelianizing kills every commutator, so each relator only constrains
    F_p^n through its exponent vector.
    """
    _require_prime(p)
    n = pres.arity
    return n - fplinalg.rank(exponent_matrix(pres.relators, n, p), p)


def build_p_cover(pres: Presentation, p: int) -> Presentation:
    """Present F/K^p[F,K] over the same generators.

    The relators are the p-th powers r^p together with the commutators
    [r, s] of every relator r against every generator s.  In the
    presented cover group the original relators become central elements
    of order dividing p; their images span the elementary abelian
    subgroup A that the spanning-set reduction works inside.
    """
    _require_prime(p)
    rel: list[Word] = [words.power(r, p) for r in pres.relators]
    for r in pres.relators:
        for g in range(pres.arity):
            rel.append(words.commutator(r, (words.positive_letter(g),)))
    name = f"{pres.name}.cover{p}" if pres.name else None
    return simplify(Presentation(pres.generators, tuple(rel), name=name))


def image_matrix(spanning_set: Sequence[Word], n: int, p: int) -> np.ndarray:
    """Mod-p abelianized image of each spanning word, one matrix row each."""
    _require_prime(p)
    for w in spanning_set:
        if any(x < 0 or x >= 2 * n for x in w):
            raise ValueError("word letter out of range for the given arity")
    return exponent_matrix(spanning_set, n, p)


# ---------------------------------------------------------------------------
# exactness certification


@dataclass
class _Machine:
    """Completed systems and order data shared by one pipeline run."""

    base: RewriteSystem
    cover_pres: Presentation
    cover: RewriteSystem
    base_order: int | None
    cover_order: int | None
    dim_a: int | None


def _power_of(ratio: int, p: int) -> int:
    d = 0
    while ratio % p == 0:
        ratio //= p
        d += 1
    if ratio != 1:
        raise ArithmeticError(
            "cover order over group order is not a power of the prime"
        )
    return d


def _build_machine(
    pres: Presentation, p: int, budget: Budget, order_cap: int
) -> _Machine:
    base = knuth_bendix(initial_rules(pres), budget)
    cover_pres = build_p_cover(pres, p)
    cover = knuth_bendix(initial_rules(cover_pres), budget)
    base_order = group_order(base, order_cap)
    cover_order = group_order(cover, order_cap)
    dim_a = None
    if base_order is not None and cover_order is not None:
        q, r = divmod(cover_order, base_order)
        if r:
            raise ArithmeticError("group order does not divide cover order")
        dim_a = _power_of(q, p)
    return _Machine(base, cover_pres, cover, base_order, cover_order, dim_a)


def dim_a_exact_finite(
    pres: Presentation,
    p: int,
    budget: Budget = DEFAULT_BUDGET,
    order_cap: int = ORDER_CAP,
) -> int | None:
    """Exact dim A by order counting, or None when that is out of reach.

    When both the group and its cover yield confluent systems whose
    element counts stay under the cap, the ratio of the two orders is
    p^{dim A}.  Any other situation returns None: unknown, not zero.
    """
    _require_prime(p)
    return _build_machine(pres, p, budget, order_cap).dim_a


# ---------------------------------------------------------------------------
# spanning-set reduction


def _scale_row(row: tuple[int, ...], e: int, p: int) -> tuple[int, ...]:
    return tuple((e * x) % p for x in row)


def _make_certificate(
    spanning: Sequence[Word], ridx: int, factors: Sequence[tuple[int, int]]
) -> RemovalCertificate:
    parts = [words.invert(spanning[ridx])]
    for m, e in factors:
        parts.append(words.power(spanning[m], e))
    return RemovalCertificate(
        removed_index=ridx,
        removed_word=spanning[ridx],
        factors=tuple(factors),
        test_word=words.concat(*parts),
    )


def _reduce_spanning(
    spanning: Sequence[Word],
    rows: Sequence[tuple[int, ...]],
    n: int,
    cover: RewriteSystem,
    p: int,
    budget: Budget,
):
    """Remove provably redundant spanning elements, in input order.

    A member is dropped when it equals a product of at most two other
    live members (integer exponents up to p in absolute value) in the
    cover group.  The abelianized images are matched first, which is a
    cheap necessary condition; only matching products are then checked
    with normal forms, all charged against one shared step allowance.
    Passes repeat until nothing changes or the allowance runs dry.
    Every removal is recorded as a replayable certificate.
    """
    live = list(range(len(spanning)))
    certs: list[RemovalCertificate] = []
    cell = [budget.max_steps]
    passes = 0
    exhausted = False
    zero = (0,) * n

    def is_trivial(test: Word) -> bool:
        return reduce_with_allowance(cover, test, cell) == words.EMPTY

    def attempt(ridx: int):
        target = rows[ridx]
        rho = spanning[ridx]
        others = [m for m in live if m != ridx]
        if target == zero and is_trivial(words.invert(rho)):
            return ()
        for m in others:
            row_m = rows[m]
            for res in range(p):
                if _scale_row(row_m, res, p) != target:
                    continue
                # exponent 0 mod p still contributes a p-th power word
                lifts = (p, -p) if res == 0 else (res, res - p)
                for e in lifts:
                    test = words.concat(
                        words.invert(rho), words.power(spanning[m], e)
                    )
                    if is_trivial(test):
                        return ((m, e),)
        by_scaled: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for m in others:
            for res in range(1, p):
                by_scaled.setdefault(_scale_row(rows[m], res, p), []).append(
                    (m, res)
                )
        for m1 in others:
            row1 = rows[m1]
            for res1 in range(1, p):
                left = _scale_row(row1, res1, p)
                need = tuple((t - x) % p for t, x in zip(target, left))
                for m2, res2 in by_scaled.get(need, ()):
                    if m2 <= m1:
                        continue
                    for e1 in (res1, res1 - p):
                        for e2 in (res2, res2 - p):
                            test = words.concat(
                                words.invert(rho),
                                words.power(spanning[m1], e1),
                                words.power(spanning[m2], e2),
                            )
                            if is_trivial(test):
                                return ((m1, e1), (m2, e2))
        return None

    try:
        changed = True
        while changed:
            changed = False
            passes += 1
            for ridx in list(live):
                factors = attempt(ridx)
                if factors is None:
                    continue
                live.remove(ridx)
                certs.append(_make_certificate(spanning, ridx, factors))
                changed = True
    except StepLimitExceeded:
        exhausted = True

    used = budget.max_steps - max(cell[0], 0)
    report = {"passes": passes, "steps": used, "exhausted": exhausted}
    return live, certs, report


def replay_certificate(
    cert: RemovalCertificate,
    spanning: Sequence[Word],
    cover: RewriteSystem,
    max_steps: int | None = None,
) -> bool:
    """Recheck a removal certificate from scratch against the cover system."""
    if cert.removed_word != spanning[cert.removed_index]:
        return False
    parts = [words.invert(cert.removed_word)]
    for idx, e in cert.factors:
        parts.append(words.power(spanning[idx], e))
    test = words.concat(*parts)
    if test != cert.test_word:
        return False
    return normal_form(cover, test, max_steps) == words.EMPTY


# ---------------------------------------------------------------------------
# assembling the result


def _finish(
    pres: Presentation, p: int, machine: _Machine, budget: Budget
) -> HopfResult:
    n = pres.arity
    spanning_all = list(pres.relators)
    all_rows = [
        tuple(e % p for e in words.exponent_vector(r, n)) for r in spanning_all
    ]
    full_matrix = exponent_matrix(spanning_all, n, p)
    rank_all = fplinalg.rank(full_matrix, p)
    h1 = n - rank_all

    live, certs, search = _reduce_spanning(
        spanning_all, all_rows, n, machine.cover, p, budget
    )
    final = [spanning_all[i] for i in live]
    mat = image_matrix(final, n, p)
    rank = fplinalg.rank(mat, p)
    if rank != rank_all:
        raise ArithmeticError("spanning reduction changed the image rank")
    m = len(final)
    if machine.dim_a is not None and machine.dim_a > m:
        raise ArithmeticError("certified dim A exceeds the reduced spanning size")

    kind = BoundKind.UPPER_BOUND
    if machine.dim_a is not None and m == machine.dim_a:
        kind = BoundKind.EXACT
    elif m == 0:
        # an empty spanning set certifies A = 0 outright
        kind = BoundKind.EXACT
    elif m == 1:
        # one-relator criterion: a lone relator that is not a proper
        # power freely generates the relation module, so its class in A
        # is nonzero and dim A = 1.  The zero image row keeps this to
        # the only case the promotion changes (h2 = 1 instead of <= 1).
        nontrivial = [r for r in pres.relators if r]
        if len(nontrivial) == 1 and all(x == 0 for x in all_rows[live[0]]):
            core, _ = words.cyclic_reduce(final[0])
            _, k = words.proper_power_root(core)
            if k == 1:
                kind = BoundKind.EXACT

    h2 = m - rank
    if (
        kind is BoundKind.EXACT
        and machine.dim_a is not None
        and machine.dim_a != h2 + n - h1
    ):
        raise ArithmeticError("rank-nullity identity violated")

    kernel = fplinalg.left_kernel_basis(mat, p)
    if len(kernel) != h2:
        raise ArithmeticError("kernel dimension disagrees with the h2 value")
    if kernel.size and np.any((kernel @ mat) % p):
        raise ArithmeticError("kernel vectors fail to annihilate the image matrix")
    candidates = []
    for c in kernel:
        coeffs = tuple(int(x) for x in c)
        parts = [words.power(w, e) for w, e in zip(final, coeffs) if e]
        word = words.concat(*parts)
        if any(e % p for e in words.exponent_vector(word, n)):
            raise ArithmeticError("candidate word fails the abelianized kernel test")
        candidates.append((coeffs, word))

    report = {
        "base_rules": len(machine.base.rules),
        "base_steps": machine.base.steps,
        "base_limited": machine.base.limited,
        "cover_rules": len(machine.cover.rules),
        "cover_steps": machine.cover.steps,
        "cover_limited": machine.cover.limited,
        "group_order": machine.base_order,
        "cover_order": machine.cover_order,
        "order_dim_a": machine.dim_a,
        "spanning_initial": len(spanning_all),
        "initial_bound": len(spanning_all) - rank_all,
        "removals": len(certs),
        "search_passes": search["passes"],
        "search_steps": search["steps"],
        "search_exhausted": search["exhausted"],
    }
    return HopfResult(
        group=pres.name,
        generators=pres.generators,
        prime=p,
        n_generators=n,
        h1_dim=h1,
        dim_a=m,
        dim_a_kind=kind,
        rank_image=rank,
        h2_value=h2,
        h2_kind=kind,
        spanning_set=tuple(final),
        candidates=tuple(candidates),
        certificates=tuple(certs),
        confluent_base=machine.base.confluent,
        confluent_cover=machine.cover.confluent,
        budget_report=report,
    )


def run_pipeline(
    pres: Presentation,
    p: int,
    budget: Budget = DEFAULT_BUDGET,
    order_cap: int = ORDER_CAP,
) -> HopfResult:
    """Run the whole computation for one presentation at one prime."""
    _require_prime(p)
    machine = _build_machine(pres, p, budget, order_cap)
    return _finish(pres, p, machine, budget)


def find_basis(
    pres: Presentation,
    p: int,
    budget: Budget = DEFAULT_BUDGET,
    order_cap: int = ORDER_CAP,
):
    """Spanning set of A after certificate-driven reduction.

    Returns (spanning words, certificates, kind) where kind says whether
    the spanning size is the certified dim A or just an upper bound.
    """
    res = run_pipeline(pres, p, budget, order_cap)
    return list(res.spanning_set), list(res.certificates), res.dim_a_kind


def h2_dimension(
    pres: Presentation,
    p: int,
    budget: Budget = DEFAULT_BUDGET,
    order_cap: int = ORDER_CAP,
) -> tuple[int, BoundKind]:
    """dim H_2(G;F_p), exact or as a certified upper bound."""
    res = run_pipeline(pres, p, budget, order_cap)
    return res.h2_value, res.h2_kind


def h2_generator_candidates(
    pres: Presentation,
    p: int,
    budget: Budget = DEFAULT_BUDGET,
    order_cap: int = ORDER_CAP,
):
    """Candidate generator words, one per left-kernel basis vector.

    Each entry is (coefficient vector over the spanning set, word); the
    word multiplies the spanning elements by their coefficients in input
    order.  Any of them may still be trivial in homology: these are
    candidates, not certified nonzero classes.
    """
    return list(run_pipeline(pres, p, budget, order_cap).candidates)


def to_json(result: HopfResult) -> dict:
    """Serializable record; key set and order are part of the output contract."""
    gens = result.generators
    return {
        "group": result.group,
        "prime": result.prime,
        "n_generators": result.n_generators,
        "h1_dim": result.h1_dim,
        "dim_A": result.dim_a,
        "dim_A_kind": result.dim_a_kind.value,
        "rank_image": result.rank_image,
        "h2_value": result.h2_value,
        "h2_kind": result.h2_kind.value,
        "confluent_base": result.confluent_base,
        "confluent_cover": result.confluent_cover,
        "spanning_set": [render_word(w, gens) for w in result.spanning_set],
        "candidates": [
            {"coeffs": list(c), "word": render_word(w, gens)}
            for c, w in result.candidates
        ],
        "budget": dict(result.budget_report),
    }
