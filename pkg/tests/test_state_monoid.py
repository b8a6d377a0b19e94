"""Signature congruence, class table, UP vocabulary, Ramsey factorization."""

import itertools
import random

import pytest

from chronosynth.omega_word import LassoWord, omega_equivalent
from chronosynth.state_monoid import (
    MonoidCapExceeded,
    MonoidContext,
    MonoidError,
    build_UP,
    build_class_table,
    naive_equiv,
    product,
    ramsey_factorize,
    signature_of,
)


def total_ctx(states, letters=("x",)):
    rel = frozenset((p, q) for p in states for q in states)
    return MonoidContext(tuple(states), {a: rel for a in letters})


def random_ctx(rng, states, letters=("x", "y")):
    rels = {}
    for a in letters:
        rels[a] = frozenset(
            (p, q) for p in states for q in states if rng.random() < 0.6
        )
    return MonoidContext(tuple(states), rels)


def test_signature_single_state():
    ctx = total_ctx(("q",))
    sig = signature_of(("q",), ctx)
    assert sig.first == sig.last == "q"
    assert sig.pairs == frozenset({("q", frozenset())})
    assert sig.occ == frozenset({"q"})
    assert all(v for _, v in sig.run_flags)


def test_signature_qq_differs_from_q():
    ctx = total_ctx(("q",))
    assert signature_of(("q",), ctx) != signature_of(("q", "q"), ctx)
    assert signature_of(("q", "q"), ctx).pairs == frozenset(
        {("q", frozenset()), ("q", frozenset({"q"}))}
    )


def test_empty_string_rejected():
    ctx = total_ctx(("q",))
    with pytest.raises(MonoidError):
        signature_of((), ctx)


def test_product_is_concatenation_exhaustive_two_states():
    ctx = total_ctx(("p", "q"))
    strings = [
        s
        for n in range(1, 4)
        for s in itertools.product(("p", "q"), repeat=n)
    ]
    for u in strings:
        su = signature_of(u, ctx)
        for v in strings:
            assert product(ctx, su, signature_of(v, ctx)) == signature_of(u + v, ctx)


def test_product_is_concatenation_random_contexts():
    rng = random.Random(19)
    for _ in range(30):
        ctx = random_ctx(rng, ("a", "b", "c"))
        u = tuple(rng.choice("abc") for _ in range(rng.randint(1, 4)))
        v = tuple(rng.choice("abc") for _ in range(rng.randint(1, 4)))
        assert product(ctx, signature_of(u, ctx), signature_of(v, ctx)) == signature_of(
            u + v, ctx
        )


def test_product_associative_random():
    rng = random.Random(37)
    ctx = random_ctx(rng, ("a", "b"))
    for _ in range(60):
        sigs = [
            signature_of(tuple(rng.choice("ab") for _ in range(rng.randint(1, 3))), ctx)
            for _ in range(3)
        ]
        left = product(ctx, product(ctx, sigs[0], sigs[1]), sigs[2])
        right = product(ctx, sigs[0], product(ctx, sigs[1], sigs[2]))
        assert left == right


def test_naive_equiv_basic():
    ctx = total_ctx(("q",))
    assert naive_equiv(("q",), ("q",), ctx)
    assert not naive_equiv(("q",), ("q", "q"), ctx)


def test_naive_equiv_matches_signatures():
    rng = random.Random(43)
    for trial in range(6):
        ctx = random_ctx(rng, ("a", "b"))
        strings = [
            s for n in range(1, 5) for s in itertools.product(("a", "b"), repeat=n)
        ]
        for u in strings:
            for v in strings:
                assert naive_equiv(u, v, ctx) == (
                    signature_of(u, ctx) == signature_of(v, ctx)
                )


def test_class_table_single_state():
    ctx = total_ctx(("q",))
    table = build_class_table(ctx)
    assert table.class_count == 2
    assert table.d_q == 2
    sig_qq = signature_of(("q", "q"), ctx)
    assert table.idempotents == frozenset({sig_qq})
    assert table.witnesses[sig_qq] == ("q", "q")


def test_class_table_matches_brute_force_partition():
    ctx = total_ctx(("p", "q"))
    table = build_class_table(ctx)
    strings = [
        s for n in range(1, 7) for s in itertools.product(("p", "q"), repeat=n)
    ]
    sigs = {signature_of(s, ctx) for s in strings}
    assert sigs == set(table.witnesses)
    # witnesses carry their own class
    for sig, w in table.witnesses.items():
        assert signature_of(w, ctx) == sig
        assert len(w) <= table.d_q


def test_class_table_cap():
    ctx = total_ctx(("a", "b", "c"))
    with pytest.raises(MonoidCapExceeded):
        build_class_table(ctx, cap=5)


def test_empty_relation_kills_flags():
    ctx = MonoidContext(("p", "q"), {"x": frozenset()})
    sig = signature_of(("p", "q"), ctx)
    assert not sig.flag("x")
    assert signature_of(("p",), ctx).flag("x")


def test_class_count_monotone_in_states():
    counts = []
    for states in (("a",), ("a", "b"), ("a", "b", "c")):
        counts.append(build_class_table(total_ctx(states)).class_count)
    assert counts == sorted(counts)


def test_up_single_state():
    ctx = total_ctx(("q",))
    table = build_class_table(ctx)
    up = build_UP(table)
    assert len(up) == 1
    member = up[0]
    assert member.lag == ("q", "q")
    assert member.period == ("q", "q")


def test_up_members_satisfy_defining_equations():
    ctx = total_ctx(("p", "q"))
    table = build_class_table(ctx)
    up = build_UP(table)
    for m in up:
        vv = m.period + m.period
        uv = m.lag + m.period
        assert naive_equiv(vv, m.period, ctx)
        assert naive_equiv(uv, m.lag, ctx)
        assert len(m.lag) <= table.d_q
        assert len(m.period) <= table.d_q


def test_up_covers_small_lassos():
    ctx = total_ctx(("p", "q"))
    table = build_class_table(ctx)
    up = build_UP(table)
    words = [m.word for m in up]
    for ulen in range(0, 3):
        for vlen in range(1, 3):
            for u in itertools.product(("p", "q"), repeat=ulen):
                for v in itertools.product(("p", "q"), repeat=vlen):
                    w = LassoWord(u, v)
                    assert any(
                        omega_equivalent(w, cand, ctx.relations) for cand in words
                    ), f"no UP member equivalent to {w}"


def test_up_positions_and_lemma_profile():
    # beyond the lag, the visited state set stays the lag's occurrence set,
    # and equal letters at positions past the lag give equivalent prefixes
    ctx = total_ctx(("p", "q"))
    table = build_class_table(ctx)
    for m in build_UP(table)[:40]:
        n = len(m.lag)
        word = [m.letter(i) for i in range(1, n + 3 * max(1, len(m.period)) + 1)]
        s_u = set(m.lag)
        for l in range(n, len(word) + 1):
            assert set(word[:l]) == s_u
        for l in range(n + 1, len(word) + 1):
            for l2 in range(l + 1, len(word) + 1):
                if word[l - 1] == word[l2 - 1]:
                    assert naive_equiv(tuple(word[:l]), tuple(word[:l2]), ctx)


def test_restricted_table_matches_path_strings():
    rng = random.Random(57)
    for _ in range(8):
        ctx = random_ctx(rng, ("a", "b"), letters=("x", "y"))
        table = build_class_table(ctx, letter="x")
        # oracle: signatures of all x-path strings up to length 5
        paths = set()
        frontier = [(q,) for q in ctx.states]
        for _ in range(5):
            new = []
            for w in frontier:
                paths.add(signature_of(w, ctx))
                for q in ctx.states:
                    if ctx.has_edge("x", w[-1], q):
                        new.append(w + (q,))
            frontier = new
        for w in frontier:
            paths.add(signature_of(w, ctx))
        # the restricted closure finds at least these and nothing non-path
        assert paths <= set(table.witnesses)
        for sig, w in table.witnesses.items():
            assert all(ctx.has_edge("x", w[i], w[i + 1]) for i in range(len(w) - 1))


def test_letter_restricted_up_covers_path_lassos():
    # every small lasso that is a valid path under a letter must be
    # equivalent to a vocabulary member that is itself a path and starts at
    # the same state (this is what the arena construction relies on)
    rng = random.Random(91)
    for _ in range(6):
        ctx = random_ctx(rng, ("a", "b"), letters=("x",))
        table = build_class_table(ctx, letter="x")
        up = build_UP(table, only_runs=True)
        rel = ctx.relations["x"]

        def is_path(word):
            return all((word[i], word[i + 1]) in rel for i in range(len(word) - 1))

        for ulen in range(0, 3):
            for vlen in range(1, 3):
                for u in itertools.product(("a", "b"), repeat=ulen):
                    for v in itertools.product(("a", "b"), repeat=vlen):
                        w = LassoWord(u, v)
                        unfolded = w.unfold(len(u) + 2 * len(v) + 1)
                        if not is_path(unfolded):
                            continue
                        assert any(
                            omega_equivalent(w, m.word, ctx.relations)
                            for m in up
                        ), f"path lasso {w} uncovered under relation {sorted(rel)}"


def test_member_path_flags_match_unfolded_check():
    rng = random.Random(97)
    for _ in range(10):
        ctx = random_ctx(rng, ("a", "b", "c"))
        table = build_class_table(ctx)
        for m in build_UP(table)[:80]:
            word = m.lag + m.period * 2
            for letter in ctx.letters:
                literal = all(
                    ctx.has_edge(letter, word[i], word[i + 1])
                    for i in range(len(word) - 1)
                )
                assert m.is_path_for(letter) == literal


def test_ramsey_single_state():
    ctx = total_ctx(("q",))
    head, block, cuts = ramsey_factorize(LassoWord((), ("q",)), ctx)
    assert head == ("q", "q")
    assert block == ("q", "q")
    assert cuts == [2, 4, 6]


def test_ramsey_two_cycle():
    ctx = total_ctx(("p", "q"))
    w = LassoWord((), ("p", "q"))
    head, block, cuts = ramsey_factorize(w, ctx)
    sig_b = signature_of(block, ctx)
    assert product(ctx, sig_b, sig_b) == sig_b
    sig_h = signature_of(head, ctx)
    assert product(ctx, sig_h, sig_b) == sig_h
    # the factorization reassembles the original word
    flat = list(head) + list(block) * 4
    assert tuple(flat[: len(flat)]) == w.unfold(len(flat))


def test_ramsey_random_words():
    rng = random.Random(67)
    for _ in range(40):
        ctx = random_ctx(rng, ("a", "b", "c"))
        u = tuple(rng.choice("abc") for _ in range(rng.randint(0, 3)))
        v = tuple(rng.choice("abc") for _ in range(rng.randint(1, 3)))
        w = LassoWord(u, v)
        head, block, cuts = ramsey_factorize(w, ctx)
        sig_b = signature_of(block, ctx)
        sig_h = signature_of(head, ctx)
        assert product(ctx, sig_b, sig_b) == sig_b
        assert product(ctx, sig_h, sig_b) == sig_h
        flat = list(head) + list(block) * 3
        assert tuple(flat) == w.unfold(len(flat))
        assert cuts[1] - cuts[0] == len(block)
