"""The congruence of finite state-strings as a finite monoid of signatures.

Two nonempty strings over automaton states are identified when they share
first and last states, the same set of (letter, letters-strictly-before)
pairs in both directions, and the same per-input-letter path validity.
The signature below is a computable normal form for that relation: pair-set
equality captures the two quantifier conditions exactly, and the explicit
occurrence set makes concatenation computable on signatures alone.

The class table closes the length-1 generators under right multiplication,
keeps shortest (lexicographically least) witnesses, and yields the move
vocabulary for the game arenas: the ultimately periodic words built from an
absorbing representative and an idempotent period representative.
"""

from __future__ import annotations

from dataclasses import dataclass

from .omega_word import LassoWord


class MonoidError(Exception):
    pass


class MonoidCapExceeded(MonoidError):
    def __init__(self, count):
        super().__init__(f"signature cap exceeded; {count} classes built so far")
        self.count = count


@dataclass(frozen=True)
class MonoidContext:
    """State universe plus, per input letter, the one-step relation E_a."""

    states: tuple
    relations: dict  # letter -> frozenset of (q, q') pairs

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(self.states)))
        object.__setattr__(
            self, "relations", {a: frozenset(r) for a, r in self.relations.items()}
        )

    @property
    def letters(self):
        return tuple(sorted(self.relations))

    def has_edge(self, a, q, q2) -> bool:
        return (q, q2) in self.relations[a]


def context_from_automaton(a) -> MonoidContext:
    return MonoidContext(states=tuple(a.states), relations=a.edge_relations())


@dataclass(frozen=True)
class StateSignature:
    first: object
    last: object
    occ: frozenset
    pairs: frozenset  # of (state, frozenset of states strictly before)
    run_flags: tuple  # sorted (letter, bool) pairs

    def flag(self, a) -> bool:
        return dict(self.run_flags)[a]

    def is_run_for_some_letter(self) -> bool:
        return any(v for _, v in self.run_flags)


def signature_of(u, ctx: MonoidContext) -> StateSignature:
    """Direct computation of the invariant; u must be nonempty."""
    u = tuple(u)
    if not u:
        raise MonoidError("signatures are defined for nonempty strings only")
    seen = set()
    pairs = set()
    for q in u:
        pairs.add((q, frozenset(seen)))
        seen.add(q)
    flags = tuple(
        (a, all(ctx.has_edge(a, u[i], u[i + 1]) for i in range(len(u) - 1)))
        for a in ctx.letters
    )
    return StateSignature(u[0], u[-1], frozenset(seen), frozenset(pairs), flags)


def product(ctx: MonoidContext, s1: StateSignature, s2: StateSignature) -> StateSignature:
    """Signature of any concatenation u1 u2 with signature_of(u_i) = s_i."""
    pairs = set(s1.pairs)
    for q, before in s2.pairs:
        pairs.add((q, s1.occ | before))
    flags = tuple(
        (a, f1 and dict(s2.run_flags)[a] and ctx.has_edge(a, s1.last, s2.first))
        for a, f1 in s1.run_flags
    )
    return StateSignature(s1.first, s2.last, s1.occ | s2.occ, frozenset(pairs), flags)


def naive_equiv(u, v, ctx: MonoidContext) -> bool:
    """Literal double-loop check of the defining conditions; test oracle."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise MonoidError("nonempty strings required")
    if u[0] != v[0] or u[-1] != v[-1]:
        return False

    def covers(x, y):
        for m in range(len(x)):
            before_m = set(x[:m])
            found = False
            for n in range(len(y)):
                if y[n] == x[m] and set(y[:n]) == before_m:
                    found = True
                    break
            if not found:
                return False
        return True

    if not covers(u, v) or not covers(v, u):
        return False
    for a in ctx.letters:
        ru = all(ctx.has_edge(a, u[i], u[i + 1]) for i in range(len(u) - 1))
        rv = all(ctx.has_edge(a, v[i], v[i + 1]) for i in range(len(v) - 1))
        if ru != rv:
            return False
    return True


@dataclass
class ClassTable:
    """All signature classes with shortest witnesses, ordered by discovery."""

    ctx: MonoidContext
    witnesses: dict  # StateSignature -> tuple (shortest, lexicographically least)
    order: list  # signatures in (length, lex) witness order
    idempotents: frozenset
    d_q: int
    restricted_to: object = None  # input letter, when path-restricted

    @property
    def class_count(self) -> int:
        return len(self.witnesses)

    def representative(self, sig) -> tuple:
        return self.witnesses[sig]


def build_class_table(ctx: MonoidContext, cap: int = 200_000, letter=None) -> ClassTable:
    """Close length-1 generators under appending states, breadth-first.

    Witnesses are generated level by level in lexicographic order, so the
    first witness found for a class is the canonical one.  With ``letter``
    given, only strings that are E_letter-paths are enumerated; the result
    is the table of path classes for that input letter (sufficient for the
    per-letter arena vocabulary).
    """
    if letter is not None and letter not in ctx.relations:
        raise MonoidError(f"unknown input letter {letter!r}")
    witnesses = {}
    order = []
    level = []  # (witness, signature) pairs of the current length
    for q in ctx.states:
        sig = signature_of((q,), ctx)
        if sig not in witnesses:
            witnesses[sig] = (q,)
            order.append(sig)
            level.append(((q,), sig))
    while level:
        if len(witnesses) > cap:
            raise MonoidCapExceeded(len(witnesses))
        next_level = []
        for witness, sig in level:
            for q in ctx.states:
                if letter is not None and not ctx.has_edge(letter, witness[-1], q):
                    continue
                new_sig = product(ctx, sig, signature_of((q,), ctx))
                if new_sig in witnesses:
                    continue
                if len(witnesses) + len(next_level) >= cap:
                    raise MonoidCapExceeded(len(witnesses) + len(next_level))
                new_witness = witness + (q,)
                witnesses[new_sig] = new_witness
                next_level.append((new_witness, new_sig))
        next_level.sort(key=lambda pair: pair[0])
        for w, s in next_level:
            order.append(s)
        level = next_level
    idem = frozenset(s for s in witnesses if product(ctx, s, s) == s)
    d_q = max(len(w) for w in witnesses.values())
    return ClassTable(ctx, witnesses, order, idem, d_q, restricted_to=letter)


@dataclass(frozen=True)
class UPMember:
    """An ultimately periodic state-word: absorbing lag, idempotent period."""

    lag: tuple
    period: tuple
    lag_sig: StateSignature
    period_sig: StateSignature

    @property
    def word(self) -> LassoWord:
        return LassoWord(self.lag, self.period)

    def letter(self, n: int):
        """1-indexed position: lag first, then the period cycles."""
        if n < 1:
            raise MonoidError("positions are 1-indexed")
        if n <= len(self.lag):
            return self.lag[n - 1]
        return self.period[(n - len(self.lag) - 1) % len(self.period)]

    def is_path_for(self, a) -> bool:
        # absorption (lag_sig * period_sig = lag_sig) plus idempotence make
        # the lag flag alone decide path validity of the whole omega-word
        return self.lag_sig.flag(a)


def build_UP(table: ClassTable, only_runs: bool = False) -> list:
    """The move vocabulary: lag . period^omega over class representatives.

    A pair of representatives (r, e) qualifies when e's class is idempotent
    and appending e does not change r's class.  ``only_runs`` keeps only
    members that are a valid run for at least one input letter; the others
    can never be played and would only contribute edgeless arena nodes.
    """
    ctx = table.ctx
    members = []
    idem_list = [s for s in table.order if s in table.idempotents]
    for sig in table.order:
        rep = table.witnesses[sig]
        for e_sig in idem_list:
            if product(ctx, sig, e_sig) != sig:
                continue
            member = UPMember(rep, table.witnesses[e_sig], sig, e_sig)
            if only_runs and not member.lag_sig.is_run_for_some_letter():
                continue
            members.append(member)
    return members


def ramsey_factorize(w: LassoWord, ctx: MonoidContext):
    """Cut an ultimately periodic word into an absorbing head and idempotent blocks.

    Returns (head, block, cut_positions) with w = head . block . block . ...,
    the block's class idempotent, and appending the block leaving the head's
    class unchanged.  Some power of the period has an idempotent signature
    because the monoid is finite; multiplying the head by that power once
    more makes it absorbing.
    """
    u, v = tuple(w.prefix), tuple(w.period)
    sig_v = signature_of(v, ctx)
    power = v
    e_sig = sig_v
    k = 1
    seen = {e_sig: 1}
    while product(ctx, e_sig, e_sig) != e_sig:
        power = power + v
        e_sig = product(ctx, e_sig, sig_v)
        k += 1
        if e_sig in seen and seen[e_sig] != k:
            raise MonoidError("no idempotent power found (broken product)")
        seen[e_sig] = k
    block = power  # = v^k

    start = 0 if u else 1
    j = start
    while True:
        head = u + v * j
        if head:
            head_sig = signature_of(head, ctx)
            if product(ctx, head_sig, e_sig) == head_sig:
                break
        j += 1
        if j > 2 * k + 1:
            raise MonoidError("absorbing head not found (broken product)")
    cuts = [len(head) + i * len(block) for i in range(3)]
    return head, block, cuts
