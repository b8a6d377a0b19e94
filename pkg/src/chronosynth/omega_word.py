"""Ultimately periodic omega-words (lassos) and their equivalences.

A lasso ``u (v)^w`` finitely presents the omega-word ``u v v v ...``.
Letters are arbitrary hashable values; automaton modules use strings and
letter pairs.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LassoWord:
    """An omega-word ``prefix . period^omega`` with a nonempty period."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    def letter_at(self, i: int):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def unfold(self, n: int) -> tuple:
        """First n letters of the omega-word."""
        return tuple(self.letter_at(i) for i in range(n))

    @property
    def lag(self) -> int:
        return len(self.prefix)

    @property
    def period_length(self) -> int:
        return len(self.period)

    def __str__(self):
        return format_lasso(self)


def _primitive_root(v: tuple) -> tuple:
    """Shortest w with v = w^k."""
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v == v[:d] * (n // d):
            return v[:d]
    return v


def normalize(w: LassoWord) -> LassoWord:
    """Minimal-period, minimal-prefix representative of the same omega-word.

    Two lassos denote the same omega-word iff their normal forms are equal.
    Rotating a primitive period keeps it primitive, so the period is
    minimized once, before prefix absorption.
    """
    v = _primitive_root(w.period)
    u = w.prefix
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = (v[-1],) + v[:-1]
    return LassoWord(u, v)


def inf_set(w: LassoWord) -> frozenset:
    """Letters occurring infinitely often: exactly the normalized period."""
    return frozenset(normalize(w).period)


def pair_profile(w: LassoWord) -> frozenset:
    """The set of pairs (letter at m, set of letters strictly before m).

    The prefix-letter sets grow monotonically and reach the full letter set
    within ``lag + period`` positions, after which each period letter pairs
    with the full set; one further period copy therefore adds nothing new,
    so scanning ``u v v`` is exhaustive.
    """
    horizon = len(w.prefix) + 2 * len(w.period)
    seen = set()
    pairs = set()
    for i in range(horizon):
        letter = w.letter_at(i)
        pairs.add((letter, frozenset(seen)))
        seen.add(letter)
    return frozenset(pairs)


def path_flags(w: LassoWord, relations: dict) -> dict:
    """Per input letter a: is the omega-word an E_a-path throughout?

    ``relations`` maps each input letter to a set of state pairs (q, q').
    Consecutive pairs of ``u v v`` cover the prefix, the prefix/period
    boundary, the period interior, and the period wrap-around.
    """
    word = w.prefix + w.period + w.period
    flags = {}
    for a, rel in relations.items():
        flags[a] = all((word[i], word[i + 1]) in rel for i in range(len(word) - 1))
    return flags


def omega_equivalent(w1: LassoWord, w2: LassoWord, relations: dict | None = None) -> bool:
    """Equivalence of omega-words over automaton states.

    Holds iff (1) the infinitely-occurring letter sets agree, (2, 3) the
    (letter, letters-strictly-before) pair sets agree in both directions,
    and (4) the per-input-letter path validity flags agree.  ``relations``
    may be omitted when no path context is relevant.
    """
    if inf_set(w1) != inf_set(w2):
        return False
    if pair_profile(w1) != pair_profile(w2):
        return False
    if relations:
        if path_flags(w1, relations) != path_flags(w2, relations):
            return False
    return True


def zip_lassos(w1: LassoWord, w2: LassoWord) -> LassoWord:
    """Letter-wise pairing of two lassos, as a lasso over pairs."""
    from math import lcm

    lag = max(len(w1.prefix), len(w2.prefix))
    per = lcm(len(w1.period), len(w2.period))
    prefix = tuple((w1.letter_at(i), w2.letter_at(i)) for i in range(lag))
    period = tuple((w1.letter_at(lag + i), w2.letter_at(lag + i)) for i in range(per))
    return LassoWord(prefix, period)


def parse_lasso(text: str) -> LassoWord:
    """Parse the textual syntax ``u(v)^w``, e.g. ``ab(ba)^w``.

    Letters are single characters unless commas are present, in which case
    the comma-separated pieces are the letters.
    """
    s = text.strip()
    if not s.endswith("^w"):
        raise ValueError(f"lasso must end with '^w': {text!r}")
    body = s[:-2]
    if not body.endswith(")"):
        raise ValueError(f"missing period parentheses: {text!r}")
    open_idx = body.index("(")
    u_part, v_part = body[:open_idx], body[open_idx + 1 : -1]

    def letters(chunk: str) -> tuple:
        if "," in chunk:
            return tuple(piece for piece in chunk.split(",") if piece)
        return tuple(chunk)

    return LassoWord(letters(u_part), letters(v_part))


def format_lasso(w: LassoWord) -> str:
    def chunk(letters):
        parts = [str(x) for x in letters]
        if any(len(p) != 1 for p in parts):
            return ",".join(parts)
        return "".join(parts)

    u, v = chunk(w.prefix), chunk(w.period)
    # mixed single/multi-character letters force the comma form on both sides
    if ("," in u) != ("," in v) and w.prefix and w.period:
        u = ",".join(str(x) for x in w.prefix)
        v = ",".join(str(x) for x in w.period)
    return f"{u}({v})^w"
