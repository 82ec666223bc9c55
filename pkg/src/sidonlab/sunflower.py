"""Classical sunflowers over uniform set families, and a vectorial variant.

A classical sunflower is k sets whose pairwise intersections all equal one
core. k vectors form a vectorial sunflower of type I when they agree on
every coordinate in I and, after deleting those coordinates, their
coordinate sets are pairwise disjoint (a disjoint set of vectors, d.s.v.).

The vectorial finder runs the constructive argument: tag each coordinate
by position via x -> h*x + i so tuples become h-sets, find a classical
sunflower of (h^2-h+1)(k-1)+1 petals among the tagged sets, read the type
I off its core, then select petals in ascending order, discarding after
each selection the at most h(h-1) vectors that collide with it across
distinct free coordinates. When the pipeline finds nothing (small or
adversarial families below the counting bound), an exhaustive search over
types and petal subsets settles the verdict, so "none" is always exact.

Size guarantees, checked in tests: a family of h-sets larger than
h!(k-1)^h always yields a classical sunflower, and a family of h-tuples
larger than h!((h^2-h+1)k)^h always yields a vectorial one.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations

from .numbertheory import RangeError

__all__ = [
    "SunflowerCert",
    "is_vectorial_sunflower",
    "set_h_embed",
    "find_classical_sunflower",
    "find_vectorial_sunflower",
]


@dataclass(frozen=True)
class SunflowerCert:
    """Petals by member index, the type (1-indexed positions), core values."""

    petal_indices: tuple[int, ...]
    type_set: tuple[int, ...]
    core_values: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "petalIndices": list(self.petal_indices),
                "typeSet": list(self.type_set),
                "coreValues": list(self.core_values),
            },
            sort_keys=True,
        )

    def verify(self, members) -> bool:
        members = [tuple(t) for t in getattr(members, "members", members)]
        idxs = self.petal_indices
        if len(set(idxs)) != len(idxs):
            return False
        if not all(0 <= i < len(members) for i in idxs):
            return False
        petals = [members[i] for i in idxs]
        for pos, val in zip(self.type_set, self.core_values):
            if any(p[pos - 1] != val for p in petals):
                return False
        return is_vectorial_sunflower(petals, self.type_set)


def _uniform_arity(members) -> int:
    arities = {len(t) for t in members}
    if len(arities) > 1:
        raise RangeError("vectors must share one arity")
    return arities.pop() if arities else 0


def is_vectorial_sunflower(members, type_set) -> bool:
    """Both definition clauses for the given type: agreement on I, and the
    I-deleted vectors forming a d.s.v."""
    members = [tuple(t) for t in members]
    h = _uniform_arity(members)
    I = sorted(set(int(i) for i in type_set))
    if I and not (1 <= I[0] and I[-1] <= h):
        raise RangeError("type positions must lie in 1..arity")
    if len(set(members)) != len(members):
        return False
    for i in I:
        if len({t[i - 1] for t in members}) > 1:
            return False
    drop = set(I)
    reduced = [tuple(v for pos, v in enumerate(t, 1) if pos not in drop)
               for t in members]
    if len(set(reduced)) != len(reduced):
        return False
    sets = [set(r) for r in reduced]
    for a, b in combinations(sets, 2):
        if a & b:
            return False
    return True


def set_h_embed(vector) -> frozenset[int]:
    """Position-tagged set {h*x_i + i}: injective, h elements, and the
    position is recoverable as value mod h (0 standing for h)."""
    t = tuple(int(v) for v in vector)
    if any(v < 1 for v in t):
        raise RangeError("coordinates must be positive")
    h = len(t)
    return frozenset(h * x + i for i, x in enumerate(t, 1))


def _embed_position(value: int, h: int) -> int:
    return value % h or h


def find_classical_sunflower(sets, k: int):
    """(core, k petal sets) with pairwise intersections exactly the core,
    or None; never None for families larger than h!(k-1)^h."""
    if k < 1:
        raise RangeError("k must be >= 1")
    family = sorted({frozenset(s) for s in sets}, key=sorted)
    if not family:
        return None
    if len({len(s) for s in family}) > 1:
        raise RangeError("sets must share one size")
    return _classical(family, k)


def _classical(family, k):
    chosen, used = [], set()
    for s in family:
        if not (used & s):
            chosen.append(s)
            used.update(s)
    if len(chosen) >= k:
        return frozenset(), chosen[:k]
    counts = Counter(x for s in family for x in s)
    if not counts:
        return None
    # most popular element; ties go to the smallest value
    x = max(counts, key=lambda v: (counts[v], -v))
    reduced = sorted((s - {x} for s in family if x in s), key=sorted)
    got = _classical(reduced, k)
    if got is None:
        return None
    core, petals = got
    return core | {x}, [p | {x} for p in petals]


def _coerce_members(family):
    members = tuple(tuple(int(v) for v in t)
                    for t in getattr(family, "members", family))
    if len(set(members)) != len(members):
        raise RangeError("family members must be distinct")
    return members


def _prune_to_sunflower(members, idxs, type_set, k):
    """Ascending-lex selection, discarding cross-coordinate colliders."""
    h = len(members[idxs[0]])
    free = [i for i in range(1, h + 1) if i not in set(type_set)]
    alive = sorted(idxs, key=lambda i: members[i])
    selected = []
    while alive and len(selected) < k:
        cur = alive.pop(0)
        selected.append(cur)
        cvals = members[cur]
        alive = [
            j for j in alive
            if not any(members[j][ip - 1] == cvals[i - 1]
                       for i in free for ip in free if ip != i)
        ]
    if len(selected) < k:
        return None
    core_values = tuple(members[selected[0]][i - 1] for i in type_set)
    cert = SunflowerCert(petal_indices=tuple(selected),
                         type_set=tuple(type_set),
                         core_values=core_values)
    return cert if cert.verify(members) else None


def _disjoint_index_pick(cands, k):
    """cands: list of (index, coordinate set); exact backtracking."""
    chosen = []

    def backtrack(start, used):
        if len(chosen) == k:
            return True
        for pos in range(start, len(cands)):
            idx, s = cands[pos]
            if used & s:
                continue
            chosen.append(idx)
            if backtrack(pos + 1, used | s):
                return True
            chosen.pop()
        return False

    return list(chosen) if backtrack(0, frozenset()) else None


def _complete_search(members, k):
    h = len(members[0])
    order = sorted(range(len(members)), key=lambda i: members[i])
    positions = range(1, h + 1)
    subsets = sorted(
        (tuple(c) for size in range(h + 1)
         for c in combinations(positions, size)),
        key=lambda I: (len(I), I))
    for I in subsets:
        drop = set(I)
        groups = defaultdict(list)
        for i in order:
            groups[tuple(members[i][p - 1] for p in I)].append(i)
        for key in sorted(groups):
            idxs = groups[key]
            if len(idxs) < k:
                continue
            cands = []
            for i in idxs:
                red = frozenset(v for pos, v in enumerate(members[i], 1)
                                if pos not in drop)
                cands.append((i, red))
            picked = _disjoint_index_pick(cands, k)
            if picked is None:
                continue
            cert = SunflowerCert(petal_indices=tuple(picked),
                                 type_set=I,
                                 core_values=key)
            if cert.verify(members):
                return cert
    return None


def find_vectorial_sunflower(family, k: int):
    """SunflowerCert or None; never None for families larger than
    h!((h^2-h+1)k)^h. Pipeline first, exhaustive fallback second."""
    if k < 1:
        raise RangeError("k must be >= 1")
    members = _coerce_members(family)
    if not members:
        return None
    h = _uniform_arity(members)
    if k == 1:
        first = min(range(len(members)), key=lambda i: members[i])
        return SunflowerCert(petal_indices=(first,), type_set=(),
                             core_values=())
    if len(members) >= k:
        embeds = {set_h_embed(t): i for i, t in enumerate(members)}
        target = (h * h - h + 1) * (k - 1) + 1
        got = find_classical_sunflower(embeds.keys(), target)
        if got is not None:
            core, petals = got
            idxs = [embeds[p] for p in petals]
            type_set = tuple(sorted(_embed_position(v, h) for v in core))
            cert = _prune_to_sunflower(members, idxs, type_set, k)
            if cert is not None:
                return cert
    return _complete_search(members, k)
