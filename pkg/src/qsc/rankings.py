"""Classical ranking combinatorics.

Alternatives, strict rankings, pairwise tallies, Condorcet scores, weak
orders, linear-extension enumeration, and the Lehmer-code bijection that
labels the ranking basis. Everything here is immutable and pure.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import InvalidArgument

DEFAULT_MAX_DIM = 720  # 6! -- keeps dense ranking-space matrices desk-sized
_MAX_DIM_ENV = "QSC_MAX_DIM"


def max_ranking_dim() -> int:
    """Cap on the ranking-space dimension m!; override with QSC_MAX_DIM."""
    raw = os.environ.get(_MAX_DIM_ENV)
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise InvalidArgument(f"{_MAX_DIM_ENV} must be an integer, got {raw!r}") from None
    if value < 2:
        raise InvalidArgument(f"{_MAX_DIM_ENV} must be at least 2, got {value}")
    return value


@dataclass(frozen=True)
class AlternativeSet:
    """Ordered set of distinct alternative labels."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 2:
            raise InvalidArgument("need at least 2 alternatives")
        if len(set(names)) != len(names):
            raise InvalidArgument(f"alternative labels must be unique: {names}")
        if any(not isinstance(n, str) or not n for n in names):
            raise InvalidArgument("alternative labels must be nonempty strings")
        if factorial(len(names)) > max_ranking_dim():
            raise InvalidArgument(
                f"{len(names)} alternatives give a ranking space of dimension "
                f"{factorial(len(names))} > cap {max_ranking_dim()}; "
                f"raise {_MAX_DIM_ENV} to override"
            )

    @property
    def m(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise InvalidArgument(f"unknown alternative {label!r}") from None

    def label(self, i: int) -> str:
        return self.names[i]

    def ordered_pairs(self) -> list[tuple[str, str]]:
        """All ordered pairs (x, y) with x != y, in a fixed scan order."""
        return [(x, y) for x in self.names for y in self.names if x != y]

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "AlternativeSet":
        return cls(tuple(labels))


@dataclass(frozen=True)
class Ranking:
    """A strict total order; ``order[0]`` is the most preferred index."""

    alternatives: AlternativeSet
    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(self.alternatives.m)):
            raise InvalidArgument(f"not a permutation of 0..{self.alternatives.m - 1}: {order}")

    @classmethod
    def from_labels(cls, alternatives: AlternativeSet, labels: Sequence[str]) -> "Ranking":
        return cls(alternatives, tuple(alternatives.index(x) for x in labels))

    @classmethod
    def from_string(cls, alternatives: AlternativeSet, text: str) -> "Ranking":
        """Parse the compact ``"a>b>c"`` form."""
        parts = [p.strip() for p in text.split(">")]
        if any(not p for p in parts):
            raise InvalidArgument(f"malformed ranking string {text!r}")
        return cls.from_labels(alternatives, parts)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.alternatives.names[i] for i in self.order)

    def to_string(self) -> str:
        return ">".join(self.labels)

    def position(self, label: str) -> int:
        return self.order.index(self.alternatives.index(label))

    def top(self) -> str:
        return self.alternatives.names[self.order[0]]

    def prefers(self, x: str, y: str) -> bool:
        """True iff x appears before y; x and y must be distinct and known."""
        if x == y:
            raise InvalidArgument(f"cannot compare alternative {x!r} with itself")
        return self.position(x) < self.position(y)

    def oriented_pairs(self) -> frozenset[tuple[str, str]]:
        """All (x, y) label pairs with x ranked above y."""
        labels = self.labels
        return frozenset(
            (labels[i], labels[j]) for i in range(len(labels)) for j in range(i + 1, len(labels))
        )

    def reversed(self) -> "Ranking":
        return Ranking(self.alternatives, tuple(reversed(self.order)))

    def relabelled(self, perm: Sequence[int]) -> "Ranking":
        """Apply the label permutation i -> perm[i] to every position."""
        return Ranking(self.alternatives, tuple(perm[i] for i in self.order))


@dataclass(frozen=True)
class ClassicalProfile:
    """One strict ranking per voter, all over the same alternatives."""

    rankings: tuple[Ranking, ...]

    def __post_init__(self):
        rankings = tuple(self.rankings)
        object.__setattr__(self, "rankings", rankings)
        if not rankings:
            raise InvalidArgument("a profile needs at least one voter")
        alts = rankings[0].alternatives
        if any(r.alternatives != alts for r in rankings):
            raise InvalidArgument("all rankings must share one alternative set")

    @property
    def n(self) -> int:
        return len(self.rankings)

    @property
    def alternatives(self) -> AlternativeSet:
        return self.rankings[0].alternatives


@dataclass(frozen=True)
class WeakOrder:
    """Ordered partition of alternative indices; earlier tier = strictly preferred."""

    alternatives: AlternativeSet
    tiers: tuple[frozenset[int], ...]

    def __post_init__(self):
        tiers = tuple(frozenset(t) for t in self.tiers)
        object.__setattr__(self, "tiers", tiers)
        seen: set[int] = set()
        for tier in tiers:
            if not tier:
                raise InvalidArgument("weak-order tiers must be nonempty")
            if tier & seen:
                raise InvalidArgument("weak-order tiers must be disjoint")
            seen |= tier
        if seen != set(range(self.alternatives.m)):
            raise InvalidArgument("weak-order tiers must cover every alternative")

    def tier_labels(self) -> list[list[str]]:
        return [sorted(self.alternatives.names[i] for i in tier) for tier in self.tiers]


def prefers(ranking: Ranking, x: str, y: str) -> bool:
    """Whether ``ranking`` places x above y."""
    return ranking.prefers(x, y)


def voters_preferring(profile: ClassicalProfile, x: str, y: str) -> frozenset[int]:
    """1-based indices of the voters ranking x above y."""
    return frozenset(i + 1 for i, r in enumerate(profile.rankings) if r.prefers(x, y))


def condorcet_scores(profile: ClassicalProfile) -> dict[str, int]:
    """Pairwise-victory counts per alternative.

    x scores a point against y whenever at least as many voters rank x
    above y as the reverse, so an exact tie credits both sides.
    Self-comparisons are excluded.
    """
    names = profile.alternatives.names
    wins = {x: 0 for x in names}
    for i, x in enumerate(names):
        for y in names[i + 1 :]:
            for_x = len(voters_preferring(profile, x, y))
            for_y = profile.n - for_x
            if for_x >= for_y:
                wins[x] += 1
            if for_y >= for_x:
                wins[y] += 1
    return wins


def weak_order_from_scores(alternatives: AlternativeSet, scores: Mapping[str, int]) -> WeakOrder:
    """Group alternatives into tiers of equal score, best score first."""
    for name in alternatives.names:
        if name not in scores:
            raise InvalidArgument(f"missing score for alternative {name!r}")
    by_score: dict[int, set[int]] = {}
    for name in alternatives.names:
        by_score.setdefault(scores[name], set()).add(alternatives.index(name))
    tiers = tuple(frozenset(by_score[s]) for s in sorted(by_score, reverse=True))
    return WeakOrder(alternatives, tiers)


def linear_extensions(weak_order: WeakOrder) -> list[Ranking]:
    """Every strict ranking obtained by ordering each tier internally.

    Output is lexicographic in basis-index terms; the count is the product
    of the tier-size factorials.
    """
    alts = weak_order.alternatives
    tier_orders = [list(permutations(sorted(tier))) for tier in weak_order.tiers]
    extensions = []
    for combo in product(*tier_orders):
        order: tuple[int, ...] = ()
        for part in combo:
            order += part
        extensions.append(Ranking(alts, order))
    return extensions


def ranking_index(ranking: Ranking) -> int:
    """Lehmer rank of the ranking among all m! orders; identity maps to 0."""
    order = ranking.order
    m = len(order)
    rank = 0
    for pos, value in enumerate(order):
        smaller_after = sum(1 for later in order[pos + 1 :] if later < value)
        rank += smaller_after * factorial(m - 1 - pos)
    return rank


def ranking_from_index(index: int, alternatives: AlternativeSet) -> Ranking:
    """Inverse of :func:`ranking_index`."""
    m = alternatives.m
    if not 0 <= index < factorial(m):
        raise InvalidArgument(f"ranking index {index} out of range 0..{factorial(m) - 1}")
    remaining = list(range(m))
    order = []
    rest = index
    for pos in range(m):
        f = factorial(m - 1 - pos)
        digit, rest = divmod(rest, f)
        order.append(remaining.pop(digit))
    return Ranking(alternatives, tuple(order))


@lru_cache(maxsize=64)
def all_rankings(alternatives: AlternativeSet) -> tuple[Ranking, ...]:
    """All rankings in basis-index order, so ``all_rankings(A)[k]`` has index k."""
    return tuple(ranking_from_index(k, alternatives) for k in range(factorial(alternatives.m)))
