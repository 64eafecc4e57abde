"""Fixed-capacity uniform reservoir (Algorithm R) and its inclusion law."""

from __future__ import annotations

import random
from typing import Generic, Iterator, TypeVar

T = TypeVar("T")


def inclusion(k: int, n: int, cap: int) -> float:
    """Probability that k given items among the first n offers are all held
    by a reservoir of capacity ``cap`` after n offers.

    Lenient helper for internal use: k = 0 gives 1, k > cap gives 0.
    """
    if n <= cap or k <= 0:
        return 1.0
    if k > cap:
        return 0.0
    p = 1.0
    for i in range(k):
        p *= (cap - i) / (n - i)
    return p


def joint_inclusion_prob(k: int, t: int, M: int) -> float:
    """P(k specific items from the first t offers all sit in an M-reservoir)."""
    if M < 1 or t < 1:
        raise ValueError("M and t must be positive")
    if k < 1 or k > min(M, t):
        raise ValueError(f"k={k} outside 1..min(M, t)={min(M, t)}")
    return inclusion(k, t, M)


class Reservoir(Generic[T]):
    """Uniform sample of at most ``capacity`` items from everything offered.

    Draw order per offer once full: one coin ``rng.random() < M/t``, then (on
    heads) one victim index ``rng.randrange(M)``.
    """

    __slots__ = ("capacity", "items", "seen")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.items: list[T] = []
        self.seen = 0

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[T]:
        return iter(self.items)

    def offer(self, item: T, rng: random.Random) -> tuple[bool, T | None]:
        """Offer one item.  Returns ``(inserted, evicted)``."""
        self.seen += 1
        items = self.items
        if len(items) < self.capacity:
            items.append(item)
            return True, None
        if rng.random() < self.capacity / self.seen:
            j = rng.randrange(self.capacity)
            old = items[j]
            items[j] = item
            return True, old
        return False, None

    def shrink(self, new_capacity: int, rng: random.Random) -> list[T]:
        """Reduce capacity, keeping a uniform subset of the current items.

        The result is again a uniform sample of size ``new_capacity`` of all
        offers so far.  Returns the evicted items.
        """
        if new_capacity < 1:
            raise ValueError("capacity must be >= 1")
        if new_capacity > self.capacity:
            raise ValueError("shrink cannot grow a reservoir")
        self.capacity = new_capacity
        evicted: list[T] = []
        items = self.items
        while len(items) > new_capacity:
            j = rng.randrange(len(items))
            items[j], items[-1] = items[-1], items[j]
            evicted.append(items.pop())
        return evicted
