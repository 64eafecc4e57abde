"""Barabási-Albert preferential-attachment graphs as edge streams."""

from __future__ import annotations

from .stream import make_rng, write_edges  # noqa: F401  (write_edges re-exported)


def generate_ba(n: int, m: int, seed: int) -> list[tuple[int, int]]:
    """Edges of a BA graph in creation order.

    Vertices 0..m form a seed clique.  Each later vertex attaches to m
    distinct existing vertices chosen with probability proportional to
    degree (sampling from the list of edge endpoints, rejecting repeats).
    Edge count is C(m+1, 2) + m (n - m - 1).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n <= m:
        raise ValueError("need n > m")
    rng = make_rng(seed)
    edges: list[tuple[int, int]] = []
    ends: list[int] = []
    for j in range(1, m + 1):
        for i in range(j):
            edges.append((i, j))
            ends.append(i)
            ends.append(j)
    choice = rng.choice
    for v in range(m + 1, n):
        picked: list[int] = []
        seen = set()
        while len(picked) < m:
            w = choice(ends)
            if w not in seen:
                seen.add(w)
                picked.append(w)
        for w in picked:
            edges.append((v, w))
            ends.append(v)
            ends.append(w)
    return edges
