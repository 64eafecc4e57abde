"""Detection probabilities for the clique estimators.

Every estimator adds ``1/p`` when it detects a clique, where ``p`` is the
probability that the current sampling state lets it see that clique.  The
kernels here are closed forms in terms of ``inclusion(k, n, M)``, the chance
that k given edges among the first n sit in an M-slot reservoir.

Edge labels for a 4-clique {u, v, w, z} closed by e6 = (u, v):

    e1 = (w, z)   shared by both triangles
    e2 = (u, z), e4 = (u, w)   -> T1 = {e1, e2, e4}
    e3 = (v, w), e5 = (v, z)   -> T2 = {e1, e3, e5}

``t_i`` is the arrival index of e_i.
"""

from __future__ import annotations

from .reservoir import inclusion

__all__ = [
    "staged_inclusion",
    "prob_clique_fourest",
    "prob_clique_fiveest",
    "ts4c1_case",
    "prob_clique_ts4c1",
    "ts4c2_case",
    "prob_clique_ts4c2",
    "prob_clique_ts5c",
    "prob_clique_ts5c_exact",
    "TS4C1_CASES",
    "TS4C2_CASES",
]

TS4C1_CASES = (1, 2, 3, 4)
TS4C2_CASES = tuple(range(1, 14))


def _check_positive(**kw):
    for name, val in kw.items():
        if not isinstance(val, int) or isinstance(val, bool):
            raise TypeError(f"{name} must be an int")
        if val < 1:
            raise ValueError(f"{name} must be >= 1, got {val}")


def _check_distinct(*ts):
    if len(set(ts)) != len(ts):
        raise ValueError(f"arrival indexes must be distinct: {ts}")


def staged_inclusion(k_first: int, n1: int, cap1: int,
                     k_second: int, n2: int, cap2: int,
                     k_carried: int) -> float:
    """P(set A held at state n1 and set B held at a later state n2).

    ``k_first`` is |A ∪ B_old| where B_old are the members of B that had
    already arrived by n1, ``k_carried`` is |B_old|, ``k_second`` is |B|.
    Valid for a uniform reservoir whose capacity may shrink over time (cap1
    and cap2 are the capacities in force at the two states), since the kept
    set is always a uniform subset of the offers so far.
    """
    den = inclusion(k_carried, n1, cap1)
    if den == 0.0:
        return 0.0
    return inclusion(k_first, n1, cap1) * inclusion(k_second, n2, cap2) / den


# ---------------------------------------------------------------- FourEst

def prob_clique_fourest(t6: int, M: int) -> float:
    """All five older clique edges held just before e6 arrives."""
    _check_positive(t6=t6, M=M)
    if M < 5:
        raise ValueError("M must be >= 5 to hold five edges")
    return inclusion(5, t6 - 1, M)


def prob_clique_fiveest(t10: int, M: int) -> float:
    """All nine older edges of a 5-clique held just before the last arrives."""
    _check_positive(t10=t10, M=M)
    if M < 9:
        raise ValueError("M must be >= 9 to hold nine edges")
    return inclusion(9, t10 - 1, M)


# ---------------------------------------------------------------- TS4C1

def ts4c1_case(t1, t2, t4, t3, t5, t6, M_e) -> int:
    """Case label for the path through T1 = {e1, e2, e4}."""
    if t6 <= M_e:
        return 1
    t_star = max(t1, t2, t4, M_e + 1)
    after = (t3 > t_star) + (t5 > t_star)
    if after == 2:
        return 2
    if after == 1:
        return 3
    return 4


def _p_ts4c1(t1, t2, t4, t3, t5, t6, M_e, M_D, tau) -> float:
    M = M_e
    tri = 1.0 if tau <= M_D else M_D / tau
    if t6 <= M:
        return tri
    ts = max(t1, t2, t4, M + 1)
    pre = inclusion(2, ts - 1, M) * tri
    if t3 > ts and t5 > ts:
        return pre * inclusion(2, t6 - 1, M)
    if t3 > ts or t5 > ts:
        return pre * ((M - 2) / (ts - 3)) * ((M - 1) / (t6 - 2)) * ((ts - 1) / (t6 - 1))
    return (pre * ((M - 2) / (ts - 3)) * ((M - 3) / (ts - 4))
            * ((ts - 1) / (t6 - 1)) * ((ts - 2) / (t6 - 2)))


def prob_clique_ts4c1(t1, t2, t4, t3, t5, t6, M_e, M_D, tau) -> float:
    """Detection probability for the TS4C1 path through T1 = {e1, e2, e4}.

    T1 must be in the triangle sample (tau triangles offered to M_D slots)
    and the companions e3, e5 must be in the edge sample when e6 arrives.
    """
    _check_positive(t1=t1, t2=t2, t4=t4, t3=t3, t5=t5, t6=t6, M_e=M_e, M_D=M_D, tau=tau)
    _check_distinct(t1, t2, t4, t3, t5, t6)
    if M_e < 4:
        raise ValueError("M_e must be >= 4")
    if t6 < max(t1, t2, t3, t4, t5):
        raise ValueError("t6 must be the latest arrival")
    return _p_ts4c1(t1, t2, t4, t3, t5, t6, M_e, M_D, tau)


# ---------------------------------------------------------------- TS4C2

def _canon(t2, t4, t3, t5):
    if t4 > t2:
        t2, t4 = t4, t2
    if t5 > t3:
        t3, t5 = t5, t3
    return t2, t4, t3, t5


def _ts4c2_case_canon(t1, t2, t4, t3, t5, M) -> int:
    if max(t1, t2) <= M:
        return 1
    if t1 > t2 and t1 > t3:
        return 2
    if t3 > t1 > t2:
        return 3 if t1 > t5 else 5
    if t3 > t2 > t1:
        return 4 if t2 > t5 else 6
    if t2 > t1 > t3:
        if t4 > t1:
            return 11
        return 7 if t1 > M else 8
    # t2 > t3 > t1
    if t4 > t3:
        return 12 if t3 > M else 13
    return 9 if t3 > M else 10


def ts4c2_case(t1, t2, t4, t3, t5, M_e) -> int:
    """Case label (1..13) for a TS4C2 triangle pair."""
    t2, t4, t3, t5 = _canon(t2, t4, t3, t5)
    return _ts4c2_case_canon(t1, t2, t4, t3, t5, M_e)


def _p_ts4c2(t1, t2, t4, t3, t5, M, M_D, tau) -> float:
    if t4 > t2:
        t2, t4 = t4, t2
    if t5 > t3:
        t3, t5 = t5, t3
    J = inclusion
    pre = J(2, max(t1, t3) - 1, M) * J(2, tau, M_D)
    c = _ts4c2_case_canon(t1, t2, t4, t3, t5, M)
    if c == 1:
        q = 1.0
    elif c == 2:
        q = J(4, t1 - 1, M) / J(2, t1 - 1, M)
    elif c == 3:
        q = J(3, t1 - 1, M) / J(1, t1 - 1, M)
    elif c == 4:
        q = J(3, t2 - 1, M) / J(2, t2 - 1, M)
    elif c == 5:
        q = J(2, t1 - 1, M)
    elif c == 6:
        q = J(2, t2 - 1, M) / J(1, t2 - 1, M)
    elif c == 7:
        q = ((M - 1) / (t2 - 2)) * ((M - 2) / (t1 - 3)) * ((t1 - 1) / (t2 - 1))
    elif c == 9:
        q = J(3, t3 - 1, M) * J(2, t2 - 1, M) / J(2, t3 - 1, M) ** 2
    elif c == 12:
        q = J(2, t2 - 1, M) / J(1, t3 - 1, M)
    else:  # 8, 10, 11, 13
        q = J(2, t2 - 1, M)
    return pre * q


def prob_clique_ts4c2(t1, t2, t4, t3, t5, M_e, M_D, tau) -> float:
    """Probability that both triangles T1 and T2 are in the triangle sample.

    Each triangle must first be observed (its two older edges held by the
    edge sample when its closing edge arrives), then survive in the triangle
    reservoir after tau offers.
    """
    _check_positive(t1=t1, t2=t2, t4=t4, t3=t3, t5=t5, M_e=M_e, M_D=M_D)
    _check_distinct(t1, t2, t4, t3, t5)
    if M_e < 4 or M_D < 2:
        raise ValueError("need M_e >= 4 and M_D >= 2")
    if tau < 0:
        raise ValueError("tau must be >= 0")
    # tau below the triangle capacity clamps the pair factor to 1
    return _p_ts4c2(t1, t2, t4, t3, t5, M_e, M_D, tau)


# ---------------------------------------------------------------- TS5C

def prob_clique_ts5c(t, t_star, t_C, M_e, M_C) -> float:
    """Product-of-marginals approximation used by the TS5C update rule.

    ``t`` is the arrival of the edge closing the 5-clique, ``t_star`` the
    time the stored 4-clique was observed, ``t_C`` the number of 4-cliques
    offered to the clique sample so far.
    """
    _check_positive(t=t, t_star=t_star, t_C=t_C, M_e=M_e, M_C=M_C)
    if M_e < 3:
        raise ValueError("M_e must be >= 3")
    if t_star >= t:
        raise ValueError("t_star must precede t")
    return min(1.0, M_C / t_C) * min(1.0, M_e / t) ** 3 * min(1.0, M_e / t_star) ** 5


def prob_clique_ts5c_exact(t, t_star, companions, t_C, M_e, M_C) -> float:
    """Exact TS5C detection probability.

    ``companions`` are the arrival indexes of the three edges joining the new
    vertex to the stored 4-clique.  Those that arrived before ``t_star`` had
    to share the sample with the 4-clique's five older edges.
    """
    _check_positive(t=t, t_star=t_star, t_C=t_C, M_e=M_e, M_C=M_C)
    if t_star >= t:
        raise ValueError("t_star must precede t")
    if len(companions) != 3:
        raise ValueError("need three companion arrivals")
    k = sum(1 for c in companions if c < t_star)
    p = staged_inclusion(5 + k, t_star - 1, M_e, 3, t - 1, M_e, k)
    return p * min(1.0, M_C / t_C)
