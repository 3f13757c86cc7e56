"""Interwoven index sets: decision, verification and construction.

A proper subset S of the indices is *interwoven* for a matrix when
|S| <= 1, or when all but one of its members can be ordered as
p_1, ..., p_{s-1} with companions q_1, ..., q_{s-1} such that
a_{p_i q_i} != 0, q_1 lies outside S, and each later q_i lies outside S
or among the earlier p's.  Informally: S can be unravelled one index at
a time, each unravelled index pointing at something already outside.

The decision procedure is greedy.  "p is addable" (p has a nonzero entry
into the outside-or-already-chosen set) is monotone in the chosen set,
so repeatedly adding the smallest addable member reaches the unique
maximal chosen set; S is interwoven iff that closure has at least
|S| - 1 members.  The brute-force equivalence over all small patterns is
part of the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DominanceClass,
    IndexSet,
    Matrix,
    classify_dominance,
    non_sdd_rows,
    principal_submatrix,
)
from .graph import chain_condition


@dataclass(frozen=True)
class InterwovenCertificate:
    """Sequences witnessing that ``subset`` is interwoven.

    ``p_seq`` holds |S|-1 distinct members of S, ``q_seq`` their
    companions, and ``leftover`` the single member of S not in ``p_seq``
    (None when |S| <= 1 and the sequences are empty).
    """

    subset: IndexSet
    p_seq: tuple[int, ...]
    q_seq: tuple[int, ...]
    leftover: int | None


def _trivial_certificate(S: IndexSet) -> InterwovenCertificate:
    return InterwovenCertificate(subset=S, p_seq=(), q_seq=(), leftover=None)


def _check_subset(A: Matrix, S: IndexSet):
    if S.universe_size != A.n:
        raise ValueError("subset universe does not match matrix order")
    if len(S) > 1 and S.is_full:
        raise ValueError("interwoven sets must be proper subsets of the index set")


def verify_certificate(A: Matrix, cert: InterwovenCertificate) -> bool:
    """Check every structural requirement of a certificate against A."""
    S = cert.subset
    _check_subset(A, S)
    s = len(S)
    expected = max(s - 1, 0)
    if len(cert.p_seq) != expected or len(cert.q_seq) != expected:
        return False
    if s <= 1:
        return cert.leftover is None
    members = S.member_set
    p_set = set(cert.p_seq)
    if len(p_set) != expected or not p_set <= members:
        return False
    if cert.leftover is None or cert.leftover not in members or cert.leftover in p_set:
        return False
    mod = A.modulus
    allowed = set(S.complement().members)
    for p, q in zip(cert.p_seq, cert.q_seq):
        if q not in allowed or mod[p, q] == 0.0:
            return False
        allowed.add(p)
    return True


def is_interwoven(A: Matrix, S: IndexSet) -> InterwovenCertificate | None:
    """Greedy decision: a certificate when S is interwoven, else None."""
    _check_subset(A, S)
    s = len(S)
    if s <= 1:
        return _trivial_certificate(S)
    mod = A.modulus
    outside = list(S.complement().members)
    chosen: list[int] = []
    companions: list[int] = []
    remaining = list(S.members)
    while len(chosen) < s - 1:
        pick = None
        for p in remaining:
            # smallest companion, preferring outside S over chosen members
            q = next((j for j in outside if mod[p, j] > 0.0), None)
            if q is None:
                q = next((j for j in sorted(chosen) if mod[p, j] > 0.0), None)
            if q is not None:
                pick = (p, q)
                break
        if pick is None:
            return None
        p, q = pick
        chosen.append(p)
        companions.append(q)
        remaining.remove(p)
    return InterwovenCertificate(
        subset=S,
        p_seq=tuple(chosen),
        q_seq=tuple(companions),
        leftover=remaining[0],
    )


def interwoven_from_chains(A: Matrix, tol: float = 0.0) -> InterwovenCertificate | None:
    """Build a certificate for the non-strict rows from shortest chains.

    Members of T are grouped by breadth-first distance to the strict
    rows; listing them in nondecreasing distance order (dropping the
    last) makes each member's chain successor a valid companion: depth-1
    members point outside T, deeper members point at a member one level
    shallower, which appears earlier in the sequence.
    """
    report = chain_condition(A, tol)
    T = non_sdd_rows(A, tol)
    if not report.holds:
        return None
    if len(T) <= 1:
        return _trivial_certificate(T)
    ordered = sorted(T.members, key=lambda i: (len(report.paths[i]), i))
    p_seq = tuple(ordered[:-1])
    q_seq = tuple(report.paths[p][1] for p in p_seq)
    return InterwovenCertificate(
        subset=T, p_seq=p_seq, q_seq=q_seq, leftover=ordered[-1]
    )


def interwoven_from_peeling(A: Matrix, tol: float = 0.0) -> InterwovenCertificate | None:
    """Build a certificate for the non-strict rows by recursive peeling.

    Restricting A to its non-strict rows T and recomputing T there peels
    off a batch of indices per stage: rows that became strict inside the
    restriction.  A freshly peeled row gained its strictness from a
    column dropped in the previous stage, so it always has a companion
    in the previous batch (stage one pairs into the strict rows of A).
    Succeeds iff the peel shrinks to at most one index; stalls (no row
    becomes strict) mean T is not interwoven and yield None.

    Requires a diagonally dominant input.
    """
    if classify_dominance(A, tol) is DominanceClass.NOT_DD:
        raise ValueError("peeling construction requires a diagonally dominant matrix")
    T = non_sdd_rows(A, tol)
    if len(T) <= 1:
        return _trivial_certificate(T)
    if T.is_full:
        return None
    mod = A.modulus
    current = list(T.members)
    pool = list(T.complement().members)  # companion pool for the first batch
    p_seq: list[int] = []
    q_seq: list[int] = []
    while True:
        sub = principal_submatrix(A, IndexSet(tuple(current), A.n))
        t_rel = non_sdd_rows(sub, tol)
        t_next = [current[k] for k in t_rel.members]
        batch = [i for i in current if i not in set(t_next)]
        if not batch:
            return None  # peel stalled: no row became strict
        if len(t_next) == 0:
            leftover = batch.pop()  # drop the largest; nothing pairs into it
        for p in batch:
            q = next((j for j in pool if mod[p, j] > 0.0), None)
            if q is None:
                return None
            p_seq.append(p)
            q_seq.append(q)
        if len(t_next) == 0:
            break
        if len(t_next) == 1:
            leftover = t_next[0]
            break
        pool = batch
        current = t_next
    return InterwovenCertificate(
        subset=T, p_seq=tuple(p_seq), q_seq=tuple(q_seq), leftover=leftover
    )
