"""
Constructive monotonicity of fixed-major-index columns for single patterns.

For a pattern sigma with at least one descent, an explicit injection maps
each sigma-avoiding permutation of length n with major index m to one of
length n + 1 with the same major index, by one of three insertions selected
from tail(sigma) and slope(pi).  The harness re-enumerates both sides and
checks injectivity, avoidance and major-index preservation directly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .enumeration import PatternSet, generate_avoiders
from .errors import PreconditionError, UnsupportedPatternError
from .perms import Perm, contains, descents, format_perm, insert, major_index, slope, tail


class InjectionTag(enum.Enum):
    APPEND_MAX = "append_max"
    EXPAND_AT_TAIL = "expand_at_tail"
    INSERT_MIN_INTO_SLOPE = "insert_min_into_slope"


@dataclass(frozen=True)
class InjectionCase:
    tag: InjectionTag
    position: int
    value: int


def monotone_injection(pi: Perm, sigma: Perm) -> tuple[Perm, InjectionCase]:
    """The image of pi under the column injection for the pattern sigma.

    Case selection: append the new maximum when tail(sigma) = 0; expand the
    letter at position n + 1 - tail(sigma) when the slope of pi reaches
    tail(sigma); otherwise insert the letter 1 at the leftmost end of the
    slope, the rightmost position that creates no descent.
    """
    if not descents(sigma):
        raise UnsupportedPatternError(
            f"pattern {format_perm(sigma) or '(empty)'} is increasing: its columns are "
            "eventually zero (any long permutation contains an increasing or a long "
            "decreasing pattern), so no length-increasing injection exists"
        )
    if contains(pi, sigma):
        raise PreconditionError(
            f"{format_perm(pi)} contains {format_perm(sigma)}; the injection is only "
            "defined on avoiders"
        )
    n = len(pi)
    t = tail(sigma)
    if t == 0:
        case = InjectionCase(InjectionTag.APPEND_MAX, n + 1, n + 1)
    elif slope(pi) >= t:
        pos = n + 1 - t
        case = InjectionCase(InjectionTag.EXPAND_AT_TAIL, pos, pi[pos - 1])
    else:
        case = InjectionCase(InjectionTag.INSERT_MIN_INTO_SLOPE, n + 1 - slope(pi), 1)
    return insert(pi, case.position, case.value), case


@dataclass(frozen=True)
class MonotonicityReport:
    sigma: Perm
    n: int
    m_max: int
    verified: bool
    counterexample: Optional[tuple[Perm, str]]
    case_tally: dict[str, int] = field(default_factory=dict)
    counts: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "schema": 1,
            "pattern": format_perm(self.sigma),
            "n": self.n,
            "max_maj": self.m_max,
            "verified": self.verified,
            "cases": dict(self.case_tally),
            "counts": {str(m): list(pair) for m, pair in sorted(self.counts.items())},
            "counterexample": None if self.counterexample is None else {
                "pi": format_perm(self.counterexample[0]),
                "reason": self.counterexample[1],
            },
        }


def verify_monotonicity(sigma: Perm, n: int, m_max: int | None = None, *,
                        max_nodes: int | None = None) -> MonotonicityReport:
    """Exhaustively check the injection on every avoider of length n.

    For each major index m <= m_max: the image of every avoider must avoid
    sigma, keep its major index, and be distinct from every other image; the
    column counts at n and n + 1 are recomputed independently and compared.
    """
    if not descents(sigma):
        raise UnsupportedPatternError(
            f"pattern {format_perm(sigma)} is increasing; see monotone_injection"
        )
    limit = m_max if m_max is not None else n * (n - 1) // 2
    single = PatternSet((sigma,))

    by_m: dict[int, list[Perm]] = {}
    for pi in generate_avoiders(n, single, max_nodes=max_nodes):
        m = major_index(pi)
        if m <= limit:
            by_m.setdefault(m, []).append(pi)
    counts_next: dict[int, int] = {}
    for pi in generate_avoiders(n + 1, single, max_nodes=max_nodes):
        m = major_index(pi)
        if m <= limit:
            counts_next[m] = counts_next.get(m, 0) + 1

    tally = {tag.value: 0 for tag in InjectionTag}
    counts: dict[int, tuple[int, int]] = {}
    for m in range(limit + 1):
        source = by_m.get(m, [])
        counts[m] = (len(source), counts_next.get(m, 0))
        images = set()
        for pi in source:
            image, case = monotone_injection(pi, sigma)
            tally[case.tag.value] += 1
            if major_index(image) != m:
                return MonotonicityReport(sigma, n, limit, False,
                                          (pi, f"image changes major index to {major_index(image)}"),
                                          tally, counts)
            if contains(image, sigma):
                return MonotonicityReport(sigma, n, limit, False,
                                          (pi, "image contains the pattern"), tally, counts)
            if image in images:
                return MonotonicityReport(sigma, n, limit, False,
                                          (pi, "image collides with another avoider"),
                                          tally, counts)
            images.add(image)
        if len(source) > counts_next.get(m, 0):
            return MonotonicityReport(sigma, n, limit, False,
                                      (source[0] if source else (),
                                       f"column drops: {len(source)} > {counts_next.get(m, 0)} at m={m}"),
                                      tally, counts)
    return MonotonicityReport(sigma, n, limit, True, None, tally, counts)
