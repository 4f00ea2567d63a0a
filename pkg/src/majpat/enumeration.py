"""
Counting pattern-avoiding permutations by major index.

Two independent computation paths are provided and cross-checked:

* brute force: a depth-first generator that extends prefix patterns by
  appending the next relative rank.  Appending never disturbs the descents
  already present, so the major index is monotone along the tree and the
  search can prune both on containment (a new occurrence must use the newest
  letter) and on a major-index ceiling.

* cores: every permutation with major index m is core gamma + padding
  profile with maj_plus(gamma) = m, and whether gamma . a avoids the patterns
  only depends on the profile capped at the longest pattern length K (an
  occurrence uses at most K letters from any inserted run).  Counting
  profiles with a fixed cap signature is stars and bars, so each admissible
  core contributes an exactly computable, eventually polynomial count.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .decomp import Profile, compose
from .errors import InvalidInputError, ResourceLimitError, VerificationError
from .perms import (
    Perm,
    avoids,
    contains,
    contains_ending_at_last,
    format_perm,
    magnitude,
    major_index,
    parse_perm,
    set_magnitude,
    Magnitude,
)
from .poly import Polynomial, ZERO

DEFAULT_MAX_NODES = 100_000_000
DEFAULT_CORE_LEN_LIMIT = 9


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"environment variable {name}={raw!r} is not an integer") from exc


def max_nodes_default() -> int:
    return _env_int("MAJPAT_MAX_NODES", DEFAULT_MAX_NODES)


def core_len_limit_default() -> int:
    return _env_int("MAJPAT_MAX_CORE_LEN", DEFAULT_CORE_LEN_LIMIT)


@dataclass(frozen=True)
class PatternSet:
    """A deduplicated finite set of nonempty patterns, sorted for determinism."""

    patterns: tuple[Perm, ...] = ()

    def __post_init__(self):
        seen = sorted(set(self.patterns), key=lambda p: (len(p), p))
        if any(len(p) == 0 for p in seen):
            raise InvalidInputError("the empty permutation is not a valid pattern")
        object.__setattr__(self, "patterns", tuple(seen))

    @staticmethod
    def of(*patterns: Perm | str) -> "PatternSet":
        parsed = tuple(parse_perm(p) if isinstance(p, str) else p for p in patterns)
        return PatternSet(parsed)

    @staticmethod
    def from_text(text: str) -> "PatternSet":
        """Parse a pattern list: ';'-separated permutation texts, or a
        ','-separated list of digit-string patterns when no ';' is present."""
        text = text.strip()
        if not text:
            return PatternSet()
        if ";" in text:
            parts = [seg for seg in text.split(";") if seg.strip()]
            return PatternSet(tuple(parse_perm(p) for p in parts))
        parts = [tok for tok in text.split(",") if tok.strip()]
        try:
            if any(not tok.strip().isdigit() for tok in parts):
                raise InvalidInputError(f"bad pattern token in {text!r}")
            return PatternSet(tuple(parse_perm(p) for p in parts))
        except InvalidInputError as exc:
            raise InvalidInputError(
                f"{exc}; a comma-separated list names one digit-string pattern per "
                "token -- separate patterns with ';' when any pattern itself needs "
                "the comma form"
            ) from exc

    def texts(self) -> list[str]:
        return [format_perm(p) for p in self.patterns]

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    @property
    def max_len(self) -> int:
        return max((len(p) for p in self.patterns), default=0)

    @property
    def cap(self) -> int:
        """Profile cap used by the signature counting; any positive value is
        valid for the empty set, where avoidance never constrains."""
        return self.max_len if self.patterns else 1

    @property
    def magnitude(self) -> Magnitude:
        return set_magnitude(self.patterns)

    @property
    def all_finite_magnitude(self) -> bool:
        return all(magnitude(p).is_finite for p in self.patterns)


def _triangle(n: int) -> int:
    return n * (n - 1) // 2


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int | None):
        self.left = limit if limit is not None else max_nodes_default()

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise ResourceLimitError(
                "search node budget exceeded; raise --max-nodes / MAJPAT_MAX_NODES"
            )


def _brute_fill(rows, word: Perm, mj: int, max_n: int, maj_cap: int,
                sigs: tuple[Perm, ...], budget: _Budget) -> None:
    # Record the node, then extend by appending every relative rank.
    n = len(word)
    if n:
        rows[n - 1][mj] += 1
    if n == max_n:
        return
    last = word[n - 1] if n else 0
    for v in range(1, n + 2):
        child_mj = mj + (n if last >= v else 0)
        if child_mj > maj_cap:
            continue
        child = tuple(x + 1 if x >= v else x for x in word) + (v,)
        if any(contains_ending_at_last(child, s) for s in sigs):
            continue
        budget.spend()
        _brute_fill(rows, child, child_mj, max_n, maj_cap, sigs, budget)


def _zero_rows(max_n: int, maj_cap: int) -> list[list[int]]:
    return [[0] * (min(maj_cap, _triangle(n)) + 1) for n in range(1, max_n + 1)]


def _merge_rows(target: list[list[int]], source: list[list[int]]) -> None:
    for row_t, row_s in zip(target, source):
        for i, v in enumerate(row_s):
            row_t[i] += v


def _subtree_task(args) -> list[list[int]]:
    sigs, max_n, maj_cap, max_nodes, seeds = args
    rows = _zero_rows(max_n, maj_cap)
    budget = _Budget(max_nodes)
    for word, mj in seeds:
        _brute_fill(rows, word, mj, max_n, maj_cap, sigs, budget)
    return rows


def _brute_rows(patterns: PatternSet, max_n: int, maj_cap: int,
                parallelism: int, max_nodes: int | None) -> list[list[int]]:
    sigs = patterns.patterns
    rows = _zero_rows(max_n, maj_cap)
    if parallelism <= 1:
        _brute_fill(rows, (), 0, max_n, maj_cap, sigs, _Budget(max_nodes))
        return rows

    # Expand a frontier wide enough to share, record the interior here, and
    # farm the subtrees out; the merge is a cell-wise sum, so the result is
    # identical for every parallelism degree.
    frontier: list[tuple[Perm, int]] = [((), 0)]
    budget = _Budget(max_nodes)
    while len(frontier) < 4 * parallelism and frontier and len(frontier[0][0]) < max_n:
        next_level = []
        for word, mj in frontier:
            n = len(word)
            if n:
                rows[n - 1][mj] += 1
            last = word[n - 1] if n else 0
            for v in range(1, n + 2):
                child_mj = mj + (n if last >= v else 0)
                if child_mj > maj_cap:
                    continue
                child = tuple(x + 1 if x >= v else x for x in word) + (v,)
                if any(contains_ending_at_last(child, s) for s in sigs):
                    continue
                budget.spend()
                next_level.append((child, child_mj))
        frontier = next_level
    buckets: list[list[tuple[Perm, int]]] = [[] for _ in range(parallelism)]
    for i, seed in enumerate(frontier):
        buckets[i % parallelism].append(seed)
    tasks = [(sigs, max_n, maj_cap, max_nodes, bucket) for bucket in buckets if bucket]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        for part in pool.map(_subtree_task, tasks):
            _merge_rows(rows, part)
    return rows


def generate_avoiders(n: int, patterns: PatternSet, *,
                      max_nodes: int | None = None) -> Iterator[Perm]:
    """Stream every pattern-avoiding permutation of length n exactly once."""
    if n < 0:
        raise InvalidInputError(f"length must be non-negative, got {n}")
    sigs = patterns.patterns
    budget = _Budget(max_nodes)

    def rec(word: Perm) -> Iterator[Perm]:
        if len(word) == n:
            yield word
            return
        m = len(word)
        for v in range(1, m + 2):
            child = tuple(x + 1 if x >= v else x for x in word) + (v,)
            if any(contains_ending_at_last(child, s) for s in sigs):
                continue
            budget.spend()
            yield from rec(child)

    return rec(())


def count_avoiders(n: int, patterns: PatternSet, *,
                   max_nodes: int | None = None) -> int:
    """Exact number of pattern-avoiding permutations of length n."""
    if n < 0:
        raise InvalidInputError(f"length must be non-negative, got {n}")
    if n == 0:
        return 1
    rows = _brute_rows(patterns, n, _triangle(n), 1, max_nodes)
    return sum(rows[n - 1])


@dataclass(frozen=True)
class MajTable:
    """Exact counts of avoiders by length (rows, n >= 1) and major index (columns).

    Row n stores columns m = 0 .. min(max_maj, n(n-1)/2); cells beyond the
    triangle are identically zero and rendered blank in CSV.
    """

    patterns: PatternSet
    max_n: int
    max_maj: int
    rows: tuple[tuple[int, ...], ...]

    def entry(self, n: int, m: int) -> int:
        if not (1 <= n <= self.max_n and 0 <= m <= self.max_maj):
            raise InvalidInputError(f"cell ({n}, {m}) outside the computed table")
        row = self.rows[n - 1]
        return row[m] if m < len(row) else 0

    def row_sum(self, n: int) -> int:
        return sum(self.rows[n - 1])

    def column(self, m: int) -> list[int]:
        return [self.entry(n, m) for n in range(1, self.max_n + 1)]

    def to_json_obj(self) -> dict:
        return {
            "schema": 1,
            "patterns": self.patterns.texts(),
            "max_n": self.max_n,
            "max_maj": self.max_maj,
            "rows": [{"n": i + 1, "counts": list(row)} for i, row in enumerate(self.rows)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    @staticmethod
    def from_json_obj(obj: dict) -> "MajTable":
        try:
            patterns = PatternSet.of(*obj["patterns"])
            rows = tuple(tuple(int(c) for c in r["counts"]) for r in obj["rows"])
            return MajTable(patterns, int(obj["max_n"]), int(obj["max_maj"]), rows)
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad table JSON: {exc}") from exc

    def to_csv(self) -> str:
        header = "n," + ",".join(str(m) for m in range(self.max_maj + 1))
        lines = [header]
        for i, row in enumerate(self.rows):
            cells = [str(i + 1)] + [str(c) for c in row]
            cells += [""] * (self.max_maj + 1 - len(row))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    @staticmethod
    def rows_from_csv(text: str) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Parse the CSV emission back into (max_maj, ragged rows)."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n,"):
            raise InvalidInputError("bad table CSV: missing header")
        max_maj = len(lines[0].split(",")) - 2
        rows = []
        for ln in lines[1:]:
            cells = ln.split(",")
            rows.append(tuple(int(c) for c in cells[1:] if c != ""))
        return max_maj, tuple(rows)


def maj_table(max_n: int, max_maj: int, patterns: PatternSet, *,
              algorithm: str = "brute", parallelism: int = 1,
              max_nodes: int | None = None,
              core_len_limit: int | None = None) -> MajTable:
    """Compute the full table of counts for 1 <= n <= max_n, 0 <= m <= max_maj.

    algorithm is "brute", "cores", or "both"; both-mode raises
    VerificationError on the first differing cell.
    """
    if max_n < 1:
        raise InvalidInputError(f"max_n must be >= 1, got {max_n}")
    if max_maj < 0:
        raise InvalidInputError(f"max_maj must be >= 0, got {max_maj}")
    if algorithm not in ("brute", "cores", "both"):
        raise InvalidInputError(f"unknown algorithm {algorithm!r}")
    maj_cap = min(max_maj, _triangle(max_n))
    brute = cores = None
    if algorithm in ("brute", "both"):
        brute = _brute_rows(patterns, max_n, maj_cap, parallelism, max_nodes)
    if algorithm in ("cores", "both"):
        cores = _core_rows(patterns, max_n, maj_cap, max_nodes, core_len_limit)
    if algorithm == "both":
        for i, (rb, rc) in enumerate(zip(brute, cores)):
            for m, (vb, vc) in enumerate(zip(rb, rc)):
                if vb != vc:
                    raise VerificationError(
                        f"path disagreement at cell (n={i + 1}, m={m}): "
                        f"brute={vb}, cores={vc}"
                    )
    rows = brute if brute is not None else cores
    return MajTable(patterns, max_n, max_maj, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# Core path


def _signature_ways(c: Sequence[int], total: int, cap: int) -> int:
    """Number of profiles a with min(a_i, cap) = c_i coordinate-wise and |a| = total."""
    saturated = sum(1 for x in c if x == cap)
    excess = total - sum(c)
    if saturated == 0:
        return 1 if excess == 0 else 0
    if excess < 0:
        return 0
    return comb(excess + saturated - 1, saturated - 1)


def _avoiding_signatures(gamma: Perm, patterns: PatternSet, *,
                         budget_sum: int | None = None,
                         require_last_descent: bool = True,
                         node_budget: _Budget | None = None) -> Iterator[Profile]:
    """All cap signatures c (coordinates <= cap) whose composed permutation
    avoids the patterns, optionally restricted to sum(c) <= budget_sum.

    Avoidance of gamma . a is monotone decreasing in the profile, so once a
    partial signature composes to a containing permutation, every coordinate
    increase and every extension is pruned.
    """
    cap = patterns.cap
    k = len(gamma)
    sigs = patterns.patterns
    if sigs and not avoids(gamma, sigs):
        return
    gk = gamma[k - 1] if k else 0
    c = [0] * (k + 1)

    def rec(j: int, used: int) -> Iterator[Profile]:
        if j == k + 1:
            if not require_last_descent or k == 0 or any(c[i] > 0 for i in range(gk)):
                yield tuple(c)
            return
        limit = cap if budget_sum is None else min(cap, budget_sum - used)
        for v in range(limit + 1):
            c[j] = v
            if v > 0 and sigs:
                if node_budget is not None:
                    node_budget.spend()
                composed = compose(gamma, tuple(c[: j + 1]) + (0,) * (k - j))
                if not avoids(composed, sigs):
                    break
            yield from rec(j + 1, used + v)
        c[j] = 0

    yield from rec(0, 0)


def count_by_core(gamma: Perm, n: int, patterns: PatternSet, *,
                  max_nodes: int | None = None) -> int:
    """Exact number of avoiders of length n whose core is gamma."""
    k = len(gamma)
    total = n - k
    if total < 0:
        return 0
    cap = patterns.cap
    budget = _Budget(max_nodes)
    return sum(
        _signature_ways(c, total, cap)
        for c in _avoiding_signatures(gamma, patterns, budget_sum=total, node_budget=budget)
    )


def _core_rows(patterns: PatternSet, max_n: int, maj_cap: int,
               max_nodes: int | None, core_len_limit: int | None) -> list[list[int]]:
    limit = core_len_limit if core_len_limit is not None else core_len_limit_default()
    rows = _zero_rows(max_n, maj_cap)
    cap = patterns.cap
    budget = _Budget(max_nodes)
    # Empty core: the identity permutations.
    for n in range(1, max_n + 1):
        rows[n - 1][0] += count_by_core((), n, patterns)
    # A core of length k only yields permutations of length >= k + 1.
    top = min(max_n - 1, maj_cap)
    if top > limit:
        raise ResourceLimitError(
            f"core enumeration needs cores up to length {top}, over the configured "
            f"limit {limit}; raise MAJPAT_MAX_CORE_LEN or use the brute-force path"
        )
    for k in range(1, top + 1):
        for gamma in itertools.permutations(range(1, k + 1)):
            budget.spend()
            mp = k + major_index(gamma)
            if mp > maj_cap:
                continue
            sig_list = list(_avoiding_signatures(
                gamma, patterns, budget_sum=max_n - k, node_budget=budget))
            if not sig_list:
                continue
            for n in range(k + 1, max_n + 1):
                total = n - k
                cnt = sum(_signature_ways(c, total, cap) for c in sig_list)
                if cnt and mp < len(rows[n - 1]):
                    rows[n - 1][mp] += cnt
    return rows


@dataclass(frozen=True)
class CoreSet:
    """All distinct cores of avoiders with a given extended major index."""

    m: int
    patterns: PatternSet
    cores: tuple[Perm, ...]


def _admissible(gamma: Perm, patterns: PatternSet) -> bool:
    # The avoiding-profile set is a down-set and any valid profile dominates
    # some unit profile e_i with i <= gamma_k, so unit profiles decide.
    sigs = patterns.patterns
    if not sigs:
        return True
    if not avoids(gamma, sigs):
        return False
    k = len(gamma)
    if k == 0:
        return avoids((1,), sigs)
    for i in range(gamma[k - 1]):
        unit = tuple(1 if j == i else 0 for j in range(k + 1))
        if avoids(compose(gamma, unit), sigs):
            return True
    return False


def minimal_avoiding_profiles(gamma: Perm, patterns: PatternSet) -> tuple[Profile, ...]:
    """The admissible unit profiles of a core (the minimal avoiding witnesses)."""
    k = len(gamma)
    if k == 0:
        return ((1,),) if avoids((1,), patterns.patterns) else ()
    out = []
    for i in range(gamma[k - 1]):
        unit = tuple(1 if j == i else 0 for j in range(k + 1))
        if avoids(compose(gamma, unit), patterns.patterns):
            out.append(unit)
    return tuple(out)


def core_set(m: int, patterns: PatternSet, *, max_core_len: int | None = None,
             core_len_limit: int | None = None) -> CoreSet:
    """All cores gamma with maj_plus(gamma) = m admissible for the pattern set.

    max_core_len restricts the candidate core length (cores longer than n - 1
    are invisible at length n); by default all lengths up to m are enumerated,
    subject to the configured hard limit.
    """
    if m < 0:
        raise InvalidInputError(f"major index must be non-negative, got {m}")
    limit = core_len_limit if core_len_limit is not None else core_len_limit_default()
    top = m if max_core_len is None else min(m, max_core_len)
    if m == 0:
        cores = ((),) if _admissible((), patterns) else ()
        return CoreSet(0, patterns, cores)
    if top > limit:
        raise ResourceLimitError(
            f"core enumeration up to length {top} exceeds the configured limit {limit}; "
            "raise MAJPAT_MAX_CORE_LEN or restrict max_core_len"
        )
    found = []
    for k in range(1, top + 1):
        want = m - k
        if want > _triangle(k):
            continue
        for gamma in itertools.permutations(range(1, k + 1)):
            if major_index(gamma) == want and _admissible(gamma, patterns):
                found.append(gamma)
    found.sort(key=lambda g: (len(g), g))
    return CoreSet(m, patterns, tuple(found))


def core_polynomial(gamma: Perm, patterns: PatternSet) -> tuple[Polynomial, int]:
    """The eventual polynomial of the fixed-core counts, with its exact onset.

    The per-signature term C(n - k - |c| + s - 1, s - 1) (s = saturated
    coordinates) is exact once n clears k + |c| - s + 1; signatures with no
    saturated coordinate only contribute at the single length k + |c|.  The
    onset returned is minimal for the full sum.
    """
    cap = patterns.cap
    k = len(gamma)
    sig_list = list(_avoiding_signatures(gamma, patterns))
    poly = ZERO
    for c in sig_list:
        s = sum(1 for x in c if x == cap)
        if s >= 1:
            poly = poly + Polynomial.binomial(s - 1, k + sum(c) - (s - 1))
    bound = k + cap * (k + 1)

    def true_count(n: int) -> int:
        total = n - k
        if total < 0:
            return 0
        return sum(_signature_ways(c, total, cap) for c in sig_list)

    if poly(bound + 1) != true_count(bound + 1):
        raise VerificationError(
            f"core polynomial failed self-check beyond its onset bound for {gamma}"
        )
    onset = bound + 1
    for n in range(bound, -1, -1):
        if poly(n) == true_count(n):
            onset = n
        else:
            break
    return poly, onset


def eventual_polynomial(m: int, patterns: PatternSet, *,
                        max_core_len: int | None = None,
                        core_len_limit: int | None = None) -> tuple[Polynomial, int]:
    """The polynomial eventually equal to the m-column, with its exact onset."""
    cores = core_set(m, patterns, max_core_len=max_core_len,
                     core_len_limit=core_len_limit).cores
    cap = patterns.cap
    poly = ZERO
    evaluators = []
    bound = 0
    for gamma in cores:
        k = len(gamma)
        sig_list = list(_avoiding_signatures(gamma, patterns))
        for c in sig_list:
            s = sum(1 for x in c if x == cap)
            if s >= 1:
                poly = poly + Polynomial.binomial(s - 1, k + sum(c) - (s - 1))
        evaluators.append((k, sig_list))
        bound = max(bound, k + cap * (k + 1))

    def true_count(n: int) -> int:
        total = 0
        for k, sig_list in evaluators:
            if n >= k:
                total += sum(_signature_ways(c, n - k, cap) for c in sig_list)
        return total

    if poly(bound + 1) != true_count(bound + 1):
        raise VerificationError(f"column polynomial failed self-check at m={m}")
    onset = bound + 1
    for n in range(bound, 0, -1):
        if poly(n) == true_count(n):
            onset = n
        else:
            break
    return poly, onset


def major_count_series(m: int, patterns: PatternSet, n_max: int, *,
                       algorithm: str = "cores",
                       max_nodes: int | None = None,
                       core_len_limit: int | None = None) -> list[int]:
    """The exact counts for n = 1..n_max at a fixed major index."""
    if n_max < 1:
        raise InvalidInputError(f"n_max must be >= 1, got {n_max}")
    if algorithm == "cores":
        cores = core_set(m, patterns, max_core_len=min(m, max(n_max - 1, 0)),
                         core_len_limit=core_len_limit).cores
        cap = patterns.cap
        budget = _Budget(max_nodes)
        series = [0] * n_max
        for gamma in cores:
            k = len(gamma)
            sig_list = list(_avoiding_signatures(
                gamma, patterns, budget_sum=n_max - k, node_budget=budget))
            for n in range(max(k, 1), n_max + 1):
                series[n - 1] += sum(_signature_ways(c, n - k, cap) for c in sig_list)
        return series
    if algorithm == "brute":
        table = maj_table(n_max, m, patterns, algorithm="brute", max_nodes=max_nodes)
        return table.column(m)
    raise InvalidInputError(f"unknown algorithm {algorithm!r}")


def downset_spot_check(gamma: Perm, patterns: PatternSet, *, trials: int = 50,
                       coord_bound: int | None = None, seed: int = 0):
    """Sample avoiding profiles and verify single-step downward closure.

    Returns None, or the first (profile, smaller_profile) violating closure.
    """
    import random

    rng = random.Random(seed)
    k = len(gamma)
    bound = coord_bound if coord_bound is not None else patterns.cap + 2
    sigs = patterns.patterns
    for _ in range(trials):
        a = tuple(rng.randint(0, bound) for _ in range(k + 1))
        if not avoids(compose(gamma, a), sigs):
            continue
        for i in range(k + 1):
            if a[i] == 0:
                continue
            b = a[:i] + (a[i] - 1,) + a[i + 1:]
            if not avoids(compose(gamma, b), sigs):
                return a, b
    return None
