"""Tower-pair systems: margin-carrying covers derived from tower covers.

A pair is a clopen base V with a finite exponent set S whose preimage
levels are pairwise disjoint.  A system of pairs covers the space so that
every state sits at a level with margin: the prescribed window E shifted
by the level stays inside S.  The conversion from a height-(2 + 3 max|E|)
tower cover yields each tower base twice, once as-is and once pulled back
by M = 1 + 2 max|E|, and claims colorability with 2 (tower count) colors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import Certificate, Clause
from .errors import DepthInsufficient, HeightMismatch
from .rokhlin import RokhlinCover
from .systems import ClopenSet, FiniteSymbolicSystem


def normalize_window(E) -> tuple[int, ...]:
    """Symmetrize and adjoin 0 (the standing normalization for windows)."""
    s = set(int(n) for n in E)
    s |= {-n for n in s}
    s.add(0)
    return tuple(sorted(s))


@dataclass(frozen=True)
class TowerPair:
    base: ClopenSet
    exponents: tuple[int, ...]
    kind: str  # "base" or "shifted"
    origin: int  # tower index


class TowerPairSystem:
    def __init__(self, pairs, E, d_claimed: int, M: int, height: int):
        self.pairs: tuple[TowerPair, ...] = tuple(pairs)
        self.E = normalize_window(E)
        self.d_claimed = d_claimed
        self.M = M
        self.height = height
        self.level_of: list[dict[int, int]] | None = None
        self.certificate: Certificate | None = None

    def compute_levels(self, sys: FiniteSymbolicSystem) -> tuple[bool, str]:
        """Per pair, the unique exponent at which each state occurs; a
        collision is exactly a violation of pairwise level disjointness."""
        maps: list[dict[int, int]] = []
        ok, witness = True, ""
        for idx, pair in enumerate(self.pairs):
            level = frozenset(pair.base)
            seen: dict[int, int] = {}
            exps = set(pair.exponents)
            for n in range(max(pair.exponents) + 1):
                if n in exps:
                    for s in level:
                        if s in seen and ok:
                            ok = False
                            witness = f"pair {idx}: state {s} at levels {seen[s]} and {n}"
                        seen.setdefault(s, n)
                level = sys.preimage(level, 1)
            maps.append(seen)
        self.level_of = maps
        return ok, witness


def pairs_from_rokhlin(cover: RokhlinCover, E) -> TowerPairSystem:
    """Tower pairs for the window E from a verified tower cover of height
    exactly 2 + 3 max|E|; the claimed color count is 2 (tower count)."""
    E = normalize_window(E)
    max_e = max(abs(n) for n in E)
    M = 1 + 2 * max_e
    required = 2 + 3 * max_e
    if cover.height != required:
        raise HeightMismatch(
            f"cover height {cover.height} != 2 + 3*max|E| = {required}"
        )
    S = tuple(range(required))
    pairs = []
    for t_idx, tower in enumerate(cover.towers):
        pairs.append(TowerPair(tower.base, S, "base", t_idx))
    d_claimed = 2 * len(cover.towers) - 1
    return TowerPairSystem(pairs, E, d_claimed, M, required)


def attach_shifted_pairs(tps: TowerPairSystem, sys: FiniteSymbolicSystem) -> None:
    """Add the pulled-back copy (preimage by M) of every base pair."""
    extra = [
        TowerPair(sys.preimage(p.base, tps.M), p.exponents, "shifted", p.origin)
        for p in tps.pairs
        if p.kind == "base"
    ]
    tps.pairs = tps.pairs + tuple(extra)


def _cycle_through(sys: FiniteSymbolicSystem, start: int) -> list[int]:
    """The deterministic cycle reached from ``start`` (first successors)."""
    seen: dict[int, int] = {}
    path: list[int] = []
    cur = start
    while cur not in seen:
        seen[cur] = len(path)
        path.append(cur)
        cur = sys.succ[cur][0]
    cyc = path[seen[cur] :]
    low = cyc.index(min(cyc))
    return cyc[low:] + cyc[:low]


def _first_collision_depth(sys: FiniteSymbolicSystem, base, maxdepth: int) -> int:
    seen = set(base)
    level = frozenset(base)
    for d in range(1, maxdepth + 1):
        level = sys.preimage(level, 1)
        if level & seen:
            return d
        seen |= level
    return maxdepth + 1


def build_phase_pairs(
    sys: FiniteSymbolicSystem,
    pair_count: int,
    margin_window,
    *,
    span: int | None = None,
    d_claimed: int | None = None,
) -> TowerPairSystem:
    """Pair system for symmetric windows: staggered hitting-time phases.

    The two-per-tower conversion gives margins only on the upper side of
    each exponent block, which suffices for one-sided windows but leaves
    symmetric windows without witnesses at low levels.  Here each pair is
    a single state on the main cycle with one long exponent interval; the
    bases are equally spaced by hitting time, so every state sees some
    base at an exponent with full symmetric margin, while the interval
    stays below the first self-collision depth of each base (that keeps
    the level sets of a pair pairwise disjoint and hence the pair count
    an upper bound for the chromatic number).
    """
    margin_window = normalize_window(margin_window)
    rise = max(abs(n) for n in margin_window)
    if pair_count < 1:
        raise ValueError("pair_count must be >= 1")
    cyc = _cycle_through(sys, 0)
    C = len(cyc)
    spacing = -(-C // pair_count)
    need = 2 * rise + spacing
    bases = [cyc[(j * C) // pair_count] for j in range(pair_count)]
    max_probe = max(2 * need + rise + 2, 4 * C)
    safe = min(_first_collision_depth(sys, {b}, max_probe) for b in bases) - 1
    if span is None:
        # use the whole collision-free depth: the margin plateau must also
        # catch states that enter the cycle late (the orbit handle)
        span = safe
    if span > safe:
        raise DepthInsufficient(f"span {span} exceeds collision-free depth {safe}")
    if span < need:
        raise DepthInsufficient(
            f"usable span {span} below 2*rise + cycle/pairs = {need}; deepen the graph"
        )
    S = tuple(range(span + 1))
    pairs = [TowerPair(frozenset({b}), S, "phase", j) for j, b in enumerate(bases)]
    tps = TowerPairSystem(
        pairs,
        margin_window,
        pair_count - 1 if d_claimed is None else d_claimed,
        M=2 * rise + 1,
        height=span + 1,
    )
    return tps


def chromatic_number(family, exact_limit: int = 20) -> tuple[int, bool]:
    """Chromatic number of the intersection graph of the sets.

    Exact by backtracking when at most ``exact_limit`` sets are nonempty;
    otherwise a greedy proper coloring gives a flagged upper bound.
    Returns (value, exact_flag).
    """
    sets = [frozenset(s) for s in family]
    idx = [i for i, s in enumerate(sets) if s]
    n = len(idx)
    if n == 0:
        return 0, True
    adj = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if sets[idx[a]] & sets[idx[b]]:
                adj[a][b] = adj[b][a] = True
    if n <= exact_limit:
        order = sorted(range(n), key=lambda v: -sum(adj[v]))

        def can_color(colors: int) -> bool:
            assignment = [-1] * n

            def place(pos: int, used_colors: int) -> bool:
                if pos == n:
                    return True
                v = order[pos]
                used = {assignment[u] for u in range(n) if adj[v][u] and assignment[u] >= 0}
                # canonical order: at most one fresh color per step
                for c in range(min(colors, used_colors + 1)):
                    if c not in used:
                        assignment[v] = c
                        if place(pos + 1, max(used_colors, c + 1)):
                            return True
                        assignment[v] = -1
                return False

            return place(0, 0)

        k = 1
        while not can_color(k):
            k += 1
        return k, True
    colors: list[int] = []
    assigned: list[int] = []
    for v in range(n):
        used = {assigned[u] for u in range(v) if adj[v][u]}
        c = 0
        while c in used:
            c += 1
        assigned.append(c)
        colors.append(c)
    return max(assigned) + 1, False


def verify_tower_pairs(sys: FiniteSymbolicSystem, tps: TowerPairSystem) -> Certificate:
    """Exact check of the five pair-system clauses; the margin clause
    records how many states witness through an original pair (level < M)
    and how many through a pulled-back pair."""
    clauses = [Clause("(1)-openness-structural", True, "all sets clopen at state resolution")]
    ok2, wit2 = tps.compute_levels(sys)
    clauses.append(Clause("(2-as-read)-level-disjointness", ok2, wit2))
    level_sets: list[frozenset] = []
    for idx, pair in enumerate(tps.pairs):
        level = frozenset(pair.base)
        for n in range(max(pair.exponents) + 1):
            if n in pair.exponents:
                level_sets.append(level)
            level = sys.preimage(level, 1)
    nonempty = sum(1 for s in level_sets if s)
    if nonempty <= 20:
        chrom, exact = chromatic_number(level_sets)
        wit3 = f"exact chromatic {chrom}"
    else:
        # pair-index coloring is proper by clause (2); its size is the bound
        chrom, exact = len(tps.pairs), False
        wit3 = f"upper bound only: pair coloring with {chrom} colors"
    ok3 = chrom <= tps.d_claimed + 1
    clauses.append(Clause("(3)-chromatic-bound", ok3, f"{wit3} <= d+1 = {tps.d_claimed + 1}"))
    union: set = set()
    for s in level_sets:
        union |= s
    missing = sys.all_states() - union
    clauses.append(
        Clause("(4)-covering", not missing, "" if not missing else f"missing {sorted(missing)[:5]}")
    )
    assert tps.level_of is not None
    # margin ranges: n is good for a pair iff E + {n} stays inside S
    good_range: list[tuple[int, int]] = []
    for pair in tps.pairs:
        s_set = set(pair.exponents)
        lo, hi = min(pair.exponents), max(pair.exponents)
        if pair.exponents == tuple(range(lo, hi + 1)):
            good_range.append((lo - min(tps.E), hi - max(tps.E)))
        else:
            good = [n for n in pair.exponents if all(n + e in s_set for e in tps.E)]
            good_range.append((min(good), max(good)) if good else (1, 0))

    def margin_ok(idx: int, n: int) -> bool:
        lo, hi = good_range[idx]
        return lo <= n <= hi and n in tps.pairs[idx].exponents

    base_kind = 0
    shifted_kind = 0
    bad_state = None
    shifted_partner = {
        p.origin: i for i, p in enumerate(tps.pairs) if p.kind == "shifted"
    }
    for x in range(sys.num_states):
        found = None
        # proof-order witness search: original pair below M, else its
        # pulled-back partner, else any valid pair
        for idx, pair in enumerate(tps.pairs):
            if pair.kind != "base":
                continue
            n = tps.level_of[idx].get(x)
            if n is None:
                continue
            if n < tps.M and margin_ok(idx, n):
                found = ("original", idx, n)
                break
            partner = shifted_partner.get(pair.origin)
            if n >= tps.M and partner is not None:
                n2 = tps.level_of[partner].get(x)
                if n2 is not None and margin_ok(partner, n2):
                    found = ("shifted", partner, n2)
                    break
        if found is None:
            for idx, pair in enumerate(tps.pairs):
                n = tps.level_of[idx].get(x)
                if n is not None and margin_ok(idx, n):
                    found = ("original" if pair.kind == "base" else "shifted", idx, n)
                    break
        if found is None:
            bad_state = x
            break
        if found[0] == "original":
            base_kind += 1
        else:
            shifted_kind += 1
    ok5 = bad_state is None
    clauses.append(
        Clause(
            "(5)-margin-witness",
            ok5,
            (
                f"witnesses: {base_kind} original-kind, {shifted_kind} shifted-kind"
                if ok5
                else f"state {bad_state} has no margin witness"
            ),
        )
    )
    cert = Certificate.build(
        kind="tower-pairs",
        params={
            "pairs": len(tps.pairs),
            "E": list(tps.E),
            "M": tps.M,
            "height": tps.height,
            "d_claimed": tps.d_claimed,
            "witness_kinds": {"original": base_kind, "shifted": shifted_kind},
        },
        clauses=clauses,
    )
    tps.certificate = cert
    return cert
