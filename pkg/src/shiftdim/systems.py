"""Finite symbolic systems with exact clopen-set calculus.

A finite system is a directed graph on finitely many states in which every
state has at least one successor.  States stand for cylinder/cover classes
of a zero-dimensional system at a chosen resolution; at that resolution
every subset of states is clopen, so closures are identities and all set
operations below are exact.

The shift is a relation, not necessarily a map: a class may contain points
whose images separate only at a finer resolution (an extra successor), and
a class may absorb two one-step histories (an extra predecessor, a "left
special" state).  A finite *function* that is onto is a bijection and can
never exhibit the second phenomenon, so faithful finite approximations are
genuinely relational.  ``preimage``/``image`` are the exact set operators
of the relation; identities that require a deterministic shift (one
successor everywhere) are checked only there, and the tests document which
is which.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .words import SubshiftSpec

ClopenSet = frozenset  # of state indices


@dataclass(frozen=True)
class FiniteSymbolicSystem:
    """Finite directed-graph approximation of a zero-dimensional system."""

    labels: tuple[str, ...]
    succ: tuple[tuple[int, ...], ...]  # sorted successor lists
    depth_meta: str = ""
    pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.succ) != n:
            raise ValueError("labels and successor table disagree")
        if any(not targets for targets in self.succ):
            raise ValueError("shift relation must be total: a state has no successor")
        preds: list[list[int]] = [[] for _ in range(n)]
        for s, targets in enumerate(self.succ):
            for t in targets:
                if not (0 <= t < n):
                    raise ValueError(f"edge target out of range: {s} -> {t}")
                preds[t].append(s)
        object.__setattr__(self, "pred", tuple(tuple(sorted(set(p))) for p in preds))

    # -- basic structure -----------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.labels)

    def all_states(self) -> ClopenSet:
        return frozenset(range(self.num_states))

    @property
    def surjective_flag(self) -> bool:
        """Every state has at least one predecessor (the relation is onto)."""
        return all(self.pred[t] for t in range(self.num_states))

    @property
    def deterministic(self) -> bool:
        """Exactly one successor everywhere (the shift is a map)."""
        return all(len(t) == 1 for t in self.succ)

    def special_states(self) -> list[int]:
        """States with at least two distinct predecessors."""
        return [s for s in range(self.num_states) if len(self.pred[s]) >= 2]

    def branch_states(self) -> list[int]:
        """States with at least two distinct successors."""
        return [s for s in range(self.num_states) if len(self.succ[s]) >= 2]

    # -- clopen calculus -----------------------------------------------------

    def preimage(self, clopen, n: int = 1) -> ClopenSet:
        """{s : some n-step successor path from s lands in the set}; for a
        deterministic shift this is the usual preimage of a map."""
        if n < 0:
            raise ValueError("n must be >= 0")
        cur = set(clopen)
        for _ in range(n):
            cur = {s for t in cur for s in self.pred[t]}
        return frozenset(cur)

    def image(self, clopen, n: int = 1) -> ClopenSet:
        """All states reachable from the set along n-step paths."""
        if n < 0:
            raise ValueError("n must be >= 0")
        cur = set(clopen)
        for _ in range(n):
            cur = {t for s in cur for t in self.succ[s]}
        return frozenset(cur)

    # -- cycles ---------------------------------------------------------------

    def cycle_lengths_report(self, bound: int) -> list[int]:
        """Sorted lengths (<= bound) of the shortest cycles through each
        branch state plus all deterministic cycles.

        Every directed cycle either avoids branch states entirely (then all
        its states have exactly one successor and it is found by following
        unique successors) or passes through a branch state (found by BFS
        back to it).  Finite graphs always have cycles; whether a cycle
        witnesses a genuine periodic point is decided by ``depth_meta``.
        """
        lengths: set[int] = set()
        branch = set(self.branch_states())
        color = [0] * self.num_states  # 0 unseen, 1 on stack, 2 done
        pos: dict[int, int] = {}
        for start in range(self.num_states):
            if color[start] or start in branch:
                continue
            path = []
            s = start
            while True:
                if s in branch or color[s] == 2:
                    break
                if color[s] == 1:
                    lengths.add(len(path) - pos[s])
                    break
                color[s] = 1
                pos[s] = len(path)
                path.append(s)
                s = self.succ[s][0]
            for v in path:
                color[v] = 2
                pos.pop(v, None)
        for b in branch:
            dist = {t: 1 for t in self.succ[b]}
            queue = deque(self.succ[b])
            found = 1 if b in self.succ[b] else None
            while queue and found is None:
                v = queue.popleft()
                if dist[v] >= bound:
                    continue
                for t in self.succ[v]:
                    if t == b:
                        found = dist[v] + 1
                        break
                    if t not in dist:
                        dist[t] = dist[v] + 1
                        queue.append(t)
            if found is not None:
                lengths.add(found)
        return sorted(l for l in lengths if l <= bound)

    def min_cycle_length(self, bound: int) -> int | None:
        """Length of the shortest cycle if it is <= bound, else None."""
        report = self.cycle_lengths_report(bound)
        return report[0] if report else None

    def without_entries_into(self, window) -> "FiniteSymbolicSystem":
        """Copy of the system with every edge from outside ``window`` into
        it removed (the finite seam where mixed classes feed a discrete
        orbit).  Edges inside the window, and exits from it, survive; a
        state whose successors all lie in the window keeps its edges."""
        window = frozenset(window)
        new_succ = []
        for u, targets in enumerate(self.succ):
            if u in window:
                new_succ.append(targets)
                continue
            kept = tuple(t for t in targets if t not in window)
            new_succ.append(kept if kept else targets)
        return FiniteSymbolicSystem(
            labels=self.labels,
            succ=tuple(new_succ),
            depth_meta=self.depth_meta + f" [entry-free: window {len(window)}]",
        )

    # -- export ----------------------------------------------------------------

    def to_adjacency_text(self) -> str:
        lines = [f"# states: {self.num_states}  meta: {self.depth_meta}"]
        for s in range(self.num_states):
            targets = " ".join(str(t) for t in self.succ[s])
            lines.append(f"{s}\t{self.labels[s]}\t-> {targets}")
        return "\n".join(lines) + "\n"


def disjoint_family_check(family) -> bool:
    """True iff the clopen sets are pairwise disjoint."""
    seen: set = set()
    for clopen in family:
        for s in clopen:
            if s in seen:
                return False
        seen.update(clopen)
    return True


def aperiodicity_window_check(spec: SubshiftSpec, window: int) -> bool:
    """True iff no word of length <= window admits a periodic-point witness.

    A witness is a word w with w.w admissible whose periodic stream w^inf
    is language-consistent out to length 3*window.  Refutations are sound;
    acceptance is relative to the recorded horizon.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    probe = 3 * window
    for length in range(1, window + 1):
        for w in spec.language(length):
            if not spec.is_factor(w + w):
                continue
            reps = -(-probe // length) + 1
            stream = w * reps
            if all(
                spec.is_factor(stream[i : i + probe])
                for i in range(len(stream) - probe + 1)
            ):
                return False
    return True
