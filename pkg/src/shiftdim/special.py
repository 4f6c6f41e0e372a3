"""Left special words: enumeration, branch estimation and the counting bound.

A length-``n`` factor is *left special* when at least two distinct symbols
extend it to the left inside the language.  Prefixes of left special words
are left special, so the per-length sets form a tree; the number of its
infinite branches is estimated from finite depth, with an explicit
stabilization flag instead of a claim about the infinite object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .words import SFTSpec, SubshiftSpec, check_extendability, growth_report


def left_special_words(spec: SubshiftSpec, n: int) -> list[str]:
    """Sorted length-``n`` factors with >= 2 one-symbol left extensions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    longer = spec.language(n + 1)
    out = []
    for w in spec.language(n):
        ext = sum(1 for a in spec.alphabet.chars if a + w in longer)
        if ext >= 2:
            out.append(w)
    return sorted(out)


def left_special_count(spec: SubshiftSpec, n: int) -> int:
    """|LS(n)|, via graph counting for forbidden-word presentations (exact
    at any length) and enumeration otherwise."""
    if isinstance(spec, SFTSpec):
        return spec.left_special_count(n)
    return len(left_special_words(spec, n))


@dataclass(frozen=True)
class LeftSpecialTree:
    """Per-length left special sets with parent (prefix) links."""

    depth: int
    levels: tuple[tuple[str, ...], ...]  # index n-1 -> sorted LS words

    @classmethod
    def build(cls, spec: SubshiftSpec, depth: int) -> "LeftSpecialTree":
        return cls(depth, tuple(tuple(left_special_words(spec, n)) for n in range(1, depth + 1)))

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def parent(self, word: str) -> str:
        return word[:-1]

    def check_prefix_closure(self) -> bool:
        """The length-n prefix of every LS word of length n+1 is LS."""
        for n in range(1, self.depth):
            shorter = set(self.levels[n - 1])
            if any(w[:-1] not in shorter for w in self.levels[n]):
                return False
        return True

    def full_chain_count(self) -> int:
        """Deepest-level words whose entire prefix chain is left special."""
        count = 0
        level_sets = [set(level) for level in self.levels]
        for w in self.levels[self.depth - 1]:
            if all(w[:m] in level_sets[m - 1] for m in range(1, self.depth)):
                count += 1
        return count


@dataclass(frozen=True)
class SpecialReport:
    depth: int
    counts: tuple[int, ...]
    branch_lower: int
    branch_upper: int | None  # None = unbounded at this depth
    stabilized: bool
    d_hat: Fraction
    bound: int  # ceil(2 * d_hat)
    superlinear_warning: bool

    def bound_holds(self) -> bool:
        """Branch upper bound against ceil(2 d_hat); vacuous when the
        growth hypothesis fails or counts have not stabilized."""
        if self.superlinear_warning or not self.stabilized or self.branch_upper is None:
            return True
        return self.branch_upper <= self.bound


def _ceil_fraction(x: Fraction) -> int:
    return ceil(x)


def sp_estimate(spec: SubshiftSpec, depth: int) -> SpecialReport:
    """Estimate the number of infinite left special branches at ``depth``.

    ``branch_lower`` counts deepest-level words with a fully left special
    prefix chain; the upper bound equals it only when the per-length counts
    are constant over the last quarter of depths.  The growth surrogate
    d_hat and the bound ceil(2 d_hat) are reported alongside; a superlinear
    warning marks runs where the finiteness hypothesis fails.
    """
    if depth < 4:
        raise ValueError("depth must be >= 4")
    tree = LeftSpecialTree.build(spec, depth)
    counts = tree.counts()
    lower = tree.full_chain_count()
    quarter = counts[depth - max(depth // 4, 2) :]
    stabilized = len(set(quarter)) == 1
    growth = growth_report(spec, depth)
    upper = lower if stabilized and not growth.superlinear_flag else None
    return SpecialReport(
        depth=depth,
        counts=counts,
        branch_lower=lower,
        branch_upper=upper,
        stabilized=stabilized,
        d_hat=growth.d_hat,
        bound=_ceil_fraction(2 * growth.d_hat),
        superlinear_warning=growth.superlinear_flag,
    )


def check_useful_inequality(spec: SubshiftSpec, horizon: int, epsilon: Fraction) -> list[int]:
    """Lengths m <= horizon with p(m+1) - p(m) <= 2 (d_hat + epsilon).

    For each qualifying m the pigeonhole step is asserted: when left
    extendability holds, the number of left special words of length m is
    at most p(m+1) - p(m).
    """
    epsilon = Fraction(epsilon)
    if not (0 < epsilon < Fraction(1, 2)):
        raise ValueError("epsilon must be in (0, 1/2)")
    growth = growth_report(spec, horizon)
    threshold = 2 * (growth.d_hat + epsilon)
    extendable = check_extendability(spec, horizon + 1)
    qualifying = []
    for m in range(1, horizon + 1):
        diff = spec.complexity(m + 1) - spec.complexity(m)
        if diff <= threshold:
            qualifying.append(m)
            if extendable:
                ls = left_special_count(spec, m)
                if ls > diff:
                    raise AssertionError(
                        f"counting step fails at m={m}: {ls} left special words "
                        f"but p({m + 1})-p({m}) = {diff}"
                    )
    return qualifying
