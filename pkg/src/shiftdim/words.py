"""Subshift presentations, language enumeration and complexity.

A subshift is presented finitely (full shift, forbidden words, or a
primitive substitution) and acts as an exact language oracle: for every
length ``n`` the set of length-``n`` factors is computed exactly, never
sampled.  Words are stored internally as ``str`` whose characters encode
symbol *indices* (``chr(48 + i)`` for the ``i``-th alphabet symbol), so the
built-in string order coincides with lexicographic order under the declared
symbol order and slicing/hashing stay cheap at depth in the thousands.

Complexity counts for forbidden-word presentations are taken from the
de Bruijn recoding graph with exact integer path counting, which agrees
with direct enumeration wherever enumeration is feasible (the tests check
both routes against each other).
"""

from __future__ import annotations

import csv
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyLanguage, InvalidSpec

# Internal word encoding: character for symbol index i.
_BASE = 48
MAX_ALPHABET = 64


def _chr(i: int) -> str:
    return chr(_BASE + i)


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbol identifiers."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise InvalidSpec("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidSpec("alphabet has duplicate symbols")
        if len(self.symbols) > MAX_ALPHABET:
            raise InvalidSpec(f"alphabet larger than {MAX_ALPHABET} symbols")

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def chars(self) -> str:
        """All internal characters, in declared order."""
        return "".join(_chr(i) for i in range(len(self.symbols)))

    def encode(self, word) -> str:
        """Encode an iterable of symbols (a plain string is treated as a
        sequence of one-character symbols) into the internal representation."""
        try:
            return "".join(_chr(self.symbols.index(s)) for s in word)
        except ValueError:
            raise InvalidSpec(f"word {word!r} uses symbols outside the alphabet")

    def decode(self, word: str) -> str:
        """Render an internal word with the declared symbol names."""
        syms = [self.symbols[ord(c) - _BASE] for c in word]
        if all(len(s) == 1 for s in self.symbols):
            return "".join(syms)
        return " ".join(syms)


def _sliding_factors(text: str, n: int) -> set[str]:
    return {text[i : i + n] for i in range(len(text) - n + 1)}


class SubshiftSpec:
    """Base class: a finite presentation acting as an exact language oracle.

    Subclasses implement :meth:`language`.  All values are immutable after
    construction; results are cached per length.
    """

    variant = "abstract"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._lang_cache: dict[int, frozenset[str]] = {}

    # -- oracle interface ---------------------------------------------------

    def language(self, n: int) -> frozenset[str]:
        """Exactly the length-``n`` factors of the subshift (internal words)."""
        if n < 0:
            raise ValueError("length must be nonnegative")
        if n == 0:
            return frozenset({""})
        if n not in self._lang_cache:
            self._lang_cache[n] = frozenset(self._compute_language(n))
        return self._lang_cache[n]

    def _compute_language(self, n: int) -> set[str]:
        raise NotImplementedError

    def complexity(self, n: int) -> int:
        """p(n) = number of distinct length-``n`` factors, exact."""
        return len(self.language(n))

    def is_factor(self, word: str) -> bool:
        return word in self.language(len(word))

    def left_extension_count(self, word: str) -> int:
        """Number of symbols ``a`` with ``a + word`` in the language."""
        longer = self.language(len(word) + 1)
        return sum(1 for a in self.alphabet.chars if a + word in longer)

    def describe(self) -> dict:
        """Serializable echo of the presentation (for certificates)."""
        raise NotImplementedError


class FullShiftSpec(SubshiftSpec):
    """Every word over the alphabet is admissible."""

    variant = "full_shift"

    def _compute_language(self, n: int) -> set[str]:
        return {"".join(w) for w in itertools.product(self.alphabet.chars, repeat=n)}

    def complexity(self, n: int) -> int:
        return len(self.alphabet) ** n

    def is_factor(self, word: str) -> bool:
        return all(ord(c) - _BASE < len(self.alphabet) for c in word)

    def describe(self) -> dict:
        return {"variant": self.variant, "alphabet": list(self.alphabet.symbols)}


class SFTSpec(SubshiftSpec):
    """Shift of finite type given by forbidden words.

    The language is decided on the de Bruijn recoding graph: vertices are
    admissible words of length ``order`` (max forbidden length minus one, at
    least 1), edges append one symbol with a forbidden-word window check,
    and vertices with no infinite continuation are trimmed.  A word is a
    factor iff its windows are admissible and its suffix vertex survives
    trimming.
    """

    variant = "sft"

    def __init__(self, alphabet: Alphabet, forbidden):
        super().__init__(alphabet)
        self.forbidden = frozenset(alphabet.encode(w) for w in forbidden)
        if any(len(w) == 0 for w in self.forbidden):
            raise InvalidSpec("forbidden words must have nonzero length")
        self.max_forbidden_len = max((len(w) for w in self.forbidden), default=1)
        self.order = max(self.max_forbidden_len - 1, 1)
        self._graph_built = False

    # -- graph --------------------------------------------------------------

    def _admissible(self, word: str) -> bool:
        return not any(f in word for f in self.forbidden)

    def _build_graph(self):
        if self._graph_built:
            return
        order = self.order
        verts = ["".join(w) for w in itertools.product(self.alphabet.chars, repeat=order)]
        verts = [v for v in verts if self._admissible(v)]
        edges: dict[str, list[str]] = {v: [] for v in verts}
        vset = set(verts)
        for u in verts:
            for a in self.alphabet.chars:
                v = u[1:] + a
                if v in vset and self._admissible(u + a):
                    edges[u].append(v)
        # Trim vertices with no infinite forward continuation.
        live = set(verts)
        changed = True
        while changed:
            changed = False
            for v in list(live):
                if not any(t in live for t in edges[v]):
                    live.discard(v)
                    changed = True
        self._vertices = sorted(live)
        self._liveset = frozenset(live)
        self._edges = {u: sorted(t for t in edges[u] if t in live) for u in self._vertices}
        self._indeg: dict[str, int] = {v: 0 for v in self._vertices}
        for u in self._vertices:
            for t in self._edges[u]:
                self._indeg[t] += 1
        self._graph_built = True

    @property
    def live_vertices(self) -> list[str]:
        self._build_graph()
        return self._vertices

    def live_in_degree(self, vertex: str) -> int:
        self._build_graph()
        return self._indeg[vertex]

    # -- language -----------------------------------------------------------

    def _compute_language(self, n: int) -> set[str]:
        self._build_graph()
        if not self._vertices:
            raise EmptyLanguage(f"SFT language empty at length {n}")
        if n <= self.order:
            out = {v[:n] for v in self._vertices}
        else:
            out = set()
            frontier: list[tuple[str, str]] = [(v, v) for v in self._vertices]
            for _ in range(n - self.order):
                frontier = [(w + t[-1], t) for (w, v) in frontier for t in self._edges[v]]
            out = {w for (w, _) in frontier}
        if not out:
            raise EmptyLanguage(f"SFT language empty at length {n}")
        return out

    def complexity(self, n: int) -> int:
        """Exact p(n) by integer path counting (no enumeration)."""
        self._build_graph()
        if not self._vertices:
            raise EmptyLanguage(f"SFT language empty at length {n}")
        if n <= self.order:
            return len({v[:n] for v in self._vertices})
        counts = self._path_counts(n - self.order)
        return sum(counts.values())

    def _path_counts(self, steps: int) -> dict[str, int]:
        """Number of ``steps``-edge paths starting at each live vertex."""
        counts = {v: 1 for v in self._vertices}
        for _ in range(steps):
            counts = {v: sum(counts[t] for t in self._edges[v]) for v in self._vertices}
        return counts

    def is_factor(self, word: str) -> bool:
        """Admissible windows plus a live suffix vertex; no enumeration."""
        self._build_graph()
        if len(word) <= self.order:
            return any(v[: len(word)] == word for v in self._vertices)
        if not self._admissible(word):
            return False
        # end vertex live suffices: interior vertices continue along the word
        return word[-self.order :] in self._liveset

    def left_special_count(self, n: int) -> int:
        """Number of length-``n`` factors with >= 2 one-symbol left
        extensions, counted exactly on the graph for n >= order."""
        self._build_graph()
        if n < self.order:
            from .special import left_special_words

            return len(left_special_words(self, n))
        counts = self._path_counts(n - self.order)
        return sum(c for v, c in counts.items() if self._indeg[v] >= 2)

    def left_extensions_all_positive(self) -> bool:
        """True iff every live vertex has a live in-edge (left extendability
        for every factor of length >= order)."""
        self._build_graph()
        return all(self._indeg[v] >= 1 for v in self._vertices)

    def describe(self) -> dict:
        return {
            "variant": self.variant,
            "alphabet": list(self.alphabet.symbols),
            "forbidden": sorted(self.alphabet.decode(w) for w in self.forbidden),
        }


class SubstitutionSpec(SubshiftSpec):
    """Primitive substitution subshift.

    The language at each length is the stabilized factor set of iterated
    images of the first alphabet symbol: iteration stops as soon as two
    consecutive iterates yield the same factor set, which is exact for
    primitive substitutions.  Primitivity (some power of the substitution
    matrix strictly positive) is checked at construction.
    """

    variant = "substitution"

    def __init__(self, alphabet: Alphabet, rules: dict):
        super().__init__(alphabet)
        self.rules: dict[str, str] = {}
        for i, sym in enumerate(alphabet.symbols):
            if sym not in rules:
                raise InvalidSpec(f"substitution has no rule for symbol {sym!r}")
            image = alphabet.encode(rules[sym])
            if not image:
                raise InvalidSpec(f"substitution image of {sym!r} is empty")
            self.rules[_chr(i)] = image
        self._iterates: list[str] = [_chr(0)]
        if not self.is_primitive():
            raise InvalidSpec("substitution is not primitive")

    def apply(self, word: str) -> str:
        return "".join(self.rules[c] for c in word)

    def matrix(self) -> list[list[int]]:
        """M[i][j] = occurrences of symbol j in the image of symbol i."""
        s = len(self.alphabet)
        return [[self.rules[_chr(i)].count(_chr(j)) for j in range(s)] for i in range(s)]

    def is_primitive(self) -> bool:
        s = len(self.alphabet)
        m = self.matrix()
        # Wielandt bound: primitive iff M^((s-1)^2 + 1) is strictly positive.
        power = (s - 1) ** 2 + 1
        acc = [[int(i == j) for j in range(s)] for i in range(s)]
        for _ in range(power):
            acc = [
                [sum(acc[i][k] * m[k][j] for k in range(s)) for j in range(s)]
                for i in range(s)
            ]
        return all(acc[i][j] > 0 for i in range(s) for j in range(s))

    def _extend_iterates(self) -> bool:
        """Append the next iterate; False if the substitution stopped
        growing (primitivity then forces a one-letter alphabet)."""
        nxt = self.apply(self._iterates[-1])
        if len(nxt) == len(self._iterates[-1]):
            return False
        self._iterates.append(nxt)
        return True

    def _compute_language(self, n: int) -> set[str]:
        k = 0
        while len(self._iterates[k]) < n:
            k += 1
            if k == len(self._iterates) and not self._extend_iterates():
                w = self._iterates[-1]
                return _sliding_factors(w * (-(-n // len(w)) + 1), n)
        prev = _sliding_factors(self._iterates[k], n)
        while True:
            k += 1
            if k == len(self._iterates) and not self._extend_iterates():
                w = self._iterates[-1]
                return _sliding_factors(w * (-(-n // len(w)) + 1), n)
            cur = _sliding_factors(self._iterates[k], n)
            if cur == prev:
                return cur
            prev = cur

    def describe(self) -> dict:
        return {
            "variant": self.variant,
            "alphabet": list(self.alphabet.symbols),
            "rules": {
                sym: self.alphabet.decode(self.rules[_chr(i)])
                for i, sym in enumerate(self.alphabet.symbols)
            },
        }


# -- named constructions used throughout the tests and demos ----------------


def fibonacci_spec() -> SubstitutionSpec:
    """0 -> 01, 1 -> 0 (Sturmian; p(n) = n + 1)."""
    return SubstitutionSpec(Alphabet(("0", "1")), {"0": "01", "1": "0"})


def thue_morse_spec() -> SubstitutionSpec:
    """0 -> 01, 1 -> 10."""
    return SubstitutionSpec(Alphabet(("0", "1")), {"0": "01", "1": "10"})


def full_shift_spec(k: int = 2) -> FullShiftSpec:
    return FullShiftSpec(Alphabet(tuple(str(i) for i in range(k))))


def golden_mean_spec() -> SFTSpec:
    """Binary SFT forbidding 11."""
    return SFTSpec(Alphabet(("0", "1")), ["11"])


def single_orbit_spec() -> SFTSpec:
    """One-symbol SFT: the single fixed point; p(n) = 1."""
    return SFTSpec(Alphabet(("0",)), [])


# -- operations --------------------------------------------------------------


def enumerate_language(spec: SubshiftSpec, n: int) -> list[str]:
    """Sorted list of the length-``n`` factors (canonical order)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sorted(spec.language(n))


def complexity(spec: SubshiftSpec, n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return spec.complexity(n)


@dataclass(frozen=True)
class GrowthReport:
    d_hat: Fraction
    d_hat_at: int
    superlinear_flag: bool
    horizon: int
    threshold: Fraction
    ratios: tuple[Fraction, ...] = field(repr=False)


def growth_report(spec: SubshiftSpec, horizon: int, threshold=Fraction(2)) -> GrowthReport:
    """Finite-horizon growth surrogate.

    ``d_hat`` is the minimum of p(n)/n over 1 <= n <= horizon as an exact
    rational.  The superlinear flag is set when p(n)/n is strictly
    increasing over the last half of the horizon and ends above
    ``threshold``.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    ratios = [Fraction(spec.complexity(n), n) for n in range(1, horizon + 1)]
    d_hat = min(ratios)
    d_hat_at = ratios.index(d_hat) + 1
    half = [ratios[i] for i in range(horizon // 2 - 1, horizon)]
    increasing = all(a < b for a, b in zip(half, half[1:]))
    flag = increasing and ratios[-1] > threshold
    return GrowthReport(d_hat, d_hat_at, flag, horizon, Fraction(threshold), tuple(ratios))


def check_extendability(spec: SubshiftSpec, horizon: int) -> bool:
    """True iff every factor of length <= horizon has a left extension.

    This is the finite-depth necessary condition for the shift being onto.
    For forbidden-word presentations the condition at lengths beyond the
    graph order reduces to every live vertex having an in-edge, so the
    result is sound for all lengths once that holds.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if isinstance(spec, FullShiftSpec):
        return True
    if isinstance(spec, SFTSpec):
        short = all(
            spec.left_extension_count(w) >= 1
            for m in range(1, min(horizon, spec.order) + 1)
            for w in spec.language(m)
        )
        return short and spec.left_extensions_all_positive()
    return all(
        spec.left_extension_count(w) >= 1
        for m in range(1, horizon + 1)
        for w in spec.language(m)
    )


@dataclass(frozen=True)
class LanguageTable:
    """Per-length sorted factor lists with the complexity column."""

    spec_echo: dict
    n_max: int
    words: tuple[tuple[str, ...], ...]  # index n-1 -> sorted factors
    p: tuple[int, ...]

    @classmethod
    def build(cls, spec: SubshiftSpec, n_max: int) -> "LanguageTable":
        words = tuple(tuple(enumerate_language(spec, n)) for n in range(1, n_max + 1))
        return cls(spec.describe(), n_max, words, tuple(len(w) for w in words))

    def check_factorial(self) -> bool:
        """Every length-(n-1) factor of every stored word occurs at n-1."""
        for n in range(2, self.n_max + 1):
            shorter = set(self.words[n - 2])
            for w in self.words[n - 1]:
                if w[:-1] not in shorter or w[1:] not in shorter:
                    return False
        return True

    def write_csv(self, directory: str, alphabet: Alphabet, words_cap: int = 2000):
        """Write ``language.csv`` with columns (n, p, words_file) plus one
        words file per length whose factor count is within the cap."""
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, "language.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "p", "words_file"])
            for n in range(1, self.n_max + 1):
                ws = self.words[n - 1]
                ref = ""
                if len(ws) <= words_cap:
                    ref = f"words_{n:04d}.txt"
                    with open(os.path.join(directory, ref), "w") as wf:
                        for w in ws:
                            wf.write(alphabet.decode(w) + "\n")
                writer.writerow([n, self.p[n - 1], ref])
        return path
