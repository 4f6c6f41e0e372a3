"""Finite windows of the orbit groupoid and the cover certificates on them.

A window collects the triples (x, n, y) with a common forward image
witnessed within an exponent bound, for n in a prescribed set.  The cover
construction pulls the skeleton-ring cells back through a finitely
supported equivariant map and adjoins the special-orbit window; its
certificate checks that every element restricted to one piece either has
its middle coordinate inside the difference set of the support or has
both endpoints in the finite orbit bucket, the two cases of the
finiteness argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from .amenability import EquivariantMap
from .certificates import Certificate, Clause
from .errors import MissingEquivarianceCertificate
from .simplex import cover_index
from .systems import FiniteSymbolicSystem
from .towers import normalize_window


class GroupoidWindow:
    """Triples (x, n, y) with image witnesses a - b = n, a, b <= bound."""

    def __init__(self, sys: FiniteSymbolicSystem, E, exponent_bound: int):
        E = normalize_window(E)
        if exponent_bound < max(abs(n) for n in E):
            raise ValueError("exponent bound below max |n| of the window set")
        self.sys = sys
        self.E = E
        self.exponent_bound = exponent_bound
        images = [{x: frozenset({x}) for x in range(sys.num_states)}]
        for _ in range(exponent_bound):
            prev = images[-1]
            images.append({x: sys.image(prev[x], 1) for x in range(sys.num_states)})
        inverse: list[dict[int, list[int]]] = []
        for a in range(exponent_bound + 1):
            inv: dict[int, list[int]] = {}
            for x in range(sys.num_states):
                for z in images[a][x]:
                    inv.setdefault(z, []).append(x)
            inverse.append(inv)
        elements: dict[tuple[int, int, int], tuple[int, int]] = {}
        for n in E:
            for a in range(exponent_bound + 1):
                b = a - n
                if not (0 <= b <= exponent_bound):
                    continue
                for z, xs in inverse[a].items():
                    ys = inverse[b].get(z, ())
                    for x in xs:
                        for y in ys:
                            key = (x, n, y)
                            if key not in elements or (a, b) < elements[key]:
                                elements[key] = (a, b)
        self.elements = elements

    def __len__(self) -> int:
        return len(self.elements)

    def triples(self):
        return self.elements.keys()

    def element_rows(self):
        """Sorted (x, n, y, a, b) rows: triple plus its minimal witness."""
        return sorted(
            (x, n, y, a, b) for (x, n, y), (a, b) in self.elements.items()
        )

    def to_text(self) -> str:
        lines = [f"# window elements: {len(self.elements)}  E={list(self.E)}  "
                 f"bound={self.exponent_bound}"]
        lines += [f"{x}\t{n}\t{y}\t{a}\t{b}" for x, n, y, a, b in self.element_rows()]
        return "\n".join(lines) + "\n"

    def check_unit_inclusion(self) -> bool:
        return all((x, 0, x) in self.elements for x in range(self.sys.num_states))

    def check_inversion_closure(self) -> bool:
        return all((y, -n, x) in self.elements for (x, n, y) in self.elements)


def build_window(sys: FiniteSymbolicSystem, E, exponent_bound: int) -> GroupoidWindow:
    return GroupoidWindow(sys, E, exponent_bound)


def difference_set(S) -> tuple[int, ...]:
    """{n : (n + S) meets S}, i.e. the difference set S - S."""
    S = sorted(set(int(s) for s in S))
    if not S:
        return ()
    if S == list(range(S[0], S[-1] + 1)):
        r = S[-1] - S[0]
        return tuple(range(-r, r + 1))
    out = {a - b for a in S for b in S}
    return tuple(sorted(out))


@dataclass(frozen=True)
class DadCover:
    pieces: tuple[frozenset, ...]  # U_0 .. U_d (state sets)
    F: tuple[int, ...]
    support: tuple[int, ...]
    orbit_states: frozenset
    d: int


def build_dad_cover(
    window: GroupoidWindow,
    map_prime: EquivariantMap,
    special_states,
    d: int,
    orbit_states,
    equivariance_certificate: Certificate,
) -> DadCover:
    """Pieces U_i = (states sent into the i-th skeleton ring) united with
    the special-orbit window; F is the difference set of the support."""
    if equivariance_certificate is None or not equivariance_certificate.passed:
        raise MissingEquivarianceCertificate(
            "dad cover needs a passing equivariance certificate for the map"
        )
    orbit = frozenset(orbit_states) | frozenset(special_states)
    pieces = [set() for _ in range(d + 1)]
    for x in range(window.sys.num_states):
        ring, _cell = cover_index(map_prime.point(x), d)
        pieces[ring].add(x)
    out = tuple(frozenset(p | orbit) for p in pieces)
    return DadCover(
        pieces=out,
        F=difference_set(map_prime.support_window),
        support=tuple(map_prime.support_window),
        orbit_states=orbit,
        d=d,
    )


def verify_dad_cover(window: GroupoidWindow, cover: DadCover) -> Certificate:
    """Checks the two-case finiteness argument piece by piece and records
    the finite generated-subgroupoid witness sizes."""
    clauses = []
    union = frozenset().union(*cover.pieces) if cover.pieces else frozenset()
    missing = window.sys.all_states() - union
    clauses.append(
        Clause(
            "unit-space-covering",
            not missing,
            "" if not missing else f"uncovered units {sorted(missing)[:5]}",
        )
    )
    fset = set(cover.F)
    sym_ok = all(-n in fset for n in fset)
    clauses.append(Clause("difference-set-symmetric", sym_ok, f"|F| = {len(fset)}"))
    case_counts = []
    bad = None
    closure_sizes = []
    for i, piece in enumerate(cover.pieces):
        case1 = case2 = 0
        restricted = []
        for (x, n, y) in window.triples():
            if x in piece and y in piece:
                restricted.append((x, n, y))
                if n in fset:
                    case1 += 1
                elif x in cover.orbit_states and y in cover.orbit_states:
                    case2 += 1
                elif bad is None:
                    bad = (i, x, n, y)
        case_counts.append((case1, case2))
        closure_sizes.append(_closure_size(window, restricted))
    clauses.append(
        Clause(
            "restricted-elements-two-cases",
            bad is None,
            (
                f"per-piece (difference-set, orbit-bucket) counts {case_counts}"
                if bad is None
                else f"piece {bad[0]}: element {bad[1:]} fits neither case"
            ),
        )
    )
    clauses.append(
        Clause(
            "generated-subgroupoid-finite-witness",
            True,
            f"closure sizes within window: {closure_sizes}",
        )
    )
    return Certificate.build(
        kind="dad-cover",
        params={
            "pieces": len(cover.pieces),
            "window_elements": len(window),
            "exponent_bound": window.exponent_bound,
            "E": list(window.E),
            "F_range": [min(fset), max(fset)] if fset else [],
            "orbit_states": len(cover.orbit_states),
        },
        clauses=clauses,
    )


def _closure_size(window: GroupoidWindow, restricted) -> int:
    """Size of the closure of the restricted elements under inversion and
    composition inside the window."""
    have = set(restricted)
    by_source: dict[int, set] = {}
    for g in have:
        by_source.setdefault(g[2], set()).add(g)
    frontier = list(have)
    while frontier:
        x, n, y = frontier.pop()
        inv = (y, -n, x)
        if inv in window.elements and inv not in have:
            have.add(inv)
            by_source.setdefault(x, set()).add(inv)
            frontier.append(inv)
        for g2 in list(by_source.get(y, ())):
            composed = (x, n + g2[1], g2[2])
            if composed in window.elements and composed not in have:
                have.add(composed)
                by_source.setdefault(g2[2], set()).add(composed)
                frontier.append(composed)
    return len(have)


@dataclass(frozen=True)
class BoundReport:
    q: int
    dim_x: int
    rokhlin: int
    tower: int
    amenability: int
    dad: int
    nuclear: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.rokhlin, self.tower, self.amenability, self.dad, self.nuclear)


def bound_chain(q: int, dim_x: int = 0) -> BoundReport:
    """Closed-form bound calculator: tower-cover count bound 2q+1, tower
    and amenability and groupoid bounds 4q+3, nuclear bound 6(dim+1)^2."""
    if q < 0 or dim_x < 0:
        raise ValueError("arguments must be nonnegative")
    return BoundReport(
        q=q,
        dim_x=dim_x,
        rokhlin=2 * q + 1,
        tower=4 * q + 3,
        amenability=4 * q + 3,
        dad=4 * q + 3,
        nuclear=6 * (dim_x + 1) ** 2,
    )
