"""End-to-end runs producing certificates, and the standalone re-checker.

Each stage echoes the subshift presentation and every parameter into its
certificate together with the witnesses needed to re-verify the claim
without re-running the construction search: tower bases, pair bases and
exponent ranges, the full equivariant map, the cover pieces.  The
re-checker rebuilds the (deterministic) arena from the echoed parameters,
reconstitutes the claimed objects from witnesses and runs the verifier
again; a certificate is accepted when the recomputation reproduces it
byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .amenability import (
    EquivariantMap,
    build_equivariant_map,
    check_equivariance,
    project_finite_support,
)
from .certificates import Certificate, Clause
from .config import spec_from_config
from .cover import (
    CoverGraph,
    build_cover_graph,
    check_intertwining,
    cover_special_states,
    isolated_orbit_window,
    special_match_report,
)
from .groupoid import DadCover, bound_chain, build_dad_cover, build_window, verify_dad_cover
from .rokhlin import RokhlinCover, RokhlinTower, build_rokhlin_cover, verify_rokhlin_cover
from .special import sp_estimate
from .towers import (
    TowerPair,
    TowerPairSystem,
    attach_shifted_pairs,
    build_phase_pairs,
    normalize_window,
    pairs_from_rokhlin,
    verify_tower_pairs,
)
from .words import LanguageTable, SubshiftSpec


@dataclass
class PipelineParams:
    """Everything a chain run needs; mirrors the CLI flags."""

    config_text: str
    out_dir: str | None = None
    horizon: int = 20
    depth: int = 24  # special-report depth and cover prefix length default
    past_len: int = 6
    cover_horizon: int | None = None
    height: int = 5  # tower-cover height
    window_set: tuple[int, ...] = (-1, 0, 1)
    big_n: int = 37
    epsilon: Fraction = Fraction(2)
    exponent_bound: int = 2
    words_cap: int = 2000

    def spec(self) -> SubshiftSpec:
        spec, _ = spec_from_config(self.config_text)
        return spec


def _spec_params(spec: SubshiftSpec) -> dict:
    return {"spec": spec.describe()}


# -- individual stages --------------------------------------------------------


def run_lang(spec: SubshiftSpec, horizon: int, out_dir: str | None, words_cap: int = 2000):
    table = LanguageTable.build(spec, horizon)
    clauses = [
        Clause("factorial", table.check_factorial(), ""),
        Clause(
            "monotone",
            all(a <= b for a, b in zip(table.p, table.p[1:])),
            "",
        ),
    ]
    cert = Certificate.build(
        kind="language-table",
        params={**_spec_params(spec), "n_max": horizon, "p": list(table.p)},
        clauses=clauses,
    )
    if out_dir:
        table.write_csv(out_dir, spec.alphabet, words_cap)
    return table, cert


def run_special(spec: SubshiftSpec, depth: int):
    report = sp_estimate(spec, depth)
    clauses = [
        Clause(
            "bound-consistency",
            report.bound_holds(),
            f"branch_upper={report.branch_upper} bound={report.bound}",
        ),
        Clause(
            "superlinear-warning-absent",
            not report.superlinear_warning,
            "growth surrogate exceeded threshold" if report.superlinear_warning else "",
        ),
    ]
    cert = Certificate.build(
        kind="special-report",
        params={
            **_spec_params(spec),
            "depth": depth,
            "counts": list(report.counts),
            "branch_lower": report.branch_lower,
            "branch_upper": report.branch_upper,
            "stabilized": report.stabilized,
            "d_hat": report.d_hat,
            "bound": report.bound,
        },
        clauses=clauses,
    )
    return report, cert


def run_cover(spec: SubshiftSpec, k: int, l: int, horizon: int | None):
    graph = build_cover_graph(spec, k, l, horizon)
    match = special_match_report(graph)
    clauses = [
        Clause("intertwining", check_intertwining(graph), ""),
        Clause(
            "special-count-matches-branch-count",
            match.counts_match,
            f"cover {len(match.special_states)} vs words {match.branch_count_at_k}",
        ),
        Clause("special-states-witnessed-by-left-special-words", match.all_witnessed, ""),
        Clause("shift-onto-states", graph.surjective, ""),
    ]
    cert = Certificate.build(
        kind="cover-graph",
        params={
            **_spec_params(spec),
            "k": k,
            "l": l,
            "horizon": graph.horizon,
            "states": graph.num_states,
            "edges": sum(len(s) for s in graph.succ),
            "special_states": list(match.special_states),
            "past_stabilized": graph.past_stabilized,
            "past_sound": graph.past_sound,
            "functional": graph.functional,
        },
        clauses=clauses,
    )
    return graph, cert


def run_rokhlin(graph: CoverGraph, height: int):
    sys = graph.system
    specials = cover_special_states(graph)
    cover = build_rokhlin_cover(sys, height, specials)
    cert = verify_rokhlin_cover(sys, cover)
    cert = Certificate.build(
        kind=cert.kind,
        params={
            **cert.params,
            **_spec_params(graph.spec),
            "k": graph.k,
            "l": graph.l,
            "graph_horizon": graph.horizon,
            "tower_bases": [sorted(t.base) for t in cover.towers],
        },
        clauses=cert.clauses,
    )
    return cover, cert


def run_towerdim(graph: CoverGraph, cover: RokhlinCover, window_set):
    sys = graph.system
    tps = pairs_from_rokhlin(cover, window_set)
    attach_shifted_pairs(tps, sys)
    cert = verify_tower_pairs(sys, tps)
    cert = Certificate.build(
        kind=cert.kind,
        params={
            **cert.params,
            **_spec_params(graph.spec),
            "k": graph.k,
            "l": graph.l,
            "graph_horizon": graph.horizon,
            "carrier": "full",
            "pair_bases": [sorted(p.base) for p in tps.pairs],
            "pair_kinds": [p.kind for p in tps.pairs],
            "pair_origins": [p.origin for p in tps.pairs],
            "pair_exponent_ranges": [
                [min(p.exponents), max(p.exponents)] for p in tps.pairs
            ],
        },
        clauses=cert.clauses,
    )
    return tps, cert


def run_amen(graph: CoverGraph, cover: RokhlinCover, window_set, big_n: int, epsilon):
    """Equivariant-map stage: staggered-phase pairs sized for the full
    big_n-fold sumset margin, map construction, exact deviation split."""
    sys = graph.system
    specials = cover_special_states(graph)
    d = 2 * len(cover.towers) - 1
    orbit = isolated_orbit_window(graph)
    carrier = sys.without_entries_into(orbit)
    max_e = max(abs(n) for n in normalize_window(window_set))
    margin = list(range(-big_n * max_e, big_n * max_e + 1))
    tps = build_phase_pairs(carrier, d + 1, margin, d_claimed=d)
    pair_cert = verify_tower_pairs(carrier, tps)
    pair_cert = Certificate.build(
        kind=pair_cert.kind,
        params={
            **pair_cert.params,
            **_spec_params(graph.spec),
            "k": graph.k,
            "l": graph.l,
            "graph_horizon": graph.horizon,
            "carrier": "entry-free",
            "pair_bases": [sorted(p.base) for p in tps.pairs],
            "pair_kinds": [p.kind for p in tps.pairs],
            "pair_origins": [p.origin for p in tps.pairs],
            "pair_exponent_ranges": [
                [min(p.exponents), max(p.exponents)] for p in tps.pairs
            ],
        },
        clauses=pair_cert.clauses,
    )
    emap = build_equivariant_map(
        sys, tps, window_set, big_n, specials, epsilon, orbit, level_carrier=carrier
    )
    eq_cert = check_equivariance(sys, emap, window_set, epsilon, orbit)
    eq_cert = Certificate.build(
        kind=eq_cert.kind,
        params={
            **eq_cert.params,
            **_spec_params(graph.spec),
            "k": graph.k,
            "l": graph.l,
            "graph_horizon": graph.horizon,
            "orbit_window": sorted(orbit),
            "phase_pair_bases": [sorted(p.base) for p in tps.pairs],
            "phase_span": tps.height - 1,
            "map": emap.to_jsonable(),
        },
        clauses=eq_cert.clauses,
    )
    return emap, tps, orbit, pair_cert, eq_cert


def run_dad(
    graph: CoverGraph,
    emap: EquivariantMap,
    orbit,
    window_set,
    exponent_bound: int,
    epsilon,
    out_dir: str | None = None,
):
    sys = graph.system
    specials = cover_special_states(graph)
    window = build_window(sys, window_set, exponent_bound)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "window_elements.txt"), "w") as fh:
            fh.write(window.to_text())
    projected, moved = project_finite_support(emap, emap.support_window, Fraction(1, 2))
    eq_cert = check_equivariance(sys, projected, window_set, epsilon, orbit)
    cover = build_dad_cover(window, projected, specials, emap.d, orbit, eq_cert)
    cert = verify_dad_cover(window, cover)
    cert = Certificate.build(
        kind=cert.kind,
        params={
            **cert.params,
            **_spec_params(graph.spec),
            "k": graph.k,
            "l": graph.l,
            "graph_horizon": graph.horizon,
            "projection_moved": moved,
            "support": list(projected.support_window),
            "F": list(cover.F),
            "pieces": [sorted(p) for p in cover.pieces],
            "orbit_states": sorted(cover.orbit_states),
            "map": projected.to_jsonable(),
            "epsilon": Fraction(epsilon),
        },
        clauses=cert.clauses,
    )
    return cover, cert


def run_bounds(q: int, dim_x: int):
    report = bound_chain(q, dim_x)
    cert = Certificate.build(
        kind="bounds",
        params={
            "q": q,
            "dim_x": dim_x,
            "rokhlin": report.rokhlin,
            "tower": report.tower,
            "amenability": report.amenability,
            "dad": report.dad,
            "nuclear": report.nuclear,
        },
        clauses=[
            Clause(
                "monotone-in-q",
                bound_chain(q + 1, dim_x).as_tuple() >= report.as_tuple(),
                "",
            )
        ],
    )
    return report, cert


# -- full chain ----------------------------------------------------------------


def run_certify(params: PipelineParams) -> tuple[dict[str, Certificate], str]:
    """Run the whole chain; returns certificates by stage and the overall
    verdict (worst stage verdict)."""
    spec = params.spec()
    certs: dict[str, Certificate] = {}
    _, certs["lang"] = run_lang(spec, params.horizon, params.out_dir, params.words_cap)
    _, certs["special"] = run_special(spec, max(params.horizon, 4))
    graph, certs["cover"] = run_cover(spec, params.depth, params.past_len, params.cover_horizon)
    cover, certs["rokhlin"] = run_rokhlin(graph, params.height)
    _, certs["towerdim"] = run_towerdim(graph, cover, params.window_set)
    emap, _tps, orbit, certs["amen_pairs"], certs["amen"] = run_amen(
        graph, cover, params.window_set, params.big_n, params.epsilon
    )
    _, certs["dad"] = run_dad(
        graph, emap, orbit, params.window_set, params.exponent_bound, params.epsilon,
        out_dir=params.out_dir,
    )
    q = len(cover_special_states(graph))
    _, certs["bounds"] = run_bounds(q, 0)
    verdicts = {name: cert.verdict for name, cert in certs.items()}
    overall = "pass"
    if any(v == "inconclusive-at-depth" for v in verdicts.values()):
        overall = "inconclusive-at-depth"
    if any(v == "fail" for v in verdicts.values()):
        overall = "fail"
    if params.out_dir:
        os.makedirs(params.out_dir, exist_ok=True)
        for name, cert in certs.items():
            with open(os.path.join(params.out_dir, f"{name}.json"), "w") as fh:
                fh.write(cert.canonical_json())
        master = Certificate.build(
            kind="certify-chain",
            params={
                "stages": {name: cert.verdict for name, cert in certs.items()},
                "config": params.config_text,
                "depth": params.depth,
                "past_len": params.past_len,
                "height": params.height,
                "window_set": list(params.window_set),
                "big_n": params.big_n,
                "epsilon": Fraction(params.epsilon),
            },
            clauses=[
                Clause(f"stage-{name}", cert.verdict == "pass", cert.verdict)
                for name, cert in certs.items()
            ],
        )
        with open(os.path.join(params.out_dir, "chain.json"), "w") as fh:
            fh.write(master.canonical_json())
        certs["chain"] = master
    return certs, overall


# -- standalone re-checking ------------------------------------------------------


def _config_from_echo(spec_echo: dict) -> str:
    lines = [f"variant = {spec_echo['variant']}"]
    lines.append("alphabet = " + " ".join(spec_echo["alphabet"]))
    if spec_echo["variant"] == "sft":
        lines.append("forbidden = " + ", ".join(spec_echo.get("forbidden", [])))
    if spec_echo["variant"] == "substitution":
        for sym, image in spec_echo["rules"].items():
            lines.append(f"rule.{sym} = {image}")
    return "\n".join(lines) + "\n"


def recheck_certificate(cert: Certificate) -> tuple[bool, str]:
    """Reconstruct the arena from the echoed parameters, re-verify the
    claim from the stored witnesses and compare byte-for-byte."""
    params = cert.params
    kind = cert.kind

    def rebuild_graph() -> CoverGraph:
        spec, _ = spec_from_config(_config_from_echo(params["spec"]))
        return build_cover_graph(spec, params["k"], params["l"], params["graph_horizon"])

    if kind == "language-table":
        spec, _ = spec_from_config(_config_from_echo(params["spec"]))
        _, fresh = run_lang(spec, params["n_max"], None)
    elif kind == "special-report":
        spec, _ = spec_from_config(_config_from_echo(params["spec"]))
        _, fresh = run_special(spec, params["depth"])
    elif kind == "cover-graph":
        spec, _ = spec_from_config(_config_from_echo(params["spec"]))
        _, fresh = run_cover(spec, params["k"], params["l"], params["horizon"])
    elif kind == "rokhlin-cover":
        graph = rebuild_graph()
        sys = graph.system
        towers = tuple(
            RokhlinTower.from_base(sys, frozenset(base), params["height"])
            for base in params["tower_bases"]
        )
        cover = RokhlinCover(
            params["height"], towers, params["special_count"], {"mode": "recheck"}
        )
        fresh = verify_rokhlin_cover(sys, cover)
        fresh = Certificate.build(
            kind=fresh.kind,
            params={
                **fresh.params,
                "spec": params["spec"],
                "k": params["k"],
                "l": params["l"],
                "graph_horizon": params["graph_horizon"],
                "tower_bases": params["tower_bases"],
            },
            clauses=fresh.clauses,
        )
    elif kind == "tower-pairs":
        graph = rebuild_graph()
        sys = graph.system
        if params.get("carrier") == "entry-free":
            sys = sys.without_entries_into(isolated_orbit_window(graph))
        pairs = tuple(
            TowerPair(
                frozenset(base),
                tuple(range(rng[0], rng[1] + 1)),
                kind_,
                origin,
            )
            for base, rng, kind_, origin in zip(
                params["pair_bases"],
                params["pair_exponent_ranges"],
                params["pair_kinds"],
                params["pair_origins"],
            )
        )
        tps = TowerPairSystem(
            pairs,
            params["E"],
            params["d_claimed"],
            params["M"],
            params["height"],
        )
        fresh = verify_tower_pairs(sys, tps)
        fresh = Certificate.build(
            kind=fresh.kind,
            params={
                **fresh.params,
                "spec": params["spec"],
                "k": params["k"],
                "l": params["l"],
                "graph_horizon": params["graph_horizon"],
                "carrier": params.get("carrier", "full"),
                "pair_bases": params["pair_bases"],
                "pair_kinds": params["pair_kinds"],
                "pair_origins": params["pair_origins"],
                "pair_exponent_ranges": params["pair_exponent_ranges"],
            },
            clauses=fresh.clauses,
        )
    elif kind == "equivariance":
        graph = rebuild_graph()
        emap = EquivariantMap.from_jsonable(params["map"])
        orbit = frozenset(params["orbit_window"])
        fresh = check_equivariance(
            graph.system, emap, tuple(params["E"]), Fraction(params["epsilon"]), orbit
        )
        fresh = Certificate.build(
            kind=fresh.kind,
            params={
                **fresh.params,
                "spec": params["spec"],
                "k": params["k"],
                "l": params["l"],
                "graph_horizon": params["graph_horizon"],
                "orbit_window": params["orbit_window"],
                "phase_pair_bases": params["phase_pair_bases"],
                "phase_span": params["phase_span"],
                "map": params["map"],
            },
            clauses=fresh.clauses,
        )
    elif kind == "dad-cover":
        graph = rebuild_graph()
        window = build_window(graph.system, tuple(params["E"]), params["exponent_bound"])
        projected = EquivariantMap.from_jsonable(params["map"])
        cover = DadCover(
            pieces=tuple(frozenset(p) for p in params["pieces"]),
            F=tuple(params["F"]),
            support=tuple(projected.support_window),
            orbit_states=frozenset(params["orbit_states"]),
            d=len(params["pieces"]) - 1,
        )
        fresh = verify_dad_cover(window, cover)
        fresh = Certificate.build(
            kind=fresh.kind,
            params={
                **fresh.params,
                "spec": params["spec"],
                "k": params["k"],
                "l": params["l"],
                "graph_horizon": params["graph_horizon"],
                "projection_moved": params["projection_moved"],
                "support": params["support"],
                "F": params["F"],
                "pieces": params["pieces"],
                "orbit_states": params["orbit_states"],
                "map": params["map"],
                "epsilon": params["epsilon"],
            },
            clauses=fresh.clauses,
        )
    elif kind == "bounds":
        _, fresh = run_bounds(params["q"], params["dim_x"])
    elif kind == "certify-chain":
        return True, "chain master: verify the per-stage files"
    else:
        return False, f"unknown certificate kind {kind!r}"
    same = fresh.canonical_json() == cert.canonical_json()
    if same:
        return True, ""
    detail = fresh.first_failure()
    return False, (
        f"recomputation differs from stored certificate"
        + (f"; failing clause: {detail}" if detail else "")
    )
