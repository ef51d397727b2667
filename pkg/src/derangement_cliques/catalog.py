"""Group analysis reports, the shipped catalog and catalog verification."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cliques import find_clique
from .derangement import (
    COCLIQUE_CAP,
    CliqueWitness,
    DerangementGraph,
    clique_number,
    has_kclique,
    max_coclique,
)
from .errors import CapExceeded, DerangementCliquesError
from .groupfile import GroupRecord, make_record, parse_group_file, write_group_file
from .perm import (
    PermGroup,
    Permutation,
    action_on_subsets,
    affine_line_group,
    alt4_on_pairs,
    alternating_group,
    cyclic_group,
    dihedral_group,
    minimal_block_systems,
    regular_representation,
    symmetric_group,
    wreath_imprimitive,
)

# groups up to this order are searched exhaustively; bigger ones only get
# witnesses from sampled elements
EXACT_CAP = 20_000
SAMPLE_SIZE = 200
SAMPLE_ROUNDS = 5


def catalog_dir() -> Path:
    return Path(str(resources.files("derangement_cliques") / "data" / "catalog"))


class RandomElements:
    """Product-replacement generator of pseudo-random group elements (seeded)."""

    def __init__(self, G: PermGroup, seed: int = 0, scramble: int = 60):
        self.rng = random.Random(seed)
        gens = list(G.generators)
        self.state = (gens * (1 + 10 // len(gens)))[:max(10, len(gens))]
        self.acc = G.identity
        for _ in range(scramble):
            self()

    def __call__(self) -> Permutation:
        r = self.state
        i, j = self.rng.sample(range(len(r)), 2)
        other = r[j] if self.rng.random() < 0.5 else ~r[j]
        r[i] = r[i] * other if self.rng.random() < 0.5 else other * r[i]
        self.acc = self.acc * r[i]
        return self.acc


def sampled_clique(G: PermGroup, k: int, samples: int = SAMPLE_SIZE, seed: int = 0,
                   rounds: int = SAMPLE_ROUNDS) -> CliqueWitness | None:
    """Look for a ``k``-clique through the identity among sampled derangements.

    Sampled elements are words in the generators, hence members of ``G``, so a
    witness is valid without materializing the group.  ``None`` means only
    that the samples contained no clique.
    """
    draw = RandomElements(G, seed)
    for _ in range(rounds):
        pool = []
        seen = set()
        for _ in range(samples * 20):
            g = draw()
            if g.is_derangement() and g not in seen:
                seen.add(g)
                pool.append(g)
                if len(pool) == samples:
                    break
        adj = [0] * len(pool)
        for i, x in enumerate(pool):
            for j in range(i + 1, len(pool)):
                if (x * ~pool[j]).is_derangement():
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        found = find_clique(adj, (1 << len(pool)) - 1, k - 1)
        if found is not None:
            return CliqueWitness((G.identity,) + tuple(pool[i] for i in found))
    return None


@dataclass
class AnalysisReport:
    name: str
    degree: int
    order: int | None = None
    transitive: bool | None = None
    block_systems: list[tuple[int, int]] | None = None
    derangements: int | None = None
    four_clique: CliqueWitness | None = None
    four_clique_method: str | None = None
    triangle: bool | None = None
    omega: int | None = None
    alpha: int | None = None
    rho: Fraction | None = None
    product_bound_tight: bool | None = None
    density_bound_tight: bool | None = None
    bounds_hold: bool | None = None
    classification: str = "undetermined"
    errors: dict[str, str] = field(default_factory=dict)

    def items(self) -> list[tuple[str, str]]:
        def fmt(v):
            if v is None:
                return "n/a"
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        out = [("name", self.name), ("degree", fmt(self.degree)), ("order", fmt(self.order)),
               ("transitive", fmt(self.transitive))]
        if self.block_systems is not None:
            out.append(("block_systems", ",".join(f"{m}x{d}" for m, d in self.block_systems) or "none"))
        out += [("derangements", fmt(self.derangements)), ("triangle", fmt(self.triangle)),
                ("omega", fmt(self.omega)), ("alpha", fmt(self.alpha)), ("rho", fmt(self.rho)),
                ("clique_coclique_bounds_hold", fmt(self.bounds_hold)),
                ("product_bound_tight", fmt(self.product_bound_tight)),
                ("density_bound_tight", fmt(self.density_bound_tight)),
                ("classification", self.classification)]
        if self.four_clique is not None:
            out.append(("four_clique_method", self.four_clique_method))
            out.append(("four_clique", " ; ".join(self.four_clique.cycle_strings())))
        for k, v in self.errors.items():
            out.append((f"error.{k}", v))
        return out

    def to_kv(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.items()) + "\n"

    def to_text(self) -> str:
        width = max(len(k) for k, _ in self.items())
        return "\n".join(f"{k.ljust(width)} : {v}" for k, v in self.items()) + "\n"


def analyze(record: GroupRecord | PermGroup, coclique: bool = True, exact_cap: int = EXACT_CAP,
            coclique_cap: int = COCLIQUE_CAP) -> AnalysisReport:
    """Run every check that fits within the caps; cap failures are reported per field."""
    if isinstance(record, PermGroup):
        G = record
        if G.cap > exact_cap:
            G = PermGroup(G.degree, G.generators, cap=exact_cap, name=G.name)
        rep = AnalysisReport(G.name or "group", G.degree)
    else:
        G = record.group(cap=exact_cap)
        rep = AnalysisReport(record.name, record.degree)
    rep.transitive = G.is_transitive()
    if rep.transitive:
        rep.block_systems = [(s.num_blocks, s.block_size) for s in minimal_block_systems(G)]
    if not G.materialize():
        rep.errors["order"] = f"more than {exact_cap} elements"
        w = sampled_clique(G, 4)
        if w is not None:
            rep.four_clique, rep.four_clique_method = w, "sampled"
            rep.classification = "4-clique"
            rep.triangle = True
        else:
            rep.errors["four_clique"] = "no witness among sampled elements"
        return rep
    rep.order = G.order
    graph = DerangementGraph(G)
    rep.derangements = graph.valency
    rep.triangle = has_kclique(graph, 3) is not None
    w = has_kclique(graph, 4)
    if w is not None:
        rep.four_clique, rep.four_clique_method = w, "rooted search"
        rep.classification = "4-clique"
    else:
        rep.classification = "exception-candidate"
    try:
        rep.omega = clique_number(graph)
    except CapExceeded as exc:
        rep.errors["omega"] = str(exc)
    if coclique:
        if rep.order > coclique_cap:
            rep.errors["alpha"] = f"|G| = {rep.order} exceeds the coclique cap {coclique_cap}"
        else:
            try:
                rep.alpha, _ = max_coclique(graph, cap=coclique_cap)
            except CapExceeded as exc:
                rep.errors["alpha"] = str(exc)
    if rep.alpha is not None and rep.omega is not None:
        n = G.degree
        rep.bounds_hold = rep.alpha * rep.omega <= rep.order
        rep.product_bound_tight = rep.alpha * rep.omega == rep.order
        if rep.transitive:
            rep.rho = Fraction(rep.alpha * n, rep.order)
            bound = Fraction(n, rep.omega)
            rep.bounds_hold = rep.bounds_hold and rep.rho <= bound
            rep.density_bound_tight = rep.rho == bound
    return rep


# -- catalog -----------------------------------------------------------------


def _tags_for(G: PermGroup, exceptional: bool, extra: dict | None = None, coclique: bool = True) -> dict:
    rep = analyze(G, coclique=coclique)
    tags: dict = {"transitive": rep.transitive}
    if rep.order is not None:
        tags["order"] = rep.order
        tags["derangements"] = rep.derangements
        if rep.omega is not None:
            tags["omega"] = rep.omega
    if rep.alpha is not None:
        tags["alpha"] = rep.alpha
    tags["exceptional"] = exceptional
    if extra:
        tags.update(extra)
    return tags


def standard_groups() -> list[tuple[str, PermGroup, bool]]:
    """``(name, group, exceptional)`` for every built-in catalog entry."""
    S4, A5, S5, S6 = symmetric_group(4), alternating_group(5), symmetric_group(5), symmetric_group(6)
    out = [
        ("alt3_deg3", alternating_group(3), True),
        ("sym3_deg3", symmetric_group(3), True),
        ("alt4_deg6", alt4_on_pairs(), True),
        ("sym4_deg4", S4, False),
        ("alt4_deg4", alternating_group(4), False),
        ("sym4_deg6", action_on_subsets(S4, 2), False),
        ("alt5_deg5", A5, False),
        ("sym5_deg5", S5, False),
        ("alt5_deg10", action_on_subsets(A5, 2), False),
        ("sym5_deg10", action_on_subsets(S5, 2), False),
        ("alt6_deg15", action_on_subsets(alternating_group(6), 2), False),
        ("sym6_deg15", action_on_subsets(S6, 2), False),
        ("c15_regular", cyclic_group(15), False),
        ("c31_regular", cyclic_group(31), False),
        ("alt4_regular", regular_representation(alternating_group(4)), False),
    ]
    for n in (4, 5, 6, 8):
        out.append((f"c{n}_regular", cyclic_group(n), False))
    for n in (4, 5, 6):
        out.append((f"d{2 * n}_regular", regular_representation(dihedral_group(n)), False))
    out.append(("d10_deg5", dihedral_group(5), False))
    for p in (3, 5):
        out.append((f"cyclic_wreath_alt4_deg{6 * p}", wreath_imprimitive(cyclic_group(p), alt4_on_pairs()), False))
        out.append((f"affine_wreath_alt4_deg{6 * p}",
                    wreath_imprimitive(affine_line_group(p), alt4_on_pairs()), False))
    return out


def build_catalog(directory, exceptional_records=(), coclique: bool = True) -> list[Path]:
    """Write the built-in groups plus the given search records as group files."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, G, exceptional in standard_groups():
        tags = _tags_for(G, exceptional, coclique=coclique)
        rec = make_record(name, G, tags)
        path = directory / f"{name}.grp"
        write_group_file(rec, path)
        paths.append(path)
    for rec in exceptional_records:
        G = rec.group()
        tags = _tags_for(G, True, extra={"search": rec.tag("search")}, coclique=coclique)
        path = directory / f"{rec.name}.grp"
        write_group_file(make_record(rec.name, G, tags, rec.comments), path)
        paths.append(path)
    return paths


def load_catalog(directory=None) -> list[GroupRecord]:
    directory = Path(directory) if directory is not None else catalog_dir()
    return [parse_group_file(p) for p in sorted(directory.glob("*.grp"))]


def load_record(name: str, directory=None) -> GroupRecord:
    directory = Path(directory) if directory is not None else catalog_dir()
    return parse_group_file(directory / f"{name}.grp")


@dataclass
class RecordResult:
    name: str
    passed: bool
    failures: list[str]
    report: AnalysisReport | None = None


def check_record(record: GroupRecord) -> RecordResult:
    """Compare a record's tags with freshly computed values."""
    failures = []
    want_alpha = record.tag("alpha") is not None
    try:
        rep = analyze(record, coclique=want_alpha)
    except DerangementCliquesError as exc:
        return RecordResult(record.name, False, [f"analysis failed: {exc}"])
    checks = {
        "order": rep.order,
        "transitive": rep.transitive,
        "omega": rep.omega,
        "alpha": rep.alpha,
        "derangements": rep.derangements,
    }
    for key, got in checks.items():
        want = record.tag(key)
        if want is None:
            continue
        got_text = ("true" if got else "false") if isinstance(got, bool) else str(got)
        if got_text != want:
            failures.append(f"{key}: tagged {want}, computed {got_text}")
    exc_tag = record.tag("exceptional")
    if exc_tag is not None:
        if exc_tag == "true" and rep.classification != "exception-candidate":
            failures.append(f"exceptional: tagged true, classified {rep.classification}")
        if exc_tag == "false" and rep.classification != "4-clique":
            failures.append(f"exceptional: tagged false, classified {rep.classification}")
    if rep.transitive and record.degree >= 3 and rep.triangle is False:
        failures.append("transitive group without a triangle")
    if rep.bounds_hold is False:
        failures.append("clique-coclique bound violated")
    return RecordResult(record.name, not failures, failures, rep)


@dataclass
class CatalogSummary:
    results: list[RecordResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            detail = "" if r.passed else " (" + "; ".join(r.failures) + ")"
            out.append(f"{status} {r.name}{detail}")
        return out


def verify_catalog(directory=None, workers: int = 1) -> CatalogSummary:
    records = load_catalog(directory)
    if workers > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check_record, records))
    else:
        results = [check_record(r) for r in records]
    results.sort(key=lambda r: r.name)
    return CatalogSummary(results)


def exceptional_records(directory=None) -> list[GroupRecord]:
    return [r for r in load_catalog(directory) if r.name.startswith("exceptional_")]

