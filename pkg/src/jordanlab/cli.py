"""Command-line front end: verification suites and the non-Jordan witness table.

Each subcommand emits one structured JSON record on stdout and a short
human-readable summary on stderr (--format table swaps the table onto
stdout).  The exit code is 0 exactly when no claim failed; claims that were
skipped for budget reasons do not fail the run.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field

from . import birgroup
from .errors import (
    DegenerateAfterRetries,
    JordanLabError,
    NotAdmissible,
    Undefined,
)
from .ellcurve import Curve, curve_search, enumerate_points, iter_admissible_curves, weil_pairing
from .finab import (
    FinAbGroup,
    all_h_subgroups,
    is_isotropic,
    isotropic_witness,
    pairing,
    parse_delta,
)
from .gtable import GroupTable
from .heisenberg import commutator, group_table, min_abelian_index
from .scalars import mu_generator
from .theta import (
    find_theta_curve,
    h_of_level,
    orientation_sigma,
    theta_commutator,
    theta_enumerate_mu,
    theta_mul,
    theta_structure,
)

VERIFIED = "verified"
FAILED = "failed"
SKIPPED = "skipped-budget"

ABSTRACT_EXHAUSTIVE_N = 6  # commutator scans and subgroup lattices stop here
PAIRING_TRIPLE_CAP = 2_000_000


@dataclass
class Claim:
    id: str
    status: str
    checked: int = 0
    failures: int = 0
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"id": self.id, "status": self.status, "checked": self.checked,
               "failures": self.failures}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class RunReport:
    command: str
    params: dict
    claims: list[Claim] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def claim(self, id: str, ok: bool, checked: int, failures: int = 0, detail: str = "") -> Claim:
        c = Claim(id, VERIFIED if ok else FAILED, checked, failures, detail)
        self.claims.append(c)
        return c

    def skip(self, id: str, detail: str) -> Claim:
        c = Claim(id, SKIPPED, detail=detail)
        self.claims.append(c)
        return c

    @property
    def failed(self) -> bool:
        return any(c.status == FAILED for c in self.claims)

    def to_dict(self) -> dict:
        out = {"command": self.command, "params": self.params}
        out.update(self.data)
        out["claims"] = [c.to_dict() for c in self.claims]
        out["wall_time_s"] = round(self.wall_time_s, 3)
        return out

    def human_lines(self) -> list[str]:
        lines = [f"== {self.command} {self.params}"]
        for key, value in self.data.items():
            if key == "rows":
                lines.append(f"{'n':>3} {'p':>5} {'a':>4} {'b':>4} {'|G|':>6} "
                             f"{'certified':>9} {'min_index':>9} {'transport':>9}")
                for row in value:
                    lines.append(
                        f"{row['n']:>3} {row.get('p') or '-':>5} "
                        f"{row.get('a') if row.get('a') is not None else '-':>4} "
                        f"{row.get('b') if row.get('b') is not None else '-':>4} "
                        f"{row['group_order']:>6} {row['certified_lower_bound']:>9} "
                        f"{row['min_abelian_index'] if row['min_abelian_index'] is not None else '-':>9} "
                        f"{str(row.get('theta_transport', '-')):>9}")
            elif key != "witness":
                lines.append(f"  {key}: {value}")
        for c in self.claims:
            lines.append(f"  [{c.status:>14}] {c.id} checked={c.checked} failures={c.failures}"
                         + (f"  ({c.detail})" if c.detail else ""))
        lines.append(f"  wall time {self.wall_time_s:.2f}s  -> {'FAIL' if self.failed else 'OK'}")
        return lines


def _emit(report: RunReport, fmt: str) -> int:
    text = "\n".join(report.human_lines())
    if fmt == "table":
        print(text)
    else:
        print(json.dumps(report.to_dict(), indent=2))
        print(text, file=sys.stderr)
    return 1 if report.failed else 0


# ---------------------------------------------------------------------------
# abstract: symplectic layer + Heisenberg-type layer for one delta


def run_abstract(delta: tuple[int, ...], budget: int) -> RunReport:
    start = time.perf_counter()
    report = RunReport("abstract", {"delta": list(delta), "budget": budget})
    group = FinAbGroup(delta)
    n = group.order
    report.data["delta"] = list(delta)
    report.data["n"] = n
    report.data["group_order"] = n ** 3

    h = group.h_elements()
    if len(h) ** 3 <= PAIRING_TRIPLE_CAP:
        checked = failures = 0
        for a, b, c in itertools.product(h, repeat=3):
            left = pairing(a + b, c)
            if left != pairing(a, c) * pairing(b, c):
                failures += 1
            right = pairing(a, b + c)
            if right != pairing(a, b) * pairing(a, c):
                failures += 1
            checked += 2
        report.claim("pairing-bi-additive", failures == 0, checked, failures)
    else:
        report.skip("pairing-bi-additive", f"{len(h)}^3 triples exceed cap")

    alt_failures = sum(0 if pairing(a, a).is_one else 1 for a in h)
    report.claim("pairing-alternating", alt_failures == 0, len(h), alt_failures)

    nd_failures = 0
    for a in h:
        if a.is_zero:
            continue
        if all(pairing(a, b).is_one for b in h):
            nd_failures += 1
    report.claim("pairing-nondegenerate", nd_failures == 0, len(h), nd_failures)

    if group.h_order() <= budget and group.h_order() <= 400:
        subs = all_h_subgroups(group, budget=budget)
        iso = [s for s in subs if is_isotropic(s)]
        bad = 0
        for s in iso:
            witness = isotropic_witness(s)  # raises on violation
            if n % witness.elements.order != 0 or witness.index % n != 0:
                bad += 1
        report.claim("isotropic-index-divisibility", bad == 0, len(iso), bad,
                     f"{len(subs)} subgroups, {len(iso)} isotropic")
    else:
        report.skip("isotropic-index-divisibility", f"#H = {group.h_order()} too large")

    if n <= ABSTRACT_EXHAUSTIVE_N:
        _, elems = group_table(group)
        checked = failures = 0
        for g, hh in itertools.product(elems, repeat=2):
            if commutator(g, hh) != pairing(g.project(), hh.project()):
                failures += 1
            checked += 1
        report.claim("commutator-identity", failures == 0, checked, failures)
    else:
        report.skip("commutator-identity", f"N = {n} beyond exhaustive cap")

    idx = min_abelian_index(group)
    report.data["min_abelian_index"] = idx.min_abelian_index
    report.data["certified_lower_bound"] = idx.certified_lower_bound
    report.data["witness"] = idx.to_dict()
    if idx.exhaustive:
        report.claim("min-abelian-index", idx.min_abelian_index >= n, idx.subgroups_scanned,
                     detail=f"min = {idx.min_abelian_index}, certified >= {n}")
    else:
        report.skip("min-abelian-index", f"N = {n} enumerated by certificate only")

    report.wall_time_s = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# curve-search


def run_curve_search(n: int, p_max: int) -> RunReport:
    start = time.perf_counter()
    report = RunReport("curve-search", {"n": n, "p_max": p_max})
    curves = curve_search(n, p_max)
    rows = []
    for curve in curves:
        rows.append({
            "n": n,
            "p": curve.p,
            "a": curve.a.value,
            "b": curve.b.value,
            "group_order": len(enumerate_points(curve)),
            "certified_lower_bound": n,
            "min_abelian_index": None,
        })
    report.data["rows"] = rows
    report.data["found"] = len(curves)
    report.claim("search-complete", True, len(curves),
                 detail=f"{len(curves)} admissible curves with p <= {p_max}")
    report.wall_time_s = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# theta-verify


def run_theta_verify(curve: Curve | None, n: int, p_max: int, seed: int) -> RunReport:
    start = time.perf_counter()
    if curve is None and n >= 2:
        curve = find_theta_curve(n, p_max)
    params = {"n": n, "seed": seed}
    if curve is not None:
        params.update({"p": curve.p, "a": curve.a.value, "b": curve.b.value})
    report = RunReport("theta-verify", params)
    if curve is not None:
        report.data.update({"n": n, "p": curve.p, "a": curve.a.value, "b": curve.b.value})

    if n < 2:
        level = h_of_level(curve, 1) if curve is not None else None
        report.claim("h-of-level-order", level is None or level.order == 1,
                     1, detail="level 1 is degenerate")
        report.wall_time_s = time.perf_counter() - start
        return report

    level = h_of_level(curve, n)
    report.claim("h-of-level-order", level.order == n * n, level.order,
                 detail=f"order {level.order} == {n}^2")

    structure = theta_structure(curve, n)
    elements = theta_enumerate_mu(curve, n)  # verifies mu-layer closure
    size = len(elements)
    report.claim("mu-layer-closure", size == n ** 3, size * size,
                 detail=f"{size} elements, all products stay in the layer")

    images = [structure.to_heisenberg(g) for g in elements]
    index_of = {img.sort_key(): i for i, img in enumerate(images)}
    report.claim("transport-bijective", len(index_of) == size, size)

    iso_failures = 0
    prod_index = [[0] * size for _ in range(size)]
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            img = structure.to_heisenberg(theta_mul(g, h))
            prod_index[i][j] = index_of[img.sort_key()]
            if img != images[i] * images[j]:
                iso_failures += 1
    report.claim("structure-isomorphism", iso_failures == 0, size * size, iso_failures,
                 detail="full multiplication-table comparison")

    table = GroupTable(prod_index)
    assoc_failures = sum(
        1
        for i, j, k in itertools.product(range(size), repeat=3)
        if table.mul(table.mul(i, j), k) != table.mul(i, table.mul(j, k))
    )
    report.claim("theta-group-axioms", assoc_failures == 0, size ** 3, assoc_failures,
                 detail="associativity, identity and inverses on the index table")

    sigma = orientation_sigma(curve, n)
    report.data["orientation_sigma"] = sigma
    gen = mu_generator(curve.p, n)
    comm_failures = comm_checked = 0
    section = list(structure.section.values())
    for g, h in itertools.product(section, repeat=2):
        value = theta_commutator(g, h)
        expected = (weil_pairing(g.x, h.x, n, seed=seed) ** sigma).embed_in_field(curve.p, gen)
        if value != expected:
            comm_failures += 1
        comm_checked += 1
    report.claim("commutator-matches-weil", comm_failures == 0, comm_checked, comm_failures,
                 detail=f"sigma = {sigma}")

    if n <= 3:
        embedded = [birgroup.theta_embed(g) for g in elements]
        hom_failures = 0
        for (g, eg), (h, eh) in itertools.product(zip(elements, embedded), repeat=2):
            lhs = birgroup.theta_embed(theta_mul(g, h))
            if not birgroup.bir_equal(lhs, birgroup.compose(eh, eg)):
                hom_failures += 1
        report.claim("embed-homomorphism", hom_failures == 0, size * size, hom_failures)

        inj_failures = 0
        pairs = 0
        for i in range(size):
            for j in range(i + 1, size):
                if embedded[i].y != embedded[j].y:
                    continue
                pairs += 1
                if birgroup.bir_equal(embedded[i], embedded[j]):
                    inj_failures += 1
        report.claim("embed-injective", inj_failures == 0, pairs, inj_failures)

        sem_ok = sem_skipped = sem_failures = 0
        samples = list(birgroup.sample_points(curve, seed=seed, count=400))
        import random as _random

        rng = _random.Random(f"{seed}:compose")
        while sem_ok < 100 and sem_skipped < 4000:
            a = rng.choice(embedded)
            b = rng.choice(embedded)
            s = rng.choice(samples)
            try:
                lhs = birgroup.apply(birgroup.compose(b, a), s)
                rhs = birgroup.apply(b, birgroup.apply(a, s))
            except Undefined:
                sem_skipped += 1
                continue
            if lhs != rhs:
                sem_failures += 1
            sem_ok += 1
        report.claim("compose-semantics", sem_failures == 0 and sem_ok >= 100, sem_ok,
                     sem_failures, detail=f"{sem_skipped} undefined samples skipped")
    else:
        report.skip("embed-homomorphism", f"level {n} beyond the embedding budget")

    report.wall_time_s = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# nonjordan


def run_nonjordan(n_max: int, p_max: int, exhaustive_max: int, theta_max: int, seed: int) -> RunReport:
    start = time.perf_counter()
    report = RunReport("nonjordan", {
        "n_max": n_max, "p_max": p_max,
        "exhaustive_max": exhaustive_max, "theta_max": theta_max, "seed": seed,
    })
    rows = []
    sigma_seen: set[int] = set()
    for n in range(1, n_max + 1):
        row: dict = {
            "n": n,
            "delta": [n],
            "group_order": n ** 3,
            "certified_lower_bound": n,
            "p": None, "a": None, "b": None,
            "min_abelian_index": None,
            "theta_transport": None,
        }
        idx = min_abelian_index((n,), exhaustive_cap=exhaustive_max)
        row["min_abelian_index"] = idx.min_abelian_index
        if idx.exhaustive:
            report.claim(f"min-index-n{n}", idx.min_abelian_index == n,
                         idx.subgroups_scanned, detail=f"exact minimum {idx.min_abelian_index}")
        else:
            report.skip(f"min-index-n{n}", "certified bound only at this size")

        if n >= 2:
            curve = None
            if n <= theta_max:
                try:
                    curve = find_theta_curve(n, p_max)
                    row["theta_transport"] = True
                    sigma_seen.add(orientation_sigma(curve, n))
                except (NotAdmissible, DegenerateAfterRetries):
                    curve = None
            if curve is None:
                row["theta_transport"] = False if n <= theta_max else None
                curve = next(iter_admissible_curves(n, p_max), None)
            if curve is None:
                report.skip(f"curve-n{n}", f"no admissible curve below {p_max}")
            else:
                row.update({"p": curve.p, "a": curve.a.value, "b": curve.b.value})
        rows.append(row)

    report.data["rows"] = rows
    if sigma_seen:
        report.data["orientation_sigma"] = sorted(sigma_seen)[0]
        report.claim("orientation-constant", len(sigma_seen) == 1, len(sigma_seen),
                     detail=f"signs {sorted(sigma_seen)}")
    bounds = [row["certified_lower_bound"] for row in rows]
    report.claim("bounds-strictly-increasing",
                 all(b2 > b1 for b1, b2 in zip(bounds, bounds[1:])), len(bounds),
                 detail=f"certified bounds {bounds}")
    report.wall_time_s = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordanlab",
        description="Exact verification suites for Heisenberg-type groups, theta groups "
                    "and the unbounded abelian-index witness in Bir(E x A^1).",
    )
    parser.add_argument("--format", choices=("json", "table"), default="json")
    # accepted after the subcommand too; SUPPRESS keeps the outer value intact
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[common], **kw)))

    p_abstract = sub.add_parser("abstract", help="verify the symplectic and Heisenberg layers")
    p_abstract.add_argument("--delta", required=True, help="elementary divisors, e.g. 4,2")
    p_abstract.add_argument("--budget", type=int, default=20736,
                            help="element cap for subgroup enumeration")

    p_search = sub.add_parser("curve-search", help="list curves with full level-n structure")
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--p-max", type=int, default=50)

    p_theta = sub.add_parser("theta-verify", help="verify the theta layer on one curve")
    p_theta.add_argument("--n", type=int, required=True)
    p_theta.add_argument("--p", type=int)
    p_theta.add_argument("--a", type=int)
    p_theta.add_argument("--b", type=int)
    p_theta.add_argument("--p-max", type=int, default=200,
                         help="search bound when no curve is given")
    p_theta.add_argument("--seed", type=int, default=0)

    p_table = sub.add_parser("nonjordan", help="emit the unbounded-index witness table")
    p_table.add_argument("--n-max", type=int, default=4)
    p_table.add_argument("--p-max", type=int, default=2000)
    p_table.add_argument("--exhaustive-max", type=int, default=4,
                         help="largest n with brute-force exact minimum")
    p_table.add_argument("--theta-max", type=int, default=4,
                         help="largest n for which the curve transport is attempted")
    p_table.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "abstract":
            report = run_abstract(parse_delta(args.delta), args.budget)
        elif args.command == "curve-search":
            report = run_curve_search(args.n, args.p_max)
        elif args.command == "theta-verify":
            curve = None
            if args.p is not None:
                if args.a is None or args.b is None:
                    raise ValueError("--p requires --a and --b")
                curve = Curve.make(args.p, args.a, args.b)
            report = run_theta_verify(curve, args.n, args.p_max, args.seed)
        else:
            report = run_nonjordan(args.n_max, args.p_max, args.exhaustive_max,
                                   args.theta_max, args.seed)
    except JordanLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return _emit(report, args.format)


if __name__ == "__main__":
    raise SystemExit(main())
