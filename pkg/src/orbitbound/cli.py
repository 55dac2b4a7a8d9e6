"""Command-line front end.

    orbitbound count   S:4^2 --m 0..6
    orbitbound bounds  AGL:2,3 --m 2..7 --thm 5.1 --format json
    orbitbound certify C:8 --m 0..8

Exit codes: 0 ok, 1 usage error, 2 a size cap was hit, 3 an invariant
(bound dominance, oracle agreement, regular-orbit certificate) failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .bounds import DOMINANCE_TOL, thm53_chain
from .catalog import GroupSpec, parse_group_spec
from .ladder import bound_ladder
from .orbits import (
    DEFAULT_CARRIER_CAP,
    ActionKind,
    CarrierTooLarge,
    OrbitSummary,
    brute_force_orbits,
    orbit_count,
    regular_fraction_bounds,
)
from .perm import DEFAULT_ELEMENT_CAP, FiniteGroup, GroupTooLarge

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VIOLATION = 0, 1, 2, 3

ENV_PREFIX = "ORBITBOUND_"

# --thm id -> (report, bound name) pairs it selects
BOUND_IDS = {
    "2.1": [("per_element", "per_element")],
    "3.1": [("passive_pairs", "support_profile")],
    "3.2": [("passive_pairs", "min_degree")],
    "3.3": [("passive_pairs", "split")],
    "4.1": [("delta", "group_order")],
    "4.3": [("delta", "chain"), ("delta", "pair_chain")],
    "4.4": [("delta", "spheres")],
    "5.1": [("delta", "affine"), ("delta", "affine_exact_order")],
}


class UsageError(Exception):
    pass


class CapExceeded(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- report -----------------------------------------------------------------

@dataclass
class RunReport:
    """One CLI run.  Exact integers are decimal strings, rationals ``"p/q"``,
    and non-finite logs the strings ``"inf"``/``"-inf"``, so the JSON form
    is loss-free."""

    command: str
    group: str
    n: int
    group_order: str
    kind: str
    m_range: list[int]
    options: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    wall_time: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("wall_time")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))


def _ln(x: float) -> float | str:
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _rational(q: Fraction) -> str:
    return str(Fraction(q))


# --- argument handling ------------------------------------------------------

def parse_m_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad --m value {text!r}; expected A or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad --m range {text!r}")
    return lo, hi


def _env_default(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return type(fallback)(raw) if fallback is not None else int(raw)
    except ValueError:
        raise UsageError(f"environment variable {ENV_PREFIX + name}={raw!r} is not valid") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbitbound", description="Exact orbit counts and stabilizer bounds for permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("group", help="S:n, A:n, C:n, D:n, S:n^l, GL:d,q, AGL:d,q or gens[@n]:(..);(..)")
        p.add_argument("--m", required=True, help="size or weight, A or A..B")
        p.add_argument("--kind", choices=["subsets", "multisets"], default="subsets")
        p.add_argument("--format", choices=["text", "json", "csv"], default=None)
        p.add_argument("--threads", type=int, default=None, help="worker cap (runs are single-threaded)")
        p.add_argument("--element-cap", type=int, default=None)
        p.add_argument("--carrier-cap", type=int, default=None)
        p.add_argument("--multiset-m-cap", type=int, default=None, help="largest multiset weight (default 2n)")

    p = sub.add_parser("count", help="exact orbit counts")
    common(p)
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force orbits")

    p = sub.add_parser("bounds", help="bounds next to exact values")
    common(p)
    p.add_argument("--thm", action="append", choices=sorted(BOUND_IDS), help="restrict to these bounds (repeatable)")
    p.add_argument("--chain", help="Hamming-ball radii r1,r2,... for the chain bound")
    p.add_argument("--spheres", action="store_true", help="include the sphere-profile bound")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("certify", help="Burnside vs brute force, regular-orbit certificates, symmetry")
    common(p)
    return parser


@dataclass
class Settings:
    element_cap: int
    carrier_cap: int
    multiset_m_cap: int | None
    threads: int
    fmt: str


def _settings(args) -> Settings:
    def pick(flag, name, default):
        value = flag if flag is not None else _env_default(name, default)
        if value is not None and value < 1:
            raise UsageError(f"{name.lower()} must be positive")
        return value

    fmt = args.format or os.environ.get(ENV_PREFIX + "FORMAT", "text")
    if fmt not in ("text", "json", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    return Settings(
        element_cap=pick(args.element_cap, "ELEMENT_CAP", DEFAULT_ELEMENT_CAP),
        carrier_cap=pick(args.carrier_cap, "CARRIER_CAP", DEFAULT_CARRIER_CAP),
        multiset_m_cap=pick(args.multiset_m_cap, "MULTISET_M_CAP", None),
        threads=pick(args.threads, "THREADS", 1),
        fmt=fmt,
    )


def _setup(args, settings: Settings) -> tuple[GroupSpec, FiniteGroup, ActionKind, range]:
    try:
        spec = parse_group_spec(args.group)
        G = spec.build(settings.element_cap)
    except GroupTooLarge:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    kind = ActionKind.SUBSETS if args.kind == "subsets" else ActionKind.MULTISETS
    lo, hi = parse_m_range(args.m)
    if kind is ActionKind.SUBSETS and hi > G.n:
        raise UsageError(f"m={hi} exceeds n={G.n} for subsets")
    if kind is ActionKind.MULTISETS:
        cap = settings.multiset_m_cap or 2 * G.n
        if hi > cap:
            raise CapExceeded(f"multiset weight {hi} exceeds the cap {cap}; raise --multiset-m-cap")
    return spec, G, kind, range(lo, hi + 1)


def _new_report(args, G: FiniteGroup, kind: ActionKind, ms: range, options: dict) -> RunReport:
    return RunReport(args.command, args.group.strip(), G.n, str(G.order), kind.value, [ms.start, ms.stop - 1], options)


def _oracle_row(G, m, kind, settings, summary) -> tuple[dict, OrbitSummary]:
    brute = brute_force_orbits(G, m, kind, settings.carrier_cap)
    return {"orbit_count": str(brute.orbit_count), "regular_orbit_count": str(brute.regular_orbit_count),
            "agree": brute.orbit_count == summary.orbit_count}, brute


# --- commands ---------------------------------------------------------------

def cmd_count(args, settings: Settings) -> RunReport:
    _, G, kind, ms = _setup(args, settings)
    report = _new_report(args, G, kind, ms, {"oracle": bool(args.oracle)})
    for m in ms:
        s = orbit_count(G, m, kind)
        row = {"m": m, "orbit_count": str(s.orbit_count), "carrier_size": str(s.carrier_size),
               "avg_stabilizer": _rational(s.avg_stabilizer), "delta": _rational(s.delta),
               "delta_float": float(s.delta)}
        if args.oracle:
            row["oracle"], _ = _oracle_row(G, m, kind, settings, s)
            if not row["oracle"]["agree"]:
                report.violations.append(f"m={m}: oracle disagrees")
        report.rows.append(row)
    return report


def _selected(args) -> set[tuple[str, str]] | None:
    if not args.thm and not args.spheres:
        return None
    chosen = set()
    for t in args.thm or []:
        chosen.update(BOUND_IDS[t])
    if args.spheres:
        chosen.update(BOUND_IDS["4.4"] + BOUND_IDS["4.1"])
    return chosen


def cmd_bounds(args, settings: Settings) -> RunReport:
    spec, G, kind, ms = _setup(args, settings)
    chosen = _selected(args)
    if args.thm and "5.1" in args.thm and spec.affine is None:
        raise UsageError(f"the affine-group bound needs GL:d,q or AGL:d,q acting on F_q^d, not {spec.text!r}")
    radii = None
    if args.chain:
        try:
            radii = [int(x) for x in args.chain.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad --chain {args.chain!r}") from None
    pair_base = spec.args[0] if spec.family == "S" and spec.args[1:] == (2,) else None
    options = {"thm": sorted(args.thm or []), "chain": radii, "spheres": bool(args.spheres), "oracle": bool(args.oracle)}
    report = _new_report(args, G, kind, ms, options)
    if pair_base is not None and pair_base >= 3:
        chain = thm53_chain(2, pair_base)
        report.summary["pair_chain"] = {"kappa": "2", "radii": list(chain.radii), "stalled": chain.stalled,
                                        "length_over_ln_n": chain.length_over_ln_n}
    for m in ms:
        s = orbit_count(G, m, kind)
        row = {"m": m, "orbit_count": str(s.orbit_count), "delta": _rational(s.delta)}
        try:
            ladder = bound_ladder(G, m, kind, chain_radii=radii, affine=spec.affine, pair_base=pair_base, summary=s)
        except ValueError as exc:
            if "out of theorem range" not in str(exc):
                raise
            row["note"] = "out of theorem range"
            report.rows.append(row)
            continue
        row["exact_ln"], row["bounds"] = {}, {}
        for q, rep in ladder.reports.items():
            slack = rep.slack
            picked = {b: v for b, v in {**rep.bounds, **rep.lower_bounds}.items() if chosen is None or (q, b) in chosen}
            if not picked:
                continue
            row["exact_ln"][q] = _ln(rep.exact_ln)
            for b, v in picked.items():
                row["bounds"][f"{q}.{b}"] = {"ln": _ln(v), "slack": _ln(slack[b])}
                if slack[b] < -DOMINANCE_TOL:
                    report.violations.append(f"m={m}: {q}.{b} below exact value")
        for v in ladder.ordering_violations():
            report.violations.append(f"m={m}: ordering {v}")
        if args.oracle:
            row["oracle"], _ = _oracle_row(G, m, kind, settings, s)
            if not row["oracle"]["agree"]:
                report.violations.append(f"m={m}: oracle disagrees")
        report.rows.append(row)
    return report


def _unimodal(seq: list[int]) -> bool:
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    return all(a >= b for a, b in zip(seq[i:], seq[i + 1:]))


def cmd_certify(args, settings: Settings) -> RunReport:
    _, G, kind, ms = _setup(args, settings)
    report = _new_report(args, G, kind, ms, {})
    counts = {}
    for m in ms:
        s = orbit_count(G, m, kind)
        oracle, brute = _oracle_row(G, m, kind, settings, s)
        counts[m] = s.orbit_count
        row = {"m": m, "orbit_count": str(s.orbit_count), "delta": _rational(s.delta), "oracle": oracle}
        if not oracle["agree"]:
            report.violations.append(f"m={m}: oracle disagrees")
        if s.delta < 1:
            orbit_lb, point_lb = regular_fraction_bounds(s.delta)
            ok_orbits = brute.regular_orbit_fraction >= orbit_lb
            ok_points = brute.rigid_point_fraction >= point_lb
            row["regular"] = {"orbit_fraction": _rational(brute.regular_orbit_fraction),
                              "orbit_fraction_lb": _rational(orbit_lb),
                              "point_fraction": _rational(brute.rigid_point_fraction),
                              "point_fraction_lb": _rational(point_lb),
                              "holds": ok_orbits and ok_points}
            if not (ok_orbits and ok_points):
                report.violations.append(f"m={m}: regular-orbit certificate fails")
        report.rows.append(row)
    report.summary["oracle_all_equal"] = all(r["oracle"]["agree"] for r in report.rows)
    if kind is ActionKind.SUBSETS:
        pairs = [(m, G.n - m) for m in ms if G.n - m in counts]
        symmetric = all(counts[a] == counts[b] for a, b in pairs)
        report.summary["symmetric"] = symmetric
        if not symmetric:
            report.violations.append("orbit counts not symmetric under m -> n - m")
        if ms.start == 0 and ms.stop - 1 == G.n:
            report.summary["unimodal"] = _unimodal([counts[m] for m in ms])
            if not report.summary["unimodal"]:
                report.violations.append("orbit counts not unimodal")
    return report


COMMANDS = {"count": cmd_count, "bounds": cmd_bounds, "certify": cmd_certify}


# --- output -----------------------------------------------------------------

def _flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def render_csv(report: RunReport) -> str:
    flat = [_flatten(r) for r in report.rows]
    columns = []
    for r in flat:
        columns += [c for c in r if c not in columns]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render_text(report: RunReport) -> str:
    lines = [f"{report.command} {report.group}  n={report.n}  |G|={report.group_order}  kind={report.kind}"]
    flat = [_flatten(r) for r in report.rows]
    columns = []
    for r in flat:
        columns += [c for c in r if c not in columns]
    cells = [[_cell(r.get(c, "")) for c in columns] for r in flat]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines.append("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
    lines += ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    for k, v in report.summary.items():
        lines.append(f"{k}: {v}")
    lines.append("violations: " + ("; ".join(report.violations) if report.violations else "none"))
    if report.wall_time is not None:
        lines.append(f"wall time: {report.wall_time:.3f} s")
    return "\n".join(lines) + "\n"


def render(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        return render_csv(report)
    return render_text(report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        settings = _settings(args)
        report = COMMANDS[args.command](args, settings)
    except UsageError as exc:
        print(f"orbitbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupTooLarge, CarrierTooLarge, CapExceeded) as exc:
        print(f"orbitbound: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionError as exc:
        print(f"orbitbound: invariant violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    report.wall_time = time.perf_counter() - start
    sys.stdout.write(render(report, settings.fmt))
    if report.violations:
        print(f"orbitbound: {len(report.violations)} invariant violation(s)", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
