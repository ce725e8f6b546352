"""Command-line front end: ``jwent {measure,sweep,verify,analytic,spectrum}``.

Exit codes: 0 success, 1 usage/config error, 2 degenerate ground state,
3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .analytic import TwoParticleState, two_particle_Z, two_particle_z
from .basis import MAX_SITES, enumerate_sector
from .diag import AUTO, eigensystem, ground_state
from .errors import CapacityError, DegeneracyError, DomainError
from .measures import all_pairs, measure_pair
from .model import CouplingSet, build_tb_fermion, build_xxz_spin
from .verify import DEFAULT_SEED, RNG_NAME, TOLERANCES, run_battery

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_VERIFY = 0, 1, 2, 3

REPORT_COLUMNS = ["i", "j", "nn_flag", "u_plus", "u_minus", "z", "x_plus", "x_minus",
                  "z_f", "concurrence", "mode_concurrence", "c_minus_mc"]


class ConfigError(DomainError):
    pass


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    n: int = 2
    j_xy: list | None = None
    j_z: list | None = None
    sector: int | str = AUTO
    pairs: list | str = "all"
    seed: int = DEFAULT_SEED
    grid: list | None = None
    ensemble: int = 100
    n_range: list = field(default_factory=lambda: [4, 10])
    momenta: list | None = None
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n <= MAX_SITES:
            raise ConfigError(f"n must be an integer in 2..{MAX_SITES}")
        for name in ("j_xy", "j_z"):
            vals = getattr(self, name)
            if vals is not None and len(vals) != self.n - 1:
                raise ConfigError(f"{name} needs {self.n - 1} entries, got {len(vals)}")
        if self.sector != AUTO and not (isinstance(self.sector, int) and 0 <= self.sector <= self.n):
            raise ConfigError(f"sector must be 'auto' or an integer in 0..{self.n}")
        if self.pairs != "all":
            self.pairs = [tuple(p) for p in self.pairs]
            for p in self.pairs:
                if len(p) != 2 or not 1 <= p[0] < p[1] <= self.n:
                    raise ConfigError(f"bad pair {p}: need 1 <= i < j <= {self.n}")
        if self.grid is not None:
            g = [float(x) for x in self.grid]
            steps = [b - a for a, b in zip(g, g[1:])]
            if not g or not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
                raise ConfigError("grid must be non-empty and strictly monotone")
            self.grid = g
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        unknown = set(self.tolerances) - set(TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys {sorted(unknown)}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        return cls(**d)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["pairs"] != "all":
            d["pairs"] = [list(p) for p in d["pairs"]]
        return d

    def dump(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")

    def couplings(self, ratio: float | None = None) -> CouplingSet:
        j = self.j_xy if self.j_xy is not None else [1.0] * (self.n - 1)
        if ratio is not None:
            jz = [ratio * x for x in j]
        else:
            jz = self.j_z if self.j_z is not None else [0.0] * (self.n - 1)
        return CouplingSet(tuple(j), tuple(jz))

    def pair_list(self):
        return all_pairs(self.n) if self.pairs == "all" else list(self.pairs)


def report_row(m) -> dict:
    return {
        "i": m.i, "j": m.j, "nn_flag": int(m.nn),
        "u_plus": m.spin.u_plus, "u_minus": m.spin.u_minus, "z": m.spin.z,
        "x_plus": m.fermion.x_plus, "x_minus": m.fermion.x_minus, "z_f": m.fermion.z_f,
        "concurrence": m.concurrence, "mode_concurrence": m.mode_concurrence,
        "c_minus_mc": m.concurrence - m.mode_concurrence,
    }


def _solve(cfg: ExperimentConfig, couplings: CouplingSet, strict: bool):
    sector = cfg.sector
    spin = ground_state(build_xxz_spin, couplings, sector, strict=strict)
    if sector == AUTO and len(spin.tied_sectors) > 1:
        raise DegeneracyError(f"ground state tied across sectors n_up={list(spin.tied_sectors)}",
                              spin.tied_sectors)
    ferm = ground_state(build_tb_fermion, couplings, spin.sector.n_up, strict=strict)
    return spin, ferm


def cmd_measure(cfg: ExperimentConfig, strict: bool = False, warn=None) -> list:
    spin, ferm = _solve(cfg, cfg.couplings(), strict)
    if spin.degenerate and warn:
        warn(f"warning: ground state in sector n_up={spin.sector.n_up} is degenerate "
             f"(gap {spin.gap_to_next:.3g}); reporting the lowest eigenvector")
    return [report_row(measure_pair(spin.state, i, j, fermion_psi=ferm.state))
            for i, j in cfg.pair_list()]


def cmd_sweep(cfg: ExperimentConfig, strict: bool = False, workers: int = 1) -> list:
    if not cfg.grid:
        raise ConfigError("sweep needs a non-empty grid")
    pairs = cfg.pair_list()

    def point(ratio):
        try:
            spin, ferm = _solve(cfg, cfg.couplings(ratio), strict=True)
        except DegeneracyError:
            return [{"jz_ratio": ratio, "degenerate": 1, "i": i, "j": j, "nn_flag": int(j == i + 1)}
                    for i, j in pairs]
        return [{"jz_ratio": ratio, "degenerate": 0,
                 **report_row(measure_pair(spin.state, i, j, fermion_psi=ferm.state))}
                for i, j in pairs]

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        chunks = list(pool.map(point, cfg.grid))
    return [row for chunk in chunks for row in chunk]


def cmd_verify(cfg: ExperimentConfig) -> dict:
    suites = run_battery(ensemble=cfg.ensemble, seed=cfg.seed, n_range=tuple(cfg.n_range),
                         tolerances=cfg.tolerances)
    return {
        "rng": RNG_NAME,
        "seed": cfg.seed,
        "ensemble": cfg.ensemble,
        "n_range": list(cfg.n_range),
        "suites": [s.to_dict() for s in suites],
        "passed": all(s.ok for s in suites),
    }


def cmd_analytic(cfg: ExperimentConfig) -> list:
    if not cfg.momenta or len(cfg.momenta) != 2:
        raise ConfigError("analytic needs two momentum indices, e.g. --momenta 1,2")
    n1, n2 = sorted(int(m) for m in cfg.momenta)
    N = cfg.n
    psi = TwoParticleState(N, n1, n2).to_state()
    rows = []
    for i, j in cfg.pair_list():
        z, Z = two_particle_z(N, n1, n2, i, j), two_particle_Z(N, n1, n2, i, j)
        m = measure_pair(psi, i, j)
        rows.append({
            "i": i, "j": j, "nn_flag": int(j == i + 1), "z": z, "z_f": Z,
            "abs_z_gt_abs_z_f": int(abs(z) > abs(Z)),
            "concurrence": m.concurrence, "mode_concurrence": m.mode_concurrence,
            "c_minus_mc": m.concurrence - m.mode_concurrence,
        })
    return rows


def cmd_spectrum(cfg: ExperimentConfig) -> list:
    c = cfg.couplings()
    sectors = range(cfg.n + 1) if cfg.sector == AUTO else [cfg.sector]
    rows = []
    for n_up in sectors:
        basis = enumerate_sector(cfg.n, n_up)
        ws = eigensystem(build_xxz_spin(c, basis))[0]
        wf = eigensystem(build_tb_fermion(c, basis))[0]
        rows += [{"n_up": n_up, "level": k, "spin_energy": float(a), "fermion_energy": float(b)}
                 for k, (a, b) in enumerate(zip(ws, wf))]
    return rows


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def format_rows(rows: list, columns: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _pairs(text):
    if text.strip().lower() == "all":
        return "all"
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        i, j = tok.replace(":", "-").split("-")
        out.append([int(i), int(j)])
    return out


def _sector(text):
    return AUTO if text.strip().lower() == AUTO else int(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config; flags override its fields")
    common.add_argument("--n", type=int)
    common.add_argument("--j-xy", type=_floats, dest="j_xy", help="comma-separated bond couplings J_j")
    common.add_argument("--j-z", type=_floats, dest="j_z", help="comma-separated Ising couplings Jz_j")
    common.add_argument("--sector", type=_sector, help="up-spin count n_up, or 'auto'")
    common.add_argument("--pairs", type=_pairs, help="'all' or e.g. 1-3,2-4")
    common.add_argument("--grid", type=_floats, help="Jz/J ratios for sweep")
    common.add_argument("--seed", type=int)
    common.add_argument("--ensemble", type=int)
    common.add_argument("--momenta", type=lambda s: [int(x) for x in s.split(",")])
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", type=Path)
    common.add_argument("--strict-degeneracy", action="store_true")
    common.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="jwent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in [("measure", "ground-state C and MC per site pair"),
                       ("sweep", "measure over a grid of Jz/J ratios"),
                       ("verify", "run the invariant battery, print a JSON summary"),
                       ("analytic", "closed-form two-fermion correlations"),
                       ("spectrum", "spin and fermion sector spectra")]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


_OVERRIDES = ("n", "j_xy", "j_z", "sector", "pairs", "grid", "seed", "ensemble", "momenta")


def resolve_config(args) -> ExperimentConfig:
    base = ExperimentConfig.load(args.config).to_dict() if args.config else {}
    for key in _OVERRIDES:
        val = getattr(args, key)
        if val is not None:
            base[key] = val
    if "n" not in base and base.get("j_xy"):
        base["n"] = len(base["j_xy"]) + 1
    return ExperimentConfig.from_dict(base)


def main(argv=None) -> int:
    out_text = None
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        code = EXIT_OK
        if args.command == "measure":
            rows = cmd_measure(cfg, args.strict_degeneracy, warn=lambda m: print(m, file=sys.stderr))
            out_text = format_rows(rows, REPORT_COLUMNS, args.format)
        elif args.command == "sweep":
            rows = cmd_sweep(cfg, args.strict_degeneracy, args.workers)
            out_text = format_rows(rows, ["jz_ratio", "degenerate"] + REPORT_COLUMNS, args.format)
        elif args.command == "verify":
            summary = cmd_verify(cfg)
            out_text = json.dumps(summary, indent=2) + "\n"
            code = EXIT_OK if summary["passed"] else EXIT_VERIFY
        elif args.command == "analytic":
            rows = cmd_analytic(cfg)
            cols = ["i", "j", "nn_flag", "z", "z_f", "abs_z_gt_abs_z_f",
                    "concurrence", "mode_concurrence", "c_minus_mc"]
            out_text = format_rows(rows, cols, args.format)
        else:
            rows = cmd_spectrum(cfg)
            out_text = format_rows(rows, ["n_up", "level", "spin_energy", "fermion_energy"], args.format)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"degenerate ground state: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DomainError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        args.out.write_text(out_text)
    else:
        sys.stdout.write(out_text)
    return code
