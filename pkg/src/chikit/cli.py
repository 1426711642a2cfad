"""chi-kit: run verification suites and emit deterministic reports.

Exit status: 0 when every check passes, 1 when any fails, 2 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from . import report as _report

SUBCOMMANDS = ("shuffle", "brion", "ez-diagram", "co-leibniz", "coassoc", "theta-pullback",
               "theta-ez", "e1", "cone-claim", "leibniz", "dsq", "constants", "all")

# suite -> default size bound (max m+n, max N)
DEFAULT_SIZE = {"shuffle": 8, "brion": 8, "ez-diagram": 6, "co-leibniz": 6, "coassoc": 6,
                "theta-pullback": 6, "theta-ez": 6}

CONFIG_KEYS = {"m": int, "n": int, "r": int, "max_size": int, "p_max": int, "count": int,
               "seed": int, "threads": int, "format": str, "output": str, "timings": bool,
               "inject_failure": bool, "statement_map": str}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    suite: str
    m: int | None = None
    n: int | None = None
    r: int | None = None
    max_size: int | None = None
    p_max: int = 20
    count: int = 200
    seed: int = 0
    threads: int = 1
    format: str = "json"
    output: str | None = None
    timings: bool = False
    inject_failure: bool = False
    statement_map: str | None = None

    def validate(self):
        for name in ("m", "n", "r"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"--{name} must be non-negative")
        for name in ("max_size", "p_max", "count", "threads"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.format not in ("json", "text"):
            raise UsageError("--format must be json or text")
        if (self.m is None) != (self.n is None):
            raise UsageError("--m and --n go together")

    def echo(self) -> dict:
        # the output path and parallelism do not change results, so they stay out
        d = {"suite": self.suite, "m": self.m, "n": self.n, "r": self.r,
             "max_size": self.max_size, "p_max": self.p_max, "count": self.count,
             "seed": self.seed, "inject_failure": self.inject_failure}
        return {k: v for k, v in d.items() if v is not None}


@dataclass
class SuiteReport:
    version: str
    config: dict
    reports: list
    statements: dict
    wall_ms: float | None = None
    tool: str = "chi-kit"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self, timings: bool = False) -> dict:
        used = sorted({r.statement for r in self.reports})
        d = {
            "tool": self.tool,
            "version": self.version,
            "config": self.config,
            "statement_table": {s: self.statements.get(s, "") for s in used},
            "reports": [dict(r.to_dict(timings), paper_ref=self.statements.get(r.statement, ""))
                        for r in self.reports],
            "summary": {"total": len(self.reports),
                        "failed": sum(not r.passed for r in self.reports)},
            "pass": self.passed,
        }
        if timings:
            d["wall_ms"] = self.wall_ms
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_text(self, timings: bool = False) -> str:
        lines = [f"{self.tool} {self.version}"]
        for r in self.reports:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            t = f"  ({r.elapsed_ms:.1f} ms)" if timings and r.elapsed_ms is not None else ""
            lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.statement}  [{params}]{t}")
        s = self.to_dict()["summary"]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} "
                     f"({s['total'] - s['failed']}/{s['total']} passed)")
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# task registry; tasks are (name, kwargs) so they can cross process borders

def _task_fn(name: str):
    from . import cones, forms, hopf
    from .combinat import ez
    from .combinat.perms import Permutation
    from . import total

    def cone_claim(r, s, flip=False):
        rep = total.verify_cone_claim(r, s, signed=not flip)
        if not flip:
            unsigned = total.verify_cone_claim(r, s, signed=False)
            symmetric = total.verify_cone_claim(r, s, symmetric=True)
            rep.details["control_unsigned_fails"] = not unsigned.passed
            rep.details["control_symmetric_fails"] = not symmetric.passed
            rep.passed = rep.passed and not unsigned.passed and not symmetric.passed
        return rep

    table = {
        "shuffle": lambda m, n, seed=0, flip=False: hopf.verify_shuffle_relation(m, n, seed=seed, flip=flip),
        "mult": lambda sigma, tau: hopf.verify_multiplicativity(Permutation(tuple(sigma)),
                                                                Permutation(tuple(tau))),
        "brion": lambda m, n, flip=False: cones.verify_brion(m, n, flip=flip),
        "bridge": lambda N, flip=False: cones.verify_bridge(N, flip=flip),
        "lattice": lambda N, B, flip=False: cones.verify_lattice(N, B, flip=flip),
        "ez": lambda m, n, flip=False: ez.verify_ez_diagram(m, n, "inverse" if flip else "shuffle"),
        "co_leibniz": lambda m, n, flip=False: ez.verify_co_leibniz(m, n, flip=flip),
        "coassoc": lambda m, n, r, flip=False: ez.verify_coassoc(m, n, r, flip=flip),
        "theta_pullback": lambda N, flip=False: forms.verify_theta_pullback(N, flip=flip),
        "theta_ez": lambda m, n, flip=False: forms.verify_theta_ez(m, n, "inverse" if flip else "shuffle"),
        "e1": lambda p_max, flip=False: total.verify_e1_page(p_max, flip=flip),
        "cone_claim": cone_claim,
        "chain_map": total.verify_hat_box_chain_map,
        "homotopy": total.verify_homotopy_t,
        "leibniz": lambda count, seed, flip=False: total.verify_leibniz_random(count, seed, flip=flip),
        "dsq": lambda count, seed, flip=False: total.verify_dsq(count, seed, flip=flip),
        "constants": lambda p_max, n_max, flip=False: total.verify_constants(p_max, n_max, flip=flip),
    }
    return table[name]


def run_task(task):
    name, kwargs = task
    rep = _task_fn(name)(**kwargs)
    if kwargs.get("flip"):
        rep.params = dict(rep.params, injected_failure=True)
    return rep


def _pairs(max_size: int, lo: int = 0):
    return [(m, s - m) for s in range(lo, max_size + 1) for m in range(s + 1)]


def build_tasks(cfg: RunConfig) -> list:
    suite = cfg.suite
    suites = [s for s in SUBCOMMANDS if s != "all"] if suite == "all" else [suite]
    tasks = []

    def bound(name, default=None):
        v = cfg.max_size if cfg.max_size is not None else DEFAULT_SIZE.get(name, default)
        return v

    single = cfg.m is not None and suite != "all"
    for s in suites:
        if s == "shuffle":
            pairs = [(cfg.m, cfg.n)] if single else _pairs(bound(s))
            tasks += [("shuffle", {"m": m, "n": n, "seed": cfg.seed}) for m, n in pairs]
            if not single:
                from .combinat.perms import all_permutations
                top = min(bound(s), 5)
                for m in range(0, top + 1):
                    for n in range(0, top + 1 - m):
                        for a, b in itertools.product(all_permutations(m), all_permutations(n)):
                            tasks.append(("mult", {"sigma": list(a.word), "tau": list(b.word)}))
        elif s == "brion":
            pairs = [(cfg.m, cfg.n)] if single else _pairs(bound(s))
            tasks += [("brion", {"m": m, "n": n}) for m, n in pairs]
            if not single:
                tasks += [("bridge", {"N": N}) for N in range(1, bound(s) + 1)]
                tasks += [("lattice", {"N": N, "B": B}) for N in range(1, min(bound(s), 4) + 1)
                          for B in range(0, min(bound(s), 5) + 1)]
        elif s == "ez-diagram":
            pairs = [(cfg.m, cfg.n)] if single else _pairs(bound(s))
            tasks += [("ez", {"m": m, "n": n}) for m, n in pairs]
        elif s == "co-leibniz":
            pairs = [(cfg.m, cfg.n)] if single else _pairs(bound(s), lo=1)
            if single and cfg.m + cfg.n < 1:
                raise UsageError("co-leibniz needs m + n >= 1")
            tasks += [("co_leibniz", {"m": m, "n": n}) for m, n in pairs]
        elif s == "coassoc":
            if single:
                triples = [(cfg.m, cfg.n, cfg.r or 0)]
            else:
                b = bound(s)
                triples = [(m, n, r) for m in range(b + 1) for n in range(b + 1 - m)
                           for r in range(b + 1 - m - n)]
            tasks += [("coassoc", {"m": m, "n": n, "r": r}) for m, n, r in triples]
        elif s == "theta-pullback":
            tasks += [("theta_pullback", {"N": N}) for N in range(1, bound(s) + 1)]
        elif s == "theta-ez":
            pairs = [(cfg.m, cfg.n)] if single else _pairs(bound(s))
            tasks += [("theta_ez", {"m": m, "n": n}) for m, n in pairs]
        elif s == "e1":
            tasks.append(("e1", {"p_max": cfg.p_max}))
        elif s == "cone-claim":
            for r, q in itertools.product((0, 1), repeat=2):
                tasks.append(("cone_claim", {"r": r, "s": q}))
                tasks.append(("chain_map", {"r": r, "s": q}))
                tasks.append(("homotopy", {"r": r, "s": q}))
        elif s == "leibniz":
            tasks.append(("leibniz", {"count": cfg.count, "seed": cfg.seed}))
        elif s == "dsq":
            tasks.append(("dsq", {"count": cfg.count, "seed": cfg.seed}))
        elif s == "constants":
            tasks.append(("constants", {"p_max": 6, "n_max": 12}))
    if cfg.inject_failure and tasks:
        # the first task of every suite has a negative-control variant
        name, kw = tasks[0]
        tasks[0] = (name, dict(kw, flip=True))
    return tasks


def _report_key(rep):
    return (rep.statement, json.dumps(rep.params, sort_keys=True))


def execute(cfg: RunConfig) -> SuiteReport:
    tasks = build_tasks(cfg)
    cap = os.environ.get("CHI_KIT_THREADS")
    threads = cfg.threads
    if cap:
        try:
            threads = min(threads, max(1, int(cap)))
        except ValueError:
            raise UsageError("CHI_KIT_THREADS must be an integer") from None
    t0 = time.perf_counter()
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(threads) as ex:
            reports = list(ex.map(run_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        reports = [run_task(t) for t in tasks]
    wall = round((time.perf_counter() - t0) * 1000.0, 3)
    reports.sort(key=_report_key)
    return SuiteReport(__version__, cfg.echo(), reports, dict(_report.STATEMENTS), wall)


# --------------------------------------------------------------------------
# argument handling

def read_kv_file(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    for i, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _coerce(key: str, value: str):
    typ = CONFIG_KEYS.get(key)
    if typ is None:
        raise UsageError(f"unknown config key {key!r}")
    if typ is bool:
        low = value.lower()
        if low not in ("1", "0", "true", "false", "yes", "no"):
            raise UsageError(f"config key {key!r} expects a boolean")
        return low in ("1", "true", "yes")
    if typ is int:
        try:
            return int(value)
        except ValueError:
            raise UsageError(f"config key {key!r} expects an integer") from None
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--max-size", type=int, dest="max_size")
    common.add_argument("--p-max", type=int, dest="p_max")
    common.add_argument("--count", type=int, help="random instances for leibniz/dsq")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--config", help="key=value file; flags take precedence")
    common.add_argument("--statement-map", dest="statement_map",
                        help="key=value file replacing statement descriptions")
    common.add_argument("--timings", action="store_true", default=None,
                        help="include elapsed times (breaks byte-identical output)")
    common.add_argument("--inject-failure", action="store_true", default=None,
                        dest="inject_failure",
                        help="run the first check with a deliberately wrong sign")
    p = _Parser(prog="chi-kit", description="Exact verification suites.")
    p.add_argument("--version", action="version", version=f"chi-kit {__version__}")
    sub = p.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def parse_config(argv) -> RunConfig:
    args = make_parser().parse_args(argv)
    values: dict = {}
    if args.config:
        for k, v in read_kv_file(args.config).items():
            values[k.replace("-", "_")] = _coerce(k.replace("-", "_"), v)
    for k in CONFIG_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            values[k] = v
    cfg = RunConfig(args.suite, **values)
    cfg.validate()
    return cfg


def run(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        overrides = read_kv_file(cfg.statement_map) if cfg.statement_map else {}
        suite = execute(cfg)
        suite.statements.update(overrides)
    except UsageError as exc:
        print(f"chi-kit: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"chi-kit: error: {exc}", file=sys.stderr)
        return 2
    text = suite.to_json(cfg.timings) if cfg.format == "json" else suite.to_text(cfg.timings)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = suite.to_dict()["summary"]
    print(f"chi-kit {cfg.suite}: {'PASS' if suite.passed else 'FAIL'} "
          f"{s['total'] - s['failed']}/{s['total']} checks passed "
          f"in {suite.wall_ms / 1000.0:.2f} s", file=sys.stderr)
    return 0 if suite.passed else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
