"""Command-line front end.

Subcommands: analyze one seed or discriminant, scan a box of (m, n),
regenerate the bundled tables, or inspect Hasse verdicts / form classes
for a single discriminant.  Exit codes: 0 success, 2 invalid input,
3 internal inconsistency or table mismatch.
"""

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .arith import iroot
from .cubicforms import enumerate_classes, monic_representative
from .errors import InconsistencyError, ValidationError
from .genus1 import HomogeneousSpace, hasse_verdict
from .report import (build_report, report_csv_header, report_from_json,
                     report_to_csv, report_to_json)
from .seeds import make_seed, scan as seed_scan
from . import tables


@dataclass
class Config:
    """Search bounds and output knobs; defaults sized for the worked
    examples (monic lattice 10^5, global cube search 10^4, representing-1
    search 10^3, local tests at p <= 100 plus the bad primes)."""
    point_bound: int = 10**5
    global_bound: int = 10**4
    rep_bound: int = 10**3
    primes_max: int = 100
    effort: int = 24
    fmt: str = "text"
    cache: str | None = None
    jobs: int = 1
    run_hasse: bool = True

    def __post_init__(self):
        for name in ("point_bound", "global_bound", "rep_bound",
                     "primes_max", "effort", "jobs"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be positive")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"),
                   default="text")
    p.add_argument("--bound-monic", type=int, default=10**5,
                   help="lattice search radius for monic points (default 1e5)")
    p.add_argument("--bound-global", type=int, default=10**4,
                   help="projective cube-point search radius (default 1e4)")
    p.add_argument("--bound-rep", type=int, default=10**3,
                   help="search radius for a class to represent 1 (default 1e3)")
    p.add_argument("--primes-max", type=int, default=100,
                   help="test local solvability at all p up to this bound")
    p.add_argument("--effort", type=int, default=24,
                   help="recursion budget for p-adic searches")
    p.add_argument("--cache", default=None,
                   help="append-only NDJSON result cache (last record wins)")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for scan")


def _config(args) -> Config:
    return Config(point_bound=args.bound_monic, global_bound=args.bound_global,
                  rep_bound=args.bound_rep, primes_max=args.primes_max,
                  effort=args.effort, fmt=args.fmt, cache=args.cache,
                  jobs=args.jobs, run_hasse=getattr(args, "hasse", True))


def _recover_seed(disc: int, search: int = 10**4):
    """(m, n) with 4m^3 - 27n^2 = disc, smallest odd n first."""
    for n in range(1, search + 1, 2):
        t = disc + 27 * n * n
        if t % 4:
            continue
        t //= 4
        m = iroot(abs(t), 3) * (1 if t >= 0 else -1)
        if m**3 != t:
            continue
        try:
            return make_seed(m, n)
        except ValidationError:
            continue
    raise ValidationError(f"no valid (m, n) with D = {disc} and n <= {search}")


def _seed_from_args(args):
    has_mn = args.m is not None or args.n is not None
    if has_mn == (args.disc is not None):
        raise ValidationError("give either --m and --n, or --disc")
    if has_mn:
        if args.m is None or args.n is None:
            raise ValidationError("--m and --n go together")
        return make_seed(args.m, args.n)
    return _recover_seed(args.disc)


# --- cache ---

def _cache_load(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                out[int(obj["seed"]["disc"])] = line
    except FileNotFoundError:
        pass
    return out


def _cache_append(path: str | None, line: str):
    if path:
        with open(path, "a") as fh:
            fh.write(line + "\n")


# --- subcommands ---

def _emit_report(rep, fmt: str, header: bool = False):
    if fmt == "json":
        print(report_to_json(rep))
    elif fmt == "csv":
        if header:
            print(report_csv_header())
        print(report_to_csv(rep))
    else:
        print(rep)


def cmd_analyze(args) -> int:
    cfg = _config(args)
    seed = _seed_from_args(args)
    cache = _cache_load(cfg.cache)
    if seed.D in cache:
        print(f"cache hit D = {seed.D}", file=sys.stderr)
        rep = report_from_json(cache[seed.D])
    else:
        rep = build_report(seed, rep_bound=cfg.rep_bound,
                           point_bound=cfg.point_bound,
                           global_bound=cfg.global_bound,
                           primes_max=cfg.primes_max, effort=cfg.effort,
                           run_hasse=cfg.run_hasse)
        _cache_append(cfg.cache, report_to_json(rep))
    _emit_report(rep, cfg.fmt, header=True)
    return 0


_FILTER_RX = re.compile(r"^\s*(\w+)\s*(>=|<=|==|!=|>|<)\s*(-?\d+)\s*$")
_FILTER_FIELDS = ("r3", "r3_monic_lb", "selmer_lambda", "selmer_lambda_dual",
                  "dim_quotient_lambda", "dim_mod_3", "rank_lb", "rank_ub",
                  "sha_lambda_rank_conditional")


def _parse_filter(text: str):
    m = _FILTER_RX.match(text)
    if not m or m.group(1) not in _FILTER_FIELDS:
        raise ValidationError(
            f"bad filter {text!r}; use <field> <op> <int> with field in "
            f"{_FILTER_FIELDS}")
    field, op, val = m.group(1), m.group(2), int(m.group(3))
    ops = {">=": lambda a: a >= val, "<=": lambda a: a <= val,
           "==": lambda a: a == val, "!=": lambda a: a != val,
           ">": lambda a: a > val, "<": lambda a: a < val}
    return lambda rep: ops[op](getattr(rep, field))


def _parse_range(text: str):
    m = re.match(r"^(-?\d+)\.\.(-?\d+)$", text)
    if not m:
        raise ValidationError(f"bad range {text!r}; use a..b")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValidationError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _scan_worker(payload):
    m, n, kwargs = payload
    rep = build_report(make_seed(m, n), **kwargs)
    return report_to_json(rep)


def cmd_scan(args) -> int:
    cfg = _config(args)
    m_range = _parse_range(args.m_range)
    n_range = _parse_range(args.n_range)
    filters = [_parse_filter(f) for f in args.filter or ()]
    cache = _cache_load(cfg.cache)
    kwargs = dict(rep_bound=cfg.rep_bound, point_bound=cfg.point_bound,
                  global_bound=cfg.global_bound, primes_max=cfg.primes_max,
                  effort=cfg.effort, run_hasse=cfg.run_hasse)

    seeds = list(seed_scan(m_range, n_range))
    todo, lines = [], {}
    for seed in seeds:
        if seed.D in cache:
            print(f"cache hit D = {seed.D}", file=sys.stderr)
            lines[(seed.m, seed.n)] = cache[seed.D]
        else:
            todo.append((seed.m, seed.n, kwargs))

    if cfg.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for (m, n, _), line in zip(todo, pool.map(_scan_worker, todo)):
                lines[(m, n)] = line
                _cache_append(cfg.cache, line)
    else:
        for payload in todo:
            line = _scan_worker(payload)
            lines[(payload[0], payload[1])] = line
            _cache_append(cfg.cache, line)

    first = True
    for seed in seeds:                      # normalized emission order
        line = lines[(seed.m, seed.n)]
        rep = report_from_json(line)
        if all(f(rep) for f in filters):
            if cfg.fmt == "csv":
                _emit_report(rep, "csv", header=first)
                first = False
            elif cfg.fmt == "text":
                _emit_report(rep, "text")
                print()
            else:
                print(line)
    return 0


def cmd_tables(args) -> int:
    which = args.which
    if which == "1":
        problems = tables.check_table_1()
        print("a,b,c,X,Y")
        for (a, b, c), (X, Y) in tables.TABLE_1:
            print(f"{a},{b},{c},{X},{Y}")
    elif which == "3":
        problems = tables.check_discriminants() + tables.check_table_3()
        print("m,n,D,r3,rank,sha3,conditional")
        s = tables.TABLE_3_STATS
        for m, n, D in tables.TABLE_3:
            print(f"{m},{n},{D},{s['r3']},{s['rank']},{s['sha3']},parity")
    elif which == "4":
        problems = tables.check_discriminants() + tables.check_table_4()
        print("m,n,D,r3,rank,sha3,conditional")
        s = tables.TABLE_4_STATS
        for m, n, D in tables.TABLE_4:
            print(f"{m},{n},{D},{s['r3']},{s['rank']},{s['sha3']},parity")
    else:
        problems = tables.check_forms()
        print("a,b,c,d")
        for row in tables.FORMS:
            print(",".join(str(c) for c in row))
    for p in problems:
        print(f"mismatch: {p}", file=sys.stderr)
    return 3 if problems else 0


def cmd_hasse(args) -> int:
    cfg = _config(args)
    seed = _seed_from_args(args)
    for F in enumerate_classes(seed.D):
        C = HomogeneousSpace(F, seed)
        v = hasse_verdict(C, rep_bound=cfg.rep_bound,
                          global_bound=cfg.global_bound,
                          primes_max=cfg.primes_max, effort=cfg.effort,
                          enumerated=True)
        print(f"{C}: {v}" + (f"  [{v.notes}]" if v.notes else ""))
    return 0


def cmd_forms(args) -> int:
    cfg = _config(args)
    seed = _seed_from_args(args)
    for F in enumerate_classes(seed.D):
        rep = monic_representative(F, cfg.rep_bound)
        print(f"{F}  {rep.status}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="descent3")
    sub = top.add_subparsers(dest="cmd", required=True)

    for name, fn, with_seed in (("analyze", cmd_analyze, True),
                                ("hasse", cmd_hasse, True),
                                ("forms", cmd_forms, True)):
        p = sub.add_parser(name)
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--disc", type=int)
        if name == "analyze":
            p.add_argument("--no-hasse", dest="hasse", action="store_false",
                           help="skip the per-class Hasse verdicts")
        _add_common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("scan")
    p.add_argument("--m", dest="m_range", required=True, metavar="A..B")
    p.add_argument("--n", dest="n_range", required=True, metavar="C..D")
    p.add_argument("--filter", action="append",
                   help="e.g. 'r3>=2'; may repeat, filters are conjoined")
    p.add_argument("--hasse", action="store_true", default=False,
                   help="also run Hasse verdicts per class (slow)")
    _add_common(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("tables")
    p.add_argument("--which", choices=("1", "3", "4", "forms"), required=True)
    p.set_defaults(fn=cmd_tables)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except InconsistencyError as e:
        print(f"inconsistency: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
