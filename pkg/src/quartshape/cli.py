"""Command line: enumerate, sieve, shapes, weyl, lfun, sample-haar, selftest."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
import time
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__, kernels

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COVERAGE = 3

log = logging.getLogger("quartshape")

ORBIT_COLUMNS = ["a11", "a22", "a33", "a12", "a13", "a23", "b11", "b22", "b33", "b12", "b13", "b23",
                 "disc", "j", "stabilizer", "content", "reducible", "maximal", "galois", "undecided"]
SHAPE_COLUMNS = ORBIT_COLUMNS[:12] + ["disc", "j", "stabilizer", "maximal", "galois",
                                      "x", "y", "g11", "g22", "g33", "g12", "g13", "g23",
                                      "x12", "x13", "x23", "y1", "y2"]


class CliError(Exception):
    def __init__(self, msg, code=EXIT_VALIDATION):
        super().__init__(msg)
        self.code = code


# ---------------------------------------------------------------- config and manifests

def read_config(path: Optional[str]) -> Dict[str, str]:
    """key=value lines; '#' starts a comment; keys use dashes or underscores."""
    if not path:
        return {}
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def merged_options(args: argparse.Namespace, defaults: Dict[str, object]) -> Dict[str, object]:
    """defaults < config file < flags given on the command line."""
    cfg = read_config(getattr(args, "config", None))
    opts = dict(defaults)
    for k, v in cfg.items():
        if k not in defaults:
            raise CliError(f"unknown config key {k!r}")
        opts[k] = v
    for k in defaults:
        v = getattr(args, k, None)
        if v is not None:
            opts[k] = v
    return opts


def write_manifest(out_path: str, command: str, opts: Dict[str, object], inputs: Sequence[str], started: float,
                   extra: Optional[dict] = None):
    manifest = {
        "command": command,
        "config": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(opts.items())},
        "inputs": list(inputs),
        "output": out_path,
        "version": __version__,
        "kernel_backend": kernels.BACKEND,
        "wall_time_s": round(time.time() - started, 3),
    }
    if extra:
        manifest.update(extra)
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _writer(path):
    fh = open(path, "w", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _read_csv(path, required: Sequence[str]):
    if not os.path.exists(path):
        raise CliError(f"missing input file {path}")
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
        fields = rows[0].keys() if rows else []
    missing = [c for c in required if rows and c not in fields]
    if missing:
        raise CliError(f"{path}: missing columns {', '.join(missing)}")
    return rows


def _coverage(path) -> int:
    mpath = path + ".manifest.json"
    if not os.path.exists(mpath):
        raise CliError(f"{path} has no manifest; cannot establish its discriminant coverage", EXIT_COVERAGE)
    with open(mpath) as fh:
        m = json.load(fh)
    return int(m.get("coverage", m["config"].get("disc_bound")))


# ---------------------------------------------------------------- enumerate

def cmd_enumerate(args) -> int:
    from .orbits import EnumerationConfig, enumerate_orbits

    started = time.time()
    opts = merged_options(args, {"disc_bound": None, "box_scale": "2", "plateau_budget": 4096,
                                 "descent_steps": 100000, "out": None, "threads": 1})
    if opts["disc_bound"] is None or opts["out"] is None:
        raise CliError("--disc-bound and --out are required")
    X = int(opts["disc_bound"])
    if X < 1:
        raise CliError("--disc-bound must be at least 1")
    c = Fraction(str(opts["box_scale"]))
    if c <= 0:
        raise CliError("--box-scale must be positive")
    cfg = EnumerationConfig(X, c, int(opts["plateau_budget"]), int(opts["descent_steps"]))
    res = enumerate_orbits(cfg, threads=int(opts["threads"]))
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(ORBIT_COLUMNS)
        for r in res.records:
            w.writerow([_fmt(v) for v in r.representative.coeffs] +
                       [_fmt(r.disc), r.j, r.stabilizer_order, r.content, _fmt(r.flags.reducible),
                        _fmt(r.maximal), r.flags.galois_hint, _fmt(r.undecided)])
    opts["box_scale"] = str(c)
    write_manifest(opts["out"], "enumerate", opts, [], started,
                   {"coverage": X, "half_width": cfg.half_width, "norm_bound": cfg.norm_bound,
                    "orbits": len(res.records), "scan_points": res.candidates, "visited": res.visited,
                    "undecided": res.undecided, "merged": res.merged})
    print(f"{len(res.records)} orbits with 0 < |disc| <= {X} (H = {cfg.half_width}); "
          f"undecided {res.undecided}, merged {res.merged}")
    if res.undecided:
        print(f"warning: {res.undecided} orbit decisions exceeded the search limits", file=sys.stderr)
        return EXIT_COVERAGE
    return EXIT_OK


def _load_pairs(path):
    from .forms import Pair

    rows = _read_csv(path, ORBIT_COLUMNS[:14])
    return [(Pair.from_coeffs([int(r[c]) for c in ORBIT_COLUMNS[:12]]), r) for r in rows]


# ---------------------------------------------------------------- sieve

def sieve_report(pairs, X: int):
    """Per-q counts N(W_q, X), the Moebius total and the direct maximal count."""
    from .arith import maximality, relevant_primes, superring_oracle
    from .forms import disc_pair
    from .rings import quartic_ring

    nonmax_sets = []
    direct = 0
    for x, _row in pairs:
        d = disc_pair(x)
        if abs(d) > X:
            continue
        verdict = maximality(x)
        bad = tuple(sorted(p for p, v in verdict.per_prime.items() if v != "maximal"))
        nonmax_sets.append(bad)
        # direct count through the ring-side oracle
        q = quartic_ring(x)
        if not any(superring_oracle(q, p) for p in relevant_primes(d)):
            direct += 1
    counts: Dict[int, int] = {1: len(nonmax_sets)}
    for s in nonmax_sets:
        for k in range(1, len(s) + 1):
            for sub in combinations(s, k):
                q = math.prod(sub)
                counts[q] = counts.get(q, 0) + 1
    mu = {q: (-1) ** len([p for p in _primes_of(q)]) for q in counts}
    total = sum(mu[q] * counts[q] for q in counts)
    return counts, mu, total, direct


def _primes_of(q):
    from sympy import factorint

    return list(factorint(q))


def cmd_sieve(args) -> int:
    started = time.time()
    opts = merged_options(args, {"table": None, "disc_bound": None, "out": None})
    if not opts["table"] or not opts["out"]:
        raise CliError("--table and --out are required")
    cov = _coverage(opts["table"])
    X = int(opts["disc_bound"] or cov)
    if X > cov:
        raise CliError(f"--disc-bound {X} exceeds the table coverage {cov}", EXIT_COVERAGE)
    counts, mu, total, direct = sieve_report(_load_pairs(opts["table"]), X)
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(["q", "mu", "N_Wq", "scaled"])
        for q in sorted(counts):
            scaled = counts[q] * q * q / (X * math.log(X)) if X > 1 else 0.0
            w.writerow([q, mu[q], counts[q], repr(scaled)])
        w.writerow(["inclusion_exclusion", "", total, ""])
        w.writerow(["direct_maximal", "", direct, ""])
    write_manifest(opts["out"], "sieve", opts, [opts["table"]], started,
                   {"inclusion_exclusion": total, "direct_maximal": direct})
    print(f"inclusion-exclusion {total}, direct maximal count {direct}")
    return EXIT_OK if total == direct else EXIT_VALIDATION


# ---------------------------------------------------------------- shapes

def shape_row(coeffs, prec: int = 128):
    """Cubic (x, y), quartic reduced Gram and canonical coordinates for one orbit."""
    from .forms import Pair, resolvent_cubic
    from .rings import cubic_ring, quartic_ring
    from .shapes import iwasawa_coords, shape_of

    x = Pair.from_coeffs(coeffs)
    s4 = shape_of(quartic_ring(x), prec)
    s3 = shape_of(cubic_ring(resolvent_cubic(x)), prec)
    xy = iwasawa_coords(s3)
    g = [float(v) for v in s4.entries()]
    return list(xy) + g + [float(v) for v in iwasawa_coords(s4)]


def _shape_job(arg):
    coeffs, prec = arg
    return shape_row(coeffs, prec)


def cmd_shapes(args) -> int:
    from .orbits import _pmap

    started = time.time()
    opts = merged_options(args, {"table": None, "out": None, "prec": 128, "select": "all", "threads": 1})
    if not opts["table"] or not opts["out"]:
        raise CliError("--table and --out are required")
    rows = _read_csv(opts["table"], ORBIT_COLUMNS)
    sel = opts["select"]
    if sel not in ("all", "maximal-s4", "maximal-irreducible"):
        raise CliError("--select must be all, maximal-s4 or maximal-irreducible")
    keep = []
    for r in rows:
        if sel == "maximal-s4" and not (r["maximal"] == "1" and r["galois"] == "S4"):
            continue
        if sel == "maximal-irreducible" and not (r["maximal"] == "1" and r["reducible"] == "0"):
            continue
        keep.append(r)
    jobs = [(tuple(int(r[c]) for c in ORBIT_COLUMNS[:12]), int(opts["prec"])) for r in keep]
    shapes = _pmap(_shape_job, jobs, int(opts["threads"]), chunk=16)
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(SHAPE_COLUMNS)
        for r, s in zip(keep, shapes):
            w.writerow([r[c] for c in ORBIT_COLUMNS[:12]] + [r["disc"], r["j"], r["stabilizer"], r["maximal"],
                                                             r["galois"]] + [repr(float(v)) for v in s])
    write_manifest(opts["out"], "shapes", opts, [opts["table"]], started, {"coverage": _coverage(opts["table"])})
    print(f"{len(keep)} shape rows written")
    return EXIT_OK


def load_points(path):
    from .spectral import ShapePoint

    rows = _read_csv(path, SHAPE_COLUMNS)
    pts = []
    for r in rows:
        pts.append(ShapePoint(int(r["disc"]), int(r["j"]),
                              tuple(float(r[c]) for c in ("x12", "x13", "x23", "y1", "y2")),
                              (float(r["x"]), float(r["y"])), int(r["stabilizer"])))
    return pts, rows


# ---------------------------------------------------------------- test-function selection

def _functions(opts):
    from .spectral import MaassFormGL2, constant_function, default_pairs, maass_function

    if opts["functions"] == "constant":
        return [(constant_function(3), constant_function(2))]
    if opts["functions"] != "default":
        raise CliError("--functions must be default or constant")
    if opts["seed"] is None:
        raise CliError("randomized command: --seed is required")
    pairs = default_pairs(int(opts["samples"]), int(opts["seed"]))
    if opts.get("maass"):
        pairs.append((constant_function(3), maass_function(MaassFormGL2.from_file(opts["maass"]))))
    return pairs


# ---------------------------------------------------------------- weyl

def cmd_weyl(args) -> int:
    from .spectral import SmoothingWindow, ks_distance_y2, weyl_sum

    started = time.time()
    opts = merged_options(args, {"shapes": None, "out": None, "xs": "1000,2000,4000,8000,16000",
                                 "window": "0.125,1", "functions": "default", "seed": None,
                                 "samples": 200000, "signature": "all", "maass": None, "ks_out": None,
                                 "threads": 1})
    if not opts["shapes"] or not opts["out"]:
        raise CliError("--shapes and --out are required")
    xs = [int(v) for v in str(opts["xs"]).split(",")]
    cov = _coverage(opts["shapes"])
    if max(xs) > cov:
        raise CliError(f"X = {max(xs)} exceeds the table coverage {cov}", EXIT_COVERAGE)
    u1, u2 = (float(v) for v in str(opts["window"]).split(","))
    psi = SmoothingWindow(u1, u2)
    pts, rows = load_points(opts["shapes"])
    s4 = [p for p, r in zip(pts, rows) if r["maximal"] == "1" and r["galois"] == "S4"]
    sigs = [None] if opts["signature"] == "all" else [int(opts["signature"])]
    pairs = _functions(opts)
    seed = opts["seed"]
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(["X", "i", "N", "S", "S_over_N", "ratio_to_first", "test_function", "seed"])
        for sig in sigs:
            for f3, f2 in pairs:
                first = None
                for X in xs:
                    res = weyl_sum([p for p in s4 if abs(p.disc) <= X], f3, f2, psi, X, sig)
                    first = res.ratio if first is None else first
                    rel = abs(res.ratio / first) if first else float("nan")
                    w.writerow([X, "all" if sig is None else sig, repr(res.N), repr(res.S), repr(res.ratio),
                                repr(rel), f"{f3.id}*{f2.id}", "" if seed is None else seed])
    if opts["ks_out"]:
        fh, w = _writer(opts["ks_out"])
        with fh:
            w.writerow(["X", "count", "ks_cubic_y"])
            for X in xs:
                ys = [p.cubic[1] for p in s4 if abs(p.disc) <= X]
                w.writerow([X, len(ys), repr(ks_distance_y2(ys))])
    write_manifest(opts["out"], "weyl", opts, [opts["shapes"]], started)
    return EXIT_OK


# ---------------------------------------------------------------- lfun

def cmd_lfun(args) -> int:
    from .arith import phi_q
    from .forms import Pair
    from .spectral import lfun_partial

    started = time.time()
    opts = merged_options(args, {"shapes": None, "out": None, "j": None, "q": "1", "s": "2", "M": None,
                                 "functions": "default", "seed": None, "samples": 200000, "maass": None})
    if not opts["shapes"] or not opts["out"] or opts["j"] is None:
        raise CliError("--shapes, --out and --j are required")
    cov = _coverage(opts["shapes"])
    M = int(opts["M"] or cov)
    if M > cov:
        raise CliError(f"truncation M = {M} exceeds the table coverage {cov}", EXIT_COVERAGE)
    j = int(opts["j"])
    s = complex(str(opts["s"]).replace("i", "j"))
    qs = [int(v) for v in str(opts["q"]).split(",")]
    pts, rows = load_points(opts["shapes"])
    keyed = {id(p): Pair.from_coeffs([int(r[c]) for c in ORBIT_COLUMNS[:12]]) for p, r in zip(pts, rows)}
    pairs = _functions(opts)
    results = {}
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(["j", "q", "s", "M", "re", "im", "tail_bound", "terms", "test_function"])
        for f3, f2 in pairs:
            for q in qs:
                res = lfun_partial(pts, j, q, f3, f2, s, M, cov, phi_q=lambda p, q=q: phi_q(keyed[id(p)], q))
                results[(f3.id, f2.id, q)] = res
                w.writerow([j, q, str(s), M, repr(res.value.real), repr(res.value.imag), repr(res.tail_bound),
                            res.terms, f"{f3.id}*{f2.id}"])
    write_manifest(opts["out"], "lfun", opts, [opts["shapes"]], started)
    # termwise domination only applies to nonnegative observables at real s
    ok = True
    if s.imag == 0 and opts["functions"] == "constant":
        for (a, b, q), res in results.items():
            base = results.get((a, b, 1))
            if q != 1 and base is not None and abs(res.value) > abs(base.value) + 1e-12:
                ok = False
    return EXIT_OK if ok else EXIT_VALIDATION


# ---------------------------------------------------------------- sample-haar

def cmd_sample_haar(args) -> int:
    from .spectral import haar_coords, in_siegel_set

    started = time.time()
    opts = merged_options(args, {"rank": None, "count": None, "seed": None, "out": None})
    if opts["seed"] is None:
        raise CliError("randomized command: --seed is required")
    if opts["rank"] is None or opts["count"] is None or not opts["out"]:
        raise CliError("--rank, --count and --out are required")
    rank, count = int(opts["rank"]), int(opts["count"])
    c = haar_coords(rank, count, int(opts["seed"]))
    fh, w = _writer(opts["out"])
    with fh:
        w.writerow(["x", "y"] if rank == 2 else ["x12", "x13", "x23", "y1", "y2"])
        for row in c:
            w.writerow([repr(float(v)) for v in row])
    ycol = c[:, -1] if rank == 2 else c[:, 3]
    p = float(np.mean(ycol > 2))
    extra = {"p_y_gt_2": p, "stderr": math.sqrt(p * (1 - p) / count), "in_siegel_set": bool(in_siegel_set(c).all())}
    write_manifest(opts["out"], "sample-haar", opts, [], started, extra)
    print(json.dumps(extra))
    return EXIT_OK if extra["in_siegel_set"] else EXIT_VALIDATION


# ---------------------------------------------------------------- selftest

def cmd_acceptance(args) -> int:
    """All acceptance checks against an orbit table covering |disc| <= 16000."""
    from . import acceptance
    from .oracles.hunter import smallest_totally_real_s4

    if not args.table:
        raise CliError("--acceptance needs --table (an orbit table from `enumerate --disc-bound 16000`)")
    cov = _coverage(args.table)
    if cov < max(acceptance.WEYL_XS):
        raise CliError(f"table coverage {cov} is below {max(acceptance.WEYL_XS)}", EXIT_COVERAGE)
    corpus = acceptance.corpus_from_rows(_read_csv(args.table, ORBIT_COLUMNS))
    only = [int(v) for v in args.only.split(",")] if args.only else None
    outcomes = acceptance.run_all(corpus, smallest_totally_real_s4, only)
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_VALIDATION


def cmd_selftest(args) -> int:
    import random

    if args.acceptance:
        return cmd_acceptance(args)

    from .arith import nonmaximal_type, relevant_primes, superring_oracle
    from .forms import GroupElement, Pair, act, disc_pair
    from .rings import cubic_ring, quartic_ring
    from .forms import resolvent_cubic
    from .spectral import gl2_generate, gl2_hecke_violations, hecke_terms, kbessel

    rng = random.Random(int(args.seed or 0))
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    ok = True
    for _ in range(200):
        x = Pair.from_coeffs([rng.randint(-3, 3) for _ in range(12)])
        g3 = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        g2 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        try:
            g = GroupElement(g3, g2)
        except ValueError:
            continue
        ok &= disc_pair(act(g, x)) == g.det3() ** 8 * g.det2() ** 6 * disc_pair(x)
    check("discriminant equivariance", ok)
    ok = True
    for _ in range(50):
        x = Pair.from_coeffs([rng.randint(-2, 2) for _ in range(12)])
        if disc_pair(x) == 0:
            continue
        q, c = quartic_ring(x), cubic_ring(resolvent_cubic(x))
        ok &= q.is_associative() and c.is_associative() and q.disc() == disc_pair(x) == c.disc()
        for p in relevant_primes(disc_pair(x)):
            ok &= (nonmaximal_type(x, p) is not None) == superring_oracle(q, p)
    check("ring tables and maximality cross-check", ok)
    check("K_1/2 closed form", abs(kbessel(0.5, 5.0, imaginary=False) / (math.sqrt(math.pi / 10) * math.exp(-5)) - 1) < 1e-10)
    a = gl2_generate({p: rng.randint(-3, 3) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)}, 50)
    check("GL2 Hecke relations", not gl2_hecke_violations(a, 50))
    check("T_p summand count", all(len(hecke_terms(p)) == p * p + p + 1 for p in (2, 3, 5, 7)))
    print(f"kernel backend: {kernels.BACKEND}")
    return EXIT_OK if not failures else EXIT_VALIDATION


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quartshape", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=True):
        sp.add_argument("--config", help="key=value file; flags override it")
        if threads:
            sp.add_argument("--threads", type=int)
        return sp

    e = common(sub.add_parser("enumerate", help="orbit table for 0 < |disc| <= X"))
    e.add_argument("--disc-bound", type=int)
    e.add_argument("--box-scale")
    e.add_argument("--plateau-budget", type=int)
    e.add_argument("--descent-steps", type=int)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    s = common(sub.add_parser("sieve", help="inclusion-exclusion over squarefree q"))
    s.add_argument("--table")
    s.add_argument("--disc-bound", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sieve)

    sh = common(sub.add_parser("shapes", help="shape table for an orbit table"))
    sh.add_argument("--table")
    sh.add_argument("--out")
    sh.add_argument("--prec", type=int)
    sh.add_argument("--select")
    sh.set_defaults(func=cmd_shapes)

    w = common(sub.add_parser("weyl", help="smoothed Weyl sums over maximal S4 orbits"))
    w.add_argument("--shapes")
    w.add_argument("--out")
    w.add_argument("--ks-out")
    w.add_argument("--xs", help="comma-separated X values")
    w.add_argument("--window", help="u1,u2 support of the smoothing window")
    w.add_argument("--functions", help="default or constant")
    w.add_argument("--maass", help="coefficient file for an extra GL2 test function")
    w.add_argument("--seed", type=int)
    w.add_argument("--samples", type=int)
    w.add_argument("--signature")
    w.set_defaults(func=cmd_weyl)

    lf = common(sub.add_parser("lfun", help="partial sums of the twisted Shintani series"))
    lf.add_argument("--shapes")
    lf.add_argument("--out")
    lf.add_argument("--j", type=int)
    lf.add_argument("--q", help="comma-separated squarefree q values")
    lf.add_argument("--s")
    lf.add_argument("--M", type=int)
    lf.add_argument("--functions")
    lf.add_argument("--maass")
    lf.add_argument("--seed", type=int)
    lf.add_argument("--samples", type=int)
    lf.set_defaults(func=cmd_lfun)

    hs = common(sub.add_parser("sample-haar", help="Haar samples on the shape space"))
    hs.add_argument("--rank", type=int)
    hs.add_argument("--count", type=int)
    hs.add_argument("--seed", type=int)
    hs.add_argument("--out")
    hs.set_defaults(func=cmd_sample_haar)

    st = common(sub.add_parser("selftest", help="quick internal consistency checks"))
    st.add_argument("--seed", type=int)
    st.add_argument("--acceptance", action="store_true", help="run the full acceptance suite")
    st.add_argument("--table", help="orbit table for --acceptance")
    st.add_argument("--only", help="comma-separated criterion numbers")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
