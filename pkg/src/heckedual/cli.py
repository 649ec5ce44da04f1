"""Command-line front end: build groups, compute basis tables, verify the
duality theorems, and manage the on-disk cache.

Exit codes: 0 success, 1 at least one verification failure (counterexamples
are in the report), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .coxeter import (
    CoxeterError,
    CoxeterMatrix,
    GroupContext,
    build,
)
from .hecke import ConsistencyError, HeckeAlgebra, HeckeElement
from .klbasis import KLBasis
from .laurent import LaurentPoly
from .projective import ProjectiveBasis

__all__ = ["JobConfig", "run", "main", "cache_store", "cache_load", "THEOREMS"]

log = logging.getLogger("heckedual")

# Bump to invalidate every existing cache file when a convention changes
# (generator ordering, basis normalization, serialization layout).
CONVENTION_VERSION = 1

CACHE_ENV_VAR = "HECKEDUAL_CACHE_DIR"

COMMANDS = ("basis-kl", "basis-proj", "mu-table", "verify", "info")

THEOREMS = (
    "self-duality",
    "longest",
    "cs-mult",
    "adjointness",
    "pairing",
    "self-dual-quotient",
    "tilting-duality",
)

DEFAULT_SEED = 0
ADJOINTNESS_PAIRS = 200


class UsageError(Exception):
    """Bad configuration detected after argument parsing."""


@dataclass
class JobConfig:
    """Everything one invocation needs; produced by the argument parser."""

    command: str
    group: str
    matrix: CoxeterMatrix
    max_length: Optional[int] = None
    theorems: tuple[str, ...] = ()
    out: Optional[str] = None
    fmt: str = "json"
    cache_dir: Optional[str] = None
    jobs: int = 1
    seed: int = DEFAULT_SEED


# ---------------------------------------------------------------------------
# rendering helpers


def _word_list(ctx: GroupContext, x: int) -> list[int]:
    return [s + 1 for s in ctx.word(x)]


def _json_bytes(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write_output(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# on-disk cache


def _cache_key(matrix: CoxeterMatrix, length_bound: Optional[int]) -> str:
    payload = f"{matrix.to_text()}|bound={length_bound}|v{CONVENTION_VERSION}"
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


def _cache_path(cache_dir: str, matrix: CoxeterMatrix, length_bound: Optional[int]) -> str:
    return os.path.join(cache_dir, f"heckedual-{_cache_key(matrix, length_bound)}.json")


def cache_store(cache_dir: str, kl: KLBasis,
                proj: Optional[ProjectiveBasis] = None) -> str:
    """Write the KL (and optionally projective) memo tables to the cache dir."""
    ctx = kl.ctx
    os.makedirs(cache_dir, exist_ok=True)
    payload = {
        "version": CONVENTION_VERSION,
        "matrix": ctx.matrix.to_text(),
        "length_bound": ctx.length_bound,
        "kl": {str(x): rows for x, rows in kl.snapshot().items()},
        "proj": {str(x): rows for x, rows in proj.snapshot().items()} if proj else None,
    }
    path = _cache_path(cache_dir, ctx.matrix, ctx.length_bound)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_json_bytes(payload))
    return path


def cache_load(cache_dir: str, kl: KLBasis,
               proj: Optional[ProjectiveBasis] = None) -> bool:
    """Refill memo tables from the cache dir.

    Returns True on a hit.  A stale key (different matrix, bound, or
    convention version) is a miss; a corrupt file is a miss with a warning,
    never silently reused.
    """
    ctx = kl.ctx
    path = _cache_path(cache_dir, ctx.matrix, ctx.length_bound)
    if not os.path.exists(path):
        return False
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        if (payload["version"] != CONVENTION_VERSION
                or payload["matrix"] != ctx.matrix.to_text()
                or payload["length_bound"] != ctx.length_bound):
            return False
        kl.restore({int(x): rows for x, rows in payload["kl"].items()})
        if proj is not None and payload.get("proj"):
            proj.restore({int(x): rows for x, rows in payload["proj"].items()})
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("corrupt cache file %s (%s); recomputing", path, exc)
        return False
    return True


# ---------------------------------------------------------------------------
# theorem checks.  Each returns {"theorem", "group", "checked", "failures"}.


def _check_self_duality(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    def probe(x):
        cx = kl.element(x)
        if algebra.dualize(cx) != cx:
            return {"x": _word_list(ctx, x), "reason": "not self-dual"}
        if cx.coeff(x) != LaurentPoly.one():
            return {"x": _word_list(ctx, x), "reason": "leading coordinate not 1"}
        for y, p in cx.items():
            if y != x and not p.in_strict_positive():
                return {"x": _word_list(ctx, x), "reason": "coordinate not in vZ[v]"}
        return None
    failures = [f for f in mapper(probe, ctx.elements()) if f is not None]
    return {"theorem": "self-duality", "group": label,
            "checked": ctx.size, "failures": failures}


def _check_longest(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    w0 = ctx.longest_element()
    got = kl.element(w0)
    top = ctx.length(w0)
    failures = []
    for x in ctx.elements():
        if got.coeff(x) != LaurentPoly.v(top - ctx.length(x)):
            failures.append({"x": _word_list(ctx, x)})
    return {"theorem": "longest", "group": label,
            "checked": ctx.size, "failures": failures}


def _check_cs_mult(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    pairs = [(s, x) for s in range(ctx.rank) for x in ctx.elements()]
    def probe(pair):
        s, x = pair
        try:
            kl.cs_times_c(s, x)
        except ConsistencyError:
            return {"s": s + 1, "x": _word_list(ctx, x)}
        return None
    failures = [f for f in mapper(probe, pairs) if f is not None]
    return {"theorem": "cs-mult", "group": label,
            "checked": len(pairs), "failures": failures}


def _random_sparse(algebra, rng) -> HeckeElement:
    ctx = algebra.ctx
    coords = {}
    for _ in range(rng.randint(1, 3)):
        x = rng.randrange(ctx.size)
        poly = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(2)})
        if poly:
            coords[x] = coords.get(x, LaurentPoly.zero()) + poly
    return algebra.element(coords)


def _check_adjointness(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    bcs = [algebra.b_twist(algebra.c_gen(s)) for s in range(ctx.rank)]
    failures = []
    for i in range(ADJOINTNESS_PAIRS):
        a = _random_sparse(algebra, rng)
        b = _random_sparse(algebra, rng)
        for s in range(ctx.rank):
            lhs = algebra.ext_form(algebra.mul_cs(a, s, "left"), b)
            rhs = algebra.ext_form(a, algebra.mul_cs(b, s, "left"))
            if lhs != rhs:
                failures.append({"pair": i, "s": s + 1, "form": "C_s"})
            lhs = algebra.ext_form(algebra.mul(bcs[s], a), b)
            rhs = algebra.ext_form(a, algebra.mul(bcs[s], b))
            if lhs != rhs:
                failures.append({"pair": i, "s": s + 1, "form": "b(C_s)"})
    return {"theorem": "adjointness", "group": label,
            "checked": ADJOINTNESS_PAIRS, "failures": failures}


def _check_pairing(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    cs = [kl.element(y) for y in ctx.elements()]
    def probe(x):
        px = proj.element(x)
        bad = []
        for y in ctx.elements():
            got = algebra.ext_form(px, cs[y])
            want = LaurentPoly.one() if x == y else LaurentPoly.zero()
            if got != want:
                bad.append({"x": _word_list(ctx, x), "y": _word_list(ctx, y)})
        return bad
    failures = [f for bads in mapper(probe, ctx.elements()) for f in bads]
    return {"theorem": "pairing", "group": label,
            "checked": ctx.size * ctx.size, "failures": failures}


def _check_self_dual_quotient(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    def probe(x):
        try:
            proj.self_dual_quotient(x)
        except ConsistencyError:
            return {"x": _word_list(ctx, x)}
        return None
    failures = [f for f in mapper(probe, ctx.elements()) if f is not None]
    return {"theorem": "self-dual-quotient", "group": label,
            "checked": ctx.size, "failures": failures}


def _check_tilting_duality(label, algebra, kl, proj, rng, mapper):
    ctx = algebra.ctx
    def probe(x):
        if not proj.tilting_duality(x):
            return {"x": _word_list(ctx, x)}
        return None
    failures = [f for f in mapper(probe, ctx.elements()) if f is not None]
    return {"theorem": "tilting-duality", "group": label,
            "checked": ctx.size, "failures": failures}


_CHECKS = {
    "self-duality": _check_self_duality,
    "longest": _check_longest,
    "cs-mult": _check_cs_mult,
    "adjointness": _check_adjointness,
    "pairing": _check_pairing,
    "self-dual-quotient": _check_self_dual_quotient,
    "tilting-duality": _check_tilting_duality,
}


# ---------------------------------------------------------------------------
# commands


def _table_rows_kl(ctx, kl):
    rows = []
    for x in ctx.elements():
        cx = kl.element(x)
        for y, p in cx.items():
            rows.append({"x": _word_list(ctx, x), "y": _word_list(ctx, y),
                         "poly": p.to_pairs()})
    return rows


def _table_rows_mu(ctx, kl):
    rows = []
    for x in ctx.elements():
        cx = kl.element(x)
        for y, p in cx.items():
            m = p.coeff(1)
            if m:
                rows.append({"x": _word_list(ctx, x), "y": _word_list(ctx, y),
                             "mu": m})
    return rows


def _table_rows_proj(ctx, proj):
    rows = []
    for x in ctx.elements():
        px = proj.element(x)
        for y, p in px.items():
            rows.append({"x": _word_list(ctx, x), "y": _word_list(ctx, y),
                         "poly": p.to_pairs()})
    return rows


def _render_table(label, kind, rows, fmt) -> str:
    if fmt == "json":
        return _json_bytes({"group": label, "kind": kind, "rows": rows})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    value_col = "mu" if kind == "mu" else "poly"
    writer.writerow(["x", "y", value_col])
    for row in rows:
        x = " ".join(str(i) for i in row["x"]) or "e"
        y = " ".join(str(i) for i in row["y"]) or "e"
        if value_col == "mu":
            value = str(row["mu"])
        else:
            value = str(LaurentPoly.from_pairs(row["poly"]))
        writer.writerow([x, y, value])
    return buf.getvalue()


def _render_report(results, fmt) -> str:
    if fmt == "json":
        return _json_bytes(results)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theorem", "group", "checked", "failures"])
    for r in results:
        writer.writerow([r["theorem"], r["group"], r["checked"],
                         json.dumps(r["failures"], sort_keys=True)])
    return buf.getvalue()


def run(config: JobConfig) -> int:
    """Execute one job; returns the process exit code."""
    try:
        ctx = build(config.matrix, length_bound=config.max_length)
    except CoxeterError as exc:
        raise UsageError(str(exc)) from exc
    label = config.group

    if config.command == "info":
        info = {
            "group": label,
            "rank": ctx.rank,
            "size": ctx.size,
            "complete": ctx.complete,
            "engine": ctx.engine_name,
            "length_bound": ctx.length_bound,
        }
        if ctx.complete:
            w0 = ctx.longest_element()
            info["longest_length"] = ctx.length(w0)
            info["longest_word"] = _word_list(ctx, w0)
        _write_output(_json_bytes(info), config.out)
        return 0

    needs_complete = config.command in ("verify", "basis-proj")
    if needs_complete and not ctx.complete:
        raise UsageError(
            f"{config.command} requires a complete finite group; "
            f"this context is truncated at length {ctx.length_bound}")

    algebra = HeckeAlgebra(ctx)
    kl = KLBasis(algebra)
    proj = ProjectiveBasis(kl) if ctx.complete else None

    cache_dir = config.cache_dir or os.environ.get(CACHE_ENV_VAR)
    if cache_dir:
        cache_load(cache_dir, kl, proj)

    if config.command == "basis-kl":
        rows = _table_rows_kl(ctx, kl)
        text = _render_table(label, "kl", rows, config.fmt)
    elif config.command == "mu-table":
        rows = _table_rows_mu(ctx, kl)
        text = _render_table(label, "mu", rows, config.fmt)
    elif config.command == "basis-proj":
        rows = _table_rows_proj(ctx, proj)
        text = _render_table(label, "proj", rows, config.fmt)
    else:  # verify
        if not config.theorems or "all" in config.theorems:
            names = list(THEOREMS)
        else:
            names = list(config.theorems)
        rng = random.Random(config.seed)
        # Fill the memo tables serially first; the per-element probes may then
        # run on a thread pool without racing the fill-once caches.
        for x in ctx.elements():
            kl.element(x)
            proj.element(x)
        results = []
        with ThreadPoolExecutor(max_workers=max(config.jobs, 1)) as pool:
            mapper = pool.map if config.jobs > 1 else map
            for name in names:
                results.append(_CHECKS[name](label, algebra, kl, proj, rng, mapper))
        text = _render_report(results, config.fmt)
        failed = sum(len(r["failures"]) for r in results)
        for r in results:
            status = "PASS" if not r["failures"] else "FAIL"
            good = max(r["checked"] - len(r["failures"]), 0)
            print(f"{status} {r['theorem']}: {good}/{r['checked']} checks",
                  file=sys.stderr)
        _write_output(text, config.out)
        if cache_dir:
            cache_store(cache_dir, kl, proj)
        return 1 if failed else 0

    _write_output(text, config.out)
    if cache_dir:
        cache_store(cache_dir, kl, proj)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckedual",
        description="Exact Hecke algebra computations and duality verification "
                    "over Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("basis-kl", "tabulate the self-dual basis coordinates h_{y,x}"),
        ("basis-proj", "tabulate the dual (projective) basis coordinates"),
        ("mu-table", "tabulate the nonzero mu(y, x) coefficients"),
        ("verify", "verify duality theorems and report counterexamples"),
        ("info", "print group facts (order, longest element, engine)"),
    ):
        p = sub.add_parser(name, help=blurb)
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--type", dest="type_spec", metavar="T",
                         help="type shorthand: A:n B:n D:n I2:m I2:inf H:3 H:4 F:4")
        grp.add_argument("--matrix-file", metavar="PATH",
                         help="Coxeter matrix file (rank line, then rows; 0 = infinity)")
        p.add_argument("--max-length", type=int, default=None, metavar="N",
                       help="truncate enumeration at this length (infinite groups)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="output file (default stdout)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv"),
                       default="json")
        p.add_argument("--cache-dir", default=None, metavar="DIR",
                       help=f"cache directory (or set ${CACHE_ENV_VAR})")
        p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="verify elements concurrently")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for the randomized adjointness checks")
        if name == "verify":
            p.add_argument("--theorems", default="all", metavar="LIST",
                           help="comma-separated: " + ", ".join(THEOREMS) + ", all")
    return parser


def _config_from_args(args) -> JobConfig:
    if args.type_spec:
        matrix = CoxeterMatrix.from_shorthand(args.type_spec)
        label = args.type_spec.strip()
    else:
        matrix = CoxeterMatrix.from_file(args.matrix_file)
        label = f"matrix:{_cache_key(matrix, None)[:12]}"
    theorems = ()
    if getattr(args, "theorems", None):
        theorems = tuple(t.strip() for t in args.theorems.split(",") if t.strip())
        unknown = [t for t in theorems if t != "all" and t not in THEOREMS]
        if unknown:
            raise UsageError(f"unknown theorems: {', '.join(unknown)}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return JobConfig(
        command=args.command,
        group=label,
        matrix=matrix,
        max_length=args.max_length,
        theorems=theorems,
        out=args.out,
        fmt=args.fmt,
        cache_dir=args.cache_dir,
        jobs=args.jobs,
        seed=args.seed,
    )


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
