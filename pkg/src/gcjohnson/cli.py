"""gcjohnson command line.

    gcjohnson coker --weight 3 --format paper
    gcjohnson cohomology --stable --weight 6 --loops =2
    gcjohnson validate --max-weight 4

Exit codes: 0 success, 1 validation failure, 2 bad job spec, 3 refused as too long.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cache import Cache
from .partitions import MultiplicityVector, Partition, branch_gl_to_sp, dim_sp, partitions_of

EXIT_OK, EXIT_VALIDATION, EXIT_SPEC, EXIT_REFUSED = 0, 1, 2, 3
LONG_SECONDS = 600.0
FAMILIES = ("plain", "tadpole", "extended", "hairy")


class SpecError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    family: str = "plain"
    g: Optional[int] = None
    stable: bool = False
    weights: Tuple[int, ...] = ()
    loops: str = "all"
    hairs: Optional[int] = None
    output_format: str = "paper"
    cache_dir: Optional[str] = None
    threads: int = 1
    primes: int = 2
    extra: Dict[str, object] = field(default_factory=dict)

    def provenance(self) -> dict:
        d = asdict(self)
        d["weights"] = list(self.weights)
        # thread budget and cache location do not change results
        d.pop("threads")
        d.pop("cache_dir")
        return d


# --- parsing ------------------------------------------------------------------------------------


def parse_weights(text: str) -> Tuple[int, ...]:
    text = text.strip()
    for sep in ("..", "-", ":"):
        if sep in text[1:]:
            a, b = text.split(sep, 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise SpecError(f"empty weight range {text}")
            return tuple(range(lo, hi + 1))
    return tuple(int(x) for x in text.split(","))


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "paper"), default="paper")
    common.add_argument("--cache-dir", default=None, help="cache root (default $GC_CACHE_DIR, else no disk cache)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--primes", type=int, default=2, help="primes used to certify modular ranks")
    common.add_argument("--allow-long", action="store_true", help="run jobs estimated to exceed the time budget")

    p = argparse.ArgumentParser(prog="gcjohnson", description="Graph complexes and the Johnson cokernel.")
    p.add_argument("--version", action="version", version=f"gcjohnson {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(q, weight_required=True):
        q.add_argument("--family", choices=FAMILIES, default="plain")
        q.add_argument("--g", type=int, default=None, help="genus (explicit Sp(2g))")
        q.add_argument("--stable", action="store_true", help="stable Sp multiplicities (plain family)")
        q.add_argument("--weight", required=weight_required, default=None)
        q.add_argument("--loops", default="all", help="=l, <=l, >=l or all")
        q.add_argument("--hairs", type=int, default=None, help="number of hairs (hairy family)")

    graph_args(sub.add_parser("basis", parents=[common], help="dimensions of basis slices"), False)
    graph_args(sub.add_parser("cohomology", parents=[common], help="cohomology of a slice"), False)
    q = sub.add_parser("chi", parents=[common], help="top-weight Euler characteristics chi_{h,lam}")
    q.add_argument("--h", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q = sub.add_parser("branch", parents=[common], help="stable GL -> Sp branching")
    q.add_argument("--partition", required=True)
    q = sub.add_parser("coker", parents=[common], help="graded Johnson cokernel")
    q.add_argument("--weight", required=True)
    q.add_argument("--method", choices=("formula", "spectral", "both"), default="formula")
    q = sub.add_parser("t", parents=[common], help="graded t_{(g),1} and variants")
    q.add_argument("--weight", required=True)
    q.add_argument("--variant", choices=("g1", "tp", "closed"), default="g1")
    q = sub.add_parser("es", parents=[common], help="Enomoto-Satoh ladder dimensions at explicit genus")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--weight", required=True)
    q.add_argument("--max-loop", type=int, default=2)
    q = sub.add_parser("validate", parents=[common], help="run the invariant suite")
    q.add_argument("--max-weight", type=int, default=4)
    return p


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    if ns.threads < 1:
        raise SpecError("--threads must be positive")
    if ns.primes < 1:
        raise SpecError("--primes must be positive")
    weights: Tuple[int, ...] = ()
    if getattr(ns, "weight", None) is not None:
        try:
            weights = parse_weights(str(ns.weight))
        except ValueError as exc:
            raise SpecError(f"bad --weight {ns.weight!r}: {exc}") from None
    spec = JobSpec(command=ns.command, weights=weights, output_format=ns.output_format,
                   cache_dir=ns.cache_dir, threads=ns.threads, primes=ns.primes)
    for name in ("family", "g", "stable", "loops", "hairs"):
        if hasattr(ns, name):
            setattr(spec, name, getattr(ns, name))
    for name in ("h", "n", "partition", "method", "variant", "max_loop", "max_weight"):
        if hasattr(ns, name):
            spec.extra[name] = getattr(ns, name)
    validate_spec(spec)
    return spec


def validate_spec(spec: JobSpec) -> None:
    from .differentials import parse_loop_spec
    if spec.command in ("basis", "cohomology"):
        if spec.family == "hairy":
            if spec.hairs is None or spec.hairs < 0:
                raise SpecError("hairy jobs need --hairs r >= 0")
            op, l = _loop_of(spec)
            if op != "=":
                raise SpecError("hairy jobs need a single loop order, e.g. --loops =1")
            spec.weights = (2 * l + spec.hairs - 2,)
            return
        if not spec.weights:
            raise SpecError("--weight is required")
        if spec.stable == (spec.g is not None):
            raise SpecError("give exactly one of --g and --stable")
        if spec.stable and (spec.family != "plain" or spec.command == "basis"):
            raise SpecError("--stable applies to cohomology of the plain family")
        if spec.g is not None and spec.g < 1:
            raise SpecError("--g must be positive")
        try:
            op, l = parse_loop_spec(spec.loops, 0)
        except ValueError:
            raise SpecError(f"bad --loops {spec.loops!r}") from None
        if spec.stable and op != "=":
            raise SpecError("stable cohomology is computed loop order by loop order (--loops =l)")
    if any(W < 0 for W in spec.weights):
        raise SpecError("weights are nonnegative")
    if spec.command == "coker" and any(W < 2 for W in spec.weights):
        raise SpecError("the cokernel is defined from weight 2 on")
    if spec.command == "t" and any(W < 1 for W in spec.weights):
        raise SpecError("t is graded by weights >= 1")
    if spec.command == "es" and (spec.g < 1 or len(spec.weights) != 1):
        raise SpecError("es needs --g >= 1 and a single weight")
    if spec.command == "chi":
        h, n = spec.extra["h"], spec.extra["n"]
        if h < 0 or n < 0 or 2 * h - 2 + n <= 0:
            raise SpecError("chi needs 2h - 2 + n > 0")
    if spec.command == "branch":
        try:
            spec.extra["partition"] = list(Partition.parse(str(spec.extra["partition"])))
        except ValueError as exc:
            raise SpecError(str(exc)) from None


def _loop_of(spec: JobSpec) -> Tuple[str, int]:
    from .differentials import parse_loop_spec
    try:
        return parse_loop_spec(spec.loops, 0)
    except ValueError:
        raise SpecError(f"bad --loops {spec.loops!r}") from None


# --- cost estimates -------------------------------------------------------------------------------


def _stable_seconds(W: int) -> float:
    # hairy pipeline; roughly tenfold per weight from about 3 s at weight 6
    return 3.0 * 10.0 ** (W - 6)


def _formula_seconds(W: int) -> float:
    return 6.0 * 8.0 ** (W - 8)


def _explicit_seconds(g: int, W: int) -> float:
    # patterns/weights times a per-block cost growing factorially with decorations
    return 1e-4 * (2 * g) ** min(W + 2, 2 * g) * math.factorial(W + 2) / 6


def estimate_seconds(spec: JobSpec, cache: Cache) -> float:
    c = spec.command
    total = 0.0
    for W in spec.weights:
        if c == "coker" and spec.extra.get("method") == "formula" or c == "t":
            total += 0 if cache.contains("coker_formula", {"W": W}) else _formula_seconds(W)
        elif c == "coker":
            total += _stable_seconds(W) + (_formula_seconds(W) if spec.extra.get("method") == "both" else 0)
        elif c == "cohomology" and spec.stable:
            total += 0 if cache.contains("stable", {"W": W, "loop": _loop_of(spec)[1]}) else _stable_seconds(W)
        elif c == "cohomology" and spec.family == "hairy":
            total += 0 if cache.contains("hairy", {"loop": _loop_of(spec)[1], "r": spec.hairs}) else _stable_seconds(W)
        elif c in ("cohomology", "basis", "es") and spec.g is not None:
            total += _explicit_seconds(spec.g, W)
    if c == "chi":
        n, h = spec.extra["n"], spec.extra["h"]
        total += _formula_seconds(2 * h + n - 2)
    if c == "validate":
        total += 60.0 * 4 ** (spec.extra["max_weight"] - 5)
    return total


# --- workers ---------------------------------------------------------------------------------------


def _par_map(fn: Callable, items: Sequence, threads: int) -> List:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _stable_job(args):
    from .equivariant import stable_graded_cohomology
    W, loop = args
    return {str(k): mv.to_json() for k, mv in stable_graded_cohomology(W, loop).items()}


def _load_degrees(body) -> Dict[int, MultiplicityVector]:
    return {int(k): MultiplicityVector.from_json(v) for k, v in sorted(body.items(), key=lambda t: int(t[0]))}


def stable_data(cache: Cache, pairs: Sequence[Tuple[int, int]], threads: int) -> Dict[Tuple[int, int], Dict[int, MultiplicityVector]]:
    out = {}
    todo = []
    for W, l in pairs:
        body = cache.get("stable", {"W": W, "loop": l})
        if body is None:
            todo.append((W, l))
        else:
            out[(W, l)] = body
    for key, body in zip(todo, _par_map(_stable_job, todo, threads)):
        cache.put("stable", {"W": key[0], "loop": key[1]}, body)
        out[key] = body
    result = {}
    for W, l in pairs:
        cache.fetch("stable", {"W": W, "loop": l}, lambda: out[(W, l)])
        result[(W, l)] = _load_degrees(json.loads(json.dumps(out[(W, l)])))
    return result


# --- commands --------------------------------------------------------------------------------------


Row = Dict[str, object]


def _mv_rows(W, l, k, mv: MultiplicityVector) -> List[Row]:
    return [{"W": W, "l": l, "k": k, "partition": list(p), "mult": m} for p, m in mv.items()]


def cmd_basis(spec: JobSpec, cache: Cache):
    from .differentials import max_loop, parse_loop_spec
    from .graphs import Alphabet, enumerate_basis, grading
    from .johnson import _patterns
    rows: List[Row] = []
    if spec.family == "hairy":
        op, l = _loop_of(spec)
        A = Alphabet.hairy(spec.hairs)
        W = spec.weights[0]
        counts: Dict[int, int] = {}
        if not ((l == 0 and spec.hairs <= 2) or (l == 1 and spec.hairs == 0)):
            for G in enumerate_basis("hairy", A, W, l):
                k = grading(G, A).k
                counts[k] = counts.get(k, 0) + 1
        rows = [{"W": W, "l": l, "k": k, "dim": d} for k, d in sorted(counts.items())]
        return rows, None
    A = Alphabet.extended(spec.g) if spec.family == "extended" else Alphabet.symplectic(spec.g)
    for W in spec.weights:
        op, l0 = parse_loop_spec(spec.loops, W)
        top = max_loop(W, A)
        loops = [l0] if op == "=" else (range(0, l0 + 1) if op == "<=" else range(l0, top + 1))
        for l in loops:
            D = W - 2 * (l - 1)
            if D < 0 or l > top:
                continue
            counts = {}
            if spec.family == "extended":
                for G in enumerate_basis("extended", A, W, l):
                    k = grading(G, A).k
                    counts[k] = counts.get(k, 0) + 1
            else:
                for content, mult in _patterns(D, 2 * spec.g):
                    for G in enumerate_basis(spec.family, A, W, l, content=content):
                        k = grading(G, A).k
                        counts[k] = counts.get(k, 0) + mult
            rows += [{"W": W, "l": l, "k": k, "dim": d} for k, d in sorted(counts.items())]
    return rows, None


def cmd_cohomology(spec: JobSpec, cache: Cache):
    from .equivariant import hairy_equivariant_cohomology
    from .johnson import pattern_cohomology, weight_block_cohomology
    op, l = _loop_of(spec)
    rows: List[Row] = []
    if spec.family == "hairy":
        W = spec.weights[0]
        r = spec.hairs
        if (l == 0 and r <= 2) or (l == 1 and r == 0):
            return [], None
        body = cache.fetch("hairy", {"loop": l, "r": r},
                           lambda: hairy_equivariant_cohomology(l, r, primes=spec.primes).to_json())
        for row in body["mult"]:
            rows.append({"W": W, "l": l, "k": row["k"], "partition": row["partition"], "mult": row["mult"]})
        return rows, "S"
    if spec.stable:
        data = stable_data(cache, [(W, l) for W in spec.weights], spec.threads)
        for W in spec.weights:
            for k, mv in data[(W, l)].items():
                rows += _mv_rows(W, l, k, mv)
        return rows, "Sp"
    for W in spec.weights:
        if op == "=" and spec.family in ("plain", "tadpole"):
            rep = pattern_cohomology(spec.family, spec.g, W, l)
        else:
            rep = weight_block_cohomology(spec.family, spec.g, W, spec.loops)
        rows += [{"W": W, "l": spec.loops, "k": k, "dim": d} for k, d in sorted(rep.dims.items()) if d]
    return rows, None


def cmd_chi(spec: JobSpec, cache: Cache):
    from .equivariant import ChiTable
    h, n = spec.extra["h"], spec.extra["n"]
    body = cache.fetch("chi", {"h": h, "n": n}, lambda: ChiTable().fill(h, n).to_json())
    rows = [{"h": r["h"], "partition": r["lambda"], "mult": r["chi"]} for r in body]
    return rows, "chi"


def cmd_branch(spec: JobSpec, cache: Cache):
    lam = Partition(spec.extra["partition"])
    mv = branch_gl_to_sp(lam)
    rows = [{"W": lam.size, "l": "", "k": "", "partition": list(p), "mult": m} for p, m in mv.items()]
    return rows, "Sp"


def _formula_cached(cache: Cache, W: int, kind: str):
    from .johnson import coker_formula, t_graded
    if kind == "coker":
        return MultiplicityVector.from_json(cache.fetch("coker_formula", {"W": W}, lambda: coker_formula(W).to_json()))
    return MultiplicityVector.from_json(cache.fetch("t_graded", {"W": W, "variant": kind},
                                                    lambda: t_graded(W, kind).to_json()))


def cmd_coker(spec: JobSpec, cache: Cache):
    from .johnson import coker_spectral
    method = spec.extra.get("method", "formula")
    rows: List[Row] = []
    for W in spec.weights:
        f = s = None
        if method in ("formula", "both"):
            f = _formula_cached(cache, W, "coker")
        if method in ("spectral", "both"):
            pairs = [(W, l) for l in range(1, W // 2 + 2)]
            data = stable_data(cache, pairs, spec.threads)
            sol = coker_spectral(W, {l: data[(W, l)] for (_, l) in pairs})
            s = sol.survivors
            if sol.ambiguous:
                print(f"warning: spectral solution not unique for "
                      f"{', '.join('[' + p.paper_str() + ']' for p in sol.ambiguous)} in weight {W}", file=sys.stderr)
        if f is not None and s is not None and f != s:
            raise ValidationFailure(f"formula and spectral cokernels differ in weight {W}")
        rows += _mv_rows(W, "", 1, f if f is not None else s)
    return rows, "Sp"


def cmd_t(spec: JobSpec, cache: Cache):
    rows: List[Row] = []
    variant = spec.extra.get("variant", "g1")
    for W in spec.weights:
        try:
            mv = _formula_cached(cache, W, variant)
        except NotImplementedError as exc:
            raise SpecError(str(exc)) from None
        rows += _mv_rows(W, "", 0, mv)
    return rows, "Sp"


def cmd_es(spec: JobSpec, cache: Cache):
    from .johnson import joint_kernel_dims
    W = spec.weights[0]
    ladder = joint_kernel_dims(spec.g, W, spec.extra["max_loop"])
    rows = [{"W": W, "l": l, "k": 0, "dim": d} for l, d in sorted(ladder.h0.items())]
    return rows, None


class ValidationFailure(AssertionError):
    pass


def validation_checks(max_weight: int) -> List[Tuple[str, Callable[[], bool]]]:
    """(name, check) pairs; each check returns True on success."""
    from .differentials import build_slice
    from .equivariant import (EquivariantComplex, hairy_equivariant_cohomology,
                              lefschetz_euler, stable_graded_cohomology)
    from .graphs import Alphabet
    from .johnson import coker_formula, coker_spectral, injectivity_certificate, stable_injectivity, t_graded, \
        t_graded_formula, tree_cohomology, derivations_stable
    from .linalg import prime
    from . import tables

    checks: List[Tuple[str, Callable[[], bool]]] = []
    M = max_weight
    for fam in ("plain", "tadpole"):
        for W in range(1, min(M, 4) + 1):
            checks.append((f"d^2=0 {fam} g=2 W={W}",
                           lambda fam=fam, W=W: build_slice(fam, Alphabet.symplectic(2), W).d_squared_zero()))
    for W in range(1, min(M, 3) + 1):
        checks.append((f"d^2=0 extended g=2 W={W}",
                       lambda W=W: build_slice("extended", Alphabet.extended(2), W).d_squared_zero()))
    for l in range(0, 4):
        for r in range(0, M + 3 - 2 * l):
            if (l == 0 and r <= 2) or (l == 1 and r == 0) or 2 * l + r - 2 > M:
                continue
            checks.append((f"d^2=0 hairy l={l} r={r} (all isotypic blocks)",
                           lambda l=l, r=r: all(EquivariantComplex(l, r, lam, prime(0)).d_squared_zero()
                                                for lam in partitions_of(r))))
            checks.append((f"Lefschetz chi = rank chi, hairy l={l} r={r}",
                           lambda l=l, r=r: lefschetz_euler(l, r) == hairy_equivariant_cohomology(l, r).euler()))
    for W in range(3, min(M, 6) + 1):
        checks.append((f"one-loop table W={W}",
                       lambda W=W: stable_graded_cohomology(W, 1) == {1: tables.table(tables.ONE_LOOP_H1[W])}))
    for (W, l, k), txt in tables.HIGHER_LOOP.items():
        if W <= M:
            checks.append((f"loop {l} table W={W} k={k}",
                           lambda W=W, l=l, k=k, txt=txt: stable_graded_cohomology(W, l).get(k) == tables.table(txt)))
    for W in range(3, min(M, 7) + 1):
        checks.append((f"cokernel formula W={W}", lambda W=W: coker_formula(W) == tables.table(tables.COKERNEL[W])))
    for W in range(3, min(M, 6) + 1):
        checks.append((f"cokernel spectral = formula W={W}",
                       lambda W=W: coker_spectral(W).survivors == coker_formula(W)))
        checks.append((f"stable injectivity W={W}", lambda W=W: stable_injectivity(W).holds))
    for W in (1, 2):
        checks.append((f"t presentation W={W}", lambda W=W: t_graded(W) == tables.table(tables.PRESENTATION[W])))
    for W in range(1, min(M, 3) + 1):
        checks.append((f"tree dims g=9 W={W} vs stable",
                       lambda W=W: tree_cohomology(9, W).dims.get(0, 0) == derivations_stable(W).total(lambda p: dim_sp(p, 9))))
        checks.append((f"tree = t + coker, W={W}",
                       lambda W=W: derivations_stable(W) == t_graded_formula(W) + (coker_formula(W) if W >= 2 else MultiplicityVector())))
    checks.append(("direct injectivity g=2 W=2", lambda: injectivity_certificate(2, 2).holds))
    if M >= 3:
        checks.append(("direct injectivity g=3 W=3", lambda: injectivity_certificate(3, 3).holds))
    return checks


def cmd_validate(spec: JobSpec, cache: Cache):
    rows = []
    failed = 0
    for name, check in validation_checks(spec.extra["max_weight"]):
        t = time.time()
        try:
            ok = bool(check())
            err = ""
        except Exception as exc:  # a crash counts as a failure
            ok, err = False, f"{type(exc).__name__}: {exc}"
        failed += not ok
        rows.append({"check": name, "ok": ok, "seconds": round(time.time() - t, 3), "error": err})
    return rows, ("failed", failed)


COMMANDS = {"basis": cmd_basis, "cohomology": cmd_cohomology, "chi": cmd_chi, "branch": cmd_branch,
            "coker": cmd_coker, "t": cmd_t, "es": cmd_es, "validate": cmd_validate}


# --- output ----------------------------------------------------------------------------------------


def _paper_lines(spec: JobSpec, rows: List[Row], tag) -> List[str]:
    if spec.command == "validate":
        return [f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']}" + (f"  ({r['error']})" if r["error"] else "")
                for r in rows]
    if rows and "dim" in rows[0]:
        return [f"W={r['W']} l={r['l']} k={r['k']}: {r['dim']}" for r in rows]
    if spec.command == "chi":
        return [f"chi_{{{r['h']},[{Partition(r['partition']).paper_str()}]}} = {r['mult']}" for r in rows]
    groups: Dict[tuple, MultiplicityVector] = {}
    for r in rows:
        key = (r["W"], r["l"], r["k"])
        groups.setdefault(key, MultiplicityVector()).add(Partition(r["partition"]), r["mult"])
    if spec.command in ("coker", "t", "branch"):
        if len(spec.weights) <= 1:
            return [mv.paper_str() for mv in groups.values()] or ["0"]
        present = {key[0]: mv for key, mv in groups.items()}
        return [f"gr^{W}: {present.get(W, MultiplicityVector()).paper_str()}" for W in spec.weights]
    return [f"gr^{W} H^{k} (l={l}): {mv.paper_str()}" for (W, l, k), mv in groups.items()]


def render(spec: JobSpec, rows: List[Row], tag, cache: Cache) -> str:
    if spec.output_format == "json":
        doc = {"tool": "gcjohnson", "version": __version__, "job": spec.provenance(),
               "cache_keys": list(cache.keys_used), "rows": rows}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if spec.output_format == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: (Partition(v).paper_str() if k == "partition" else v) for k, v in r.items()})
        return buf.getvalue()
    return "\n".join(_paper_lines(spec, rows, tag)) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SPEC if exc.code else EXIT_OK
    try:
        spec = job_from_args(ns)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    cache = Cache(spec.cache_dir)
    est = estimate_seconds(spec, cache)
    if est > LONG_SECONDS and not ns.allow_long:
        print(f"refused: estimated {est:.0f} s exceeds {LONG_SECONDS:.0f} s; rerun with --allow-long", file=sys.stderr)
        return EXIT_REFUSED
    try:
        rows, tag = COMMANDS[spec.command](spec, cache)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (ValidationFailure, ArithmeticError) as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    sys.stdout.write(render(spec, rows, tag, cache))
    if spec.output_format != "json":
        print(f"# gcjohnson {__version__} job={json.dumps(spec.provenance(), sort_keys=True)} "
              f"cache_keys={','.join(cache.keys_used) or '-'}", file=sys.stderr)
    if isinstance(tag, tuple) and tag[0] == "failed" and tag[1]:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
