"""``forge``: batch front end for presentations, seeds, blueprints and checks.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import kacmoody, ore, presets, primes, seed as seedmod
from .qtorus import frame_monomial

CHECKS = ("cgl", "cond", "dform", "chains", "laurent")


class InputError(Exception):
    pass


# -- file helpers ---------------------------------------------------------------

def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _write(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(obj, out):
    if out:
        _write(out, _dumps(obj))
    else:
        sys.stdout.write(_dumps(obj))


def _load_presentation(path: str, char) -> ore.CGLPresentation:
    obj = _read_json(path)
    if "presentation" in obj and "N" not in obj:
        obj = obj["presentation"]
    try:
        p = ore.CGLPresentation.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed presentation ({exc})") from None
    return p.with_char(char) if char is not None else p


def _load_seed(path: str):
    obj = _read_json(path)
    alg = None
    if "presentation" in obj:
        alg = ore.CGLPresentation.from_json(obj["presentation"])
    try:
        return seedmod.load_seed(obj, alg), alg
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed seed ({exc})") from None


def _seed_json(s: seedmod.QuantumSeed, p: ore.CGLPresentation = None, sigma=None) -> dict:
    out = seedmod.dump_seed(s)
    if p is not None and s.frame.realized:
        out["presentation"] = p.to_json()
    if sigma is not None:
        out["sigma"] = [x + 1 for x in sigma]
    return out


def _parse_ints(text: str, what: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _parse_sigma(text: str, n: int) -> tuple:
    sigma = tuple(x - 1 for x in _parse_ints(text, "--sigma"))
    if sorted(sigma) != list(range(n)):
        raise InputError(f"--sigma must be a permutation of 1..{n}")
    if not ore.is_interval_permutation(sigma):
        raise InputError("--sigma has a prefix that is not an interval")
    return sigma


def _parse_checks(text: str) -> list:
    checks = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise InputError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)}")
    return checks


def _parse_bounds(text):
    if text is None:
        return None
    vals = _parse_ints(text, "--bounds")
    if len(vals) != 2 or min(vals) < 0:
        raise InputError("--bounds takes D,B with nonnegative integers")
    return vals[0], vals[1]


# -- subcommands ------------------------------------------------------------------

def cmd_preset(args) -> int:
    try:
        pr = presets.preset(args.name, args.char or 0)
    except presets.UnknownPreset:
        raise InputError(f"unknown preset {args.name!r}; known: {', '.join(presets.PRESET_NAMES)}") from None
    out = Path(args.output)
    p = pr.presentation
    _write(out / "presentation.json", _dumps(p.to_json()))
    pipe = primes.Pipeline(p)
    s = pipe.seed(range(p.N))
    _write(out / "seed.json", _dumps(_seed_json(s, p, range(p.N))))
    if pr.cartan is not None:
        _write(out / "cartan.json", _dumps(pr.cartan.to_json()))
        _write(out / "word.txt", ",".join(str(pr.cartan.labels[i]) for i in pr.word) + "\n")
    return 0


def _analyze(p: ore.CGLPresentation, checks, orientation) -> dict:
    rep = ore.validate_cgl(p)
    out = {"checks": {}, "violations": []}
    out["cgl"] = rep.to_json()
    out["checks"]["cgl"] = rep.ok
    if not rep.ok:
        out["violations"] += rep.violations
        return out
    pipe = primes.Pipeline(p, orientation)
    e = pipe.eta
    out["eta"] = [x + 1 for x in e.eta]
    out["p"] = [None if x is None else x + 1 for x in e.pred]
    out["s"] = [None if x is None else x + 1 for x in e.succ]
    out["y"] = [y.format(p.labels) for y in e.y]
    out["ybar"] = [y.format(p.labels) for y in e.ybar]
    if "cond" in checks:
        table = primes.cond_table(p, e, pipe.norm, orientation, pipe)
        out["cond"] = [r.to_json() for r in table]
        first = [r for r in table if r.m == 1]
        ok = all(r.passed for r in first)
        out["checks"]["cond"] = ok
        out["violations"] += [f"cond: fails at i={r.i + 1}" for r in first if not r.passed]
    if "dform" in checks:
        d = ore.d_form_check(p, list(e.y) + list(e.ybar))
        out["dform"] = d.to_json()
        out["checks"]["dform"] = d.ok
        out["violations"] += d.violations
    return out


def cmd_analyze(args) -> int:
    p = _load_presentation(args.presentation, args.char)
    checks = _parse_checks(args.check) if args.check else ["cgl"]
    out = _analyze(p, checks, args.orientation)
    if "chains" in checks or "laurent" in checks:
        v = _verify(p, "chains" in checks, "laurent" in checks, None, 1)
        out.update({k: v[k] for k in ("chains", "laurent") if k in v})
        out["checks"].update(v["checks"])
        out["violations"] += v["violations"]
    out["ok"] = all(out["checks"].values())
    _emit(out, args.output)
    return 0 if out["ok"] else 1


def cmd_seed(args) -> int:
    p = _load_presentation(args.presentation, args.char)
    pipe = primes.Pipeline(p)
    if args.all_gamma:
        sigmas = primes.gamma_subset(p.N)
    elif args.sigma:
        sigmas = [_parse_sigma(args.sigma, p.N)]
    else:
        sigmas = [tuple(range(p.N))]
    seeds = []
    for sg in sigmas:
        s = pipe.seed(sg)
        seeds.append(_seed_json(s, p, sg))
    _emit(seeds[0] if len(seeds) == 1 else {"seeds": seeds}, args.output)
    return 0


def cmd_mutate(args) -> int:
    s, alg = _load_seed(args.seed)
    for step in [x.strip() for x in args.script.split(";") if x.strip()]:
        kind, _, rest = step.partition(":")
        if kind == "mu":
            k = _parse_ints(rest, "mu")
            if len(k) != 1:
                raise InputError("mu takes one index")
            if k[0] - 1 not in s.ex:
                raise InputError(f"index {k[0]} is not exchangeable")
            s = seedmod.mutate_seed(s, k[0] - 1, args.eps, realize=s.frame.realized)
        elif kind == "perm":
            tau = [x - 1 for x in _parse_ints(rest, "perm")]
            if sorted(tau) != list(range(s.n)):
                raise InputError(f"perm must be a permutation of 1..{s.n}")
            from .qtorus import reindex_frame
            s = seedmod.QuantumSeed(reindex_frame(s.frame, tau), s.btilde.permuted(tau),
                                    frozenset(tau.index(i) for i in s.inv),
                                    {tau.index(k): d for k, d in s.symmetrizers.items()})
        else:
            raise InputError(f"unknown script step {step!r}; use mu:k or perm:...")
    _emit(_seed_json(s, alg), args.output)
    return 0


def cmd_blueprint(args) -> int:
    try:
        c = kacmoody.CartanDatum.from_json(_read_json(args.cartan))
        word = kacmoody.parse_word(c, args.word)
    except (kacmoody.BadCartan, KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    try:
        bp = kacmoody.blueprint(c, word, strict=False)
    except kacmoody.NotReduced as exc:
        raise InputError(f"word is not reduced: {exc}") from None
    _emit(bp.to_json(), args.output)
    return 0 if bp.report.ok else 1


def _verify_sigma(payload):
    p_json, g, chains, laurent, bounds = payload
    p = ore.CGLPresentation.from_json(p_json)
    pipe = primes.Pipeline(p)
    return _verify_one(p, pipe, tuple(g), chains, laurent, bounds)


def _verify_one(p, pipe, g, chains, laurent, bounds) -> dict:
    res = {"sigma": [x + 1 for x in g], "chain_steps": [], "laurent": [], "violations": []}
    if chains:
        path = primes.xi_path(p.N, g)
        for a, b in zip(path, path[1:]):
            try:
                r = primes.verify_mutation_chain(pipe, a, b)
                res["chain_steps"].append(r.to_json())
                res["violations"] += [f"chain {r.data['sigma']}->{r.data['sigma2']}: {v}" for v in r.violations]
            except ArithmeticError as exc:
                res["chain_steps"].append({"sigma": [x + 1 for x in a], "sigma2": [x + 1 for x in b],
                                           "ok": False, "error": str(exc)})
                res["violations"].append(f"chain {[x + 1 for x in a]}->{[x + 1 for x in b]}: {exc}")
    if laurent:
        s = pipe.seed(g)
        for j in range(p.N):
            exp = primes.laurent_membership(p, s, p.gen(j), bounds)
            ok = exp is not None and primes.cleared_value(p, s, exp) == p.multiply(
                frame_monomial(s.frame, exp.denominator), p.gen(j))
            res["laurent"].append({"generator": j + 1, "ok": ok,
                                   "expansion": exp.to_json() if exp else None})
            if not ok:
                res["violations"].append(f"laurent: x{j + 1} in seed {res['sigma']}")
    return res


def _verify(p, chains, laurent, bounds, jobs) -> dict:
    gammas = primes.gamma_subset(p.N)
    if jobs and jobs > 1:
        payloads = [(p.to_json(), g, chains, laurent, bounds) for g in gammas]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_sigma, payloads))
    else:
        pipe = primes.Pipeline(p)
        results = [_verify_one(p, pipe, g, chains, laurent, bounds) for g in gammas]
    out = {"checks": {}, "violations": []}
    for r in results:
        out["violations"] += r["violations"]
    if chains:
        out["chains"] = [{"sigma": r["sigma"], "steps": r["chain_steps"]} for r in results]
        out["checks"]["chains"] = not any(v.startswith("chain") for v in out["violations"])
    if laurent:
        out["laurent"] = [{"sigma": r["sigma"], "generators": r["laurent"]} for r in results]
        out["checks"]["laurent"] = not any(v.startswith("laurent") for v in out["violations"])
    return out


def cmd_verify(args) -> int:
    p = _load_presentation(args.presentation, args.char)
    rep = ore.validate_cgl(p)
    if not rep.ok:
        _emit({"ok": False, "violations": rep.violations}, args.output)
        return 1
    out = _verify(p, True, True, _parse_bounds(args.bounds), args.jobs)
    out["ok"] = all(out["checks"].values())
    _emit(out, args.output)
    return 0 if out["ok"] else 1


def cmd_quiver(args) -> int:
    s, _ = _load_seed(args.seed)
    try:
        dot = seedmod.quiver_dot(s, args.name)
    except seedmod.NotSkewSymmetric as exc:
        sys.stderr.write(f"forge: {exc}\n")
        return 1
    if args.output:
        _write(args.output, dot)
    else:
        sys.stdout.write(dot)
    return 0


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, char=True):
        sp.add_argument("-o", "--output", help="output path (stdout when omitted)")
        if char:
            sp.add_argument("--char", type=int, default=None, help="coefficient characteristic (0 or a prime)")

    sp = sub.add_parser("analyze", help="validate a presentation and compute its prime elements")
    sp.add_argument("presentation")
    sp.add_argument("--check", help=f"comma-separated subset of {','.join(CHECKS)}")
    sp.add_argument("--orientation", choices=("literal", "negated"), default="literal")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("seed", help="build the seed for a permutation")
    sp.add_argument("presentation")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--sigma", help="1-based permutation, e.g. 2,1,3,4")
    g.add_argument("--all-gamma", action="store_true", help="emit the seeds for every permutation in the distinguished family")
    common(sp)
    sp.set_defaults(func=cmd_seed)

    sp = sub.add_parser("mutate", help="apply a script like 'mu:2;perm:2,1,3,4' to a seed file")
    sp.add_argument("seed")
    sp.add_argument("--script", required=True)
    sp.add_argument("--eps", type=int, choices=(1, -1), default=1)
    common(sp, char=False)
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("blueprint", help="Cartan datum and reduced word to seed data")
    sp.add_argument("--cartan", required=True)
    sp.add_argument("--word", required=True, help="comma-separated node labels")
    common(sp, char=False)
    sp.set_defaults(func=cmd_blueprint)

    sp = sub.add_parser("verify", help="mutation chains and Laurent membership over the distinguished family")
    sp.add_argument("presentation")
    sp.add_argument("--bounds", help="D,B: denominator cap and numerator box")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("quiver", help="DOT export of a seed's exchange matrix")
    sp.add_argument("seed")
    sp.add_argument("--name", default="quiver")
    common(sp, char=False)
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("preset", help="write a named preset to a directory")
    sp.add_argument("name", help=", ".join(presets.PRESET_NAMES))
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--char", type=int, default=None)
    sp.set_defaults(func=cmd_preset)
    return ap


def _check_char(char):
    if char is None or char == 0:
        return
    if char < 2 or any(char % d == 0 for d in range(2, int(char ** 0.5) + 1)):
        raise InputError(f"--char must be 0 or a prime, got {char}")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        _check_char(getattr(args, "char", None))
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"forge: {exc}\n")
        return 2
    except (ore.NotInXi, ore.NotSymmetric, primes.NoPredecessorFound, primes.MultiplePredecessors,
            primes.ConditionAFailure, primes.CondViolated, primes.NonIntegralColumn,
            primes.NonUniqueColumn, seedmod.NotExchangeable) as exc:
        sys.stderr.write(f"forge: {type(exc).__name__}: {exc}\n")
        return 1
    except ArithmeticError as exc:
        sys.stderr.write(f"forge: {exc}\n")
        return 1
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        # malformed data that slipped past the loaders
        sys.stderr.write(f"forge: bad input: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
