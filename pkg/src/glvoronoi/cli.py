"""Command-line driver: config ingestion, JSON-lines reports, suite runner.

Report schema (one JSON object per line):
    {check, params, lhs, rhs, correction, abs_err, rel_err, verdict, diagnostics}
Floats are serialized with 17 significant digits; identical config + seed
gives byte-identical output.  Exit codes: 0 all pass, 1 any fail verdict,
2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from .chars import PrimeModulus, is_prime
from .coeffs import EisensteinSource, hecke_check, load_file_source
from .kloosterman import KloostermanParams, kl_direct, kl_via_chars
from .lfun import fe_residual, proof_chain_residual
from .mellin import ContourSpec, TestFunction, mellin_inversion_check
from .symalg import check_lemma34
from . import voronoi as vor

DEFAULT_ALPHAS = {
    1: "0,0",
    2: "0,0.5;0,-0.5",
    3: "0,0.6;0,0;0,-0.6",
    4: "0,0.9;0,0.3;0,-0.3;0,-0.9",
}


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)


# -- serialization -------------------------------------------------------------

_FSENT = "~f17~"


def _mark(o):
    if isinstance(o, bool) or isinstance(o, (int, str)) or o is None:
        return o
    if isinstance(o, float):
        return f"{_FSENT}{format(o, '.17g')}{_FSENT}"
    if isinstance(o, complex):
        return [_mark(o.real), _mark(o.imag)]
    if isinstance(o, dict):
        return {k: _mark(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_mark(v) for v in o]
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return _mark(float(o))
    if isinstance(o, (np.complexfloating,)):
        return _mark(complex(o))
    return str(o)


def emit(report: dict, stream) -> None:
    text = json.dumps(_mark(report), separators=(", ", ": "))
    # unwrap the sentinel-quoted 17-digit numbers
    text = re.sub(r'"~f17~([^"]*)~f17~"', r"\1", text)
    stream.write(text + "\n")


# -- config file ----------------------------------------------------------------

def load_config_file(path: str, known_keys: set) -> dict:
    """Parse `key = value` lines; '#' comments; errors carry the line number."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: malformed line "
                                 f"(expected key = value): {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in known_keys:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            out[key] = value.strip()
    return out


def parse_alphas(text: str):
    """'re,im;re,im;...' -> tuple of complex."""
    vals = []
    for part in text.split(";"):
        re_s, _, im_s = part.partition(",")
        vals.append(complex(float(re_s), float(im_s) if im_s else 0.0))
    return tuple(vals)


# -- argument plumbing -----------------------------------------------------------

def _add_common(p):
    p.add_argument("--config", help="key=value config file (flags win)")
    p.add_argument("--json", dest="json_out", help="write reports to this path")
    p.add_argument("--seed", type=int, default=12345)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glvoronoi",
                                 description="Desk-scale verification of GL(n) "
                                             "Voronoi summation identities")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("kl", help="hyper-Kloosterman sums")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=["direct", "chars", "both"], default="both")
    _add_common(p)

    p = sub.add_parser("chars", help="character tables and Gauss sums")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--parity", choices=["even", "odd", "all"], default="all")
    _add_common(p)

    p = sub.add_parser("lemma", help="Hecke dual-polynomial identity (exact)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--nmax", type=int, default=8)
    _add_common(p)

    p = sub.add_parser("coeffs", help="Fourier coefficients")
    p.add_argument("--n", type=int)
    p.add_argument("--alphas", help="re,im;re,im;...")
    p.add_argument("--file", help="coefficient file instead of eisenstein data")
    p.add_argument("--tuple", dest="tuple_", metavar="TUPLE",
                   help="comma-separated m_1,...,m_{n-1}")
    p.add_argument("--hecke-check", action="store_true",
                   help="run the Hecke relation checks instead")
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--mmax", type=int, default=100)
    _add_common(p)

    p = sub.add_parser("fe", help="functional-equation residuals")
    p.add_argument("--kind", choices=["standard", "even", "odd", "chain"],
                   default="standard")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--alphas")
    p.add_argument("--points", type=int, default=20)
    _add_common(p)

    p = sub.add_parser("verify", help="end-to-end summation identity")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--q", type=int, default=5)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--alphas")
    p.add_argument("--file", help="coefficient file source")
    p.add_argument("--part", choices=["even", "odd", "combined"],
                   default="combined")
    p.add_argument("--omega-center", type=float, default=40.0)
    p.add_argument("--omega-radius", type=float, default=30.0)
    p.add_argument("--sigma", type=float, default=1.5)
    p.add_argument("--height", type=float)
    p.add_argument("--tol", type=float)
    _add_common(p)

    p = sub.add_parser("suite", help="acceptance matrix")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    _add_common(p)
    return ap


def _merge_config(args: argparse.Namespace, argv) -> argparse.Namespace:
    if not getattr(args, "config", None):
        return args
    keys = {k for k in vars(args) if k not in ("subcommand", "config")}
    file_vals = load_config_file(args.config, keys)
    explicit = set()
    for tok in argv:
        if tok.startswith("--"):
            explicit.add(tok[2:].split("=")[0].replace("-", "_"))
    explicit |= {"tuple_"} if "tuple" in explicit else set()
    for key, raw in file_vals.items():
        if key in explicit:
            continue  # flags win
        cur = getattr(args, key)
        if isinstance(cur, bool):
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        elif isinstance(cur, int):
            setattr(args, key, int(raw))
        elif isinstance(cur, float):
            setattr(args, key, float(raw))
        else:
            setattr(args, key, raw)
    return args


def _source(args):
    if getattr(args, "file", None):
        return load_file_source(args.file)
    text = args.alphas or DEFAULT_ALPHAS.get(args.n or 2)
    if text is None:
        raise ValueError(f"no default spectral data for n={args.n}; pass --alphas")
    return EisensteinSource(parse_alphas(text))


# -- subcommand implementations ---------------------------------------------------

def _run_kl(args, out) -> int:
    p = KloostermanParams(args.k, args.m, args.q)
    vals = {}
    if args.method in ("direct", "both"):
        vals["direct"] = kl_direct(p)
    if args.method in ("chars", "both"):
        vals["chars"] = kl_via_chars(p)
    resid = abs(vals["direct"] - vals["chars"]) if len(vals) == 2 else 0.0
    verdict = "pass" if resid <= 1e-10 else "fail"
    lhs = vals.get("direct", vals.get("chars"))
    rhs = vals.get("chars", lhs)
    emit({"check": "kl", "params": {"k": args.k, "m": args.m, "q": args.q,
                                    "method": args.method},
          "lhs": lhs, "rhs": rhs, "correction": 0.0,
          "abs_err": resid, "rel_err": resid / max(abs(lhs), 1e-30),
          "verdict": verdict, "diagnostics": {}}, out)
    return 0 if verdict == "pass" else 1

def _run_chars(args, out) -> int:
    mod = PrimeModulus(args.q)
    status = 0
    for chi in mod.characters(nontrivial_only=False):
        if args.parity != "all" and (chi.is_even != (args.parity == "even")):
            continue
        tau = chi.gauss_sum
        mag_ok = chi.is_trivial or abs(abs(tau) - args.q ** 0.5) <= 1e-10
        if not mag_ok:
            status = 1
        emit({"check": "chars", "params": {"q": args.q, "index": chi.t},
              "lhs": tau, "rhs": args.q ** 0.5, "correction": 0.0,
              "abs_err": 0.0 if chi.is_trivial else abs(abs(tau) - args.q ** 0.5),
              "rel_err": 0.0, "verdict": "pass" if mag_ok else "fail",
              "diagnostics": {"even": chi.is_even, "trivial": chi.is_trivial,
                              "values": [chi(m) for m in range(args.q)]}}, out)
    return status

def _run_lemma(args, out) -> int:
    cases = []
    if args.all or args.n is None:
        for n in range(2, args.nmax + 1):
            cases += [(n, k) for k in range(1, n)]
    else:
        cases = [(args.n, k) for k in ([args.k] if args.k else range(1, args.n))]
    status = 0
    for n, k in cases:
        ok, _ = check_lemma34(n, k)
        if not ok:
            status = 1
        emit({"check": "lemma34", "params": {"n": n, "k": k},
              "lhs": 0.0, "rhs": 0.0, "correction": 0.0, "abs_err": 0.0,
              "rel_err": 0.0, "verdict": "pass" if ok else "fail",
              "diagnostics": {"exact": True}}, out)
    return status

def _run_coeffs(args, out) -> int:
    src = _source(args)
    if args.hecke_check:
        status = 0
        worst = 0.0
        for i in range(1, src.n):
            for m in range(1, args.mmax + 1):
                worst = max(worst, hecke_check(src, args.q, m, i))
        verdict = "pass" if worst <= 1e-10 else "fail"
        if verdict == "fail":
            status = 1
        emit({"check": "hecke", "params": {"n": src.n, "q": args.q,
                                           "mmax": args.mmax},
              "lhs": worst, "rhs": 0.0, "correction": 0.0, "abs_err": worst,
              "rel_err": worst, "verdict": verdict, "diagnostics": {}}, out)
        return status
    if args.tuple_:
        tuples = [tuple(int(x) for x in args.tuple_.split(","))]
    else:
        tuples = [tuple([m] + [1] * (src.n - 2)) for m in range(1, args.mmax + 1)]
    for t in tuples:
        val = src.coefficient(t)
        emit({"check": "coefficient", "params": {"tuple": list(t)},
              "lhs": val, "rhs": val, "correction": 0.0, "abs_err": 0.0,
              "rel_err": 0.0, "verdict": "pass", "diagnostics": {}}, out)
    return 0

def _fe_points(rng, count):
    re_ = rng.uniform(-1.0, 2.0, count)
    im = rng.uniform(-30.0, 30.0, count)
    return re_ + 1j * im

def _run_fe(args, out) -> int:
    src = _source(args)
    rng = np.random.RandomState(args.seed)
    status = 0
    for s in _fe_points(rng, args.points):
        if abs(s.imag) < 0.2:
            s += 0.25j  # keep clear of the real-axis poles of the zeta factors
        if args.kind == "chain":
            r = proof_chain_residual(s, args.q, args.a, args.k, src)
        else:
            r = fe_residual(args.kind, s, args.q, args.a, args.k, src)
        verdict = "pass" if r <= 1e-8 else "fail"
        if verdict == "fail":
            status = 1
        emit({"check": f"fe_{args.kind}",
              "params": {"n": src.n, "k": args.k, "q": args.q, "a": args.a,
                         "s": s},
              "lhs": r, "rhs": 0.0, "correction": 0.0, "abs_err": r,
              "rel_err": r, "verdict": verdict, "diagnostics": {}}, out)
    return status

def _run_verify(args, out) -> int:
    src = _source(args)
    fn = TestFunction(center=args.omega_center, radius=args.omega_radius)
    contour = ContourSpec(sigma=args.sigma,
                          height=args.height if args.height else 40.0)
    inst = vor.VoronoiInstance(src, q=args.q, a=args.a, k=args.k, fn=fn,
                               contour=contour)
    kw = {}
    if args.tol is not None:
        kw = {"tol_odd": args.tol, "tol_even": args.tol}
    rep = vor.verify(inst, part=args.part, **kw)
    emit(rep.to_dict(), out)
    return 0 if rep.verdict == "pass" else 1

def _run_suite(args, out) -> int:
    status = 0

    def _note(check, params, resid, tol, diag=None):
        nonlocal status
        verdict = "pass" if resid <= tol else "fail"
        if verdict == "fail":
            status = 1
        emit({"check": check, "params": params, "lhs": resid, "rhs": 0.0,
              "correction": 0.0, "abs_err": resid, "rel_err": resid,
              "verdict": verdict, "diagnostics": diag or {}}, out)

    quick = args.level == "quick"
    for q in ((3, 5) if quick else (3, 5, 7, 11, 13)):
        for k in range(1, 6):
            worst = max(abs(kl_direct(KloostermanParams(k, m, q))
                            - kl_via_chars(KloostermanParams(k, m, q)))
                        for m in range(1, q))
            _note("moment", {"q": q, "k": k}, worst, 1e-10)
    for n in range(2, 5 if quick else 9):
        for k in range(1, n):
            _note("lemma34", {"n": n, "k": k},
                  0.0 if check_lemma34(n, k)[0] else 1.0, 0.5)
    rng = np.random.RandomState(args.seed)
    for n in (2, 3):
        alphas = _random_alphas(rng, n)
        src = EisensteinSource(alphas)
        worst = max(hecke_check(src, q, m, i)
                    for q in (2, 3) for i in range(1, n)
                    for m in range(1, (101 if quick else 1001)))
        _note("hecke", {"n": n}, worst, 1e-10)
        for kind in ("standard", "even", "odd"):
            s = complex(rng.uniform(-1, 2), rng.uniform(5, 30))
            _note("fe_" + kind, {"n": n, "s": s},
                  fe_residual(kind, s, 5, 2, 1, src), 1e-8)
        _note("chain", {"n": n},
              proof_chain_residual(complex(0.4, 11.0), 5, 2, 1, src), 1e-8)
    fn = TestFunction()
    spec = ContourSpec(sigma=1.5, height=1600.0)
    xs = np.linspace(15.0, 65.0, 10)
    _note("mellin_inversion", {"T": 1600.0},
          mellin_inversion_check(fn, spec, xs), 1e-8)
    src = EisensteinSource(parse_alphas(DEFAULT_ALPHAS[2]))
    for part, tol in (("odd", 1e-6), ("even", 1e-5), ("combined", 1e-5)):
        rep = vor.verify(vor.VoronoiInstance(src, q=5, a=2, k=1), part=part)
        emit(rep.to_dict(), out)
        if rep.verdict != "pass":
            status = 1
    if not quick:
        for n, qs in ((3, (3, 5, 7)), (4, (3, 5, 7))):
            src = EisensteinSource(parse_alphas(DEFAULT_ALPHAS[n]))
            for q in qs:
                for k in range(1, n):
                    for a in (1, 2):
                        for part in ("odd", "even", "combined"):
                            rep = vor.verify(
                                vor.VoronoiInstance(src, q=q, a=a, k=k),
                                part=part)
                            emit(rep.to_dict(), out)
                            if rep.verdict != "pass":
                                status = 1
    return status


def _random_alphas(rng, n):
    im = rng.uniform(-1.0, 1.0, n - 1)
    im = np.append(im, -im.sum())
    return tuple(complex(0.0, v) for v in im)


_RUNNERS = {"kl": _run_kl, "chars": _run_chars, "lemma": _run_lemma,
            "coeffs": _run_coeffs, "fe": _run_fe, "verify": _run_verify,
            "suite": _run_suite}


def _validate(args) -> None:
    q = getattr(args, "q", None)
    if q is not None and args.subcommand != "coeffs" and not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    a = getattr(args, "a", None)
    if a is not None and q is not None and a % q == 0:
        raise ValueError(f"need (a, q) = 1, got a={a}, q={q}")
    n, k = getattr(args, "n", None), getattr(args, "k", None)
    if args.subcommand in ("fe", "verify") and n is not None and k is not None \
            and not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    oc = getattr(args, "omega_center", None)
    orad = getattr(args, "omega_radius", None)
    if oc is not None and orad is not None and not 0 < orad < oc:
        raise ValueError(f"need 0 < radius < center, got r={orad}, c={oc}")
    sigma = getattr(args, "sigma", None)
    if sigma is not None and sigma <= 1.0:
        raise ValueError(f"sigma must exceed 1, got {sigma}")


def run(config: RunConfig):
    """Programmatic entry point mirroring the CLI."""
    argv = [config.subcommand]
    for key, val in config.options.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(val, bool):
            if val:
                argv.append(flag)
        else:
            argv += [flag, str(val)]
    return main(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        args = _merge_config(args, argv)
        _validate(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_path = getattr(args, "json_out", None)
    try:
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                return _RUNNERS[args.subcommand](args, fh)
        return _RUNNERS[args.subcommand](args, sys.stdout)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
