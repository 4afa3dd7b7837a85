"""Command-line front end.

Text formats (coefficients are integers, read modulo ``--prime``):

* univariate polynomial: ``"c0 c1 c2"`` in ascending degree;
* bivariate polynomial: rows separated by ``;``, row ``j`` holding the
  ``x1``-coefficients of ``x2^j``, e.g. ``"-1 -1; 1"`` for ``x2 - x1 - 1``;
* sequence of extension-field elements: elements separated by ``/``, each
  written as its coordinates (``"0 1 / 1 0"`` is ``alpha, 1``); tower
  elements list the coordinate of ``alpha1^i alpha2^j`` at position ``j*d1 + i``;
* bivariate over the extension: rows separated by ``;``, each row an
  element sequence;
* staircase: ``"mu:nu,..."``, e.g. ``"2:0,1:1,0:2"``.

Exit status: 0 on success, 2 for unreadable input, 3 when a mathematical
precondition fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench as benchmod
from . import bitangle as bt
from . import staircase as st
from . import upoly
from .errors import (
    CharacteristicTooSmall,
    NotIrreducible,
    NotSeparable,
    PreconditionError,
    TanglesError,
)
from .field import PrimeField
from .powmod import pow_x_mod
from .staircase import Staircase
from .unitangle import PowerModulus, tangle, untangle


class InputError(TanglesError, ValueError):
    pass


# -- parsing and printing --------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"not a list of integers: {text!r}") from None


def parse_poly(K, text: str) -> np.ndarray:
    return upoly.trim(K.array(np.array(_ints(text), dtype=object)).reshape(-1))


def format_poly(f) -> str:
    f = upoly.trim(f)
    return " ".join(str(int(c)) for c in f) if len(f) else "0"


def parse_bivariate(K, text: str) -> list[list[int]]:
    rows = [_ints(r) for r in text.split(";")]
    while rows and not any(rows[-1]):
        rows.pop()
    return rows


def _grid(K, rows, shape) -> np.ndarray:
    r, c = shape
    grid = K.zeros((r, c))
    for j, row in enumerate(rows):
        for i, v in enumerate(row):
            if v % K.p == 0:
                continue
            if j >= r or i >= c:
                raise InputError(f"coefficient of x1^{i} x2^{j} lies outside the quotient basis")
            grid[j, i] = v % K.p
    return grid


def parse_on_staircase(K, text: str, S: Staircase) -> np.ndarray:
    """Bivariate text to a reduced polynomial; rejects monomials outside the basis."""
    grid = _grid(K, parse_bivariate(K, text), (S.nu_t, S.mu1))
    if np.any(grid[~S.mask] != 0):
        raise InputError("input has monomials outside the quotient basis")
    return grid[S.mask]


def format_on_staircase(F, S: Staircase) -> str:
    F = np.asarray(F)
    rows = []
    for b in range(S.nu_t):
        lo, hi = S.offsets[b], S.offsets[b + 1]
        rows.append(" ".join(str(int(c)) for c in F[lo:hi]))
    return "; ".join(rows)


def parse_kseq(K, text: str) -> np.ndarray:
    """``/``-separated extension elements, each given by ``K.dim`` coordinates."""
    text = text.strip()
    if not text:
        return K.zeros(0)
    elems = []
    for chunk in text.split("/"):
        vals = _ints(chunk)
        if len(vals) > K.dim:
            raise InputError(f"element {chunk.strip()!r} has more than {K.dim} coordinates")
        elems.append(vals + [0] * (K.dim - len(vals)))
    return K.unflatten(np.array(elems, dtype=object))


def format_kseq(K, a) -> str:
    flat = K.flatten(np.asarray(a))
    return " / ".join(" ".join(str(int(c)) for c in e) for e in flat)


def parse_k_on_staircase(K, text: str, S: Staircase) -> np.ndarray:
    rows = [parse_kseq(K, r) for r in text.split(";")]
    grid = K.zeros((S.nu_t, S.mu1))
    for b, row in enumerate(rows):
        for a, v in enumerate(row):
            if K.is_zero(v):
                continue
            if S.contains(a, b):
                raise InputError(f"coefficient of xi1^{a} xi2^{b} lies in the monomial ideal")
            grid[b, a] = v
    return grid[S.mask]


def format_k_on_staircase(K, G, S: Staircase) -> str:
    G = np.asarray(G)
    return "; ".join(format_kseq(K, G[S.offsets[b]:S.offsets[b + 1]]) for b in range(S.nu_t))


def _tolist(a):
    return np.asarray(a).astype(object).tolist()


# -- commands ------------------------------------------------------------

_STDIN = {}


def _text(value: str) -> str:
    if value != "-":
        return value
    if "data" in _STDIN:
        raise InputError("stdin can supply only one argument")
    _STDIN["data"] = sys.stdin.read().strip()
    return _STDIN["data"]


def _univariate_modulus(K, args):
    T = parse_poly(K, _text(args.T))
    if upoly.degree(T) < 1:
        raise InputError("T must have degree at least 1")
    if not upoly._is_one(K, T[-1]):
        raise InputError("T must be monic")
    return PowerModulus(T, args.mu, base=K)


def _config(K, args):
    T1 = parse_poly(K, _text(args.T1))
    T2 = parse_bivariate(K, _text(args.T2))
    if upoly.degree(T1) < 1 or not upoly._is_one(K, T1[-1]):
        raise InputError("T1 must be monic of degree at least 1")
    if not T2 or len(T2) < 2 or [v % K.p for v in T2[-1]] != [1] + [0] * (len(T2[-1]) - 1):
        raise InputError("T2 must be monic of positive degree in x2")
    m = bt.MaximalIdeal(K, T1, T2)
    return bt.BivariateConfig(m, Staircase.parse(args.stair))


def cmd_untangle(K, args):
    pm = _univariate_modulus(K, args)
    F = parse_poly(K, _text(args.F))
    if len(F) > pm.n:
        raise InputError(f"F must have degree < {pm.n}")
    J = untangle(F, pm)
    return format_kseq(pm.K, J), _tolist(pm.K.flatten(J))


def cmd_tangle(K, args):
    pm = _univariate_modulus(K, args)
    G = parse_kseq(pm.K, _text(args.G))
    if len(G) > pm.mu:
        raise InputError(f"jet has more than mu = {pm.mu} terms")
    G = upoly.pad(G, pm.mu)
    F = upoly.trim(tangle(G, pm))
    return format_poly(F), _tolist(F)


def cmd_powmod(K, args):
    P = parse_poly(K, _text(args.P))
    if upoly.degree(P) < 1:
        raise InputError("P must have degree at least 1")
    R = pow_x_mod(args.D, P, K)
    return format_poly(R), _tolist(R)


def cmd_biv_untangle(K, args):
    cfg = _config(K, args)
    F = parse_on_staircase(K, _text(args.F), cfg.SB)
    fn = {"auto": bt.biv_untangle, "shift": bt.biv_untangle_shift,
          "layered": bt.biv_untangle_layered}[args.variant]
    G = fn(F, cfg)
    return format_k_on_staircase(cfg.K, G, cfg.Jp), _tolist(cfg.K.flatten(G))


def cmd_biv_tangle(K, args):
    cfg = _config(K, args)
    G = parse_k_on_staircase(cfg.K, _text(args.G), cfg.Jp)
    F = bt.biv_tangle(G, cfg)
    return format_on_staircase(F, cfg.SB), _tolist(F)


def cmd_mono_mul(K, args):
    S = Staircase.parse(args.stair)
    F = parse_on_staircase(K, _text(args.F), S)
    G = parse_on_staircase(K, _text(args.G), S)
    H = st.mono_mul(K, F, G, S)
    return format_on_staircase(H, S), _tolist(H)


def cmd_mono_inv(K, args):
    S = Staircase.parse(args.stair)
    F = parse_on_staircase(K, _text(args.F), S)
    H = st.mono_inv(K, F, S)
    return format_on_staircase(H, S), _tolist(H)


def cmd_quot_mul(K, args):
    cfg = _config(K, args)
    F = parse_on_staircase(K, _text(args.F), cfg.SB)
    G = parse_on_staircase(K, _text(args.G), cfg.SB)
    H = bt.quot_mul(F, G, cfg)
    return format_on_staircase(H, cfg.SB), _tolist(H)


def cmd_quot_inv(K, args):
    cfg = _config(K, args)
    F = parse_on_staircase(K, _text(args.F), cfg.SB)
    H = bt.quot_inv(F, cfg)
    return format_on_staircase(H, cfg.SB), _tolist(H)


def cmd_bench(K, args):
    if args.min_exp > args.max_exp:
        raise InputError("--min-exp exceeds --max-exp")
    rows = benchmod.run_ladder(args.op, range(args.min_exp, args.max_exp + 1),
                               d=args.degree, runs=args.runs, p=K.p)
    text = "n,ms\n" + "\n".join(f"{n},{ms:.3f}" for n, ms in rows)
    return text, [{"n": n, "ms": ms} for n, ms in rows]


COMMANDS = {
    "untangle": cmd_untangle,
    "tangle": cmd_tangle,
    "powmod": cmd_powmod,
    "biv-untangle": cmd_biv_untangle,
    "biv-tangle": cmd_biv_tangle,
    "mono-mul": cmd_mono_mul,
    "mono-inv": cmd_mono_inv,
    "quot-mul": cmd_quot_mul,
    "quot-inv": cmd_quot_inv,
    "bench": cmd_bench,
}

# which characteristic hypothesis each command relies on
_CHAR_HYP = {"untangle": "H1", "tangle": "H1", "powmod": "H1", "bench": "H1",
             "biv-untangle": "H2", "biv-tangle": "H2", "quot-mul": "H2", "quot-inv": "H2"}

_VALUE_FLAGS = {"-T", "-F", "-G", "-P", "-D", "--T1", "--T2", "--stair", "--mu", "--prime"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, required=True, help="characteristic p (an odd prime)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")

    parser = argparse.ArgumentParser(
        prog="tangles",
        description="Untangling and tangling of polynomial quotient algebras over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, verb in (("untangle", "residue mod T^mu to its jet at alpha"),
                       ("tangle", "jet at alpha back to a residue mod T^mu")):
        p = add(name, verb)
        p.add_argument("-T", required=True, help="monic irreducible T, or - for stdin")
        p.add_argument("--mu", type=int, required=True)
        if name == "untangle":
            p.add_argument("-F", required=True, help="polynomial of degree < d*mu")
        else:
            p.add_argument("-G", required=True, help="jet as an element sequence")

    p = add("powmod", "x^D mod P")
    p.add_argument("-P", required=True)
    p.add_argument("-D", type=int, required=True)

    def add_config(p):
        p.add_argument("--T1", required=True, help="monic irreducible T1(x1)")
        p.add_argument("--T2", required=True, help="T2 as a bivariate polynomial, monic in x2")
        p.add_argument("--stair", required=True, help="monomial ideal J'")

    p = add("biv-untangle", "element of F[x1,x2]/I to K[xi1,xi2]/J'")
    add_config(p)
    p.add_argument("-F", required=True)
    p.add_argument("--variant", choices=("auto", "shift", "layered"), default="auto")
    p = add("biv-tangle", "element of K[xi1,xi2]/J' back to F[x1,x2]/I")
    add_config(p)
    p.add_argument("-G", required=True)

    p = add("mono-mul", "product modulo a monomial ideal")
    p.add_argument("--stair", required=True)
    p.add_argument("-F", required=True)
    p.add_argument("-G", required=True)
    p = add("mono-inv", "inverse modulo a monomial ideal")
    p.add_argument("--stair", required=True)
    p.add_argument("-F", required=True)

    p = add("quot-mul", "product in F[x1,x2]/I")
    add_config(p)
    p.add_argument("-F", required=True)
    p.add_argument("-G", required=True)
    p = add("quot-inv", "inverse in F[x1,x2]/I")
    add_config(p)
    p.add_argument("-F", required=True)

    p = add("bench", "median timings on a doubling ladder, as CSV")
    p.add_argument("--op", choices=benchmod.OPS, default="untangle")
    p.add_argument("--min-exp", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=14)
    p.add_argument("--degree", type=int, default=4, help="degree d of T for univariate ops")
    p.add_argument("--runs", type=int, default=5)
    return parser


def _normalize_argv(argv):
    # glue values that start with '-' (negative coefficients) to their flag,
    # and move options written before the subcommand after it
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"{tok}={val}")
        else:
            out.append(tok)
    for i, tok in enumerate(out):
        if tok in COMMANDS:
            front = [t for t in out[:i] if t.startswith("--prime") or t == "--json"]
            rest = [t for t in out[:i] if t not in front]
            return rest + [tok] + front + out[i + 1:]
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    _STDIN.clear()
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        K = PrimeField(args.prime)
        text, data = COMMANDS[args.command](K, args)
    except CharacteristicTooSmall as exc:
        hyp = _CHAR_HYP.get(args.command, "H1")
        print(f"tangles: precondition {hyp} violated: {exc}", file=stderr)
        return 3
    except (NotIrreducible, NotSeparable) as exc:
        print(f"tangles: precondition violated (modulus must be irreducible and separable): {exc}",
              file=stderr)
        return 3
    except PreconditionError as exc:
        print(f"tangles: precondition violated: {exc}", file=stderr)
        return 3
    except (TanglesError, ValueError, KeyError, OverflowError) as exc:
        print(f"tangles: bad input: {exc}", file=stderr)
        return 2
    if args.json:
        print(json.dumps({"command": args.command, "prime": args.prime, "result": data}), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
