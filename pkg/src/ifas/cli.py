"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
parse or precondition errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .barhom import THEORIES, based_bar_apply, bar_apply, compute_homology, render_machine, \
    render_table, TensorElement
from .errors import CapExceeded, IfasError, NotBased, ParseError, RingNotRational
from .exactlinalg import Ring
from .factorize import factor_d_hplus, factor_delta_h, factor_reflexive
from .invalg import BUILTINS, builtin, load_algebra
from .ncsets import parse_morphism
from .verify import DEFAULT_SEED, SELECTORS, run_selector

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    max_n: int = 2
    sample_count: int = 1000
    rng_seed: int = DEFAULT_SEED
    ring: str | None = None
    algebra: str | None = None
    degrees: int = 3
    output_format: str = "human"

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("--samples must be at least 1")
        if self.degrees < 0:
            raise ValueError("--degrees must be nonnegative")
        if self.max_n < 0:
            raise ValueError("--max-n must be nonnegative")


def _emit(pairs, fmt, out):
    if fmt == "machine":
        for k, v in pairs:
            out.write(f"{k} = {v}\n")
    else:
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            out.write(f"{k.ljust(width)} : {v}\n")


def _read_morphism_lines(args):
    if args.morphism:
        return [(1, args.morphism)]
    return [(k, ln) for k, ln in enumerate(sys.stdin.read().splitlines(), start=1)
            if ln.strip() and not ln.lstrip().startswith("#")]


def cmd_factorize(args, out=None) -> int:
    out = out or sys.stdout
    ok = True
    blocks = 0
    for line_no, text in _read_morphism_lines(args):
        f = parse_morphism(text, line_no)
        dh = factor_delta_h(f)
        dhp = factor_d_hplus(dh.g)
        pairs = [("morphism", str(f)),
                 ("phi", " ".join(map(str, dh.phi)) + f" -> [{dh.target_m}]"),
                 ("g", dh.g.render()),
                 ("d", dhp.d.render()),
                 ("h", dhp.h.render())]
        rebuilt = dh.reconstruct() == f and dhp.reconstruct() == dh.g
        if args.based:
            if not f.is_based:
                raise NotBased(f"line {line_no}: {f} does not fix the basepoint")
            rf = factor_reflexive(f)
            pairs.append(("rho", str(rf.rho)))
            rebuilt = rebuilt and rf.reconstruct() == f
        pairs.append(("reconstruction", "ok" if rebuilt else "FAILED"))
        ok = ok and rebuilt
        if blocks:
            out.write("\n")
        _emit(pairs, args.format, out)
        blocks += 1
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    cfg = RunConfig("verify", args.max_n, args.samples, args.seed, output_format=args.format)
    results = run_selector(args.selector, cfg.max_n, cfg.sample_count, cfg.rng_seed)
    machine = cfg.output_format == "machine"
    if machine:
        out.write(f"selector = {args.selector}\nmax_n = {cfg.max_n}\n"
                  f"samples = {cfg.sample_count}\nseed = {cfg.rng_seed}\n")
    else:
        out.write(f"verify {args.selector} (max-n {cfg.max_n}, samples {cfg.sample_count}, "
                  f"seed {cfg.rng_seed})\n")
    for r in results:
        if machine:
            out.write(f"\ncheck = {r.name}\nstatus = {'pass' if r.passed else 'fail'}\n"
                      f"count = {r.checked}\ncounterexample = {r.counterexample or ''}\n")
        else:
            out.write(r.summary() + "\n")
            if r.counterexample:
                out.write(f"  first counterexample: {r.counterexample}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _load(args):
    source = args.algebra or "ground"
    if os.path.exists(source):
        a = load_algebra(source)
        if args.ring and Ring.parse(args.ring) != a.ring:
            raise IfasError(f"--ring {args.ring} conflicts with 'ring {a.ring}' in {source}")
        return a, source
    if source in BUILTINS:
        return builtin(source, Ring.parse(args.ring or "Q")), source
    raise IfasError(f"{source!r} is neither a file nor a builtin ({', '.join(BUILTINS)})")


def cmd_homology(args, out=None) -> int:
    out = out or sys.stdout
    a, label = _load(args)
    groups = compute_homology(args.theory, a, args.degrees)
    if args.format == "machine":
        out.write(render_machine(groups, {"theory": args.theory, "algebra": label,
                                          "ring": str(a.ring), "degrees": args.degrees}))
    else:
        out.write(f"{args.theory} homology of {label} over {a.ring}\n")
        out.write(render_table(groups) + "\n")
    return EXIT_OK


def cmd_bar(args, out=None) -> int:
    out = out or sys.stdout
    a, _ = _load(args)
    f = parse_morphism(args.morphism)
    idx = tuple(int(t) for t in args.tensor.split())
    x = TensorElement.basis(a.ring, a.dim, a.dim, idx)
    y = based_bar_apply(a, a.as_bimodule(), f, x) if args.based else bar_apply(a, f, x)
    names = a.basis_names
    terms = [f"{a.ring.format(c)} * " + " (x) ".join(names[k] for k in key)
             for key, c in sorted(y.coeffs.items())]
    out.write((" + ".join(terms) if terms else "0") + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ifas", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("human", "machine"), default="human")
    sub = p.add_subparsers(dest="command", required=True)

    fz = sub.add_parser("factorize", help="factor morphisms given in the text format")
    fz.add_argument("morphism", nargs="?", help="one morphism; read lines from stdin if omitted")
    fz.add_argument("--based", action="store_true", help="also give the reflexive factorisation")
    fz.set_defaults(func=cmd_factorize)

    vf = sub.add_parser("verify", help="run the factorisation and functoriality sweeps")
    vf.add_argument("selector", choices=SELECTORS + ("all",))
    vf.add_argument("--max-n", type=int, default=2)
    vf.add_argument("--samples", type=int, default=1000)
    vf.add_argument("--seed", type=int, default=DEFAULT_SEED)
    vf.set_defaults(func=cmd_verify)

    hm = sub.add_parser("homology", help="print a homology table")
    hm.add_argument("theory", choices=THEORIES)
    hm.add_argument("--algebra", help="algebra file, or a builtin name")
    hm.add_argument("--ring", help="Q, Z or F<p> (builtins only)")
    hm.add_argument("--degrees", type=int, default=3)
    hm.set_defaults(func=cmd_homology)

    br = sub.add_parser("bar", help="evaluate the bar construction on a basis tensor")
    br.add_argument("morphism")
    br.add_argument("--tensor", required=True, help="basis indices, e.g. '0 1'")
    br.add_argument("--algebra")
    br.add_argument("--ring")
    br.add_argument("--based", action="store_true", help="use R(A, A) instead of H_A")
    br.set_defaults(func=cmd_bar)

    for sp in (fz, vf, hm, br):
        sp.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("max_n", "samples", "degrees"):
        v = getattr(args, name, None)
        if v is not None and v < (1 if name == "samples" else 0):
            parser.error(f"--{name.replace('_', '-')} out of range: {v}")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
    except RingNotRational as exc:
        print(f"refused: {exc}", file=sys.stderr)
    except NotBased as exc:
        print(f"not based: {exc}", file=sys.stderr)
    except (IfasError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
