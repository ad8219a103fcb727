"""chem-ingest command line: fixture generation and figure rendering."""

from __future__ import annotations

import argparse
import sys

from .figures import render_depth_curve, render_depth_distribution, render_scatter
from .generate import BUILTIN_MOLECULES, MoleculeSpec, generate_hamiltonian


def main(argv=None):
    p = argparse.ArgumentParser(prog="chem-ingest")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="molecule manifest -> fermionic-1 file")
    gen.add_argument("molecule",
                     help="builtin name (h2, lih, h2o) or manifest JSON path")
    gen.add_argument("out")
    gen.set_defaults(func=_generate)

    for name, func in (("render-scatter", _scatter),
                       ("render-depth-curve", _curve),
                       ("render-depth-dist", _dist)):
        r = sub.add_parser(name)
        r.add_argument("csv")
        r.add_argument("out")
        if name == "render-depth-curve":
            r.add_argument("--encoding", default=None)
        r.set_defaults(func=func)

    args = p.parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001 - single user-facing surface
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _generate(args):
    if args.molecule in BUILTIN_MOLECULES:
        spec = BUILTIN_MOLECULES[args.molecule]()
    else:
        spec = MoleculeSpec.load(args.molecule)
    info = generate_hamiltonian(spec, args.out)
    print(f"{spec.name}: {info['n_modes']} modes, {info['n_terms']} terms, "
          f"E(SCF) = {info['scf_energy']:.6f} Ha -> {args.out}")


def _scatter(args):
    render_scatter(args.csv, args.out)
    print(f"wrote {args.out}")


def _curve(args):
    render_depth_curve(args.csv, args.out, args.encoding)
    print(f"wrote {args.out}")


def _dist(args):
    render_depth_distribution(args.csv, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    sys.exit(main())
