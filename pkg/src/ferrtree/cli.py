"""Command-line interface: encode, optimize, validate, metrics, scatter,
qdrift and bench subcommands over the file formats of the library.

Every subcommand is a pure function of its input files, flags and seed;
outputs are written deterministically (bench's measured-runtime column is
the one necessarily non-reproducible field).  Exit codes: 0 success,
1 validation failure, 2 bad input file, 3 argument error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import baselines, qdrift, topphatt
from .encodings import (Encoding, EncodingError, strings_from_tree, validate)
from .hamiltonians import (HamiltonianFileError, encode as encode_h,
                           lambda_norm, load_any, save_qubit, weight_metrics)
from .trees import (TreeError, TreeFileError, build_bonsai, build_standard,
                    load_device, load_tree, naive_tree, save_tree)

STANDARD_TREES = ("jw", "parity", "bk", "jkmn")
DEFAULT_EPSILON = 1e-3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message, 3)


def _add_common(p: _Parser):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--deterministic", action="store_true",
                   help="require --seed (CI mode)")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("FERRTREE_THREADS", "0"))
                   or os.cpu_count() or 1,
                   help="worker threads for sample-parallel steps "
                        "(default: available parallelism; outputs are "
                        "invariant to this)")
    p.add_argument("--pretty", action="store_true",
                   help="also print a human-readable summary")


def _resolve_tree(args, n_modes: int):
    """Tree from --tree name/file, or Bonsai from --device."""
    name = getattr(args, "tree", None)
    device_path = getattr(args, "device", None)
    if device_path:
        graph = load_device(device_path)
        heuristic = {"het": "heterogeneous", "homo": "homogeneous"}.get(
            args.heuristic, args.heuristic)
        tree, _ = build_bonsai(graph, heuristic, n_modes=n_modes)
        return tree
    if name is None:
        raise CliError("one of --tree or --device is required", 3)
    if name.lower() in STANDARD_TREES:
        return build_standard(name.lower(), n_modes)
    return load_tree(name)


def _load_hamiltonian(path):
    return load_any(path)


def _require_seed(args):
    if args.deterministic and args.seed is None:
        raise CliError("--deterministic requires --seed", 3)
    if args.seed is not None and args.seed < 0:
        raise CliError("--seed must be non-negative", 3)
    return 0 if args.seed is None else args.seed


def _write_json(doc, path):
    with open(path, "w") as f:
        json.dump(doc, f, sort_keys=True)
        f.write("\n")


# -- subcommands -------------------------------------------------------------


def cmd_encode(args) -> int:
    h, info = _load_hamiltonian(args.hamiltonian)
    tree = _resolve_tree(args, h.n_modes)
    if not tree.leaves_indexed():
        tree = naive_tree(tree)
    enc = strings_from_tree(tree)
    enc.save(args.out_encoding)
    if args.out_qubit_hamiltonian:
        save_qubit(encode_h(h, enc.strings), args.out_qubit_hamiltonian)
    if args.pretty:
        print(f"encoded {info.get('n_terms')} Majorana terms on "
              f"{h.n_modes} modes -> {args.out_encoding}")
    return 0


def cmd_optimize(args) -> int:
    seed = _require_seed(args)
    h, _ = _load_hamiltonian(args.hamiltonian)
    tree = _resolve_tree(args, h.n_modes)
    t0 = time.perf_counter()
    if args.method == "topphatt":
        result = topphatt.optimize(h, tree)
        out_tree, scheme, trace = result.tree, result.scheme, result.trace
    elif args.method == "sa":
        scheme = baselines.simulated_annealing(
            tree, h, initial_temperature=args.sa_temperature,
            cooling=args.sa_cooling, steps=args.sa_steps, seed=seed)
        from .encodings import apply_enumeration_tree
        out_tree = apply_enumeration_tree(naive_tree(tree), scheme)
        trace = []
    elif args.method == "brute":
        scheme, _best = baselines.brute_force(tree, h)
        from .encodings import apply_enumeration_tree
        out_tree = apply_enumeration_tree(naive_tree(tree), scheme)
        trace = []
    else:
        raise CliError(f"unknown method {args.method}", 3)
    runtime = time.perf_counter() - t0
    if args.out_tree:
        save_tree(out_tree, args.out_tree)
    enc = strings_from_tree(out_tree)
    if args.out_encoding:
        enc.save(args.out_encoding)
    if args.trace:
        topphatt.write_trace(trace, args.trace)
    if args.pretty:
        wm = weight_metrics(encode_h(h, enc.strings))
        print(f"{args.method}: W_P={wm.w_p:.0f} W_CP={wm.w_cp:.4f} "
              f"({runtime:.3f}s)")
    return 0


def cmd_validate(args) -> int:
    enc = Encoding.load(args.encoding)
    report = validate(enc)
    if args.report:
        with open(args.report, "w") as f:
            f.write(report.to_json() + "\n")
    if args.pretty or not args.report:
        print(report.to_json())
    return 0 if report.valid else 1


def cmd_metrics(args) -> int:
    h, info = _load_hamiltonian(args.hamiltonian)
    doc = {
        "n_modes": h.n_modes,
        "n_terms_majorana": len(h),
        "source_format": info.get("format"),
    }
    if "n_terms_fermionic" in info:
        doc["n_terms_fermionic"] = info["n_terms_fermionic"]
    if args.encoding or args.tree or args.device:
        if args.encoding:
            enc = Encoding.load(args.encoding)
        else:
            tree = _resolve_tree(args, h.n_modes)
            if not tree.leaves_indexed():
                tree = naive_tree(tree)
            enc = strings_from_tree(tree)
        hq = encode_h(h, enc.strings)
        wm = weight_metrics(hq, include_identity=args.include_identity)
        doc.update({
            "n_terms_qubit": len(hq),
            "w_p": wm.w_p,
            "w_cp": wm.w_cp,
            "avg_w_p": wm.avg_w_p,
            "avg_w_cp": wm.avg_w_cp,
            "lambda": lambda_norm(hq),
            "max_imag": hq.max_imag(),
        })
    if args.out:
        _write_json(doc, args.out)
    if args.pretty or not args.out:
        print(json.dumps(doc, sort_keys=True))
    return 0


def cmd_scatter(args) -> int:
    seed = _require_seed(args)
    h, _ = _load_hamiltonian(args.hamiltonian)
    tree = _resolve_tree(args, h.n_modes)
    ev = baselines.EnumerationEvaluator(tree, h)
    n = args.samples

    def one(i: int):
        rng = np.random.default_rng(seed ^ i)
        perm = rng.permutation(ev.n_modes)
        _, _, avg_wp, avg_wcp = ev.evaluate(perm)
        return i, avg_wp, avg_wcp

    workers = args.threads or 1
    if workers > 1 and n:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = sorted(pool.map(one, range(n)))
    else:
        rows = [one(i) for i in range(n)]

    _, _, naive_wp, naive_wcp = ev.evaluate(np.arange(ev.n_modes))
    sa_scheme = baselines.simulated_annealing(
        tree, h, steps=args.sa_steps, seed=seed)
    _, _, sa_wp, sa_wcp = ev.evaluate(sa_scheme.mode_assignment)
    th = topphatt.optimize(h, tree)
    _, _, th_wp, th_wcp = ev.evaluate(th.scheme.mode_assignment)

    with open(args.out, "w") as f:
        f.write("sample_id,avg_wp,avg_wcp\n")
        for i, wp, wcp in rows:
            f.write(f"{i},{wp!r},{wcp!r}\n")
        f.write(f"naive,{naive_wp!r},{naive_wcp!r}\n")
        f.write(f"sa,{sa_wp!r},{sa_wcp!r}\n")
        f.write(f"topphatt,{th_wp!r},{th_wcp!r}\n")
    if args.pretty:
        print(f"{n} samples -> {args.out}; naive avg W_P {naive_wp:.3f}, "
              f"TOPP-HATT {th_wp:.3f}")
    return 0


def _encoding_pairs(args, h):
    """(name, naive encoding, optimized encoding) per requested family."""
    names = [s.strip() for s in args.encodings.split(",") if s.strip()]
    out = []
    for name in names:
        if name.startswith("bonsai"):
            if not args.device:
                raise CliError(f"encoding {name} requires --device", 3)
            heuristic = ("heterogeneous" if name.endswith(("het", "heterogeneous"))
                         else "homogeneous")
            graph = load_device(args.device)
            tree, _ = build_bonsai(graph, heuristic, n_modes=h.n_modes)
        elif name.lower() in STANDARD_TREES:
            tree = build_standard(name.lower(), h.n_modes)
        else:
            tree = load_tree(name)
        naive_enc = strings_from_tree(naive_tree(tree))
        opt_enc = strings_from_tree(topphatt.optimize(h, tree).tree)
        out.append((name, naive_enc, opt_enc))
    return out


def cmd_qdrift(args) -> int:
    seed = _require_seed(args)
    h, _ = _load_hamiltonian(args.hamiltonian)
    ts = [args.t]
    if args.t_max is not None:
        ts = list(np.linspace(args.t, args.t_max, args.t_steps))
    rows = []
    dump_lines = []
    for name, naive_enc, opt_enc in _encoding_pairs(args, h):
        for variant, enc in (("naive", naive_enc), ("topphatt", opt_enc)):
            hq = encode_h(h, enc.strings)
            for t in ts:
                stats = qdrift.depth_stats(hq, float(t), args.epsilon,
                                           args.shots, seed,
                                           threads=args.threads or 1)
                rows.append((name, variant, float(t), args.epsilon,
                             stats.n_circuits, stats.mean_depth,
                             stats.std_depth))
            if args.dump_circuits:
                circ = qdrift.sample_circuit(hq, float(ts[0]), args.epsilon,
                                             (seed, 0))
                for g in circ.gates:
                    if isinstance(g, qdrift.BasisChange):
                        dump_lines.append(f"{name},{variant},BC,{g.qubit},{g.axis}")
                    elif isinstance(g, qdrift.Entangler):
                        dump_lines.append(
                            f"{name},{variant},CX,{g.control},{g.target}")
                    else:
                        dump_lines.append(
                            f"{name},{variant},RZ,{g.qubit},{g.angle!r}")
    with open(args.out, "w") as f:
        f.write("encoding,variant,t,epsilon,n,mean_depth,std_depth\n")
        for name, variant, t, eps, n, mean, std in rows:
            f.write(f"{name},{variant},{t!r},{eps!r},{n},{mean!r},{std!r}\n")
    if args.dump_circuits:
        with open(args.dump_circuits, "w") as f:
            f.write("\n".join(dump_lines) + "\n")
    if args.pretty:
        for name in {r[0] for r in rows}:
            naive = [r for r in rows if r[0] == name and r[1] == "naive"]
            opt = [r for r in rows if r[0] == name and r[1] == "topphatt"]
            red = 100 * (1 - opt[0][5] / naive[0][5]) if naive[0][5] else 0.0
            print(f"{name}: untranspiled mean depth {naive[0][5]:.1f} -> "
                  f"{opt[0][5]:.1f} ({red:.1f}% reduction)")
    return 0


def cmd_bench(args) -> int:
    _require_seed(args)
    names = [s.strip() for s in args.encodings.split(",") if s.strip()]
    # absorb one-off jit-cache loading before anything is timed
    from .hamiltonians import MajoranaHamiltonian
    topphatt.optimize(MajoranaHamiltonian(2, {(0, 1): 1.0, (0, 3): 1.0}),
                      build_standard("jw", 2))
    rows = []
    for path in args.hamiltonians:
        h, info = _load_hamiltonian(path)
        stem = Path(path).stem
        for name in names:
            if name.lower() not in STANDARD_TREES:
                raise CliError(f"bench supports standard trees, got {name}", 3)
            tree = build_standard(name.lower(), h.n_modes)
            t0 = time.perf_counter()
            topphatt.optimize(h, tree)
            runtime = time.perf_counter() - t0
            rows.append((stem, h.n_modes,
                         info.get("n_terms_fermionic", info.get("n_terms")),
                         len(h), name, runtime))
    with open(args.out, "w") as f:
        f.write("fixture,n_modes,n_terms,n_terms_majorana,encoding,runtime_s\n")
        for stem, m, nt, nm, name, rt in rows:
            f.write(f"{stem},{m},{nt},{nm},{name},{rt!r}\n")
    if args.pretty:
        for stem, m, nt, nm, name, rt in rows:
            print(f"{stem:>16s} M={m:<3d} |H|={nt:<7d} {name:<6s} {rt:.4f}s")
    return 0


# -- wiring ------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="ferrtree",
                description="ternary-tree fermion-qubit encoding toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="tree + Hamiltonian -> encoding files")
    enc.add_argument("--tree")
    enc.add_argument("--device")
    enc.add_argument("--heuristic", default="heterogeneous")
    enc.add_argument("--hamiltonian", required=True)
    enc.add_argument("--out-encoding", required=True)
    enc.add_argument("--out-qubit-hamiltonian")
    _add_common(enc)
    enc.set_defaults(func=cmd_encode)

    opt = sub.add_parser("optimize", help="optimize the mode enumeration")
    opt.add_argument("--method", default="topphatt",
                     choices=("topphatt", "sa", "brute"))
    opt.add_argument("--tree")
    opt.add_argument("--device")
    opt.add_argument("--heuristic", default="heterogeneous")
    opt.add_argument("--hamiltonian", required=True)
    opt.add_argument("--out-tree")
    opt.add_argument("--out-encoding")
    opt.add_argument("--trace")
    opt.add_argument("--sa-steps", type=int, default=None)
    opt.add_argument("--sa-cooling", type=float, default=0.995)
    opt.add_argument("--sa-temperature", type=float, default=None)
    _add_common(opt)
    opt.set_defaults(func=cmd_optimize)

    val = sub.add_parser("validate", help="validate an encoding file")
    val.add_argument("--encoding", required=True)
    val.add_argument("--report")
    _add_common(val)
    val.set_defaults(func=cmd_validate)

    met = sub.add_parser("metrics", help="weight metrics and term counts")
    met.add_argument("--hamiltonian", required=True)
    met.add_argument("--tree")
    met.add_argument("--device")
    met.add_argument("--heuristic", default="heterogeneous")
    met.add_argument("--encoding")
    met.add_argument("--include-identity", action="store_true")
    met.add_argument("--out")
    _add_common(met)
    met.set_defaults(func=cmd_metrics)

    sca = sub.add_parser("scatter", help="random-enumeration weight scatter")
    sca.add_argument("--tree")
    sca.add_argument("--device")
    sca.add_argument("--heuristic", default="heterogeneous")
    sca.add_argument("--hamiltonian", required=True)
    sca.add_argument("--samples", type=int, default=1000)
    sca.add_argument("--sa-steps", type=int, default=None)
    sca.add_argument("--out", required=True)
    _add_common(sca)
    sca.set_defaults(func=cmd_scatter)

    qd = sub.add_parser("qdrift", help="qDRIFT depth statistics")
    qd.add_argument("--hamiltonian", required=True)
    qd.add_argument("--encodings", default="jw")
    qd.add_argument("--device")
    qd.add_argument("--t", type=float, required=True)
    qd.add_argument("--t-max", type=float, default=None)
    qd.add_argument("--t-steps", type=int, default=20)
    qd.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    qd.add_argument("--shots", type=int, default=1000)
    qd.add_argument("--dump-circuits")
    qd.add_argument("--out", required=True)
    _add_common(qd)
    qd.set_defaults(func=cmd_qdrift)

    ben = sub.add_parser("bench", help="optimizer runtime over fixtures")
    ben.add_argument("--hamiltonians", nargs="+", required=True)
    ben.add_argument("--encodings", default="jw,parity,bk,jkmn")
    ben.add_argument("--out", required=True)
    _add_common(ben)
    ben.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (HamiltonianFileError, TreeFileError, EncodingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
