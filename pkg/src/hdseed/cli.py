"""Command-line entry points.

    hdseed bench mnist|lang|synth [flags]   run a benchmark, emit a report
    hdseed gen seq --seq KIND ...           export sequence points as CSV
    hdseed inspect memory PATH              summarize a saved memory file

Dataset files resolve against --data-dir, then the HDSEED_DATA_DIR
environment variable, then ./data.
"""

import argparse
import sys

from .bench import RunConfig, emit_report, report_orthogonality, run, \
    SOURCE_KINDS
from .encode import load_memory
from .sequences import point_set, scatter_export, centered_l2_discrepancy


def _add_bench_flags(p):
    p.add_argument("--dim", type=int, default=1024,
                   help="hypervector dimension D (default 1024)")
    p.add_argument("--seq", default="sobol", choices=SOURCE_KINDS,
                   help="hypervector source family (default sobol)")
    p.add_argument("--encoder", default="",
                   choices=["", "record", "ngram", "levelsum", "fracpow",
                            "rbf", "thermometer"],
                   help="encoder override (default: task-appropriate)")
    p.add_argument("--levels", type=int, default=256,
                   help="level count for flip-chain memories (default 256)")
    p.add_argument("--ngram", type=int, default=4,
                   help="n-gram size for the lang task (default 4)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--iterations", type=int, default=1,
                   help="repeats for stochastic sources (default 1)")
    p.add_argument("--epochs", type=int, default=0,
                   help="fixed-step retraining passes (default 0)")
    p.add_argument("--train-limit", type=int, default=0,
                   help="cap on training samples (0 = all)")
    p.add_argument("--test-limit", type=int, default=0,
                   help="cap on test samples (0 = all)")
    p.add_argument("--metric", default="hamming",
                   choices=["hamming", "cosine", "dot"])
    p.add_argument("--pos-encoder", default="item",
                   choices=["item", "fracpow"],
                   help="position code for images (default item memory)")
    p.add_argument("--threads", type=int, default=1,
                   help="encoder worker threads (default 1)")
    p.add_argument("--output", default="json", choices=["json", "csv"])
    p.add_argument("--out", default="", help="report path (default stdout)")
    p.add_argument("--data-dir", default="",
                   help="dataset root (fallback: $HDSEED_DATA_DIR, ./data)")
    p.add_argument("--raw-scores", action="store_true",
                   help="score queries against raw accumulators by cosine")


def build_parser():
    top = argparse.ArgumentParser(
        prog="hdseed",
        description="hyperdimensional computing benchmarks over "
                    "low-discrepancy, code-based, and random sources")
    sub = top.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a classification benchmark")
    bench_sub = bench.add_subparsers(dest="task", required=True)
    for task in ("mnist", "lang", "synth"):
        _add_bench_flags(bench_sub.add_parser(task))

    gen = sub.add_parser("gen", help="generate raw sequence data")
    gen_sub = gen.add_subparsers(dest="what", required=True)
    seq = gen_sub.add_parser("seq", help="export points of a sequence family")
    seq.add_argument("--seq", default="sobol", choices=SOURCE_KINDS)
    seq.add_argument("--count", "-n", type=int, default=1024)
    seq.add_argument("--point-dim", type=int, default=2,
                     help="coordinates per point (default 2)")
    seq.add_argument("--seed", type=int, default=1)
    seq.add_argument("--out", default="", help="CSV path (default stdout)")
    seq.add_argument("--discrepancy", action="store_true",
                     help="print centered-L2 discrepancy instead of points")

    ins = sub.add_parser("inspect", help="inspect saved artifacts")
    ins_sub = ins.add_subparsers(dest="what", required=True)
    mem = ins_sub.add_parser("memory", help="summarize an HDIM1 memory file")
    mem.add_argument("path")
    mem.add_argument("--rows", type=int, default=8,
                     help="weights to list (default 8)")
    return top


def _cmd_bench(args):
    cfg = RunConfig(
        task=args.task, seq=args.seq, encoder=args.encoder, dim=args.dim,
        levels=args.levels, ngram=args.ngram, seed=args.seed,
        iterations=args.iterations, epochs=args.epochs,
        train_limit=args.train_limit, test_limit=args.test_limit,
        metric=args.metric, pos_encoder=args.pos_encoder,
        threads=args.threads, output=args.output, out=args.out,
        data_dir=args.data_dir, raw_scores=args.raw_scores)
    report = run(cfg)
    text = emit_report(report, cfg.output, cfg.out or None)
    if not cfg.out:
        sys.stdout.write(text)
    return 0


def _cmd_gen_seq(args):
    if args.seq in ("hadamard", "gold", "kasami", "lfsr"):
        sys.stderr.write("gen seq exports unit-interval families; "
                         "code families emit bits, not points\n")
        return 2
    pts = point_set(args.seq, args.count, args.point_dim, seed=args.seed)
    if args.discrepancy:
        sys.stdout.write(f"{centered_l2_discrepancy(pts):.6f}\n")
        return 0
    if args.out:
        scatter_export(pts, args.out)
    else:
        names = ("x", "y", "z")
        header = ",".join(names[k] if k < 3 else f"c{k}"
                          for k in range(pts.shape[1]))
        sys.stdout.write(header + "\n")
        for row in pts:
            sys.stdout.write(",".join(f"{v:.17g}" for v in row) + "\n")
    return 0


def _cmd_inspect_memory(args):
    mem = load_memory(args.path)
    bits = mem.bits()
    stats = report_orthogonality(bits)
    weights = bits.sum(axis=1)
    sys.stdout.write(f"dim {mem.dim}, {len(mem)} rows\n")
    sys.stdout.write(
        f"weights: min {weights.min()} mean {weights.mean():.1f} "
        f"max {weights.max()}\n")
    sys.stdout.write(
        f"pairwise |cosine|: mean {stats['mean_abs_cosine']:.4f} "
        f"max {stats['max_abs_cosine']:.4f}\n")
    for k in range(min(args.rows, len(mem))):
        sys.stdout.write(f"  row {k}: weight {weights[k]}\n")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "gen":
        return _cmd_gen_seq(args)
    if args.command == "inspect":
        return _cmd_inspect_memory(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
