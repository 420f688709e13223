"""Largest N with a bad array on [N]^n into a finite target, for several targets.

    python scripts/threshold_sweep.py --arity 2 --targets antichain:2 antichain:3 --max 10
"""
import argparse
import json
from dataclasses import asdict, dataclass, field

from deskbqo.search import threshold
from deskbqo.syntax import parse_order


@dataclass
class SweepConfig:
    arity: int = 2
    targets: list[str] = field(default_factory=lambda: ["antichain:2", "antichain:3"])
    max_base: int = 10
    workers: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--arity", type=int, default=SweepConfig.arity)
    ap.add_argument("--targets", nargs="+", default=SweepConfig().targets)
    ap.add_argument("--max", dest="max_base", type=int, default=SweepConfig.max_base)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = SweepConfig(args.arity, args.targets, args.max_base, args.workers)
    rows = []
    for text in cfg.targets:
        rep = threshold(cfg.arity, parse_order(text), cfg.max_base, cfg.workers)
        rows.append(rep)
        if not args.json:
            nodes = " ".join(f"N={s['base']}:{s['nodes_expanded']}" for s in rep["sweep"])
            refuted = rep["refuted_at"] if rep["refuted_at"] is not None else f">{cfg.max_base}"
            print(f"{text:<20} threshold {rep['threshold']:<3} refuted at {refuted:<4} "
                  f"{rep['elapsed_ms'] / 1000:7.2f}s  nodes {nodes}")
    if args.json:
        print(json.dumps({"config": asdict(cfg), "results": rows}, indent=2))


if __name__ == "__main__":
    main()
