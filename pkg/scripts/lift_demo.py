"""Lift a searched bad array along block powers and print it level by
level, followed by its badness report and extracted block.

    python scripts/lift_demo.py --selector tc --base 6 --arity 2 --omega 2 --depth 4
"""
import argparse
from dataclasses import dataclass

from deskbqo.barriers import ArrayTable, TruncatedBlock, badness_check, extract_block, lift_array
from deskbqo.qo import suborder
from deskbqo.search import find_bad_array
from deskbqo.tc import TCOrder, all_elements


@dataclass
class LiftConfig:
    base: int = 6
    arity: int = 2
    omega: int = 2
    depth: int = 4


def seeded_tc(cfg: LiftConfig) -> ArrayTable:
    # search through the table of the names, then read the witness back as names
    B = TruncatedBlock.uniform(cfg.base, cfg.arity)
    names = all_elements(cfg.omega)
    table = suborder(TCOrder(cfg.omega), names)
    rep = find_bad_array(B, table)
    if not rep["exists"]:
        raise SystemExit(f"no bad array on [{cfg.base}]^{cfg.arity} into tc:{cfg.omega}")
    values = {tuple(map(int, k.split(","))): names[int(v)] for k, v in rep["witness"].items()}
    return ArrayTable(B, TCOrder(cfg.omega), values)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, default in vars(LiftConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = LiftConfig(**vars(ap.parse_args()))
    f = seeded_tc(cfg)
    g = lift_array(f, "tc", cfg.depth)
    for n in range(1, cfg.depth + 1):
        cells = g.cells(n)
        if cells:
            print(f"level {n}: " + "  ".join(f"{''.join(map(str, s))}={g.values[s]}" for s in cells))
    rep = badness_check(g)
    print(f"good pairs: {len(rep['good_pairs'])}, dichotomy problems: {len(rep['dichotomy'])}")
    Bp, incomplete = extract_block(g, "urelement")
    print(f"extracted block: {sorted(Bp.elements)}")
    if incomplete:
        print(f"branches without an urelement inside the truncation: {len(incomplete)}")


if __name__ == "__main__":
    main()
