"""Run the verification suites over several presets and rings and write one JSON report each."""
import argparse
import json
import time
from dataclasses import dataclass, replace
from pathlib import Path

from chevalley import cli


@dataclass(frozen=True)
class SweepConfig:
    presets: tuple = ("A1-sc", "A1-ad", "A2-sc", "B2-sc")
    rings: tuple = ("fp:7", "q")
    suite: str = "group,weylmod,coord"
    window: int = 2
    seed: int = 0
    jobs: int = 1
    out_dir: str = "results/sweep"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", default=",".join(SweepConfig.presets))
    ap.add_argument("--rings", default=",".join(SweepConfig.rings))
    ap.add_argument("--suite", default=SweepConfig.suite)
    ap.add_argument("--window", type=int, default=SweepConfig.window)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--jobs", type=int, default=SweepConfig.jobs)
    ap.add_argument("--out-dir", default=SweepConfig.out_dir)
    ns = ap.parse_args()
    cfg = SweepConfig(tuple(ns.presets.split(",")), tuple(ns.rings.split(",")), ns.suite, ns.window,
                      ns.seed, ns.jobs, ns.out_dir)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    for datum in cfg.presets:
        for ring in cfg.rings:
            run = cli.RunConfig(datum=datum, ring=ring, window=cfg.window, suite=cfg.suite,
                                seed=cfg.seed, jobs=cfg.jobs)
            start = time.monotonic()
            code, report = cli.verify(run)
            elapsed = time.monotonic() - start
            path = out / f"{datum}_{ring.replace(':', '')}.json"
            path.write_text(cli.dumps(report))
            summary.append({"datum": datum, "ring": ring, "exit": code, "seconds": round(elapsed, 1)})
            print(f"{datum:6} {ring:6} exit={code} {elapsed:6.1f}s -> {path}")
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")


if __name__ == "__main__":
    main()
