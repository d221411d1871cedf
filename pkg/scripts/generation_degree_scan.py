"""Smallest degree bound at which generator products span each coordinate-ring window."""
import argparse
import time
from dataclasses import dataclass

from chevalley import coordring as cr
from chevalley.errors import BudgetExceeded
from chevalley.rootdatum import load_datum


@dataclass(frozen=True)
class ScanConfig:
    presets: tuple = ("A1-sc", "A1-ad", "A2-sc", "B2-sc", "A2-ad")
    window: int = 1
    max_degree: int = 4
    budget: int = 100000


def scan(cfg: ScanConfig, name: str) -> tuple[int | None, list]:
    rd = load_datum(name)
    lams = rd.dominant_window(cfg.window)
    rows = []
    for d in range(cfg.max_degree + 1):
        start = time.monotonic()
        try:
            rep = cr.generation_check(rd, lams, d, cfg.budget)
        except BudgetExceeded:
            rows.append((d, "budget", None))
            return None, rows
        rows.append((d, rep.missing, round(time.monotonic() - start, 2)))
        if rep.passed:
            return d, rows
    return None, rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", default=",".join(ScanConfig.presets))
    ap.add_argument("--window", type=int, default=ScanConfig.window)
    ap.add_argument("--max-degree", type=int, default=ScanConfig.max_degree)
    ap.add_argument("--budget", type=int, default=ScanConfig.budget)
    ns = ap.parse_args()
    cfg = ScanConfig(tuple(ns.presets.split(",")), ns.window, ns.max_degree, ns.budget)
    for name in cfg.presets:
        degree, rows = scan(cfg, name)
        trail = ", ".join(f"d={d}: missing {m} ({t}s)" for d, m, t in rows)
        print(f"{name:6} window {cfg.window}: degree {degree}  [{trail}]")


if __name__ == "__main__":
    main()
