"""Compare the integrality lattice with the triangular-basis lattice for sl2 over growing windows."""
import argparse
import time
from dataclasses import dataclass

from chevalley import coordring as cr


@dataclass(frozen=True)
class LatticeConfig:
    max_window: int = 4


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-window", type=int, default=LatticeConfig.max_window)
    cfg = LatticeConfig(ap.parse_args().max_window)
    print("window  rank  kostant  triangular  equal  dual_equal  seconds")
    for w in range(cfg.max_window + 1):
        start = time.monotonic()
        rep = cr.kostant_compare_sl2(w)
        print(f"{w:6}  {rep.rank:4}  {rep.kostant_rank:7}  {rep.triangular_rank:10}  "
              f"{rep.equal!s:5}  {rep.dual_equal!s:10}  {time.monotonic() - start:7.2f}")


if __name__ == "__main__":
    main()
