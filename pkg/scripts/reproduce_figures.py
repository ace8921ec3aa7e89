"""Write the 2 x 3 frontier sweep matrix (N_T in {8, 32}, SNR in {10, 20, 30} dB).

Each CSV holds both domains; plot capacity_bits vs crb_m2 for the
capacity/CRB curves and capacity_loss_nats vs crb_loss_ratio for the loss
curves. A dominance summary is printed per scenario.

    python scripts/reproduce_figures.py --out results/
"""
import argparse
from pathlib import Path

from ilac import cli
from ilac.config import load_scenario
from ilac.tradeoff import frontier_dominance

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="results")
    parser.add_argument("--grid", type=int, default=None)
    args = parser.parse_args()

    print("scenario            distance_m  freq_better  time_better  crossover_nats")
    for n in (8, 32):
        for g in (10, 20, 30):
            name = f"nt{n}_snr{g}db"
            argv = ["frontier", "--config", str(CONFIGS / f"{name}.cfg"),
                    "--out", args.out, "--name", f"{name}.csv"]
            if args.grid:
                argv += ["--grid", str(args.grid)]
            if cli.main(argv) != 0:
                raise SystemExit(f"frontier failed for {name}")
            s = load_scenario(CONFIGS / f"{name}.cfg")
            link = s.link()
            dom = frontier_dominance(link, s.config)
            cross = "-" if dom.crossover is None else f"{dom.crossover:.4g}"
            print(f"{name:<18} {link.distance:>11.1f} {dom.freq_fraction:>12.2f} "
                  f"{dom.time_fraction:>12.2f}  {cross}")


if __name__ == "__main__":
    main()
