"""How the time/frequency preference moves with the gNB gain folded into the link budget.

For a fixed SNR label the gain sets the UE distance, and the distance sets
the ToA/AoA balance of the position bound, which decides the preferred domain.

    python scripts/gain_sensitivity.py
"""
import numpy as np

from ilac import SystemConfig, build_link, distance_for_gamma
from ilac.tradeoff import frontier_dominance


def main():
    print("n_antennas  snr_db  gain_gnb  distance_m  freq_better")
    for n in (8, 32):
        for g in (10.0, 20.0, 30.0):
            for gain in (1.0, float(n)):
                cfg = SystemConfig(n_antennas=n, gain_gnb=gain)
                link = build_link(cfg, distance_for_gamma(cfg, g), g)
                frac = frontier_dominance(link, cfg).freq_fraction
                print(f"{n:>10} {g:>7.0f} {gain:>9.0f} {link.distance:>11.1f} {frac:>12.2f}")

    print("\ndistance sweep, N_T = 32 (distance given directly)")
    cfg = SystemConfig(n_antennas=32)
    for d in np.geomspace(50, 2000, 9):
        link = build_link(cfg, float(d))
        print(f"  {d:8.1f} m  freq_better={frontier_dominance(link, cfg).freq_fraction:.2f}")


if __name__ == "__main__":
    main()
