#!/usr/bin/env python3
"""Generate the synthetic hourly year shipped as data/garver_hourly.csv.

365 days x 24 hours of demand level factors (D1..D5) and one wind capacity
factor (W3).  Everything is deterministic: a fixed linear congruential
generator supplies the noise, so rerunning this script reproduces the file
byte for byte.
"""

import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "garver_hourly.csv")

_state = 987654321


def rand():
    """Uniform [0, 1) from a 64-bit LCG (Knuth constants)."""
    global _state
    _state = (_state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
    return (_state >> 11) / float(1 << 53)


def demand_factor(day, hour, phase):
    # Two intra-day peaks (morning, evening), an annual season swing, and
    # mild noise; values stay comfortably inside (0.35, 1.0).
    daily = 0.16 * math.exp(-((hour - 8.5) ** 2) / 8.0) + 0.24 * math.exp(
        -((hour - 18.5) ** 2) / 10.0
    )
    season = 0.08 * math.cos(2.0 * math.pi * (day - 15) / 365.0 + phase)
    noise = 0.04 * (rand() - 0.5)
    return round(min(1.0, max(0.35, 0.58 + daily + season + noise)), 4)


def wind_factor(day, hour, gusty):
    # Windier at night and in winter; `gusty` is a per-day regime level that
    # makes some days calm and others strong across all hours.
    diurnal = 0.12 * math.cos(2.0 * math.pi * (hour - 3) / 24.0)
    season = 0.15 * math.cos(2.0 * math.pi * (day - 20) / 365.0)
    noise = 0.10 * (rand() - 0.5)
    return round(min(0.98, max(0.02, 0.20 + 0.55 * gusty + diurnal + season + noise)), 4)


def main():
    rows = ["day,hour,D1,D2,D3,D4,D5,W3"]
    for day in range(1, 366):
        gusty = rand()
        for hour in range(24):
            cells = [str(day), str(hour)]
            for k in range(5):
                cells.append(f"{demand_factor(day, hour, 0.3 * k):.4f}")
            cells.append(f"{wind_factor(day, hour, gusty):.4f}")
            rows.append(",".join(cells))
    with open(OUT, "w") as f:
        f.write("\n".join(rows) + "\n")
    print(f"wrote {OUT}: {len(rows) - 1} rows")


if __name__ == "__main__":
    main()
