#!/usr/bin/env python3
"""Writes the synthetic PUSCH BLER table shipped in data/.

Each (tbs, n_rep) curve is a log-linear waterfall with a slope of one
decade per 1.5 dB, anchored at the SNR where BLER crosses 10 %.
"""
import sys

SLOPE_DB_PER_DECADE = 1.5
OFFSETS_DB = range(-2, 5)

S10 = {
    504: {1: 9.0, 2: 6.5, 4: 3.5, 8: 0.3, 12: -1.8, 16: -4.2, 24: -5.6, 32: -6.8},
    144: {1: 5.5, 2: 2.5, 4: -0.5, 8: -4.0, 12: -5.9, 16: -7.1, 24: -8.8, 32: -10.0},
}


def main(out):
    out.write("# Synthetic PUSCH BLER curves, TDL-A-like fading, 180 kHz.\n")
    out.write("# bler = min(1, 0.1 * 10^(-(snr - s10) / %.1f)), s10 = 10%% crossing.\n" % SLOPE_DB_PER_DECADE)
    out.write("# Regenerate with tools/make_bler_table.py.\n")
    out.write("# tbs,n_rep,snr_db,bler\n")
    for tbs in sorted(S10):
        for n_rep, s10 in sorted(S10[tbs].items()):
            for d in OFFSETS_DB:
                bler = min(1.0, 0.1 * 10 ** (-d / SLOPE_DB_PER_DECADE))
                out.write("%d,%d,%s,%.6g\n" % (tbs, n_rep, round(s10 + d, 4), bler))


if __name__ == "__main__":
    main(sys.stdout)
