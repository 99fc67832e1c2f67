#!/usr/bin/env python3
"""Reproduce the S&P 500 shape fit from its published summary targets.

The daily-return data itself is not shipped; the fit is driven by the two
scale-free statistics reported for it (excess kurtosis 20, standardized peak
density 0.71).  Prints the traced solution and the local contour geometry.
"""

import numpy as np

from wrightdist.fit import FitTarget, contour_grid, trace_solution, std_peak_surface, exkurt_surface


def main():
    target = FitTarget(exkurt=20.0, std_peak=0.71)
    grid = contour_grid(target, alpha_range=(0.3, 2.0), k_range=(0.5, 12.0), resolution=200)
    res = trace_solution(target, grid)
    print(f"targets: exkurt={target.exkurt}, std_peak={target.std_peak}")
    print(f"solution: alpha={res.alpha:.4f}, k={res.k:.4f}")
    print(f"candidates: {res.diagnostics['candidates']}")
    print(f"residuals: peak={res.diagnostics['residual_std_peak']:.2e}, "
          f"exkurt={res.diagnostics['residual_exkurt']:.2e}")

    print("\nlocal surface around the solution:")
    for dk in (-0.3, 0.0, 0.3):
        row = []
        for da in (-0.05, 0.0, 0.05):
            a, k = res.alpha + da, res.k + dk
            row.append(f"({a:.2f},{k:.1f}): peak={float(std_peak_surface(a, k)):.3f} "
                       f"ek={float(exkurt_surface(a, k)):.1f}")
        print("  " + " | ".join(row))


if __name__ == "__main__":
    main()
