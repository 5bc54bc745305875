#!/usr/bin/env python3
"""Convergence study behind the eigenvalue-recovery and held-out tolerances.

Data: D^0.5 x = -x, eight trajectories from x0 in linspace(0.5, 2, 8) on
[0, 2]. For every kernel, width, regularization, step and eigenbasis the
script reports the eigenvalue closest to -1, the worst training relative L2
error and the held-out error at x0 = 1.25.

Run from the repository root after building:
    python3 tools/calibrate.py --build-dir build [--out calibration.csv]
"""

import argparse
import csv
import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np


def load_module(build_dir):
    try:
        import fracdmd  # installed wheel
        return fracdmd
    except ImportError:
        sys.path.insert(0, str(Path(build_dir) / "python"))
        import fracdmd
        return fracdmd


def relaxation_data(fd, q, dt, horizon=2.0):
    rhs = '{"type": "linear-1d", "lambda": -1}'
    return [fd.solve(q, rhs, [x0], horizon, dt) for x0 in np.linspace(0.5, 2.0, 8)]


def held_out_error(fd, model, q, dt, horizon=2.0, x0=1.25):
    times = np.arange(0.0, horizon + 0.5 * dt, dt)
    states, _ = model.predict([x0], times)
    exact = x0 * np.array([fd.mittag_leffler(q, -t**q).real for t in times])
    return float(np.linalg.norm(states[:, 0] - exact) / np.linalg.norm(exact))


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--build-dir", default="build")
    parser.add_argument("--out", help="optional CSV with every row")
    parser.add_argument("--quick", action="store_true", help="reference configuration plus a small sweep")
    args = parser.parse_args()
    fd = load_module(args.build_dir)

    q = 0.5
    kernels = ["gaussian:mu=0.5", "gaussian:mu=1", "gaussian:mu=2", "gaussian:mu=4", "expdot:mu=1", "expdot:mu=2"]
    regs = [1e-12, 1e-10, 1e-8, 1e-6]
    steps = [4e-3, 2e-3, 1e-3]
    bases = ["forward", "adjoint"]
    if args.quick:
        kernels, regs, steps = ["gaussian:mu=1", "expdot:mu=1"], [1e-10], [2e-3]

    data = {dt: relaxation_data(fd, q, dt) for dt in steps}
    rows = []
    header = ("kernel", "reg", "dt", "basis", "min|lam+1|", "max_train_err", "held_out_err", "seconds")
    print("{:<18} {:>8} {:>8} {:>8} {:>11} {:>13} {:>12} {:>8}".format(*header))
    for kernel, reg, dt, basis in itertools.product(kernels, regs, steps, bases):
        start = time.perf_counter()
        try:
            model = fd.decompose(data[dt], q, kernel=kernel, variant="fractional", reg=reg, basis=basis)
            eig = float(np.min(np.abs(model.eigenvalues + 1.0)))
            train = float(max(model.training_errors()))
            held = held_out_error(fd, model, q, dt)
        except fd.FracdmdError as exc:
            eig = train = held = math.nan
            print(f"  {kernel} reg={reg:g} dt={dt:g} {basis}: {exc}", file=sys.stderr)
        row = (kernel, reg, dt, basis, eig, train, held, time.perf_counter() - start)
        rows.append(row)
        print("{:<18} {:>8.0e} {:>8.0e} {:>8} {:>11.3e} {:>13.3e} {:>12.3e} {:>8.2f}".format(*row))

    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)


if __name__ == "__main__":
    main()
