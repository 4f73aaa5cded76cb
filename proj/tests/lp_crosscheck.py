# Copyright 2026 The bandopt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solve exported LP models with an external MILP solver (HiGHS via scipy)
and compare against the enumeration result.

usage: lp_crosscheck.py <bandopt executable> <work dir>
"""

import json
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def terms(lhs):
    """Yields (coefficient, variable) from '+ 2 x - y ...'."""
    sign, coef = 1.0, 1.0
    for tok in lhs.split():
        if tok in ("+", "-"):
            sign, coef = (1.0 if tok == "+" else -1.0), 1.0
        elif re.fullmatch(r"[A-Za-z_]\w*", tok):
            yield sign * coef, tok
            sign, coef = 1.0, 1.0
        else:
            coef = float(tok)


def parse_lp(text):
    """Returns (variables, rows, binaries) for the subset of LP format the
    exporter writes. rows are (coefs dict, sense, rhs)."""
    lines = [l for l in text.splitlines() if not l.startswith("\\")]
    section, rows, binaries, current = None, [], [], None
    for line in lines:
        head = line.strip()
        if head in ("Minimize", "Subject To", "Bounds", "Binaries", "End"):
            section = head
            continue
        if section == "Subject To":
            if line.startswith("   ") and current is not None:
                current += " " + head
            else:
                if current is not None:
                    rows.append(current)
                current = head
        elif section == "Binaries":
            binaries += head.split()
    if current is not None:
        rows.append(current)

    parsed = []
    for row in rows:
        _, body = row.split(":", 1)
        m = re.search(r"(<=|>=|=)\s*(\S+)\s*$", body)
        lhs, sense, rhs = body[: m.start()], m.group(1), float(m.group(2))
        coefs = {}
        for c, var in terms(lhs):
            coefs[var] = coefs.get(var, 0.0) + c
        parsed.append((coefs, sense, rhs))
    variables = sorted({v for coefs, _, _ in parsed for v in coefs} | set(binaries))
    return variables, parsed, set(binaries)


def solve_lp(path):
    variables, rows, binaries = parse_lp(Path(path).read_text())
    index = {v: k for k, v in enumerate(variables)}
    a = np.zeros((len(rows), len(variables)))
    lo, hi = np.full(len(rows), -np.inf), np.full(len(rows), np.inf)
    for r, (coefs, sense, rhs) in enumerate(rows):
        for v, c in coefs.items():
            a[r, index[v]] = c
        if sense in ("<=", "="):
            hi[r] = rhs
        if sense in (">=", "="):
            lo[r] = rhs
    c = np.zeros(len(variables))
    c[index["b"]] = 1.0
    integrality = np.array([1 if v in binaries else 0 for v in variables])
    upper = np.array([1.0 if v in binaries else np.inf for v in variables])
    res = milp(c, constraints=LinearConstraint(a, lo, hi), integrality=integrality,
               bounds=Bounds(np.zeros(len(variables)), upper),
               options={"mip_rel_gap": 0.0})
    if not res.success:
        raise RuntimeError(f"{path}: {res.message}")
    n = int(round(len(binaries) ** 0.5))
    perm = [0] * n
    for v, k in index.items():
        m = re.fullmatch(r"x_v(\d+)_i(\d+)", v)
        if m and res.x[k] > 0.5:
            perm[int(m.group(1))] = int(m.group(2))
    return res.fun, perm


def main():
    exe, work = sys.argv[1], Path(sys.argv[2])
    work.mkdir(parents=True, exist_ok=True)
    failures = 0
    for seed in (1, 2, 3):
        inst = work / f"n5-s{seed}.json"
        subprocess.run([exe, "gen", "--n", "5", "--seed", str(seed), "--out", inst], check=True)
        subprocess.run([exe, "solve", "--instance", inst, "--method", "brute",
                        "--out", work / f"brute{seed}.json"], check=True)
        brute = json.loads((work / f"brute{seed}.json").read_text())["objective"]
        for flags, tag in (([], "full"), (["--no-lb", "--no-sym"], "plain")):
            lp = work / f"n5-s{seed}-{tag}.lp"
            subprocess.run([exe, "export-lp", "--instance", inst, "--out", lp, *flags],
                           check=True)
            b, perm = solve_lp(lp)
            order = work / f"milp{seed}-{tag}.json"
            order.write_text(json.dumps({"schema": "bandopt-ordering/1", "perm": perm}))
            out = subprocess.run([exe, "eval", "--instance", inst, "--ordering", order],
                                 check=True, capture_output=True, text=True).stdout
            evaluated = float(re.search(r"weighted_bandwidth=(\S+)", out).group(1))
            ok = abs(evaluated - brute) <= 1e-9 * max(1.0, brute) and \
                abs(b - brute) <= 1e-6 * max(1.0, brute)
            print(f"{'ok ' if ok else 'BAD'} seed={seed} {tag}: milp b={b:.12g} "
                  f"ordering={evaluated:.12g} enumeration={brute:.12g}")
            failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
