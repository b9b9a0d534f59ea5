"""The command-line interface on the sample inputs in ``demos/data``.

Exit codes: 0 when the asserted identity holds, 2 for malformed input,
3 when a moment table is missing a word, 4 when an identity fails.
"""
import subprocess
import sys
from pathlib import Path

DATA = Path(__file__).parent / "data"

commands = [
    ["bnc", "lrllrrlrr"],
    ["cumulants", DATA / "moments_2pairs.json", "--chi", "lr"],
    ["fock", DATA / "fock_2pairs.json", "--n-max", "2"],
    ["check", DATA / "fock_4pairs.json", "--rep", "block", "--check", "biexchangeable", "--n-max", "3"],
    ["check", DATA / "fock_4pairs_corrupted.json", "--rep", "block", "--check", "biexchangeable"],
    ["check", "--rep", "block", "--check", "vanishing-sum"],
    ["check", DATA / "moments_shared_left.json", "--check", "bifree"],
    ["check", DATA / "bimodule_diag2.json", "--check", "bb-axioms"],
    ["draw", "[[1,3],[2]]", "lrl", "--twisted"],
]

for cmd in commands:
    argv = [sys.executable, "-m", "bifree"] + [str(c) for c in cmd]
    res = subprocess.run(argv, capture_output=True, text=True)
    print("$ bifree", " ".join(str(c).replace(str(DATA), "data") for c in cmd))
    print("\n".join(res.stdout.splitlines()[:8]))
    if res.stderr:
        print(res.stderr.strip())
    print(f"[exit {res.returncode}]\n")
