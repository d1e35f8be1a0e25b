"""Desk-scale verification: fuzz the theorem, search for extremal trees,
scan the open conjectures.

The fuzz driver solves, decomposes, and certifies a documented corpus of
generated trees and aborts on any violated bound. The extremal search
climbs toward high-value instances (re-verifying every improvement with
the second backend), and the conjecture scans measure the exact maxima
for uniform trees and weighted cycles.
"""

from tronlab import (
    SearchConfig,
    conjecture_scan,
    extremal_search,
    run_theorem_corpus,
)

print("Fuzzing 150 corpus trees (solve + decompose + certify each)...")
summary = run_theorem_corpus(150)
print(f"  instances: {summary.instances}, violations: {summary.violations}")
print(f"  max delta seen: {summary.max_delta} (the theorem caps trees at 1/5)")
interesting = {k: v for k, v in sorted(summary.firings.items()) if "case" in k or "dash" in k or "split" in k}
print(f"  conditional bounds fired: {interesting}")

print("\nSearching for Bob-friendly trees (budget 1200 evaluations)...")
result = extremal_search(SearchConfig(budget=1200, seed=0))
print(f"  best delta: {result.best_delta} after {result.evaluations} evaluations")
print("  improvement trace:", list(result.trace))
print(result.best_instance)

print("Scanning uniform trees n <= 9 (conjectured ceiling 1/10)...")
trees = conjecture_scan("unweighted_trees", n_max=9)
print(f"  {trees.evaluated} shapes, max delta {trees.max_delta}, findings {len(trees.findings)}")

print("\nScanning weighted cycles n <= 12 (conjectured ceiling 1/5)...")
cycles = conjecture_scan("cycles", n_max=12, samples=120, seed=1)
print(f"  {cycles.evaluated} instances, max delta {cycles.max_delta}, findings {len(cycles.findings)}")
print("A finding above a ceiling would be serialized and reported as a research result.")
