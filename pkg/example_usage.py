#!/usr/bin/env python
"""
Example usage script for the Photon Exchange Workbench.

This script runs the closed-form witnesses, the coupling-scaling table and
the absorption experiment, then prints the CLI commands for the searches.
"""

import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from photon_exchange.dynamics import PulseSequence
from photon_exchange.observables import Variant, probe_report, scaling_table
from photon_exchange.optics import absorption_curve
from photon_exchange.sector import DickeModel
from photon_exchange.utils import ConfigManager, setup_logging


def main():
    """Run example experiments."""
    setup_logging(level="WARNING")

    print("=" * 70)
    print("Photon Exchange Workbench - Example Usage")
    print("=" * 70)
    print()

    print("Checking configuration...")
    config = ConfigManager()

    if not config.validate_config():
        print("\n❌ Configuration validation failed!")
        print("\nCheck the PHOTON_EXCHANGE_* variables in your environment or .env file")
        return 1

    print("✓ Configuration is valid")
    runtime = config.get_runtime_config()
    search = config.get_search_config()
    print(f"  - Threads: {runtime.threads}")
    print(f"  - Coupling bound: {search.coupling_bound}")
    print()

    # Single pulse on two atoms, one-mode probe
    model = DickeModel(n_atoms=2)
    print("1. Two atoms, one pulse g1 = 2:")
    for label, duration in (("3π/2", 3 * math.pi / 2), ("π/2", math.pi / 2)):
        seq = PulseSequence.from_segments([(2.0, 0.0, duration)])
        report = probe_report(seq, model, Variant.ONE_MODE)
        print(f"   t = {label:5s} φ_NL = {report.phi_nl:+.4f}  loss = {report.p_loss:.3f}")
    print()

    print("2. Collective two-photon coupling M(N), ε = 1:")
    for row in scaling_table([2, 4, 64, 1024]):
        print(f"   N = {row.n_atoms:5d}  M = {row.product:12.4f}  M(2N)/M(N) = {row.ratio:.5f}")
    print()

    print("3. Lossy beam splitter t = r = 1/2, absorption vs distinguishability:")
    for d, stats in absorption_curve(0.5, 0.5, [0.0, 0.5, 1.0]):
        p = stats.p_absorbed
        print(f"   d = {d:.1f}  P0 = {p[0]:.3f}  P1 = {p[1]:.3f}  P2 = {p[2]:.3f}")
    print()

    print("=" * 70)
    print("Searches (CLI):")
    print("=" * 70)
    print()
    print("   photon-exchange tradeoff --config tradeoff.yaml --out tradeoff.csv --threads 4")
    print("   photon-exchange nogo-cert --out nogo_cert.json")
    print("   photon-exchange ns --out ns.json --seed 0")
    print()

    return 0


if __name__ == "__main__":
    sys.exit(main())
