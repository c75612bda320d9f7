#!/usr/bin/env python3
"""
Complete Reference Validation Script
Checks every measure of holoscope against its closed form
"""
import math
import time

from lib.geometry import BulkGeometry
from lib.measures import (
    IntervalSet,
    Phase,
    entanglement_wedge_cross_section,
    mutual_information,
    negativity_proxy,
    tripartite_information,
)
from lib.minimal_surface import bulk_geodesic_distance, entropy_of_strip
from lib.rgflow import MeasureKind, SweepParameter, SweepSpec, locate_transition

EPS = 0.01


class ReferenceValidator:
    def __init__(self):
        self.results = {}
        self.vacuum = BulkGeometry.pure_ads()
        self.btz = BulkGeometry.black_brane(z_h=1.0)

    def header(self):
        print("\n" + "="*70)
        print("HOLOSCOPE REFERENCE VALIDATION")
        print("="*70)

    def check(self, label: str, actual: float, expected: float, tol: float) -> bool:
        ok = abs(actual - expected) <= tol
        status = "[OK]" if ok else "[FAIL]"
        print(f"  {status} {label}: {actual:.6f} (expected {expected:.6f} +/- {tol:g})")
        return ok

    def validate_strip_entropy(self):
        """Vacuum and BTZ strips against the log formulas"""
        print("\n[1] VALIDATING STRIP ENTROPY")
        print("-" * 40)

        ok = self.check("vacuum S(1)", entropy_of_strip(self.vacuum, 1.0, EPS).entropy,
                        2.0 * math.log(1.0 / EPS), 1e-6)
        worst = 0.0
        for ell in (0.1, 0.5, 1.0, 2.0, 4.0, 8.0):
            exact = 2.0 * math.log(2.0 / EPS * math.sinh(ell / 2.0))
            got = entropy_of_strip(self.btz, ell, EPS).entropy
            worst = max(worst, abs(got / exact - 1.0))
        print(f"  [INFO] BTZ worst relative error: {worst:.2e}")
        ok &= worst < 1e-6

        self.results['strip_entropy'] = 'PASS' if ok else 'FAIL'

    def validate_geodesics(self):
        """Closed-form bulk distances"""
        print("\n[2] VALIDATING GEODESICS")
        print("-" * 40)

        ok = self.check("hyperbolic (0,1)-(2,1)",
                        bulk_geodesic_distance(self.vacuum, (0.0, 1.0), (2.0, 1.0)),
                        2.0 * math.asinh(1.0), 1e-9)
        ok &= self.check("vertical 0.2-2.2",
                         bulk_geodesic_distance(self.vacuum, (0.0, 0.2), (0.0, 2.2)),
                         math.log(11.0), 1e-9)
        self.results['geodesics'] = 'PASS' if ok else 'FAIL'

    def validate_mutual_information(self):
        """MI value, phase and cutoff independence"""
        print("\n[3] VALIDATING MUTUAL INFORMATION")
        print("-" * 40)

        result = mutual_information(self.vacuum, (0.0, 1.0), (1.1, 2.1), EPS)
        ok = self.check("vacuum I", result.value, 2.0 * math.log(1.0 / 0.21), 1e-5)
        ok &= result.phase is Phase.CONNECTED
        fine = mutual_information(self.vacuum, (0.0, 1.0), (1.1, 2.1), EPS / 10).value
        ok &= self.check("cutoff drift", abs(result.value - fine), 0.0, 1e-6)

        spec = SweepSpec(
            parameter=SweepParameter.GAP_SIZE, start=0.1, stop=1.0, steps=10,
            geometry=self.vacuum, intervals=IntervalSet.from_lengths([1.0, 1.0], 0.1), eps=EPS,
        )
        start = time.perf_counter()
        root = locate_transition(spec, MeasureKind.MI, (0.1, 1.0))
        print(f"  [PERF] transition bisection: {(time.perf_counter() - start) * 1000:.0f}ms")
        ok &= self.check("transition gap", root, math.sqrt(2.0) - 1.0, 1e-6)

        self.results['mutual_information'] = 'PASS' if ok else 'FAIL'

    def validate_cross_section(self):
        """EWCS and the negativity proxy"""
        print("\n[4] VALIDATING CROSS-SECTION")
        print("-" * 40)

        ewcs = entanglement_wedge_cross_section(self.vacuum, (-2.2, -0.2), (0.2, 2.2))
        ok = self.check("E_W", ewcs, math.log(11.0), 1e-4)
        proxy = negativity_proxy(self.vacuum, (-2.2, -0.2), (0.2, 2.2)).value
        ok &= self.check("negativity proxy", proxy, 1.5 * math.log(11.0), 2e-4)
        x = math.sinh(2.0) ** 2 / (math.sinh(0.25) * math.sinh(4.25))
        btz_ewcs = entanglement_wedge_cross_section(self.btz, (0.0, 4.0), (4.5, 8.5))
        ok &= self.check("BTZ E_W", btz_ewcs, math.log(1.0 + 2.0 * x + 2.0 * math.sqrt(x * (x + 1.0))), 1e-6)
        ok &= entanglement_wedge_cross_section(self.vacuum, (0.0, 1.0), (2.0, 3.0)) == 0.0

        self.results['cross_section'] = 'PASS' if ok else 'FAIL'

    def validate_tripartite(self):
        """I3 of the reference triple"""
        print("\n[5] VALIDATING TRIPARTITE INFORMATION")
        print("-" * 40)

        i3 = tripartite_information(self.vacuum, (0.0, 1.0), (1.1, 2.1), (2.2, 3.2), EPS)
        ok = self.check("I3", i3, 2.0 * math.log(3.2 / 2.1**2), 1e-5)
        self.results['tripartite'] = 'PASS' if ok else 'FAIL'

    def generate_summary(self):
        """Generate final summary"""
        print("\n" + "="*70)
        print("VALIDATION SUMMARY")
        print("="*70)

        all_pass = True
        for test, result in self.results.items():
            symbol = "[OK]" if result == 'PASS' else "[FAIL]"
            print(f"  {symbol} {test}: {result}")
            if result == 'FAIL':
                all_pass = False

        print("\n" + "="*70)
        if all_pass:
            print("[SUCCESS] ALL VALIDATIONS PASSED!")
        else:
            print("[WARNING] SOME VALIDATIONS FAILED - CHECK ABOVE")
        print("="*70)

        return all_pass


def main():
    validator = ReferenceValidator()

    try:
        validator.header()
        validator.validate_strip_entropy()
        validator.validate_geodesics()
        validator.validate_mutual_information()
        validator.validate_cross_section()
        validator.validate_tripartite()
        return validator.generate_summary()

    except Exception as e:
        print(f"\n[ERROR] VALIDATION FAILED: {e}")
        return False

if __name__ == "__main__":
    success = main()
    exit(0 if success else 1)
