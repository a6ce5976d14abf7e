"""Demo: screen candidate coefficient sets for admissibility.

Loads the reference material, reports its strong ellipticity margins,
then perturbs single coefficients to show how violations are named.

Run:
  python3 demos/screen_materials.py
"""

from pathlib import Path

from rayleighmt import (
    NotStronglyEllipticError,
    check_strong_ellipticity,
    load_material,
    mode_speeds,
    validate_coefficients,
)

MATERIALS = Path(__file__).resolve().parent.parent / "materials"


def main():
    M = load_material(MATERIALS / "reference.json")
    report = check_strong_ellipticity(M)
    print(f"reference material admissible: {report.passed}")
    print("margins (positive = satisfied):")
    for name, margin in report.margins.items():
        print(f"  {name:36s} {margin: .6g}")

    print()
    print("single-coefficient perturbations:")
    raw = M.to_dict()
    for field, value in (("mu", 0.2), ("d3", -2.3), ("eps2", 1.2), ("rho", -1.0)):
        bad = validate_coefficients(dict(raw, **{field: value}))
        rep = check_strong_ellipticity(bad)
        print(f"  {field}={value}: violated {list(rep.violations)}")

    # mode_speeds refuses inadmissible input, so screening catches bad
    # coefficient sets before any wave computation starts
    bad = validate_coefficients(dict(raw, mu=0.2))
    try:
        mode_speeds(bad)
    except NotStronglyEllipticError as exc:
        print(f"\nmode_speeds rejected the perturbed set: {exc}")


if __name__ == "__main__":
    main()
