#!/usr/bin/env python3
"""Produce the standard fixture gallery: one analyze record and one
normal-plane SVG per reference surface, plus locus extractions where the
surface has something to show.

Usage:
    python scripts/fixture_gallery.py [outdir]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from monge4.cli import run  # noqa: E402

SURFACES = {
    "segment": ("x^2", "y^2", "-1 1 -1 1"),
    "umbilic": ("x^2 - y^2", "2*x*y", "-1 1 -1 1"),
    "inflection_imaginary": ("x^2 + 3*y^2", "x^3/3 + x*y^2", "-0.5 0.5 -0.5 0.5"),
    "parabolic": ("x^2", "2*x*y", "-1 1 -1 1"),
    "fold": ("x^2 + y^3", "2*x*y", "-0.5 0.5 -0.5 0.5"),
    "hyperbolic": ("1.5*x^2 + 0.5*y^2", "2*x*y", "-1 1 -1 1"),
    "inflection_real": ("x^2 - y^2", "x^3/3 + x*y^2", "-0.5 0.5 -0.5 0.5"),
    "parabolic_loop": ("x^2 - y^2 - x^4 - 2*x^2*y^2 - y^4", "2*x*y",
                       "-1 1 -1 1"),
}


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (phi, psi, domain) in SURFACES.items():
        surf = outdir / f"{name}.surf"
        surf.write_text(f"phi = {phi}\npsi = {psi}\ndomain = {domain}\n",
                        encoding="utf-8")
        print(f"== {name} ==")
        with open(outdir / f"{name}.txt", "w", encoding="utf-8") as fh:
            run(["analyze", "--surface", str(surf), "--at", "0,0"], out=fh)
        run(["plot", "--surface", str(surf), "--at", "0,0",
             "--out", str(outdir / f"{name}.svg")])
        run(["trace", "--surface", str(surf), "--res", "128",
             "--out", str(outdir / f"{name}_parabolic.csv")])
        code = run(["inflections", "--surface", str(surf), "--res", "256"])
        print(f"   wrote {name}.txt / {name}.svg / {name}_parabolic.csv "
              f"(inflections exit {code})")


if __name__ == "__main__":
    main()
