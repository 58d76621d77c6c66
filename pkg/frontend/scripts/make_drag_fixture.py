#!/usr/bin/env python3
"""Regenerate tests/fixtures/drag_endpoints.json from the server implementation.

The UI's drag-preview weight must agree with the weight the server derives;
this script freezes 20 scripted drag endpoints with the authoritative values.
Run from the frontend/ directory with the Python package installed.
"""

import json
from pathlib import Path

import numpy as np

from latentcanvas.session import ReferencePlacement, SessionDocument

CONFIGS = [
    (1200.0, 800.0, None, None),
    (1000.0, 700.0, 0.0, 100.0),
    (800.0, 600.0, 50.0, 400.0),
    (1440.0, 900.0, 96.0, 500.0),
]


def main() -> None:
    rng = np.random.default_rng(909)
    cases = []
    for i in range(20):
        width, height, d_min, d_max = CONFIGS[i % len(CONFIGS)]
        doc = SessionDocument.create("fixture", width=width, height=height, d_min=d_min, d_max=d_max)
        state = doc.current
        x = float(rng.uniform(-0.2 * width, 1.2 * width))
        y = float(rng.uniform(-0.2 * height, 1.2 * height))
        placement = ReferencePlacement(image="ref", position=state.clamp((x, y)))
        cases.append(
            {
                "canvas": {"width": width, "height": height},
                "d_min": state.distance_model.d_min,
                "d_max": state.distance_model.d_max,
                "drop": {"x": x, "y": y},
                "server_weight": state.weight(placement),
            }
        )
    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "drag_endpoints.json"
    out.write_text(json.dumps(cases, indent=2))
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
