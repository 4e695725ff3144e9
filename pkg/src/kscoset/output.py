"""Building and rendering the CLI's output documents.

Every command produces one JSON-serializable document; the table and CSV
views are derived from that document alone, so a cached document renders
byte-identically to a fresh computation.  Rationals appear as "p/q"
strings and reals as decimal strings with 12 significant digits; floats
never enter the JSON payloads.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .affine import SPIN_KINDS, AffineWeight, SpinLabel, U1Charge, dominant_weights
from .coset import (
    CosetField,
    CosetSpec,
    ResolvedSpectrum,
    VacuumPairGroup,
    central_charge,
    u1_branching_weight,
    u1_coset_vacuum_pairs,
)
from .duality import DualityReport, Fingerprint
from .modular import (
    SMatrix,
    h_spin,
    h_su,
    h_u1,
    qdim,
    s_matrix_spin,
    s_matrix_su,
    s_matrix_u1,
)

SCHEMA_VERSION = "1"

__all__ = [
    "SCHEMA_VERSION",
    "rational_str",
    "real_str",
    "document",
    "spectrum_payload",
    "vp_group_payload",
    "duality_payload",
    "modular_payload",
    "u1_coset_payload",
    "payload_fingerprint",
    "render_json",
    "render",
]


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def real_str(x: float) -> str:
    return f"{x:.12g}"


def su_factor_name(rank_n: int, level: int) -> str:
    return f"su({rank_n})_{level}"


def spin_factor_name(half_dim: int) -> str:
    return f"so({2 * half_dim})_1"


def u1_factor_name(modulus: int) -> str:
    return f"u1({modulus})"


def su_label(w: AffineWeight) -> str:
    return f"{su_factor_name(w.rank_n, w.level)}:({','.join(map(str, w.labels))})"


def spin_label(s: SpinLabel) -> str:
    return f"{spin_factor_name(s.half_dim)}:{s.kind}"


def charge_label(c: U1Charge) -> str:
    return f"{u1_factor_name(c.modulus)}:{c.value}"


def coset_name(spec: CosetSpec) -> str:
    num = f"{su_factor_name(spec.big_rank, spec.k)} x {spin_factor_name(spec.spin_half_dim)}"
    den = " x ".join(
        (
            su_factor_name(spec.m, spec.first_level),
            su_factor_name(spec.n, spec.second_level),
            u1_factor_name(spec.u1_modulus),
        )
    )
    return f"G({spec.m},{spec.n},{spec.k}) = [{num}] / [{den}]"


def _field_labels(f: CosetField) -> dict:
    return {
        "lambda0": su_label(f.lambda0),
        "pi0": spin_label(f.pi0),
        "lambda1": su_label(f.lambda1),
        "lambda2": su_label(f.lambda2),
        "charge": charge_label(f.charge),
    }


def document(kind: str, payload: dict, spec: CosetSpec | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}
    doc["spec"] = (
        {"m": spec.m, "n": spec.n, "k": spec.k} if spec is not None else None
    )
    return doc


def spectrum_payload(spectrum: ResolvedSpectrum) -> dict:
    spec = spectrum.spec
    orbits = []
    for row in spectrum.rows:
        entry = _field_labels(row.representative)
        entry.update(
            {
                "orbit_size": row.orbit_size,
                "stabilizer_order": row.stabilizer_order,
                "h_mod1": rational_str(row.h_mod1),
                "dimension": real_str(row.dimension),
                "piece_dimension": real_str(row.dimension / row.stabilizer_order),
            }
        )
        orbits.append(entry)
    return {
        "coset": coset_name(spec),
        "central_charge": rational_str(spectrum.central_charge),
        "field_count": spectrum.field_count,
        "vp_group_order": spectrum.vp_group_order,
        "orbit_count": len(spectrum.rows),
        "irrep_count": spectrum.irrep_count,
        "orbits": orbits,
    }


def vp_group_payload(group: VacuumPairGroup, verification: dict | None = None) -> dict:
    payload = {
        "coset": coset_name(group.spec),
        "order": group.order,
        "elements": [
            {"j": w.j, "i": w.i, **_field_labels(w.image)} for w in group.elements
        ],
    }
    if verification is not None:
        payload["verification"] = verification
    return payload


def duality_payload(report: DualityReport) -> dict:
    return {
        "left": {"m": report.left.m, "n": report.left.n, "k": report.left.k},
        "right": {"m": report.right.m, "n": report.right.n, "k": report.right.k},
        "verdict": report.verdict,
        "checks": [
            {
                "name": c.name,
                "equal": c.equal,
                "left": c.left,
                "right": c.right,
                "detail": c.detail,
            }
            for c in report.checks
        ],
    }


def modular_payload(factor: str, labels: list[str], hs: list[Fraction], s: SMatrix) -> dict:
    return {
        "factor": factor,
        "size": s.dimension,
        "unitarity_residual": real_str(s.unitarity_residual()),
        "symmetry_residual": real_str(s.symmetry_residual()),
        "primaries": [
            {
                "index": i,
                "label": labels[i],
                "h": rational_str(hs[i]),
                "qdim": real_str(qdim(s, i)),
            }
            for i in range(s.dimension)
        ],
    }


def u1_coset_payload(a: int, b: int) -> dict:
    g = math.gcd(a, b)
    currents = []
    for x, y, z in u1_coset_vacuum_pairs(a, b):
        grade = (
            h_u1(U1Charge(2 * a, x)) + h_u1(U1Charge(2 * b, y))
            - h_u1(U1Charge(2 * (a + b), z))
        )
        currents.append(
            {"x": x, "y": y, "z": z, "h_excess": rational_str(grade)}
        )
    direct = u1_branching_weight(0, 0, 0, a, b)
    closed = g / math.sqrt(2 * a * b * (a + b))
    return {
        "factor": f"{u1_factor_name(2 * a)} x {u1_factor_name(2 * b)} / {u1_factor_name(2 * (a + b))}",
        "gcd": g,
        "vp_count": len(currents),
        "currents": currents,
        "vacuum_weight_direct": real_str(direct),
        "vacuum_weight_closed_form": real_str(closed),
        "difference": real_str(abs(direct - closed)),
    }


def payload_fingerprint(payload: dict) -> Fingerprint:
    """Rebuild a duality fingerprint from a spectrum payload."""
    counts: dict[tuple[Fraction, float], int] = {}
    for row in payload["orbits"]:
        h = Fraction(row["h_mod1"])
        piece = round(float(row["piece_dimension"]), 6)
        key = (h, piece)
        counts[key] = counts.get(key, 0) + row["stabilizer_order"]
    rows = tuple(sorted((h, d, mult) for (h, d), mult in counts.items()))
    return Fingerprint(
        central_charge=Fraction(payload["central_charge"]),
        irrep_count=payload["irrep_count"],
        rows=rows,
    )


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_escape(value) -> str:
    text = str(value)
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _render_csv(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join(_csv_escape(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render_table(columns: list[str], rows: list[list], header_lines: list[str]) -> str:
    cells = [[str(v) for v in row] for row in rows]
    widths = [
        max(len(col), *(len(row[i]) for row in cells)) if cells else len(col)
        for i, col in enumerate(columns)
    ]
    out = list(header_lines)
    out.append("  ".join(col.ljust(widths[i]) for i, col in enumerate(columns)).rstrip())
    out.append("  ".join("-" * w for w in widths))
    for row in cells:
        out.append("  ".join(row[i].ljust(widths[i]) for i in range(len(columns))).rstrip())
    return "\n".join(out) + "\n"


_SPECTRUM_COLS = [
    "lambda0", "pi0", "lambda1", "lambda2", "charge",
    "orbit_size", "stabilizer_order", "h_mod1", "piece_dimension",
]
_VPS_COLS = ["j", "i", "lambda0", "pi0", "lambda1", "lambda2", "charge"]
_DUALITY_COLS = ["check", "left", "right", "equal", "detail"]
_MODULAR_COLS = ["index", "label", "h", "qdim"]
_U1_COLS = ["x", "y", "z", "h_excess"]


def render(doc: dict, fmt: str) -> str:
    """Render a document in one of the three output formats."""
    if fmt == "json":
        return render_json(doc)
    kind = doc["kind"]
    payload = doc["payload"]
    if kind == "spectrum":
        rows = [[o[c] for c in _SPECTRUM_COLS] for o in payload["orbits"]]
        header = [
            payload["coset"],
            f"central charge {payload['central_charge']}",
            (
                f"allowed fields {payload['field_count']}, "
                f"identification group order {payload['vp_group_order']}, "
                f"orbits {payload['orbit_count']}, "
                f"irreducible sectors {payload['irrep_count']}"
            ),
            "",
        ]
        cols = _SPECTRUM_COLS
    elif kind == "vp_group":
        rows = [[e[c] for c in _VPS_COLS] for e in payload["elements"]]
        header = [payload["coset"], f"identification group order {payload['order']}"]
        if "verification" in payload:
            checks = ", ".join(f"{k} {v}" for k, v in sorted(payload["verification"].items()))
            header.append(f"verification: {checks}")
        header.append("")
        cols = _VPS_COLS
    elif kind == "duality_report":
        rows = [
            [c["name"], c["left"], c["right"], "yes" if c["equal"] else "NO", c["detail"]]
            for c in payload["checks"]
        ]
        left, right = payload["left"], payload["right"]
        header = [
            (
                f"duality G({left['m']},{left['n']},{left['k']}) <-> "
                f"G({right['m']},{right['n']},{right['k']}): {payload['verdict']}"
            ),
            "",
        ]
        cols = _DUALITY_COLS
    elif kind == "modular_data":
        if "currents" in payload:
            rows = [[c[col] for col in _U1_COLS] for c in payload["currents"]]
            header = [
                payload["factor"],
                (
                    f"gcd {payload['gcd']}, identification currents {payload['vp_count']}, "
                    f"vacuum weight {payload['vacuum_weight_direct']} "
                    f"(closed form {payload['vacuum_weight_closed_form']}, "
                    f"difference {payload['difference']})"
                ),
                "",
            ]
            cols = _U1_COLS
        else:
            rows = [[p[c] for c in _MODULAR_COLS] for p in payload["primaries"]]
            header = [
                payload["factor"],
                (
                    f"size {payload['size']}, unitarity residual "
                    f"{payload['unitarity_residual']}, symmetry residual "
                    f"{payload['symmetry_residual']}"
                ),
                "",
            ]
            cols = _MODULAR_COLS
    else:
        raise ValueError(f"unknown document kind: {kind}")
    if fmt == "csv":
        return _render_csv(cols, rows)
    if fmt == "table":
        return _render_table(cols, rows, header)
    raise ValueError(f"unknown format: {fmt}")


def modular_document_su(rank_n: int, level: int) -> dict:
    weights = dominant_weights(rank_n, level)
    labels = [f"({','.join(map(str, w.labels))})" for w in weights]
    hs = [h_su(w) for w in weights]
    return document(
        "modular_data",
        modular_payload(su_factor_name(rank_n, level), labels, hs, s_matrix_su(rank_n, level)),
    )


def modular_document_u1(modulus: int) -> dict:
    labels = [str(x) for x in range(modulus)]
    hs = [h_u1(U1Charge(modulus, x)) for x in range(modulus)]
    return document(
        "modular_data",
        modular_payload(u1_factor_name(modulus), labels, hs, s_matrix_u1(modulus)),
    )


def modular_document_spin(half_dim: int) -> dict:
    labels = list(SPIN_KINDS)
    hs = [h_spin(SpinLabel(half_dim, kind)) for kind in SPIN_KINDS]
    return document(
        "modular_data",
        modular_payload(spin_factor_name(half_dim), labels, hs, s_matrix_spin(half_dim)),
    )
