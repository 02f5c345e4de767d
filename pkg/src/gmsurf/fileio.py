"""File formats: manifolds and certificates as JSON with exact numbers.

Every rational is serialized as the string "num/den" (or "int" when the
denominator is 1) and parsed back bit-exactly; plain JSON integers are also
accepted where a rational is expected.  JSON floats are rejected everywhere:
a decimal in an input file is always a mistake, never a rational.

Schemas:

- manifold: {"pieces": [{"id", "euler", "genus", "cone_orders"?}],
             "tori": [{"from", "to", "p", "q"?, "q_prime"?, "p_prime"?}]}
  with torus defaults q=1, q_prime=1, p_prime=0;
- reduction certificate: {"a_prime": [[rational]], "a": [rational],
                          "matrix"?: [[rational]]} where the optional matrix
  records the source the reduction was computed against;
- surface certificate: {"degrees": [int], "scale": int,
                        "shrunk": [[rational]],
                        "reduction": {"a_prime": [[rational]], "a": [rational]},
                        "systems": [{"torus", "side", "a_plus", "a_minus",
                                     "b_plus", "b_minus"}]}.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exact_linalg import SymMatrix, rational_str, to_rational
from .manifold import DecompositionGraph, GluingTorus, SeifertPiece
from .reduction import ReductionCertificate
from .surface import CurveSystem, SurfaceCertificate


class FileFormatError(ValueError):
    """The document does not match the expected schema."""


def parse_rational_field(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise FileFormatError(
            f"{where}: floats are not exact; write the rational as a string like \"1/2\""
        )
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FileFormatError(f"{where}: expected a rational string or integer, got {value!r}")
    try:
        return to_rational(value)
    except (ValueError, TypeError) as exc:
        raise FileFormatError(f"{where}: {exc}") from exc


def parse_int_field(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FileFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _expect_dict(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise FileFormatError(f"{where}: expected an object, got {type(value).__name__}")
    return value


def _expect_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise FileFormatError(f"{where}: expected an array, got {type(value).__name__}")
    return value


def matrix_to_json(A: SymMatrix) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in A.rows]


def rows_to_json(rows) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in rows]


def matrix_rows_from_json(data, where: str) -> list[list[Fraction]]:
    rows = _expect_list(data, where)
    out = []
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{where}[{i}]")
        if len(row) != len(rows):
            raise FileFormatError(
                f"{where}[{i}]: expected {len(rows)} entries, got {len(row)}"
            )
        out.append([parse_rational_field(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def manifold_to_json(G: DecompositionGraph) -> dict:
    pieces = []
    for p in G.pieces:
        record = {"id": p.id, "euler": rational_str(p.euler), "genus": p.genus}
        if p.cone_orders:
            record["cone_orders"] = list(p.cone_orders)
        pieces.append(record)
    tori = [
        {
            "from": t.from_piece,
            "to": t.to_piece,
            "p": t.p,
            "q": t.q,
            "q_prime": t.q_prime,
            "p_prime": t.p_prime,
        }
        for t in G.tori
    ]
    return {"pieces": pieces, "tori": tori}


def manifold_from_json(data) -> DecompositionGraph:
    doc = _expect_dict(data, "manifold")
    for key in ("pieces", "tori"):
        if key not in doc:
            raise FileFormatError(f"manifold: missing required key '{key}'")
    pieces = []
    for k, raw in enumerate(_expect_list(doc["pieces"], "pieces")):
        record = _expect_dict(raw, f"pieces[{k}]")
        for key in ("id", "euler", "genus"):
            if key not in record:
                raise FileFormatError(f"pieces[{k}]: missing required key '{key}'")
        cone_orders = record.get("cone_orders", [])
        cone_orders = _expect_list(cone_orders, f"pieces[{k}].cone_orders")
        try:
            pieces.append(
                SeifertPiece(
                    id=parse_int_field(record["id"], f"pieces[{k}].id"),
                    euler=parse_rational_field(record["euler"], f"pieces[{k}].euler"),
                    genus=parse_int_field(record["genus"], f"pieces[{k}].genus"),
                    cone_orders=tuple(
                        parse_int_field(a, f"pieces[{k}].cone_orders[{i}]")
                        for i, a in enumerate(cone_orders)
                    ),
                )
            )
        except ValueError as exc:
            raise FileFormatError(f"pieces[{k}]: {exc}") from exc
    tori = []
    for k, raw in enumerate(_expect_list(doc["tori"], "tori")):
        record = _expect_dict(raw, f"tori[{k}]")
        for key in ("from", "to", "p"):
            if key not in record:
                raise FileFormatError(f"tori[{k}]: missing required key '{key}'")
        tori.append(
            GluingTorus(
                from_piece=parse_int_field(record["from"], f"tori[{k}].from"),
                to_piece=parse_int_field(record["to"], f"tori[{k}].to"),
                p=parse_int_field(record["p"], f"tori[{k}].p"),
                q=parse_int_field(record.get("q", 1), f"tori[{k}].q"),
                q_prime=parse_int_field(record.get("q_prime", 1), f"tori[{k}].q_prime"),
                p_prime=parse_int_field(record.get("p_prime", 0), f"tori[{k}].p_prime"),
            )
        )
    return DecompositionGraph(pieces=tuple(pieces), tori=tuple(tori))


def reduction_cert_to_json(cert: ReductionCertificate, matrix: SymMatrix | None = None) -> dict:
    doc = {
        "a_prime": rows_to_json(cert.a_prime),
        "a": [rational_str(v) for v in cert.a],
    }
    if matrix is not None:
        doc["matrix"] = matrix_to_json(matrix)
    return doc


def reduction_cert_from_json(data) -> tuple[ReductionCertificate, SymMatrix | None]:
    doc = _expect_dict(data, "reduction certificate")
    for key in ("a_prime", "a"):
        if key not in doc:
            raise FileFormatError(f"reduction certificate: missing required key '{key}'")
    a_prime = matrix_rows_from_json(doc["a_prime"], "a_prime")
    a = [
        parse_rational_field(v, f"a[{i}]")
        for i, v in enumerate(_expect_list(doc["a"], "a"))
    ]
    matrix = None
    if "matrix" in doc:
        try:
            matrix = SymMatrix(matrix_rows_from_json(doc["matrix"], "matrix"))
        except ValueError as exc:
            raise FileFormatError(f"matrix: {exc}") from exc
    cert = ReductionCertificate(
        a_prime=tuple(tuple(row) for row in a_prime), a=tuple(a)
    )
    return cert, matrix


def surface_cert_to_json(cert: SurfaceCertificate) -> dict:
    return {
        "degrees": list(cert.degrees),
        "scale": cert.scale,
        "shrunk": matrix_to_json(cert.shrunk),
        "reduction": reduction_cert_to_json(cert.reduction),
        "systems": [
            {
                "torus": s.torus,
                "side": s.side,
                "a_plus": s.a_plus,
                "a_minus": s.a_minus,
                "b_plus": s.b_plus,
                "b_minus": s.b_minus,
            }
            for s in cert.systems
        ],
    }


def surface_cert_from_json(data) -> SurfaceCertificate:
    doc = _expect_dict(data, "surface certificate")
    for key in ("degrees", "scale", "shrunk", "reduction", "systems"):
        if key not in doc:
            raise FileFormatError(f"surface certificate: missing required key '{key}'")
    degrees = tuple(
        parse_int_field(v, f"degrees[{i}]")
        for i, v in enumerate(_expect_list(doc["degrees"], "degrees"))
    )
    scale = parse_int_field(doc["scale"], "scale")
    try:
        shrunk = SymMatrix(matrix_rows_from_json(doc["shrunk"], "shrunk"))
    except ValueError as exc:
        raise FileFormatError(f"shrunk: {exc}") from exc
    reduction, _ = reduction_cert_from_json(doc["reduction"])
    systems = []
    for k, raw in enumerate(_expect_list(doc["systems"], "systems")):
        record = _expect_dict(raw, f"systems[{k}]")
        fields = {}
        for key in ("torus", "side", "a_plus", "a_minus", "b_plus", "b_minus"):
            if key not in record:
                raise FileFormatError(f"systems[{k}]: missing required key '{key}'")
            fields[key] = parse_int_field(record[key], f"systems[{k}].{key}")
        systems.append(CurveSystem(**fields))
    return SurfaceCertificate(
        degrees=degrees,
        scale=scale,
        shrunk=shrunk,
        reduction=reduction,
        systems=tuple(systems),
    )


def load_json(path: str | Path):
    text = Path(path).read_text()
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _reject_float(text: str):
    raise FileFormatError(
        f"floats are not exact; write the rational {text!r} as a string like \"1/2\""
    )


def save_json(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_manifold(path: str | Path) -> DecompositionGraph:
    return manifold_from_json(load_json(path))


def save_manifold(G: DecompositionGraph, path: str | Path) -> None:
    save_json(manifold_to_json(G), path)
