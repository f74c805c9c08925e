"""JSON instance documents shared by the CLI, fixtures, and the harness.

Schema (version 1):

    {
      "schema_version": 1,
      "field": {"p": 2, "k": 1, "modulus": null},
      "n": 2,
      "lattice": [["1", "0"], ["0", "1"]],
      "subspaces": {"L": [["1", "0"]], "M": [["1", "T"]]},
      "options": {"genus": 0}
    }

The lattice is an n x k matrix of element strings in row-major order
(columns are basis vectors); each subspace is a list of spanning vectors,
each a list of n element strings. The modulus, present only for k > 1,
lists the ascending F_p coefficients of the degree-k irreducible. Element
strings follow the grammar of fflat.algebra. serialize(parse(doc)) is
byte-identical for canonical documents (the ones this module emits).
"""

import json
from dataclasses import dataclass, field as dc_field

from .algebra import FieldConfig, format_element, parse_element
from .errors import ElementParseError, ShapeError
from .lattice import Lattice, Subspace
from .linalg import Matrix

SCHEMA_VERSION = 1


@dataclass
class InstanceDoc:
    """A parsed problem instance: field, ambient dimension, data."""

    field: FieldConfig
    n: int
    lattice: Lattice | None = None
    subspaces: dict = dc_field(default_factory=dict)
    genus: int = 0


def field_to_jsonable(f):
    return {"p": f.p, "k": f.k,
            "modulus": list(f.modulus) if f.modulus is not None else None}


def parse_field(obj):
    if not isinstance(obj, dict) or "p" not in obj:
        raise ElementParseError("field block must carry at least 'p'")
    p = int(obj["p"])
    k = int(obj.get("k", 1))
    modulus = obj.get("modulus")
    return FieldConfig(p, k, modulus)


def lattice_to_jsonable(lat):
    return [[format_element(lat.basis.entry(i, j)) for j in range(lat.rank)]
            for i in range(lat.n)]


def subspace_to_jsonable(sub):
    return [[format_element(e) for e in v] for v in sub.basis]


def instance_to_jsonable(doc):
    out = {
        "schema_version": SCHEMA_VERSION,
        "field": field_to_jsonable(doc.field),
        "n": doc.n,
        "lattice": lattice_to_jsonable(doc.lattice) if doc.lattice else None,
        "subspaces": {name: subspace_to_jsonable(doc.subspaces[name])
                      for name in sorted(doc.subspaces)},
        "options": {"genus": doc.genus},
    }
    return out


def dumps_canonical(obj):
    return json.dumps(obj, indent=2) + "\n"


def serialize_instance(doc):
    return dumps_canonical(instance_to_jsonable(doc))


def _parse_vector(field, row, n):
    if len(row) != n:
        raise ShapeError(f"vector has {len(row)} entries, ambient is {n}")
    return tuple(parse_element(field, s) for s in row)


def parse_instance(data):
    """Parse a JSON string or already-decoded dict into an InstanceDoc."""
    if isinstance(data, (str, bytes)):
        obj = json.loads(data)
    else:
        obj = data
    if not isinstance(obj, dict):
        raise ElementParseError("instance document must be a JSON object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ElementParseError(f"unsupported schema_version {version}")
    f = parse_field(obj.get("field", {}))
    n = int(obj["n"])
    lattice = None
    raw_lat = obj.get("lattice")
    if raw_lat is not None:
        if len(raw_lat) != n:
            raise ShapeError(f"lattice matrix has {len(raw_lat)} rows, n = {n}")
        k = len(raw_lat[0])
        if any(len(r) != k for r in raw_lat):
            raise ShapeError("lattice matrix is ragged")
        entries = [[parse_element(f, s) for s in row] for row in raw_lat]
        lattice = Lattice(f, n, Matrix(f, entries))
    subspaces = {}
    for name, rows in (obj.get("subspaces") or {}).items():
        vectors = [_parse_vector(f, row, n) for row in rows]
        subspaces[name] = Subspace(f, n, vectors)
    genus = int((obj.get("options") or {}).get("genus", 0))
    return InstanceDoc(field=f, n=n, lattice=lattice,
                       subspaces=subspaces, genus=genus)
