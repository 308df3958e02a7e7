"""Plain-text and JSON interchange formats.

Matrix text: first line `q rows cols`, then row-major entries as integers.
Prime-field entries are residues; extension-field entries are discrete logs
with respect to the field's fixed generator, -1 for zero.

Complex text: one line per simplex, `dimension v0 v1 ... vd`; the reduced
chain complex is assembled over a chosen coefficient prime, faces must close.

Group/module JSON: explicit element tables, small by construction.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import IOFailure
from .ffield import FieldSpec, field_make


def _field_from_q(q: int) -> FieldSpec:
    p = 2
    while q % p:
        p += 1
    r = 0
    m = q
    while m > 1:
        if m % p:
            raise IOFailure(f"{q} is not a prime power")
        m //= p
        r += 1
    return field_make(p, r)


def write_matrix(field: FieldSpec, mat) -> str:
    mat = np.asarray(mat)
    rows, cols = mat.shape
    lines = [f"{field.q} {rows} {cols}"]
    if field.r == 1:
        body = " ".join(str(int(x)) for x in mat.ravel())
    else:
        log = field._log
        body = " ".join(str(int(log[x])) if x else "-1" for x in mat.ravel())
    lines.append(body)
    return "\n".join(lines) + "\n"


def read_matrix(text: str):
    parts = text.split()
    if len(parts) < 3:
        raise IOFailure("matrix header must be `q rows cols`")
    q, rows, cols = (int(x) for x in parts[:3])
    field = _field_from_q(q)
    vals = [int(x) for x in parts[3:]]
    if len(vals) != rows * cols:
        raise IOFailure(f"expected {rows * cols} entries, got {len(vals)}")
    if field.r == 1:
        mat = np.array(vals, dtype=field.dtype).reshape(rows, cols) % field.p
    else:
        exp = field._exp
        mat = np.array(
            [0 if v < 0 else int(exp[v % (field.q - 1)]) for v in vals], dtype=field.dtype
        ).reshape(rows, cols)
    return field, mat


def parse_complex(text: str, p: int = 2):
    """Chain complex from `dim v0 ... vdim` lines; simplices must close under faces."""
    from .complexes import ChainComplex

    simplices: dict[int, set] = {}
    for ln, line in enumerate(text.splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        nums = [int(x) for x in line.split()]
        d, verts = nums[0], tuple(nums[1:])
        if len(verts) != d + 1:
            raise IOFailure(f"line {ln + 1}: dimension {d} needs {d + 1} vertices")
        if len(set(verts)) != len(verts):
            raise IOFailure(f"line {ln + 1}: repeated vertex")
        simplices.setdefault(d, set()).add(tuple(sorted(verts)))
    if not simplices:
        return ChainComplex(p, {-1: 1}, {})
    top = max(simplices)
    for d in range(top, 0, -1):
        for s in simplices.get(d, ()):
            for i in range(d + 1):
                face = s[:i] + s[i + 1 :]
                if face not in simplices.get(d - 1, set()):
                    raise IOFailure(f"missing face {face} of {s}")
    dims = {-1: 1}
    index = {}
    for d in range(top + 1):
        level = sorted(simplices.get(d, ()))
        dims[d] = len(level)
        index[d] = {s: i for i, s in enumerate(level)}
    boundaries = {0: [[(0, 1)] for _ in range(dims.get(0, 0))]}
    for d in range(1, top + 1):
        cols = []
        for s in sorted(simplices.get(d, ())):
            col = []
            for i in range(d + 1):
                face = s[:i] + s[i + 1 :]
                col.append((index[d - 1][face], (-1) ** i % p))
            cols.append(col)
        boundaries[d] = cols
    return ChainComplex(p, dims, boundaries)


def group_to_json(group) -> str:
    payload = {
        "q": group.field.q,
        "n": group.n,
        "kind": group.kind,
        "order": len(group),
        "generators": [group.elements[i].ravel().tolist() for i in group.generators],
        "elements": [group.elements[i].ravel().tolist() for i in range(len(group))],
    }
    return json.dumps(payload, sort_keys=True)


def group_from_json(text: str):
    from .glgroup import MatGroup

    payload = json.loads(text)
    field = _field_from_q(payload["q"])
    n = payload["n"]
    els = [np.array(e, dtype=field.dtype).reshape(n, n) for e in payload["elements"]]
    gens = [np.array(e, dtype=field.dtype).reshape(n, n) for e in payload["generators"]]
    return MatGroup(field, n, els, generators=gens, kind=payload.get("kind", "explicit"))


def module_to_json(module) -> str:
    group = module.group
    payload = {
        "p": module.p,
        "dim": module.dim,
        "name": module.name,
        "group": json.loads(group_to_json(group)),
        "action": {str(i): module.action(i).ravel().tolist() for i in range(len(group))},
    }
    return json.dumps(payload, sort_keys=True)


def module_from_json(text: str):
    from .steinberg import GModule

    payload = json.loads(text)
    group = group_from_json(json.dumps(payload["group"]))
    dim = payload["dim"]
    table = {
        int(k): np.array(v, dtype=np.int64).reshape(dim, dim)
        for k, v in payload["action"].items()
    }
    return GModule(group, payload["p"], dim, lambda i: table[i], name=payload.get("name", "module"))
