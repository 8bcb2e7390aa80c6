"""Action documents: JSON descriptions of a complex with a group action."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .complex import GComplex, make_complex, regularize
from .errors import InputError
from .groups import DEFAULT_ORDER_CAP, check_perm, from_cycles, group_from_generators


@dataclass(frozen=True)
class ActionDocument:
    name: str
    raw: GComplex          # as written
    complex: GComplex      # regularized if requested
    regularized: bool


def _names(x, path) -> list[str]:
    if not isinstance(x, list):
        raise InputError("expected a list", path)
    out = []
    for i, v in enumerate(x):
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise InputError("vertex names must be strings or integers", f"{path}[{i}]")
        out.append(str(v))
    return out


def _generator(gen, index: dict[str, int], path: str):
    n = len(index)

    def lookup(v, p):
        key = str(v)
        if key not in index:
            raise InputError(f"unknown vertex {v!r}", p)
        return index[key]

    if isinstance(gen, list):
        gen = {"cycles": gen}
    if not isinstance(gen, dict):
        raise InputError("generator must be a cycle list or an object", path)
    if "cycles" in gen:
        cycles = gen["cycles"]
        if not isinstance(cycles, list):
            raise InputError("expected a list of cycles", f"{path}.cycles")
        cyc = []
        for j, c in enumerate(cycles):
            names = _names(c, f"{path}.cycles[{j}]")
            cyc.append([lookup(v, f"{path}.cycles[{j}]") for v in names])
        try:
            return from_cycles(n, cyc)
        except InputError as e:
            raise InputError(str(e), f"{path}.cycles") from None
    if "images" in gen:
        images = gen["images"]
        if not isinstance(images, dict):
            raise InputError("expected an object mapping vertex to image", f"{path}.images")
        img = list(range(n))
        for a, b in images.items():
            img[lookup(a, f"{path}.images")] = lookup(b, f"{path}.images.{a}")
        try:
            return check_perm(img, n)
        except InputError as e:
            raise InputError(str(e), f"{path}.images") from None
    raise InputError("generator needs 'cycles' or 'images'", path)


def parse_document(data, order_cap: int = DEFAULT_ORDER_CAP) -> ActionDocument:
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    name = data.get("name", "unnamed")
    if not isinstance(name, str):
        raise InputError("expected a string", "name")
    cx = data.get("complex")
    if not isinstance(cx, dict):
        raise InputError("expected an object", "complex")
    verts = _names(cx.get("vertices"), "complex.vertices")
    if not verts:
        raise InputError("at least one vertex required", "complex.vertices")
    if len(set(verts)) != len(verts):
        raise InputError("duplicate vertex names", "complex.vertices")
    index = {v: i for i, v in enumerate(verts)}
    simplices = cx.get("simplices", [])
    if not isinstance(simplices, list):
        raise InputError("expected a list", "complex.simplices")
    sims = []
    for i, s in enumerate(simplices):
        path = f"complex.simplices[{i}]"
        names = _names(s, path)
        if not names:
            raise InputError("empty simplex", path)
        if len(set(names)) != len(names):
            raise InputError("repeated vertex", path)
        for v in names:
            if v not in index:
                raise InputError(f"unknown vertex {v!r}", path)
        sims.append([index[v] for v in names])
    grp = data.get("group", {})
    if not isinstance(grp, dict):
        raise InputError("expected an object", "group")
    gens_raw = grp.get("generators", [])
    if not isinstance(gens_raw, list):
        raise InputError("expected a list", "group.generators")
    gens = [_generator(g, index, f"group.generators[{i}]") for i, g in enumerate(gens_raw)]
    group = group_from_generators(len(verts), gens, cap=order_cap)
    try:
        K = make_complex(len(verts), sims, group, verts)
    except InputError as e:
        raise InputError(str(e), "group") from None
    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise InputError("expected an object", "options")
    reg = opts.get("regularize", True)
    if not isinstance(reg, bool):
        raise InputError("expected true or false", "options.regularize")
    return ActionDocument(name=name, raw=K, complex=regularize(K) if reg else K, regularized=reg)


def load_document(path, order_cap: int = DEFAULT_ORDER_CAP) -> ActionDocument:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return parse_document(data, order_cap)


def document_to_json(K: GComplex, name: str) -> dict:
    """Serialize a complex; the group is written as image maps of its generators."""
    labels = [K.label(v) for v in range(K.n_vertices)]
    maximal = [s for s in K.simplices
               if not any(len(t) > len(s) and set(s) <= set(t) for t in K.simplices)]
    return {
        "name": name,
        "complex": {"vertices": labels, "simplices": [[labels[v] for v in s] for s in maximal]},
        "group": {"generators": [{"images": {labels[i]: labels[g[i]] for i in range(len(g))
                                             if g[i] != i}}
                                 for g in K.group.generators]},
        "options": {"regularize": False},
    }
