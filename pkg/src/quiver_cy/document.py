"""JSON input documents: (ice) quivers, potentials and optional quintuples."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .bracket import Pairing
from .constructions import Potential, Quintuple, quintuple_from_ice
from .errors import QuiverCYError, SchemaError
from .quiver import Arrow, GradedQuiver, IceQuiver
from .series import DEFAULT_CAP, Generator, GeneratorSpace, Necklace, _add, format_scalar, parse_scalar

RATIONAL = {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}
ID = {"type": ["string", "integer"]}

TERM = {
    "type": "object",
    "required": ["coeff", "cycle"],
    "properties": {"coeff": RATIONAL, "cycle": {"type": "array", "items": {"type": "string"}, "minItems": 1}},
    "additionalProperties": False,
}

GENERATOR = {
    "type": "object",
    "required": ["name", "source", "target"],
    "properties": {"name": {"type": "string"}, "source": ID, "target": ID, "degree": {"type": "integer"}},
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "required": ["vertices", "arrows"],
    "properties": {
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "properties": {"id": ID, "frozen": {"type": "boolean"}},
                "additionalProperties": False,
            },
        },
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "source", "target"],
                "properties": {
                    "name": {"type": "string"},
                    "source": ID,
                    "target": ID,
                    "degree": {"type": "integer"},
                    "frozen": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "potential": {"type": "array", "items": TERM},
        "quintuple": {
            "type": "object",
            "required": ["N", "F", "eta", "d"],
            "properties": {
                "N": {"type": "array", "items": GENERATOR},
                "F": {"type": "array", "items": GENERATOR},
                "eta": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["u", "v", "coeff"],
                        "properties": {"u": {"type": "string"}, "v": {"type": "string"}, "coeff": RATIONAL},
                        "additionalProperties": False,
                    },
                },
                "wA": {"type": "array", "items": TERM},
                "wB": {"type": "array", "items": TERM},
                "d": {"type": "integer", "minimum": 2},
                "traces": {"type": "object", "additionalProperties": RATIONAL},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _path(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


@dataclass
class Document:
    ice: IceQuiver
    potential: list  # [(Fraction, [names])]
    quintuple: dict | None = None

    @property
    def quiver(self) -> GradedQuiver:
        return self.ice.quiver

    def space(self) -> GeneratorSpace:
        return GeneratorSpace.from_quiver(self.quiver)

    def potential_on(self, space: GeneratorSpace | None = None, cap: int = DEFAULT_CAP) -> Potential:
        sp = self.space() if space is None else space
        return Potential.from_cycles(sp, self.potential, cap)

    def build_quintuple(self, d: int, cap: int = DEFAULT_CAP) -> Quintuple:
        if self.quintuple is None:
            W = self.potential_on(cap=cap) if self.potential else None
            return quintuple_from_ice(self.ice, W, d, cap)
        return _quintuple_from_json(self, self.quintuple, cap)


def _vertex_id(raw):
    return str(raw)


def load(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return parse(data)


def parse(data) -> Document:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _path(err.absolute_path))
    vertices = [_vertex_id(v["id"]) for v in data["vertices"]]
    if len(set(vertices)) != len(vertices):
        raise SchemaError("duplicate vertex id", "/vertices")
    frozen_v = {_vertex_id(v["id"]) for v in data["vertices"] if v.get("frozen")}
    arrows, frozen_a = [], set()
    seen = set()
    for i, a in enumerate(data["arrows"]):
        s, t = _vertex_id(a["source"]), _vertex_id(a["target"])
        for key, v in (("source", s), ("target", t)):
            if v not in vertices:
                raise SchemaError(f"unknown vertex {v!r}", _path(["arrows", i, key]))
        if a["name"] in seen:
            raise SchemaError(f"duplicate arrow {a['name']!r}", _path(["arrows", i, "name"]))
        seen.add(a["name"])
        arrows.append(Arrow(a["name"], s, t, a.get("degree", 0)))
        if a.get("frozen"):
            if s not in frozen_v or t not in frozen_v:
                raise SchemaError("frozen arrow needs frozen endpoints", _path(["arrows", i, "frozen"]))
            frozen_a.add(a["name"])
    quiver = GradedQuiver(tuple(vertices), tuple(arrows))
    ice = IceQuiver(quiver, frozenset(frozen_v), frozenset(frozen_a))
    potential = _terms(data.get("potential", []), GeneratorSpace.from_quiver(quiver), "potential")
    return Document(ice, potential, data.get("quintuple"))


def _terms(raw, space: GeneratorSpace, where: str) -> list:
    out = []
    for i, term in enumerate(raw):
        names = term["cycle"]
        for j, n in enumerate(names):
            if n not in space:
                raise SchemaError(f"unknown arrow {n!r}", _path([where, i, "cycle", j]))
        try:
            w = space.word(names)
        except ValueError:
            raise SchemaError("cycle is not composable", _path([where, i, "cycle"])) from None
        if not space.is_cyclic(w):
            raise SchemaError("path is not a cycle", _path([where, i, "cycle"]))
        out.append((parse_scalar(term["coeff"]), list(names)))
    return out


def _space(raw, vertices, where) -> GeneratorSpace:
    gens = []
    for i, g in enumerate(raw):
        s, t = _vertex_id(g["source"]), _vertex_id(g["target"])
        for key, v in (("source", s), ("target", t)):
            if v not in vertices:
                raise SchemaError(f"unknown vertex {v!r}", _path(["quintuple", where, i, key]))
        gens.append(Generator(g["name"], s, t, g.get("degree", 0)))
    try:
        return GeneratorSpace(tuple(vertices), tuple(gens))
    except ValueError as exc:
        raise SchemaError(str(exc), _path(["quintuple", where])) from None


def _necklace(raw, space, where, cap) -> Necklace:
    terms: dict = {}
    for coeff, names in _terms(raw, space, where):
        _add(terms, space.word(names), coeff)
    return Necklace(space, terms, cap)


def _quintuple_from_json(doc: Document, raw: dict, cap: int) -> Quintuple:
    from .bracket import eta_B_from_F

    verts = doc.quiver.vertices
    frozen = tuple(v for v in verts if v in doc.ice.frozen_vertices)
    free = tuple(v for v in verts if v not in doc.ice.frozen_vertices)
    d = raw["d"]
    N = _space(raw["N"], free + frozen, "N")
    F = _space(raw["F"], frozen, "F")
    coeffs = {}
    for i, e in enumerate(raw["eta"]):
        for key in ("u", "v"):
            if e[key] not in N:
                raise SchemaError(f"unknown generator {e[key]!r}", _path(["quintuple", "eta", i, key]))
        coeffs[(e["u"], e["v"])] = parse_scalar(e["coeff"])
    try:
        eta = Pairing(N, 2 - d, coeffs)
        FR, _ = eta_B_from_F(F, d)
    except (ValueError, QuiverCYError) as exc:
        raise SchemaError(str(exc), "/quintuple") from None
    FN = GeneratorSpace(free + frozen, F.generators + N.generators)
    w_A = _necklace(raw.get("wA", []), FN, "quintuple/wA", cap)
    w_B = _necklace(raw.get("wB", []), FR, "quintuple/wB", cap)
    traces = {_vertex_id(k): parse_scalar(v) for k, v in raw.get("traces", {}).items()}
    return Quintuple(
        free,
        frozen,
        N,
        F,
        eta,
        w_A,
        w_B,
        d,
        {v: traces.get(v, Fraction(1)) for v in free},
        {v: traces.get(v, Fraction(1)) for v in frozen},
        cap=cap,
    )


def serialize(doc: Document) -> dict:
    """Normalized JSON form: sorted keys, rationals as strings, defaults made explicit."""
    out = {
        "vertices": [
            {"id": v, "frozen": v in doc.ice.frozen_vertices} for v in doc.quiver.vertices
        ],
        "arrows": [
            {
                "name": a.name,
                "source": a.source,
                "target": a.target,
                "degree": a.degree,
                "frozen": a.name in doc.ice.frozen_arrows,
            }
            for a in doc.quiver.arrows
        ],
        "potential": [{"coeff": format_scalar(c), "cycle": list(names)} for c, names in doc.potential],
    }
    if doc.quintuple is not None:
        q = json.loads(json.dumps(doc.quintuple))
        for key in ("N", "F"):
            for g in q.get(key, []):
                g.setdefault("degree", 0)
                g["source"], g["target"] = str(g["source"]), str(g["target"])
        for e in q.get("eta", []):
            e["coeff"] = format_scalar(parse_scalar(e["coeff"]))
        for key in ("wA", "wB"):
            q[key] = [{"coeff": format_scalar(parse_scalar(t["coeff"])), "cycle": t["cycle"]} for t in q.get(key, [])]
        if "traces" in q:
            q["traces"] = {str(k): format_scalar(parse_scalar(v)) for k, v in q["traces"].items()}
        out["quintuple"] = q
    return out


def dumps(doc: Document) -> str:
    return json.dumps(serialize(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
