"""Fan documents (JSON ``.fan`` files), report formatting and diagram export."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .divisor import TorusDivisor
from .errors import ArityError, ParseError
from .fan import make_fan


@dataclass
class FanDocument:
    dim: int
    rays: list
    max_cones: list
    divisors: dict = field(default_factory=dict)  # name -> list of Fractions
    metadata: dict = field(default_factory=dict)

    def fan(self):
        """Validated fan. Rays keep their document order."""
        return make_fan(self.rays, self.max_cones)

    def divisor(self, name, fan=None):
        """Named divisor, re-indexed onto ``fan`` (whose rays are primitive)."""
        if name not in self.divisors:
            raise ParseError(f"no divisor named {name!r}; known: {sorted(self.divisors)}")
        fan = fan or self.fan()
        from .rational import primitive
        by_ray = {primitive(r): a for r, a in zip(self.rays, self.divisors[name])}
        return TorusDivisor(fan, tuple(by_ray[v] for v in fan.rays))


def _rational(x, where):
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected an integer or \"p/q\" string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {x!r} as an exact rational") from None
    raise ParseError(f"{where}: expected an integer or \"p/q\" string, got {x!r}")


def _int_list(x, where):
    if not isinstance(x, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in x):
        raise ParseError(f"{where}: expected a list of integers, got {x!r}")
    return x


def parse_fan(text):
    """Parse and structurally check a fan document; fan axioms are checked by
    :meth:`FanDocument.fan`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    unknown = set(data) - {"dim", "rays", "max_cones", "divisors", "metadata"}
    if unknown:
        raise ParseError(f"unknown field(s): {sorted(unknown)}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dim: expected a positive integer, got {dim!r}")
    if not isinstance(data["rays"], list):
        raise ParseError("rays: expected a list")
    rays = []
    for i, r in enumerate(data["rays"]):
        r = _int_list(r, f"rays[{i}]")
        if len(r) != dim:
            raise ArityError(f"rays[{i}]: {len(r)} coordinates, expected {dim}")
        rays.append(tuple(r))
    if not isinstance(data["max_cones"], list):
        raise ParseError("max_cones: expected a list")
    cones = []
    for i, c in enumerate(data["max_cones"]):
        c = _int_list(c, f"max_cones[{i}]")
        bad = [j for j in c if not 0 <= j < len(rays)]
        if bad:
            raise ParseError(f"max_cones[{i}]: ray index {bad[0]} out of range")
        cones.append(list(c))
    divisors = {}
    raw = data.get("divisors", {})
    if not isinstance(raw, dict):
        raise ParseError("divisors: expected an object")
    for name, coeffs in raw.items():
        if not isinstance(coeffs, list):
            raise ParseError(f"divisors[{name!r}]: expected a list")
        if len(coeffs) != len(rays):
            raise ArityError(f"divisors[{name!r}]: {len(coeffs)} coefficients for {len(rays)} rays")
        divisors[name] = [_rational(a, f"divisors[{name!r}][{k}]") for k, a in enumerate(coeffs)]
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        raise ParseError("metadata: expected an object")
    return FanDocument(dim, rays, cones, divisors, meta)


def load_fan(path):
    with open(path, encoding="utf-8") as fh:
        return parse_fan(fh.read())


def fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coeff_json(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else fmt_q(x)


def document_from_fan(fan, divisors=None, metadata=None):
    divs = {}
    for name, D in (divisors or {}).items():
        divs[name] = list(D.coeffs)
    return FanDocument(fan.dim, [tuple(r) for r in fan.rays], [list(c) for c in fan.cones],
                       divs, dict(metadata or {}))


def dump_fan(doc):
    """Normalized JSON text; parse_fan(dump_fan(d)) reproduces d."""
    out = {"dim": doc.dim, "rays": [list(r) for r in doc.rays],
           "max_cones": [list(c) for c in doc.max_cones]}
    if doc.divisors:
        out["divisors"] = {k: [_coeff_json(a) for a in v] for k, v in sorted(doc.divisors.items())}
    if doc.metadata:
        out["metadata"] = doc.metadata
    # one ray / cone / divisor per line keeps files readable and diffable
    parts = []
    for key, value in out.items():
        if isinstance(value, list):
            body = ",\n".join("    " + json.dumps(x) for x in value)
            parts.append(f'  "{key}": [\n{body}\n  ]')
        elif isinstance(value, dict):
            body = ",\n".join(f"    {json.dumps(k)}: {json.dumps(v)}" for k, v in value.items())
            parts.append(f'  "{key}": {{\n{body}\n  }}')
        else:
            parts.append(f'  "{key}": {json.dumps(value)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


# -- formatting -------------------------------------------------------------------

def fmt_vec(v):
    return "(" + ", ".join(fmt_q(a) for a in v) + ")"


def fmt_divisor(D):
    return "(" + ", ".join(fmt_q(a) for a in D.coeffs) + ")"


def fmt_fan(fan):
    rays = ", ".join(fmt_vec(r) for r in fan.rays)
    cones = ", ".join("{" + ",".join(str(i) for i in c) + "}" for c in fan.cones)
    return f"rays [{rays}]; cones [{cones}]"


def fmt_vertices(poly):
    return "[" + ", ".join(fmt_vec(v) for v in poly.vertices()) + "]"


# -- diagram export ---------------------------------------------------------------

_EDGE_STYLE = {
    "q-factorialization": 'style=dotted, arrowhead=normal',
    "flop-sequence SQM": 'style=dashed, arrowhead=vee',
    "minimal terminal resolution": 'style=solid, arrowhead=normal',
    "anticanonical morphism": 'style=bold, arrowhead=normal',
    "redundant MMP trace": 'style=dashed, arrowhead=normal, color=blue',
}

_NODE_ID = {"X": "X", "X_q": "Xq", "X'": "Xp", "X'_mint": "Xp_mint", "X'_nrd": "Xp_nrd", "Y": "Y"}


def diagram_to_dot(diagram):
    verts = " ".join(fmt_vec(v) for v in diagram.model_vertices)
    lines = ["digraph pipeline {",
             f'  label="shared anticanonical polytope vertices: {verts}";',
             "  labelloc=t;", "  node [shape=box];"]
    for name, fan in diagram.nodes.items():
        lines.append(f'  {_NODE_ID[name]} [label="{name}\\n{len(fan.rays)} rays, '
                     f'{len(fan.cones)} cones"];')
    for a in diagram.arrows:
        label = a.name
        if a.name == "r" and diagram.trace.steps:
            label += "\\n" + "; ".join(_step_label(s) for s in diagram.trace.steps)
        lines.append(f'  {_NODE_ID[a.source]} -> {_NODE_ID[a.target]} '
                     f'[label="{label}", {_EDGE_STYLE[a.kind]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _step_label(step):
    if step.kind == "divisorial":
        gone = sorted(set(step.before.rays) - set(step.after.rays))
        return "divisorial, removes " + ", ".join(fmt_vec(v) for v in gone)
    return "flip on " + " ".join(fmt_vec(v) for v in step.wall_class.circuit_key())


def diagram_to_json(diagram):
    out = {
        "model_polytope": [[fmt_q(a) for a in v] for v in diagram.model_vertices],
        "nodes": {name: {"rays": [list(r) for r in f.rays], "max_cones": [list(c) for c in f.cones]}
                  for name, f in diagram.nodes.items()},
        "arrows": [{"name": a.name, "source": a.source, "target": a.target, "kind": a.kind,
                    "certificate": a.certificate} for a in diagram.arrows],
        "mmp_steps": [{"kind": s.kind, "circuit": [list(v) for v in s.wall_class.circuit_key()],
                       "removed_rays": [list(v) for v in sorted(set(s.before.rays) - set(s.after.rays))]}
                      for s in diagram.trace.steps],
    }
    return json.dumps(out, indent=2) + "\n"
