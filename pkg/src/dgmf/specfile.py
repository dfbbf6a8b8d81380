"""Text formats: curve spec files, matrix-factorization files, and the small
input formats for the koszul/fold/homology commands.

Spec files are sectioned (`[field]`, `[potential]`, `[group]`, `[curve]`);
matrix factorizations are written with fully parenthesised exact entries so
`verify` can re-check delta^2 = W . id from the file alone.  All parse errors
carry the 1-based line number.
"""

from __future__ import annotations

import json

from .complexes import FreeComplex, Generator
from .cyclotomic import CyclotomicField
from .factorizations import DgSchemePresentation, MatrixFactorization, SuperElement
from .groups import GroupElement
from .poly import PolyRing
from .ratfun import RationalFunction, UPoly
from .spincurve import Marking, Node, SpinCurveSpec


class SpecParseError(ValueError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _sections(text):
    """section name -> list of (lineno, stripped line)."""
    out = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            out.setdefault(current, [])
            continue
        if current is None:
            raise SpecParseError(lineno, "content before any [section] header")
        out[current].append((lineno, line))
    return out


def _keyvals(lines):
    out = {}
    for lineno, line in lines:
        if "=" not in line:
            raise SpecParseError(lineno, f"expected key = value, got {line!r}")
        key, _, val = line.partition("=")
        out[key.strip().lower()] = (lineno, val.strip())
    return out


def _parse_variables(field, lineno, text):
    names, weights = [], []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, w = part.partition(":")
        if not name.strip():
            raise SpecParseError(lineno, f"bad variable entry {part!r}")
        names.append(name.strip())
        try:
            weights.append(int(w) if w else 1)
        except ValueError:
            raise SpecParseError(lineno, f"bad weight in {part!r}")
    return PolyRing(field, names, weights)


def _parse_scalar(field, lineno, text):
    try:
        return field.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise SpecParseError(lineno, f"bad scalar {text!r}: {e}")


def _parse_group_element(ring, lineno, text):
    text = text.strip()
    field = ring.field
    if text.startswith("diag(") and text.endswith(")"):
        entries = [_parse_scalar(field, lineno, p)
                   for p in text[5:-1].split(",")]
        if len(entries) != ring.nvars:
            raise SpecParseError(lineno, "diag() entry count != variable count")
        return GroupElement.diagonal(ring, entries)
    if text.startswith("matrix "):
        rows = []
        for rtext in text[len("matrix "):].split(";"):
            rows.append([_parse_scalar(field, lineno, p)
                         for p in rtext.split(",")])
        return GroupElement(ring, rows)
    raise SpecParseError(lineno, f"expected diag(...) or matrix ..., got {text!r}")


def _parse_ratfun(field, lineno, text):
    """(num poly in t) / (den poly in t)."""
    if "/" not in text:
        raise SpecParseError(lineno, f"expected (num)/(den), got {text!r}")
    numtext, _, dentext = text.partition("/")
    tring = PolyRing(field, ["t"], [1])

    def to_upoly(ptext):
        ptext = ptext.strip()
        if ptext.startswith("(") and ptext.endswith(")"):
            ptext = ptext[1:-1]
        p = tring.parse(ptext)
        coeffs = []
        for e, c in p.terms.items():
            k = e[0]
            while len(coeffs) <= k:
                coeffs.append(field.zero)
            coeffs[k] = coeffs[k] + c
        return UPoly(field, coeffs)

    try:
        return RationalFunction(to_upoly(numtext), to_upoly(dentext))
    except (ValueError, ZeroDivisionError) as e:
        raise SpecParseError(lineno, f"bad rational function: {e}")


class SpecDocument:
    """A parsed spec file; the [curve] section is optional (the `check`
    command only needs the potential and the group)."""

    def __init__(self, field, ring, potential, degree_d, generators, J,
                 J_sqrt_lambda, curve):
        self.field = field
        self.ring = ring
        self.potential = potential
        self.degree_d = degree_d
        self.generators = generators
        self.J = J
        self.J_sqrt_lambda = J_sqrt_lambda
        self.curve = curve  # dict or None

    def spin_spec(self):
        if self.curve is None:
            raise ValueError("spec file has no [curve] section")
        c = self.curve
        return SpinCurveSpec(self.field, self.ring, self.potential,
                             self.degree_d, self.generators, self.J,
                             c["components"], c["bundle_degrees"], c["markings"],
                             c["nodes"], c["divisor"], c["eta"],
                             self.J_sqrt_lambda)


def parse_spec(text):
    sections = _sections(text)
    if "field" not in sections:
        raise SpecParseError(1, "missing [field] section")
    kv = _keyvals(sections["field"])
    if "order" not in kv:
        raise SpecParseError(1, "missing order in [field]")
    lineno, val = kv["order"]
    try:
        field = CyclotomicField(int(val))
    except ValueError:
        raise SpecParseError(lineno, f"bad cyclotomic order {val!r}")
    if "potential" not in sections:
        raise SpecParseError(1, "missing [potential] section")
    kv = _keyvals(sections["potential"])
    for key in ("variables", "w", "d"):
        if key not in kv:
            raise SpecParseError(1, f"missing {key} in [potential]")
    lineno, val = kv["variables"]
    ring = _parse_variables(field, lineno, val)
    lineno, val = kv["w"]
    try:
        W = ring.parse(val)
    except (ValueError, IndexError) as e:
        raise SpecParseError(lineno, f"bad potential: {e}")
    lineno, val = kv["d"]
    try:
        degree_d = int(val)
    except ValueError:
        raise SpecParseError(lineno, f"bad degree {val!r}")
    generators = []
    J = None
    J_sqrt_lambda = None
    for lineno, line in sections.get("group", []):
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if key == "generator":
            generators.append(_parse_group_element(ring, lineno, val))
        elif key == "j":
            J = _parse_group_element(ring, lineno, val)
        elif key == "j_sqrt":
            J_sqrt_lambda = _parse_scalar(field, lineno, val)
        else:
            raise SpecParseError(lineno, f"unknown [group] key {key!r}")
    if J is None:
        # the exponential-grading element is determined by the weights
        if field.order % degree_d != 0:
            raise SpecParseError(1, "cyclotomic order must be divisible by d")
        zeta_d = field.zeta ** (field.order // degree_d)
        J = GroupElement.diagonal(ring, [zeta_d ** w for w in ring.weights])
    curve = None
    if "curve" in sections:
        curve = _parse_curve(field, ring, sections["curve"])
    return SpecDocument(field, ring, W, degree_d, generators, J,
                        J_sqrt_lambda, curve)


def _parse_curve(field, ring, lines):
    components = []
    bundle_degrees = {}
    markings = []
    nodes = []
    divisor = []
    eta = {}
    for lineno, line in lines:
        words = line.split()
        head = words[0].lower()
        try:
            if head == "component":
                components.append(words[1])
            elif head == "bundle":
                # bundle c0 = 0, -1
                _, _, val = line.partition("=")
                bundle_degrees[words[1]] = [int(p) for p in val.split(",")]
            elif head == "marking":
                # marking c0 at 1 gamma diag(1) rig 1, z
                comp = words[1]
                rest = line[line.index(comp) + len(comp):]
                point_text, _, tail = rest.partition("gamma")
                point = _parse_scalar(field, lineno,
                                      point_text.replace("at", "", 1).strip())
                gamma_text, _, rig_text = tail.partition("rig")
                gamma = _parse_group_element(ring, lineno, gamma_text.strip())
                rig = [_parse_scalar(field, lineno, p)
                       for p in rig_text.split(",")]
                markings.append(Marking(comp, point, gamma, rig))
            elif head == "divisor":
                # divisor c0 at 0 mult 2
                comp = words[1]
                point = _parse_scalar(field, lineno, words[3])
                mult = int(words[5]) if len(words) > 5 else 1
                divisor.append((comp, point, mult))
            elif head == "node":
                # node c0 at -1 rig z ~ c1 at 1 rig 1
                left, _, right = line[len("node"):].partition("~")

                def branch(btext):
                    bwords = btext.split()
                    comp = bwords[0]
                    point = _parse_scalar(field, lineno, bwords[2])
                    rig = [_parse_scalar(field, lineno, p)
                           for p in " ".join(bwords[4:]).split(",")]
                    return (comp, point, rig)

                nodes.append(Node(branch(left), branch(right)))
            elif head == "eta":
                _, _, val = line.partition("=")
                eta[words[1]] = _parse_ratfun(field, lineno, val)
            else:
                raise SpecParseError(lineno, f"unknown [curve] entry {head!r}")
        except (IndexError, ValueError) as e:
            if isinstance(e, SpecParseError):
                raise
            raise SpecParseError(lineno, f"malformed {head!r} entry: {e}")
    return {"components": components, "bundle_degrees": bundle_degrees,
            "markings": markings, "nodes": nodes, "divisor": divisor,
            "eta": eta}


# -- matrix factorization files -------------------------------------------


SIGN_CONVENTION = "delta = d - f_{-1}; emitted potential is sum_i W_i"


def write_mf(mf, certificate=None):
    lines = ["[mf]"]
    lines.append(f"order = {mf.ring.field.order}")
    lines.append("variables = " + ", ".join(
        f"{n}:{w}" for n, w in zip(mf.ring.names, mf.ring.weights)))
    lines.append(f"potential = {mf.potential}")
    lines.append("p0 = " + ", ".join(f"{g.name}:{g.weight}" for g in mf.p0_gens))
    lines.append("p1 = " + ", ".join(f"{g.name}:{g.weight}" for g in mf.p1_gens))

    def matrix_text(m):
        return " ; ".join(", ".join(f"({c})" for c in row) for row in m)

    lines.append("delta0 = " + matrix_text(mf.delta0))
    lines.append("delta1 = " + matrix_text(mf.delta1))
    lines.append(f"sign_convention = {SIGN_CONVENTION}")
    if certificate is not None:
        lines.append("")
        lines.append("[certificate]")
        lines.append(json.dumps(certificate, indent=2, sort_keys=True))
    return "\n".join(lines) + "\n"


def _parse_gen_list(lineno, text):
    gens = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, w = part.rpartition(":")
        try:
            gens.append(Generator(name.strip(), int(w)))
        except ValueError:
            raise SpecParseError(lineno, f"bad generator entry {part!r}")
    return gens


def _parse_matrix(ring, lineno, text, rows, cols):
    text = text.strip()
    if rows == 0:
        if text:
            raise SpecParseError(lineno, "expected an empty matrix")
        return []
    if cols == 0:
        if text:
            raise SpecParseError(lineno, "expected an empty matrix")
        return [[] for _ in range(rows)]
    if not text:
        matrix = []
    else:
        matrix = []
        for rtext in text.split(";"):
            row = []
            for part in _split_toplevel(rtext, ","):
                part = part.strip()
                if part.startswith("(") and part.endswith(")"):
                    part = part[1:-1]
                try:
                    row.append(ring.parse(part))
                except (ValueError, IndexError) as e:
                    raise SpecParseError(lineno, f"bad entry {part!r}: {e}")
            matrix.append(row)
    if len(matrix) != rows or any(len(r) != cols for r in matrix):
        raise SpecParseError(lineno, f"matrix shape {len(matrix)} rows, "
                                     f"expected {rows} x {cols}")
    return matrix


def _split_toplevel(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or parts:
        parts.append("".join(cur))
    return parts


def parse_mf(text, check=False):
    """Read a matrix factorization file, returning (mf, certificate) where
    the certificate is the decoded [certificate] block or None; with
    check=True the identity delta^2 = W . id is re-verified from the file
    contents alone."""
    sections = _sections(text)
    if "mf" not in sections:
        raise SpecParseError(1, "missing [mf] section")
    kv = _keyvals([(n, l) for (n, l) in sections["mf"]])
    for key in ("order", "variables", "potential", "p0", "p1", "delta0", "delta1"):
        if key not in kv:
            raise SpecParseError(1, f"missing {key} in [mf]")
    lineno, val = kv["order"]
    field = CyclotomicField(int(val))
    lineno, val = kv["variables"]
    ring = _parse_variables(field, lineno, val)
    lineno, val = kv["potential"]
    potential = ring.parse(val)
    _, val0 = kv["p0"]
    _, val1 = kv["p1"]
    p0 = _parse_gen_list(kv["p0"][0], val0)
    p1 = _parse_gen_list(kv["p1"][0], val1)
    lineno, val = kv["delta0"]
    delta0 = _parse_matrix(ring, lineno, val, len(p1), len(p0))
    lineno, val = kv["delta1"]
    delta1 = _parse_matrix(ring, lineno, val, len(p0), len(p1))
    mf = MatrixFactorization(ring, p0, p1, delta0, delta1, potential,
                             check=check)
    certificate = None
    if "certificate" in sections:
        lines = sections["certificate"]
        blob = "\n".join(l for (_n, l) in lines)
        try:
            certificate = json.loads(blob)
        except json.JSONDecodeError as e:
            raise SpecParseError(lines[0][0] if lines else 1,
                                 f"bad certificate JSON: {e}")
    return mf, certificate


# -- koszul / fold / complex inputs ---------------------------------------


def _ring_from_sections(sections, section="ring"):
    kv_field = _keyvals(sections["field"]) if "field" in sections else {}
    if "order" not in kv_field:
        raise SpecParseError(1, "missing [field] order")
    field = CyclotomicField(int(kv_field["order"][1]))
    kv = _keyvals(sections[section])
    if "variables" not in kv:
        raise SpecParseError(1, f"missing variables in [{section}]")
    lineno, val = kv["variables"]
    return field, _parse_variables(field, lineno, val), kv


def parse_koszul(text):
    sections = _sections(text)
    if "koszul" not in sections or "ring" not in sections:
        raise SpecParseError(1, "koszul input needs [field], [ring], [koszul]")
    field, ring, _ = _ring_from_sections(sections)
    kv = _keyvals(sections["koszul"])
    if "alpha" not in kv or "beta" not in kv:
        raise SpecParseError(1, "missing alpha or beta in [koszul]")

    def plist(key):
        lineno, val = kv[key]
        out = []
        for part in _split_toplevel(val, ","):
            part = part.strip()
            if part.startswith("(") and part.endswith(")"):
                part = part[1:-1]
            try:
                out.append(ring.parse(part))
            except (ValueError, IndexError) as e:
                raise SpecParseError(lineno, f"bad {key} entry {part!r}: {e}")
        return out

    return ring, plist("alpha"), plist("beta")


def parse_scheme(text):
    """[scheme] with even variables, odd generators, their images, and the
    curving function f_{-1}; returns (scheme, f)."""
    sections = _sections(text)
    if "scheme" not in sections:
        raise SpecParseError(1, "missing [scheme] section")
    field, ring, kv = _ring_from_sections(sections, section="scheme")
    if "odd" not in kv:
        raise SpecParseError(1, "missing odd generators in [scheme]")
    lineno, val = kv["odd"]
    odd = _parse_gen_list(lineno, val)
    images = []
    for g in odd:
        key = f"d({g.name})"
        if key not in kv:
            raise SpecParseError(lineno, f"missing {key} in [scheme]")
        ln, v = kv[key]
        images.append(ring.parse(v))
    scheme = DgSchemePresentation(ring, odd, images)
    f = scheme.zero_element()
    if "f" in kv:
        ln, v = kv["f"]
        f = _parse_super_element(scheme, ln, v)
    return scheme, f


def _parse_super_element(scheme, lineno, text):
    names = {g.name: k for k, g in enumerate(scheme.odd_gens)}
    terms = {}
    for part in _split_toplevel(text, "+"):
        part = part.strip()
        if not part:
            continue
        if "*" not in part or not part.startswith("("):
            raise SpecParseError(lineno, f"term {part!r} must look like "
                                         f"(poly)*b0^b1")
        close = part.rindex(")")
        coeff = scheme.ring.parse(part[1:close])
        tail = part[close + 1:].lstrip("*").strip()
        try:
            subset = tuple(sorted(names[n] for n in tail.split("^"))) if tail \
                else ()
        except KeyError as e:
            raise SpecParseError(lineno, f"unknown odd generator {e}")
        cur = terms.get(subset, scheme.ring.zero) + coeff
        if cur:
            terms[subset] = cur
    return SuperElement(scheme, terms)


def parse_complex(text):
    sections = _sections(text)
    if "complex" not in sections:
        raise SpecParseError(1, "missing [complex] section")
    kv_field = _keyvals(sections["field"]) if "field" in sections else {}
    if "order" not in kv_field:
        raise SpecParseError(1, "missing [field] order")
    field = CyclotomicField(int(kv_field["order"][1]))
    kv = _keyvals(sections["complex"])
    ring = PolyRing(field, [], [])
    if "variables" in kv:
        lineno, val = kv["variables"]
        ring = _parse_variables(field, lineno, val)
    objects = {}
    diffs_text = {}
    for key, (lineno, val) in kv.items():
        if key.startswith("generators "):
            objects[int(key.split()[1])] = _parse_gen_list(lineno, val)
        elif key.startswith("d "):
            diffs_text[int(key.split()[1])] = (lineno, val)
    diffs = {}
    for n, (lineno, val) in diffs_text.items():
        rows = len(objects.get(n + 1, []))
        cols = len(objects.get(n, []))
        diffs[n] = _parse_matrix(ring, lineno, val, rows, cols)
    return FreeComplex(ring, objects, diffs, weight_check=False)
