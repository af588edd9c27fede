"""Command-line front end.

    semilin spectral FILE [--self-adjoint | --normal] [--tol T]
    semilin adjoint FILE [--gram FILE]
    semilin gram-schmidt FILE [--gram FILE]
    semilin witt {add,mul,frobenius,valuation} FILE [FILE]
    semilin classify FILE [--extend]

Inputs and outputs are JSON documents (``-`` reads stdin).  Floats are
written with 17 significant digits and keys in a fixed order, so equal
inputs give byte-identical output.  Exit codes: 0 ok, 1 parse error,
2 failed precondition, 3 coefficient field too small.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import inner_product as ip
from . import spectral as sp
from .finite_field import GF, FieldError, FieldSpec
from .isocrystal import FieldTooSmallError, Isocrystal1D, classify, verify_equivalence
from .scalar import COMPLEX, REAL
from .semilinear import DimensionError
from .witt import (
    FractionFieldElement, WittContext, WittContextMismatchError, WittVector, valuation,
    witt_add, witt_frobenius, witt_mul,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_FIELD = 0, 1, 2, 3
SCALARS = {"real": REAL, "complex": COMPLEX}


class ParseError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# -- output -----------------------------------------------------------------

def _fmt(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError("non-finite float in output")
        return format(x + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_fmt(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc: dict) -> str:
    """One top-level key per line, everything else inline."""
    lines = [f"  {json.dumps(k)}: {_fmt(v)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _scalar_out(K, z):
    if K is COMPLEX:
        return [float(np.real(z)), float(np.imag(z))]
    return float(np.real(z))


def matrix_doc(K, M) -> dict:
    M = np.asarray(M)
    return {"scalar": K.name.lower(), "rows": [[_scalar_out(K, z) for z in row] for row in M]}


# -- input ------------------------------------------------------------------

def _reject_constant(name):
    raise ParseError(f"non-finite number {name} in input")


def read_text(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ParseError(str(exc)) from None


def read_json(path: str, text: str | None = None):
    text = read_text(path) if text is None else text
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _number(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ParseError("non-finite number in input")
    return float(v)


def parse_matrix(doc) -> tuple:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError("matrix document needs 'scalar' and 'rows'")
    K = SCALARS.get(doc.get("scalar", "real"))
    if K is None:
        raise ParseError(f"unknown scalar {doc.get('scalar')!r}")
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a non-empty list of lists")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ParseError("matrix is not rectangular")
    M = np.zeros((len(rows), width), dtype=K.dtype)
    for i, row in enumerate(rows):
        for j, z in enumerate(row):
            if K is COMPLEX and isinstance(z, list):
                if len(z) != 2:
                    raise ParseError("complex entries are [re, im] pairs")
                M[i, j] = complex(_number(z[0]), _number(z[1]))
            else:
                M[i, j] = _number(z)
    return K, M


def _space(K, n: int, gram_path: str | None):
    if gram_path is None:
        return ip.InnerProductSpace(K, n)
    KG, G = parse_matrix(read_json(gram_path))
    if KG is COMPLEX and K is REAL:
        raise ParseError("complex Gram matrix for a real operator")
    try:
        return ip.InnerProductSpace(K, n, G.astype(K.dtype) if K is COMPLEX else G)
    except (DimensionError, ip.NotPositiveDefiniteError) as exc:
        raise PreconditionError(str(exc)) from None


def parse_field(spec: str) -> FieldSpec:
    """``p,r`` or ``p,r,c0,c1,...,cr`` (modulus coefficients, constant first)."""
    try:
        parts = [int(s) for s in spec.split(",")]
    except ValueError:
        raise ParseError(f"bad field spec {spec!r}") from None
    if len(parts) < 2:
        raise ParseError("field spec is p,r[,modulus]")
    try:
        return GF(parts[0], parts[1], tuple(parts[2:]) if len(parts) > 2 else None)
    except FieldError as exc:
        raise ParseError(str(exc)) from None


_TEXT = re.compile(r"^\s*p=(\d+)\s+n=(\d+)\s+field=(F[\d^]+)(?:\[([\d,]+)\])?\s+coeffs=(\[.*\])\s*$")


def _field_from_name(p: int, name: str, modulus: str | None) -> FieldSpec:
    """``F<order>`` or ``F<p>^<r>``, optionally followed by a modulus."""
    m = re.fullmatch(r"F(\d+)(?:\^(\d+))?", name)
    if not m:
        raise ParseError(f"bad field name {name!r}")
    if m.group(2):
        if int(m.group(1)) != p:
            raise ParseError(f"{name} does not have characteristic {p}")
        order = p ** int(m.group(2))
    else:
        order = int(m.group(1))
    r = round(math.log(order, p)) if order > 1 else 0
    if r < 1 or p ** r != order:
        raise ParseError(f"F{order} is not a field of characteristic {p}")
    mod = tuple(int(c) for c in modulus.split(",")) if modulus else None
    try:
        return GF(p, r, mod)
    except FieldError as exc:
        raise ParseError(str(exc)) from None


def _coeff_list(field: FieldSpec, raw, n: int):
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError(f"expected {n} coefficients")
    out = []
    for c in raw:
        c = [c] if isinstance(c, int) and not isinstance(c, bool) else c
        if not isinstance(c, list) or len(c) > field.r or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise ParseError(f"coefficient {c!r} is not a list of at most {field.r} integers")
        out.append(field(c))
    return out


def parse_witt_doc(doc, field: FieldSpec | None = None, precision: int | None = None) -> tuple:
    """(context, coefficient list, extra keys) from a JSON document or the text form."""
    if isinstance(doc, str):
        m = _TEXT.match(doc)
        if not m:
            raise ParseError("unrecognised Witt vector text")
        p, n = int(m.group(1)), int(m.group(2))
        F = _field_from_name(p, m.group(3), m.group(4))
        try:
            raw = json.loads(m.group(5))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
        doc = {"p": p, "n": n, "field": {"p": p, "r": F.r, "modulus": list(F.modulus)}, "coeffs": raw}
    if not isinstance(doc, dict):
        raise ParseError("Witt document must be an object or text")
    for key in ("p", "n", "coeffs"):
        if key not in doc:
            raise ParseError(f"Witt document lacks {key!r}")
    p, n = doc["p"], doc["n"]
    if not isinstance(p, int) or not isinstance(n, int) or n < 1:
        raise ParseError("'p' and 'n' must be integers, n >= 1")
    if "field" in doc:
        f = doc["field"]
        if isinstance(f, str):
            m = re.fullmatch(r"(F[\d^]+)(?:\[([\d,]+)\])?", f)
            if not m:
                raise ParseError(f"bad field name {f!r}")
            F = _field_from_name(p, m.group(1), m.group(2))
        else:
            try:
                F = GF(int(f["p"]), int(f["r"]), tuple(f["modulus"]) if f.get("modulus") else None)
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad field object: {exc}") from None
    elif field is not None:
        F = field
    else:
        F = GF(p, 1)
    if field is not None and field != F:
        raise PreconditionError(f"document field {F.name} differs from --field {field.name}")
    if F.p != p:
        raise ParseError(f"field {F.name} has characteristic {F.p}, not {p}")
    coeffs = _coeff_list(F, doc["coeffs"], n)
    if precision is not None:
        if not 1 <= precision <= n:
            raise PreconditionError(f"--precision must lie in 1..{n}")
        coeffs, n = coeffs[:precision], precision
    try:
        ctx = WittContext(p, n, F)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return ctx, coeffs, doc


def witt_doc(x: WittVector) -> dict:
    F = x.ctx.field
    return {
        "p": x.ctx.p,
        "n": x.ctx.n,
        "field": {"p": F.p, "r": F.r, "modulus": list(F.modulus)},
        "coeffs": [c.coeffs for c in x.coeffs],
    }


def witt_text(x: WittVector) -> str:
    coeffs = ",".join("[" + ",".join(map(str, c.coeffs)) + "]" for c in x.coeffs)
    return f"p={x.ctx.p} n={x.ctx.n} field={x.ctx.field.name} coeffs=[{coeffs}]"


# -- commands ---------------------------------------------------------------

def cmd_spectral(args) -> dict:
    K, T = parse_matrix(read_json(args.input))
    n, m = T.shape
    if n != m:
        raise PreconditionError(f"matrix is {n}x{m}, not square")
    space = ip.InnerProductSpace(K, n)
    try:
        if args.normal:
            dec = sp.diagonalize_normal(space, T, tol=args.tol)
        else:
            dec = sp.diagonalize_self_adjoint(space, T, tol=args.tol)
    except (sp.NotSelfAdjointError, sp.NotNormalError) as exc:
        raise PreconditionError(str(exc)) from None
    Phi = dec.phi
    ortho = float(np.max(np.abs(K.conj(Phi.T) @ Phi - np.eye(n)), initial=0.0))
    recon = float(np.max(np.abs(dec.reconstruct() - T), initial=0.0))
    EK = COMPLEX if np.iscomplexobj(dec.eigenvalues) else REAL
    return {
        "scalar": K.name.lower(),
        "eigenvalues": [_scalar_out(EK, z) for z in dec.eigenvalues],
        "unitary": matrix_doc(K, Phi)["rows"],
        "residuals": {"orthonormality": ortho, "reconstruction": recon},
    }


def cmd_adjoint(args) -> dict:
    K, A = parse_matrix(read_json(args.input))
    m, n = A.shape
    if args.gram is not None and m != n:
        raise PreconditionError("a Gram matrix needs a square operator")
    E = _space(K, n, args.gram)
    F = E if args.gram is not None else ip.InnerProductSpace(K, m)
    return matrix_doc(K, ip.adjoint(E, F, A))


def cmd_gram_schmidt(args) -> dict:
    K, V = parse_matrix(read_json(args.input))
    space = _space(K, V.shape[1], args.gram)
    try:
        Q = ip.gram_schmidt(space, list(V))
    except ip.LinearDependenceError as exc:
        raise PreconditionError(str(exc)) from None
    return matrix_doc(K, np.array(Q))


def _load_witt(path, args):
    if path.startswith("p="):
        doc = path
    else:
        text = read_text(path)
        doc = text.strip() if text.lstrip().startswith("p=") else read_json(path, text)
    ctx, coeffs, _ = parse_witt_doc(doc, args.field, args.precision)
    return WittVector(ctx, tuple(coeffs))


def cmd_witt(args) -> dict:
    x = _load_witt(args.inputs[0], args)
    needs_two = args.op in ("add", "mul")
    if needs_two != (len(args.inputs) == 2):
        raise ParseError(f"witt {args.op} takes {2 if needs_two else 1} input(s)")
    if needs_two:
        y = _load_witt(args.inputs[1], args)
        if y.ctx != x.ctx:
            raise PreconditionError(f"contexts differ: {x.ctx} vs {y.ctx}")
        op = witt_add if args.op == "add" else witt_mul
        return witt_doc(op(x.ctx, x, y))
    if args.op == "frobenius":
        return witt_doc(witt_frobenius(x.ctx, x))
    v = valuation(x.ctx, x)
    return {"valuation": "inf" if v == math.inf else v}


def cmd_classify(args) -> dict:
    doc = read_json(args.input)
    ctx, coeffs, raw = parse_witt_doc(doc, args.field, args.precision)
    m = raw.get("m", 0)
    if not isinstance(m, int) or isinstance(m, bool):
        raise ParseError("'m' must be an integer")
    c = FractionFieldElement.from_witt(WittVector(ctx, tuple(coeffs)))
    if c.is_zero():
        raise PreconditionError("cannot classify the zero structure constant")
    X = Isocrystal1D(c.scale_p(m))
    E = classify(X, extend=args.extend)
    report = verify_equivalence(X, E)
    return {
        "slope": E.slope,
        "unit": witt_text(E.y.unit),
        "verified": bool(report),
        "precision": E.precision,
    }


# -- entry point ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semilin", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8, help="predicate tolerance (default 1e-8)")
        p.add_argument("--precision", type=int, default=None, help="truncate Witt inputs to n coefficients")
        p.add_argument("--field", type=parse_field, default=None, help="p,r[,modulus]")

    s = sub.add_parser("spectral", help="diagonalise a self-adjoint or normal matrix")
    s.add_argument("input")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--self-adjoint", action="store_true")
    mode.add_argument("--normal", action="store_true")
    common(s)
    s.set_defaults(run=cmd_spectral)

    a = sub.add_parser("adjoint", help="adjoint of a matrix")
    a.add_argument("input")
    a.add_argument("--gram", default=None)
    common(a)
    a.set_defaults(run=cmd_adjoint)

    g = sub.add_parser("gram-schmidt", help="orthonormalise the rows of a matrix")
    g.add_argument("input")
    g.add_argument("--gram", default=None)
    common(g)
    g.set_defaults(run=cmd_gram_schmidt)

    w = sub.add_parser("witt", help="Witt vector arithmetic")
    w.add_argument("op", choices=["add", "mul", "frobenius", "valuation"])
    w.add_argument("inputs", nargs="+")
    common(w)
    w.set_defaults(run=cmd_witt)

    c = sub.add_parser("classify", help="slope and unit of a one-dimensional isocrystal")
    c.add_argument("input")
    c.add_argument("--extend", action="store_true",
                   help="enlarge the coefficient field when a step has no root")
    common(c)
    c.set_defaults(run=cmd_classify)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        doc = args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (PreconditionError, WittContextMismatchError, DimensionError) as exc:
        print(f"precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except FieldTooSmallError as exc:
        print(f"field too small: {exc}", file=stderr)
        return EXIT_FIELD
    except sp.ConvergenceError as exc:
        print(f"no convergence: {exc}", file=stderr)
        return EXIT_PRECONDITION
    stdout.write(dumps(doc))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
