"""Command-line front end.

Every subcommand builds a JSON report; ``--format table`` prints a short
human view of the same report.  Exit codes: 0 ok, 2 bad input,
3 degenerate alpha, 4 the methods disagree.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field as dc_field

from .arrangement import (
    ArrangementError,
    DegenerateModuliError,
    MultiArrangement,
    char_poly,
    lattice,
    x3,
)
from .derivations import Status, decide_free, saito_check
from .extension import (
    ExtensionSpec,
    build_extension,
    terao_trace,
    verify_extension,
)
from .field import Field, FieldError
from .poly import PolynomialError, parse_polynomial
from .restriction import (
    GridLineSpec,
    grid_line_arrangement,
    grid_line_free,
    grid_points_on_line,
    p1_exponents,
    yoshinaga3_free,
)
from .scan import METHODS, agreement, run_methods, scan, status_of
from .homological import (
    canonical_basis,
    check_cokernel_presentation,
    verify_chain_exactness,
    x3_chain_complex,
)

SCHEMA = "freemult.report/1"

EXIT_OK, EXIT_BAD_INPUT, EXIT_DEGENERATE, EXIT_DISAGREE = 0, 2, 3, 4


class Disagreement(Exception):
    def __init__(self, report):
        super().__init__("methods disagree")
        self.report = report


# -- request parsing -----------------------------------------------------------------

GLOBAL_FLAGS = ("field", "format", "seed", "jobs")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")

    p = argparse.ArgumentParser(prog="freemult", description="Free multiplicities on hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="freeness of (X3(alpha), m)")
    c.add_argument("--alpha", required=True)
    c.add_argument("--mult", required=True, help="m1,...,m6")
    c.add_argument("--method", choices=METHODS + ("all",), default="all")

    s = sub.add_parser("scan", parents=[common], help="method concordance over a grid")
    s.add_argument("--max-weight", type=int, default=10)
    s.add_argument("--alphas", default=None, help="comma-separated; default: -1,2,3 over Q, all of Fp")
    s.add_argument("--cells", action="store_true", help="include every grid cell in the JSON")

    ch = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial")
    ch.add_argument("--alpha", default=None, help="use X3(alpha)")
    ch.add_argument("--arrangement", default=None, help="arrangement JSON file")

    b = sub.add_parser("basis", parents=[common], help="basis of D(A, m) with a Saito certificate")
    b.add_argument("--alpha", default=None)
    b.add_argument("--mult", default=None)
    b.add_argument("--arrangement", default=None)
    b.add_argument("--canonical", type=int, default=None, help="explicit basis for alpha=-1, m=[2k,2k,2k,1,1,1]")

    pe = sub.add_parser("p1-exponents", parents=[common], help="exponents of points in P^1")
    pe.add_argument("--forms", required=True, help="comma-separated linear forms, e.g. x,y,x+y")
    pe.add_argument("--mult", required=True)
    pe.add_argument("--vars", default="x,y")

    g = sub.add_parser("grid-line", parents=[common], help="freeness of a grid plus a line")
    g.add_argument("--a", required=True)
    g.add_argument("--b", required=True)
    g.add_argument("--line", required=True, help="A,B,C")

    e = sub.add_parser("extend", parents=[common], help="build and verify a rank-4 free extension")
    e.add_argument("--order", type=int, default=None, help="order of alpha")
    e.add_argument("--alpha", default=None, help="alpha itself (overrides --order)")
    e.add_argument("--t", type=int, default=1)
    e.add_argument("--constants", default=None, help="A_1,...,A_t (default 1..t spread over orbits)")
    e.add_argument("--full-saito", action="store_true")

    cc = sub.add_parser("complex-check", parents=[common], help="exactness of the X3 chain complex")
    cc.add_argument("--alpha", default=None)
    cc.add_argument("--random", type=int, default=0, help="also check this many random alphas")
    return p


@dataclass
class RunRequest:
    command: str
    field: str = "Q"
    format: str = "table"
    seed: int = 0
    jobs: int = 1
    params: dict = dc_field(default_factory=dict)

    def to_argv(self) -> list:
        argv = [self.command, "--field", self.field, "--format", self.format,
                "--seed", str(self.seed), "--jobs", str(self.jobs)]
        for key, value in self.params.items():
            flag = "--" + key.replace("_", "-")
            if value is None or value is False:
                continue
            if value is True:
                argv.append(flag)
            else:
                argv.append(f"{flag}={value}")
        return argv

    def to_json(self):
        return {"command": self.command, "field": self.field, "format": self.format,
                "seed": self.seed, "jobs": self.jobs, "params": self.params}


_SIGNED_VALUE = re.compile(r"^-[0-9./,\-]+$")


def _attach_signed_values(argv) -> list:
    """Turn ``--b -1,-2`` into ``--b=-1,-2`` so argparse does not see a flag."""
    out = []
    argv = list(argv)
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _SIGNED_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def parse_request(argv) -> RunRequest:
    ns = vars(build_parser().parse_args(_attach_signed_values(argv)))
    cmd = ns.pop("command")
    glob = {k: ns.pop(k) for k in GLOBAL_FLAGS}
    return RunRequest(cmd, params=ns, **glob)


# -- helpers ---------------------------------------------------------------------------

def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _scalars(text: str, F: Field) -> tuple:
    return tuple(F(v.strip()) for v in text.split(","))


def _load_arrangement(path: str) -> MultiArrangement:
    with open(path) as fh:
        return MultiArrangement.from_json(fh.read())


def _x3_or_file(req: RunRequest, F: Field, mult=None) -> MultiArrangement:
    p = req.params
    if p.get("arrangement"):
        A = _load_arrangement(p["arrangement"])
        return A.with_mult(mult) if mult else A
    if p.get("alpha") is None:
        raise ValueError("give --alpha or --arrangement")
    return x3(F(p["alpha"]), F, mult)


def _verdict_json(v, F):
    if isinstance(v, Status):
        return {"status": str(v), "method": "predicted"}
    return v.to_json(F)


# -- subcommands --------------------------------------------------------------------------

def cmd_classify(req, F):
    alpha = F(req.params["alpha"])
    m = _ints(req.params["mult"])
    method = req.params["method"]
    methods = METHODS if method == "all" else (method,)
    res = run_methods(alpha, m, F, methods)
    statuses = {k: status_of(v) for k, v in res.items()}
    agree = agreement(statuses)
    report = {
        "alpha": F.to_json(alpha),
        "m": list(m),
        "verdicts": {k: _verdict_json(v, F) for k, v in res.items()},
        "agree": agree,
    }
    free = [v for v in res.values() if not isinstance(v, Status) and v.is_free]
    if free:
        report["exponents"] = list(free[0].exponents)
    if agree is False:
        raise Disagreement(report)
    return report


def _table_classify(r):
    lines = [f"alpha = {r['alpha']}, m = {r['m']}"]
    for k, v in r["verdicts"].items():
        lines.append(f"  {k:<12} {v['status']}")
    if "exponents" in r:
        lines.append(f"  exponents    {tuple(r['exponents'])}")
    lines.append(f"  agree        {r['agree']}")
    return "\n".join(lines)


def cmd_scan(req, F):
    p = req.params
    alphas = _scalars(p["alphas"], F) if p.get("alphas") else None
    rep = scan(F, p["max_weight"], alphas, jobs=req.jobs)
    out = rep.to_json(include_cells=bool(p.get("cells")))
    if rep.disagreements:
        raise Disagreement(out)
    return out


def _table_scan(r):
    lines = [
        f"field {r['field']}, weight <= {r['max_weight']}, alphas {r['alphas']}",
        f"  cells          {r['cells']}",
        f"  free cells     {len(r['free_cells'])}",
        f"  disagreements  {len(r['disagreements'])}",
        f"  unknown        {len(r['unknown'])}",
    ]
    for c in r["free_cells"]:
        lines.append(f"    free: alpha={c['alpha']} m={c['m']}")
    for c in r["disagreements"]:
        lines.append(f"    DISAGREE: alpha={c['alpha']} m={c['m']} {c['verdicts']}")
    return "\n".join(lines)


def cmd_charpoly(req, F):
    A = _x3_or_file(req, F)
    chi = char_poly(A, lattice(A))
    roots, rest = chi.integer_roots()
    return {
        "arrangement": A.to_dict(),
        "coefficients": list(chi.coeffs),
        "polynomial": str(chi),
        "integer_roots": roots,
        "cofactor": list(rest),
        "splits": len(rest) == 1,
    }


def _table_charpoly(r):
    return (f"chi(t) = {r['polynomial']}\n  integer roots {r['integer_roots']}, "
            f"cofactor {r['cofactor']}, splits: {r['splits']}")


def cmd_basis(req, F):
    p = req.params
    if p.get("canonical") is not None:
        k = p["canonical"]
        A = x3(F(-1), F, (2 * k,) * 3 + (1, 1, 1))
        thetas = canonical_basis(k, F)
        res = saito_check(A, thetas)
        return {
            "arrangement": A.to_dict(),
            "status": "Free" if res.ok else "NotFree",
            "basis": [t.to_json() for t in thetas],
            "exponents": [t.degree for t in thetas],
            "saito_k": F.to_json(res.k) if res.ok else None,
        }
    mult = _ints(p["mult"]) if p.get("mult") else None
    A = _x3_or_file(req, F, mult)
    v = decide_free(A)
    out = {"arrangement": A.to_dict()}
    out.update(v.to_json(F))
    return out


def _table_basis(r):
    lines = [f"status {r['status']}"]
    if r.get("exponents"):
        lines.append(f"  exponents {tuple(r['exponents'])}, Saito k = {r.get('saito_k')}")
    for i, b in enumerate(r.get("basis", []), 1):
        lines.append(f"  theta{i} = ({', '.join(b)})")
    if r["status"] != "Free" and "witness" in r:
        lines.append(f"  witness {r['witness']}")
    return "\n".join(lines)


def cmd_p1(req, F):
    p = req.params
    variables = tuple(v.strip() for v in p["vars"].split(","))
    if len(variables) != 2:
        raise ValueError("--vars needs exactly two names")
    forms = []
    for text in p["forms"].split(","):
        f = parse_polynomial(text, F, variables)
        if not f or f.degree != 1 or not f.is_homogeneous():
            raise ValueError(f"{text!r} is not a linear form")
        forms.append(f.coefficient_vector(1))
    mult = _ints(p["mult"])
    P = MultiArrangement(F, forms, mult, variables)
    return {"arrangement": P.to_dict(), "exponents": list(p1_exponents(P))}


def cmd_grid(req, F):
    p = req.params
    G = GridLineSpec(_scalars(p["a"], F), _scalars(p["b"], F), _scalars(p["line"], F), F)
    A = grid_line_arrangement(G)
    pts = grid_points_on_line(G)
    free = grid_line_free(G)
    yosh = yoshinaga3_free(A, len(A) - 1)
    out = {
        "n": G.n,
        "grid_points_on_line": [[F.to_json(G.a[i]), F.to_json(G.b[j])] for i, j in pts],
        "q": len(pts),
        "free": free,
        "yoshinaga": yosh,
        "chi": list(char_poly(A).coeffs),
        "agree": free == yosh,
    }
    if free != yosh:
        raise Disagreement(out)
    return out


def _alpha_of_order(order: int, F: Field):
    for a in (F.elements() if not F.is_rational else (F(-1),)):
        if a and a != F.one and F.order(a) == order:
            return a
    raise ValueError(f"{F} has no element of order {order} usable as alpha")


def cmd_extend(req, F):
    p = req.params
    if p.get("alpha") is not None:
        alpha = F(p["alpha"])
    elif p.get("order") is not None:
        alpha = _alpha_of_order(p["order"], F)
    else:
        raise ValueError("give --order or --alpha")
    if p.get("constants"):
        consts = _scalars(p["constants"], F)
    else:
        consts, seen = [], set()
        c = F.one
        order = F.order(alpha)
        while len(consts) < p["t"]:
            orbit = {F.mul(F.pow(alpha, j), c) for j in range(order or 1)}
            if c and not orbit & seen:
                consts.append(c)
                seen |= orbit
            c = F.add(c, F.one)
            if c == F.one:
                raise ValueError("not enough alpha-orbits in the field")
    spec = ExtensionSpec(alpha, tuple(consts), F, p["t"])
    A4 = build_extension(spec)
    rep = verify_extension(A4, full_saito=bool(p.get("full_saito")))
    return {
        "alpha": F.to_json(alpha),
        "order": spec.order,
        "t": spec.t,
        "n": spec.n,
        "hyperplanes": len(A4),
        "arrangement": A4.to_dict(),
        "verification": rep.to_json(),
        "trace": [s.to_json() for s in terao_trace(A4)],
    }


def _table_extend(r):
    v = r["verification"]
    lines = [
        f"alpha = {r['alpha']} (order {r['order']}), t = {r['t']}, n = {r['n']}, {r['hyperplanes']} hyperplanes",
        f"  restriction onto w=0: X3({v.get('x3_alpha')}) with m = {v.get('x3_mult')}, free: {v['restriction_free']}",
        f"  locally free along w=0: {v['locally_free']} ({len(v['local'])} flats)",
        f"  free: {v['free']}",
    ]
    for s in r["trace"]:
        lines.append(f"  [{'ok' if s['ok'] else 'FAIL'}] {s['step']}")
    return "\n".join(lines)


def cmd_complex(req, F):
    p = req.params
    alphas = []
    if p.get("alpha") is not None:
        alphas.append(F(p["alpha"]))
    rng = random.Random(req.seed)
    while len(alphas) < (1 if p.get("alpha") is not None else 0) + p["random"]:
        if F.is_rational:
            a = F(f"{rng.randint(-50, 50)}/{rng.randint(1, 20)}")
        else:
            a = F(rng.randrange(F.p))
        if a and a != F.one:
            alphas.append(a)
    if not alphas:
        raise ValueError("give --alpha or --random N")
    rows = []
    for a in alphas:
        cx = x3_chain_complex(a, F)
        rows.append({
            "alpha": F.to_json(a),
            "exact": verify_chain_exactness(a, F),
            "cokernel_presentation": check_cokernel_presentation(cx),
            "delta1": [[F.to_json(c) for c in r] for r in cx.delta1],
        })
    return {"checks": rows, "all_exact": all(r["exact"] for r in rows)}


def _table_complex(r):
    return "\n".join(f"alpha = {c['alpha']}: exact {c['exact']}, cokernel {c['cokernel_presentation']}"
                     for c in r["checks"])


COMMANDS = {
    "classify": (cmd_classify, _table_classify),
    "scan": (cmd_scan, _table_scan),
    "charpoly": (cmd_charpoly, _table_charpoly),
    "basis": (cmd_basis, _table_basis),
    "p1-exponents": (cmd_p1, lambda r: f"exponents {tuple(r['exponents'])}"),
    "grid-line": (cmd_grid, lambda r: f"q = {r['q']} of n = {r['n']}: free {r['free']} (rank-3 test {r['yoshinaga']})"),
    "extend": (cmd_extend, _table_extend),
    "complex-check": (cmd_complex, _table_complex),
}


def run(req: RunRequest):
    """Execute a request; returns ``(exit code, report dict)``."""
    t0 = time.perf_counter()
    report = {"schema": SCHEMA, "request": req.to_json()}
    try:
        F = Field.parse(req.field)
        handler, _ = COMMANDS[req.command]
        report["result"] = handler(req, F)
        code = EXIT_OK
    except Disagreement as exc:
        report["result"] = exc.report
        report["error"] = "methods disagree"
        code = EXIT_DISAGREE
    except DegenerateModuliError as exc:
        report["error"] = str(exc)
        code = EXIT_DEGENERATE
    except (FieldError, ArrangementError, PolynomialError, ValueError, OSError, json.JSONDecodeError) as exc:
        report["error"] = str(exc)
        code = EXIT_BAD_INPUT
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return code, report


def render(req: RunRequest, code: int, report: dict) -> str:
    if req.format == "json":
        return json.dumps(report, indent=2)
    if "result" not in report:
        return f"error: {report['error']}"
    _, table = COMMANDS[req.command]
    text = table(report["result"])
    if "error" in report:
        text += f"\nerror: {report['error']}"
    return text


def main(argv=None) -> int:
    req = parse_request(sys.argv[1:] if argv is None else argv)
    code, report = run(req)
    out = render(req, code, report)
    print(out, file=sys.stdout if code in (EXIT_OK, EXIT_DISAGREE) else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
