"""
Command line front end.

    tiltcalc check    --builtin contraction:1,1,2 --divisor D
    tiltcalc walls    --builtin contraction:1,1,2 --class O_D:D --format csv
    tiltcalc charge   --builtin blowup:1 --class "O_E(2)" --alpha-sq 1 --beta 0 --s 1/2
    tiltcalc sweep    weierstrass:9 --grid 1/10,1/4,26/100,1/2,1 --format csv
    tiltcalc validate --config ring.json

Exit codes: 0 success (criterion true), 1 criterion false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import warnings
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from .blowup import (
    BlowupGeometry,
    bridgeland_slope,
    central_charge,
    make_blowup_geometry,
    transport_ch,
    verify_factor_three,
)
from .bmt import (
    bmt_defect,
    check_divisor_counterexample,
    contraction_margin,
    positivity_check,
    weierstrass_margin,
    weierstrass_scenario,
)
from .chern import (
    ChernCharacter,
    ch_exceptional_twist,
    ch_ideal_point,
    ch_line_bundle,
    ch_skyscraper,
    ch_structure_sheaf,
    ch_structure_sheaf_divisor,
)
from .ring import (
    IntersectionRing,
    as_rational,
    make_contraction_ring,
    make_rank_one_ring,
    make_weierstrass_ring,
    pair,
    triple,
    validate,
)
from .tilt import (
    INF,
    Caps,
    LambdaVector,
    Region,
    StabilityParams,
    enumerate_candidate_walls,
    lattice_steps,
    slope_nu,
    to_lambda,
)

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command line or configuration input (exit code 2)."""


def fmt(x) -> str | None:
    if x is None:
        return None
    if x is INF:
        return "+inf"
    return str(Fraction(x))


def approx(x) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 15
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def parse_rational(text: str, what: str) -> Fraction:
    try:
        return as_rational(str(text))
    except (ValueError, TypeError):
        raise InputError(f"{what}: expected a rational like 3 or -1/2, got {text!r}") from None


# -- geometry --------------------------------------------------------------


@dataclass
class Geometry:
    """A parsed configuration: the ring classes live on, and the stability data."""

    kind: str
    args: tuple
    ring: IntersectionRing
    H: object
    B0: object
    Gamma: object
    default_divisor: str | None = None
    blowup: BlowupGeometry | None = None

    def params(self, alpha_sq, beta, s=None) -> StabilityParams:
        if self.blowup is not None:
            return self.blowup.lifted_params(alpha_sq, beta, s)
        return StabilityParams(self.H, self.B0, alpha_sq, beta, s, self.Gamma)

    @property
    def class_ring(self) -> IntersectionRing:
        return self.blowup.ring if self.blowup is not None else self.ring

    @property
    def tilt_H(self):
        return self.blowup.H_tilde if self.blowup is not None else self.H

    @property
    def tilt_B0(self):
        return self.blowup.B0_tilde if self.blowup is not None else self.B0

    def describe(self) -> dict:
        out = {
            "geometry": self.kind,
            "ring": self.ring.name,
            "H": str(self.H),
            "B0": str(self.B0),
            "Gamma": str(self.Gamma),
        }
        if self.args:
            out["builtin_args"] = [fmt(a) for a in self.args]
        if self.blowup is not None:
            out["blowup"] = True
        return out


def _builtin(spec: str):
    name, _, rest = spec.partition(":")
    name = name.strip()
    args = [parse_rational(a, f"builtin {name}") for a in rest.split(",")] if rest.strip() else []
    if name == "contraction":
        if len(args) != 3:
            raise InputError("contraction needs L3,D3,m")
        L3, D3, m = args
        if m ** 3 * L3 <= D3:
            raise InputError(f"H = mL - D is not defined: m^3 L^3 = {m ** 3 * L3} <= D^3 = {D3}")
        ring = make_contraction_ring(L3, D3)
        H = m * ring.basis_divisor("L") - ring.basis_divisor("D")
        return name, tuple(args), ring, H, "D"
    if name == "weierstrass":
        if len(args) != 2:
            raise InputError("weierstrass needs KS2,t")
        KS2, t = args
        if t <= 0:
            raise InputError("t must be positive")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ring, Theta, H = weierstrass_scenario(KS2, t)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return name, tuple(args), ring, H, "Theta"
    if name == "blowup":
        if len(args) != 1:
            raise InputError("blowup needs H3")
        ring = make_rank_one_ring(args[0], "H")
        return name, tuple(args), ring, ring.basis_divisor("H"), None
    raise InputError(f"unknown builtin {name!r} (contraction, weierstrass, blowup)")


def _explicit_ring(spec: dict) -> IntersectionRing:
    try:
        divisors = list(spec["divisors"])
        curves = list(spec["curves"])
        raw_mult = spec["mult"]
        raw_pairing = spec["pairing"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"ring needs divisors, curves, mult and pairing ({exc})") from None
    # build a scaffold to parse curve expressions in the mult table
    n, c = len(divisors), len(curves)
    zero = [[[0] * c for _ in range(n)] for _ in range(n)]
    scaffold = IntersectionRing(tuple(divisors), tuple(curves), zero, [[0] * c for _ in range(n)])
    mult = []
    for row in raw_mult:
        out_row = []
        for entry in row:
            out_row.append(scaffold.curve(entry).coeffs if isinstance(entry, (str, dict)) else entry)
        mult.append(out_row)
    return IntersectionRing(tuple(divisors), tuple(curves), mult, raw_pairing,
                            name=spec.get("name", "explicit"))


def load_config_text(text: str, source: str = "<config>") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}:1:1: configuration must be a JSON object")
    return data


def build_geometry(config: dict | None, builtin: str | None, force_blowup: bool = False) -> Geometry:
    config = dict(config or {})
    if builtin:
        config["builtin"] = builtin
        config.pop("ring", None)
    try:
        if "builtin" in config and "ring" in config:
            raise InputError("configuration has both 'builtin' and 'ring'")
        if "builtin" in config:
            kind, args, ring, H, default_div = _builtin(str(config["builtin"]))
        elif "ring" in config:
            ring = _explicit_ring(config["ring"])
            kind, args, H, default_div = "explicit", (), None, None
        else:
            raise InputError("no geometry given: use --builtin or a config with 'builtin' or 'ring'")
        problems = validate(ring)
        if problems:
            raise InputError("ring fails validation: " + "; ".join(problems))
        if "H" in config:
            H = ring.divisor(_expr(config["H"]))
        if H is None:
            raise InputError("explicit rings need a polarization 'H'")
        B0 = ring.divisor(_expr(config.get("B0", "0")))
        Gamma = ring.curve(_expr(config.get("Gamma", "0")))
        if triple(H, H, H) <= 0:
            raise InputError("H^3 must be positive")
        geom = Geometry(kind, args, ring, H, B0, Gamma, default_div)
        if kind == "blowup" or config.get("blowup") or force_blowup:
            geom.blowup = make_blowup_geometry(H, B0, Gamma)
        return geom
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None


def _expr(value):
    if isinstance(value, (int, str, list, dict)) and not isinstance(value, bool):
        return str(value) if isinstance(value, int) else value
    raise InputError(f"cannot interpret {value!r} as a class")


# -- classes ---------------------------------------------------------------


def parse_class(text: str, ring: IntersectionRing) -> ChernCharacter:
    """
    Chern character literals: ``O``, ``O(2L-D)``, ``O_D:E``, ``point``,
    ``ideal_point``, ``O_E(k)``, or a JSON object with keys ch0..ch3.
    """
    t = text.strip()
    try:
        if t.startswith("{"):
            data = load_config_text(t, "<class>")
            return ChernCharacter.make(
                ring,
                _expr(data.get("ch0", 0)),
                _expr(data.get("ch1", "0")),
                _expr(data.get("ch2", "0")),
                _expr(data.get("ch3", 0)),
            )
        if t == "O":
            return ch_structure_sheaf(ring)
        if t in ("point", "skyscraper"):
            return ch_skyscraper(ring)
        if t == "ideal_point":
            return ch_ideal_point(ring)
        if t.startswith("O_E(") and t.endswith(")"):
            k = parse_rational(t[4:-1], "O_E twist")
            if k.denominator != 1:
                raise InputError("O_E(k) needs an integer k")
            return ch_exceptional_twist(ring, int(k))
        if t.startswith("O_D:"):
            return ch_structure_sheaf_divisor(ring.divisor(t[4:]))
        if t.startswith("O_D(") and t.endswith(")"):
            return ch_structure_sheaf_divisor(ring.divisor(t[4:-1]))
        if t.startswith("O(") and t.endswith(")"):
            return ch_line_bundle(ring.divisor(t[2:-1]))
    except (ValueError, TypeError) as exc:
        raise InputError(f"class {text!r}: {exc}") from None
    raise InputError(f"cannot parse class {text!r}")


def ch_out(ch: ChernCharacter) -> dict:
    return {
        "ch0": fmt(ch.ch0),
        "ch1": str(ch.ch1),
        "ch2": str(ch.ch2),
        "ch3": fmt(ch.ch3),
    }


# -- output ----------------------------------------------------------------


def render(report: dict, fmt_name: str, table: list[dict] | None = None,
           columns: list[str] | None = None) -> str:
    if fmt_name == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if table is not None:
            writer.writerow(columns)
            for row in table:
                writer.writerow(["" if row.get(c) is None else row[c] for c in columns])
        else:
            writer.writerow(["key", "value"])
            for key, value in _flatten(report["outputs"]):
                writer.writerow([key, value])
        return buf.getvalue()
    lines = [f"{report['command']}: {', '.join(f'{k}={v}' for k, v in report['inputs'].items())}"]
    if table is not None:
        widths = {c: max([len(c)] + [len(str(r.get(c) if r.get(c) is not None else "")) for r in table])
                  for c in columns}
        lines.append("  ".join(c.rjust(widths[c]) for c in columns))
        for row in table:
            lines.append("  ".join(str(row.get(c) if row.get(c) is not None else "").rjust(widths[c])
                                   for c in columns))
        rest = {k: v for k, v in report["outputs"].items() if k != "rows"}
    else:
        rest = report["outputs"]
    for key, value in _flatten(rest):
        lines.append(f"  {key:<24} {value}{_approx_suffix(value)}")
    return "\n".join(lines) + "\n"


def _approx_suffix(value) -> str:
    if isinstance(value, str) and "/" in value:
        try:
            return f"   (approx {approx(Fraction(value))})"
        except (ValueError, ZeroDivisionError):
            return ""
    return ""


def _flatten(d, prefix=""):
    for key, value in d.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif isinstance(value, list):
            yield name, "[" + ", ".join(json.dumps(v) if not isinstance(v, str) else v for v in value) + "]"
        elif isinstance(value, bool):
            yield name, "true" if value else "false"
        else:
            yield name, "" if value is None else value


def emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def _geometry_from_args(args, force_blowup=False) -> Geometry:
    config = None
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from None
        config = load_config_text(text, args.config)
    return build_geometry(config, args.builtin, force_blowup)


def cmd_check(args):
    geom = _geometry_from_args(args)
    name = args.divisor or geom.default_divisor
    if name is None:
        raise InputError("--divisor is required for this geometry")
    ring, H = geom.ring, geom.H
    try:
        D = ring.divisor(name)
        rep = check_divisor_counterexample(D, H, geom.Gamma)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    outputs = {
        "satisfied": rep.satisfied,
        "margin": fmt(rep.margin),
        "beta0": fmt(rep.beta0),
        "alpha_sq_lower": fmt(rep.alpha_sq_lower),
        "alpha_sq_upper": fmt(rep.alpha_sq_upper),
        "witness_alpha_sq": fmt(rep.witness_alpha_sq),
        "intersections": {
            "H^3": fmt(triple(H, H, H)),
            "D.H^2": fmt(triple(D, H, H)),
            "D^2.H": fmt(triple(D, D, H)),
            "D^3": fmt(triple(D, D, D)),
            "Gamma.D": fmt(pair(D, geom.Gamma)),
        },
    }
    if rep.satisfied:
        params = StabilityParams(H, ring.zero_divisor(), rep.witness_alpha_sq, rep.beta0, None, geom.Gamma)
        ch = ch_structure_sheaf_divisor(D)
        outputs["defect_at_witness"] = fmt(bmt_defect(params, ch))
        outputs["nu_at_witness"] = fmt(slope_nu(params, ch))
    if geom.kind == "contraction" and name == "D" and not any(geom.Gamma.degrees()):
        L3, D3, m = geom.args
        outputs["closed_form_margin"] = fmt(contraction_margin(L3, D3, m))
    if geom.kind == "weierstrass" and name == "Theta" and not any(geom.Gamma.degrees()):
        outputs["closed_form_margin"] = fmt(weierstrass_margin(*geom.args))
    inputs = dict(geom.describe(), divisor=str(D))
    return {"command": "check", "inputs": inputs, "outputs": outputs}, None, None, (
        EXIT_TRUE if rep.satisfied else EXIT_FALSE)


def _class_from_args(args, geom: Geometry) -> ChernCharacter:
    if not args.class_:
        raise InputError("--class is required")
    return parse_class(args.class_, geom.class_ring)


def cmd_walls(args):
    geom = _geometry_from_args(args)
    H, B0 = geom.tilt_H, geom.tilt_B0
    if args.lambda_:
        parts = args.lambda_.split(",")
        if len(parts) != 3:
            raise InputError("--lambda needs v0,v1,v2")
        v = LambdaVector.of(*(parse_rational(p, "--lambda") for p in parts))
        label = args.lambda_
    else:
        ch = _class_from_args(args, geom)
        v = to_lambda(H, B0, ch)
        label = args.class_
    region_args = [parse_rational(x, flag) for x, flag in (
        (args.beta_min, "--beta-min"), (args.beta_max, "--beta-max"), (args.alpha_sq_max, "--alpha-sq-max"))]
    try:
        region = Region(*region_args)
        caps = Caps(args.max_rank, args.max_ch1, args.max_ch2)
        steps = lattice_steps(H, B0, v)
        if args.ch2_step:
            steps = (steps[0], steps[1], parse_rational(args.ch2_step, "--ch2-step"))
        if args.ch1_step:
            steps = (steps[0], parse_rational(args.ch1_step, "--ch1-step"), steps[2])
        found = enumerate_candidate_walls(v, region, caps, steps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = [
        {"center": fmt(wl.center), "radius_sq": fmt(wl.radius_sq),
         "w0": fmt(w.v0), "w1": fmt(w.v1), "w2": fmt(w.v2)}
        for w, wl in found
    ]
    inputs = dict(geom.describe(), **{
        "class": label,
        "beta_min": fmt(region.beta_min), "beta_max": fmt(region.beta_max),
        "alpha_sq_max": fmt(region.alpha_sq_max),
        "max_rank": caps.max_rank, "max_ch1": caps.max_ch1, "max_ch2": caps.max_ch2,
    })
    outputs = {
        "v": [fmt(x) for x in v.head()],
        "lattice_steps": [fmt(x) for x in steps],
        "count": len(rows),
        "rows": rows,
    }
    return ({"command": "walls", "inputs": inputs, "outputs": outputs}, rows,
            ["center", "radius_sq", "w0", "w1", "w2"], EXIT_TRUE)


def cmd_charge(args):
    geom = _geometry_from_args(args, force_blowup=args.blowup)
    alpha_sq = parse_rational(args.alpha_sq, "--alpha-sq")
    beta = parse_rational(args.beta, "--beta")
    s = parse_rational(args.s, "--s")
    if not s > Fraction(1, 6):
        raise InputError("s must be greater than 1/6")
    if alpha_sq <= 0:
        raise InputError("alpha_sq must be positive")
    ch = _class_from_args(args, geom)
    params = geom.params(alpha_sq, beta, s)
    z = central_charge(params, ch)
    outputs = {
        "ch": ch_out(ch),
        "Z": {"re": fmt(z.re), "im": fmt(z.im)},
        "position": positivity_check(params, ch).value,
        "bridgeland_slope": fmt(bridgeland_slope(params, ch)),
    }
    code = EXIT_TRUE
    if args.blowup or geom.kind == "blowup":
        bg = geom.blowup
        pushed = transport_ch(bg, ch)
        z_down = central_charge(bg.base_params(alpha_sq, beta, s), pushed)
        ok = verify_factor_three(bg, params, ch)
        outputs["transported_ch"] = ch_out(pushed)
        outputs["three_Z_tilde"] = {"re": fmt(3 * z.re), "im": fmt(3 * z.im)}
        outputs["Z_of_transport"] = {"re": fmt(z_down.re), "im": fmt(z_down.im)}
        outputs["verdict"] = "MATCH" if ok else "MISMATCH"
        code = EXIT_TRUE if ok else EXIT_FALSE
    inputs = dict(geom.describe(), **{
        "class": args.class_, "alpha_sq": fmt(alpha_sq), "beta": fmt(beta), "s": fmt(s),
    })
    return {"command": "charge", "inputs": inputs, "outputs": outputs}, None, None, code


def _grid(text: str) -> list[Fraction]:
    text = text.strip()
    if not text:
        raise InputError("empty grid")
    if ".." in text and "," not in text:
        lo, hi = (parse_rational(x, "--grid") for x in text.split("..", 1))
        if lo.denominator != 1 or hi.denominator != 1:
            raise InputError("ranges a..b need integer ends")
        values = [Fraction(k) for k in range(int(lo), int(hi) + 1)]
    else:
        values = [parse_rational(x, "--grid") for x in text.split(",") if x.strip()]
    if not values:
        raise InputError("empty grid")
    return values


def cmd_sweep(args):
    name, _, rest = args.family.partition(":")
    fixed = [parse_rational(a, name) for a in rest.split(",")] if rest.strip() else []
    grid = _grid(args.grid)
    rows = []
    if name == "contraction":
        if len(fixed) != 2:
            raise InputError("sweep contraction:L3,D3 --grid m-values")
        L3, D3 = fixed
        param = "m"
        for m in grid:
            row = {"m": fmt(m), "H3": None, "margin": None, "satisfied": "false", "valid": "false"}
            if m ** 3 * L3 > D3:
                geom = build_geometry(None, f"contraction:{L3},{D3},{m}")
                D = geom.ring.basis_divisor("D")
                rep = check_divisor_counterexample(D, geom.H)
                row.update(H3=fmt(triple(geom.H, geom.H, geom.H)), margin=fmt(rep.margin),
                           satisfied="true" if rep.satisfied else "false", valid="true")
            rows.append(row)
    elif name == "weierstrass":
        if len(fixed) != 1:
            raise InputError("sweep weierstrass:KS2 --grid t-values")
        (KS2,) = fixed
        param = "t"
        for t in grid:
            row = {"t": fmt(t), "H3": None, "margin": None, "satisfied": "false", "valid": "false"}
            if t > 0:
                geom = build_geometry(None, f"weierstrass:{KS2},{t}")
                rep = check_divisor_counterexample(geom.ring.basis_divisor("Theta"), geom.H)
                row.update(H3=fmt(triple(geom.H, geom.H, geom.H)), margin=fmt(rep.margin),
                           satisfied="true" if rep.satisfied else "false", valid="true")
            rows.append(row)
    else:
        raise InputError(f"unknown family {name!r} (contraction:L3,D3 or weierstrass:KS2)")
    columns = [param, "H3", "margin", "satisfied", "valid"]
    inputs = {"family": args.family, "grid": [fmt(g) for g in grid]}
    outputs = {"count": len(rows), "rows": rows}
    return {"command": "sweep", "inputs": inputs, "outputs": outputs}, rows, columns, EXIT_TRUE


def cmd_validate(args):
    config = None
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = load_config_text(fh.read(), args.config)
        except OSError as exc:
            raise InputError(f"cannot read config: {exc}") from None
    config = dict(config or {})
    if args.builtin:
        config["builtin"] = args.builtin
        config.pop("ring", None)
    try:
        if "ring" in config:
            ring = _explicit_ring(config["ring"])
        elif "builtin" in config:
            ring = _builtin(str(config["builtin"]))[2]
        else:
            raise InputError("nothing to validate")
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    problems = validate(ring)
    outputs = {"ok": not problems, "violations": problems}
    return ({"command": "validate", "inputs": {"ring": ring.name}, "outputs": outputs},
            None, None, EXIT_TRUE if not problems else EXIT_FALSE)


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="JSON geometry configuration")
    common.add_argument("--builtin", metavar="SPEC",
                        help="contraction:L3,D3,m | weierstrass:KS2,t | blowup:H3")
    common.add_argument("--format", choices=["human", "csv", "json"], default="human")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="tiltcalc", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"tiltcalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="divisor counterexample criterion")
    p.add_argument("--divisor", help="divisor name or expression (default per builtin)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("walls", parents=[common], help="numerical semicircular walls")
    p.add_argument("--class", dest="class_", help="O, O(D), O_D:D, point, ideal_point, O_E(k) or JSON")
    p.add_argument("--lambda", dest="lambda_", metavar="V0,V1,V2", help="lattice class directly")
    p.add_argument("--beta-min", default="-10")
    p.add_argument("--beta-max", default="10")
    p.add_argument("--alpha-sq-max", default="100")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-ch1", type=int, default=10)
    p.add_argument("--max-ch2", type=int, default=None)
    p.add_argument("--ch1-step", default=None, help="override the lattice step for w1")
    p.add_argument("--ch2-step", default=None, help="override the lattice step for w2")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("charge", parents=[common], help="central charge of a class")
    p.add_argument("--class", dest="class_", help="O, O(D), O_D:D, point, ideal_point, O_E(k) or JSON")
    p.add_argument("--alpha-sq", default="1")
    p.add_argument("--beta", default="0")
    p.add_argument("--s", default="1/2")
    p.add_argument("--blowup", action="store_true",
                   help="class lives on the blow-up; compare 3 Z~ with Z of the transported class")
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("sweep", parents=[common], help="scan a scenario family")
    p.add_argument("family", help="contraction:L3,D3 or weierstrass:KS2")
    p.add_argument("--grid", required=True, help="comma list of values or an integer range a..b")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", parents=[common], help="check ring consistency")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        report, table, columns, code = args.func(args)
    except InputError as exc:
        print(f"tiltcalc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    emit(render(report, args.format, table, columns), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())


def main_exit() -> None:
    sys.exit(main())
