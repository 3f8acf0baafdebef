"""Command line entry point: ``ballapprox {ortho,approx,dist,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 distance series / direct norm mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import approximant as ap
from .hgamma_space import (
    SpaceParams,
    Weight,
    inner,
    monomial_weighted_inner,
    weighted_inner,
    weighted_inner_fast,
)
from .monomial_order import last_index_of_degree, monomial_at
from .orthopoly import (
    gram_schmidt_oracle,
    phi_closed_form,
    phi_recursive,
    verify_f_squared_recursion,
)
from .poly2 import Poly, monomial
from .qfield import SQRT2_HALF, QSqrt2, parse_rational, rational_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


# -- pretty printing ------------------------------------------------------------


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _surd_text(b: Fraction) -> str:
    """``b*sqrt2`` for ``b > 0`` as e.g. ``√2/4`` or ``3√2/10``."""
    num = "√2" if b.numerator == 1 else f"{b.numerator}√2"
    return num if b.denominator == 1 else f"{num}/{b.denominator}"


def _monomial_text(m: int, n: int) -> str:
    parts = []
    for var, e in (("z1", m), ("z2", n)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts)


def _term_text(c: QSqrt2, m: int, n: int) -> tuple[str, str]:
    """Sign and unsigned text of one term."""
    mono = _monomial_text(m, n)
    if c.b == 0:
        sign, mag = ("-" if c.a < 0 else "+"), abs(c.a)
        if mono and mag == 1:
            return sign, mono
        text = _frac_text(mag)
        if mono and mag.denominator != 1:
            text = f"({text})"
        return sign, text + mono
    if c.a == 0:
        sign = "-" if c.b < 0 else "+"
        return sign, f"({_surd_text(abs(c.b))}){mono}"
    return "+", f"({c}){mono}"


def pretty_poly(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for (m, n), c in p.items():
        sign, text = _term_text(c, m, n)
        if not out:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f"{sign} {text}")
    return " ".join(out)


def pretty_scalar(c: QSqrt2) -> str:
    return pretty_poly(Poly.constant(c))


# -- argument handling ----------------------------------------------------------


def _gamma_arg(text: str) -> Fraction:
    try:
        g = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if g <= 0:
        raise argparse.ArgumentTypeError("gamma must be positive")
    return g


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballapprox",
        description="Exact weighted orthogonal polynomials and optimal approximants "
        "for f = 1 - (z1+z2)/sqrt(2) in the spaces H_gamma on the unit 2-ball.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gamma_nargs=None, default_format="json"):
        p.add_argument("--gamma", type=_gamma_arg, required=True, nargs=gamma_nargs,
                       help="positive rational P/Q or integer")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default=default_format)
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("ortho", help="closed-form orthogonal polynomials phi_{j,k}")
    common(p)
    p.add_argument("--j", type=_nonneg)
    p.add_argument("--k", type=_nonneg)
    p.add_argument("--max-degree", type=_nonneg, help="emit every (j,k) with j+k <= this")

    p = sub.add_parser("approx", help="optimal approximants p_0* .. p_n*")
    common(p)
    p.add_argument("--n", type=_nonneg, required=True)

    p = sub.add_parser("dist", help="optimal distances nu_n^2")
    common(p, default_format="csv")
    p.add_argument("--max-degree", type=_nonneg, required=True)
    p.add_argument("--fit", type=_nonneg, nargs=2, metavar=("DMIN", "DMAX"))

    p = sub.add_parser("verify", help="check every closed formula against its oracle")
    common(p, gamma_nargs="+", default_format="pretty")
    p.add_argument("--weight", choices=("f", "f2"), default="f")
    p.add_argument("--max-degree", type=_nonneg, required=True)
    return parser


@dataclass(frozen=True)
class RunConfig:
    command: str
    gammas: tuple[Fraction, ...]
    weight: Weight
    output_format: str
    j: int | None = None
    k: int | None = None
    n: int | None = None
    max_degree: int | None = None
    fit: tuple[int, int] | None = None
    out: str | None = None

    @property
    def gamma(self) -> Fraction:
        return self.gammas[0]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        gammas = tuple(args.gamma) if isinstance(args.gamma, list) else (args.gamma,)
        return cls(
            command=args.command,
            gammas=gammas,
            weight=Weight(getattr(args, "weight", "f")),
            output_format=args.format,
            j=getattr(args, "j", None),
            k=getattr(args, "k", None),
            n=getattr(args, "n", None),
            max_degree=getattr(args, "max_degree", None),
            fit=tuple(args.fit) if getattr(args, "fit", None) else None,
            out=args.out,
        )


def _dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _dump_csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands -------------------------------------------------------------------


def cmd_ortho(cfg: RunConfig, parser: argparse.ArgumentParser) -> tuple[int, str]:
    if cfg.max_degree is not None:
        if cfg.j is not None or cfg.k is not None:
            parser.error("use either --j/--k or --max-degree")
        labels = [monomial_at(i) for i in range(last_index_of_degree(cfg.max_degree) + 1)]
    elif cfg.j is not None and cfg.k is not None:
        labels = [(cfg.j, cfg.k)]
    else:
        parser.error("ortho needs --j and --k, or --max-degree")
    records = [phi_closed_form(cfg.gamma, j, k) for j, k in labels]
    if cfg.output_format == "json":
        single = cfg.max_degree is None
        payload = records[0].to_json() if single else [r.to_json() for r in records]
        return EXIT_OK, _dump_json(payload)
    if cfg.output_format == "csv":
        rows = [[str(r.j), str(r.k)] + row for r in records for row in r.poly.csv_rows()]
        return EXIT_OK, _dump_csv(["j", "k", "m", "n", "a", "b"], rows)
    lines = [f"phi_{r.j},{r.k} = {pretty_poly(r.poly)}, ‖·‖² = {pretty_scalar(r.norm_sq)}"
             for r in records]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_approx(cfg: RunConfig, parser: argparse.ArgumentParser) -> tuple[int, str]:
    records = ap.optimal_approximants(cfg.gamma, cfg.n)
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json([r.to_json() for r in records])
    if cfg.output_format == "csv":
        rows = [[str(r.n)] + row for r in records for row in r.poly.csv_rows()]
        return EXIT_OK, _dump_csv(["order", "m", "n", "a", "b"], rows)
    return EXIT_OK, "".join(f"p{r.n}* = {pretty_poly(r.poly)}\n" for r in records)


def cmd_dist(cfg: RunConfig, parser: argparse.ArgumentParser) -> tuple[int, str]:
    n_max = last_index_of_degree(cfg.max_degree)
    if cfg.fit and not (2 <= cfg.fit[0] and cfg.fit[1] <= cfg.max_degree):
        parser.error("--fit needs 2 <= DMIN and DMAX <= --max-degree")
    try:
        series = ap.optimal_distance_series(cfg.gamma, n_max)
    except ap.ConventionMismatch as exc:
        return EXIT_MISMATCH, f"convention mismatch: {exc}\n"
    if cfg.fit:
        try:
            series.fitted_slope = ap.decay_slope(series, *cfg.fit)
        except ap.InsufficientData as exc:
            parser.error(str(exc))
    if cfg.output_format == "json":
        return EXIT_OK, _dump_json(series.to_json())
    if cfg.output_format == "csv":
        text = _dump_csv(["n", "degree", "nu_sq_a", "nu_sq_b", "nu_sq_float"], series.csv_rows())
        if series.fitted_slope is not None:
            text += f"# slope,{cfg.fit[0]},{cfg.fit[1]},{series.fitted_slope!r}\n"
        return EXIT_OK, text
    lines = [f"n={e.n} degree={e.degree} nu^2 = {pretty_scalar(e.nu_sq)} ({e.nu_sq_float:.12g})"
             for e in series.entries]
    if series.fitted_slope is not None:
        lines.append(f"slope over degrees {cfg.fit[0]}-{cfg.fit[1]}: {series.fitted_slope:.6f}")
    return EXIT_OK, "\n".join(lines) + "\n"


# -- verification driver --------------------------------------------------------


class _Fail(Exception):
    pass


def _check(cond: bool, what: str):
    if not cond:
        raise _Fail(what)


def _v_lemma_fast_path(gamma, d):
    params = SpaceParams(gamma, Weight.F)
    top = last_index_of_degree(d)
    for i in range(top + 1):
        j, k = monomial_at(i)
        for t in range(top + 1):
            m, n = monomial_at(t)
            fast = monomial_weighted_inner(gamma, SQRT2_HALF, j, k, m, n)
            brute = weighted_inner(params, monomial(j, k), monomial(m, n))
            _check(fast == brute, f"<z^({j},{k}), z^({m},{n})>_f: {fast} != {brute}")


def _v_closed_form(gamma, d):
    params = SpaceParams(gamma, Weight.F)
    for op in gram_schmidt_oracle(params, last_index_of_degree(d) + 1):
        cf = phi_closed_form(gamma, *op.jk)
        _check(cf.poly == op.poly, f"phi_{tuple(op.jk)} closed form != Gram-Schmidt")
        _check(cf.norm_sq == op.norm_sq, f"norm of phi_{tuple(op.jk)}: {cf.norm_sq} != {op.norm_sq}")


def _v_recursion(gamma, d):
    for i in range(last_index_of_degree(d) + 1):
        j, k = monomial_at(i)
        _check(phi_recursive(gamma, j, k).poly == phi_closed_form(gamma, j, k).poly,
               f"phi_({j},{k}) recursion != closed form")


def _v_cancellation(gamma, d):
    params = SpaceParams(gamma, Weight.F)
    for s in range(1, d + 1):
        for k in range(1, s + 1):
            j = s - k
            phi = phi_closed_form(gamma, j + 1, k - 1).poly
            chi = monomial(j, k)
            _check(not weighted_inner(params, chi, phi), f"<z^({j},{k}), phi_({j + 1},{k - 1})>_f != 0")
            _check(not weighted_inner_fast(gamma, chi, phi), f"fast path at ({j},{k})")


def _v_lemma31(gamma, d):
    for i in range(last_index_of_degree(d) + 1):
        j, k = monomial_at(i)
        _check(ap.lemma31_consistency(gamma, j, k), f"Phi_({j},{k}) != scaled phi_({j},{k})")


def _v_approximants(gamma, d):
    top = last_index_of_degree(d)
    f = Weight.F.polynomial()
    for r in ap.optimal_approximants(gamma, top):
        _check(r == ap.approximant_oracle(gamma, r.n), f"p_{r.n}* closed form != normal equations")
        residual = r.poly * f - 1
        for i in range(r.n + 1):
            _check(not inner(gamma, residual, f * monomial(*monomial_at(i))),
                   f"residual of p_{r.n}* not orthogonal to f*chi_{i}")


def _v_distances(gamma, d):
    try:
        ap.optimal_distance_series(gamma, last_index_of_degree(d))
    except ap.ConventionMismatch as exc:
        raise _Fail(str(exc)) from None


def _v_f_squared(gamma, d):
    oracle = gram_schmidt_oracle(SpaceParams(Fraction(1), Weight.F_SQUARED), last_index_of_degree(d) + 1)
    for i in range(len(oracle)):
        j, k = monomial_at(i)
        _check(verify_f_squared_recursion(j, k, oracle), f"f^2 recursion fails at ({j},{k})")


IDENTITY_CLASSES: dict[Weight, list[tuple[str, Callable]]] = {
    Weight.F: [
        ("monomial-pair fast path", _v_lemma_fast_path),
        ("closed form == Gram-Schmidt (polys, norms)", _v_closed_form),
        ("two-term recursion == closed form", _v_recursion),
        ("cancellation <z^(j,k), phi_(j+1,k-1)>_f = 0", _v_cancellation),
        ("Phi_(j,k) == projection-scaled phi_(j,k)", _v_lemma31),
        ("approximant sum == normal equations, residual orthogonal", _v_approximants),
        ("distance series == direct norm", _v_distances),
    ],
    Weight.F_SQUARED: [
        ("f^2 three-level recursion (gamma = 1)", _v_f_squared),
    ],
}


def cmd_verify(cfg: RunConfig, parser: argparse.ArgumentParser) -> tuple[int, str]:
    if cfg.weight is Weight.F_SQUARED and any(g != 1 for g in cfg.gammas):
        parser.error("the f2 recursion is only stated for gamma = 1")
    classes = IDENTITY_CLASSES[cfg.weight]
    lines, passed = [], 0
    for name, check in classes:
        failure = None
        for g in cfg.gammas:
            try:
                check(g, cfg.max_degree)
            except _Fail as exc:
                failure = f"gamma={rational_str(g)}: {exc}"
                break
        if failure is None:
            passed += 1
            lines.append(f"PASS  {name}")
        else:
            lines.append(f"FAIL  {name}  first counterexample: {failure}")
    status = "PASS" if passed == len(classes) else "FAIL"
    lines.append(f"{passed}/{len(classes)} identity classes {status}")
    if cfg.output_format == "json":
        text = _dump_json({"passed": passed, "total": len(classes), "lines": lines})
    else:
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if passed == len(classes) else EXIT_FAIL), text


COMMANDS = {"ortho": cmd_ortho, "approx": cmd_approx, "dist": cmd_dist, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        code, text = COMMANDS[cfg.command](cfg, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
