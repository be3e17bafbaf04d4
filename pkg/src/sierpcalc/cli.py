"""Command-line front end: ``sierpcalc <command> ...``.

Numbers on the command line are read as exact rationals (``2``, ``-5/2``,
``0.125``); nothing passes through binary floating point on the way in.
"""
from __future__ import annotations

import argparse
import re
import sys
from decimal import Decimal
from pathlib import Path

from . import calculus, figures
from .arithmetic import REAL, SIERPINSKI, oplus, ominus, odot, oslash
from .errors import SierpcalcError
from .functions import from_definition
from .rational import format_rational, parse_rational, to_rational
from .sierpinski import SierpinskiPoint, format_point, forward, inverse, parse_point

CONTEXTS = {"S": SIERPINSKI, "R": REAL}
SIDES = {"pos": "positive_only", "both": "both"}


# -- arithmetic expressions ---------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<op>\((?:\+|-|\*|/)\))"
    r"|(?P<point>\([^()]*,[^()]*\)\s*[+\-0])"
    r"|(?P<num>-?(?:\d+\s*/\s*\d+|\d+\.?\d*|\.\d+))"
    r"|(?P<paren>[()])"
    r")"
)
_OPS = {"(+)": oplus, "(-)": ominus, "(*)": odot, "(/)": oslash}


def tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression at {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over ``(+) (-)`` below ``(*) (/)``, both left-associative."""

    def __init__(self, tokens, ctx):
        self.tokens, self.i, self.ctx = tokens, 0, ctx

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        value = self.sum()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return value

    def sum(self):
        value = self.product()
        while self.peek()[1] in ("(+)", "(-)"):
            op = self.take()[1]
            value = _OPS[op](self.ctx, value, self.product())
        return value

    def product(self):
        value = self.atom()
        while self.peek()[1] in ("(*)", "(/)"):
            op = self.take()[1]
            value = _OPS[op](self.ctx, value, self.atom())
        return value

    def atom(self):
        kind, text = self.take()
        if kind == "num":
            return self.ctx.from_real(parse_rational(text.replace(" ", "")))
        if kind == "point":
            p = parse_point(text)
            return p if self.ctx is SIERPINSKI else inverse(p)
        if text == "(":
            value = self.sum()
            if self.take()[1] != ")":
                raise ValueError("unbalanced parentheses")
            return value
        raise ValueError(f"expected a number, got {text!r}")


def evaluate_expression(text: str, ctx=SIERPINSKI):
    """Evaluate an expression such as ``"3 (+) 4 (*) 1/2"`` in ``ctx``."""
    tokens = tokenize(text)
    if not tokens:
        raise ValueError("empty expression")
    return _Parser(tokens, ctx).parse()


# -- output -------------------------------------------------------------------

def _decimal(q, places: int) -> str:
    q = to_rational(q)
    scaled = abs(q.numerator) * 10**places // q.denominator
    text = str(Decimal(int(scaled)).scaleb(-places))
    return ("-" if q < 0 else "") + text


def format_value(v, places: int | None = None) -> str:
    """Points in ``(a, b)s`` form, reals as exact rationals or float repr."""
    if isinstance(v, SierpinskiPoint):
        if places is None:
            return format_point(v)
        return f"({_decimal(v.a, places)}, {_decimal(v.b, places)}){v.side.value}"
    if isinstance(v, float):
        return repr(v)
    return format_rational(v) if places is None else _decimal(v, places)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_map(args) -> str:
    if args.inverse:
        return format_value(inverse(parse_point(args.value)), args.digits)
    return format_value(forward(parse_rational(args.value)), args.digits)


def cmd_arith(args) -> str:
    return format_value(evaluate_expression(args.expr, CONTEXTS[args.context]), args.digits)


def _function(args):
    return from_definition(args.function, CONTEXTS[args.domain], CONTEXTS[args.codomain])


def cmd_deriv(args) -> str:
    F = _function(args)
    x = F.ctx_x.from_real(parse_rational(args.point))
    op = calculus.laplacian if args.order == 2 else calculus.derivative
    return format_value(op(F, x, mode=args.mode), args.digits)


def cmd_integrate(args) -> str:
    F = _function(args)
    lo = F.ctx_x.from_real(parse_rational(args.lower))
    hi = F.ctx_x.from_real(parse_rational(args.upper))
    mode = args.mode
    if mode == "auto":
        mode = "exact" if F.a_integral is not None else "quadrature"
    return format_value(calculus.integrate(F, lo, hi, mode=mode, tol=args.tol), args.digits)


def _config(args, **overrides) -> figures.RenderConfig:
    fields = dict(
        resolution_k=getattr(args, "resolution", 7),
        side_filter=SIDES[getattr(args, "side", "pos")],
        output_format=getattr(args, "format", "csv"),
        terms_N=getattr(args, "terms", 5),
        sample_count=getattr(args, "samples", 401),
    )
    fields.update(overrides)
    return figures.RenderConfig(**fields)


def cmd_fourier(args) -> None:
    cfg = _config(args)
    outputs = figures.fourier_outputs(args.function, cfg, tol=args.tol)
    if args.out:
        folder = Path(args.out)
        folder.mkdir(parents=True, exist_ok=True)
        for name, text in outputs.items():
            (folder / name).write_text(text, newline="\n")
    else:
        sys.stdout.write(outputs["coeffs.csv"])


def cmd_fig(args) -> None:
    name = args.command
    if name == "fig1":
        text = figures.fig1(_config(args))
    elif name == "fig2":
        text = figures.fig2(_config(args))
    elif name == "fig3":
        text = figures.fig3(_config(args), args.function)
    else:
        cfg = _config(args, terms_N=5 if name == "fig4" else 50)
        series = figures.fourier_series(args.function, cfg.terms_N, args.tol)
        text = figures.reconstruction(cfg, series, title=f"{args.function}, N = {cfg.terms_N}")
    _emit(text, args.out)


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sierpcalc",
                                     description="Calculus and Fourier analysis on the Sierpinski set.")
    sub = parser.add_subparsers(dest="command", required=True)

    def digits(p):
        p.add_argument("--digits", type=int, default=None,
                       help="show coordinates as decimals truncated to this many places")

    def functional(p, codomain):
        p.add_argument("function", help="expression in t, 'step', or 'x0,..,xk:v1,..,vk'")
        p.add_argument("--domain", choices=CONTEXTS, default="S")
        p.add_argument("--codomain", choices=CONTEXTS, default=codomain)
        p.add_argument("--tol", type=float, default=1e-8)
        digits(p)

    def render(p, resolution=False, samples=False):
        p.add_argument("--format", choices=("csv", "svg"), default="csv")
        p.add_argument("--side", choices=SIDES, default="pos")
        p.add_argument("--out", default=None)
        if resolution:
            p.add_argument("--resolution", type=int, default=7)
        if samples:
            p.add_argument("--samples", type=int, default=401)

    p = sub.add_parser("map", help="real number to point of S, or back with --inverse")
    p.add_argument("value")
    p.add_argument("--inverse", action="store_true")
    digits(p)
    p.set_defaults(run=cmd_map)

    p = sub.add_parser("arith", help="evaluate an expression with (+) (-) (*) (/)")
    p.add_argument("expr")
    p.add_argument("--context", choices=CONTEXTS, default="S")
    digits(p)
    p.set_defaults(run=cmd_arith)

    p = sub.add_parser("deriv", help="derivative DA/Dx at the point n'")
    functional(p, "S")
    p.add_argument("point")
    p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.set_defaults(run=cmd_deriv)

    p = sub.add_parser("integrate", help="integral of A between lower' and upper'")
    functional(p, "R")
    p.add_argument("lower")
    p.add_argument("upper")
    p.add_argument("--mode", choices=("auto", "exact", "quadrature"), default="auto")
    p.set_defaults(run=cmd_integrate)

    p = sub.add_parser("fourier", help="coefficients and sampled reconstruction")
    p.add_argument("function", nargs="?", default="step")
    p.add_argument("--terms", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-8)
    render(p, samples=True)
    p.set_defaults(run=cmd_fourier)

    p = sub.add_parser("fig1", help="cells covering f^-1([0,1))")
    render(p, resolution=True)
    p.set_defaults(run=cmd_fig)
    p = sub.add_parser("fig2", help="images of the naturals 1..200")
    render(p)
    p.set_defaults(run=cmd_fig)
    for name, what in (("fig3", "samples of the function"),
                       ("fig4", "reconstruction with 5 terms"),
                       ("fig5", "reconstruction with 50 terms")):
        p = sub.add_parser(name, help=what)
        p.add_argument("function", nargs="?", default="step")
        p.add_argument("--tol", type=float, default=1e-8)
        render(p, samples=True)
        p.set_defaults(run=cmd_fig)
    return parser


_NEGATIVE = re.compile(r"^-(\d|\.\d)")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse would read "-5/2" as an option; a leading space keeps it a value
    argv = [" " + a if _NEGATIVE.match(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    try:
        result = args.run(args)
    except (SierpcalcError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if result is not None:
        print(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
