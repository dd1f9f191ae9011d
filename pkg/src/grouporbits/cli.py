"""Command-line front end.

Subcommands map one-to-one onto library operations:

  hall --rank R --class C                    list the basic commutators
  nq mul|pow|polys|orbit --rank R --class C  coordinate arithmetic and orbits
  nq obstruct --case 2,4|3,3 --p P --q Q     transport obstruction reports
  ring map --variant r1|r2 A B               build a verified rearrangement
  bp mul|canon|bound ...                     Boolean-power operations
  fg spec|orbits --group FILE ...            finite-group spectra and orbits

Exit codes: 0 success, 1 expression/literal parse error, 2 domain error
(rank/class out of range, undecidable orbit case, bad inputs), 3 a
constructed witness failed its verification.  All output is exact; JSON mode
(--format json) prints rationals as [numerator, denominator] pairs and is
byte-stable for fixed inputs and seed.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import autos, boolring, bpower, finite, hall
from .nilpotent import NilContext, NilElement, mul as nil_mul, pow_ as nil_pow, polynomials
from .qarith import QParseError, parse_q, q_parts


class CliParseError(ValueError):
    exit_code = 1


class CliDomainError(ValueError):
    exit_code = 2


class CliVerificationError(ValueError):
    exit_code = 3


# ---------------------------------------------------------------------------
# element expression grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(x\d+|\d+|\*|\^|\[|\]|\(|\)|,|/|-)")


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CliParseError(f"bad character at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _ElementParser:
    """expr := term {'*' term}; term := atom ['^' rat];
    atom := gen | '1' | '[' expr (',' expr)+ ']' | '(' expr ')'."""

    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected and tok != expected):
            raise CliParseError(
                f"expected {expected or 'a token'}, found {tok or 'end of input'}"
            )
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise CliParseError(f"trailing input at {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() == "*":
            self.take("*")
            value = nil_mul(value, self.term())
        return value

    def term(self):
        value = self.atom()
        if self.peek() == "^":
            self.take("^")
            value = nil_pow(value, self.rat())
        return value

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        if tok == "[":
            self.take("[")
            items = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                items.append(self.expr())
            self.take("]")
            if len(items) < 2:
                raise CliParseError("commutator needs at least two arguments")
            value = items[0]
            for nxt in items[1:]:
                from .nilpotent import commutator

                value = commutator(value, nxt)
            return value
        if tok == "1":
            self.take()
            return self.ctx.identity
        if tok and tok.startswith("x"):
            self.take()
            idx = int(tok[1:])
            if not 1 <= idx <= self.ctx.rank:
                raise CliDomainError(
                    f"generator {tok} out of range for rank {self.ctx.rank}"
                )
            return self.ctx.generator(idx)
        raise CliParseError(f"unexpected token {tok!r}")

    def rat(self):
        sign = 1
        if self.peek() == "-":
            self.take("-")
            sign = -1
        num = self.take()
        if not num.isdigit():
            raise CliParseError(f"expected an integer, found {num!r}")
        text = num
        if self.peek() == "/":
            self.take("/")
            den = self.take()
            if not den.isdigit():
                raise CliParseError(f"expected a denominator, found {den!r}")
            text = f"{num}/{den}"
        try:
            value = parse_q(text)
        except QParseError as exc:
            raise CliParseError(str(exc)) from None
        return -value if sign < 0 else value


def parse_element(text, ctx):
    """Evaluate an element expression in a context."""
    return _ElementParser(text, ctx).parse()


def _context(args):
    if args.rank < 1 or args.nil_class < 1:
        raise CliDomainError("rank and class must be positive")
    return NilContext.get(args.rank, args.nil_class)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _coords_json(e):
    return [list(q_parts(x)) for x in e.coords]


def _endo_lines(e):
    return [
        f"x{i+1} -> {img}" for i, img in enumerate(e.images)
    ]


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_hall(args):
    if args.rank < 1 or args.nil_class < 1:
        raise CliDomainError("rank and class must be positive")
    basis = hall.enumerate_basis(args.rank, args.nil_class)
    names = [hall.commutator_name(basis, i) for i in range(len(basis))]
    weights = [b.weight for b in basis]
    _emit(
        args,
        [f"{n}  (weight {w})" for n, w in zip(names, weights)],
        {"rank": args.rank, "class": args.nil_class, "basis": names, "weights": weights},
    )
    return 0


def _cmd_nq_mul(args):
    ctx = _context(args)
    a = parse_element(args.lhs, ctx)
    b = parse_element(args.rhs, ctx)
    c = nil_mul(a, b)
    _emit(args, [str(c)], {"element": str(c), "coords": _coords_json(c)})
    return 0


def _cmd_nq_pow(args):
    ctx = _context(args)
    a = parse_element(args.element, ctx)
    try:
        t = parse_q(args.exponent)
    except QParseError as exc:
        raise CliParseError(str(exc)) from None
    c = nil_pow(a, t)
    _emit(args, [str(c)], {"element": str(c), "coords": _coords_json(c)})
    return 0


def _cmd_nq_polys(args):
    ctx = _context(args)
    f, g = polynomials(ctx)
    lines = [f"f{i+1} = {p}" for i, p in enumerate(f)]
    lines += [f"g{i+1} = {p}" for i, p in enumerate(g)]
    _emit(
        args,
        lines,
        {
            "mul": [str(p) for p in f],
            "pow": [str(p) for p in g],
        },
    )
    return 0


def _cmd_nq_orbit(args):
    ctx = _context(args)
    decidable = ctx.nilpotency_class == 2 or (ctx.rank, ctx.nilpotency_class) == (2, 3)
    if not decidable:
        raise CliDomainError(
            "orbit canonicalization is only decidable for class 2 (any rank) "
            "or rank 2 class 3; other completions have infinitely many orbits"
        )
    g = parse_element(args.element, ctx)
    try:
        if ctx.nilpotency_class == 2:
            label, rep, witness = autos.canonicalize_class2(g)
        else:
            label, rep, witness = autos.canonicalize_n23(g)
        if autos.apply(witness, g) != rep:
            raise autos.VerificationError("witness does not map input to representative")
    except autos.VerificationError as exc:
        raise CliVerificationError(str(exc)) from None
    lines = [f"label: {label}", f"representative: {rep}", "witness:"]
    lines += ["  " + ln for ln in _endo_lines(witness)]
    _emit(
        args,
        lines,
        {
            "label": label,
            "representative": str(rep),
            "witness": [str(img) for img in witness.images],
            "verified": True,
        },
    )
    return 0


def _cmd_nq_obstruct(args):
    if args.case not in ("2,4", "3,3"):
        raise CliDomainError("case must be 2,4 or 3,3")
    try:
        if args.case == "2,4":
            report = autos.obstruction_n24(args.p, args.q, args.trials, args.seed)
        else:
            report = autos.obstruction_n33(args.p, args.q, args.trials, args.seed)
    except ValueError as exc:
        raise CliDomainError(str(exc)) from None
    lines = [
        f"case: {report.case}  p={report.p} q={report.q}",
        f"symbolic constraints match closed form: {report.symbolic_match}",
    ]
    lines += [f"  {name}" for name in report.constraint_names]
    lines += [
        f"square tests (all must be False): "
        + ", ".join(f"{k} -> {v}" for k, v in report.square_tests.items()),
        f"trials: {report.trials} (seed {report.seed}), "
        f"witness found: {report.witness_found}, "
        f"engine cross-checks: {report.cross_checks}",
        f"refuted: {report.refuted()}",
    ]
    _emit(
        args,
        lines,
        {
            "case": report.case,
            "p": report.p,
            "q": report.q,
            "symbolic_match": report.symbolic_match,
            "constraints": [str(c) for c in report.constraints],
            "square_tests": report.square_tests,
            "trials": report.trials,
            "seed": report.seed,
            "witness_found": report.witness_found,
            "cross_checks": report.cross_checks,
            "refuted": report.refuted(),
        },
    )
    return 0


def _parse_set_arg(text, variant):
    try:
        return boolring.parse_set(text, variant)
    except boolring.SetParseError as exc:
        raise CliParseError(str(exc)) from None


def _cmd_ring_map(args):
    a = _parse_set_arg(args.source, args.variant)
    b = _parse_set_arg(args.target, args.variant)
    try:
        f = boolring.build_map(a, b)
    except ValueError as exc:
        raise CliDomainError(str(exc)) from None
    except AssertionError as exc:
        raise CliVerificationError(str(exc)) from None
    if boolring.apply_map(f, a) != b:
        raise CliVerificationError("map image differs from the target set")
    from .qarith import format_q

    lines = [
        f"[{format_q(s)},{format_q(e)}) -> [{format_q(u)},{format_q(v)})"
        for (s, e), (u, v) in f.pieces
    ]
    _emit(
        args,
        lines,
        {
            "pieces": [
                [[list(q_parts(s)), list(q_parts(e))], [list(q_parts(u)), list(q_parts(v))]]
                for (s, e), (u, v) in f.pieces
            ],
            "verified": True,
        },
    )
    return 0


def _load_group(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            perms = finite.load_permutations(fh.read())
    except OSError as exc:
        raise CliDomainError(f"cannot read group file: {exc}") from None
    try:
        return finite.FiniteGroup.from_permutations(perms)
    except ValueError as exc:
        raise CliParseError(f"bad group file: {exc}") from None


def _load_auts(group, spec_text):
    if spec_text == "brute":
        return finite.brute_force_auts(group)
    if spec_text == "inner":
        return finite.inner_automorphisms(group)
    try:
        with open(spec_text, "r", encoding="utf-8") as fh:
            perms = finite.load_permutations(fh.read())
    except OSError as exc:
        raise CliDomainError(f"cannot read automorphism file: {exc}") from None
    try:
        maps = [finite.conjugation_map(group, p) for p in perms]
    except ValueError as exc:
        raise CliParseError(f"bad automorphism file: {exc}") from None
    return maps + finite.inner_automorphisms(group)


def _cmd_bp_mul(args):
    base = _load_group(args.group)
    try:
        x = bpower.parse_bp(args.lhs, base, args.variant)
        y = bpower.parse_bp(args.rhs, base, args.variant)
    except (boolring.SetParseError, ValueError) as exc:
        raise CliParseError(str(exc)) from None
    z = bpower.bp_mul(x, y)
    _emit(
        args,
        [str(z)],
        {"element": str(z), "order": bpower.bp_order(z)},
    )
    return 0


def _cmd_bp_canon(args):
    base = _load_group(args.group)
    orbits = finite.aut_orbits(base, _load_auts(base, args.auts))
    try:
        x = bpower.parse_bp(args.element, base, args.variant)
    except (boolring.SetParseError, ValueError) as exc:
        raise CliParseError(str(exc)) from None
    try:
        label, canonical, _ = bpower.bp_canonical_form(x, orbits)
    except AssertionError as exc:
        raise CliVerificationError(str(exc)) from None
    parts, support = label
    lines = [
        "label: " + ("empty" if not parts else "; ".join(f"{n}:{c}" for n, c in parts)),
        f"support: {support}",
        f"canonical: {canonical}",
    ]
    _emit(
        args,
        lines,
        {
            "label": [[n, c] for n, c in parts],
            "support": support,
            "canonical": str(canonical),
        },
    )
    return 0


def _cmd_bp_bound(args):
    if args.r < 0 or args.m < 0:
        raise CliDomainError("r and m must be nonnegative")
    value = bpower.orbit_bound(args.r, args.m)
    _emit(args, [str(value)], {"bound": value})
    return 0


def _cmd_fg_spec(args):
    group = _load_group(args.group)
    base = sorted(finite.spectrum(group))
    if args.power > 1:
        values = sorted(finite.lcm_closure(set(base), args.power))
    else:
        values = base
    _emit(
        args,
        [" ".join(str(v) for v in values)],
        {"order": group.order, "power": args.power, "spectrum": values},
    )
    return 0


def _cmd_fg_orbits(args):
    group = _load_group(args.group)
    maps = _load_auts(group, args.auts)
    orbits = finite.aut_orbits(group, maps)
    lines = [f"orbits: {len(orbits)}"]
    lines += [
        f"  {group.names[orbit[0]]}  (size {len(orbit)})" for orbit in orbits.orbits
    ]
    _emit(
        args,
        lines,
        {
            "order": group.order,
            "orbit_count": len(orbits),
            "orbits": [
                {"representative": group.names[o[0]], "size": len(o)}
                for o in orbits.orbits
            ],
        },
    )
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _build_parser():
    p = argparse.ArgumentParser(
        prog="grouporbits",
        description="Exact computations with automorphism orbits.",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_rank_class(sp):
        sp.add_argument("--rank", type=int, required=True)
        sp.add_argument("--class", dest="nil_class", type=int, required=True)

    sp = sub.add_parser("hall", help="list basic commutators")
    add_rank_class(sp)
    sp.set_defaults(func=_cmd_hall)

    nq = sub.add_parser("nq", help="free nilpotent completion arithmetic")
    nqsub = nq.add_subparsers(dest="nq_cmd", required=True)

    sp = nqsub.add_parser("mul")
    add_rank_class(sp)
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.set_defaults(func=_cmd_nq_mul)

    sp = nqsub.add_parser("pow")
    add_rank_class(sp)
    sp.add_argument("element")
    sp.add_argument("exponent")
    sp.set_defaults(func=_cmd_nq_pow)

    sp = nqsub.add_parser("polys")
    add_rank_class(sp)
    sp.set_defaults(func=_cmd_nq_polys)

    sp = nqsub.add_parser("orbit")
    add_rank_class(sp)
    sp.add_argument("element")
    sp.set_defaults(func=_cmd_nq_orbit)

    sp = nqsub.add_parser("obstruct")
    sp.add_argument("--case", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_nq_obstruct)

    ring = sub.add_parser("ring", help="interval Boolean ring operations")
    ringsub = ring.add_subparsers(dest="ring_cmd", required=True)
    sp = ringsub.add_parser("map")
    sp.add_argument("--variant", choices=(boolring.R1, boolring.R2), default=boolring.R1)
    sp.add_argument("source")
    sp.add_argument("target")
    sp.set_defaults(func=_cmd_ring_map)

    bp = sub.add_parser("bp", help="Boolean power operations")
    bpsub = bp.add_subparsers(dest="bp_cmd", required=True)

    sp = bpsub.add_parser("mul")
    sp.add_argument("--group", required=True)
    sp.add_argument("--variant", choices=(boolring.R1, boolring.R2), default=boolring.R1)
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.set_defaults(func=_cmd_bp_mul)

    sp = bpsub.add_parser("canon")
    sp.add_argument("--group", required=True)
    sp.add_argument("--variant", choices=(boolring.R1, boolring.R2), default=boolring.R1)
    sp.add_argument("--auts", default="brute")
    sp.add_argument("element")
    sp.set_defaults(func=_cmd_bp_canon)

    sp = bpsub.add_parser("bound")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=_cmd_bp_bound)

    fg = sub.add_parser("fg", help="finite groups from permutation files")
    fgsub = fg.add_subparsers(dest="fg_cmd", required=True)

    sp = fgsub.add_parser("spec")
    sp.add_argument("--group", required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.set_defaults(func=_cmd_fg_spec)

    sp = fgsub.add_parser("orbits")
    sp.add_argument("--group", required=True)
    sp.add_argument("--auts", default="brute")
    sp.set_defaults(func=_cmd_fg_orbits)

    return p


def dispatch(argv):
    """Run one command; returns the exit code (output goes to stdout/stderr)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except CliDomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except CliVerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
