"""Command-line front end: build pipelines, verify artifacts, classify
parameters, and read/write the design and frame text formats.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or parameter
error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructions import (
    ConstructionError,
    existence_status,
    gdd_etf,
    mols_tdtf,
    regular_simplex,
    steiner_etf,
)
from .designs import (
    DesignError,
    LatinSquareSet,
    affine_plane,
    fill_holes,
    gf_build,
    mols_from_field,
    prime_power_decomposition,
    projective_plane,
    steiner_triple_system,
    td_from_mols,
    verify_gdd,
    wilson_product,
)
from .fileio import (
    DesignVerifyError,
    FileFormatError,
    parse_design,
    parse_frame,
    serialize_design,
    serialize_frame,
)
from .frames import (
    EtfType,
    FrameError,
    classify_type,
    gram,
    verify_etf,
    verify_tdtf,
)
from .hadamard import HadamardError, dephase, fourier, paley_i, paley_ii, \
    sylvester, verify_hadamard

USAGE_ERROR = 2
VERIFY_ERROR = 1


class CliError(Exception):
    """Parameter error surfaced to the user with exit code 2."""


def _field_for(q: int):
    pk = prime_power_decomposition(q)
    if pk is None:
        raise CliError(f"{q} is not a prime power")
    return gf_build(*pk)


def hadamard_from_spec(spec: str):
    """Build a dephased Hadamard matrix from sylvester:k | paley1:q |
    paley2:q | fourier:n."""
    name, _, arg = spec.partition(":")
    if not arg:
        raise CliError(f"Hadamard spec needs a parameter: {spec!r}")
    try:
        value = int(arg)
    except ValueError:
        raise CliError(f"non-integer Hadamard parameter: {spec!r}") from None
    try:
        if name == "sylvester":
            return dephase(sylvester(value))
        if name == "paley1":
            return dephase(paley_i(_field_for(value)))
        if name == "paley2":
            return dephase(paley_ii(_field_for(value)))
        if name == "fourier":
            return dephase(fourier(value))
    except (HadamardError, DesignError) as exc:
        raise CliError(str(exc)) from exc
    raise CliError(f"unknown Hadamard family {name!r}")


def _types_field(d: int, n: int) -> str:
    if d <= 1 or n <= d:
        return "none"
    types = classify_type(d, n)
    return ",".join(str(t) for t in types) if types else "none"


def certificate_line(cert) -> str:
    a = cert.a
    a_str = str(a.numerator) if a.denominator == 1 else str(a)
    return (f"ETF D={cert.d} N={cert.n} s={cert.s} t={cert.t} A={a_str} "
            f"types={_types_field(cert.d, cert.n)}")


def _diagnose_frame(frame) -> str:
    """Name the first Gram entry that breaks the ETF identities."""
    g = gram(frame)
    ref = g.entry(0, 0)
    for i in range(g.rows):
        if g.entry(i, i) != ref:
            return (f"Gram entry ({i}, {i}) = {g.entry(i, i).coeffs} breaks "
                    f"equal norms (entry (0, 0) = {ref.coeffs})")
    if not ref.is_rational_integer:
        return f"Gram diagonal {ref.coeffs} is not a rational integer"
    mods = g.abs_squared_entries()
    t_ref = None
    pos = None
    for r in range(g.rows):
        for c in range(g.cols):
            if r == c:
                continue
            if t_ref is None:
                t_ref, pos = mods.entry(r, c), (r, c)
            elif mods.entry(r, c) != t_ref:
                return (f"Gram entry ({r}, {c}) has |.|^2 = "
                        f"{mods.entry(r, c).coeffs}, entry {pos} has "
                        f"{t_ref.coeffs}: equiangularity fails")
    return "frame is equal-norm and equiangular but not tight"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    try:
        types = classify_type(args.D, args.N)
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(" ".join(str(t) for t in types) if types else "none")
    return 0


def _build_design(args):
    if args.kind == "td":
        k, m = args.a, args.b
        if k == 2:
            return td_from_mols(LatinSquareSet(m, []), 2)
        return td_from_mols(mols_from_field(_field_for(m)), k)
    if args.kind == "sts":
        return steiner_triple_system(args.a)
    if args.kind == "affine":
        return affine_plane(_field_for(args.a))
    if args.kind == "projective":
        return projective_plane(_field_for(args.a))
    if args.kind == "product":
        return wilson_product(parse_design(Path(args.first).read_text()),
                              parse_design(Path(args.second).read_text()))
    if args.kind == "fill":
        return fill_holes(parse_design(Path(args.first).read_text()),
                          parse_design(Path(args.second).read_text()))
    raise CliError(f"unknown design kind {args.kind!r}")


def cmd_design(args) -> int:
    design = _build_design(args)
    report = verify_gdd(design)
    if not report.ok:
        print(f"verification failed: {report.failure}", file=sys.stderr)
        return VERIFY_ERROR
    text = serialize_design(design)
    _write(args.output, text)
    print(text.splitlines()[0])
    return 0


def cmd_build(args) -> int:
    if args.kind == "simplex":
        frame, cert = regular_simplex(args.n, hadamard_from_spec(args.hadamard))
    elif args.kind == "steiner":
        bibd = parse_design(Path(args.bibd).read_text())
        frame, cert = steiner_etf(bibd, hadamard_from_spec(args.hadamard))
    elif args.kind == "mols-etf":
        td = parse_design(Path(args.td).read_text())
        frame, cert = mols_tdtf(td, hadamard_from_spec(args.hadamard),
                                args.variant)
    else:
        frame, cert = _build_gdd_etf(args)
    _write(args.output, serialize_frame(frame))
    if cert.welch_equality:
        print(certificate_line(cert))
    else:
        rep = verify_tdtf(frame)
        vals = ",".join(str(v.coeffs if not v.is_rational_integer
                            else v.as_integer()) for v in rep.values)
        print(f"TDTF D={cert.d} N={cert.n} s={cert.s} values={vals}")
    return 0


def _build_gdd_etf(args):
    seed = parse_frame(Path(args.seed).read_text())
    gdd = parse_design(Path(args.gdd).read_text())
    matches = []
    if seed.d > 1:
        for t in classify_type(seed.d, seed.n):
            if t.K == gdd.K and t.seed_group_size == gdd.M:
                matches.append(t)
    if not matches:
        raise CliError(
            f"seed ({seed.d}, {seed.n}) has no type matching a K={gdd.K} "
            f"design of type {gdd.M}^{gdd.U}")
    return gdd_etf(seed, matches[0], gdd, hadamard_from_spec(args.he),
                   hadamard_from_spec(args.hf))


def cmd_verify(args) -> int:
    text = Path(args.path).read_text()
    if args.kind == "design":
        try:
            design = parse_design(text)
        except DesignVerifyError as exc:
            print(f"fail: {exc.report.failure}")
            return VERIFY_ERROR
        print(str(verify_gdd(design)))
        return 0
    frame = parse_frame(text)
    if args.kind == "hadamard":
        report = verify_hadamard(frame.synthesis)
        print(str(report))
        return 0 if report.ok else VERIFY_ERROR
    cert = verify_etf(frame)
    if cert.welch_equality:
        print(certificate_line(cert))
        return 0
    rep = verify_tdtf(frame)    # a frame file may hold a non-ETF TDTF
    if rep.ok:
        print(f"TDTF D={cert.d} N={cert.n} s={cert.s}")
        return 0
    print(f"fail: {_diagnose_frame(frame)}")
    return VERIFY_ERROR


def cmd_status(args) -> int:
    ell = args.L
    if ell not in (1, -1):
        raise CliError("L must be +1 or -1")
    status = existence_status(EtfType(args.K, ell, args.S))
    print(str(status))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="etfkit",
        description="Construct and certify equiangular tight frames from "
                    "combinatorial designs, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="list the (K,L,S) types of (D, N)")
    c.add_argument("D", type=int)
    c.add_argument("N", type=int)
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("design", help="construct and write a design file")
    dsub = d.add_subparsers(dest="kind", required=True)
    dtd = dsub.add_parser("td", help="transversal design TD(K, M)")
    dtd.add_argument("a", type=int, metavar="K")
    dtd.add_argument("b", type=int, metavar="M")
    dsts = dsub.add_parser("sts", help="Steiner triple system on U points")
    dsts.add_argument("a", type=int, metavar="U")
    daff = dsub.add_parser("affine", help="affine plane of prime-power order")
    daff.add_argument("a", type=int, metavar="Q")
    dproj = dsub.add_parser("projective",
                            help="projective plane of prime-power order")
    dproj.add_argument("a", type=int, metavar="Q")
    dprod = dsub.add_parser("product", help="group-substitution product")
    dprod.add_argument("first", metavar="OUTER.design")
    dprod.add_argument("second", metavar="INNER.design")
    dfill = dsub.add_parser("fill", help="fill the holes of a larger design")
    dfill.add_argument("first", metavar="INNER.design")
    dfill.add_argument("second", metavar="OUTER.design")
    for sp in (dtd, dsts, daff, dproj, dprod, dfill):
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=cmd_design)

    b = sub.add_parser("build", help="construct, certify and write a frame")
    bsub = b.add_subparsers(dest="kind", required=True)
    bs = bsub.add_parser("simplex", help="flat regular simplex ETF(N-1, N)")
    bs.add_argument("n", type=int, metavar="N")
    bs.add_argument("--hadamard", required=True,
                    help="sylvester:k|paley1:q|paley2:q|fourier:n")
    bst = bsub.add_parser("steiner", help="ETF from a BIBD(V, K, 1)")
    bst.add_argument("--bibd", required=True)
    bst.add_argument("--hadamard", required=True)
    bm = bsub.add_parser("mols-etf", help="flat frame from a TD(K, M)")
    bm.add_argument("--td", required=True)
    bm.add_argument("--hadamard", required=True)
    bm.add_argument("--variant", choices=("centered", "augmented"),
                    default="centered")
    bg = bsub.add_parser("gdd-etf", help="extend a seed ETF by a K-GDD")
    bg.add_argument("--seed", required=True)
    bg.add_argument("--gdd", required=True)
    bg.add_argument("--he", required=True,
                    help="Hadamard of size S+L for the seed columns")
    bg.add_argument("--hf", required=True,
                    help="Hadamard of size W+1 for the replicate slots")
    for sp in (bs, bst, bm, bg):
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a frame/design/Hadamard file")
    v.add_argument("path")
    v.add_argument("--kind", choices=("frame", "design", "hadamard"),
                   required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("status", help="existence status of type (K, L, S)")
    s.add_argument("K", type=int)
    s.add_argument("L", type=int)
    s.add_argument("S", type=int)
    s.set_defaults(func=cmd_status)
    return p


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, DesignError, ConstructionError, FrameError,
            HadamardError, FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except DesignVerifyError as exc:
        print(f"fail: {exc.report.failure}", file=sys.stderr)
        return VERIFY_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
