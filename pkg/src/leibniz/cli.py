"""Command-line front end.

Every subcommand prints one JSON document.  Exit status: 0 when every check
passes, 1 when a mathematical check fails (the report carries a witness),
2 on malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import sys
from fractions import Fraction
from typing import Optional

from . import algebra as alg
from . import exactlin as xl
from . import extensions as ext
from . import families as fam
from . import mapspaces as ms
from . import racks
from . import tensorfile as tf

log = logging.getLogger("leibniz")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILIES = ("s1", "s2", "s2n", "ln", "abelian", "heisenberg", "kronecker", "dieudonne", "paper-presentation")


class UsageError(Exception):
    pass


def _rationals(text: Optional[str]) -> list[Fraction]:
    if text is None or text.strip() == "":
        return []
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError("malformed rational list %r" % text) from None


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror)) from None


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return "sha256:" + h.hexdigest()


def _load_tensor(path: str) -> tuple[alg.LeibnizAlgebra, bytes]:
    raw = _read(path)
    try:
        return tf.loads_tensor(raw.decode("utf-8")), raw
    except UnicodeDecodeError:
        raise tf.FormatError("%s is not UTF-8" % path) from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _subspace_json(S: xl.Subspace) -> dict:
    return {"dim": S.dim, "basis": tf.matrix_to_json(S.basis)}


def _report(args, digest: Optional[str], results: dict, ok: bool) -> tuple[dict, int]:
    code = EXIT_OK if ok else EXIT_FAIL
    rep = {
        "command": args.argv,
        "input_digest": digest,
        "results": results,
        "status": "pass" if ok else "fail",
        "exit_code": code,
    }
    return rep, code


# -- subcommands -------------------------------------------------------------------


def build_family(args) -> alg.LeibnizAlgebra:
    name = args.name
    n = args.n
    alpha, beta = _rationals(args.alpha), _rationals(args.beta)

    def need_n(lo):
        if n is None or n < lo:
            raise UsageError("family %s needs --n >= %d" % (name, lo))
        return n

    try:
        if name == "s1":
            return fam.s1()
        if name == "s2":
            return fam.s2()
        if name == "s2n":
            return fam.s2_normalized()
        if name == "ln":
            return fam.l_n(need_n(2))
        if name == "abelian":
            return fam.abelian(need_n(0))
        if name == "kronecker":
            return fam.kronecker(need_n(1))
        if name == "dieudonne":
            return fam.dieudonne(need_n(1))
        if name == "heisenberg":
            if args.poly is not None:
                poly = fam.PolynomialQ(tuple(_rationals(args.poly)))
                return fam.heisenberg(fam.companion_of_power(poly, args.k))
            return fam.heisenberg_lie(need_n(1))
        if name == "paper-presentation":
            n = need_n(2)
            alpha = alpha or [Fraction(0)] * (n - 2)
            beta = beta or [Fraction(0)] * (n - 2)
            return fam.paper_presentation(n, alpha, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("unknown family %r" % name)


def cmd_family(args) -> int:
    _write(args.output, tf.dumps_tensor(build_family(args)))
    return EXIT_OK


def analyze(L: alg.LeibnizAlgebra) -> dict:
    witness = alg.check_left_leibniz(L)
    derived = alg.derived_series(L)
    lower = alg.lower_central_series(L)
    return {
        "dim": L.dim,
        "left_leibniz": witness is None,
        "left_leibniz_witness": list(witness) if witness else None,
        "right_leibniz": alg.check_right_leibniz(L) is None,
        "is_symmetric": alg.is_symmetric(L),
        "is_lie": alg.is_lie(L),
        "derived_series_dims": [S.dim for S in derived],
        "lower_central_series_dims": [S.dim for S in lower],
        "nilpotency_step": alg.is_nilpotent(L),
        "solvability_step": alg.is_solvable(L),
        "leibniz_kernel": _subspace_json(alg.leibniz_kernel(L)),
        "left_center": _subspace_json(alg.left_center(L)),
        "right_center": _subspace_json(alg.right_center(L)),
        "center": _subspace_json(alg.center(L)),
    }


def cmd_analyze(args):
    L, raw = _load_tensor(args.file)
    res = analyze(L)
    return _report(args, _digest(raw), res, res["left_leibniz"])


def cmd_der(args):
    L, raw = _load_tensor(args.file)
    basis = ms.derivation_basis(L)
    return _report(args, _digest(raw), {"space": "Der", "dim": len(basis), "basis": [tf.matrix_to_json(d) for d in basis]}, True)


def cmd_ader(args):
    L, raw = _load_tensor(args.file)
    basis = ms.antiderivation_basis(L)
    return _report(args, _digest(raw), {"space": "ADer", "dim": len(basis), "basis": [tf.matrix_to_json(d) for d in basis]}, True)


def cmd_bider(args):
    L, raw = _load_tensor(args.file)
    basis = ms.biderivation_basis(L)
    pairs = [{"d": tf.matrix_to_json(p.d), "D": tf.matrix_to_json(p.D)} for p in basis]
    return _report(args, _digest(raw), {"space": "Bider", "dim": len(basis), "basis": pairs}, True)


def cmd_aut_check(args):
    L, raw = _load_tensor(args.file)
    raw_m = _read(args.matrix)
    P = tf.loads_matrix(raw_m.decode("utf-8"))
    if xl.shape(P) != (L.dim, L.dim):
        raise tf.FormatError("matrix must be %dx%d" % (L.dim, L.dim))
    bad = ms.automorphism_violation(L, P)
    res = {"automorphism": bad is None}
    if bad == "singular":
        res["witness"] = "singular"
    elif bad is not None:
        i, j = bad
        res["witness"] = {
            "pair": [i, j],
            "image_of_bracket": tf.vector_to_json(xl.matvec(P, L.table[i][j])),
            "bracket_of_images": tf.vector_to_json(
                alg.bracket(L, xl.columns(P)[i], xl.columns(P)[j])
            ),
        }
    return _report(args, _digest(raw, raw_m), res, bad is None)


def _cocycle_json(report: ext.CocycleReport) -> dict:
    out = {}
    for name in ext.CONDITIONS:
        r = report[name]
        entry = {"passed": r.passed, "checked": r.checked, "failures": r.failures}
        if r.witness is not None:
            entry["witness"] = {
                k: (tf.vector_to_json(v) if isinstance(v, tuple) else v) for k, v in r.witness.items()
            }
        out[name] = entry
    return out


def _load_extension(path):
    raw = _read(path)
    return tf.loads_extension(raw.decode("utf-8")), raw


def cmd_ext_family(args) -> int:
    n = args.n
    alpha, beta = _rationals(args.alpha), _rationals(args.beta)
    try:
        if args.lie:
            E = ext.lie_family_extension(alpha, beta)
        else:
            if n is None:
                raise UsageError("ext-family needs --n")
            alpha = alpha or [Fraction(0)] * (n - 2)
            beta = beta or [Fraction(0)] * (n - 2)
            E = ext.paper_family_extension(n, alpha, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, tf.dumps_extension(E))
    return EXIT_OK


def cmd_ext_check(args):
    E, raw = _load_extension(args.file)
    report = ext.check_cocycle_conditions(E)
    res = {"conditions": _cocycle_json(report), "failed": report.failed}
    return _report(args, _digest(raw), res, report.passed)


def cmd_ext_build(args):
    E, raw = _load_extension(args.file)
    report = ext.check_cocycle_conditions(E)
    res = {"conditions": _cocycle_json(report), "failed": report.failed, "unchecked": args.unchecked}
    if not report.passed and not args.unchecked:
        return _report(args, _digest(raw), res, False)
    L = ext.build_semidirect(E, unchecked=True)
    witness = alg.check_left_leibniz(L)
    res["left_leibniz"] = witness is None
    res["left_leibniz_witness"] = list(witness) if witness else None
    if args.output:
        _write(args.output, tf.dumps_tensor(L))
    else:
        res["tensor"] = tf.tensor_to_obj(L)
    return _report(args, _digest(raw), res, report.passed and witness is None)


def cmd_normalize(args):
    L, raw = _load_tensor(args.file)
    try:
        N = ext.normalize_to_ln(L)
    except alg.HypothesisError as exc:
        return _report(args, _digest(raw), {"in_scope": False, "reason": str(exc)}, False)
    T = alg.transport(L, N.P).with_labels(fam.ln_labels(L.dim))
    res = {
        "in_scope": True,
        "alpha": tf.vector_to_json(N.alpha),
        "beta": tf.vector_to_json(N.beta),
        "P": tf.matrix_to_json(N.P),
        "stages": {
            "adapt": tf.matrix_to_json(N.stages[0]),
            "beta": tf.matrix_to_json(N.stages[1]),
            "alpha": tf.matrix_to_json(N.stages[2]),
        },
        "equals_ln": T == fam.l_n(L.dim),
    }
    if args.output:
        _write(args.output, tf.dumps_tensor(T))
    else:
        res["tensor"] = tf.tensor_to_obj(T)
    return _report(args, _digest(raw), res, res["equals_ln"])


def _axioms_json(rep: racks.RackReport) -> dict:
    return {
        k: {"passed": a.passed, "max_residual": a.max_residual, "witness": a.witness}
        for k, a in rep.axioms.items()
    }


def cmd_rack_check(args):
    try:
        R = racks.SmoothRack(args.variant, args.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.samples < 1 or args.h <= 0 or args.tol <= 0:
        raise UsageError("--samples, --h and --tol must be positive")
    rep = racks.check_rack_axioms(R, args.samples, args.seed, args.axiom_tol)
    T = racks.tangent_algebra(R, args.h)
    if R.variant == racks.CONJ:
        target, perm, target_name = racks.gl_algebra(R.k), list(range(R.dim)), "gl_%d" % R.k
    else:
        target, perm, target_name = fam.l_n(R.dim), racks.ln_identification(R.dim), "L_%d" % R.dim
    cmp = racks.compare_tangent(T, target, args.tol, perm)
    res = {
        "variant": R.variant,
        "dim": R.dim,
        "samples": args.samples,
        "seed": args.seed,
        "axiom_tol": args.axiom_tol,
        "axioms": _axioms_json(rep),
        "rack": rep.rack,
        "pointed": rep.pointed,
        "quandle": rep.quandle,
        "max_residual": rep.max_residual,
        "tangent": {
            "h": args.h,
            "constants": T.c.tolist(),
            "error_estimate": T.error_estimate,
            "leibniz_residual": racks.leibniz_residual(T),
        },
        "comparison": {
            "target": target_name,
            "identification": perm,
            "max_deviation": cmp.max_deviation,
            "at": list(cmp.at),
            "tol": args.tol,
            "passed": cmp.passed,
        },
    }
    ok = rep.pointed and cmp.passed and (rep.quandle or R.variant != racks.CONJ)
    return _report(args, None, res, ok)


# -- parser ---------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibniz", description="Exact toolkit for Leibniz algebras given by structure constants.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("family", help="write the tensor file of a named algebra")
    f.add_argument("name", choices=FAMILIES)
    f.add_argument("--n", type=int)
    f.add_argument("--alpha", help="comma-separated rationals")
    f.add_argument("--beta", help="comma-separated rationals")
    f.add_argument("--poly", help="monic polynomial coefficients, lowest degree first (write --poly=-1,1 when the first is negative)")
    f.add_argument("--k", type=int, default=1)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_family, emits_report=False)

    for name, func, help_ in (
        ("analyze", cmd_analyze, "identities, series, centers, Leibniz kernel"),
        ("der", cmd_der, "derivation space"),
        ("ader", cmd_ader, "anti-derivation space"),
        ("bider", cmd_bider, "biderivation space"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.set_defaults(func=func, emits_report=True)

    a = sub.add_parser("aut-check", help="test whether a matrix is an automorphism")
    a.add_argument("file")
    a.add_argument("matrix")
    a.set_defaults(func=cmd_aut_check, emits_report=True)

    e = sub.add_parser("ext-family", help="write extension data for the parameterised families")
    e.add_argument("--n", type=int)
    e.add_argument("--alpha")
    e.add_argument("--beta")
    e.add_argument("--lie", action="store_true", help="S1 fiber with r = -l")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_ext_family, emits_report=False)

    c = sub.add_parser("ext-check", help="evaluate the cocycle conditions L1-L7")
    c.add_argument("file")
    c.set_defaults(func=cmd_ext_check, emits_report=True)

    b = sub.add_parser("ext-build", help="build the extension algebra")
    b.add_argument("file")
    b.add_argument("--unchecked", action="store_true")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_ext_build, emits_report=True)

    nz = sub.add_parser("normalize", help="change of basis onto L_n")
    nz.add_argument("file")
    nz.add_argument("-o", "--output")
    nz.set_defaults(func=cmd_normalize, emits_report=True)

    r = sub.add_parser("rack-check", help="rack axioms and tangent algebra")
    r.add_argument("--variant", choices=racks.VARIANTS, required=True)
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--samples", type=int, default=1000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--h", type=float, default=racks.DEFAULT_H)
    r.add_argument("--tol", type=float, default=racks.DEFAULT_TOL)
    r.add_argument("--axiom-tol", type=float, default=1e-9)
    r.set_defaults(func=cmd_rack_check, emits_report=True)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        out = args.func(args)
    except (UsageError, tf.FormatError, xl.DimensionError) as exc:
        print("leibniz: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    if not args.emits_report:
        return out
    rep, code = out
    sys.stdout.write(tf.dumps(rep))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
