"""Command-line interface: certify definition files or builtins and report.

Exit codes: 0 all requested checks pass, 1 a requested check failed,
2 parse failure, 3 certificate failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .algebra import as_fraction
from .coideal import (SubalgebraSpec, coideal_check, is_hopf_subalgebra,
                      primitive_of_coideal, register_subalgebra)
from .grading import Signature, certify, hilbert_series, signature
from .hopf import (HopfAlgebraError, PresentedHopfAlgebra,
                   s_squared_analysis, verify_hopf)
from .lantern import lantern, numerology_report, verify_lie
from .nakayama import (character, counit_character, enveloping_integral_character,
                       nakayama_automorphism, s4_identity_check)
from .parser import ParseError, build_algebra, parse, sub_arguments
from .report import Report

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_PARSE = 2
EXIT_CERTIFICATE = 3

SUBCOMMANDS = ("verify", "signature", "lantern", "coideal", "antipode-order",
               "nakayama", "numerology", "report")


class _CliFailure(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_builtin(spec: str, truncation: int):
    """Builtin names: B:<lam>, E[:a,b,l1,l2], U:<preset>."""
    head, _, params = spec.partition(":")
    if head == "B":
        lam = as_fraction(params or "0")
        return catalog.build_b_lambda(lam, truncation)
    if head == "E":
        values = [as_fraction(p) for p in params.split(",")] if params else []
        defaults = [Fraction(1), Fraction(1), Fraction(0), Fraction(0)]
        values = values + defaults[len(values):]
        return catalog.build_e(*values[:4], truncation=truncation)
    if head == "U":
        return catalog.build_enveloping_preset(params or "abelian1", truncation)
    raise _CliFailure(f"unknown builtin {spec!r} (use B:<lam>, E[:a,b,l1,l2], "
                      f"U:<{'|'.join(catalog.ENVELOPING_PRESETS)}>)", EXIT_PARSE)


def _builtin_sub(H: PresentedHopfAlgebra, name: str, truncation: int,
                 builtin: str) -> SubalgebraSpec:
    head = builtin.partition(":")[0]
    which, _, param = name.partition(":")
    if head == "B":
        lam = as_fraction(builtin.partition(":")[2] or "0")
        if which in ("L", "R"):
            return catalog.build_b_coideal(lam, which, param or "inf", truncation)
        if which == "g_alpha":
            return catalog.build_b_coideal(lam, "g_alpha", param or "0", truncation)
        if which == "g_inf":
            return catalog.build_b_coideal(lam, "g_inf", truncation=truncation)
    if head == "E" and which == "T":
        params = builtin.partition(":")[2]
        values = [as_fraction(p) for p in params.split(",")] if params else []
        defaults = [Fraction(1), Fraction(1), Fraction(0), Fraction(0)]
        values = values + defaults[len(values):]
        return catalog.build_e_coideal(*values[:4], truncation=truncation)
    raise _CliFailure(f"builtin {builtin!r} has no subalgebra {name!r}",
                      EXIT_PARSE)


class _Session:
    """One certified algebra plus its registered subalgebras."""

    def __init__(self, args):
        self.truncation = args.truncation
        self.checks: list[dict] = []
        self.data: dict = {}
        if args.builtin and args.file:
            raise _CliFailure("give either a file or --builtin, not both",
                              EXIT_PARSE)
        if args.builtin:
            try:
                self.H = _parse_builtin(args.builtin, self.truncation)
            except HopfAlgebraError as exc:
                raise _CliFailure(str(exc), EXIT_CERTIFICATE)
            except (ValueError, ZeroDivisionError) as exc:
                raise _CliFailure(f"bad builtin {args.builtin!r}: {exc}",
                                  EXIT_PARSE)
            self.subs: list[SubalgebraSpec] = []
            if args.sub:
                try:
                    self.subs = [_builtin_sub(self.H, args.sub, self.truncation,
                                              args.builtin)]
                except (ValueError, ZeroDivisionError) as exc:
                    raise _CliFailure(f"bad subalgebra {args.sub!r}: {exc}",
                                      EXIT_PARSE)
            self._note_report(Report(f"{self.H.name}: certification (builtin)"))
            self.checks.append({"name": "certification", "status": "pass",
                                "details": f"builtin, truncation {self.truncation}"})
        elif args.file:
            try:
                text = open(args.file, "r", encoding="utf-8").read()
            except OSError as exc:
                raise _CliFailure(f"cannot read {args.file}: {exc}", EXIT_PARSE)
            try:
                df = parse(text)
            except ParseError as exc:
                raise _CliFailure(f"parse error: {exc}", EXIT_PARSE)
            try:
                self.H, blocks = build_algebra(df)
            except (ValueError, HopfAlgebraError) as exc:
                raise _CliFailure(f"bad definition: {exc}", EXIT_PARSE)
            report = certify(self.H, self.truncation)
            self._note_report(report)
            if not report.passed:
                raise _CliFailure(
                    "certification failed:\n" + report.summary(),
                    EXIT_CERTIFICATE)
            self.subs = []
            for block in blocks:
                try:
                    self.subs.append(register_subalgebra(
                        **sub_arguments(self.H, block), cutoff=self.truncation))
                except (ValueError, HopfAlgebraError) as exc:
                    raise _CliFailure(f"sub {block.name}: {exc}",
                                      EXIT_CERTIFICATE)
            if args.sub:
                wanted = [s for s in self.subs if s.name == args.sub]
                if not wanted:
                    raise _CliFailure(f"no sub named {args.sub!r} in the file",
                                      EXIT_PARSE)
                self.subs = wanted
        else:
            raise _CliFailure("give a definition file or --builtin", EXIT_PARSE)

    def _note_report(self, report: Report) -> None:
        for c in report.checks:
            self.checks.append({"name": c.name,
                                "status": "pass" if c.passed else "fail",
                                "details": c.details})

    def note(self, report: Report) -> bool:
        self._note_report(report)
        return report.passed

    def failed_checks(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)


def _sig_json(sig: Signature):
    return [[d, m] for d, m in sig.pairs]


def _run_signature(session: _Session, order: int) -> None:
    sig = signature(session.H)
    series = hilbert_series(sig, order)
    session.data["signature"] = _sig_json(sig)
    session.data["hilbert"] = list(series.coeffs)
    session.data["signature_text"] = str(sig)


def _run_lantern(session: _Session) -> None:
    L = lantern(session.H)
    session.note(verify_lie(L))
    session.data["lantern"] = {
        "labels": list(L.labels),
        "degrees": list(L.degrees),
        "brackets": [[L.labels[a], L.labels[b], L.labels[e], str(c)]
                     for (a, b), tbl in sorted(L.brackets.items())
                     for e, c in sorted(tbl.items())],
        "text": str(L),
    }


def _run_coideal(session: _Session) -> None:
    out = []
    for spec in session.subs:
        rep = spec.coideal_report or coideal_check(spec)
        session.note(rep)
        out.append({
            "name": spec.name,
            "side": spec.side,
            "signature": _sig_json(spec.signature()),
            "gk": spec.gk_dimension(),
            "hopf_subalgebra": is_hopf_subalgebra(spec),
            "primitive": str(primitive_of_coideal(spec)),
        })
    session.data["subalgebras"] = out


def _run_antipode_order(session: _Session) -> None:
    targets = session.subs if session.subs else [session.H]
    out = []
    for target in targets:
        analysis = s_squared_analysis(target)
        entry = {"target": analysis.target,
                 "kind": "identity" if analysis.identity else "infinite"}
        if not analysis.identity:
            g, r = analysis.witness
            entry["witness"] = {"generator": str(g), "square": str(g + r),
                                "drop": str(r)}
        entry["text"] = analysis.describe()
        out.append(entry)
    session.data["antipode_order"] = out


def _chi_for(session: _Session, target, spec: str):
    if spec in (None, "", "eps", "counit"):
        return counit_character(target)
    if spec == "auto":
        return enveloping_integral_character(target)
    values = {}
    for piece in spec.split(","):
        name, _, value = piece.partition("=")
        if not value:
            raise _CliFailure(
                f"bad --chi entry {piece!r}; use name=value,...", EXIT_PARSE)
        values[name.strip()] = as_fraction(value.strip())
    chi = character(target, values)
    if not chi.report.passed:
        raise _CliFailure("character does not kill the relations:\n"
                          + chi.report.summary(), EXIT_CHECK)
    return chi


def _run_nakayama(session: _Session, chi_spec: str) -> None:
    if not session.subs:
        raise _CliFailure("nakayama needs --sub (the subalgebra to analyze)",
                          EXIT_PARSE)
    out = []
    for spec in session.subs:
        chi = _chi_for(session, spec, chi_spec)
        nu = nakayama_automorphism(spec, chi)
        entry = {
            "target": spec.name,
            "chi": {g: str(chi.value(g)) for g in spec.presentation.names},
            "images": {g: str(nu.images[i])
                       for i, g in enumerate(spec.presentation.names)},
            "text": nu.describe(),
        }
        if is_hopf_subalgebra(spec):
            rep = s4_identity_check(spec, chi)
            session.note(rep)
            entry["fourth_power_identity"] = rep.passed
        out.append(entry)
    session.data["nakayama"] = out


def _run_numerology(session: _Session) -> None:
    if session.subs:
        for spec in session.subs:
            sig = spec.signature()
            session.note(numerology_report(sig))
            session.data.setdefault("numerology", []).append(
                {"target": spec.name, "signature": _sig_json(sig)})
    else:
        sig = signature(session.H)
        session.note(numerology_report(sig, lantern(session.H)))
        session.data["numerology"] = [{"target": session.H.name,
                                       "signature": _sig_json(sig)}]


def _emit(session: _Session, args, code_hint: int) -> int:
    failed = session.failed_checks()
    payload = {
        "algebra": session.H.name,
        "truncation": session.truncation,
        "checks": session.checks,
        "data": session.data,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(f"algebra {session.H.name} (truncation {session.truncation})")
        for c in session.checks:
            mark = "ok  " if c["status"] == "pass" else "FAIL"
            line = f"  {mark} {c['name']}"
            if c["details"]:
                line += f": {c['details']}"
            print(line)
        _print_data(session.data)
        print("result: " + ("FAIL" if failed else "pass"))
    if failed:
        return code_hint
    return EXIT_OK


def _print_data(data: dict, indent: str = "") -> None:
    for key, value in data.items():
        if key.endswith("_text"):
            continue
        if isinstance(value, dict):
            text = value.get("text")
            if text is not None:
                print(f"{indent}{key}: {text}")
            else:
                print(f"{indent}{key}:")
                _print_data(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{indent}{key}:")
            for item in value:
                text = item.get("text")
                label = item.get("name") or item.get("target") or ""
                if text is not None:
                    print(f"{indent}  {label}: {text}" if label
                          else f"{indent}  {text}")
                else:
                    print(f"{indent}  {json.dumps(item, sort_keys=False)}")
        elif key == "signature":
            pass
        elif key == "hilbert":
            print(f"{indent}hilbert: {value}")
        else:
            print(f"{indent}{key}: {value}")
    if "signature_text" in data:
        print(f"{indent}signature: {data['signature_text']}")


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopfforge",
        description="exact computations with presented connected Hopf algebras")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("file", nargs="?", help=".hopf definition file")
    p.add_argument("--builtin", help="builtin algebra, e.g. B:1, E, U:heisenberg")
    p.add_argument("--sub", help="subalgebra name (builtin: L:inf, R:0, "
                                 "g_alpha:1, g_inf, T; file: sub block name)")
    p.add_argument("--truncation", type=int, default=6,
                   help="certification order (default 6)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--chi", default="eps",
                   help="integral character: eps, auto, or name=value,...")
    return p


def run(argv) -> int:
    args = make_parser().parse_args(argv)
    try:
        session = _Session(args)
        cmd = args.command
        if cmd in ("verify", "report"):
            session.note(session.H.hopf_report or verify_hopf(session.H))
        if cmd in ("signature", "report"):
            _run_signature(session, max(4, args.truncation))
        if cmd in ("lantern", "report"):
            _run_lantern(session)
        if cmd in ("coideal", "report") and (session.subs or cmd == "coideal"):
            if not session.subs:
                raise _CliFailure("coideal needs sub blocks or --sub",
                                  EXIT_PARSE)
            _run_coideal(session)
        if cmd in ("antipode-order", "report"):
            _run_antipode_order(session)
        if cmd == "nakayama":
            _run_nakayama(session, args.chi)
        if cmd in ("numerology", "report"):
            _run_numerology(session)
        code_hint = EXIT_CERTIFICATE if cmd in ("verify", "coideal") else EXIT_CHECK
        return _emit(session, args, code_hint)
    except _CliFailure as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except HopfAlgebraError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CERTIFICATE



def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
