"""Command-line front end.

Exit status: 0 success, 1 a verification failed (witness on stderr),
2 invalid configuration, 3 enumeration cap exceeded. Data goes to
--output (stdout by default); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from . import reference
from .arith import require_prime
from .blocks import loads_blocks
from .designs import UNION_MODES, check_design, conjugate_union, reproduce_table
from .errors import CapExceeded, PRShellsError
from .groups import affine_group, conjugating_permutation, orbits_on_ksubsets
from .harmonics import (
    conjugate_enumerator_sum,
    enumerator_span_report,
    harmonic_weight_enumerator,
    invariant_harmonic_basis,
)
from .jacobi import independence_check, jacobi, jacobi_conjugate_sum, lambda_from_jacobi
from .prcode import DEFAULT_CAP, build_code, dumps_code, residue_cosets
from .verify import theorem_checks

CAP_ENV = "PRSHELLS_CAP"
COMMANDS = (
    "cosets", "genpoly", "code-info", "weights", "shells", "design-check", "jacobi",
    "jacobi-sum", "harmonic-basis", "hwe", "verify-theorem", "reproduce",
)
TARGETS = ("table1", "table2", "example51", "example52")
TABLE_COLUMNS = ["ell", "lambda", "blocks", "is_design"]


class ConfigError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    p: int = 31
    m: int = 3
    q: int = 2
    ell: int | None = None
    ell_range: tuple[int, int] | None = None
    t: int = 2
    threads: int = 1
    cap: int = DEFAULT_CAP
    output: str = "-"
    format: str = "text"
    rep_of: tuple[int, int] | None = None
    union: str = "codewords"
    blocks: str | None = None

    def validate(self):
        for name in ("p", "q"):
            try:
                require_prime(getattr(self, name))
            except PRShellsError:
                raise ConfigError(f"--{name} {getattr(self, name)} is not prime") from None
        if self.m < 1 or (self.p - 1) % self.m:
            raise ConfigError(f"--m {self.m} must divide p-1 = {self.p - 1}")
        if self.p > 62:
            raise ConfigError("--p above 62 is not supported")
        if self.t < 1:
            raise ConfigError("--t must be at least 1")
        if self.threads < 1:
            raise ConfigError("--threads must be positive")
        if self.cap < 1:
            raise ConfigError("--cap must be positive")
        if self.ell is not None and not 0 <= self.ell <= self.p:
            raise ConfigError(f"--ell must lie in [0, {self.p}]")
        if self.ell_range is not None:
            lo, hi = self.ell_range
            if not 0 <= lo <= hi <= self.p:
                raise ConfigError(f"--ell-range must satisfy 0 <= lo <= hi <= {self.p}")
        if self.rep_of is not None and not all(0 <= a < self.p for a in self.rep_of):
            raise ConfigError("--rep-of points must be residues 0..p-1")
        if self.rep_of is not None and self.rep_of[0] == self.rep_of[1]:
            raise ConfigError("--rep-of needs two distinct points")
        return self

    def weights(self) -> range:
        if self.ell is not None:
            return range(self.ell, self.ell + 1)
        lo, hi = self.ell_range if self.ell_range else (0, self.p)
        return range(lo, hi + 1)


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="prshells",
        description="Power residue codes, Jacobi polynomials, harmonic enumerators and shell designs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("target", nargs="?", choices=TARGETS, help="what to reproduce (reproduce only)")
    ap.add_argument("--p", type=int, default=31, help="prime code length")
    ap.add_argument("--m", type=int, default=3, help="residue power, divides p-1")
    ap.add_argument("--q", type=int, default=2, help="prime field size, an m-th power residue mod p")
    ap.add_argument("--ell", type=int, help="single shell weight")
    ap.add_argument("--ell-range", type=_pair, metavar="LO,HI", help="inclusive weight range")
    ap.add_argument("--t", type=int, default=2, help="design strength / subset size")
    ap.add_argument("--threads", type=int, default=1, help="enumeration worker threads")
    ap.add_argument("--cap", type=int, default=None,
                    help=f"enumeration cap (default {DEFAULT_CAP}, or ${CAP_ENV})")
    ap.add_argument("--format", choices=("text", "json", "csv"), default="text")
    ap.add_argument("--output", default="-", help="output path, '-' for stdout")
    ap.add_argument("--rep-of", type=_pair, metavar="A,B", help="use the H-orbit containing this pair")
    ap.add_argument("--union", choices=UNION_MODES, default="codewords",
                    help="how conjugate shells are merged")
    ap.add_argument("--blocks", help="design-check: block file to check instead of a shell union")
    return ap


def config_from_args(args) -> RunConfig:
    cap = args.cap
    if cap is None:
        env = os.environ.get(CAP_ENV)
        try:
            cap = int(env) if env else DEFAULT_CAP
        except ValueError:
            raise ConfigError(f"${CAP_ENV} must be an integer, got {env!r}") from None
    return RunConfig(
        p=args.p, m=args.m, q=args.q, ell=args.ell, ell_range=args.ell_range, t=args.t,
        threads=args.threads, cap=cap, output=args.output, format=args.format,
        rep_of=args.rep_of, union=args.union, blocks=args.blocks,
    ).validate()


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


class Report:
    """Structured result: a JSON-able payload, text lines and optional CSV rows."""

    def __init__(self, payload, text: list[str], rows: list[list] | None = None, columns=None):
        self.payload = payload
        self.text = text
        self.rows = rows
        self.columns = columns

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            if self.rows is None:
                raise ConfigError("this command has no CSV form; use text or json")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.rows)
            return buf.getvalue()
        return "\n".join(self.text) + "\n"


class Runner:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._code = None

    @property
    def code(self):
        if self._code is None:
            c = self.cfg
            self._code = build_code(c.p, c.m, c.q)
            t0 = time.perf_counter()
            self._code.enumerate(cap=c.cap, workers=c.threads)
            _progress(f"enumerated {self._code.size} codewords in {time.perf_counter() - t0:.1f}s")
        return self._code

    # -- small commands -------------------------------------------------------

    def cosets(self):
        rc = residue_cosets(self.cfg.p, self.cfg.m)
        text = [f"generator {rc.generator}"] + [
            f"A_{i}: " + " ".join(map(str, sorted(A))) for i, A in enumerate(rc.cosets)
        ]
        payload = {"p": rc.p, "m": rc.m, "generator": rc.generator, "cosets": [sorted(A) for A in rc.cosets]}
        rows = [[i, a] for i, A in enumerate(rc.cosets) for a in sorted(A)]
        return Report(payload, text, rows, ["coset", "residue"])

    def genpoly(self):
        code = build_code(self.cfg.p, self.cfg.m, self.cfg.q)
        g = code.generator_poly
        payload = {"coeffs": list(g.coeffs), "degree": g.degree, "q": g.q}
        rows = [[i, c] for i, c in enumerate(g.coeffs)]
        return Report(payload, [str(g), " ".join(map(str, g.coeffs))], rows, ["power", "coeff"])

    def code_info(self):
        code = build_code(self.cfg.p, self.cfg.m, self.cfg.q)
        payload = {"p": code.p, "m": code.m, "q": code.q, "k": code.k, "size": code.size,
                   "generator_poly": list(code.generator_poly.coeffs), "rows": [list(r) for r in code.rows]}
        return Report(payload, dumps_code(code).rstrip("\n").splitlines())

    def weights(self):
        dist = self.code.supports.weight_distribution()
        ws = [w for w in self.cfg.weights() if dist[w] or self.cfg.ell is not None]
        payload = {"weights": {w: dist[w] for w in ws}, "total": sum(dist)}
        return Report(payload, [f"{w} {dist[w]}" for w in ws], [[w, dist[w]] for w in ws], ["weight", "count"])

    # -- designs --------------------------------------------------------------

    def _union(self, ell):
        c = self.cfg
        tau = conjugating_permutation(c.p, c.m)
        return conjugate_union(self.code.supports, tau, c.m, ell, c.union)

    def shells(self):
        rows, text = [], []
        for ell in self.cfg.weights():
            B = self._union(ell)
            if B.is_empty():
                continue
            rows.append([ell, B.count, len(B.masks)])
            text.append(f"ell={ell} blocks={B.count} distinct={len(B.masks)}")
        payload = [dict(zip(["ell", "blocks", "distinct"], r)) for r in rows]
        return Report(payload, text, rows, ["ell", "blocks", "distinct"])

    def design_check(self):
        c = self.cfg
        if c.blocks:
            B = loads_blocks(Path(c.blocks).read_text())
            label = c.blocks
        else:
            if c.ell is None:
                raise ConfigError("design-check needs --ell or --blocks")
            B = self._union(c.ell)
            label = f"ell={c.ell}"
        if B.is_empty():
            payload = {"label": label, "empty": True, "is_design": True}
            return Report(payload, [f"{label}: empty; vacuously consistent"],
                          [[c.ell, "", 0, True]], TABLE_COLUMNS)
        rep = check_design(B, c.t)
        payload = {"label": label, "empty": False, "is_design": rep.is_design, "t": rep.t, "lambda": rep.lam,
                   "blocks": rep.blocks, "block_size": rep.block_size, "min": rep.min_count,
                   "max": rep.max_count, "witness": rep.witness}
        text = [f"{label}: {rep.t}-({rep.v}, {rep.block_size}, {rep.lam}) design, {rep.blocks} blocks"
                if rep.is_design else
                f"{label}: not a {rep.t}-design; counts {rep.min_count}..{rep.max_count}, witness {rep.witness}"]
        report = Report(payload, text, [[c.ell, rep.lam, rep.blocks, rep.is_design]], TABLE_COLUMNS)
        if not rep.is_design:
            raise VerificationFailed(report, f"witness {rep.witness} lies in {rep.min_count} blocks")
        return report

    # -- Jacobi ---------------------------------------------------------------

    def _subsets(self):
        """(label, T) pairs: the chosen pair, or one representative per H-orbit."""
        c = self.cfg
        if c.rep_of is not None:
            if c.t != 2:
                raise ConfigError("--rep-of selects a pair; use --t 2")
            return [(f"T={tuple(sorted(c.rep_of))}", tuple(sorted(c.rep_of)))]
        H, _ = affine_group(c.p, c.m)
        part = orbits_on_ksubsets(H, c.t)
        return [(f"T={r} (orbit {i}, size {len(part.orbits[i])})", r)
                for i, r in enumerate(part.representatives)]

    @staticmethod
    def _poly_report(items):
        payload = [{"T": list(T), "polynomial": P.to_json()} for _, T, P in items]
        text = []
        for label, _, P in items:
            text.append(f"# {label}")
            text += P.to_text().rstrip("\n").splitlines()
        rows = [[",".join(map(str, T)), *e, coeff] for _, T, P in items for coeff, e in P.terms()]
        return Report(payload, text, rows, ["T", "m0", "m1", "n0", "n1", "coeff"])

    def jacobi(self):
        S = self.code.supports
        return self._poly_report([(label, T, jacobi(S, T)) for label, T in self._subsets()])

    def jacobi_sum(self):
        c = self.cfg
        tau = conjugating_permutation(c.p, c.m)
        S = self.code.supports
        if c.rep_of is not None:
            T = tuple(sorted(c.rep_of))
            return self._poly_report([(f"T={T}", T, jacobi_conjugate_sum(S, tau, c.m, T))])
        _progress(f"summing over all {c.t}-subsets")
        rep = independence_check(S, tau, c.m, c.t)
        if not rep.independent:
            a, b = rep.witness
            raise VerificationFailed(None, f"sum differs between T={a} and T={b}")
        report = self._poly_report([(f"independent of T ({rep.subsets_checked} subsets)",
                                     tuple(range(c.t)), rep.reference)])
        lams = {ell: lambda_from_jacobi(rep, ell) for ell in range(c.t, c.p + 1)}
        report.text += [f"lambda(ell={ell}) = {lam}" for ell, lam in lams.items() if lam]
        return report

    # -- harmonics ------------------------------------------------------------

    def _basis(self):
        c = self.cfg
        H, _ = affine_group(c.p, c.m)
        return invariant_harmonic_basis(H, c.t)

    def harmonic_basis(self):
        basis = self._basis()
        text = [f"dimension {basis.dimension}"]
        payload = {"dimension": basis.dimension, "orbit_representatives": [list(r) for r in basis.orbits.representatives],
                   "coefficients": basis.coefficients, "functions": []}
        for i, f in enumerate(basis):
            per_orbit = [str(f(o_rep)) for o_rep in basis.orbits.representatives]
            text.append(f"f{i + 1}: orbit values {per_orbit}")
            payload["functions"].append(f.to_text().splitlines())
        return Report(payload, text)

    def hwe(self):
        c = self.cfg
        basis = self._basis()
        tau = conjugating_permutation(c.p, c.m)
        S = self.code.supports
        text, payload, failed = [], [], []
        for i, f in enumerate(basis):
            single = harmonic_weight_enumerator(S, f)
            total = conjugate_enumerator_sum(S, tau, c.m, f)
            text.append(f"# f{i + 1}: w_C,f")
            text += single.to_text().rstrip("\n").splitlines()
            text.append(f"# f{i + 1}: conjugate sum " + ("zero" if total.is_zero() else "NONZERO"))
            payload.append({"single": single.to_text().splitlines(), "conjugate_sum_zero": total.is_zero()})
            if not total.is_zero():
                failed.append((i + 1, total.nonzero_weights()))
        report = Report(payload, text)
        if failed:
            raise VerificationFailed(report, f"conjugate sums nonzero at {failed}")
        return report

    # -- suites ---------------------------------------------------------------

    def verify_theorem(self):
        c = self.cfg
        checks = theorem_checks(c.p, c.m, c.q, c.t, code=self.code, progress=_progress)
        payload = [{"check": ch.name, "ok": ch.ok, "detail": ch.detail} for ch in checks]
        report = Report(payload, [ch.line() for ch in checks],
                        [[ch.name, ch.ok, ch.detail] for ch in checks], ["check", "ok", "detail"])
        bad = [ch.name for ch in checks if not ch.ok]
        if bad:
            raise VerificationFailed(report, f"failed: {bad}")
        return report

    def reproduce(self, target):
        if target in ("table1", "table2"):
            return self._reproduce_table(target)
        return self._reproduce_example(target)

    def _reproduce_table(self, name):
        ref = reference.load()[name]
        self.cfg.p, self.cfg.m, self.cfg.q, self.cfg.t = ref["p"], ref["m"], ref["q"], ref["t"]
        expected = reference.table(name)
        lo, hi = self.cfg.ell_range or tuple(ref["ell"])
        rows = reproduce_table(self.cfg.p, self.cfg.m, self.cfg.q, (lo, hi), self.cfg.t, code=self.code,
                               union=self.cfg.union,
                               progress=lambda r: _progress(f"ell={r.ell} lambda={r.lam}"))
        out_rows, text, bad = [], [], []
        for r in rows:
            out_rows.append([r.ell, "" if r.empty else r.lam, r.blocks, r.is_design])
            exp = expected.get(r.ell)
            ok = r.is_design and (exp is None or r.lam == exp)
            text.append(f"ell={r.ell:>2} lambda={'empty' if r.empty else r.lam:>8} blocks={r.blocks}"
                        + ("" if exp is None else f" expected={exp}") + ("" if ok else "  MISMATCH"))
            if not ok:
                bad.append((r.ell, r.lam, exp))
        payload = [dict(zip(TABLE_COLUMNS, row)) for row in out_rows]
        report = Report(payload, text, out_rows, TABLE_COLUMNS)
        if bad:
            raise VerificationFailed(report, f"rows differing from the published table (ell, got, expected): {bad}")
        return report

    def _reproduce_example(self, name):
        ex = reference.example(name)
        c = self.cfg
        c.p, c.m, c.q, c.t = ex["p"], ex["m"], ex["q"], 2
        S = self.code.supports
        H, _ = affine_group(c.p, c.m)
        part = orbits_on_ksubsets(H, 2)
        polys = [jacobi(S, T) for T in ex["representatives"]]
        orbit_ids = [part.orbit_index(T) for T in ex["representatives"]]
        jac_ok = Counter(polys) == Counter(ex["polynomials"]) and len(set(orbit_ids)) == c.m
        basis = invariant_harmonic_basis(H, 2, orbits=part)
        enums = [harmonic_weight_enumerator(S, f) for f in basis]
        span = enumerator_span_report(enums, ex["harmonic_enumerators"])
        text = []
        for T, P, oid in zip(ex["representatives"], polys, orbit_ids):
            text.append(f"# T={tuple(T)} (H-orbit {oid})")
            text += P.to_text().rstrip("\n").splitlines()
        text.append(f"Jacobi polynomials match the published ones: {jac_ok}")
        text.append(f"invariant harmonic dimension: computed {basis.dimension}, "
                    f"published claim {ex['claimed_invariant_dimension']}")
        for i, e in enumerate(enums):
            text.append(f"# enumerator of basis function {i + 1}")
            text += e.to_text().rstrip("\n").splitlines()
        text.append(f"published enumerators in computed span: {span.in_span} "
                    f"(rank of span {span.dimension}, with published vectors {span.rank_with_targets})")
        payload = {
            "representatives": [list(T) for T in ex["representatives"]],
            "orbits": orbit_ids,
            "polynomials": [P.to_json() for P in polys],
            "jacobi_match": jac_ok,
            "invariant_dimension": basis.dimension,
            "claimed_dimension": ex["claimed_invariant_dimension"],
            "enumerators": [e.to_text().splitlines() for e in enums],
            "published_in_span": span.in_span,
        }
        report = Report(payload, text)
        # the span comparison is diagnostic only; the Jacobi match is the gate
        if not jac_ok:
            raise VerificationFailed(report, "computed Jacobi polynomials differ from the published ones")
        return report

    def run(self, command: str, target: str | None = None) -> Report:
        if command == "reproduce":
            if target is None:
                raise ConfigError(f"reproduce needs one of {TARGETS}")
            return self.reproduce(target)
        if target is not None:
            raise ConfigError(f"{command} takes no positional target")
        return getattr(self, command.replace("-", "_"))()


def _emit(report: Report | None, cfg: RunConfig):
    if report is None:
        return
    data = report.render(cfg.format)
    if cfg.output == "-":
        sys.stdout.write(data)
        sys.stdout.flush()
    else:
        Path(cfg.output).write_text(data)


def run(command: str, cfg: RunConfig, target: str | None = None) -> int:
    try:
        report = Runner(cfg).run(command, target)
        _emit(report, cfg)
        return 0
    except VerificationFailed as exc:
        report, why = exc.args
        _emit(report, cfg)
        print(f"verification failed: {why}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"error: {exc} (raise --cap or ${CAP_ENV})", file=sys.stderr)
        return 3
    except (ConfigError, PRShellsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(args.command, cfg, args.target)


if __name__ == "__main__":
    sys.exit(main())
