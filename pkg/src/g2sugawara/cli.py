"""Command-line interface: every verification emits a JSON (or text) certificate.

Exit status: 0 when the certificate is ok, 1 on a verification failure,
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import SCHEMA_VERSION, __version__, g2, gaudin, sugawara, walgebra
from .exact import render_scalar

THREADS_ENV = "G2S_THREADS"


class UsageError(Exception):
    pass


def _scalar(x) -> str:
    return render_scalar(x)


def _pmap(fn, items, threads: int) -> list:
    """Map in worker processes when ``threads > 1``; results keep input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _certificate(command, inputs, ok, residues, peak, start, order, payload) -> dict:
    cert = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "ok": bool(ok),
        "residue_summary": {k: v for k, v in residues.items() if v},
        "term_count_peak": peak,
        "wall_time_ms": int(round((time.perf_counter() - start) * 1000)),
        "engine_version": __version__,
        "order_used": order,
    }
    cert.update(payload)
    return cert


def _items_payload(items) -> list:
    out = []
    for it in items:
        entry = {"name": it.name, "residue_terms": it.residue_terms, "ok": it.ok}
        residue = getattr(it, "residue", None)
        if not it.ok and residue is not None and len(residue):
            entry["residue"] = residue.dump().splitlines()
        out.append(entry)
    return out


def _vector_tag(text: str) -> str:
    tag = text.strip().upper()
    if tag not in sugawara.SS_DEFINITIONS:
        raise UsageError(f"--vector must be one of s2..s6, got {text!r}")
    return tag


# ---------------------------------------------------------------------------
# subcommands


def cmd_structure_constants(args) -> dict:
    start = time.perf_counter()
    report = g2.structure_report()
    table = g2.structure_table_json()
    return _certificate(
        "structure-constants", {}, not any(report.values()), report, len(table), start, "none",
        {"checks": report, "table": table},
    )


def cmd_tensor_ops(args) -> dict:
    start = time.perf_counter()
    rel = g2.tensor_relations()
    beta = g2.beta_failures()
    uniform = len(g2.uniform_commutator_failures())
    residues = {k: 0 if v else 1 for k, v in rel.items()}
    residues.update({f"beta {k}": v for k, v in beta.items()})
    residues["uniform commutators"] = uniform
    ops = g2.build_tensor_ops()
    sizes = {"P": len(ops.P.entries), "Q": len(ops.Q.entries), "T": len(ops.T.entries), "Omega": len(ops.Omega.entries)}
    return _certificate(
        "tensor-ops", {}, not any(residues.values()), residues, max(sizes.values()), start, "none",
        {"relations": rel, "beta": beta, "uniform_commutator_failures": uniform, "nonzero_entries": sizes},
    )


def cmd_verify_chevalley(args) -> dict:
    start = time.perf_counter()
    rel = g2.chevalley_relations()
    images = {
        k: {g2.generator_name(a): _scalar(c) for a, c in sorted(v.items())} for k, v in g2.chevalley_map().items()
    }
    residues = {k: 0 if v else 1 for k, v in rel.items()}
    return _certificate(
        "verify-chevalley", {}, all(rel.values()), residues, 0, start, "none",
        {"relations": rel, "images": images},
    )


def _casimir_job(k: int):
    c = sugawara.verify_casimir((k,))
    return [(i.name, i.residue_terms, i.ok) for i in c.items], c.term_count_peak


def cmd_verify_casimir(args) -> dict:
    start = time.perf_counter()
    degrees = list(range(2, args.max_degree + 1))
    results = _pmap(_casimir_job, degrees, args.threads)
    items = [x for res, _ in results for x in res]
    peak = max(p for _, p in results)
    residues = {n: t for n, t, _ in items}
    return _certificate(
        "verify-casimir", {"degrees": degrees}, all(ok for _, _, ok in items), residues, peak, start, "VACUUM",
        {"checks": [{"name": n, "residue_terms": t, "ok": ok} for n, t, ok in items]},
    )


MUTATIONS = {"S4": 1, "S5": 1, "S6": 3}


def cmd_verify_ss(args) -> dict:
    start = time.perf_counter()
    tag = _vector_tag(args.vector)
    definition = None
    if args.mutate:
        if tag not in MUTATIONS:
            raise UsageError(f"--mutate needs a vector with several printed coefficients (s4, s5, s6), got {args.vector}")
        definition = sugawara.mutated_definition(tag, MUTATIONS[tag])
    cert = sugawara.verify_invariance(tag, args.probe, definition)
    residues = {i.name: i.residue_terms for i in cert.items}
    inputs = {"vector": tag, "probe": args.probe, "mutate": bool(args.mutate), "level": sugawara.CRITICAL_LEVEL}
    if definition is not None:
        inputs["definition"] = [[c, list(m)] for c, m in definition]
    return _certificate(
        "verify-ss", inputs, cert.ok, residues, cert.term_count_peak, start, "VACUUM",
        {"vector": tag, "vector_terms": cert.extra["vector_terms"], "probes": _items_payload(cert.items)},
    )


def cmd_verify_corollary(args) -> dict:
    start = time.perf_counter()
    cert = sugawara.verify_corollary_relations()
    residues = {i.name: i.residue_terms for i in cert.items}
    return _certificate(
        "verify-corollary", {}, cert.ok, residues, cert.term_count_peak, start, "VACUUM",
        {"relations": _items_payload(cert.items)},
    )


def cmd_miura(args) -> dict:
    start = time.perf_counter()
    w = walgebra.miura_expand()
    rel = walgebra.w_relations()
    residues = {k: len(v) for k, v in rel.items()}
    return _certificate(
        "miura", {}, not any(residues.values()), residues, max(len(x) for x in w.values()), start, "none",
        {"w": {f"w{k}": w[k].to_json() for k in sorted(w)}, "relations": residues},
    )


def cmd_hc_image(args) -> dict:
    start = time.perf_counter()
    tag = _vector_tag(args.vector)
    image = walgebra.hc_image(tag)
    diff = image - walgebra.theorem_b_targets()[tag]
    return _certificate(
        "hc-image", {"vector": tag}, not diff, {"image - printed": len(diff)}, len(image), start, "HC",
        {"image": image.to_json(), "mismatch": diff.to_json()},
    )


def _screening_target(text: str):
    t = text.strip().lower()
    if t.startswith("w") and t[1:].isdigit() and 2 <= int(t[1:]) <= 7:
        return f"w{t[1:]}", walgebra.miura_expand()[int(t[1:])]
    if t.startswith("s") and t.upper() in sugawara.SS_DEFINITIONS:
        return f"phi({t.upper()})", walgebra.hc_image(t.upper())
    raise UsageError(f"--target must be w2..w7 or s2..s6, got {text!r}")


def cmd_screenings(args) -> dict:
    start = time.perf_counter()
    name, x = _screening_target(args.target)
    out = {}
    residues = {}
    for i in (1, 2):
        r = walgebra.screening_apply(i, x)
        residues[f"V{i}({name})"] = len(r)
        out[f"V{i}"] = r.to_json()
    return _certificate(
        "screenings", {"target": args.target.lower()}, not any(residues.values()), residues, len(x), start, "none",
        {"residues": out},
    )


def _parse_mu(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--mu expects 'mu1,mu2', got {text!r}")
    try:
        return Fraction(parts[0].strip()), Fraction(parts[1].strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--mu expects rationals, got {text!r}") from None


def _shift_job(job):
    sample, pairs = job
    mu = gaudin.MuElement.symbolic() if sample is None else gaudin.MuElement(*sample)
    cert = gaudin.verify_theorem_c([mu], pairs)
    return [(i.name, i.residue_terms, i.ok) for i in cert.items], cert.term_count_peak


def cmd_shift_commute(args) -> dict:
    start = time.perf_counter()
    if args.symbolic:
        samples = [None]
    else:
        samples = [_parse_mu(m) for m in (args.mu or ["1,2"])]
        for s in samples:
            if not gaudin.MuElement(*s).is_regular():
                raise UsageError(f"mu={s[0]},{s[1]} is not regular (need mu1, mu2, mu3 nonzero and distinct)")
    results = _pmap(_shift_job, [(s, args.pairs) for s in samples], args.threads)
    items = [x for res, _ in results for x in res]
    inputs = {"mu": "symbolic" if args.symbolic else [[str(a), str(b)] for a, b in samples], "pairs": args.pairs}
    return _certificate(
        "shift-commute", inputs, all(ok for _, _, ok in items), {n: t for n, t, _ in items},
        max(p for _, p in results), start, "VACUUM",
        {"checks": [{"name": n, "residue_terms": t, "ok": ok} for n, t, ok in items]},
    )


def cmd_gaudin(args) -> dict:
    start = time.perf_counter()
    tag = _vector_tag(args.vector)
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"config: cannot read {args.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        cfg = gaudin.GaudinConfig.from_json(data)
    except gaudin.ConfigError as exc:
        raise UsageError(f"config field {exc}") from None
    value = gaudin.eigenvalue(tag, cfg)
    residuals = gaudin.bethe_residuals(cfg)
    g1, g2_ = gaudin.gamma_functions(cfg)
    residues = {f"bethe[{j}]": 0 if r == 0 else 1 for j, r in enumerate(residuals)}
    payload = {
        "vector": tag,
        "eigenvalue": value.render(),
        "bethe_residuals": [_scalar(r) for r in residuals],
        "gamma": {"Gamma1": g1.render(), "Gamma2": g2_.render()},
    }
    order = "none"
    if cfg.ell == 1 and not cfg.bethe and cfg.mu == (0, 0):
        check = gaudin.verify_gaudin_l1(tag, cfg.lam[0], z=cfg.z[0])
        residues["operator-side eigenvalue"] = sum(i.residue_terms for i in check.items)
        payload["operator_check"] = {
            "ok": check.ok,
            "constant": _scalar(check.extra["operator_constant"]),
            "degree": check.extra["degree"],
        }
        order = "VERMA"
    inputs = {"config": data, "vector": tag}
    return _certificate(
        "gaudin", inputs, not any(residues.values()), residues, 0, start, order, payload,
    )


def _selftest_job(name: str):
    return name, SELFTESTS[name]()


def _ok_map(d: dict) -> int:
    return sum(1 for v in d.values() if not v)


SELFTESTS = {
    "jacobi": lambda: len(g2.jacobi_failures()),
    "form-invariance": lambda: len(g2.invariance_failures()),
    "listed-relations": lambda: _ok_map(g2.listed_relations()),
    "tensor-relations": lambda: _ok_map(g2.tensor_relations()),
    "chevalley": lambda: _ok_map(g2.chevalley_relations()),
    "ss-S2": lambda: 0 if sugawara.verify_invariance("S2").ok else 1,
    "casimir": lambda: 0 if sugawara.verify_casimir().ok else 1,
    "ss-S3": lambda: 0 if sugawara.verify_invariance("S3").ok else 1,
    "ss-S4": lambda: 0 if sugawara.verify_invariance("S4").ok else 1,
    "ss-S5": lambda: 0 if sugawara.verify_invariance("S5").ok else 1,
    "ss-S6": lambda: 0 if sugawara.verify_invariance("S6").ok else 1,
    "ss-S6-mutated-fails": lambda: 0
    if not sugawara.verify_invariance("S6", "g11-1", sugawara.mutated_definition("S6", 3)).ok
    else 1,
    "corollary": lambda: 0 if sugawara.verify_corollary_relations().ok else 1,
    "w-relations": lambda: sum(len(v) for v in walgebra.w_relations().values()),
    "hc-images": lambda: 0 if walgebra.verify_theorem_b().ok else 1,
    "screenings": lambda: 0 if walgebra.verify_screening_kernel().ok else 1,
    "shift-commute": lambda: 0 if gaudin.verify_theorem_c([(1, 2)]).ok else 1,
    "gaudin-l1": lambda: sum(0 if gaudin.verify_gaudin_l1(t, (1, 0)).ok else 1 for t in ("S2", "S3")),
}
QUICK = ("jacobi", "form-invariance", "listed-relations", "tensor-relations", "chevalley", "ss-S2")


def cmd_selftest(args) -> dict:
    start = time.perf_counter()
    names = list(QUICK) if args.quick else list(SELFTESTS)
    results = _pmap(_selftest_job, names, args.threads)
    residues = dict(results)
    return _certificate(
        "selftest", {"quick": bool(args.quick)}, not any(residues.values()), residues, 0, start, "VACUUM",
        {"checks": [{"name": n, "failures": v, "ok": v == 0} for n, v in results]},
    )


# ---------------------------------------------------------------------------
# argument parsing and output


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default=None, help="certificate format")
    common.add_argument("--threads", type=int, default=None, help=f"worker processes (env {THREADS_ENV})")

    parser = _Parser(prog="g2sugawara", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=fn)
        return p

    add("structure-constants", cmd_structure_constants, "dump the structure table and check it")
    add("tensor-ops", cmd_tensor_ops, "check the relations among P, Q, T and Omega")
    add("verify-chevalley", cmd_verify_chevalley, "check the Chevalley and Serre relations")
    p = add("verify-casimir", cmd_verify_casimir, "centrality of tr G^k in U(g)")
    p.add_argument("--max-degree", type=int, default=6, choices=range(2, 7))
    p = add("verify-ss", cmd_verify_ss, "invariance of a Segal-Sugawara vector")
    p.add_argument("--vector", required=True)
    p.add_argument("--probe", choices=("all", "zero-modes", "g11-1"), default="all")
    p.add_argument("--mutate", action="store_true", help="perturb one printed coefficient (negative control)")
    add("verify-corollary", cmd_verify_corollary, "relations among S2..S5")
    add("miura", cmd_miura, "expand the Miura product")
    p = add("hc-image", cmd_hc_image, "Harish-Chandra image of a vector")
    p.add_argument("--vector", required=True)
    p = add("screenings", cmd_screenings, "apply both screening operators")
    p.add_argument("--target", required=True)
    p = add("shift-commute", cmd_shift_commute, "commutativity of the shift-of-argument generators")
    p.add_argument("--mu", action="append", help="mu1,mu2 (repeatable)")
    p.add_argument("--symbolic", action="store_true", help="keep mu1, mu2 as variables")
    p.add_argument("--pairs", choices=("all", "b-pairs"), default="all")
    p = add("gaudin", cmd_gaudin, "Gaudin eigenvalue and Bethe residuals")
    p.add_argument("--config", required=True)
    p.add_argument("--vector", required=True)
    p = add("selftest", cmd_selftest, "run the built-in checks")
    p.add_argument("--quick", action="store_true")
    return parser


def _text(cert: dict) -> str:
    lines = [f"{cert['command']}: {'ok' if cert['ok'] else 'FAILED'}"]
    for key in ("inputs", "residue_summary"):
        if cert[key]:
            lines.append(f"{key}: {json.dumps(cert[key], sort_keys=True)}")
    lines.append(f"term_count_peak: {cert['term_count_peak']}  wall_time_ms: {cert['wall_time_ms']}")
    for key in ("probes", "checks", "relations"):
        val = cert.get(key)
        if isinstance(val, list):
            for it in val:
                lines.append(f"  {'ok ' if it.get('ok') else 'BAD'} {it['name']}")
        elif isinstance(val, dict):
            for name, v in val.items():
                lines.append(f"  {'ok ' if v in (True, 0) else 'BAD'} {name}")
    if "eigenvalue" in cert:
        lines.append(f"eigenvalue: {json.dumps(cert['eigenvalue'])}")
        lines.append(f"bethe_residuals: {cert['bethe_residuals']}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise UsageError("missing subcommand")
        if args.threads is None:
            env = os.environ.get(THREADS_ENV, "1")
            try:
                args.threads = int(env)
            except ValueError:
                raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        cert = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if (args.output or "json") == "text":
        print(_text(cert), file=stdout)
    else:
        print(json.dumps(cert, indent=2, sort_keys=True), file=stdout)
    return 0 if cert["ok"] else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
