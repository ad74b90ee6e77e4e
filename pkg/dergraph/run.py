"""
Subcommand dispatch. Every `do_<task>` renders one library operation and
returns the exit status: 0 on success, 1 when a verification fails, 2 when
the input is unusable.
"""

import sys
import argparse

from typing import Callable, ContextManager, Dict, List, Optional

from dergraph.utils import Timer, Timing
from dergraph.utils.formatting import (
    format_table,
    format_spectrum,
    format_extremal,
    extremal_to_dict,
    format_character_table,
    to_json,
)


EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _timer(args: argparse.Namespace, description: str) -> ContextManager[Timing]:
    """always measures; prints to stderr only under --time"""
    return Timer(description, post_print=True, report=getattr(args, "time", False))


def _status(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def do_dn(args: argparse.Namespace) -> int:
    from dergraph.derangements import (
        derangement_count,
        verify_identities,
        nearest_integer_characterization,
    )

    value = derangement_count(args.n)
    if not args.check:
        print(to_json({"n": args.n, "dn": str(value)}) if args.json else value)
        return EXIT_OK

    with _timer(args, "identities"):
        report = verify_identities(max(args.n, 2))
        nearest = nearest_integer_characterization(args.n) if args.n >= 3 else None

    ok = report.ok and nearest is not False
    if args.json:
        print(
            to_json(
                {
                    "n": args.n,
                    "dn": str(value),
                    "violations": [[n, name] for n, name in report.violations],
                    "nearest_integer": nearest,
                }
            )
        )
    else:
        print(value)
        for n, name in report.violations:
            print(f"FAIL n={n}: {name}")
        if nearest is not None:
            print(f"nearest integer to n!/e: {'pass' if nearest else 'FAIL'}")
    return _status(ok)


def do_spectrum(args: argparse.Namespace) -> int:
    from dergraph.spectra import spectrum_table

    with _timer(args, "spectrum"):
        entries = spectrum_table(args.n)

    if args.json:
        print(to_json({"n": args.n, "entries": [e.to_dict() for e in entries]}))
    else:
        print(format_spectrum(entries))
    return EXIT_OK


def do_poly(args: argparse.Namespace) -> int:
    from dergraph.spectra import adjacency_polynomial, distance_polynomial

    with _timer(args, "polynomial"):
        poly = adjacency_polynomial(args.n) if args.adjacency else distance_polynomial(args.n)

    if args.json:
        print(
            to_json(
                {
                    "n": poly.n,
                    "factors": [[str(r), str(m)] for r, m in poly.factors],
                    "rendered": poly.render(),
                }
            )
        )
    else:
        print(poly.render())
    return EXIT_OK


def do_extremal(args: argparse.Namespace) -> int:
    from dergraph.spectra import extremal

    ext = extremal(args.n)
    violations = ext.theorem_violations()
    if args.json:
        print(to_json({**extremal_to_dict(ext), "violations": violations}))
    else:
        print(format_extremal(ext))
        for v in violations:
            print(f"FAIL {v}")
    return _status(not violations)


def do_factorize(args: argparse.Namespace) -> int:
    from dergraph.permutations import Permutation, parse_permutation
    from dergraph.factorize import factorize_two, single_cycle_factorization

    w = parse_permutation(args.permutation, args.n)
    if args.p is not None:
        long_cycle = Permutation.from_cycles([range(2, w.n + 1)], w.n)
        if w != long_cycle:
            raise ValueError(f"--p needs w = (2 3 ... {w.n}), got {w}")
        cert = single_cycle_factorization(w.n, args.p)
    else:
        cert = factorize_two(w)

    result = cert.to_dict()
    if args.json:
        print(to_json(result))
    else:
        for key in ("w", "sigma", "tau", "method", "verified"):
            print(f"{key}: {result[key]}")
    return _status(bool(result["verified"]))


def do_verify(args: argparse.Namespace) -> int:
    from dergraph.oracle import (
        build_graph,
        bfs_distances,
        distance_matrix,
        verify_spectrum,
        matrix_identity_check,
        vertex_transitivity_check,
    )
    from dergraph.factorize import UnsupportedDegree, certify_all
    from dergraph.utils.default_params import DefaultParams as dp

    if not dp.MIN_DISTANCE_DEGREE <= args.n <= dp.MAX_GRAPH_DEGREE:
        raise UnsupportedDegree(
            f"verify needs {dp.MIN_DISTANCE_DEGREE} <= n <= {dp.MAX_GRAPH_DEGREE}, "
            f"got n={args.n}"
        )
    if not 0 <= args.k <= dp.MAX_TRACE_POWER:
        raise ValueError(f"--k must be at most {dp.MAX_TRACE_POWER}, got {args.k}")

    with _timer(args, "graph"):
        g = build_graph(args.n, use_tqdm=args.use_tqdm)
        row = bfs_distances(g, use_tqdm=args.use_tqdm)

    rows = [("diameter", row.diameter, row.diameter == 2)]
    if args.samples:
        with _timer(args, "vertex transitivity"):
            same = vertex_transitivity_check(g, samples=args.samples, row=row)
        rows.append(("vertex transitivity", f"{args.samples} sources", same))

    report = None
    if args.n <= dp.MAX_MATRIX_DEGREE:
        with _timer(args, "distance matrix"):
            d = distance_matrix(g, row=row, use_tqdm=args.use_tqdm)
        with _timer(args, "traces"):
            report = verify_spectrum(
                args.n,
                k_max=args.k,
                numeric=args.numeric,
                g=g,
                d=d,
                use_tqdm=args.use_tqdm,
            )
        for c in report.checks:
            rows.append((f"tr(d^{c.k})", f"{c.trace} vs {c.predicted}", c.ok))
        if args.matrix:
            with _timer(args, "d = 2J - A"):
                rows.append(("d = 2J - A", "", matrix_identity_check(args.n, g=g, d=d)))
    else:
        print(
            f"n={args.n}: the distance matrix isn't materialised, "
            "so only the BFS checks run",
            file=sys.stderr,
        )

    if args.certify:
        with _timer(args, "certificates"):
            cert_report = certify_all(args.n, use_tqdm=args.use_tqdm)
        rows.append(("certificates", cert_report.checked, cert_report.ok))

    ok = all(passed for _, _, passed in rows)
    if args.json:
        print(
            to_json(
                {
                    "n": args.n,
                    "checks": [
                        {"check": name, "value": str(value), "ok": passed}
                        for name, value, passed in rows
                    ],
                    "numeric_max_error": report.numeric_max_error if report is not None else None,
                    "numeric_ok": report.numeric_ok if report is not None else None,
                    "ok": ok,
                }
            )
        )
    else:
        print(
            format_table(
                ("check", "value", "result"),
                [(n, v, "pass" if p else "FAIL") for n, v, p in rows],
            )
        )
        if report is not None and report.numeric_ok is not None:
            print(
                f"numeric eigenvalues (advisory): max error {report.numeric_max_error:.3g}, "
                f"{'pass' if report.numeric_ok else 'FAIL'}"
            )
    return _status(ok)


def do_sweep(args: argparse.Namespace) -> int:
    from dergraph.spectra import lemma_sweep

    with _timer(args, "sweep"):
        report = lemma_sweep(args.n_from, args.n_to, use_tqdm=args.use_tqdm)

    if args.json:
        print(
            to_json(
                {
                    "from": report.n_from,
                    "to": report.n_to,
                    "checked": report.checked,
                    "violations": [str(v) for v in report.violations],
                }
            )
        )
    else:
        print(f"{report.checked} inequalities checked for {report.n_from} <= n <= {report.n_to}")
        for v in report.violations:
            print(f"FAIL {v}")
    return _status(report.ok)


def do_sign(args: argparse.Namespace) -> int:
    from dergraph.spectra import sign_check

    report = sign_check(args.n_max)
    if args.json:
        print(
            to_json(
                {
                    "n_max": report.n_max,
                    "checked": report.checked,
                    "violations": [
                        {"partition": list(lam.parts), "eta": str(value)}
                        for lam, value in report.violations
                    ],
                }
            )
        )
    else:
        print(f"{report.checked} partitions checked for 2 <= n <= {report.n_max}")
        for lam, value in report.violations:
            print(f"FAIL {lam.compact()}: eta = {value}")
    return _status(report.ok)


def do_chars(args: argparse.Namespace) -> int:
    from dergraph.characters import character_table
    from dergraph.data.character_cache import table_to_dict

    with _timer(args, "character table"):
        table = character_table(args.n, use_cache=args.cache, cache_dir=args.cache_dir)

    if args.json:
        print(to_json(table_to_dict(table)))
    else:
        print(format_character_table(table))
    return EXIT_OK


def _suite_runners() -> Dict[str, Callable[[int, Optional[int]], List[str]]]:
    """check name -> (n, k_max) -> failure messages"""
    from dergraph import derangements as der
    from dergraph import oracle, spectra
    from dergraph.factorize import certify_all
    from dergraph.partitions import partitions_of
    from dergraph.utils.default_params import DefaultParams

    def identities(n: int, _: Optional[int]) -> List[str]:
        return [f"n={m}: {name}" for m, name in der.verify_identities(max(n, 2)).violations]

    def nearest(n: int, _: Optional[int]) -> List[str]:
        return [] if der.nearest_integer_characterization(n) else [f"n={n}"]

    def certify(n: int, _: Optional[int]) -> List[str]:
        return certify_all(n).failures

    def diameter(n: int, _: Optional[int]) -> List[str]:
        d = oracle.bfs_distances(oracle.build_graph(n)).diameter
        return [] if d == 2 else [f"n={n}: diameter {d}"]

    def matrix(n: int, _: Optional[int]) -> List[str]:
        return [] if oracle.matrix_identity_check(n) else [f"n={n}: d != 2J - A"]

    def traces(n: int, k_max: Optional[int]) -> List[str]:
        k = k_max if k_max is not None else DefaultParams.TRACE_POWER
        return [
            f"n={n}, k={c.k}: {c.trace} != {c.predicted}"
            for c in oracle.verify_spectrum(n, k).checks
            if not c.ok
        ]

    def characters(n: int, _: Optional[int]) -> List[str]:
        return [
            f"n={n}: {lam.compact()}"
            for lam in partitions_of(n)
            if spectra.eta(lam) != spectra.eta_from_characters(lam)
        ]

    def closed_forms(n: int, _: Optional[int]) -> List[str]:
        return [f"n={n}: {v}" for v in spectra.closed_form_violations(n)]

    def extremal(n: int, _: Optional[int]) -> List[str]:
        return spectra.extremal(n).theorem_violations()

    def lemmas(n: int, _: Optional[int]) -> List[str]:
        return [str(v) for v in spectra.lemma_sweep(n, n).violations]

    def sign(n: int, _: Optional[int]) -> List[str]:
        return [f"{lam.compact()}: {v}" for lam, v in spectra.sign_check(n).violations]

    return {
        "derangement-identities": identities,
        "nearest-integer": nearest,
        "certify": certify,
        "diameter": diameter,
        "matrix-identity": matrix,
        "traces": traces,
        "characters": characters,
        "closed-forms": closed_forms,
        "extremal": extremal,
        "lemmas": lemmas,
        "sign": sign,
    }


def do_suite(args: argparse.Namespace) -> int:
    from tqdm import tqdm
    from dergraph.data.suite_definition import SuiteDefinition

    suite = SuiteDefinition.from_yaml(args.suite_file)
    runners = _suite_runners()

    rows = []
    for check in suite.checks:
        for n in tqdm(check.degrees, desc=check.check.value, disable=not args.use_tqdm):
            with _timer(args, f"{check.check.value} n={n}") as timing:
                failures = runners[check.check.value](n, check.k_max)
            rows.append(
                (
                    check.check.value,
                    n,
                    "pass" if not failures else "FAIL",
                    timing.format(),
                )
            )
            for f in failures:
                print(f"FAIL {check.check.value}: {f}", file=sys.stderr)

    print(format_table(("check", "n", "result", "seconds"), rows))
    return _status(all(r[2] == "pass" for r in rows))


TASKS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "dn": do_dn,
    "spectrum": do_spectrum,
    "poly": do_poly,
    "extremal": do_extremal,
    "factorize": do_factorize,
    "verify": do_verify,
    "sweep": do_sweep,
    "sign": do_sign,
    "chars": do_chars,
    "suite": do_suite,
}


def run(args: argparse.Namespace) -> int:
    """dispatch to the task's handler; bad input is reported on stderr, exit 2"""
    # lazy-import
    from dergraph.data.suite_definition import InvalidSuiteDefinitionFile

    try:
        return TASKS[args.task](args)
    except (ValueError, OSError, InvalidSuiteDefinitionFile) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
