import argparse

from pathlib import Path

from dergraph.utils.default_params import DefaultParams as dp

try:
    boolean_action = argparse.BooleanOptionalAction  # type: ignore
except AttributeError:
    boolean_action = "store_true"  # type: ignore


def uint(val: str) -> int:
    try:
        v = int(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{val} is not a positive integer")

    if v < 0:
        raise argparse.ArgumentTypeError(f"{val} is not a positive integer")

    return v


def degree(val: str) -> int:
    "the n of S_n"
    v = uint(val)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{val} must be at least 1")
    return v


def add_common_flags(parser: argparse.ArgumentParser, json: bool = True) -> None:
    if json:
        parser.add_argument(
            "--json",
            action=boolean_action,
            default=False,
            help="print results as JSON (big integers as decimal strings)",
        )
    parser.add_argument(
        "--use-tqdm",
        action=boolean_action,
        default=False,
        help="show progress bars on stderr",
    )
    parser.add_argument(
        "--time",
        action=boolean_action,
        default=False,
        help="print timings to stderr",
    )


def global_parser():
    parser = argparse.ArgumentParser(
        description="distance spectra and diameter certificates of derangement graphs",
        allow_abbrev=False,
    )
    subparsers = parser.add_subparsers(help="here is what you can do", dest="task")
    dn_parser(
        parser=subparsers.add_parser(
            "dn", help="the number of derangements D_n", allow_abbrev=False
        )
    )
    spectrum_parser(
        parser=subparsers.add_parser(
            "spectrum", help="the distance spectrum table of Γ_n", allow_abbrev=False
        )
    )
    poly_parser(
        parser=subparsers.add_parser(
            "poly", help="the factored distance polynomial of Γ_n", allow_abbrev=False
        )
    )
    extremal_parser(
        parser=subparsers.add_parser(
            "extremal", help="the extremal distance eigenvalues", allow_abbrev=False
        )
    )
    factorize_parser(
        parser=subparsers.add_parser(
            "factorize",
            help="write a permutation as a product of two derangements",
            allow_abbrev=False,
        )
    )
    verify_parser(
        parser=subparsers.add_parser(
            "verify",
            help="check the spectrum against the brute force graph",
            allow_abbrev=False,
        )
    )
    sweep_parser(
        parser=subparsers.add_parser(
            "sweep", help="check the eigenvalue inequalities", allow_abbrev=False
        )
    )
    sign_parser(
        parser=subparsers.add_parser(
            "sign", help="check the alternating sign of η_λ", allow_abbrev=False
        )
    )
    chars_parser(
        parser=subparsers.add_parser(
            "chars", help="the character table of S_n", allow_abbrev=False
        )
    )
    suite_parser(
        parser=subparsers.add_parser(
            "suite", help="run a YAML verification suite", allow_abbrev=False
        )
    )
    return parser


def dn_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="the number of derangements D_n", allow_abbrev=False
        )

    parser.add_argument("n", type=uint, help="degree")
    parser.add_argument(
        "--check",
        action=boolean_action,
        default=False,
        help="also check the recurrences and the nearest integer characterisation",
    )
    add_common_flags(parser)
    return parser


def spectrum_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="the distance spectrum table of Γ_n", allow_abbrev=False
        )

    parser.add_argument("n", type=degree, help="degree, at least 4")
    add_common_flags(parser)
    return parser


def poly_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="the factored distance polynomial of Γ_n", allow_abbrev=False
        )

    parser.add_argument("n", type=degree, help="degree, at least 4")
    parser.add_argument(
        "--adjacency",
        action=boolean_action,
        default=False,
        help="the characteristic polynomial of the adjacency matrix instead",
    )
    add_common_flags(parser)
    return parser


def extremal_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="the extremal distance eigenvalues of Γ_n", allow_abbrev=False
        )

    parser.add_argument("n", type=degree, help="degree, at least 4")
    add_common_flags(parser)
    return parser


def factorize_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="write a permutation as a product of two derangements",
            allow_abbrev=False,
        )

    parser.add_argument(
        "permutation",
        type=str,
        help="cycle notation, e.g. '(2 3 4 5 6)', or one-line, e.g. '[1,3,4,5,6,2]'",
    )
    parser.add_argument(
        "--n",
        type=degree,
        default=None,
        help="degree; defaults to the largest point listed",
    )
    parser.add_argument(
        "--p",
        type=degree,
        default=None,
        help=(
            "use the single cycle construction with this p; the permutation "
            "must then be (2 3 ... n)"
        ),
    )
    add_common_flags(parser)
    return parser


def verify_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="check the analytic spectrum against the brute force graph",
            allow_abbrev=False,
        )

    parser.add_argument(
        "n",
        type=degree,
        help=(
            f"degree, {dp.MIN_DISTANCE_DEGREE} to {dp.MAX_GRAPH_DEGREE}; above "
            f"{dp.MAX_MATRIX_DEGREE} only the BFS checks run"
        ),
    )
    parser.add_argument(
        "--k",
        type=uint,
        default=dp.TRACE_POWER,
        help=f"check tr(d^k) for every k up to this (default {dp.TRACE_POWER})",
    )
    parser.add_argument(
        "--numeric",
        action=boolean_action,
        default=False,
        help="also compare floating point eigenvalues (advisory)",
    )
    parser.add_argument(
        "--matrix",
        action=boolean_action,
        default=True,
        help="check d = 2J - A entrywise",
    )
    parser.add_argument(
        "--samples",
        type=uint,
        default=dp.TRANSITIVITY_SAMPLES,
        help=(
            "compare BFS distance histograms from this many random sources "
            f"with the identity's, 0 to skip (default {dp.TRANSITIVITY_SAMPLES})"
        ),
    )
    parser.add_argument(
        "--certify",
        action=boolean_action,
        default=False,
        help="also factor every non-identity non-derangement of S_n",
    )
    add_common_flags(parser)
    return parser


def sweep_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="check the eigenvalue inequalities", allow_abbrev=False
        )

    parser.add_argument(
        "--from",
        dest="n_from",
        type=degree,
        default=dp.SWEEP_FROM,
        help=f"first degree (default {dp.SWEEP_FROM})",
    )
    parser.add_argument(
        "--to",
        dest="n_to",
        type=degree,
        default=dp.SWEEP_TO,
        help=f"last degree (default {dp.SWEEP_TO})",
    )
    add_common_flags(parser)
    return parser


def sign_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="check the alternating sign of η_λ", allow_abbrev=False
        )

    parser.add_argument(
        "--max",
        dest="n_max",
        type=degree,
        default=dp.SIGN_MAX,
        help=f"largest degree (default {dp.SIGN_MAX})",
    )
    add_common_flags(parser)
    return parser


def chars_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="the character table of S_n", allow_abbrev=False
        )

    parser.add_argument("n", type=degree, help="degree")
    parser.add_argument(
        "--cache",
        action=boolean_action,
        default=True,
        help="read and write the table cache (see DERGRAPH_CACHE_DIR)",
    )
    parser.add_argument(
        "--cache-dir",
        type=Path,
        default=None,
        help="override the cache directory",
    )
    add_common_flags(parser)
    return parser


def suite_parser(parser=None):
    if parser is None:
        parser = argparse.ArgumentParser(
            description="run a YAML verification suite", allow_abbrev=False
        )

    parser.add_argument("suite_file", type=Path, help="path to the suite YAML file")
    add_common_flags(parser, json=False)
    return parser
