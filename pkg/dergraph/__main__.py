import sys

from dergraph.utils.argparsers import global_parser


def main():
    p = global_parser()
    args = p.parse_args()

    if args.task is None:
        p.print_help()
        sys.exit(2)

    from dergraph.run import run

    sys.exit(run(args))


if __name__ == "__main__":
    main()
