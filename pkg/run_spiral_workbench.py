#!/usr/bin/env python3
"""
Spiral Workbench - Command Line Runner
Batch front door for generation, spectral sequence computation and verification
"""

import argparse
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

# Add the project root to the path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from spiral_workbench.manager.commands import (cmd_gen_dk, cmd_homology, cmd_perm, cmd_random, cmd_spiral,
                                               cmd_totss, cmd_verify)
from spiral_workbench.resource.artifact_io import dumps
from spiral_workbench.resource.errors import SchemaViolation, WorkbenchError
from spiral_workbench.resource.logger import LoggerFactory
from spiral_workbench.resource.run_config import InstanceKind, OutputFormat, RunConfig, Subcommand


def _add_common(parser: argparse.ArgumentParser, instance_bounds: bool = False) -> None:
    """Options every subcommand understands"""
    parser.add_argument("--p", dest="prime", type=int, default=2, help="prime for F_p coefficients")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.JSON.value)
    parser.add_argument("--out", dest="output_dir", type=Path, default=None,
                        help="output directory (default: SPIRAL_WORKBENCH_OUTPUT_DIR or ./output)")
    if instance_bounds:
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--N", dest="max_n", type=int, default=3)
        parser.add_argument("--Q", dest="max_q", type=int, default=3)
        parser.add_argument("--dim-cap", dest="dim_cap", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subparser per subcommand

    Returns:
        The configured parser
    """
    parser = argparse.ArgumentParser(prog="run_spiral_workbench.py",
                                     description="Exact spiral and Tot spectral sequence workbench")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen_dk = sub.add_parser(Subcommand.GEN_DK.value, help="resolved mapping spaces of the restricted simplex category")
    gen_dk.add_argument("--cat", default="delta-op", choices=["delta-op"])
    gen_dk.add_argument("--from", dest="source", type=int, required=True)
    gen_dk.add_argument("--to", dest="target", type=int, required=True)
    gen_dk.add_argument("--component", default=None, help="face word of one component, e.g. d0d2")
    _add_common(gen_dk)

    perm = sub.add_parser(Subcommand.PERM.value, help="permutahedron lattices, complexes and facet labels")
    perm.add_argument("--n", type=int, required=True)
    perm.add_argument("--emit", choices=["lattice", "complex", "labels"], default="lattice")
    perm.add_argument("--r", type=int, default=None, help="page for --emit labels (default n)")
    _add_common(perm)

    homology = sub.add_parser(Subcommand.HOMOLOGY.value, help="homology of a simplicial set file")
    homology.add_argument("--in", dest="inputs", type=Path, action="append", required=True)
    homology.add_argument("--ring", default="Z", help="Z or a prime")
    _add_common(homology)

    for name, help_text in ((Subcommand.SPIRAL.value, "spiral spectral sequence of a bisimplicial instance"),
                            (Subcommand.TOTSS.value, "Tot spectral sequence of a cosimplicial instance")):
        pages = sub.add_parser(name, help=help_text)
        pages.add_argument("--in", dest="inputs", type=Path, action="append", required=True)
        pages.add_argument("--rmax", dest="r_max", type=int, default=6)
        pages.add_argument("--verify", choices=["none", "all"], default="none")
        _add_common(pages)

    random = sub.add_parser(Subcommand.RANDOM.value, help="seeded random instances")
    random.add_argument("--kind", choices=[k.value for k in InstanceKind], default=InstanceKind.BISIMPLICIAL.value)
    random.add_argument("--count", type=int, default=1)
    _add_common(random, instance_bounds=True)

    verify = sub.add_parser(Subcommand.VERIFY.value, help="run verification suites")
    verify.add_argument("--suite", default="all")
    verify.add_argument("--seeds", type=int, default=100)
    verify.add_argument("--max-gap", dest="max_gap", type=int, default=4)
    verify.add_argument("--rmax", dest="r_max", type=int, default=6)
    verify.add_argument("--iso-cap", dest="iso_cap", type=int, default=10_000)
    verify.add_argument("--progress", action="store_true")
    verify.add_argument("--emit-graph", dest="emit_graph", action="store_true",
                        help="also write the suite graph as DOT")
    _add_common(verify, instance_bounds=True)
    return parser


CONFIG_FIELDS = ("prime", "seed", "max_n", "max_q", "dim_cap", "r_max", "output_format", "suite", "seeds",
                 "max_gap", "iso_cap", "kind", "progress", "output_dir", "inputs")


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Validate the parsed options into a RunConfig

    Args:
        args: Parsed command line

    Returns:
        The frozen run configuration
    """
    values: Dict[str, Any] = {"subcommand": Subcommand(args.subcommand)}
    for name in CONFIG_FIELDS:
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise SchemaViolation(f"Invalid run configuration: {e.errors()[0]['msg']}",
                              {"errors": [error["msg"] for error in e.errors()]})


COMMANDS: Dict[str, Callable[[RunConfig, argparse.Namespace], Dict[str, Any]]] = {
    Subcommand.GEN_DK.value: cmd_gen_dk,
    Subcommand.PERM.value: cmd_perm,
    Subcommand.HOMOLOGY.value: cmd_homology,
    Subcommand.SPIRAL.value: cmd_spiral,
    Subcommand.TOTSS.value: cmd_totss,
    Subcommand.RANDOM.value: cmd_random,
}


def dispatch(config: RunConfig, args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    if config.subcommand == Subcommand.VERIFY:
        return cmd_verify(config, args)
    return COMMANDS[config.subcommand.value](config, args), 0


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse, run one subcommand and map the outcome to an exit code

    Args:
        argv: Command line arguments (default sys.argv)

    Returns:
        0 on success, 1 on an invariant or domain failure, 2 on a schema violation
    """
    args = build_parser().parse_args(argv)
    args.correlation_id = f"corr_{datetime.now().strftime('%Y%m%d_%H%M%S')}"
    logger = LoggerFactory.get_logger("runner", args.correlation_id)
    try:
        config = build_config(args)
        summary, code = dispatch(config, args)
        print(dumps(summary).decode("utf-8"), end="")
        return code
    except WorkbenchError as e:
        logger.error(f"{args.subcommand} failed: {str(e)}")
        print(dumps(e.to_dict()).decode("utf-8"), end="", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
