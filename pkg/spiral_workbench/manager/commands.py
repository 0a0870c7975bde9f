"""
Subcommand implementations behind run_spiral_workbench.py.

Every command reads a validated RunConfig plus its own argparse options,
writes canonical artifacts into the output directory and returns a summary
with the path and digest of each artifact.
"""

from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..algebra.exact_couple import Page, couple_check, pages, pages_table
from ..combinatorics.permutahedron import face_lattice, label_obstruction_boundary, order_complex
from ..combinatorics.simplex_cat import Injection, eval_word
from ..resource.artifact_io import digest, read_artifact, tsv_table, with_digest, write_artifact
from ..resource.dot_visualizer import face_lattice_dot, page_chart_dot, save_dot
from ..resource.errors import InvariantFailure, SchemaViolation
from ..resource.logger import LoggerFactory, output_dir
from ..resource.run_config import InstanceKind, OutputFormat, RunConfig, is_prime
from ..simplicial.dk_resolution import component_of, delta_op_category, dk_mapping_space
from ..simplicial.sset import SimplicialSet, homology
from ..spectral.corpus import (DIAGONAL_LEVEL, Instance, diagonal_level, diagonal_realization, instance_for_seed,
                               instance_from_dict, realize)
from ..spectral.spiral import (abutment_check, e2_matches_double_homology, moore_chain_homotopy_check,
                               spiral_pages, spiral_report, spiral_vs_staircase)
from ..spectral.tot import (cosimplicial_lift_check, couple_of_tot, d1_check, splitting_check,
                            tot_abutment_check, tot_tower, tot_vs_staircase)
from .suite_runner import SuiteRunner


def _target_dir(config: RunConfig) -> Path:
    return Path(config.output_dir) if config.output_dir else output_dir()


def _emit(config: RunConfig, stem: str, payload: Any, tsv: Optional[str] = None,
          dot: Optional[str] = None) -> Dict[str, str]:
    """Write the artifact for the configured format; returns {"path", "digest"}"""
    target = _target_dir(config)
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        path = target / f"{stem}.json"
        return {"path": str(path), "digest": write_artifact(path, payload)}
    if fmt == OutputFormat.TSV and tsv is not None:
        path = target / f"{stem}.tsv"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(tsv, encoding="utf-8")
        return {"path": str(path), "digest": digest(tsv)}
    if fmt == OutputFormat.DOT and dot is not None:
        path = save_dot(dot, target / f"{stem}.dot")
        return {"path": str(path), "digest": ""}
    raise SchemaViolation(f"Format {fmt.value} is not available for {stem}")


def _load_instance(path: Path, default_kind: InstanceKind) -> Instance:
    """An instance file from `random`, or a bare object of the default kind"""
    data = read_artifact(path)
    if isinstance(data, dict) and "kind" not in data:
        data = {"kind": default_kind.value, "name": path.stem, "instance": data}
    instance = instance_from_dict(data)
    if instance.name == "input":
        instance.name = path.stem
    return instance


def _single_input(config: RunConfig) -> Path:
    if len(config.inputs) != 1:
        raise SchemaViolation(f"Expected exactly one --in file, got {len(config.inputs)}")
    return Path(config.inputs[0])


def _page_dot(page_list: List[Page], label: str) -> str:
    return "\n".join(page_chart_dot(page, f"{label}_E{page.r}") for page in page_list)


def _require_passed(checks: Dict[str, Dict[str, Any]], command: str) -> None:
    for name, report in checks.items():
        if not report["passed"]:
            raise InvariantFailure(f"{command}: check {name} failed", {"check": name, "report": report})


# gen-dk -------------------------------------------------------------------------

def parse_arrow(text: str, j: int, m: int) -> Injection:
    """A face word such as "d0d2" (optionally "d0d2@3") as an injection [m] -> [j]"""
    word = text.split("@")[0].strip()
    if word == "id":
        letters: List[int] = []
    else:
        parts = word.split("d")
        if parts[0] != "" or len(parts) < 2:
            raise SchemaViolation(f"Bad face word {text!r}; expected letters like d0d2")
        try:
            letters = [int(part) for part in parts[1:]]
        except ValueError:
            raise SchemaViolation(f"Bad face word {text!r}; expected letters like d0d2")
    theta = eval_word(letters, j)
    if theta.src != m:
        raise SchemaViolation(f"{text} runs [{theta.src}] -> [{j}], expected [{m}] -> [{j}]")
    return theta


def cmd_gen_dk(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Mapping space DK(C)(j, m) of the restricted simplex category, or one component of it"""
    logger = LoggerFactory.get_command_logger("gen-dk", getattr(args, "correlation_id", None))
    j, m = args.source, args.target
    if args.cat != "delta-op":
        raise SchemaViolation(f"Unknown category {args.cat!r}")
    if not 0 <= m <= j:
        raise SchemaViolation(f"Need 0 <= to <= from, got from={j}, to={m}")
    try:
        space = dk_mapping_space(delta_op_category(m, j), j, m)
        stem = f"dk-{j}-{m}"
        if args.component:
            theta = parse_arrow(args.component, j, m)
            space = component_of(space, theta)
            stem += f"-{theta.name()}"
        rows = [(n, len(names)) for n, names in sorted(space.cells.items())]
        artifact = _emit(config, stem, space.to_dict(), tsv=tsv_table(("dim", "cells"), rows))
        logger.info(f"Mapping space written: {artifact['path']}", {"counts": list(space.counts())})
        return {"command": "gen-dk", "artifacts": [artifact], "counts": list(space.counts())}
    except Exception as e:
        logger.error(f"gen-dk failed: {str(e)}")
        raise


# perm ---------------------------------------------------------------------------

def cmd_perm(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Face lattice, order complex or obstruction labels of P^n"""
    logger = LoggerFactory.get_command_logger("perm", getattr(args, "correlation_id", None))
    n = args.n
    try:
        if args.emit == "lattice":
            lattice = face_lattice(n)
            rows = [(k, count) for k, count in enumerate(lattice.f_vector())]
            artifact = _emit(config, f"perm-{n}-lattice", lattice.to_dict(),
                             tsv=tsv_table(("dim", "faces"), rows), dot=face_lattice_dot(lattice))
        elif args.emit == "complex":
            complex_ = order_complex(n)
            rows = [(k, count) for k, count in enumerate(complex_.counts())]
            artifact = _emit(config, f"perm-{n}-complex", complex_.to_dict(), tsv=tsv_table(("dim", "cells"), rows))
        else:
            r = args.r or n
            labels = label_obstruction_boundary(max(n, r), r)
            rows = [(entry["facet"], entry["label"], entry["stage"] if entry["stage"] is not None else "",
                     int(entry["new"])) for entry in labels]
            artifact = _emit(config, f"perm-{max(n, r)}-labels-r{r}", {"n": max(n, r), "r": r, "facets": labels},
                             tsv=tsv_table(("facet", "label", "stage", "new"), rows))
        logger.info(f"Permutahedron artifact written: {artifact['path']}", {"n": n, "emit": args.emit})
        return {"command": "perm", "artifacts": [artifact]}
    except Exception as e:
        logger.error(f"perm failed: {str(e)}")
        raise


# homology -----------------------------------------------------------------------

def parse_ring(text: str) -> Any:
    if text.upper() == "Z":
        return "Z"
    try:
        prime = int(text)
    except ValueError:
        raise SchemaViolation(f"Ring must be Z or a prime, got {text!r}")
    if not is_prime(prime):
        raise SchemaViolation(f"Ring must be Z or a prime, got {text!r}")
    return prime


def cmd_homology(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Homology of a simplicial set file over Z or F_p"""
    logger = LoggerFactory.get_command_logger("homology", getattr(args, "correlation_id", None))
    path = _single_input(config)
    ring = parse_ring(args.ring)
    try:
        X = SimplicialSet.from_dict(read_artifact(path))
        groups = homology(X, ring)
        report = with_digest({
            "input": path.stem,
            "ring": str(ring),
            "counts": list(X.counts()),
            "homology": {str(k): groups[k].to_dict() for k in sorted(groups)},
        })
        rows = [(k, groups[k].rank, ",".join(str(t) for t in groups[k].torsion)) for k in sorted(groups)]
        artifact = _emit(config, f"{path.stem}.homology", report, tsv=tsv_table(("degree", "betti", "torsion"), rows))
        logger.info(f"Homology computed for {path.name}", {"ring": str(ring)})
        return {"command": "homology", "artifacts": [artifact], "report": report}
    except Exception as e:
        logger.error(f"homology failed for {path}: {str(e)}")
        raise


# spiral -------------------------------------------------------------------------

def spiral_checks(instance: Instance, r_max: int) -> Dict[str, Dict[str, Any]]:
    X = instance.value
    B = instance.bicomplex
    extended = diagonal_realization(B) if diagonal_level(B) <= DIAGONAL_LEVEL else None
    comparison = spiral_vs_staircase(X, r_max)
    later = [m for m in comparison["mismatches"] if m["r"] >= 2]
    return {
        "pages_vs_staircase": {"passed": not later, "mismatches": later,
                               "first_page_agrees": comparison["first_page_agrees"]},
        "stabilization": comparison["stabilization"],
        "e2_double_homology": e2_matches_double_homology(X),
        "moore_chains": moore_chain_homotopy_check(X),
        "abutment": abutment_check(X, extended=extended),
    }


def cmd_spiral(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Pages of the spiral exact couple of a bisimplicial instance"""
    logger = LoggerFactory.get_command_logger("spiral", getattr(args, "correlation_id", None))
    path = _single_input(config)
    try:
        instance = _load_instance(path, InstanceKind.BISIMPLICIAL)
        if instance.kind == InstanceKind.BICOMPLEX:
            instance = Instance(instance.name, InstanceKind.BISIMPLICIAL, instance.bicomplex,
                                realize(instance.bicomplex, InstanceKind.BISIMPLICIAL), instance.seed, instance.expect)
        if instance.kind != InstanceKind.BISIMPLICIAL:
            raise SchemaViolation(f"spiral needs a bisimplicial instance, got {instance.kind.value}")
        report = spiral_report(instance.value, config.r_max)
        checks = spiral_checks(instance, config.r_max) if args.verify == "all" else {}
        payload = with_digest({"input": instance.name, **report, "checks": checks})
        page_list = _pages_from(instance, config.r_max, spiral=True)
        for page in page_list:
            logger.log_page(page.r, {f"{n},{p}": page.dim((n, p)) for n, p in page.support()})
        artifact = _emit(config, f"{instance.name}.spiral", payload, tsv=pages_table(page_list),
                         dot=_page_dot(page_list, "spiral"))
        _require_passed({"exactness": report["exactness"], **checks}, "spiral")
        return {"command": "spiral", "artifacts": [artifact], "passed": True}
    except Exception as e:
        logger.error(f"spiral failed for {path}: {str(e)}")
        raise


def _pages_from(instance: Instance, r_max: int, spiral: bool) -> List[Page]:
    if spiral:
        return spiral_pages(instance.value, r_max)
    return pages(couple_of_tot(tot_tower(instance.value)), r_max)


# totss --------------------------------------------------------------------------

def totss_checks(instance: Instance, r_max: int) -> Dict[str, Dict[str, Any]]:
    X = instance.value
    return {
        "splitting": splitting_check(X),
        "d1": d1_check(X),
        "pages_vs_staircase": tot_vs_staircase(X, r_max),
        "lifts": cosimplicial_lift_check(X),
        "abutment": tot_abutment_check(X),
    }


def cmd_totss(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Pages of the Tot tower of a cosimplicial instance"""
    logger = LoggerFactory.get_command_logger("totss", getattr(args, "correlation_id", None))
    path = _single_input(config)
    try:
        instance = _load_instance(path, InstanceKind.COSIMPLICIAL)
        if instance.kind == InstanceKind.BICOMPLEX:
            instance = Instance(instance.name, InstanceKind.COSIMPLICIAL, instance.bicomplex,
                                realize(instance.bicomplex, InstanceKind.COSIMPLICIAL), instance.seed, instance.expect)
        if instance.kind != InstanceKind.COSIMPLICIAL:
            raise SchemaViolation(f"totss needs a cosimplicial instance, got {instance.kind.value}")
        couple = couple_of_tot(tot_tower(instance.value))
        exactness = couple_check(couple)
        page_list = pages(couple, config.r_max) if exactness.passed else []
        checks = totss_checks(instance, config.r_max) if args.verify == "all" else {}
        payload = with_digest({"input": instance.name, "exactness": exactness.to_dict(),
                               "pages": [page.to_dict() for page in page_list], "checks": checks})
        artifact = _emit(config, f"{instance.name}.totss", payload, tsv=pages_table(page_list),
                         dot=_page_dot(page_list, "tot"))
        _require_passed({"exactness": exactness.to_dict(), **checks}, "totss")
        return {"command": "totss", "artifacts": [artifact], "passed": True}
    except Exception as e:
        logger.error(f"totss failed for {path}: {str(e)}")
        raise


# random -------------------------------------------------------------------------

def cmd_random(config: RunConfig, args: Namespace) -> Dict[str, Any]:
    """Seeded instance files, one per seed starting at --seed"""
    logger = LoggerFactory.get_command_logger("random", getattr(args, "correlation_id", None))
    if config.output_format != OutputFormat.JSON:
        raise SchemaViolation("random writes JSON instance files only")
    artifacts = []
    try:
        for offset in range(args.count):
            seed = (config.seed + offset) % (2 ** 64)
            instance = instance_for_seed(config, seed)
            artifacts.append(_emit(config, f"{config.kind.value}-{seed}", instance.to_dict()))
        logger.info(f"Wrote {len(artifacts)} {config.kind.value} instances", {"seed": config.seed})
        return {"command": "random", "artifacts": artifacts}
    except Exception as e:
        logger.error(f"random failed: {str(e)}")
        raise


# verify -------------------------------------------------------------------------

def cmd_verify(config: RunConfig, args: Namespace) -> Tuple[Dict[str, Any], int]:
    """Run the selected suites; exit code 0 iff every selected check passed"""
    correlation_id = getattr(args, "correlation_id", None)
    logger = LoggerFactory.get_command_logger("verify", correlation_id)
    runner = SuiteRunner(config, correlation_id)
    artifacts = []
    if getattr(args, "emit_graph", False):
        path = save_dot(runner.graph_dot(), _target_dir(config) / "suite_graph.dot")
        artifacts.append({"path": str(path), "digest": ""})
    report = runner.run()
    path = _target_dir(config) / f"verify-{config.suite}-{config.seed}.json"
    artifacts.append({"path": str(path), "digest": write_artifact(path, report)})
    if report["passed"]:
        logger.info(f"Verification passed: {', '.join(report['suites'])}")
        return {"command": "verify", "artifacts": artifacts, "passed": True}, 0
    logger.error(f"Verification failed in suite {report['first_failure']['suite']}")
    return {"command": "verify", "artifacts": artifacts, "passed": False,
            "first_failure": report["first_failure"]}, 1
