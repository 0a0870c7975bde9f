from itertools import chain
from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import (constant_instance, corpus, diagonal_realization, engineered_instances,
                               single_entry_instance)
from ..spectral.spiral import abutment_check
from ..spectral.tot import tot_abutment_check

# random bicomplexes inside columns <= 2 and rows <= 1 reach total degree 3,
# so their diagonal realizations stay at level 4
DIAGONAL_MAX_N = 2
DIAGONAL_MAX_Q = 1
SINGLE_ENTRIES = ((2, 1), (1, 2), (1, 1))


class AbutmentSuite(BaseSuite):
    """E^infinity against what the spectral sequences converge to"""

    suite_name = "abutment"
    criterion = 7

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Total dimension of E^infinity in each degree equals the homotopy of the diagonal "
                        "and of Tot",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            self._spiral_against_the_diagonal(config)
            self._spiral_against_tot_homology(config)
            self._tot(config)
            return self.checks

        except Exception as e:
            self.logger.error(f"Abutment suite failed: {str(e)}")
            raise e

    def _spiral_against_the_diagonal(self, config: RunConfig) -> None:
        """Every degree compared with pi_t(diag X) on a square realization"""
        kind = InstanceKind.BISIMPLICIAL
        small = config.with_overrides(max_n=min(config.max_n, DIAGONAL_MAX_N),
                                      max_q=min(config.max_q, DIAGONAL_MAX_Q))
        instances = chain([constant_instance(kind, config.prime)],
                          engineered_instances(kind, config.prime),
                          (single_entry_instance(kind, n, q, config.prime) for n, q in SINGLE_ENTRIES),
                          corpus(small, kind, f"{self.name}-diagonal"))
        for instance in instances:
            report = abutment_check(instance.value, extended=diagonal_realization(instance.bicomplex))
            failing = [row for row in report["rows"] if not row["passed"]]
            self.record("spiral_abutment", report["passed"] and report["diagonal_covers_support"],
                        instance=instance.name, seed=instance.seed, diagonal_top=report["diagonal_top"],
                        covered=report["diagonal_covers_support"], failures=failing[:1])

    def _spiral_against_tot_homology(self, config: RunConfig) -> None:
        """The full corpus bounds; the diagonal is compared below min(N, Q) only"""
        for instance in corpus(config, InstanceKind.BISIMPLICIAL, f"{self.name}-spiral"):
            report = abutment_check(instance.value)
            failing = [row for row in report["rows"] if not row["passed"]]
            self.record("spiral_abutment_total_homology", report["passed"], instance=instance.name,
                        seed=instance.seed, failures=failing[:1])

    def _tot(self, config: RunConfig) -> None:
        tot_instances = chain([constant_instance(InstanceKind.COSIMPLICIAL, config.prime)],
                              engineered_instances(InstanceKind.COSIMPLICIAL, config.prime),
                              corpus(config, InstanceKind.COSIMPLICIAL, f"{self.name}-tot"))
        for instance in tot_instances:
            report = tot_abutment_check(instance.value)
            failing = [row for row in report["rows"] if not row["passed"]]
            self.record("tot_abutment", report["passed"], instance=instance.name, seed=instance.seed,
                        failures=failing[:1])
