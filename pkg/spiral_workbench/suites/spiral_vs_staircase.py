from typing import Any, Dict, List, Optional

import numpy as np

from ..algebra.chain_complex import change_middle_basis, lift_independence_check
from ..manager.suite_runner import BaseSuite
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import Instance, corpus
from ..spectral.simplicial_vs import BisimplicialVS
from ..spectral.spiral import (e2_matches_double_homology, fibrancy_check, spiral_tower, spiral_vs_staircase,
                               strict_cycles_agree)


class SpiralVsStaircaseSuite(BaseSuite):
    """Spiral pages against the column staircase of the double Moore complex"""

    suite_name = "spiral-vs-staircase"
    criterion = 4
    aliases = ("thm3.3",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Spiral pages equal the column-filtration staircase pages in dimension and "
                        "differential rank from E^2 on",
            correlation_id=correlation_id
        )

    @staticmethod
    def primes(config: RunConfig) -> List[int]:
        """The configured prime, plus 3 when running over F_2"""
        return [2, 3] if config.prime == 2 else [config.prime]

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            agreeing_first_pages = 0
            for prime in self.primes(config):
                for instance in corpus(config.with_overrides(prime=prime), InstanceKind.BISIMPLICIAL,
                                       f"{self.name}-p{prime}"):
                    X = instance.value
                    comparison = spiral_vs_staircase(X, config.r_max)
                    later = [m for m in comparison["mismatches"] if m["r"] >= 2]
                    agreeing_first_pages += int(comparison["first_page_agrees"])
                    self.record("pages_agree_from_e2", not later, instance=instance.name, prime=prime,
                                seed=instance.seed, failures=later[:1])

                    stabilization = comparison["stabilization"]
                    self.record("pages_stabilize", stabilization["passed"], instance=instance.name, prime=prime,
                                failures=(stabilization["failures"] + stabilization["local"]["failures"])[:1])

                    self._check_connecting_maps(X, instance, prime, config)

                    e2 = e2_matches_double_homology(X)
                    self.record("e2_is_double_homology", e2["passed"], instance=instance.name, prime=prime,
                                failures=e2["mismatches"][:1])

                    fibrancy = fibrancy_check(X)
                    if fibrancy.strict_fibrations:
                        strict = strict_cycles_agree(X, fibrancy=fibrancy)
                        failing = [row for row in strict["rows"] if not row["passed"]]
                        self.record("strict_cycles_match_tower", strict["passed"], instance=instance.name,
                                    prime=prime, failures=failing[:1])
            self.logger.info(f"First pages agreed on {agreeing_first_pages} instances")
            return self.checks

        except Exception as e:
            self.logger.error(f"Spiral vs staircase suite failed: {str(e)}")
            raise e

    def _check_connecting_maps(self, X: BisimplicialVS, instance: Instance, prime: int, config: RunConfig) -> None:
        """Connecting maps of the tower stages do not depend on the lift, in a random middle basis too"""
        rng = np.random.default_rng(instance.seed)
        tower = spiral_tower(X, config.r_max)
        failures = []
        for n in range(1, tower.top + 1):
            twisted = change_middle_basis(tower.sequences[n], rng)
            twisted.check()
            report = lift_independence_check(twisted, rng)
            failures += [{"stage": n, **row} for row in report["rows"] if not row["passed"]]
        self.record("connecting_map_lift_independent", not failures, instance=instance.name, prime=prime,
                    failures=failures[:1])
