from itertools import chain
from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import engineered_instances, corpus
from ..spectral.tot import d1_check, splitting_check, tot_vs_staircase


class CosimplicialD1Suite(BaseSuite):
    """The Tot tower's first differential and pages against the row staircase"""

    suite_name = "cosimplicial-d1"
    criterion = 8
    aliases = ("con7.3-d1",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="d_1 of the Tot tower is the alternating coface sum, and Tot pages equal the "
                        "row-filtration staircase for every r >= 1",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            instances = chain(engineered_instances(InstanceKind.COSIMPLICIAL, config.prime),
                              corpus(config, InstanceKind.COSIMPLICIAL, self.name))
            for instance in instances:
                X = instance.value
                split = splitting_check(X)
                self.record("normalized_splitting", split["passed"], instance=instance.name,
                            seed=instance.seed, report=split)

                d1 = d1_check(X)
                self.record("d1_is_alternating_sum", d1["passed"], instance=instance.name,
                            seed=instance.seed, failures=d1["mismatches"][:1])

                comparison = tot_vs_staircase(X, config.r_max)
                self.record("tot_pages_match_staircase", comparison["passed"], instance=instance.name,
                            seed=instance.seed, failures=comparison["mismatches"][:1])
            return self.checks

        except Exception as e:
            self.logger.error(f"Cosimplicial d1 suite failed: {str(e)}")
            raise e
