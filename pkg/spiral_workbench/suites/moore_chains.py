from itertools import chain
from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import constant_instance, corpus
from ..spectral.spiral import cycles_are_boundary_kernel, moore_chain_homotopy_check


class MooreChainsSuite(BaseSuite):
    """Homotopy of the Moore chains against the Moore chains of vertical homotopy"""

    suite_name = "moore-chains"
    criterion = 5
    aliases = ("lemma4.1",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="pi_p of the Moore chains C_n X maps isomorphically onto C_n of pi_p X",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            instances = chain([constant_instance(InstanceKind.BISIMPLICIAL, config.prime, 2)],
                              corpus(config, InstanceKind.BISIMPLICIAL, self.name))
            for instance in instances:
                report = moore_chain_homotopy_check(instance.value)
                failing = [row for row in report["rows"] if not row["passed"]]
                self.record("moore_chain_homotopy", report["passed"], instance=instance.name,
                            seed=instance.seed, levels=len(report["rows"]), failures=failing[:1])
                X = instance.value
                bad_levels = [n for n in range(1, X.N + 1) if not cycles_are_boundary_kernel(X, n)]
                self.record("moore_cycles_are_kernel_of_d0", not bad_levels, instance=instance.name,
                            seed=instance.seed, levels=bad_levels)
            self.logger.info(f"Moore chain check ran on {config.seeds} seeded instances")
            return self.checks

        except Exception as e:
            self.logger.error(f"Moore chains suite failed: {str(e)}")
            raise e
