from itertools import chain
from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import corpus, engineered_instances
from ..spectral.tot import cosimplicial_lift_check


class CosimplicialLiftsSuite(BaseSuite):
    """Survival to E_2 by explicit lifts, with obstructions for the classes that die"""

    suite_name = "cosimplicial-lifts"
    criterion = 8
    aliases = ("prop9.5",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="A class survives to E_2 iff it lifts one filtration step; d_2 of the lift "
                        "matches the Tot couple",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            engineered = engineered_instances(InstanceKind.COSIMPLICIAL, config.prime)
            with_d2 = []
            for instance in chain(engineered, corpus(config, InstanceKind.COSIMPLICIAL, self.name)):
                report = cosimplicial_lift_check(instance.value)
                classes = report["classes"]
                failing = [entry for entry in classes if not entry["passed"]]
                if any(entry["survives"] and entry["d2_by_lifting"].any() for entry in classes):
                    with_d2.append(instance.name)
                self.record("lifts_and_obstructions", report["passed"], instance=instance.name,
                            seed=instance.seed, classes=len(classes),
                            obstructed=sum(1 for entry in classes if not entry["survives"]),
                            failures=failing[:1])
            self.record("engineered_d2_found", "zigzag-d2" in with_d2,
                        instances=[name for name in with_d2 if not name.startswith("random")])
            return self.checks

        except Exception as e:
            self.logger.error(f"Cosimplicial lifts suite failed: {str(e)}")
            raise e
