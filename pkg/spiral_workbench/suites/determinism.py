from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.artifact_io import digest, dumps, loads
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import instance_for_seed, instance_from_dict
from ..spectral.spiral import spiral_report
from ..spectral.tot import tot_pages

SAMPLED_SEEDS = 5


class DeterminismSuite(BaseSuite):
    """Identical seeds give identical bytes"""

    suite_name = "determinism"
    criterion = 10

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Repeated generation and analysis with the same seed is byte-identical, and "
                        "instance files re-read to the same value",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            for seed in config.seed_list()[:SAMPLED_SEEDS]:
                for kind in InstanceKind:
                    seeded = config.with_overrides(kind=kind)
                    first = dumps(instance_for_seed(seeded, seed).to_dict())
                    second = dumps(instance_for_seed(seeded, seed).to_dict())
                    reread = dumps(instance_from_dict(loads(first)).to_dict())
                    self.record("instance_bytes", first == second, seed=seed, kind=kind.value,
                                digest=digest(loads(first)))
                    self.record("instance_round_trip", reread == first, seed=seed, kind=kind.value)

                instance = instance_for_seed(config.with_overrides(kind=InstanceKind.BISIMPLICIAL), seed)
                runs = [dumps(spiral_report(instance.value, config.r_max)) for _ in range(2)]
                self.record("spiral_report_bytes", runs[0] == runs[1], seed=seed)

                instance = instance_for_seed(config.with_overrides(kind=InstanceKind.COSIMPLICIAL), seed)
                runs = [dumps([page.to_dict() for page in tot_pages(instance.value, config.r_max)]) for _ in range(2)]
                self.record("tot_pages_bytes", runs[0] == runs[1], seed=seed)
            return self.checks

        except Exception as e:
            self.logger.error(f"Determinism suite failed: {str(e)}")
            raise e
