from itertools import chain
from typing import Any, Dict, List, Optional

from ..manager.suite_runner import BaseSuite
from ..resource.errors import ClassDoesNotSurvive
from ..resource.run_config import InstanceKind, RunConfig
from ..spectral.corpus import Instance, corpus, engineered_instances
from ..spectral.spiral import lifting_differential, spiral_pages, spiral_tower

LIFT_PAGES = (2, 3)


class LiftingSuite(BaseSuite):
    """Differentials by iterated lifting against the derived couple"""

    suite_name = "lifting"
    criterion = 6
    aliases = ("con4.2",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="d^2 and d^3 computed by lifting representatives agree with the exact couple "
                        "on every surviving class",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            nonzero = {r: [] for r in LIFT_PAGES}
            engineered = engineered_instances(InstanceKind.BISIMPLICIAL, config.prime)
            for instance in chain(engineered, corpus(config, InstanceKind.BISIMPLICIAL, self.name)):
                for r in self._check_instance(instance):
                    nonzero[r].append(instance.name)

            for instance in engineered:
                for r in LIFT_PAGES:
                    if instance.expect.get(f"d{r}_nonzero"):
                        self.record("engineered_differential_nonzero", instance.name in nonzero[r],
                                    instance=instance.name, r=r)
            self.record("engineered_coverage",
                        sum(1 for i in engineered if i.name in nonzero[2]) >= 3
                        and sum(1 for i in engineered if i.name in nonzero[3]) >= 1,
                        nonzero_d2=[name for name in nonzero[2] if not name.startswith("random")],
                        nonzero_d3=[name for name in nonzero[3] if not name.startswith("random")])
            return self.checks

        except Exception as e:
            self.logger.error(f"Lifting suite failed: {str(e)}")
            raise e

    def _check_instance(self, instance: Instance) -> List[int]:
        """Compare every surviving basis class on pages 2 and 3; returns the pages with a nonzero differential"""
        X = instance.value
        top = max(LIFT_PAGES)
        tower = spiral_tower(X, top)
        page_list = spiral_pages(X, top)
        failures, compared, nonzero = [], 0, []
        for r in LIFT_PAGES:
            page = page_list[r - 1]
            for n, p in page.support():
                reps = page.reps[(n, p)]
                for k in range(reps.shape[1]):
                    try:
                        result = lifting_differential(X, n, p, r, reps[:, [k]], tower, page_list)
                    except ClassDoesNotSurvive as e:
                        failures.append({"r": r, "node": [n, p], "class": k, "dies_at": e.page})
                        continue
                    compared += 1
                    if not result.agrees:
                        failures.append(result.to_dict())
                    elif not result.is_zero and r not in nonzero:
                        nonzero.append(r)
        self.record("lifting_matches_couple", not failures, instance=instance.name, seed=instance.seed,
                    classes=compared, failures=failures[:1])
        return nonzero
