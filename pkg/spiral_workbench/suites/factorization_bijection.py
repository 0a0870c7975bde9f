from typing import Any, Dict, List, Optional

from ..combinatorics.simplex_cat import (compose, enumerate_injections, factor_through, subset_of_factorization,
                                         two_step_factorizations)
from ..manager.suite_runner import BaseSuite
from ..resource.run_config import RunConfig

MAX_GAP = 8


class FactorizationBijectionSuite(BaseSuite):
    """Two-step factorizations of an injection against subsets of its omitted entries"""

    suite_name = "factorization-bijection"
    criterion = 3
    aliases = ("lemma5.3",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Every injection of gap g has 2^g two-step factorizations, in bijection with "
                        "subsets of its omitted entries",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            for gap in self.progress(range(MAX_GAP + 1), config, "gaps"):
                injections = [theta for m in (-1, 0, 1) for theta in enumerate_injections(m, m + gap)]
                bad = []
                for theta in injections:
                    pairs = two_step_factorizations(theta)
                    subsets = set()
                    for first, second in pairs:
                        subset = subset_of_factorization(theta, first, second)
                        subsets.add(subset)
                        if compose(first, second) != theta or factor_through(theta, subset) != (first, second):
                            bad.append({"theta": theta.to_dict(), "subset": list(subset)})
                            break
                    if len(pairs) != 2 ** gap or len(subsets) != 2 ** gap:
                        bad.append({"theta": theta.to_dict(), "factorizations": len(pairs),
                                    "subsets": len(subsets)})
                self.record("factorization_count", not bad, gap=gap, injections=len(injections),
                            expected=2 ** gap, failures=bad[:1])
            self.logger.info(f"Factorization bijection checked up to gap {MAX_GAP}")
            return self.checks

        except Exception as e:
            self.logger.error(f"Factorization bijection suite failed: {str(e)}")
            raise e
