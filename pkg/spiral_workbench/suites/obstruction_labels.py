from collections import Counter
from math import factorial
from typing import Any, Dict, List, Optional

from ..combinatorics.permutahedron import dual_witness_complex, face_lattice, gluing_count, label_obstruction_boundary
from ..combinatorics.simplex_cat import ordered_partitions
from ..manager.suite_runner import BaseSuite
from ..resource.run_config import RunConfig

# edge labels of the hexagon at r = 2
HEXAGON_LABELS = {"coherence": 1, "zero": 3, "choice": 2}
NEW_AT_THREE = [[0, 1, 2], [0, 1, 3]]


class ObstructionLabelsSuite(BaseSuite):
    """Facet labels of the boundary permutahedron that carries d^r"""

    suite_name = "obstruction-labels"
    criterion = 9

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Boundary facets are labelled coherence, zero or choice; exactly two choices "
                        "are new at r = 3",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            hexagon = label_obstruction_boundary(2, 2)
            counts = dict(Counter(entry["label"] for entry in hexagon))
            self.record("hexagon_labels", counts == HEXAGON_LABELS, counts=counts)

            for r in (2, 3, 4):
                labels = label_obstruction_boundary(r + 1, r)
                facets = {entry["facet"] for entry in labels}
                self.record("one_label_per_facet", len(facets) == len(labels) == len(ordered_partitions(r + 1, 2)),
                            r=r, facets=len(facets))
                new = sorted(entry["right"] for entry in labels if entry["new"])
                if r == 3:
                    self.record("new_choices_at_three", new == NEW_AT_THREE, new=new)
                stages = sorted({entry["stage"] for entry in labels if entry["stage"] is not None})
                self.record("choice_stages_below_r", stages == list(range(1, r)), r=r, stages=stages)

            for r in (2, 3):
                witness = dual_witness_complex(r)
                f_vector = face_lattice(r).f_vector()
                top = len(witness.cells.get(witness.dimension, []))
                gluings = gluing_count(witness)
                self.record("dual_witness_counts", top == factorial(r + 1) == f_vector[0] and gluings == f_vector[1],
                            r=r, top_cells=top, gluings=gluings)
            return self.checks

        except Exception as e:
            self.logger.error(f"Obstruction labels suite failed: {str(e)}")
            raise e
