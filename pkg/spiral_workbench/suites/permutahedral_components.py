from math import comb
from typing import Any, Dict, List, Optional

from ..combinatorics.permutahedron import (boundary_coequalizer_check, face_lattice, facet_census,
                                           order_complex)
from ..combinatorics.simplex_cat import ordered_partitions
from ..manager.suite_runner import BaseSuite
from ..resource.run_config import RunConfig
from ..simplicial.dk_resolution import boundary_of_component, components_by_arrow, delta_op_category, iso_check
from ..simplicial.sset import (cofibration_sequence_check, components, euler_characteristic, is_acyclic, is_sphere,
                               opposite)

# components small enough for the isomorphism search
ISO_GAP = 3
COEQUALIZER_N = 3


class PermutahedralComponentsSuite(BaseSuite):
    """Mapping spaces of the resolution of the restricted simplex category as permutahedra"""

    suite_name = "permutahedral-components"
    criterion = 2
    aliases = ("prop5.4",)

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(
            name=self.suite_name,
            description="Components of the resolved mapping spaces are contractible triangulated "
                        "permutahedra whose boundaries are spheres",
            correlation_id=correlation_id
        )

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        try:
            self._small_pictures()
            for gap in self.progress(range(1, config.max_gap + 1), config, "gaps"):
                self._check_gap(gap, config)
            self._check_lattices(config)
            return self.checks

        except Exception as e:
            self.logger.error(f"Permutahedral components suite failed: {str(e)}")
            raise e

    def _small_pictures(self) -> None:
        """Gap 1 is discrete, gap 2 components are subdivided intervals, gap 3 subdivided hexagons"""
        m = 2
        space = components_by_arrow(delta_op_category(m - 1, m), m, m - 1)
        counts = sorted(tuple(component.counts()) for component in space.values())
        self.record("gap_1_discrete", counts == [(1,)] * (m + 1), counts=counts)

        space = components_by_arrow(delta_op_category(m - 2, m), m, m - 2)
        counts = sorted(tuple(component.counts()) for component in space.values())
        self.record("gap_2_intervals", counts == [(3, 2)] * len(space), counts=counts)

        space = components_by_arrow(delta_op_category(0, 3), 3, 0)
        hexagons = [(tuple(c.counts()), euler_characteristic(c)) for c in space.values()]
        self.record("gap_3_hexagons", all(h == ((13, 24, 12), 1) for h in hexagons), found=hexagons)

    def _check_gap(self, gap: int, config: RunConfig) -> None:
        m = 0
        j = m + gap
        C = delta_op_category(m, j)
        by_arrow = components_by_arrow(C, j, m)
        expected = comb(j + 1, m + 1)
        union_components = sum(len(components(X)) for X in by_arrow.values())
        self.record("component_count", len(by_arrow) == expected and union_components == expected,
                    gap=gap, expected=expected, found=len(by_arrow))

        model = order_complex(gap - 1)
        failures = []
        for arrow, component in by_arrow.items():
            if component.counts() != model.counts():
                failures.append({"arrow": arrow, "reason": "counts", "counts": list(component.counts()),
                                 "expected": list(model.counts())})
            elif not is_acyclic(component):
                failures.append({"arrow": arrow, "reason": "not contractible"})
            elif gap >= 2 and not is_sphere(boundary_of_component(component), gap - 2):
                failures.append({"arrow": arrow, "reason": "boundary is not a sphere"})
        self.record("components_are_permutahedra", not failures, gap=gap, failures=failures[:1])

        if gap <= ISO_GAP:
            arrow, component = next(iter(sorted(by_arrow.items())))
            found = iso_check(component, model, cap=config.iso_cap) is not None
            self.record("component_isomorphic_to_order_complex", found, gap=gap, arrow=arrow)
            flipped = opposite(component)
            self.record("opposite_face_convention", is_acyclic(flipped) and flipped.counts() == component.counts(),
                        gap=gap, arrow=arrow,
                        isomorphic=iso_check(component, flipped, cap=config.iso_cap) is not None)

    def _check_lattices(self, config: RunConfig) -> None:
        for n in range(1, config.max_gap):
            lattice = face_lattice(n)
            expected = tuple(len(ordered_partitions(n + 1, n + 1 - k)) for k in range(n + 1))
            self.record("cell_census", lattice.f_vector() == expected, n=n,
                        f_vector=list(lattice.f_vector()), expected=list(expected))
            census = facet_census(n)
            expected_facets = {f"{a},{n + 1 - a}": comb(n + 1, a) for a in range(1, n + 1)}
            self.record("facet_census", census == expected_facets, n=n, census=census)
        for n in range(1, min(COEQUALIZER_N, config.max_gap - 1) + 1):
            report = boundary_coequalizer_check(n)
            self.record("boundary_coequalizer", report["passed"], report=report)
        for n in (2, 3):
            report = cofibration_sequence_check(n)
            self.record("cone_over_boundary", report["passed"], report=report)
