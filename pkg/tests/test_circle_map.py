import math
import random

import pytest

from conftest import angles_close, make_toy_scene
from darksector.arcs import Arc, arc_intersection_measure
from darksector.circle_map import (
    _image_of,
    decompose,
    decomposition_report,
    escape_measure,
    image_arcs,
    is_injective,
    unlit_arcs,
)
from darksector.exact_angle import GroupElement, apply, identity, make_rational_turn
from darksector.scene import EnclosingCircle, Scene, enclosing_circle
from darksector.scenegen import random_scene
from darksector.tracer import TraceStatus, trace

TWO_PI = 2.0 * math.pi


def single_mirror_decomposition(scene, circle, seeds=512, cap=50):
    return decompose(scene, circle, seeds=seeds, eps_b=1e-10, cap=cap)


class TestDecomposeIdentityCase:
    def test_no_mirrors_gives_identity_map(self):
        scene = Scene(mirrors=(), source=(0.0, 0.0))
        circle = EnclosingCircle((0.0, 0.0), 1.0)
        d = decompose(scene, circle, seeds=64, eps_b=1e-10, cap=10)
        assert len(d.components) == 1
        c = d.components[0]
        assert c.arc.measure == TWO_PI
        assert c.itinerary == ()
        assert c.isometry == identity()
        assert c.image.measure == TWO_PI
        assert d.escape_measure == pytest.approx(TWO_PI)
        assert unlit_arcs(d) == []
        assert is_injective(d) == (True, None)

    def test_parameter_bounds(self):
        scene = Scene(mirrors=(), source=(0.0, 0.0))
        circle = EnclosingCircle((0.0, 0.0), 1.0)
        with pytest.raises(ValueError):
            decompose(scene, circle, seeds=4)
        with pytest.raises(ValueError):
            decompose(scene, circle, seeds=64, eps_b=0.0)


class TestDecomposeSingleMirror:
    def test_two_components(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        assert len(d.components) == 2
        by_itinerary = {c.itinerary: c for c in d.components}
        assert set(by_itinerary) == {(), ((1, 1),)}

        direct = by_itinerary[()]
        bounced = by_itinerary[((1, 1),)]
        # boundaries are the directions from (0,1) to the mirror tips
        assert angles_close(bounced.arc.start, 5 * math.pi / 4, 1e-8)
        assert angles_close(bounced.arc.end, 7 * math.pi / 4, 1e-8)
        assert angles_close(direct.arc.start, 7 * math.pi / 4, 1e-8)
        assert angles_close(direct.arc.end, 5 * math.pi / 4, 1e-8)
        assert direct.isometry == identity()
        assert bounced.isometry == GroupElement(-1, make_rational_turn(0, 1))
        # image of the bounced arc: negate both endpoints, reverse orientation
        assert angles_close(bounced.image.start, math.pi / 4, 1e-8)
        assert angles_close(bounced.image.end, 3 * math.pi / 4, 1e-8)

    def test_measure_nearly_full(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        # only the two endpoint-singular slivers are missing
        assert d.escape_measure >= TWO_PI - 1e-7
        assert escape_measure(d) == pytest.approx(d.escape_measure)

    def test_partition_accounting(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        covered = d.escape_measure + sum(a.measure for a in d.trapped_arcs)
        assert TWO_PI - covered <= d.params.seeds * d.params.eps_b + 1e-7

    def test_partition_accounting_toy(self, toy_scene):
        d = decompose(toy_scene, enclosing_circle(toy_scene), seeds=512, cap=500)
        covered = d.escape_measure + sum(a.measure for a in d.trapped_arcs)
        assert TWO_PI - covered <= d.params.seeds * d.params.eps_b + 1e-7

    def test_boundaries_are_singular_directions(
        self, single_mirror_scene, single_mirror_circle
    ):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        eps = d.params.eps_b
        for b in d.singular_directions:
            keys = []
            for delta in (-5 * eps, -eps, eps, 5 * eps):
                tr = trace(single_mirror_scene, (b + delta) % TWO_PI, cap=50)
                keys.append((tr.status.value, tr.itinerary))
            assert len(set(keys)) >= 2


class TestImageArcs:
    def test_rotation_shifts_endpoints(self):
        g = GroupElement(1, make_rational_turn(2, 3))
        arc = Arc(1.0, 2.0)
        img = _image_of(arc, g)
        shift = 2 * math.pi / 3
        assert angles_close(img.start, 1.0 + shift, 1e-12)
        assert angles_close(img.end, 2.0 + shift, 1e-12)

    def test_reflection_reverses_orientation(self):
        g = GroupElement(-1, make_rational_turn(0, 1))
        img = _image_of(Arc(5 * math.pi / 4, 7 * math.pi / 4), g)
        assert angles_close(img.start, math.pi / 4, 1e-12)
        assert angles_close(img.end, 3 * math.pi / 4, 1e-12)

    def test_measure_preserved(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        for c in d.components:
            assert c.image.measure == pytest.approx(c.arc.measure, abs=1e-9)

    def test_identity_images_equal_components(self):
        scene = Scene(mirrors=(), source=(0.0, 0.0))
        d = decompose(scene, EnclosingCircle((0.0, 0.0), 1.0), seeds=64, cap=10)
        assert image_arcs(d) == [c.arc for c in d.components]


class TestInjectivity:
    def test_single_mirror_not_injective(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        injective, witness = is_injective(d)
        assert not injective
        t1, t2 = witness
        assert t1 != t2
        # both launch directions exit in the same direction
        tr1 = trace(single_mirror_scene, t1, cap=50)
        tr2 = trace(single_mirror_scene, t2, cap=50)
        assert tr1.status is TraceStatus.ESCAPED
        assert tr2.status is TraceStatus.ESCAPED
        assert angles_close(tr1.exit_dir_numeric, tr2.exit_dir_numeric, 1e-9)

    def test_toy_scene_not_injective(self, toy_scene):
        d = decompose(toy_scene, enclosing_circle(toy_scene), seeds=1024, cap=200)
        injective, witness = is_injective(d)
        assert not injective
        assert witness is not None


class TestUnlitArcs:
    def test_single_mirror_unlit_arc(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        unlit = unlit_arcs(d)
        assert len(unlit) == 1
        assert angles_close(unlit[0].start, 5 * math.pi / 4, 1e-8)
        assert angles_close(unlit[0].end, 7 * math.pi / 4, 1e-8)

    def test_unlit_disjoint_from_images(self, toy_scene):
        d = decompose(toy_scene, enclosing_circle(toy_scene), seeds=1024, cap=200)
        for a in unlit_arcs(d):
            for img in image_arcs(d):
                assert arc_intersection_measure(a, img) <= 1e-12


class TestRefinement:
    def test_monotone_under_refinement(self, toy_scene):
        circle = enclosing_circle(toy_scene)
        d1 = decompose(toy_scene, circle, seeds=256, eps_b=1e-9, cap=200)
        d2 = decompose(toy_scene, circle, seeds=512, eps_b=5e-10, cap=400)
        assert d2.escape_measure >= d1.escape_measure - 256 * 1e-9

    def test_isometries_exact_group_members(self):
        from darksector.exact_angle import generate_group

        rng = random.Random(31)
        for _ in range(10):
            scene = random_scene(rng)
            circle = enclosing_circle(scene)
            d = decompose(scene, circle, seeds=128, eps_b=1e-9, cap=100)
            group = generate_group({m.angle for m in scene.mirrors}, cap=100000)
            for c in d.components:
                assert c.isometry in group.elements

    def test_trapped_arc_detected(self, parallel_scene):
        # the trapped-band edge is an accumulation point of ever-thinner
        # escape components, so a coarse eps_b keeps the refinement bounded
        circle = enclosing_circle(parallel_scene)
        d = decompose(parallel_scene, circle, seeds=256, eps_b=1e-5, cap=60)
        assert d.trapped_arcs
        trapped_measure = sum(a.measure for a in d.trapped_arcs)
        d_more = decompose(parallel_scene, circle, seeds=256, eps_b=1e-5, cap=400)
        trapped_more = sum(a.measure for a in d_more.trapped_arcs)
        assert trapped_more <= trapped_measure + 1e-9

    def test_trapped_measure_scales_inversely_with_cap(self, parallel_scene):
        # directions down a parallel channel escape after ~1/angle bounces,
        # so the unresolved trapped band shrinks like 1/cap
        circle = enclosing_circle(parallel_scene)
        trapped = []
        for cap in (25, 50, 100):
            d = decompose(parallel_scene, circle, seeds=512, eps_b=1e-5, cap=cap)
            trapped.append(sum(a.measure for a in d.trapped_arcs))
        assert trapped[0] > trapped[1] > trapped[2] > 0
        assert trapped[1] == pytest.approx(trapped[0] / 2, rel=0.1)
        assert trapped[2] == pytest.approx(trapped[1] / 2, rel=0.1)

    def test_deterministic(self, toy_scene):
        circle = enclosing_circle(toy_scene)
        a = decompose(toy_scene, circle, seeds=128, cap=100)
        b = decompose(toy_scene, circle, seeds=128, cap=100)
        assert a == b

    def test_traced_exit_directions_land_in_image_arcs(self):
        # orientation handling of image arcs, checked against actual traces
        rng = random.Random(77)
        checked = 0
        while checked < 500:
            scene = random_scene(rng)
            circle = enclosing_circle(scene)
            d = decompose(scene, circle, seeds=256, eps_b=1e-6, cap=200)
            for c in d.components:
                m = c.arc.measure
                theta = (c.arc.start + rng.uniform(0.05, 0.95) * m) % TWO_PI
                tr = trace(scene, theta, cap=200)
                if tr.status is not TraceStatus.ESCAPED or tr.itinerary != c.itinerary:
                    continue
                off = (tr.exit_dir_numeric - c.image.start) % TWO_PI
                assert off <= c.image.measure + 1e-9
                checked += 1


class TestReport:
    def test_report_shape(self, single_mirror_scene, single_mirror_circle):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        rep = decomposition_report(d)
        assert rep["params"] == {"seeds": 512, "eps_b": 1e-10, "bounce_cap": 50}
        assert len(rep["components"]) == 2
        for comp in rep["components"]:
            iso = comp["isometry"]
            assert iso["s"] in (1, -1)
            g = GroupElement(iso["s"], make_rational_turn(iso["c_num"], iso["c_den"]))
            mid = Arc(comp["arc"]["start"], comp["arc"]["end"]).midpoint
            assert Arc(comp["image"]["start"], comp["image"]["end"]).contains(
                apply(g, mid)
            )

    def test_component_isometry_preserves_distances(
        self, single_mirror_scene, single_mirror_circle
    ):
        d = single_mirror_decomposition(single_mirror_scene, single_mirror_circle)
        rng = random.Random(0)
        for c in d.components:
            m = c.arc.measure
            for _ in range(200):
                t1 = (c.arc.start + rng.uniform(0.01, 0.99) * m) % TWO_PI
                t2 = (c.arc.start + rng.uniform(0.01, 0.99) * m) % TWO_PI
                f1 = apply(c.isometry, t1)
                f2 = apply(c.isometry, t2)
                d12 = (t2 - t1) % TWO_PI
                d12 = min(d12, TWO_PI - d12)
                f12 = (f2 - f1) % TWO_PI
                f12 = min(f12, TWO_PI - f12)
                assert abs(d12 - f12) <= 1e-9
