import json
import math

import pytest

from voronoi_game.diagram import Board, grid_points
from voronoi_game.errors import CoincidentSites, OutsideBoard
from voronoi_game.formulas import StripFrame, axis_steal_total, y_star
from voronoi_game.geometry import Point
from voronoi_game.rules import GameConfig, Winner, predict_winner, wilma_placement
from voronoi_game.search import (
    OracleConfig,
    best_response_point,
    steal_area_exact,
    steal_area_sampled,
)

UNIT = Board(1.0, 1.0)
ROW2 = (Point(0.25, 0.5), Point(0.75, 0.5))


class TestStealAreaExact:
    def test_published_two_site_point(self):
        assert steal_area_exact(ROW2, UNIT, Point(0.66825, 0.616)) == pytest.approx(
            0.2548, abs=1e-3
        )

    def test_published_four_site_point(self):
        W = grid_points(UNIT, 2, 2)
        assert steal_area_exact(W, UNIT, Point(0.5, 0.296)) == pytest.approx(0.136, abs=2e-3)

    def test_near_center_split(self):
        got = steal_area_exact([Point(0.5, 0.5)], UNIT, Point(0.5 + 1e-4, 0.5))
        assert got == pytest.approx(0.5, abs=1e-3)

    def test_errors(self):
        with pytest.raises(OutsideBoard):
            steal_area_exact(ROW2, UNIT, Point(1.5, 0.5))
        with pytest.raises(CoincidentSites):
            steal_area_exact(ROW2, UNIT, Point(0.25, 0.5))


class TestStealAreaSampled:
    def test_binomial_agreement(self):
        cfg = OracleConfig(samples=1_000_000, seed=11)
        for p in (Point(0.6, 0.6), Point(0.9, 0.1), Point(0.5, 0.52)):
            exact = steal_area_exact(ROW2, UNIT, p)
            sampled = steal_area_sampled(ROW2, UNIT, p, cfg)
            q = exact / UNIT.area
            sigma = UNIT.area * math.sqrt(q * (1 - q) / cfg.samples)
            assert abs(sampled - exact) <= 3 * sigma

    def test_corner_single_site(self):
        cfg = OracleConfig(samples=1_000_000, seed=12)
        p = Point(0.02, 0.02)
        exact = steal_area_exact([Point(0.5, 0.5)], UNIT, p)
        sampled = steal_area_sampled([Point(0.5, 0.5)], UNIT, p, cfg)
        q = exact / UNIT.area
        sigma = UNIT.area * math.sqrt(q * (1 - q) / cfg.samples)
        assert abs(sampled - exact) <= 3 * sigma

    def test_mirror_symmetry(self):
        cfg = OracleConfig(samples=1_000_000, seed=13)
        p = Point(0.6, 0.7)
        mirrored = Point(1.0 - p.x, p.y)
        a = steal_area_sampled(ROW2, UNIT, p, cfg)
        b = steal_area_sampled(ROW2, UNIT, mirrored, cfg)
        exact = steal_area_exact(ROW2, UNIT, p)
        q = exact / UNIT.area
        sigma = UNIT.area * math.sqrt(q * (1 - q) / cfg.samples)
        assert abs(a - b) <= 2 * sigma

    def test_deterministic_given_seed(self):
        cfg = OracleConfig(samples=50_000, seed=99)
        a = steal_area_sampled(ROW2, UNIT, Point(0.6, 0.6), cfg)
        b = steal_area_sampled(ROW2, UNIT, Point(0.6, 0.6), cfg)
        assert a == b

    def test_unstratified_mode(self):
        cfg = OracleConfig(samples=1_000_000, seed=14, stratified=False)
        exact = steal_area_exact(ROW2, UNIT, Point(0.6, 0.6))
        sampled = steal_area_sampled(ROW2, UNIT, Point(0.6, 0.6), cfg)
        sigma = UNIT.area * math.sqrt(exact * (1 - exact) / cfg.samples)
        assert abs(sampled - exact) <= 4 * sigma

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            OracleConfig(samples=100)

    def test_random_queries_within_3_sigma(self):
        # generic boards and site sets, not just the canonical strip
        import numpy as np

        rng = np.random.default_rng(2024)
        within = 0
        queries = 60
        for i in range(queries):
            board = Board(float(rng.uniform(0.5, 3.0)), float(rng.uniform(0.5, 3.0)))
            n = int(rng.integers(1, 7))
            sites = [
                Point(
                    board.origin.x + float(u) * board.width,
                    board.origin.y + float(v) * board.height,
                )
                for u, v in rng.uniform(0.05, 0.95, (n, 2))
            ]
            p = Point(
                board.origin.x + float(rng.uniform(0.05, 0.95)) * board.width,
                board.origin.y + float(rng.uniform(0.05, 0.95)) * board.height,
            )
            try:
                exact = steal_area_exact(sites, board, p)
            except CoincidentSites:
                continue
            cfg = OracleConfig(samples=100_000, seed=5000 + i)
            sampled = steal_area_sampled(sites, board, p, cfg)
            q = exact / board.area
            sigma = board.area * math.sqrt(max(q * (1 - q), 1e-12) / cfg.samples)
            if abs(sampled - exact) <= 3 * sigma:
                within += 1
        assert within / queries >= 0.99


class TestBestResponse:
    def test_strip_grid_matches_analytic_optimum(self):
        frame = StripFrame(r=1.5, n=3)
        result = best_response_point(frame.sites(), frame.board(), cfg=OracleConfig(seed=5))
        ys = y_star(1.5)
        # optimum sits above or below an interior site
        assert abs(result.point.x - 0.0) < 1e-3
        assert abs(abs(result.point.y) - ys) < 1e-3
        assert result.exact_area == pytest.approx(axis_steal_total(1.5, ys), abs=1e-6)
        assert set(result.cells_stolen_from) == {0, 1, 2}
        assert result.iterations > 0

    def test_never_below_analytic_seed(self):
        frame = StripFrame(r=1.45, n=4)
        result = best_response_point(frame.sites(), frame.board(), cfg=OracleConfig(seed=6))
        seed_value = axis_steal_total(1.45, y_star(1.45))
        assert result.exact_area >= seed_value - 1e-12

    def test_two_site_published_point(self):
        result = best_response_point(ROW2, UNIT, cfg=OracleConfig(seed=7))
        assert 0.2538 <= result.exact_area <= 0.2558
        images = [(0.66825, 0.616), (0.33175, 0.616), (0.66825, 0.384), (0.33175, 0.384)]
        assert min(math.hypot(result.point.x - x, result.point.y - y) for x, y in images) < 5e-3
        assert abs(result.exact_area - result.sampled_area) <= 5e-3

    def test_symmetry_invariance(self):
        # exact steal is invariant under the rectangle's symmetry group
        W = [Point(0.3, 0.4), Point(0.7, 0.8), Point(0.5, 0.2)]
        p = Point(0.55, 0.6)
        base = steal_area_exact(W, UNIT, p)

        def mx(q):
            return Point(1.0 - q.x, q.y)

        def my(q):
            return Point(q.x, 1.0 - q.y)

        def rot(q):
            return Point(1.0 - q.x, 1.0 - q.y)

        for transform in (mx, my, rot):
            got = steal_area_exact([transform(w) for w in W], UNIT, transform(p))
            assert got == pytest.approx(base, abs=1e-12)

    @pytest.mark.parametrize(
        "n,offset",
        [
            (2, -0.05),
            (2, 0.13),  # near-square board, comfortably above sqrt(3)/2
            (3, -0.05),
            (3, -0.02),
            (3, 0.02),
            (3, 0.05),
            (4, -0.02),
            (4, 0.02),
        ],
    )
    def test_gain_predicate_matches_characterization(self, n, offset):
        # Above the critical ratio the best response steals strictly more than
        # |Q| / 2n; at or below it cannot (dead band 1e-9 against float noise
        # on the attained supremum).
        from voronoi_game.formulas import critical_ratio

        rho = critical_ratio(n) + offset
        board = Board(1.0, rho)
        W = wilma_placement(GameConfig(n=n, board=board))
        result = best_response_point(W, board, cfg=OracleConfig(seed=8))
        share = board.area / (2 * n)
        barney_gains = result.exact_area > share + 1e-9
        expected = predict_winner(GameConfig(n=n, board=board)) is Winner.BARNEY
        assert barney_gains == expected

    def test_serial_parallel_identical(self):
        cfg = OracleConfig(seed=9)
        serial = best_response_point(ROW2, UNIT, cfg=cfg, workers=1)
        parallel = best_response_point(ROW2, UNIT, cfg=cfg, workers=2)
        assert json.dumps(serial.to_json()) == json.dumps(parallel.to_json())

    def test_requires_sites(self):
        with pytest.raises(ValueError):
            best_response_point([], UNIT)
