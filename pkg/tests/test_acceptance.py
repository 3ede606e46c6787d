"""Acceptance gate: one criterion per test, one PASS/FAIL line each.

Run `pytest -s tests/test_acceptance.py` to see the lines; each criterion
also enforces its wall-clock budget, so a pass here means both the math and
the performance envelope hold.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager

from click.testing import CliRunner

import mbs
from mbs.cli import main as cli_main
from mbs.document import parse, parse_one, serialize
from mbs.homology import FgAbelianGroup, IntegerMatrix, smith_normal_form

from oracle import (
    cw_h1,
    implant_contractible_annulus,
    minors_gcd_ladder,
    perturb_one_degree,
    random_surface,
    relabel_reorient,
)


@contextmanager
def criterion(num: int, budget: float, desc: str):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\ncriterion {num:02d} [{desc}]: FAIL")
        raise
    took = time.perf_counter() - t0
    if took > budget:
        print(f"\ncriterion {num:02d} [{desc}]: FAIL ({took:.2f}s > {budget:.0f}s budget)")
        raise AssertionError(f"criterion {num} exceeded budget: {took:.2f}s > {budget}s")
    print(f"\ncriterion {num:02d} [{desc}]: PASS ({took:.2f}s)")


def test_criterion_01_one_sector_h1_formula():
    with criterion(1, 1.0, "one-sector H1 closed form"):
        for g in (0, 1, 2):
            for n in (1, 2, 3, 4):
                for degs in itertools.product((1, 2, 3, 4, 5), repeat=n):
                    x = mbs.one_sector(g, list(degs))
                    expected = FgAbelianGroup.from_factors(
                        [math.gcd(*degs)], 2 * g + n - 1
                    )
                    assert mbs.h1(x) == expected, (g, degs)


def test_criterion_02_pants_homology():
    with criterion(2, 1.0, "pants example torsion and free rank"):
        x = mbs.pants_example()
        g = mbs.h1(x)
        assert list(g.invariant_factors) == [3]
        torsion, free = cw_h1(x)
        assert torsion == [3]
        # A free rank of 4 is quoted in some accounts of this example.  The
        # relation-matrix computation and the independent chain-complex
        # oracle both give 5 (spine rank 6 minus matrix rank 1), so 5 is the
        # value this suite pins.
        assert free == 5
        assert g.free_rank == 5
        assert g.free_rank != 4


def test_criterion_03_seifert_family():
    with criterion(3, 5.0, "seifert family torsion order and genus bound"):
        for n in (1, 2, 3, 4):
            for p in itertools.product((2, 3, 4, 5), repeat=n):
                x = mbs.seifert_example(list(p))
                g = mbs.h1(x)
                assert g.free_rank == 0
                assert g.torsion_order() == math.prod(p), p
                torsion, free = cw_h1(x)
                assert free == 0 and math.prod(torsion) == math.prod(p)
                hb = mbs.genus_upper_bound_heegaard(x)
                assert hb.bound == n, (p, hb.bound)
                assert hb.exhaustive


def test_criterion_04_obstructed_example():
    with criterion(4, 1.0, "torsion obstruction example end to end"):
        x = mbs.obstruction_example()
        assert mbs.h1(x).pretty() == "Z/4 + Z"
        assert mbs.s3_obstruction(x) is mbs.S3Verdict.OBSTRUCTED
        assert mbs.genus_upper_bound_heegaard(x).bound == 2
        assert mbs.best_genus_upper_bound(x) == 2
        res = mbs.obstruction_candidate_s3(x)
        assert res.verdict is mbs.OmegaVerdict.CANDIDATE


def test_criterion_05_boundary_surface_bookkeeping():
    with criterion(5, 60.0, "boundary surfaces over all permutation systems"):
        rng = random.Random(2026_05)
        done = 0
        while done < 200:
            x = random_surface(rng, regular=True, connected=True)
            if not x.sectors:
                continue
            done += 1
            chi2 = 2 * mbs.euler_characteristic(x)
            enum = mbs.enumerate_permutation_systems(x, cap=10_000)
            expected_circles = {
                (s.id, pos, eps)
                for s in x.sectors
                for pos in range(len(s.prebranches))
                for eps in ("+", "-")
            }
            for p in enum.systems:
                bs = mbs.boundary_surface(x, p)
                # chi additivity; genus >= 0 is exactly even chi <= 2
                assert sum(2 - 2 * g for _, g in bs.components) == chi2
                assert all(g >= 0 for _, g in bs.components)
                circles = [c for c, _, _ in bs.gluings]
                assert len(circles) == len(set(circles))
                assert set(circles) == expected_circles
                per_gap = {}
                for _, _, gap in bs.gluings:
                    per_gap[gap] = per_gap.get(gap, 0) + 1
                assert set(per_gap.values()) <= {2}


def test_criterion_06_contraction_preserves_h1():
    with criterion(6, 10.0, "annulus contraction preserves H1"):
        rng = random.Random(2026_06)
        for _ in range(100):
            base = random_surface(rng)
            x, aid = implant_contractible_annulus(rng, base)
            assert mbs.h1(mbs.contract_annulus(x, aid)) == mbs.h1(x)


def test_criterion_07_smith_normal_form_properties():
    with criterion(7, 10.0, "smith normal form on random matrices"):
        rng = random.Random(2026_07)
        for _ in range(1000):
            r = rng.randint(1, 6)
            c = rng.randint(1, 6)
            rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
            diag = smith_normal_form(IntegerMatrix.from_rows(rows))
            assert len(diag) == min(r, c)
            assert all(d >= 0 for d in diag)
            for a, b in zip(diag, diag[1:]):
                if a == 0:
                    assert b == 0
                else:
                    assert b % a == 0
            # invariance under permutations and whole-row/column sign flips
            perm_r = rng.sample(range(r), r)
            perm_c = rng.sample(range(c), c)
            row_sign = [rng.choice((1, -1)) for _ in range(r)]
            col_sign = [rng.choice((1, -1)) for _ in range(c)]
            shuffled = [
                [rows[i][j] * row_sign[i] * col_sign[j] for j in perm_c]
                for i in perm_r
            ]
            assert smith_normal_form(IntegerMatrix.from_rows(shuffled)) == diag
            # running products against the gcd-of-minors ladder
            ladder = minors_gcd_ladder(rows)
            prod = 1
            for k, d in enumerate(diag):
                prod *= d
                assert prod == ladder[k], (rows, diag, ladder)


def test_criterion_08_isomorphism_decision():
    with criterion(8, 30.0, "isomorphism under relabeling, not under perturbation"):
        rng = random.Random(2026_08)
        for _ in range(200):
            x = random_surface(rng)
            assert mbs.are_isomorphic(x, relabel_reorient(rng, x))
        for _ in range(200):
            x = random_surface(rng)
            assert not mbs.are_isomorphic(x, perturb_one_degree(rng, x))


def test_criterion_09_minor_closure():
    with criterion(9, 10.0, "minor closure, candidacy, partial order"):
        x = mbs.one_sector(0, [2, 2])
        closure = mbs.all_minors(x)
        empty = mbs.MultibranchedSurface((), (), "empty")
        assert set(closure.keys()) == {mbs.canonical_form(x), mbs.canonical_form(empty)}
        assert mbs.obstruction_candidate_s3(x).verdict is mbs.OmegaVerdict.CANDIDATE

        rng = random.Random(2026_09)
        done = 0
        while done < 20:
            y = random_surface(rng, max_branches=3, max_sectors=3, max_degree=2)
            assert mbs.is_minor(y, y)  # reflexive
            reps = list(mbs.all_minors(y, max_results=600).values())
            if len(reps) < 2:
                continue
            done += 1
            mid = reps[rng.randrange(len(reps))]
            sub = list(mbs.all_minors(mid, max_results=600).values())
            small = sub[rng.randrange(len(sub))]
            assert mbs.is_minor(mid, y)
            assert mbs.is_minor(small, mid)
            assert mbs.is_minor(small, y)  # transitive


def test_criterion_10_sector_count_bound():
    with criterion(10, 1.0, "sector-count bound and best-bound consistency"):
        fixtures = [
            mbs.pants_example(),
            mbs.obstruction_example(),
            mbs.seifert_example([2, 3, 5]),
            mbs.rose_times_circle(1),
            mbs.one_sector(2, [3, 3]),
            mbs.graph_to_mbs([("u", "v")]),
        ]
        for x in fixtures:
            sb = mbs.genus_upper_bound_sectors(x)
            assert sb == len(x.branches) + len(x.sectors)
            best = mbs.best_genus_upper_bound(x)
            assert best <= sb
            assert best <= mbs.genus_upper_bound_heegaard(x).bound


def test_criterion_11_round_trips_and_determinism():
    with criterion(11, 5.0, "document round trips and byte-stable CLI"):
        builders = [
            mbs.one_sector(2, [1, 3], signs=[1, -1]),
            mbs.seifert_example([2, 3, 5]),
            mbs.pants_example(),
            mbs.rose_times_circle(2),
            mbs.obstruction_example(),
            mbs.graph_to_mbs([("u", "v"), ("v", "w"), ("w", "u")]),
        ]
        for x in builders:
            y = parse_one(serialize(x))
            assert mbs.are_isomorphic(x, y)
            assert serialize(y) == serialize(x)

        runner = CliRunner()
        pants_doc = serialize(mbs.pants_example())
        obs_doc = serialize(mbs.obstruction_example())
        for args, data in [
            (["invariants", "-"], pants_doc),
            (["genus-bounds", "-"], obs_doc),
            (["minors", "-"], serialize(mbs.one_sector(0, [2, 2]))),
            (["export", "--json", "boundary", "-"], pants_doc),
            (["export", "--dot", "dual-graph", "-"], pants_doc),
            (["decompose", "-"], serialize(mbs.one_sector(1, [2]))),
        ]:
            first = runner.invoke(cli_main, args, input=data, catch_exceptions=False)
            second = runner.invoke(cli_main, args, input=data, catch_exceptions=False)
            assert first.exit_code == 0
            assert first.output == second.output, args
            assert first.output  # never silently empty
        listing = runner.invoke(
            cli_main, ["minors", "-"], input=serialize(mbs.one_sector(0, [2, 2]))
        )
        assert len(parse(listing.output.partition("\n")[2])) == 2
