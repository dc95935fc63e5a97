"""Acceptance suite: one test per headline criterion, exact assertions only.

Each test prints a single pass/fail line so the whole battery reads as a
checklist. The same checks are available from the command line through
`quivsurf reproduce`.
"""

import functools
import random

from quivsurf.linalg import ExactMatrix, rank_rational, signature_symmetric
from quivsurf.quivers import (
    Quiver,
    chi_minus,
    chi_plus,
    dynkin_euclidean_family,
    obstruction_report,
    paths_matrix,
    reflect,
    three_vertex,
)
from quivsurf.toric import (
    blowup_p2,
    hirzebruch,
    p1xp1,
    projective_plane,
    random_blowup_surface,
)
from quivsurf.exceptional import (
    abc_of,
    line_collection,
    search_abc,
    search_kronecker,
    solve_abc,
    verify_collection,
    verify_divisor_table,
    verify_star_family,
)
from quivsurf.reproduce import (
    CLASSIFICATION_PASS_SET,
    EXPECTED_RANKS,
    FIVE_VERTEX_GRAM,
    FOUR_VERTEX_ARROWS,
    FOUR_VERTEX_COLLECTION_PIC,
    FOUR_VERTEX_MATCH,
)

from oracles import dfs_path_counts, kunneth_quadric


def criterion(number, title):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number:2d} ({title}): FAIL")
                raise
            print(f"criterion {number:2d} ({title}): PASS")

        return wrapper

    return decorate


@criterion(1, "Dynkin/Euclidean classification")
def test_dynkin_euclidean_classification():
    reports = {name: obstruction_report(q) for name, q in dynkin_euclidean_family()}
    assert len(reports) == 8 + 5 + 3 + 7 + 4 + 3

    passing = {name for name, r in reports.items() if r.passes}
    # A1, A2, A3, D4, A~1, A~2 -- plus D~4, the 4-leaf star class, which the
    # obstructions cannot exclude (rank 2, positive semidefinite chi^+) and
    # which is genuinely realisable via the star family on Bl4 of the plane.
    assert passing == set(CLASSIFICATION_PASS_SET)

    for name, expected_rank in EXPECTED_RANKS.items():
        assert reports[name].rank_chi_minus == expected_rank, name
    assert [reports[n].rank_chi_minus for n in ("E6", "E7", "E8")] == [6, 6, 8]
    assert [reports[n].rank_chi_minus for n in ("E~6", "E~7", "E~8")] == [6, 6, 8]
    assert [reports[n].rank_chi_minus for n in ("A4", "D5", "A~3")] == [4, 4, 4]


@criterion(2, "5-vertex Gram matrix")
def test_five_vertex_gram_example():
    report = obstruction_report(ExactMatrix.from_rows(FIVE_VERTEX_GRAM))
    assert report.rank_chi_minus == 2
    assert report.signature_chi_plus.n_minus >= 3
    assert report.passes_rank and not report.passes_signature


@criterion(3, "4-vertex example")
def test_four_vertex_example():
    quiver = Quiver(4, FOUR_VERTEX_ARROWS)
    assert obstruction_report(quiver).rank_chi_minus == 2

    surface = blowup_p2(2)
    coll = line_collection(
        surface, [surface.lift_pic(p) for p in FOUR_VERTEX_COLLECTION_PIC]
    )
    result = verify_collection(coll, strong=True)
    assert result.ok
    for i in range(4):
        for j in range(i, 4):
            assert result.hom[i][j][1:] == (0, 0)

    counts = dfs_path_counts(reflect(quiver, 0))
    assert counts == paths_matrix(reflect(quiver, 0)).int_rows()
    forward = result.forward_hom()
    for i in range(4):
        for j in range(i, 4):
            assert forward[i][j] == counts[FOUR_VERTEX_MATCH[i]][FOUR_VERTEX_MATCH[j]]


@criterion(4, "3-vertex divisor table, m = 1..5")
def test_divisor_table_reproduction():
    cases = verify_divisor_table(5)
    assert len(cases) == 40
    failed = [(c.row, c.m, c.failures) for c in cases if not c.ok]
    assert failed == []


@criterion(5, "isolated case (2,2,0)")
def test_isolated_case():
    surface = p1xp1()
    coll = line_collection(
        surface,
        [surface.zero_divisor(), surface.lift_pic((1, 0)), surface.lift_pic((1, 1))],
    )
    assert verify_collection(coll, strong=True).ok
    assert abc_of(coll) == (2, 2, 0)


@criterion(6, "Kronecker family")
def test_kronecker_family():
    quad = p1xp1()
    for m in range(1, 6):
        assert quad.h0_lattice_points(quad.lift_pic((1, m - 1))) == 2 * m

    f1 = blowup_p2(1)
    for n in range(1, 10):
        found = search_kronecker(f1, n, 5) or search_kronecker(quad, n, 5)
        assert found, f"no rank-one realisation of the {n}-arrow Kronecker quiver"


@criterion(7, "star family, n = 1..5")
def test_star_family():
    for n in range(1, 6):
        report = verify_star_family(n)
        assert report.ok, n
        hom = report.verify.hom
        assert all(hom[0][j] == (1, 0, 0) for j in range(1, n + 1))
        assert all(
            hom[i][j] == (0, 0, 0)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if i != j
        )


@criterion(8, "surface theorems on presets and 20 random surfaces")
def test_surface_theorems():
    surfaces = [
        projective_plane(),
        p1xp1(),
        hirzebruch(2),
        hirzebruch(3),
        blowup_p2(1),
        blowup_p2(2),
        blowup_p2(3),
    ]
    rng = random.Random(20260808)
    surfaces += [random_blowup_surface(rng) for _ in range(20)]
    assert len(surfaces) == 27
    for s in surfaces:
        gram = s.knum_gram()
        assert rank_rational(chi_minus(gram)) == 2
        assert signature_symmetric(chi_plus(gram)) == (s.picard_rank, 2, 0)
        basis = s.knum_basis()
        for x in basis:
            y = s.serre_twist(x) - x
            y = s.serre_twist(y) - y
            y = s.serre_twist(y) - y
            assert y.is_zero
        for x in basis:
            for y in basis:
                assert s.euler_pairing(x, y) == s.euler_pairing(y, s.serre_twist(x))
        assert s.k_squared() + s.n_rays == 12


@criterion(9, "cohomology oracle on the quadric")
def test_kunneth_oracle():
    quad = p1xp1()
    cases = 0
    for a in range(-4, 5):
        for b in range(-4, 5):
            assert tuple(quad.cohomology(quad.lift_pic((a, b)))) == kunneth_quadric(a, b)
            cases += 1
    assert cases == 81


@criterion(10, "constraint solver and search consistency")
def test_solver_and_search_consistency():
    solutions = solve_abc(10)
    families = set()
    for n in range(11):
        families |= {(0, n, n), (n, 0, n), (1, n, 1), (n, 1, 1)}
    families.add((2, 2, 0))
    families = {t for t in families if all(0 <= x <= 10 for x in t)}
    assert set(solutions) == families
    assert solutions == sorted(solutions)

    searches = [
        (blowup_p2(3), (1, 3, 1), 2),
        (p1xp1(), (2, 2, 0), 2),
        (p1xp1(), (0, 2, 2), 2),
    ]
    for surface, (a, b, c), bound in searches:
        outcome = search_abc(surface, a, b, c, bound=bound)
        assert outcome.pairs, (a, b, c)
        for d_pic, e_pic in outcome.pairs:
            coll = line_collection(
                surface,
                [
                    surface.zero_divisor(),
                    surface.lift_pic(d_pic),
                    surface.lift_pic(e_pic),
                ],
            )
            got = abc_of(coll)
            assert got == (a, b, c)
            assert got[0] + got[1] == got[0] * got[1] + got[2]
            assert obstruction_report(three_vertex(*got)).passes
