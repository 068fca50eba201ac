import pytest

from kgrundy.constructions import (
    HypercubePattern,
    InapplicableError,
    closed_form_table,
    closed_form_value,
    cube_formula,
    cycle_witness,
    degree_upper_bound,
    gadget_L2_witness,
    grid_witness,
    hypercube_L_phases,
    hypercube_L_witness,
    independent,
    is_canonical_hypercube,
    last_step_footprints_other,
    standard_pattern,
)
from kgrundy.graph import (
    FamilySpec,
    complete,
    complete_bipartite,
    cycle,
    generate,
    hypercube,
    tree_cycle_gadget,
)
from kgrundy.sequences import GrundySequence, TieRule, Variant, greedy_extend, verify
from kgrundy.solver import SolverConfig, grundy_number


def cf(text, variant, k):
    return closed_form_value(FamilySpec.parse(text), Variant.parse(variant), k)


def test_closed_form_examples():
    assert cf("cycle:7", "total", 2).value == 7
    assert cf("kbipartite:4,3", "total", 2).value == 4
    assert cf("hypercube:4", "l", 3).value == 15
    assert cf("grid:3,4", "l", 2).value == 12
    assert cf("grid:3,4", "plain", 2).value == 11


def test_hypercube_closed_form_interval():
    c = cf("hypercube:6", "l", 2)
    assert not c.exact and (c.lower, c.upper) == (56, 60)
    assert cf("hypercube:5", "l", 4).value == 31


@pytest.mark.parametrize("text,variant,k,constraint", [
    ("cycle:5", "plain", 3, "k = 2"),
    ("complete:4", "l", 4, "k <= n - 1"),
    ("kbipartite:2,3", "l", 1, "m >= n"),
    ("kbipartite:3,2", "l", 3, "m, n >= k"),
    ("grid:5,3", "l", 2, "m <= n"),
    ("grid:1,4", "plain", 2, "m >= 2"),
    ("grid:3,3", "z", 2, "variant in {plain, l}"),
    ("hypercube:3", "plain", 1, "variant = l"),
    ("hypercube:3", "l", 4, "d >= 2 and 1 <= k <= d"),
    ("path:4", "l", 1, "family in"),
])
def test_inapplicable(text, variant, k, constraint):
    with pytest.raises(InapplicableError) as err:
        cf(text, variant, k)
    assert err.value.constraint.startswith(constraint)


def test_cube_formula_integer_arithmetic():
    assert [cube_formula(3, k) for k in (1, 2, 3)] == [6, 7, 8]
    assert cube_formula(4, 3) == 15 and cube_formula(4, 4) == 16
    assert cube_formula(40, 1) == 2**40 - 2**38


def test_closed_form_table_csv():
    rows = closed_form_table([
        (FamilySpec.parse("cycle:5"), Variant.PLAIN, 2),
        (FamilySpec.parse("cycle:5"), Variant.PLAIN, 3),
        (FamilySpec.parse("hypercube:6"), Variant.L, 2),
    ]).splitlines()
    assert rows[0] == "family,params,variant,k,value,lower,upper,source"
    assert rows[1] == "cycle,5,plain,2,4,4,4,cycle theorem"
    assert rows[2].startswith("hypercube,6,l,2,,56,60")
    assert len(rows) == 3


SOLVABLE = (
    [(f"cycle:{n}", v, 2) for n in range(3, 10) for v in "plain total z l".split()]
    + [(f"complete:{n}", v, k) for n in range(2, 7) for k in range(1, n) for v in "plain total z l".split()]
    + [(f"kbipartite:{m},{n}", v, k) for m in range(1, 6) for n in range(1, m + 1)
       for k in range(1, n + 1) for v in "plain total z l".split()]
    + [("grid:2,2", "plain", 2), ("grid:2,3", "l", 2), ("grid:3,3", "plain", 2), ("grid:3,4", "l", 2),
       ("hypercube:2", "l", 1), ("hypercube:3", "l", 2), ("hypercube:4", "l", 4)]
)


@pytest.mark.parametrize("text,variant,k", SOLVABLE)
def test_closed_forms_match_solver(text, variant, k):
    g = generate(FamilySpec.parse(text))
    assert grundy_number(g, variant, k).value == cf(text, variant, k).value


def test_cycle_witnesses():
    assert cycle_witness(5, Variant.PLAIN).order == (0, 1, 2, 3)
    assert cycle_witness(5, Variant.L).order == (0, 1, 2, 3, 4)
    assert len(cycle_witness(3, Variant.TOTAL)) == 3
    for n in range(3, 12):
        for v in Variant:
            seq = cycle_witness(n, v)
            assert verify(cycle(n), seq).valid and len(seq) == cf(f"cycle:{n}", v.value, 2).value


def test_grid_witnesses():
    assert len(grid_witness(2, 2)) == 3
    assert len(grid_witness(3, 3)) == 8
    assert len(grid_witness(2, 1)) == 1
    for m in range(2, 6):
        for n in range(1, 7):
            seq = grid_witness(m, n)
            assert len(seq) == m * n - 1
            assert verify(generate(FamilySpec.parse(f"grid:{m},{n}")), seq).valid
    with pytest.raises(ValueError):
        grid_witness(1, 3)


@pytest.mark.parametrize("h", [3, 4, 5])
def test_gadget_tightness(h):
    g = tree_cycle_gadget(h)
    seq = gadget_L2_witness(h)
    assert len(seq) == g.n == degree_upper_bound(g, Variant.L, 2)
    assert verify(g, seq).valid


def test_degree_bound_examples():
    assert degree_upper_bound(complete(6), Variant.L, 2) == 3
    assert degree_upper_bound(cycle(8), Variant.PLAIN, 2) == 7
    assert degree_upper_bound(hypercube(5), Variant.TOTAL, 3) == 30


def test_standard_pattern():
    assert standard_pattern(3) == [0b000, 0b011, 0b101, 0b110]
    assert standard_pattern(4) == [0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111]
    assert HypercubePattern.cube_distance(0b101000, 0b011111) == 2
    for d in range(3, 9):
        p = standard_pattern(d)
        assert len(p) == 2 ** (d - 1) and independent(hypercube(d), p)
        # the pattern is exactly the even-weight vertices
        assert p == [v for v in range(2**d) if v.bit_count() % 2 == 0]


def test_hypercube_witness_examples():
    assert len(hypercube_L_witness(2, 2)) == 4
    assert len(hypercube_L_witness(3, 1)) == 6
    assert len(hypercube_L_witness(4, 4)) == 16


@pytest.mark.parametrize("d", range(2, 8))
def test_hypercube_witness_lengths(d):
    g = hypercube(d)
    for k in range(1, d + 1):
        seq = hypercube_L_witness(d, k)
        assert len(seq) == cube_formula(d, k) and verify(g, seq).valid
        names = [name for name, _ in hypercube_L_phases(d, k)]
        assert names[0] == "pattern" and (names[-1] == "terminal") == (k == d)


def test_is_canonical_hypercube():
    assert is_canonical_hypercube(hypercube(4)) == 4
    assert is_canonical_hypercube(cycle(4)) is None
    assert is_canonical_hypercube(complete(3)) is None


@pytest.mark.parametrize("g", [cycle(6), cycle(7), hypercube(3), hypercube(4), complete(5),
                               complete_bipartite(3, 3)])
def test_final_vertex_footprints_another(g):
    d = g.min_degree()
    assert d == g.max_degree()
    for k in range(1, d):
        seqs = [grundy_number(g, "l", k, SolverConfig(max_vertices=32)).witness]
        seqs += [greedy_extend(g, GrundySequence(Variant.L, k, ()), r) for r in TieRule]
        if is_canonical_hypercube(g):
            seqs.append(hypercube_L_witness(d, k))
        for seq in seqs:
            assert last_step_footprints_other(g, seq)


def test_tightness_of_chains():
    for n in range(2, 7):
        for k in range(1, n):
            assert cf(f"complete:{n}", "total", k).value == cf(f"complete:{n}", "l", k).value
    for m in range(2, 7):
        for n in range(1, m + 1):
            for k in range(1, min(n, m - 1) + 1):
                t = f"kbipartite:{m},{n}"
                assert cf(t, "z", k).value == cf(t, "total", k).value
