"""Helpers shared by several test modules."""

import json
import math
import pathlib

from metacover.groups import MetacyclicParams, validate_metacyclic

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def valid_params(max_order: int) -> list[MetacyclicParams]:
    """Every valid (m, k, t, r) with 1 <= k, r <= m and m*t <= max_order."""
    out = []
    for m in range(1, max_order + 1):
        for t in range(1, max_order // m + 1):
            for k in range(1, m + 1):
                for r in range(1, m + 1):
                    p = MetacyclicParams(m, k, t, r)
                    if validate_metacyclic(p).valid:
                        out.append(p)
    return out


def load_fixture(name: str):
    return json.loads((FIXTURES / name).read_text())


# -- random abelian-cover instances ------------------------------------------


def random_abelian_group(rng, max_order: int = 64):
    from metacover.abchars import FiniteAbelianGroup

    while True:
        rank = rng.randint(1, 3)
        factors = [rng.randint(2, 8) for _ in range(rank)]
        if math.prod(factors) <= max_order:
            return FiniteAbelianGroup(tuple(factors))


def random_labels(rng, group, model, count: int):
    """``count`` labels with random non-identity inertia generators and zero classes."""
    from metacover.pardini import BranchLabel

    elements = [g for g in group.elements() if any(g)]
    return [BranchLabel(model.zero(), rng.choice(elements)) for _ in range(count)]


def random_completion_instance(rng, max_order: int = 64):
    """Reduced data with a known completion.

    Pic = Z^s + torsion with D_i = m_i e_i, so L_chi = sum_i a^i_chi e_i + phi(chi)
    solves every fundamental relation for any homomorphism phi from the
    character group into the torsion part.  Returns (reduced data, expected L).
    """
    from metacover.abchars import AbChar
    from metacover.pardini import BranchLabel, PicardModel, ReducedBuildingData, a_coeff

    group = random_abelian_group(rng, max_order)
    count = rng.randint(1, 3)
    torsion = tuple(rng.randint(2, 6) for _ in range(rng.randint(0, 2)))
    model = PicardModel(count, torsion)
    raw = random_labels(rng, group, model, count)
    labels = []
    for i, lab in enumerate(raw):
        coords = [0] * model.dim
        coords[i] = lab.order(group)
        labels.append(BranchLabel(model.cls(coords), lab.g))
    # phi sends the u-th basis character to an element of order dividing n_u
    images = [
        [rng.randrange(math.gcd(n, tor)) * (tor // math.gcd(n, tor)) for tor in torsion]
        for n in group.factors
    ]

    def expected(chi):
        coords = [a_coeff(group, labels, chi, i) for i in range(count)]
        coords += [
            sum(e * images[u][v] for u, e in enumerate(chi.exponents)) for v in range(len(torsion))
        ]
        return model.cls(coords)

    generators = [AbChar(tuple(int(u == v) for v in range(group.rank))) for u in range(group.rank)]
    for _ in range(rng.randint(0, 2)):
        generators.append(AbChar(tuple(rng.randrange(n) for n in group.factors)))
    rng.shuffle(generators)
    classes = [expected(chi) for chi in generators]
    rbd = ReducedBuildingData(group, model, labels, generators, classes)
    return rbd, {chi: expected(chi) for chi in group.characters()}


# -- command-line cases: (argv, expected exit code) ---------------------------

Q8_ARGS = ["--m", "4", "--k", "2", "--t", "2", "--r", "3"]
D6_ARGS = ["--m", "6", "--k", "6", "--t", "2", "--r", "5"]


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


CLI_CASES = [
    (["group", "info", *Q8_ARGS], 0),
    (["group", "info", "--m", "5", "--k", "5", "--t", "2", "--r", "3"], 1),
    (["group", "iso", "--p1", "4,2,2,3", "--p2", "4,4,2,3"], 0),
    (["group", "iso", "--p1", "4,2,2"], 2),
    (["reps", "list", "--m", "3", "--k", "3", "--t", "2", "--r", "2"], 0),
    (["reps", "table", *Q8_ARGS], 0),
    (["reps", "table", *Q8_ARGS, "--bound", "4"], 2),
    (["orbits", "--m", "8", "--r", "3"], 0),
    (["orbits", "--m", "8", "--r", "2"], 1),
    (["decompose", *D6_ARGS], 0),
    (["corollary", *Q8_ARGS], 0),
    (["corollary", "--m", "5", "--k", "5", "--t", "4", "--r", "2"], 1),
    (["abelian", "check", fixture_path("double_line.json")], 0),
    (["abelian", "check", fixture_path("double_line_bad.json")], 1),
    (["abelian", "complete", fixture_path("z4_reduced.json")], 0),
    (["abelian", "complete", fixture_path("bidouble_reduced.json")], 0),
    (["abelian", "complete", fixture_path("z4_reduced_bad.json")], 1),
    (["abelian", "equations", fixture_path("double_line.json")], 0),
    (["abelian", "equations", fixture_path("double_line_bad.json")], 1),
    (["abelian", "canonical", fixture_path("z4_reduced.json")], 0),
    (["abelian", "canonical", fixture_path("z4_reduced_bad.json")], 1),
    (["metabelian", "check", fixture_path("metabelian_d3.json")], 0),
    (["metabelian", "check", fixture_path("metabelian_wreath.json")], 0),
    (["metabelian", "check", fixture_path("metabelian_bad.json")], 1),
    (["metabelian", "check", fixture_path("cover_d3.json")], 0),
    (["metabelian", "check", fixture_path("cover_d3_bad.json")], 1),
    (["field", "t2", "--m", "3", "--k", "3", "--r", "2", "--a", "y", "--P", "1"], 0),
    (["field", "t2", "--m", "4", "--k", "2", "--r", "3", "--a", "y*(1-y)/(1-2*y)",
      "--P", "0", "--P-w", "1", "--f", "y^2/(1-2*y)"], 0),
    (["field", "t2", "--m", "3", "--k", "3", "--r", "2", "--a", "y/(", "--P", "1"], 2),
    (["field", "dicyclic", "--n", "2", "--c", "y*(1-y)/(1-2*y)", "--d", "1", "--f", "y^2/(1-2*y)"], 0),
    (["field", "dicyclic", "--n", "2", "--c", "y", "--d", "1", "--f", "y"], 1),
    (["field", "verify", fixture_path("tower_d3.json")], 0),
    (["field", "verify", fixture_path("tower_d3_wrong.json")], 1),
    (["field", "verify", fixture_path("tower_parse_error.json")], 2),
    (["kummer", fixture_path("kummer_y.json")], 0),
    (["kummer", fixture_path("kummer_two.json")], 0),
    (["kummer", fixture_path("kummer_square.json")], 0),
    (["kummer", fixture_path("malformed.json")], 2),
    (["kummer", fixture_path("schema_bad.json")], 2),
    (["kummer", fixture_path("does_not_exist.json")], 2),
    (["abelian", "check", fixture_path("kummer_y.json")], 2),
    (["group", "info", "--m", "x"], 2),
    (["nonsense"], 2),
]
