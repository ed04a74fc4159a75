#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracsym/lapack.hpp"
#include "diracsym/oracle1d.hpp"
#include "diracsym/solver1d.hpp"

#include <algorithm>
#include <cmath>

using namespace diracsym;

namespace {

const std::array<Rational, 3> kEz{Rational(0), Rational(0), Rational(1)};

PotentialProfile constant_profile(const Grid1D& grid, ScenarioType type, double C, double f0) {
    return make_symmetric_profile(type, C,
                                  table_profile(std::vector<double>(grid.n_points, f0)));
}

double nearest(const std::vector<double>& values, double target) {
    double best = std::numeric_limits<double>::infinity(), out = 0.0;
    for (double v : values) {
        if (std::abs(v - target) < best) {
            best = std::abs(v - target);
            out = v;
        }
    }
    return out;
}

int multiplicity(const std::vector<double>& values, double target, double rel_tol) {
    int count = 0;
    for (double v : values)
        if (std::abs(v - target) <= rel_tol * std::abs(target)) ++count;
    return count;
}

}  // namespace

TEST_CASE("free massive scalar dispersion on the periodic grid") {
    const Grid1D grid(64, 10.0, Boundary::periodic, CoordLabel::z);
    // V_O = m, V_v = 0 is spin-like with C = -m and confining combination +m.
    const double m = 1.0;
    const auto profile = constant_profile(grid, ScenarioType::SpinLike, -m, m);
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Scalar), {});
    CHECK(h.hermiticity_residual < 1e-12);
    REQUIRE(h.label_operator.has_value());

    const auto spec = eigensolve(h, 0.5, 2.6);
    REQUIRE(!spec.levels.empty());
    CHECK(spec.hermiticity_residual < 1e-12);

    const double k1 = 2.0 * M_PI / grid.length;
    std::vector<double> expected;
    for (int j = 0; j * k1 < 3.0; ++j) {
        const double e = std::sqrt(j * j * k1 * k1 + m * m);
        if (e > 0.5 && e <= 2.6) {
            // j = 0 carries 2 physical states plus 2 from the annihilated
            // Nyquist mode of the trig derivative; interior j pair with -j.
            const int mult = 4;
            for (int c = 0; c < mult; ++c) expected.push_back(e);
        }
    }
    std::sort(expected.begin(), expected.end());
    REQUIRE(spec.levels.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(spec.levels[i].E == doctest::Approx(expected[i]).epsilon(1e-10));

    for (const auto& level : spec.levels) {
        CHECK(level.p_plus_weight >= 0.0);
        CHECK(level.p_plus_weight <= 1.0);
        CHECK(std::abs(level.block_label) == 1);
    }
}

TEST_CASE("free massless couplings: +-j pairs times the rank-2 projector give 4-fold levels") {
    const Grid1D grid(64, 10.0, Boundary::periodic, CoordLabel::z);
    const double k1 = 2.0 * M_PI / grid.length;

    for (CouplingKind kind : {CouplingKind::Tensor, CouplingKind::Pseudoscalar}) {
        const auto profile = constant_profile(grid, ScenarioType::SpinLike, 0.0, 0.0);
        const auto coupling = kind == CouplingKind::Tensor
                                  ? build_candidate(kind, kEz)
                                  : build_candidate(kind);
        const auto h = assemble(grid, profile, coupling, {});
        const auto spec = eigensolve(h, 0.5 * k1, 2.5 * k1, false);

        std::vector<double> values;
        for (const auto& level : spec.levels) values.push_back(level.E);
        REQUIRE(values.size() == 8);  // two levels, each 4-fold
        CHECK(multiplicity(values, k1, 1e-10) == 4);
        CHECK(multiplicity(values, 2.0 * k1, 1e-10) == 4);
    }
}

TEST_CASE("massless free spectrum is symmetric under E -> -E") {
    const Grid1D grid(64, 10.0, Boundary::periodic, CoordLabel::z);
    const auto profile = constant_profile(grid, ScenarioType::SpinLike, 0.0, 0.0);
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Pseudoscalar), {});
    const double k1 = 2.0 * M_PI / grid.length;
    const auto spec = eigensolve(h, -2.5 * k1, 2.5 * k1, false);
    std::vector<double> up, down;
    for (const auto& level : spec.levels) {
        if (level.E > 1e-9) up.push_back(level.E);
        if (level.E < -1e-9) down.push_back(-level.E);
    }
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    REQUIRE(up.size() == down.size());
    for (std::size_t i = 0; i < up.size(); ++i)
        CHECK(up[i] == doctest::Approx(down[i]).epsilon(1e-10));
}

TEST_CASE("sector decomposition agrees with the dense 4n x 4n matrix") {
    const Grid1D grid(64, 16.0, Boundary::periodic, CoordLabel::z);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto broken = make_broken_profile(base, 0.05, gauss_profile(1.0, 2.0, 1.0, grid.points()),
                                            BreakingStructure::Pseudoscalar);
    const auto h = assemble(grid, broken, build_candidate(CouplingKind::Tensor, kEz), {});
    REQUIRE(h.label_operator.has_value());
    for (const auto& block : h.sectors) CHECK(block.realified);

    auto dense = dense_matrix(h);
    const auto all = lapack::herm_eigenvalues(dense, 4 * grid.n_points);
    const auto sector = sector_eigenvalues(h, -1e9, 1e9);
    REQUIRE(static_cast<int>(sector.size()) == 4 * grid.n_points);
    double scale = std::max(std::abs(all.front()), std::abs(all.back()));
    for (std::size_t i = 0; i < sector.size(); ++i)
        CHECK(std::abs(sector[i].first - all[i]) < 1e-11 * scale);
}

TEST_CASE("quadratic spin-like tensor scenario reproduces the doubled oracle") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::z);
    const auto profile = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                                quadratic_profile(1.0, grid.points()));
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Tensor, kEz), {});
    const auto spec = eigensolve(h, 0.5, 3.5);
    const auto oracle = schrodinger_oracle(grid, profile, 0.0, 0.0, 3, 0.5, 3.5);

    std::vector<double> values;
    for (const auto& level : spec.levels) values.push_back(level.E);
    REQUIRE(values.size() == 6);

    for (int m = 0; m < 3; ++m) {
        REQUIRE(oracle.levels[m].energy.has_value());
        const double e = *oracle.levels[m].energy;
        CHECK(std::abs(values[2 * m] - e) / e < 1e-6);
        CHECK(std::abs(values[2 * m + 1] - e) / e < 1e-6);
        CHECK(multiplicity(values, e, 1e-6) == 2);
    }

    // Partner states sit in opposite label sectors and are paired to the
    // degeneracy floor.
    const auto report = pair_doublets(spec);
    CHECK(report.pairs.size() == 3);
    CHECK(report.unmatched.empty());
    const double span = values.back() - values.front();
    CHECK(report.max_splitting < 1e-9 * span);

    // The decoupled projector dominates each state.
    for (const auto& level : spec.levels) {
        CHECK(level.p_plus_weight > 0.55);
        CHECK(level.p_plus_weight < 0.85);
    }

    // Node counts follow the oracle level index.
    for (int m = 0; m < 3; ++m) {
        CHECK(spec.levels[2 * m].node_count == m);
        CHECK(spec.levels[2 * m + 1].node_count == m);
    }
}

TEST_CASE("constraint rejection is total and names the violated condition") {
    const Grid1D gz(64, 16.0, Boundary::periodic, CoordLabel::z);
    const Grid1D gx(64, 16.0, Boundary::periodic, CoordLabel::x);
    const auto pz = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                           quadratic_profile(1.0, gz.points()));

    const auto tensor = build_candidate(CouplingKind::Tensor, kEz);
    const auto sv = build_candidate(CouplingKind::SpaceVector, kEz);

    CHECK_NOTHROW(assemble(gz, pz, tensor, {}));
    CHECK_THROWS_WITH_AS(assemble(gz, pz, tensor, {0.1, 0.0}),
                         doctest::Contains("lambda x p psi = 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(assemble(gz, pz, tensor, {0.0, 0.1}),
                         doctest::Contains("lambda x p psi = 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(assemble(gx, pz, tensor, {0.0, 0.0}),
                         doctest::Contains("lambda x p psi = 0"), std::invalid_argument);

    CHECK_NOTHROW(assemble(gx, pz, sv, {0.4, 0.0}));
    CHECK_THROWS_WITH_AS(assemble(gx, pz, sv, {0.4, 0.2}),
                         doctest::Contains("lambda.p psi = 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(assemble(gz, pz, sv, {0.0, 0.0}),
                         doctest::Contains("lambda.p psi = 0"), std::invalid_argument);

    // Scalar and pseudoscalar accept any transverse momentum.
    CHECK_NOTHROW(assemble(gz, pz, build_candidate(CouplingKind::Scalar), {0.3, 0.4}));
    CHECK_NOTHROW(assemble(gz, pz, build_candidate(CouplingKind::Pseudoscalar), {0.3, 0.4}));
}

TEST_CASE("pseudoscalar breaking splits the tensor doublets linearly") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::z);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto shape = gauss_profile(1.0, 2.0, 1.0, grid.points());
    const auto scan =
        breaking_scan(grid, base, build_candidate(CouplingKind::Tensor, kEz), {}, shape,
                      BreakingStructure::Pseudoscalar, {0.0, 0.01, 0.02, 0.04}, 0.5, 3.5);

    REQUIRE(scan.rows.size() == 4);
    CHECK(scan.rows[0].max_splitting < 1e-10);
    CHECK(scan.rows[1].max_splitting > scan.rows[0].max_splitting);
    CHECK(scan.rows[2].max_splitting > scan.rows[1].max_splitting);
    CHECK(scan.rows[3].max_splitting > scan.rows[2].max_splitting);

    const double ratio = scan.rows[2].max_splitting / scan.rows[1].max_splitting;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.5);
    CHECK(scan.slope > 0.0);

    // Condition-only deviations keep the tensor sectors unitarily equivalent:
    // no splitting at any strength.
    const auto inert =
        breaking_scan(grid, base, build_candidate(CouplingKind::Tensor, kEz), {}, shape,
                      BreakingStructure::Condition, {0.0, 0.02, 0.04, 0.08}, 0.5, 3.5);
    for (const auto& row : inert.rows) CHECK(row.max_splitting < 1e-10);
}

TEST_CASE("breaking scan requires the zero-strength reference") {
    const Grid1D grid(64, 16.0, Boundary::periodic, CoordLabel::z);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto shape = gauss_profile(1.0, 2.0, 1.0, grid.points());
    CHECK_THROWS_AS(breaking_scan(grid, base, build_candidate(CouplingKind::Tensor, kEz), {},
                                  shape, BreakingStructure::Pseudoscalar, {0.01, 0.02}, 0.5, 3.5),
                    std::invalid_argument);
}

TEST_CASE("space-vector slab: gamma5 doublets degenerate under the condition, split off it") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::x);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto sv = build_candidate(CouplingKind::SpaceVector, kEz);
    const TransverseK k{0.5, 0.0};

    const auto h = assemble(grid, base, sv, k);
    REQUIRE(h.label_operator.has_value());
    const auto spec = eigensolve(h, 0.75, 3.5, false);
    REQUIRE(spec.levels.size() >= 4);
    const auto report = pair_doublets(spec);
    const double span = spec.levels.back().E - spec.levels.front().E;
    CHECK(report.max_splitting < 1e-9 * span);

    const auto shape = gauss_profile(1.0, 2.0, 1.0, grid.points());
    const auto scan = breaking_scan(grid, base, sv, k, shape, BreakingStructure::Condition,
                                    {0.0, 0.05, 0.1}, 0.75, 3.5);
    CHECK(scan.rows[0].max_splitting < 1e-10);
    CHECK(scan.rows[1].max_splitting > 1e-5);
    CHECK(scan.rows[2].max_splitting > scan.rows[1].max_splitting);
}

TEST_CASE("scalar slab with transverse momentum uses the planar-spin label") {
    const Grid1D grid(128, 20.0, Boundary::periodic, CoordLabel::z);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto h = assemble(grid, base, build_candidate(CouplingKind::Scalar), {0.6, 0.0});
    REQUIRE(h.label_operator.has_value());
    for (const auto& block : h.sectors) CHECK(block.realified);

    const auto spec = eigensolve(h, 0.8, 3.0, false);
    REQUIRE(spec.levels.size() >= 2);
    const auto report = pair_doublets(spec);
    const double span = spec.levels.back().E - spec.levels.front().E;
    CHECK(report.max_splitting < 1e-9 * std::max(span, 1.0));
}

TEST_CASE("second-order residuals with the darwin term") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::z);
    const auto profile = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                                quadratic_profile(1.0, grid.points()));
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Tensor, kEz), {});
    const auto spec = eigensolve(h, 0.5, 3.5);

    for (int i = 0; i < static_cast<int>(spec.levels.size()); ++i) {
        const auto res = residual_second_order(h, spec, i);
        REQUIRE_FALSE(res.excluded);
        CHECK(res.r_plus < 1e-8);
        CHECK(res.r_minus < 1e-6);
        CHECK(res.r_minus_no_darwin >= 10.0 * res.r_minus);
    }
}

TEST_CASE("pseudospin-like tensor scenario swaps the component roles") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::z);
    const auto profile = make_symmetric_profile(ScenarioType::PseudospinLike, 0.0,
                                                quadratic_profile(1.0, grid.points()));
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Tensor, kEz), {});
    const auto spec = eigensolve(h, 0.5, 3.5);
    const auto oracle = schrodinger_oracle(grid, profile, 0.0, 0.0, 3, 0.5, 3.5);

    // Same reduced equation as the spin-like case, but the minus projector
    // now carries the decoupled component.
    REQUIRE(spec.levels.size() == 6);
    for (int m = 0; m < 3; ++m) {
        REQUIRE(oracle.levels[m].energy.has_value());
        const double e = *oracle.levels[m].energy;
        CHECK(std::abs(spec.levels[2 * m].E - e) / e < 1e-6);
    }
    for (const auto& level : spec.levels) {
        CHECK(level.p_plus_weight < 0.45);
        CHECK(level.p_plus_weight > 0.15);
    }

    const auto report = pair_doublets(spec);
    const double span = spec.levels.back().E - spec.levels.front().E;
    CHECK(report.max_splitting < 1e-9 * span);

    for (int i = 0; i < 2; ++i) {
        const auto res = residual_second_order(h, spec, i);
        REQUIRE_FALSE(res.excluded);
        CHECK(res.r_plus < 1e-8);
        CHECK(res.r_minus < 1e-6);
        CHECK(res.r_minus_no_darwin >= 10.0 * res.r_minus);
    }
}

TEST_CASE("grid point on the E = V crossing excludes the state with its location") {
    const Grid1D grid(256, 24.0, Boundary::periodic, CoordLabel::z);
    const auto profile = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                                quadratic_profile(1.0, grid.points()));
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Tensor, kEz), {});
    const auto spec = eigensolve(h, 0.5, 1.5);
    REQUIRE(!spec.levels.empty());
    const double E = spec.levels[0].E;

    // Tamper a table copy of the confining combination so one sample sits on
    // the crossing; the residual check must refuse that state and name the
    // grid point.
    const auto q = grid.points();
    std::vector<double> f(grid.n_points);
    int j_cross = 0;
    for (int j = 0; j < grid.n_points; ++j) {
        f[j] = q[j] * q[j];
        if (std::abs(f[j] - E) < std::abs(f[j_cross] - E)) j_cross = j;
    }
    f[j_cross] = E;
    const auto tampered = make_symmetric_profile(ScenarioType::SpinLike, 0.0, table_profile(f));
    const auto h2 = assemble(grid, tampered, build_candidate(CouplingKind::Tensor, kEz), {});

    const auto res = residual_second_order(h2, spec, 0);
    CHECK(res.excluded);
    CHECK(res.crossing_q == doctest::Approx(q[j_cross]).epsilon(1e-12));
}

TEST_CASE("free case second-order residual is tiny") {
    const Grid1D grid(64, 10.0, Boundary::periodic, CoordLabel::z);
    const auto profile = constant_profile(grid, ScenarioType::SpinLike, 0.0, 0.0);
    const auto h = assemble(grid, profile, build_candidate(CouplingKind::Tensor, kEz), {});
    const auto spec = eigensolve(h, 0.4, 1.5);
    REQUIRE(!spec.levels.empty());
    const auto res = residual_second_order(h, spec, 0);
    CHECK_FALSE(res.excluded);
    CHECK(res.r_plus < 1e-10);
}

TEST_CASE("box boundary converges to the oracle under grid refinement") {
    const double L = 16.0;
    const auto tensor = build_candidate(CouplingKind::Tensor, kEz);

    // Fine-grid oracle as the reference.
    const Grid1D ref_grid(256, L, Boundary::periodic, CoordLabel::z);
    const auto ref_profile = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                                    quadratic_profile(1.0, ref_grid.points()));
    const auto oracle = schrodinger_oracle(ref_grid, ref_profile, 0.0, 0.0, 1, 0.5, 1.5);
    REQUIRE(oracle.levels[0].energy.has_value());
    const double reference = *oracle.levels[0].energy;

    double prev_err = std::numeric_limits<double>::infinity();
    for (int n : {64, 128, 256}) {
        const Grid1D grid(n, L, Boundary::box, CoordLabel::z);
        const auto profile = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                                    quadratic_profile(1.0, grid.points()));
        const auto h = assemble(grid, profile, tensor, {});
        const auto spec = eigensolve(h, 0.5, 1.5, false);
        REQUIRE(!spec.levels.empty());
        std::vector<double> values;
        for (const auto& level : spec.levels) values.push_back(level.E);
        const double err = std::abs(nearest(values, reference) - reference);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("unlabeled structure combinations fall back to one dense block") {
    const Grid1D grid(64, 16.0, Boundary::periodic, CoordLabel::x);
    const auto base = make_symmetric_profile(ScenarioType::SpinLike, 0.0,
                                             quadratic_profile(1.0, grid.points()));
    const auto broken = make_broken_profile(base, 0.1, gauss_profile(1.0, 2.0, 1.0, grid.points()),
                                            BreakingStructure::Pseudoscalar);
    const auto h = assemble(grid, broken, build_candidate(CouplingKind::SpaceVector, kEz),
                            {0.5, 0.0});
    CHECK_FALSE(h.label_operator.has_value());
    REQUIRE(h.sectors.size() == 1);
    CHECK(h.sectors[0].comps == 4);

    const auto spec = eigensolve(h, 0.75, 2.0, false);
    for (const auto& level : spec.levels) CHECK(level.block_label == 0);
    CHECK_THROWS_AS(pair_doublets(spec), std::invalid_argument);
}
