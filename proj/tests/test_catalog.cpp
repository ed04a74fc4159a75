#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracsym/catalog.hpp"
#include "diracsym/spinor_matrix.hpp"

#include <cmath>
#include <random>

using namespace diracsym;

namespace {

SpinorMatrix alpha_dot_num(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.alpha[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

SpinorMatrix sigma_dot_num(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.sigma[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

Vec3 random_vec(std::mt19937_64& rng, double scale) {
    auto u = [&] { return scale * (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0); };
    return {u(), u(), u()};
}

const std::array<Rational, 3> kEz{Rational(0), Rational(0), Rational(1)};

}  // namespace

TEST_CASE("candidate matrices take the catalog forms") {
    const auto& g = GammaBasis::dirac();

    CHECK(build_candidate(CouplingKind::Scalar).matrix.equals_exact(g.beta));
    CHECK(build_candidate(CouplingKind::Pseudoscalar)
              .matrix.equals_exact((g.beta * g.gamma5).scaled(ExactComplex::unit_i())));
    CHECK(build_candidate(CouplingKind::Tensor, kEz)
              .matrix.equals_exact((g.beta * g.alpha[2]).scaled(ExactComplex::unit_i())));

    const std::array<Rational, 3> tilted{Rational(3, 5), Rational(4, 5), Rational(0)};
    const SpinorMatrix expected = g.alpha[0].scaled(ExactComplex(Rational(3, 5))) +
                                  g.alpha[1].scaled(ExactComplex(Rational(4, 5)));
    CHECK(build_candidate(CouplingKind::SpaceVector, tilted).matrix.equals_exact(expected));
}

TEST_CASE("axis validation") {
    CHECK_THROWS_AS(build_candidate(CouplingKind::SpaceVector), std::invalid_argument);
    CHECK_THROWS_AS(build_candidate(CouplingKind::Scalar, kEz), std::invalid_argument);
    const std::array<Rational, 3> long_axis{Rational(1), Rational(1), Rational(0)};
    CHECK_THROWS_AS(build_candidate(CouplingKind::Tensor, long_axis), std::invalid_argument);
    CHECK_THROWS_AS(build_candidate(CouplingKind::Tensor, Vec3{0.0, 0.0, 1.1}),
                    std::invalid_argument);
    CHECK_NOTHROW(build_candidate(CouplingKind::Tensor, Vec3{0.0, 1.0 / std::sqrt(2.0),
                                                             1.0 / std::sqrt(2.0)}));
}

TEST_CASE("all catalog kinds square to the identity exactly") {
    const std::array<Rational, 3> tilted{Rational(3, 5), Rational(0), Rational(4, 5)};
    for (const CouplingCandidate& c :
         {build_candidate(CouplingKind::Scalar), build_candidate(CouplingKind::Pseudoscalar),
          build_candidate(CouplingKind::SpaceVector, tilted),
          build_candidate(CouplingKind::Tensor, tilted)}) {
        CHECK((c.matrix * c.matrix).is_identity());
        CHECK(c.matrix.is_hermitian());
    }
}

TEST_CASE("classification of the strong candidates") {
    for (CouplingKind kind : {CouplingKind::Scalar, CouplingKind::Pseudoscalar}) {
        const auto report = classify(build_candidate(kind));
        CHECK(report.squares_to_identity);
        CHECK(report.strong_anticommute);
        CHECK(report.momentum_constraint == MomentumConstraint::None);
        CHECK(report.epsilon_constraint == EpsilonConstraint::Free);
        CHECK(report.group == SymmetryGroup::SU2);
        CHECK(report.dimensionality == Dimensionality::ThreeD);
    }

    const auto& g = GammaBasis::dirac();
    for (CouplingKind kind : {CouplingKind::Scalar, CouplingKind::Pseudoscalar}) {
        const SpinorMatrix O = build_candidate(kind).matrix;
        for (int i = 0; i < 3; ++i) {
            CHECK(anticommutator(g.alpha[i], O).is_zero());
            CHECK(commutator(O, g.sigma[i]).is_zero());
        }
    }
}

TEST_CASE("classification of the weak candidates") {
    const auto sv = classify(build_candidate(CouplingKind::SpaceVector, kEz));
    CHECK(sv.squares_to_identity);
    CHECK_FALSE(sv.strong_anticommute);
    CHECK(sv.momentum_constraint == MomentumConstraint::PerpendicularToAxis);
    CHECK(sv.epsilon_constraint == EpsilonConstraint::ParallelToAxis);
    CHECK(sv.group == SymmetryGroup::U1);
    CHECK(sv.dimensionality == Dimensionality::TwoDPlanePerpAxis);
    REQUIRE(sv.axis.has_value());
    CHECK((*sv.axis)[2] == 1.0);

    const auto tz = classify(build_candidate(CouplingKind::Tensor, kEz));
    CHECK_FALSE(tz.strong_anticommute);
    CHECK(tz.momentum_constraint == MomentumConstraint::ParallelToAxis);
    CHECK(tz.epsilon_constraint == EpsilonConstraint::ParallelToAxis);
    CHECK(tz.group == SymmetryGroup::U1);
    CHECK(tz.dimensionality == Dimensionality::OneDAlongAxis);
}

TEST_CASE("numeric axes classify like exact ones") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto tensor = classify(build_candidate(CouplingKind::Tensor, Vec3{0.0, r, r}));
    CHECK(tensor.momentum_constraint == MomentumConstraint::ParallelToAxis);
    CHECK(tensor.dimensionality == Dimensionality::OneDAlongAxis);
    const auto sv = classify(build_candidate(CouplingKind::SpaceVector, Vec3{r, 0.0, r}));
    CHECK(sv.momentum_constraint == MomentumConstraint::PerpendicularToAxis);
    CHECK(sv.group == SymmetryGroup::U1);
}

TEST_CASE("classify is consistent under coordinate-axis rotations") {
    const std::array<std::array<Rational, 3>, 4> axes{{{Rational(1), Rational(0), Rational(0)},
                                                       {Rational(0), Rational(1), Rational(0)},
                                                       {Rational(0), Rational(0), Rational(1)},
                                                       {Rational(0), Rational(-1), Rational(0)}}};
    for (CouplingKind kind : {CouplingKind::SpaceVector, CouplingKind::Tensor}) {
        const auto base = classify(build_candidate(kind, axes[2]));
        for (const auto& axis : axes) {
            const auto rotated = classify(build_candidate(kind, axis));
            CHECK(rotated.momentum_constraint == base.momentum_constraint);
            CHECK(rotated.epsilon_constraint == base.epsilon_constraint);
            CHECK(rotated.group == base.group);
            CHECK(rotated.dimensionality == base.dimensionality);
        }
    }
}

TEST_CASE("space-vector weak condition: projector intertwining on the constrained plane") {
    const auto cand = build_candidate(CouplingKind::SpaceVector, kEz);
    const SpinorMatrix O = cand.matrix.to_numeric();
    const SpinorMatrix id = SpinorMatrix::identity(Mode::numeric);
    const SpinorMatrix Pp = (id + O).scaled(std::complex<double>(0.5));
    const SpinorMatrix Pm = (id - O).scaled(std::complex<double>(0.5));

    std::mt19937_64 rng(2024);
    for (int k = 0; k < 10; ++k) {
        Vec3 p = random_vec(rng, 3.0);
        p[2] = 0.0;  // lambda.p = 0
        const SpinorMatrix ap = alpha_dot_num(p);
        CHECK((Pp * ap - ap * Pm).is_zero(1e-13));
        CHECK((Pm * ap - ap * Pp).is_zero(1e-13));
    }

    // Violation grows linearly with lambda.p.
    const Vec3 p0{0.7, -0.4, 1.0};
    double prev = 0.0;
    for (int scale = 1; scale <= 3; ++scale) {
        Vec3 p = p0;
        p[2] = 0.3 * scale;
        const SpinorMatrix ap = alpha_dot_num(p);
        const double res = (Pp * ap - ap * Pm).max_abs();
        CHECK(res > 0.0);
        if (scale > 1) CHECK(res / prev == doctest::Approx(static_cast<double>(scale) / (scale - 1)));
        prev = res;
    }
}

TEST_CASE("tensor weak condition and the beta-commutator identity") {
    const auto cand = build_candidate(CouplingKind::Tensor, kEz);
    const SpinorMatrix O = cand.matrix.to_numeric();

    for (double kz : {0.5, -2.0, 11.0}) {
        const SpinorMatrix ap = alpha_dot_num({0.0, 0.0, kz});
        CHECK(anticommutator(O, ap).is_zero(1e-13));
    }

    // {beta lambda.alpha, alpha.p} = 2i beta (lambda x p).Sigma, entrywise.
    const auto& g = GammaBasis::dirac();
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        const Vec3 lambda =
            k % 2 == 0 ? Vec3{0.0, 0.0, 1.0} : scaled(random_vec(rng, 1.0), 1.0);
        const Vec3 p = random_vec(rng, 5.0);
        const SpinorMatrix lhs =
            anticommutator(g.beta.to_numeric() * alpha_dot_num(lambda), alpha_dot_num(p));
        const SpinorMatrix rhs =
            (g.beta.to_numeric() * sigma_dot_num(cross(lambda, p)))
                .scaled(std::complex<double>(0.0, 2.0));
        CHECK((lhs - rhs).is_zero(1e-13));
    }
}

TEST_CASE("epsilon constraint residuals") {
    const auto tz = build_candidate(CouplingKind::Tensor, kEz);
    CHECK(epsilon_constraint_check(tz, {0.0, 0.0, 1.0}).is_zero(1e-14));
    CHECK_FALSE(epsilon_constraint_check(tz, {1.0, 0.0, 0.0}).is_zero(1e-3));

    const auto sv = build_candidate(CouplingKind::SpaceVector, kEz);
    const auto& g = GammaBasis::dirac();
    const SpinorMatrix expected = g.alpha[1].to_numeric().scaled(std::complex<double>(0.0, 2.0));
    CHECK((epsilon_constraint_check(sv, {1.0, 0.0, 0.0}) - expected).is_zero(1e-14));

    const auto scalar = build_candidate(CouplingKind::Scalar);
    std::mt19937_64 rng(55);
    for (int k = 0; k < 5; ++k)
        CHECK(epsilon_constraint_check(scalar, random_vec(rng, 2.0)).is_zero(1e-14));
}

TEST_CASE("user matrix hook reports raw failures with a certificate") {
    const auto& g = GammaBasis::dirac();

    const auto good = check_conditions(g.beta);
    CHECK(good.hermitian);
    CHECK(good.squares_to_identity);
    for (int i = 0; i < 3; ++i) {
        CHECK(good.anticommutes_alpha[i]);
        CHECK(good.commutes_sigma[i]);
    }
    CHECK(good.first_failure.empty());

    // beta + alpha_1 squares to 2I, so the involution condition fails.
    const auto bad = check_conditions(g.beta + g.alpha[0]);
    CHECK_FALSE(bad.squares_to_identity);
    CHECK(bad.first_failure.find("O^2 = I") != std::string::npos);

    // gamma5 anticommutes with nothing in the alpha triple but is involutive.
    const auto g5 = check_conditions(g.gamma5);
    CHECK(g5.squares_to_identity);
    for (int i = 0; i < 3; ++i) CHECK_FALSE(g5.anticommutes_alpha[i]);
}

TEST_CASE("classify rejects non-involutive matrices with the failing entry") {
    const auto& g = GammaBasis::dirac();
    CouplingCandidate fake{CouplingKind::Scalar, std::nullopt, g.beta + g.alpha[0]};
    CHECK_THROWS_AS(classify(fake), CandidateRejected);
    try {
        classify(fake);
    } catch (const CandidateRejected& e) {
        CHECK(e.row() == 0);
        CHECK(e.entry() == "2/1+0/1*i");
    }
}
