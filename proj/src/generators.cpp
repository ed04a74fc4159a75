#include "diracsym/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace diracsym {

const char* to_string(Variant v) { return v == Variant::minus ? "minus" : "plus"; }

namespace {

SpinorMatrix alpha_dot(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.alpha[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

SpinorMatrix sigma_dot(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.sigma[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

void require_nonzero(const Vec3& p) {
    if (dot(p, p) == 0.0) throw std::domain_error("spin vector s is undefined at p = 0");
}

constexpr double kHalf = 0.5;

}  // namespace

std::pair<SpinorMatrix, SpinorMatrix> projectors(const CouplingCandidate& candidate) {
    const SpinorMatrix& O = candidate.matrix;
    const SpinorMatrix id = SpinorMatrix::identity(O.mode());
    if (!((O * O) - id).is_zero(1e-12))
        throw std::invalid_argument("projectors require an involutive coupling matrix");
    if (O.exact()) {
        const ExactComplex half(Rational(1, 2));
        return {(id + O).scaled(half), (id - O).scaled(half)};
    }
    return {(id + O).scaled(std::complex<double>(kHalf)), (id - O).scaled(std::complex<double>(kHalf))};
}

std::array<SpinorMatrix, 3> spin_vector_s(const Vec3& p) {
    require_nonzero(p);
    const auto& g = GammaBasis::dirac();
    const SpinorMatrix ap = alpha_dot(p);
    const double inv_p2 = 1.0 / dot(p, p);
    std::array<SpinorMatrix, 3> s{SpinorMatrix::zero(Mode::numeric),
                                  SpinorMatrix::zero(Mode::numeric),
                                  SpinorMatrix::zero(Mode::numeric)};
    for (int i = 0; i < 3; ++i)
        s[i] = (ap * g.sigma[i].to_numeric() * ap).scaled(std::complex<double>(inv_p2));
    return s;
}

GeneratorSet generators(const CouplingCandidate& candidate, Variant variant, const Vec3& p) {
    require_nonzero(p);
    const ConditionReport report = classify(candidate);
    if (report.group != SymmetryGroup::SU2)
        throw std::invalid_argument(
            "full SU(2) generator set only exists for strong candidates; "
            "use axis_generator for U(1) couplings");

    auto [P_plus, P_minus] = projectors(candidate);
    const SpinorMatrix Pp = P_plus.to_numeric(), Pm = P_minus.to_numeric();
    const auto s = spin_vector_s(p);
    const auto& g = GammaBasis::dirac();

    GeneratorSet out{{SpinorMatrix::zero(Mode::numeric), SpinorMatrix::zero(Mode::numeric),
                      SpinorMatrix::zero(Mode::numeric)},
                     variant,
                     p};
    for (int i = 0; i < 3; ++i) {
        const SpinorMatrix Sig = g.sigma[i].to_numeric();
        out.S[i] = variant == Variant::minus ? Sig * Pp + s[i] * Pm : Sig * Pm + s[i] * Pp;
    }
    return out;
}

SpinorMatrix axis_generator(const CouplingCandidate& candidate, Variant variant, const Vec3& p,
                            const Vec3& axis) {
    require_nonzero(p);
    auto [P_plus, P_minus] = projectors(candidate);
    const SpinorMatrix Pp = P_plus.to_numeric(), Pm = P_minus.to_numeric();
    const auto s = spin_vector_s(p);
    SpinorMatrix s_axis = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) s_axis = s_axis + s[i].scaled(std::complex<double>(axis[i]));
    const SpinorMatrix sig_axis = sigma_dot(axis);
    return variant == Variant::minus ? sig_axis * Pp + s_axis * Pm : sig_axis * Pm + s_axis * Pp;
}

double su2_residual(const GeneratorSet& g) {
    const std::complex<double> two_i{0.0, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const int k = 3 - i - j;
            const double sign = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;  // eps_ijk
            const SpinorMatrix res = commutator(g.S[i], g.S[j]) - g.S[k].scaled(two_i * sign);
            worst = std::max(worst, res.max_abs());
        }
    return worst;
}

SpinorMatrix momentum_hamiltonian(const CouplingCandidate& candidate, Variant variant,
                                  const Vec3& p, const PotentialConstants& constants) {
    auto [P_plus, P_minus] = projectors(candidate);
    const SpinorMatrix Pp = P_plus.to_numeric(), Pm = P_minus.to_numeric();
    const SpinorMatrix kinetic = alpha_dot(p);
    if (variant == Variant::minus)
        return kinetic + Pp.scaled(std::complex<double>(constants.V_plus())) +
               Pm.scaled(std::complex<double>(constants.C_minus));
    return kinetic + Pm.scaled(std::complex<double>(constants.V_minus())) +
           Pp.scaled(std::complex<double>(constants.C_plus));
}

double symmetry_commutator_residual(const CouplingCandidate& candidate, Variant variant,
                                    const Vec3& p, const PotentialConstants& constants) {
    require_nonzero(p);
    const ConditionReport report = classify(candidate);
    const double pnorm = norm(p);
    if (report.momentum_constraint == MomentumConstraint::PerpendicularToAxis) {
        if (std::abs(dot(p, *report.axis)) > 1e-12 * pnorm)
            throw std::domain_error("momentum violates the constraint lambda.p psi = 0");
    } else if (report.momentum_constraint == MomentumConstraint::ParallelToAxis) {
        if (norm(cross(p, *report.axis)) > 1e-12 * pnorm)
            throw std::domain_error("momentum violates the constraint lambda x p psi = 0");
    }

    const SpinorMatrix H = momentum_hamiltonian(candidate, variant, p, constants);
    if (report.group == SymmetryGroup::SU2) {
        const GeneratorSet g = generators(candidate, variant, p);
        double worst = 0.0;
        for (const auto& S : g.S) worst = std::max(worst, commutator(S, H).max_abs());
        return worst;
    }
    const SpinorMatrix S = axis_generator(candidate, variant, p, *report.axis);
    return commutator(S, H).max_abs();
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec3 random_direction(std::mt19937_64& rng) {
    const double z = 1.0 - 2.0 * uniform01(rng);
    const double phi = 2.0 * M_PI * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

GeneratorSweepResult sweep_generators(const CouplingCandidate& candidate, Variant variant,
                                      int samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("sample count must be positive");
    std::mt19937_64 rng(seed);
    GeneratorSweepResult out;
    out.samples = samples;
    out.seed = seed;

    const ConditionReport report = classify(candidate);
    for (int k = 0; k < samples; ++k) {
        const double mag = std::pow(10.0, -3.0 + 6.0 * uniform01(rng));
        Vec3 dir = random_direction(rng);
        if (report.momentum_constraint == MomentumConstraint::ParallelToAxis) {
            dir = *report.axis;
        } else if (report.momentum_constraint == MomentumConstraint::PerpendicularToAxis) {
            const Vec3 a = *report.axis;
            Vec3 perp = cross(a, dir);
            double n = norm(perp);
            if (n < 1e-8) {
                perp = cross(a, Vec3{1.0, 0.0, 0.0});
                n = norm(perp);
            }
            dir = scaled(perp, 1.0 / n);
        }
        const Vec3 p = scaled(dir, mag);

        PotentialConstants constants;
        constants.V_O = -2.0 + 4.0 * uniform01(rng);
        constants.V_v = -2.0 + 4.0 * uniform01(rng);
        constants.C_minus = -1.0 + 2.0 * uniform01(rng);
        constants.C_plus = -1.0 + 2.0 * uniform01(rng);

        if (report.group == SymmetryGroup::SU2) {
            const GeneratorSet g = generators(candidate, variant, p);
            out.max_su2_residual = std::max(out.max_su2_residual, su2_residual(g));
        }
        out.max_commutator_residual =
            std::max(out.max_commutator_residual,
                     symmetry_commutator_residual(candidate, variant, p, constants));
    }
    return out;
}

}  // namespace diracsym
