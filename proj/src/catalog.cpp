#include "diracsym/catalog.hpp"

#include <cmath>
#include <sstream>

namespace diracsym {

const char* to_string(CouplingKind k) {
    switch (k) {
        case CouplingKind::Scalar: return "scalar";
        case CouplingKind::Pseudoscalar: return "pseudoscalar";
        case CouplingKind::SpaceVector: return "space_vector";
        case CouplingKind::Tensor: return "tensor";
    }
    return "?";
}

std::optional<CouplingKind> coupling_kind_from_string(const std::string& name) {
    if (name == "scalar") return CouplingKind::Scalar;
    if (name == "pseudoscalar") return CouplingKind::Pseudoscalar;
    if (name == "space_vector" || name == "spacevector" || name == "vector")
        return CouplingKind::SpaceVector;
    if (name == "tensor") return CouplingKind::Tensor;
    return std::nullopt;
}

const char* to_string(MomentumConstraint c) {
    switch (c) {
        case MomentumConstraint::None: return "none";
        case MomentumConstraint::PerpendicularToAxis: return "perpendicular_to_axis";
        case MomentumConstraint::ParallelToAxis: return "parallel_to_axis";
    }
    return "?";
}

const char* to_string(EpsilonConstraint c) {
    return c == EpsilonConstraint::Free ? "free" : "parallel_to_axis";
}

const char* to_string(SymmetryGroup g) { return g == SymmetryGroup::SU2 ? "SU2" : "U1"; }

const char* to_string(Dimensionality d) {
    switch (d) {
        case Dimensionality::ThreeD: return "3D";
        case Dimensionality::TwoDPlanePerpAxis: return "2D_plane_perp_axis";
        case Dimensionality::OneDAlongAxis: return "1D_along_axis";
    }
    return "?";
}

namespace {

using RVec = std::array<Rational, 3>;

SpinorMatrix alpha_dot_exact(const RVec& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::exact);
    for (int i = 0; i < 3; ++i) m = m + g.alpha[i].scaled(ExactComplex(v[i]));
    return m;
}

SpinorMatrix alpha_dot_numeric(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.alpha[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

SpinorMatrix sigma_dot_exact(const RVec& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::exact);
    for (int i = 0; i < 3; ++i) m = m + g.sigma[i].scaled(ExactComplex(v[i]));
    return m;
}

SpinorMatrix sigma_dot_numeric(const Vec3& v) {
    const auto& g = GammaBasis::dirac();
    SpinorMatrix m = SpinorMatrix::zero(Mode::numeric);
    for (int i = 0; i < 3; ++i) m = m + g.sigma[i].to_numeric().scaled(std::complex<double>(v[i]));
    return m;
}

SpinorMatrix candidate_matrix_exact(CouplingKind kind, const RVec* axis) {
    const auto& g = GammaBasis::dirac();
    switch (kind) {
        case CouplingKind::Scalar:
            return g.beta;
        case CouplingKind::Pseudoscalar:
            return (g.beta * g.gamma5).scaled(ExactComplex::unit_i());
        case CouplingKind::SpaceVector:
            return alpha_dot_exact(*axis);
        case CouplingKind::Tensor:
            return (g.beta * alpha_dot_exact(*axis)).scaled(ExactComplex::unit_i());
    }
    throw std::logic_error("unreachable");
}

SpinorMatrix candidate_matrix_numeric(CouplingKind kind, const Vec3& axis) {
    const auto& g = GammaBasis::dirac();
    const std::complex<double> im{0.0, 1.0};
    if (kind == CouplingKind::SpaceVector) return alpha_dot_numeric(axis);
    return (g.beta.to_numeric() * alpha_dot_numeric(axis)).scaled(im);
}

RVec rational_cross(const RVec& a, const RVec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational rational_dot(const RVec& a, const RVec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

bool rvec_zero(const RVec& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

Vec3 to_numeric(const RVec& v) {
    return {static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2])};
}

// Two linearly independent vectors orthogonal to lambda, with rational
// entries. Normalization is irrelevant for zero-tests.
std::pair<RVec, RVec> perp_frame_exact(const RVec& lambda) {
    RVec basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    int k = 0;
    Rational best = abs(lambda[0]);
    for (int i = 1; i < 3; ++i) {
        if (abs(lambda[i]) < best) {
            best = abs(lambda[i]);
            k = i;
        }
    }
    RVec u1 = rational_cross(lambda, basis[k]);
    RVec u2 = rational_cross(lambda, u1);
    return {u1, u2};
}

std::pair<Vec3, Vec3> perp_frame_numeric(const Vec3& lambda) {
    Vec3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(lambda[i]) < std::abs(lambda[k])) k = i;
    Vec3 u1 = cross(lambda, basis[k]);
    Vec3 u2 = cross(lambda, u1);
    return {scaled(u1, 1.0 / norm(u1)), scaled(u2, 1.0 / norm(u2))};
}

std::string entry_str(const SpinorMatrix& m, int r, int c) {
    if (m.exact()) return m.exact_at(r, c).str();
    std::ostringstream os;
    os << m.value(r, c).real() << (m.value(r, c).imag() < 0 ? "-" : "+")
       << std::abs(m.value(r, c).imag()) << "*i";
    return os.str();
}

void reject_if_not_involutive(const SpinorMatrix& O) {
    const SpinorMatrix sq = O * O;
    const SpinorMatrix diff = sq - SpinorMatrix::identity(O.mode());
    if (diff.is_zero(1e-12)) return;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            bool bad = O.exact() ? !(diff.exact_at(r, c).is_zero())
                                 : std::abs(diff.value(r, c)) >= 1e-12;
            if (bad) {
                std::ostringstream os;
                os << "candidate matrix is not involutive: (O*O)[" << r << "][" << c
                   << "] = " << entry_str(sq, r, c);
                throw CandidateRejected(os.str(), r, c, entry_str(sq, r, c));
            }
        }
}

}  // namespace

CouplingCandidate build_candidate(CouplingKind kind) {
    if (kind == CouplingKind::SpaceVector || kind == CouplingKind::Tensor)
        throw std::invalid_argument("axis required for space-vector and tensor couplings");
    return CouplingCandidate{kind, std::nullopt, candidate_matrix_exact(kind, nullptr)};
}

CouplingCandidate build_candidate(CouplingKind kind, const std::array<Rational, 3>& axis) {
    if (kind == CouplingKind::Scalar || kind == CouplingKind::Pseudoscalar)
        throw std::invalid_argument("scalar and pseudoscalar couplings take no axis");
    if (rational_dot(axis, axis) != 1)
        throw std::invalid_argument("axis must be a unit vector (exact rational norm)");
    Axis a;
    a.exact = axis;
    a.has_exact = true;
    a.numeric = to_numeric(axis);
    return CouplingCandidate{kind, a, candidate_matrix_exact(kind, &axis)};
}

CouplingCandidate build_candidate(CouplingKind kind, const Vec3& axis) {
    if (kind == CouplingKind::Scalar || kind == CouplingKind::Pseudoscalar)
        throw std::invalid_argument("scalar and pseudoscalar couplings take no axis");
    if (std::abs(dot(axis, axis) - 1.0) > 1e-12)
        throw std::invalid_argument("axis must be a unit vector (|lambda.lambda - 1| <= 1e-12)");
    Axis a;
    a.numeric = axis;
    return CouplingCandidate{kind, a, candidate_matrix_numeric(kind, axis)};
}

ConditionReport classify(const CouplingCandidate& candidate) {
    const SpinorMatrix& O = candidate.matrix;
    reject_if_not_involutive(O);

    ConditionReport report;
    report.squares_to_identity = true;

    const auto& g = GammaBasis::dirac();
    const bool exact = O.exact();

    auto anticomm_zero = [&](const SpinorMatrix& A) {
        return anticommutator(A, O).is_zero(1e-12);
    };

    bool strong = true;
    for (int i = 0; i < 3; ++i) {
        const SpinorMatrix a = exact ? g.alpha[i] : g.alpha[i].to_numeric();
        if (!anticomm_zero(a)) strong = false;
    }
    report.strong_anticommute = strong;

    if (strong) {
        report.momentum_constraint = MomentumConstraint::None;
        report.epsilon_constraint = EpsilonConstraint::Free;
        report.group = SymmetryGroup::SU2;
        report.dimensionality = Dimensionality::ThreeD;
        return report;
    }

    if (!candidate.axis)
        throw CandidateRejected("anticommutators do not vanish and no axis is available", 0, 0, "");
    report.axis = candidate.axis->numeric;

    // Probe {O, alpha.p} on a frame adapted to lambda. P+- alpha.p = alpha.p P-+
    // holds on a momentum subspace iff the anticommutator vanishes there.
    bool perp_ok, par_ok, eps_perp_zero, eps_par_zero;
    if (exact && candidate.axis->has_exact) {
        const RVec& lambda = candidate.axis->exact;
        auto [u1, u2] = perp_frame_exact(lambda);
        auto probe = [&](const RVec& v) {
            return rvec_zero(v) || anticommutator(alpha_dot_exact(v), O).is_zero();
        };
        perp_ok = probe(u1) && probe(u2);
        par_ok = probe(lambda);
        auto eps_probe = [&](const RVec& v) {
            return rvec_zero(v) || commutator(O, sigma_dot_exact(v)).is_zero();
        };
        eps_perp_zero = eps_probe(u1) && eps_probe(u2);
        eps_par_zero = eps_probe(lambda);
    } else {
        const Vec3 lambda = candidate.axis->numeric;
        auto [u1, u2] = perp_frame_numeric(lambda);
        const SpinorMatrix On = O.to_numeric();
        auto probe = [&](const Vec3& v) {
            return anticommutator(alpha_dot_numeric(v), On).is_zero(1e-12);
        };
        perp_ok = probe(u1) && probe(u2);
        par_ok = probe(lambda);
        auto eps_probe = [&](const Vec3& v) {
            return commutator(On, sigma_dot_numeric(v)).is_zero(1e-12);
        };
        eps_perp_zero = eps_probe(u1) && eps_probe(u2);
        eps_par_zero = eps_probe(lambda);
    }

    if (perp_ok && !par_ok) {
        report.momentum_constraint = MomentumConstraint::PerpendicularToAxis;
        report.dimensionality = Dimensionality::TwoDPlanePerpAxis;
    } else if (par_ok && !perp_ok) {
        report.momentum_constraint = MomentumConstraint::ParallelToAxis;
        report.dimensionality = Dimensionality::OneDAlongAxis;
    } else {
        throw CandidateRejected(
            "no momentum subspace restores the projector intertwining relation", 0, 0, "");
    }
    report.group = SymmetryGroup::U1;

    if (eps_par_zero && eps_perp_zero)
        report.epsilon_constraint = EpsilonConstraint::Free;
    else if (eps_par_zero)
        report.epsilon_constraint = EpsilonConstraint::ParallelToAxis;
    else
        throw CandidateRejected("no admissible infinitesimal rotation axis", 0, 0, "");

    return report;
}

SpinorMatrix epsilon_constraint_check(const CouplingCandidate& candidate, const Vec3& eps) {
    return commutator(candidate.matrix.to_numeric(), sigma_dot_numeric(eps));
}

MatrixConditionCheck check_conditions(const SpinorMatrix& candidate_matrix) {
    const auto& g = GammaBasis::dirac();
    const bool exact = candidate_matrix.exact();
    MatrixConditionCheck out;

    auto record_failure = [&](const std::string& what, const SpinorMatrix& residual) {
        if (!out.first_failure.empty()) return;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                bool bad = exact ? !residual.exact_at(r, c).is_zero()
                                 : std::abs(residual.value(r, c)) >= 1e-12;
                if (bad) {
                    std::ostringstream os;
                    os << what << " fails at entry (" << r << "," << c << ")";
                    if (exact) os << " = " << residual.exact_at(r, c).str();
                    out.first_failure = os.str();
                    return;
                }
            }
    };

    const SpinorMatrix id = SpinorMatrix::identity(candidate_matrix.mode());
    const SpinorMatrix herm = candidate_matrix - candidate_matrix.adjoint();
    out.hermitian = herm.is_zero(1e-12);
    if (!out.hermitian) record_failure("hermiticity", herm);

    const SpinorMatrix invol = candidate_matrix * candidate_matrix - id;
    out.squares_to_identity = invol.is_zero(1e-12);
    if (!out.squares_to_identity) record_failure("O^2 = I", invol);

    for (int i = 0; i < 3; ++i) {
        const SpinorMatrix a = exact ? g.alpha[i] : g.alpha[i].to_numeric();
        const SpinorMatrix s = exact ? g.sigma[i] : g.sigma[i].to_numeric();
        const SpinorMatrix anti = anticommutator(a, candidate_matrix);
        const SpinorMatrix comm = commutator(candidate_matrix, s);
        out.anticommutes_alpha[i] = anti.is_zero(1e-12);
        out.commutes_sigma[i] = comm.is_zero(1e-12);
        if (!out.anticommutes_alpha[i]) record_failure("{alpha_i, O} = 0", anti);
        if (!out.commutes_sigma[i]) record_failure("[O, Sigma_i] = 0", comm);
    }
    return out;
}

}  // namespace diracsym
