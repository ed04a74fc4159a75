#pragma once

#include "diracsym/spinor_matrix.hpp"
#include "diracsym/vec3.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace diracsym {

/// Lorentz structure of the coupling matrix O in V = V_O * O + V_v * I.
enum class CouplingKind { Scalar, Pseudoscalar, SpaceVector, Tensor };

const char* to_string(CouplingKind k);
std::optional<CouplingKind> coupling_kind_from_string(const std::string& name);

/// Unit 3-vector, kept exact (rational components with lambda.lambda == 1)
/// whenever the input permits so the classification can be certified with
/// zero tolerance.
struct Axis {
    std::array<Rational, 3> exact{};
    bool has_exact = false;
    Vec3 numeric{};
};

struct CouplingCandidate {
    CouplingKind kind;
    std::optional<Axis> axis;   // present iff kind is SpaceVector or Tensor
    SpinorMatrix matrix;        // exact mode when axis is exact or absent

    bool requires_axis() const {
        return kind == CouplingKind::SpaceVector || kind == CouplingKind::Tensor;
    }
};

enum class MomentumConstraint { None, PerpendicularToAxis, ParallelToAxis };
enum class EpsilonConstraint { Free, ParallelToAxis };
enum class SymmetryGroup { SU2, U1 };
enum class Dimensionality { ThreeD, TwoDPlanePerpAxis, OneDAlongAxis };

const char* to_string(MomentumConstraint c);
const char* to_string(EpsilonConstraint c);
const char* to_string(SymmetryGroup g);
const char* to_string(Dimensionality d);

struct ConditionReport {
    bool squares_to_identity = false;
    bool strong_anticommute = false;
    MomentumConstraint momentum_constraint = MomentumConstraint::None;
    EpsilonConstraint epsilon_constraint = EpsilonConstraint::Free;
    SymmetryGroup group = SymmetryGroup::SU2;
    Dimensionality dimensionality = Dimensionality::ThreeD;
    std::optional<Vec3> axis;
};

/// Thrown when a candidate matrix fails O^2 = I (or no momentum constraint
/// can rescue the anticommutation requirement). Carries the failing entry as
/// a certificate.
class CandidateRejected : public std::runtime_error {
  public:
    CandidateRejected(std::string what, int row, int col, std::string entry)
        : std::runtime_error(std::move(what)), row_(row), col_(col), entry_(std::move(entry)) {}
    int row() const { return row_; }
    int col() const { return col_; }
    const std::string& entry() const { return entry_; }

  private:
    int row_, col_;
    std::string entry_;
};

CouplingCandidate build_candidate(CouplingKind kind);
CouplingCandidate build_candidate(CouplingKind kind, const std::array<Rational, 3>& axis);
CouplingCandidate build_candidate(CouplingKind kind, const Vec3& axis);

ConditionReport classify(const CouplingCandidate& candidate);

/// Residual [O, eps.Sigma]; zero iff the infinitesimal rotation axis eps is
/// admissible for the candidate. Numeric mode.
SpinorMatrix epsilon_constraint_check(const CouplingCandidate& candidate, const Vec3& eps);

/// Raw condition check for a user-supplied matrix: which requirements hold,
/// with a failing-entry certificate for each that does not. No group or
/// dimensionality is inferred for arbitrary matrices.
struct MatrixConditionCheck {
    bool hermitian = false;
    bool squares_to_identity = false;
    std::array<bool, 3> anticommutes_alpha{};
    std::array<bool, 3> commutes_sigma{};
    std::string first_failure;   // empty when every condition holds
};

MatrixConditionCheck check_conditions(const SpinorMatrix& candidate_matrix);

}  // namespace diracsym
