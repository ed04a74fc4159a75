#pragma once

#include "diracsym/catalog.hpp"
#include "diracsym/spinor_matrix.hpp"
#include "diracsym/vec3.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace diracsym {

/// Constant potential strengths entering the momentum-space Hamiltonians.
/// V_plus/V_minus are the projector-basis combinations V_v +- V_O.
struct PotentialConstants {
    double V_O = 0.0;
    double V_v = 0.0;
    double C_minus = 0.0;
    double C_plus = 0.0;

    double V_plus() const { return V_v + V_O; }
    double V_minus() const { return V_v - V_O; }
};

enum class Variant { minus, plus };

const char* to_string(Variant v);

/// P+- = (I +- O)/2 in the candidate's arithmetic mode.
std::pair<SpinorMatrix, SpinorMatrix> projectors(const CouplingCandidate& candidate);

/// s_i = (alpha.p) Sigma_i (alpha.p) / p^2. Homogeneous of degree zero in p;
/// p = 0 is a domain error (s is undefined there, never regularized).
std::array<SpinorMatrix, 3> spin_vector_s(const Vec3& p);

struct GeneratorSet {
    std::array<SpinorMatrix, 3> S;
    Variant variant;
    Vec3 momentum;
};

/// Full SU(2) generator triple S_i = Sigma_i P_a + s_i P_b (a,b fixed by the
/// variant). Requires an SU(2) candidate; U(1) candidates only admit the
/// axis component, built by axis_generator.
GeneratorSet generators(const CouplingCandidate& candidate, Variant variant, const Vec3& p);

/// lambda-component generator for U(1) candidates (also valid for SU(2) ones).
SpinorMatrix axis_generator(const CouplingCandidate& candidate, Variant variant, const Vec3& p,
                            const Vec3& axis);

/// max over (i,j) of || [S_i, S_j] - 2 i eps_ijk S_k ||_max.
double su2_residual(const GeneratorSet& g);

/// H_- = alpha.p + V_plus P_+ + C_minus P_-  (variant minus)
/// H_+ = alpha.p + V_minus P_- + C_plus P_+  (variant plus)
SpinorMatrix momentum_hamiltonian(const CouplingCandidate& candidate, Variant variant,
                                  const Vec3& p, const PotentialConstants& constants);

/// max_i || [S_i, H] ||_max (axis component only for U(1) candidates).
/// Momenta violating the candidate's constraint are a domain error.
double symmetry_commutator_residual(const CouplingCandidate& candidate, Variant variant,
                                    const Vec3& p, const PotentialConstants& constants);

struct GeneratorSweepResult {
    double max_su2_residual = 0.0;
    double max_commutator_residual = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Randomized verification sweep: |p| log-uniform in [1e-3, 1e3], isotropic
/// directions, fresh potential constants per sample. Deterministic for a
/// fixed seed.
GeneratorSweepResult sweep_generators(const CouplingCandidate& candidate, Variant variant,
                                      int samples, std::uint64_t seed);

}  // namespace diracsym
