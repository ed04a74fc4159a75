#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diracsym {

enum class ScenarioType { SpinLike, PseudospinLike, Broken };
enum class BreakingStructure { Condition, Pseudoscalar };

const char* to_string(ScenarioType t);
const char* to_string(BreakingStructure s);

/// Scalar profile with an optional closed form. The samples are the working
/// representation; form/derivative, when present, let oracles resample on
/// finer grids and residual checks use exact gradients.
struct SampledFunction {
    std::vector<double> samples;
    std::function<double(double)> form;        // may be empty
    std::function<double(double)> derivative;  // may be empty

    bool has_form() const { return static_cast<bool>(form); }
};

SampledFunction quadratic_profile(double a, const std::vector<double>& q);
SampledFunction gauss_profile(double depth, double center, double width,
                              const std::vector<double>& q);
SampledFunction table_profile(std::vector<double> samples);

/// Sampled V_O(q), V_v(q) with the symmetry-scenario bookkeeping.
///
/// SpinLike keeps V_v - V_O = C at every sample with V_v + V_O the confining
/// combination; PseudospinLike swaps the roles. Broken deviates from the
/// base condition by exactly strength*shape, either through the condition
/// itself or through an extra pseudoscalar potential term (tensor couplings
/// pair trivially under any condition-only deviation, so their breaking term
/// carries the pseudoscalar structure).
struct PotentialProfile {
    std::vector<double> V_O;
    std::vector<double> V_v;
    ScenarioType scenario = ScenarioType::SpinLike;
    ScenarioType base = ScenarioType::SpinLike;  // meaningful when scenario == Broken
    double C = 0.0;
    double strength = 0.0;
    std::vector<double> breaking_shape;
    BreakingStructure structure = BreakingStructure::Condition;

    SampledFunction confining;  // V_plus for SpinLike bases, V_minus for PseudospinLike

    std::vector<double> v_plus() const;
    std::vector<double> v_minus() const;
    int size() const { return static_cast<int>(V_O.size()); }
};

PotentialProfile make_symmetric_profile(ScenarioType type, double C,
                                        const SampledFunction& confining);

PotentialProfile make_broken_profile(const PotentialProfile& base_profile, double strength,
                                     const SampledFunction& shape, BreakingStructure structure);

}  // namespace diracsym
