#include "diracsym/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace diracsym {

const char* to_string(ScenarioType t) {
    switch (t) {
        case ScenarioType::SpinLike: return "spin_like";
        case ScenarioType::PseudospinLike: return "pseudospin_like";
        case ScenarioType::Broken: return "broken";
    }
    return "?";
}

const char* to_string(BreakingStructure s) {
    return s == BreakingStructure::Condition ? "condition" : "pseudoscalar";
}

SampledFunction quadratic_profile(double a, const std::vector<double>& q) {
    SampledFunction f;
    f.form = [a](double x) { return a * x * x; };
    f.derivative = [a](double x) { return 2.0 * a * x; };
    f.samples.reserve(q.size());
    for (double x : q) f.samples.push_back(f.form(x));
    return f;
}

SampledFunction gauss_profile(double depth, double center, double width,
                              const std::vector<double>& q) {
    if (width <= 0.0) throw std::invalid_argument("gaussian width must be positive");
    SampledFunction f;
    f.form = [=](double x) {
        const double u = (x - center) / width;
        return depth * std::exp(-0.5 * u * u);
    };
    f.derivative = [=](double x) {
        const double u = (x - center) / width;
        return -depth * u / width * std::exp(-0.5 * u * u);
    };
    f.samples.reserve(q.size());
    for (double x : q) f.samples.push_back(f.form(x));
    return f;
}

SampledFunction table_profile(std::vector<double> samples) {
    SampledFunction f;
    f.samples = std::move(samples);
    return f;
}

std::vector<double> PotentialProfile::v_plus() const {
    std::vector<double> out(V_O.size());
    for (std::size_t i = 0; i < V_O.size(); ++i) out[i] = V_v[i] + V_O[i];
    return out;
}

std::vector<double> PotentialProfile::v_minus() const {
    std::vector<double> out(V_O.size());
    for (std::size_t i = 0; i < V_O.size(); ++i) out[i] = V_v[i] - V_O[i];
    return out;
}

PotentialProfile make_symmetric_profile(ScenarioType type, double C,
                                        const SampledFunction& confining) {
    if (type == ScenarioType::Broken)
        throw std::invalid_argument("broken profiles are built from a symmetric base");
    PotentialProfile p;
    p.scenario = type;
    p.base = type;
    p.C = C;
    p.confining = confining;
    const std::size_t n = confining.samples.size();
    p.V_O.resize(n);
    p.V_v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = confining.samples[i];
        if (type == ScenarioType::SpinLike) {
            // V_plus = f, V_minus = C
            p.V_v[i] = 0.5 * (f + C);
            p.V_O[i] = 0.5 * (f - C);
        } else {
            // V_plus = C, V_minus = f
            p.V_v[i] = 0.5 * (f + C);
            p.V_O[i] = 0.5 * (C - f);
        }
    }
    return p;
}

PotentialProfile make_broken_profile(const PotentialProfile& base_profile, double strength,
                                     const SampledFunction& shape, BreakingStructure structure) {
    if (base_profile.scenario == ScenarioType::Broken)
        throw std::invalid_argument("base profile is already broken");
    if (shape.samples.size() != base_profile.V_O.size())
        throw std::invalid_argument("breaking shape must be sampled on the profile grid");

    PotentialProfile p = base_profile;
    p.scenario = ScenarioType::Broken;
    p.base = base_profile.scenario;
    p.strength = strength;
    p.breaking_shape = shape.samples;
    p.structure = structure;

    if (structure == BreakingStructure::Condition && strength != 0.0) {
        // Deviate the held condition by exactly strength*shape while keeping
        // the confining combination untouched.
        for (std::size_t i = 0; i < p.V_O.size(); ++i) {
            const double dev = 0.5 * strength * shape.samples[i];
            if (base_profile.base == ScenarioType::SpinLike) {
                p.V_v[i] += dev;   // V_minus = C + strength*shape
                p.V_O[i] -= dev;
            } else {
                p.V_v[i] += dev;   // V_plus = C + strength*shape
                p.V_O[i] += dev;
            }
        }
    }
    return p;
}

}  // namespace diracsym
