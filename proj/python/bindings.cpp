#include "diracsym/catalog.hpp"
#include "diracsym/cli.hpp"
#include "diracsym/generators.hpp"
#include "diracsym/oracle1d.hpp"
#include "diracsym/radial.hpp"
#include "diracsym/solver1d.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace diracsym;

namespace {

using Matrix4 = std::vector<std::vector<std::complex<double>>>;

Matrix4 to_pymatrix(const SpinorMatrix& m) {
    Matrix4 out(4, std::vector<std::complex<double>>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m.value(r, c);
    return out;
}

SpinorMatrix from_pymatrix(const Matrix4& m) {
    if (m.size() != 4) throw std::invalid_argument("matrix must be 4x4");
    SpinorMatrix::NumericEntries entries{};
    for (int r = 0; r < 4; ++r) {
        if (m[r].size() != 4) throw std::invalid_argument("matrix must be 4x4");
        for (int c = 0; c < 4; ++c) entries[4 * r + c] = m[r][c];
    }
    return SpinorMatrix::from_numeric(entries);
}

CouplingKind kind_of(const std::string& name) {
    const auto kind = coupling_kind_from_string(name);
    if (!kind) throw std::invalid_argument("unknown coupling kind \"" + name + "\"");
    return *kind;
}

CouplingCandidate make_candidate(const std::string& kind_name,
                                 const std::optional<Vec3>& axis) {
    const CouplingKind kind = kind_of(kind_name);
    if (kind == CouplingKind::Scalar || kind == CouplingKind::Pseudoscalar) {
        if (axis) throw std::invalid_argument("this coupling kind takes no axis");
        return build_candidate(kind);
    }
    if (!axis) throw std::invalid_argument("this coupling kind needs an axis");
    // Integer-valued axes stay exact so the classification is certified.
    bool integral = true;
    std::array<Rational, 3> exact;
    for (int i = 0; i < 3; ++i) {
        if ((*axis)[i] == std::floor((*axis)[i]))
            exact[i] = Rational(static_cast<long>((*axis)[i]));
        else
            integral = false;
    }
    return integral ? build_candidate(kind, exact) : build_candidate(kind, *axis);
}

Variant variant_of(const std::string& name) {
    if (name == "minus") return Variant::minus;
    if (name == "plus") return Variant::plus;
    throw std::invalid_argument("variant must be \"minus\" or \"plus\"");
}

py::dict report_to_dict(const ConditionReport& report) {
    py::dict out;
    out["squares_to_identity"] = report.squares_to_identity;
    out["strong_anticommute"] = report.strong_anticommute;
    out["momentum_constraint"] = to_string(report.momentum_constraint);
    out["epsilon_constraint"] = to_string(report.epsilon_constraint);
    out["group"] = to_string(report.group);
    out["dimensionality"] = to_string(report.dimensionality);
    if (report.axis) out["axis"] = *report.axis;
    return out;
}

SampledFunction form_from_spec(const py::object& spec, const std::vector<double>& points) {
    if (py::isinstance<py::tuple>(spec) || py::isinstance<py::list>(spec)) {
        const auto seq = spec.cast<py::sequence>();
        if (seq.size() == 2 && py::isinstance<py::str>(seq[0])) {
            const std::string form = seq[0].cast<std::string>();
            const py::dict params = seq[1].cast<py::dict>();
            if (form == "quadratic")
                return quadratic_profile(params["a"].cast<double>(), points);
            if (form == "gauss")
                return gauss_profile(params["amplitude"].cast<double>(),
                                     params["center"].cast<double>(),
                                     params["width"].cast<double>(), points);
            throw std::invalid_argument("unknown form \"" + form + "\"");
        }
        return table_profile(spec.cast<std::vector<double>>());
    }
    throw std::invalid_argument("potential spec must be (name, params) or a sample list");
}

struct Solve1DResult {
    SpectrumResult spectrum;
    std::optional<DoubletReport> doublets;
    bool labeled = false;
};

Solve1DResult solve1d_impl(int n, double L, const std::string& boundary,
                           const std::string& coupling, const std::optional<Vec3>& axis,
                           const std::string& scenario, double C, const py::object& potential,
                           std::pair<double, double> transverse_k,
                           std::pair<double, double> window, double strength,
                           const py::object& shape, const std::string& structure,
                           const std::optional<std::string>& coordinate) {
    Boundary b;
    if (boundary == "periodic")
        b = Boundary::periodic;
    else if (boundary == "box")
        b = Boundary::box;
    else
        throw std::invalid_argument("boundary must be periodic or box");

    const CouplingCandidate cand = make_candidate(coupling, axis);
    CoordLabel label = cand.kind == CouplingKind::SpaceVector ? CoordLabel::x : CoordLabel::z;
    if (coordinate) label = *coordinate == "x" ? CoordLabel::x : CoordLabel::z;

    const Grid1D grid(n, L, b, label);
    const auto points = grid.points();
    const SampledFunction confining = form_from_spec(potential, points);

    PotentialProfile profile;
    if (scenario == "spin_like")
        profile = make_symmetric_profile(ScenarioType::SpinLike, C, confining);
    else if (scenario == "pseudospin_like")
        profile = make_symmetric_profile(ScenarioType::PseudospinLike, C, confining);
    else if (scenario == "broken_spin_like" || scenario == "broken_pseudospin_like") {
        const auto base = make_symmetric_profile(scenario == "broken_spin_like"
                                                     ? ScenarioType::SpinLike
                                                     : ScenarioType::PseudospinLike,
                                                 C, confining);
        const SampledFunction shape_fn = shape.is_none()
                                             ? gauss_profile(1.0, 2.0, 1.0, points)
                                             : form_from_spec(shape, points);
        BreakingStructure bs = cand.kind == CouplingKind::Tensor
                                   ? BreakingStructure::Pseudoscalar
                                   : BreakingStructure::Condition;
        if (structure == "condition")
            bs = BreakingStructure::Condition;
        else if (structure == "pseudoscalar")
            bs = BreakingStructure::Pseudoscalar;
        else if (!structure.empty())
            throw std::invalid_argument("structure must be condition or pseudoscalar");
        profile = make_broken_profile(base, strength, shape_fn, bs);
    } else {
        throw std::invalid_argument("unknown scenario \"" + scenario + "\"");
    }

    const Hamiltonian1D h =
        assemble(grid, profile, cand, TransverseK{transverse_k.first, transverse_k.second});
    Solve1DResult out;
    out.spectrum = eigensolve(h, window.first, window.second);
    out.labeled = h.label_operator.has_value();
    if (out.labeled) out.doublets = pair_doublets(out.spectrum);
    return out;
}

}  // namespace

PYBIND11_MODULE(_diracsym, m) {
    m.doc() = "Spin and pseudospin SU(2) symmetries of the Dirac equation: "
              "exact gamma-algebra checks, coupling classification, and bound-state solvers";

    m.def(
        "gamma",
        [](const std::string& name) {
            const auto& g = GammaBasis::dirac();
            if (name == "beta") return to_pymatrix(g.beta);
            if (name == "gamma5") return to_pymatrix(g.gamma5);
            if (name == "identity") return to_pymatrix(g.identity);
            for (int i = 0; i < 3; ++i) {
                if (name == "alpha" + std::to_string(i + 1)) return to_pymatrix(g.alpha[i]);
                if (name == "sigma" + std::to_string(i + 1)) return to_pymatrix(g.sigma[i]);
            }
            throw std::invalid_argument("unknown gamma-basis element \"" + name + "\"");
        },
        py::arg("name"), "Dirac-representation basis matrix as a nested list");

    m.def(
        "classify",
        [](const std::string& kind, const std::optional<Vec3>& axis) {
            return report_to_dict(classify(make_candidate(kind, axis)));
        },
        py::arg("kind"), py::arg("axis") = std::nullopt,
        "Symmetry conditions satisfied by a coupling candidate");

    m.def(
        "check_matrix",
        [](const Matrix4& matrix) {
            const auto check = check_conditions(from_pymatrix(matrix));
            py::dict out;
            out["hermitian"] = check.hermitian;
            out["squares_to_identity"] = check.squares_to_identity;
            out["anticommutes_alpha"] = check.anticommutes_alpha;
            out["commutes_sigma"] = check.commutes_sigma;
            out["first_failure"] = check.first_failure;
            return out;
        },
        py::arg("matrix"), "Raw condition check for a user-supplied 4x4 matrix");

    m.def(
        "projectors",
        [](const std::string& kind, const std::optional<Vec3>& axis) {
            auto [Pp, Pm] = projectors(make_candidate(kind, axis));
            return std::make_pair(to_pymatrix(Pp), to_pymatrix(Pm));
        },
        py::arg("kind"), py::arg("axis") = std::nullopt);

    m.def(
        "spin_vector_s",
        [](const Vec3& p) {
            const auto s = spin_vector_s(p);
            return std::vector<Matrix4>{to_pymatrix(s[0]), to_pymatrix(s[1]), to_pymatrix(s[2])};
        },
        py::arg("p"), "s_i = (alpha.p) Sigma_i (alpha.p) / p^2");

    m.def(
        "momentum_hamiltonian",
        [](const std::string& kind, const std::string& variant, const Vec3& p, double V_O,
           double V_v, double C_minus, double C_plus, const std::optional<Vec3>& axis) {
            PotentialConstants constants{V_O, V_v, C_minus, C_plus};
            return to_pymatrix(
                momentum_hamiltonian(make_candidate(kind, axis), variant_of(variant), p,
                                     constants));
        },
        py::arg("kind"), py::arg("variant"), py::arg("p"), py::arg("V_O") = 0.0,
        py::arg("V_v") = 0.0, py::arg("C_minus") = 0.0, py::arg("C_plus") = 0.0,
        py::arg("axis") = std::nullopt);

    m.def(
        "symmetry_commutator_residual",
        [](const std::string& kind, const std::string& variant, const Vec3& p, double V_O,
           double V_v, double C_minus, double C_plus, const std::optional<Vec3>& axis) {
            PotentialConstants constants{V_O, V_v, C_minus, C_plus};
            return symmetry_commutator_residual(make_candidate(kind, axis), variant_of(variant),
                                                p, constants);
        },
        py::arg("kind"), py::arg("variant"), py::arg("p"), py::arg("V_O") = 0.0,
        py::arg("V_v") = 0.0, py::arg("C_minus") = 0.0, py::arg("C_plus") = 0.0,
        py::arg("axis") = std::nullopt);

    m.def(
        "generator_sweep",
        [](const std::string& kind, const std::string& variant, int samples,
           std::uint64_t seed) {
            const auto sweep =
                sweep_generators(make_candidate(kind, std::nullopt), variant_of(variant),
                                 samples, seed);
            py::dict out;
            out["max_su2_residual"] = sweep.max_su2_residual;
            out["max_commutator_residual"] = sweep.max_commutator_residual;
            out["samples"] = sweep.samples;
            out["seed"] = sweep.seed;
            return out;
        },
        py::arg("kind"), py::arg("variant") = "minus", py::arg("samples") = 100,
        py::arg("seed") = 12345);

    m.def(
        "solve1d",
        [](int n, double L, const std::string& boundary, const std::string& coupling,
           const std::optional<Vec3>& axis, const std::string& scenario, double C,
           const py::object& potential, std::pair<double, double> transverse_k,
           std::pair<double, double> window, double strength, const py::object& shape,
           const std::string& structure, const std::optional<std::string>& coordinate) {
            const Solve1DResult result =
                solve1d_impl(n, L, boundary, coupling, axis, scenario, C, potential,
                             transverse_k, window, strength, shape, structure, coordinate);
            py::list levels;
            for (const auto& level : result.spectrum.levels) {
                py::dict d;
                d["E"] = level.E;
                d["p_plus_weight"] = level.p_plus_weight;
                d["block_label"] = level.block_label;
                d["node_count"] = level.node_count;
                levels.append(d);
            }
            py::dict out;
            out["levels"] = levels;
            out["hermiticity_residual"] = result.spectrum.hermiticity_residual;
            out["labeled"] = result.labeled;
            if (result.doublets) {
                py::list pairs;
                for (const auto& d : result.doublets->pairs)
                    pairs.append(py::make_tuple(d.e_a, d.e_b, d.splitting));
                out["doublets"] = pairs;
                out["max_splitting"] = result.doublets->max_splitting;
            }
            return out;
        },
        py::arg("n"), py::arg("L"), py::arg("boundary"), py::arg("coupling"), py::arg("axis"),
        py::arg("scenario"), py::arg("C"), py::arg("potential"), py::arg("transverse_k"),
        py::arg("window"), py::arg("strength") = 0.0, py::arg("shape") = py::none(),
        py::arg("structure") = "", py::arg("coordinate") = std::nullopt,
        "Slab-geometry 4-spinor bound states; see the CLI config for the field meanings");

    m.def(
        "oracle_levels",
        [](int n, double L, const std::string& boundary, const std::string& scenario, double C,
           const py::object& potential, std::pair<double, double> transverse_k,
           std::pair<double, double> window, int level_count) {
            Boundary b = boundary == "box" ? Boundary::box : Boundary::periodic;
            const Grid1D grid(n, L, b, CoordLabel::z);
            const SampledFunction confining = form_from_spec(potential, grid.points());
            const auto type = scenario == "pseudospin_like" ? ScenarioType::PseudospinLike
                                                            : ScenarioType::SpinLike;
            const auto profile = make_symmetric_profile(type, C, confining);
            const auto result =
                schrodinger_oracle(grid, profile, transverse_k.first, transverse_k.second,
                                   level_count, window.first, window.second);
            py::list out;
            for (const auto& level : result.levels) {
                if (level.energy)
                    out.append(*level.energy);
                else
                    out.append(py::none());
            }
            return out;
        },
        py::arg("n"), py::arg("L"), py::arg("boundary"), py::arg("scenario"), py::arg("C"),
        py::arg("potential"), py::arg("transverse_k"), py::arg("window"),
        py::arg("level_count"),
        "Reduced Schroedinger-type equation solved as an energy-dependent eigenproblem");

    m.def(
        "oscillator_oracle",
        [](double a, double mass, int n, int kappa, const std::string& which) {
            const RadialSymmetry mode =
                which == "pseudospin" ? RadialSymmetry::pseudospin : RadialSymmetry::spin;
            return oscillator_oracle(a, mass, n, kappa, mode);
        },
        py::arg("a"), py::arg("m"), py::arg("n"), py::arg("kappa"), py::arg("which") = "spin");

    m.def(
        "solve_radial",
        [](double mass, const std::string& symmetry, const py::object& sigma,
           const py::object& delta, const std::vector<int>& kappas, double r_max, int n_points,
           std::pair<double, double> window) {
            auto form_fn = [](const py::object& spec) -> std::function<double(double)> {
                if (spec.is_none()) return [](double) { return 0.0; };
                const auto seq = spec.cast<py::sequence>();
                const std::string form = seq[0].cast<std::string>();
                const py::dict params = seq[1].cast<py::dict>();
                if (form == "quadratic") {
                    const double a = params["a"].cast<double>();
                    return [a](double r) { return a * r * r; };
                }
                if (form == "woods_saxon")
                    return woods_saxon(params["depth"].cast<double>(),
                                       params["radius"].cast<double>(),
                                       params["diffuseness"].cast<double>());
                if (form == "const") {
                    const double v = params["value"].cast<double>();
                    return [v](double) { return v; };
                }
                throw std::invalid_argument("unknown radial form \"" + form + "\"");
            };
            RadialPotentials pot;
            pot.m = mass;
            pot.sigma = form_fn(sigma);
            pot.delta = form_fn(delta);
            const RadialGrid grid(r_max, n_points);

            std::map<int, std::vector<BoundState>> by_channel;
            py::list states;
            for (int kappa : kappas) {
                by_channel[kappa] = solve_channel(pot, grid, kappa, window.first, window.second);
                for (const auto& s : by_channel[kappa]) {
                    py::dict d;
                    d["kappa"] = s.kappa;
                    d["n"] = s.n;
                    d["E"] = s.E;
                    d["nodes_g"] = s.nodes_g;
                    d["nodes_f"] = s.nodes_f;
                    states.append(d);
                }
            }
            py::dict out;
            out["states"] = states;
            if (symmetry != "none") {
                const auto report = doublet_report(
                    by_channel, symmetry == "pseudospin" ? RadialSymmetry::pseudospin
                                                         : RadialSymmetry::spin);
                py::list pairs;
                for (const auto& d : report.pairs)
                    pairs.append(py::make_tuple(d.kappa_a, d.kappa_b, d.n, d.e_a, d.e_b,
                                                d.splitting));
                out["doublets"] = pairs;
                out["max_splitting"] = report.max_splitting;
                out["unmatched"] = report.unmatched;
            }
            return out;
        },
        py::arg("m"), py::arg("symmetry"), py::arg("sigma"), py::arg("delta"), py::arg("kappas"),
        py::arg("r_max") = 12.0, py::arg("n_points") = 16384, py::arg("window"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "In-process CLI dispatch: (exit_code, stdout, stderr)");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
