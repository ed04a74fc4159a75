#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracsym/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    json doc;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = diracsym::cli::run(args, out, err);
    RunResult r{code, out.str(), err.str(), json()};
    if (!r.out.empty() && (r.out[0] == '{' || r.out[0] == '[')) {
        try {
            r.doc = json::parse(r.out);
        } catch (...) {
        }
    }
    return r;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("diracsym_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& cfg) {
    const fs::path path = dir / name;
    std::ofstream(path) << cfg.dump(2);
    return path;
}

json tensor_quadratic_config() {
    return json{{"grid", {{"n", 128}, {"L", 20.0}, {"boundary", "periodic"}}},
                {"coupling", {{"kind", "tensor"}, {"axis", {0, 0, 1}}}},
                {"scenario", {{"type", "spin_like"}, {"C", 0.0}}},
                {"potential", {{"form", "quadratic"}, {"params", {{"a", 1.0}}}}},
                {"transverse_k", {0.0, 0.0}},
                {"window", {0.5, 2.5}}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("algebra-verify passes every exact identity") {
    const auto r = run_cli({"algebra-verify"});
    CHECK(r.code == 0);
    REQUIRE(r.doc.is_object());
    CHECK(r.doc.at("all_pass").get<bool>());
    CHECK(r.doc.at("checks").size() > 30);
}

TEST_CASE("classify emits the stable report keys") {
    const auto ps = run_cli({"classify", "--kind", "pseudoscalar"});
    CHECK(ps.code == 0);
    REQUIRE(ps.doc.is_object());
    for (const char* key : {"squares_to_identity", "strong_anticommute", "momentum_constraint",
                            "epsilon_constraint", "group", "dimensionality"})
        CHECK(ps.doc.contains(key));
    CHECK(ps.doc.at("group") == "SU2");
    CHECK(ps.doc.at("dimensionality") == "3D");

    const auto tz = run_cli({"classify", "--kind", "tensor", "--axis", "0,0,1"});
    CHECK(tz.code == 0);
    CHECK(tz.doc.at("momentum_constraint") == "parallel_to_axis");
    CHECK(tz.doc.at("epsilon_constraint") == "parallel_to_axis");
    CHECK(tz.doc.at("group") == "U1");
    CHECK(tz.doc.at("dimensionality") == "1D_along_axis");

    const auto sv = run_cli({"classify", "--kind", "space_vector", "--axis", "0.6,0.8,0"});
    CHECK(sv.code == 0);
    CHECK(sv.doc.at("dimensionality") == "2D_plane_perp_axis");

    CHECK(run_cli({"classify", "--kind", "nonsense"}).code == 1);
    CHECK(run_cli({"classify", "--kind", "tensor", "--axis", "0,0,2"}).code == 1);
}

TEST_CASE("global flags may trail the subcommand") {
    const auto dir = fresh_dir("vg_trail");
    const auto r = run_cli({"verify-generators", "--kind", "scalar", "--variant", "minus",
                            "--samples", "10", "--seed", "99", "--out-dir", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.doc.at("seed") == 99);
    CHECK(fs::exists(dir / "verify-generators.json"));
}

TEST_CASE("verify-generators writes a reproducible report") {
    const auto dir = fresh_dir("vg");
    const auto r = run_cli({"--seed", "7", "--out-dir", dir.string(), "verify-generators",
                            "--kind", "scalar", "--variant", "minus", "--samples", "25"});
    CHECK(r.code == 0);
    REQUIRE(r.doc.is_object());
    CHECK(r.doc.at("samples") == 25);
    CHECK(r.doc.at("max_su2_residual").get<double>() < 1e-12);
    CHECK(r.doc.at("max_commutator_residual").get<double>() < 1e-12);
    CHECK(fs::exists(dir / "verify-generators.json"));

    const std::string first = slurp(dir / "verify-generators.json");
    run_cli({"--seed", "7", "--out-dir", dir.string(), "verify-generators", "--kind", "scalar",
             "--variant", "minus", "--samples", "25"});
    CHECK(slurp(dir / "verify-generators.json") == first);
}

TEST_CASE("solve1d writes spectrum and doublet tables") {
    const auto dir = fresh_dir("solve1d");
    const auto cfg = write_config(dir, "cfg.json", tensor_quadratic_config());
    const auto r = run_cli({"--out-dir", dir.string(), "solve1d", "--config", cfg.string()});
    CHECK(r.code == 0);
    REQUIRE(r.doc.is_object());
    CHECK(r.doc.at("assertions")[0].at("pass").get<bool>());

    const std::string spectrum = slurp(dir / "spectrum.csv");
    CHECK(spectrum.rfind("index,E,p_plus_weight,block_label,node_count\n", 0) == 0);
    CHECK(std::count(spectrum.begin(), spectrum.end(), '\n') >= 3);
    const std::string doublets = slurp(dir / "doublets.csv");
    CHECK(doublets.rfind("E_a,E_b,splitting\n", 0) == 0);

    // Byte-identical rerun.
    const auto dir2 = fresh_dir("solve1d_b");
    run_cli({"--out-dir", dir2.string(), "solve1d", "--config", cfg.string()});
    CHECK(slurp(dir2 / "spectrum.csv") == spectrum);
}

TEST_CASE("solve1d config errors exit with code 1") {
    const auto dir = fresh_dir("solve1d_err");
    CHECK(run_cli({"solve1d", "--config", (dir / "missing.json").string()}).code == 1);

    json bad = tensor_quadratic_config();
    bad["typo_key"] = 1;
    const auto cfg = write_config(dir, "bad.json", bad);
    const auto r = run_cli({"solve1d", "--config", cfg.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("typo_key") != std::string::npos);

    json violating = tensor_quadratic_config();
    violating["transverse_k"] = {0.1, 0.0};
    const auto cfg2 = write_config(dir, "violating.json", violating);
    const auto r2 = run_cli({"solve1d", "--config", cfg2.string()});
    CHECK(r2.code == 1);
    CHECK(r2.err.find("lambda x p psi = 0") != std::string::npos);
}

TEST_CASE("oracle-compare certifies the symmetric scenario and refuses broken ones") {
    const auto dir = fresh_dir("oracle");
    json cfg = tensor_quadratic_config();
    cfg["levels"] = 2;
    const auto path = write_config(dir, "cfg.json", cfg);
    const auto r =
        run_cli({"--out-dir", dir.string(), "oracle-compare", "--config", path.string()});
    CHECK(r.code == 0);
    CHECK(r.doc.at("residual_maxima").at("max_relative_deviation").get<double>() < 1e-6);
    CHECK(fs::exists(dir / "oracle-compare.csv"));

    json broken = tensor_quadratic_config();
    broken["scenario"] = {{"type", "broken"}, {"base", "spin_like"}, {"C", 0.0},
                          {"strength", 0.05}};
    const auto bpath = write_config(dir, "broken.json", broken);
    const auto rb =
        run_cli({"--out-dir", dir.string(), "oracle-compare", "--config", bpath.string()});
    CHECK(rb.code == 1);
    CHECK(rb.err.find("oracle undefined off-condition") != std::string::npos);
}

TEST_CASE("scan-breaking emits the strength table") {
    const auto dir = fresh_dir("scan");
    json cfg = tensor_quadratic_config();
    cfg["strengths"] = {0.0, 0.01, 0.02};
    const auto path = write_config(dir, "cfg.json", cfg);
    const auto r =
        run_cli({"--out-dir", dir.string(), "scan-breaking", "--config", path.string()});
    CHECK(r.code == 0);
    const std::string scan = slurp(dir / "scan.csv");
    CHECK(scan.rfind("epsilon,max_splitting\n", 0) == 0);
    CHECK(std::count(scan.begin(), scan.end(), '\n') == 4);
    CHECK(r.doc.at("slope").get<double>() > 0.0);
}

TEST_CASE("solve-radial writes spectra and doublets") {
    const auto dir = fresh_dir("radial");
    const json cfg{{"m", 1.0},
                   {"symmetry", "spin"},
                   {"sigma", {{"form", "quadratic"}, {"params", {{"a", 1.0}}}}},
                   {"delta", {{"form", "const"}, {"params", {{"value", 0.0}}}}},
                   {"kappas", {1, -2}},
                   {"r_max", 10.0},
                   {"n_points", 2048},
                   {"window", {1.2, 3.9}},
                   {"cross_check", true}};
    const auto path = write_config(dir, "cfg.json", cfg);
    const auto r =
        run_cli({"--out-dir", dir.string(), "solve-radial", "--config", path.string()});
    CHECK(r.code == 0);
    REQUIRE(r.doc.is_object());
    CHECK(r.doc.at("states").get<int>() >= 2);
    CHECK(r.doc.at("residual_maxima").at("max_splitting").get<double>() < 1e-7);

    const std::string spectrum = slurp(dir / "radial-spectrum.csv");
    CHECK(spectrum.rfind("kappa,n,E,l,l_tilde\n", 0) == 0);
    const std::string doublets = slurp(dir / "radial-doublets.csv");
    CHECK(doublets.rfind("kappa_a,kappa_b,n,E_a,E_b,splitting\n", 0) == 0);
    CHECK(std::count(doublets.begin(), doublets.end(), '\n') >= 2);
    CHECK(r.doc.at("cross_check_max_relative_deviation").get<double>() < 1e-4);
}

TEST_CASE("usage errors and unknown subcommands exit nonzero") {
    CHECK(run_cli({}).code != 0);
    CHECK(run_cli({"frobnicate"}).code != 0);
    CHECK(run_cli({"verify-generators", "--kind", "tensor"}).code == 1);
}
