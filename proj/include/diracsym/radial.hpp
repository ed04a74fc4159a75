#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace diracsym {

/// Relativistic angular quantum number bookkeeping. kappa(kappa+1) = l(l+1)
/// fixes the upper-component orbital l; kappa(kappa-1) = lt(lt+1) the lower.
struct KappaChannel {
    int kappa;

    explicit KappaChannel(int k) : kappa(k) {
        if (k == 0) throw_invalid();
    }
    int l() const { return kappa > 0 ? kappa : -kappa - 1; }
    int l_tilde() const { return kappa > 0 ? kappa - 1 : -kappa; }

    /// Partner sharing l (spin doublets): {kappa = l, kappa = -(l+1)}.
    static int spin_partner(int kappa) { return -kappa - 1; }
    /// Partner sharing l_tilde (pseudospin doublets).
    static int pseudospin_partner(int kappa) { return 1 - kappa; }

  private:
    [[noreturn]] static void throw_invalid();
};

enum class RadialSymmetry { spin, pseudospin, none };

const char* to_string(RadialSymmetry s);

/// Spherical scalar+vector mean fields through the nuclear combinations
/// Sigma = V + S and Delta = V - S; the mass term is kept separate.
struct RadialPotentials {
    double m = 0.0;
    std::function<double(double)> sigma;
    std::function<double(double)> delta;
};

struct RadialGrid {
    double r_max = 12.0;
    int n_points = 16384;

    RadialGrid(double R, int n);
    double h() const { return r_max / n_points; }
};

struct BoundState {
    double E = 0.0;
    int kappa = 0;
    int n = 0;        // node count of the dominant component
    int nodes_g = 0;  // upper-component nodes
    int nodes_f = 0;  // lower-component nodes
    std::vector<double> G, F;  // on r_j = j h, j = 1..n_points, unit L2 norm
    double match_radius = 0.0;
};

struct RadialSolveOptions {
    int scan_samples = 400;
    double bisection_tol = 1e-10;
};

/// Bound states of the coupled radial equations
///   G' + (kappa/r) G = [E + m - Delta] F
///   F' - (kappa/r) F = -[E - m - Sigma] G
/// by two-sided shooting (series start at the origin, decaying start at
/// r_max) matched at the classical midpoint, scanning the window and
/// bisecting the matching determinant. An empty window is an empty result,
/// not an error.
std::vector<BoundState> solve_channel(const RadialPotentials& pot, const RadialGrid& grid,
                                      int kappa, double emin, double emax,
                                      const RadialSolveOptions& opts = {});

/// Transcendental level relation for quadratic confinement:
///   spin       (Delta = 0, Sigma = a r^2): E^2 - m^2 = 2 sqrt((E+m) a) (2n + l + 3/2)
///   pseudospin (Sigma = 0, Delta = a r^2): E^2 - m^2 = 2 sqrt((E-m) a) (2n + lt + 3/2)
/// solved by bisection to 1e-12. Independent of the shooting path.
double oscillator_oracle(double a, double m, int n, int kappa, RadialSymmetry which);

struct RadialDoublet {
    int kappa_a = 0, kappa_b = 0;
    int n = 0;
    double e_a = 0.0, e_b = 0.0;
    double splitting = 0.0;
};

struct RadialDoubletReport {
    std::vector<RadialDoublet> pairs;
    std::vector<std::string> unmatched;  // "kappa=1 n=2" style flags
    double max_splitting = 0.0;
};

/// Pairs (n, kappa) with (n, spin_partner) in spin mode and with
/// (n, 1 - kappa) in pseudospin mode, matching on the node count of the
/// component that stays symmetric.
RadialDoubletReport doublet_report(const std::map<int, std::vector<BoundState>>& by_channel,
                                   RadialSymmetry mode);

/// f(r) = depth / (1 + exp((r - radius)/diffuseness)).
std::function<double(double)> woods_saxon(double depth, double radius, double diffuseness);

/// Sturm-count diagonalization of the reduced second-order equation, valid
/// when the non-confining combination is constant (spin: Delta = C;
/// pseudospin: Sigma = C). Cross-check route behind the CLI flag.
std::vector<double> radial_grid_diagonalization(const RadialPotentials& pot,
                                                const RadialGrid& grid, int kappa,
                                                RadialSymmetry which, double C, double emin,
                                                double emax, int level_count);

}  // namespace diracsym
