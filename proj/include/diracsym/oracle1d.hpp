#pragma once

#include "diracsym/grid1d.hpp"
#include "diracsym/profile.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diracsym {

struct OracleLevel {
    int m = 0;                     // level index = node count of the reduced equation
    std::optional<double> energy;  // empty when no root was bracketed
    std::string note;
};

struct OracleOptions {
    int scan_samples = 400;   // window scan used to isolate sign changes
    int grid_points = 65535;  // fine grid of the independent discretization
    bool richardson = true;
    double bisection_tol = 1e-10;
};

struct OracleResult {
    std::vector<OracleLevel> levels;
};

/// Solves p^2 psi = (E - C)(E - f) psi as an energy-dependent linear problem:
/// for trial E the operator A(E) = p^2 + kperp^2 + (E - C) f(q) is assembled
/// and the roots of g_m(E) = mu_m(E) - (E - C) E are located by scanning the
/// window and bisecting. f is V_plus for spin-like profiles and V_minus for
/// pseudospin-like ones (the decoupled component swaps).
///
/// Constant f is handled on the grid's own mode set. Otherwise the operator
/// is discretized independently of the 4-spinor solver: central differences
/// on a Dirichlet box over the same domain, counted by Sturm bisection and
/// Richardson-extrapolated, which assumes the window states decay at the
/// walls. Broken profiles are refused: the reduction does not exist
/// off-condition.
OracleResult schrodinger_oracle(const Grid1D& grid, const PotentialProfile& profile, double k_a,
                                double k_b, int level_count, double emin, double emax,
                                const OracleOptions& opts = {});

}  // namespace diracsym
