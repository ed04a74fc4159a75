#pragma once

#include "diracsym/catalog.hpp"
#include "diracsym/grid1d.hpp"
#include "diracsym/profile.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace diracsym {

/// Plane-wave momenta along the two directions transverse to the grid
/// coordinate: (k_x, k_y) for a z-grid and (k_y, k_z) for an x-grid.
struct TransverseK {
    double a = 0.0;
    double b = 0.0;
};

/// One conserved-label block of the assembled Hamiltonian. comps = 2 when a
/// conserved involution splits the spinor space, 4 for the unlabeled
/// fallback. The block matrix is stored real whenever a componentwise phase
/// rotation makes it real symmetric (always the case for the catalog
/// couplings), complex Hermitian otherwise.
struct SectorBlock {
    int label = 0;
    int comps = 2;
    std::vector<std::complex<double>> basis;  // 4 x comps, basis[c * 4 + i]
    bool realified = false;
    std::vector<double> rmat;
    std::vector<std::complex<double>> cmat;
};

struct Hamiltonian1D {
    Grid1D grid;
    PotentialProfile profile;
    CouplingCandidate coupling;
    TransverseK k;
    std::vector<SectorBlock> sectors;
    std::optional<SpinorMatrix> label_operator;  // numeric 4x4 when sectors are labeled
    std::vector<double> deriv;                   // dense d/dq matrix
    double hermiticity_residual = 0.0;           // relative to the largest entry
};

/// Builds the 4n x 4n slab Hamiltonian
///   H = alpha_q p_q + alpha_a k_a + alpha_b k_b + V_O(q) O + V_v(q)
/// in conserved-sector block form. Couplings with momentum constraints are
/// enforced here: a space-vector coupling along e_z needs an x-grid and
/// k_z = 0 (lambda.p psi = 0); a tensor coupling along e_z needs a z-grid
/// and vanishing transverse momentum (lambda x p psi = 0).
Hamiltonian1D assemble(const Grid1D& grid, const PotentialProfile& profile,
                       const CouplingCandidate& coupling, TransverseK k);

/// Dense 4n x 4n matrix of the same operator, assembled directly from the
/// structure list without the sector decomposition. Cross-check path.
std::vector<std::complex<double>> dense_matrix(const Hamiltonian1D& h);

struct LevelInfo {
    double E = 0.0;
    double p_plus_weight = 0.0;
    int block_label = 0;
    int node_count = 0;
};

struct SpectrumResult {
    std::vector<LevelInfo> levels;                          // ascending in E
    std::vector<std::vector<std::complex<double>>> states;  // 4n amplitudes per level
    double hermiticity_residual = 0.0;
    double emin = 0.0, emax = 0.0;
};

/// All eigenpairs with E in (emin, emax], per sector, merged ascending.
SpectrumResult eigensolve(const Hamiltonian1D& h, double emin, double emax,
                          bool want_vectors = true);

/// Eigenvalue-only fast path: (E, label) pairs ascending.
std::vector<std::pair<double, int>> sector_eigenvalues(const Hamiltonian1D& h, double emin,
                                                       double emax);

struct Doublet {
    double e_a = 0.0, e_b = 0.0;
    double splitting = 0.0;
};

struct DoubletReport {
    std::vector<Doublet> pairs;
    std::vector<LevelInfo> unmatched;
    double max_splitting = 0.0;
    double mean_splitting = 0.0;
};

/// Greedy nearest-energy matching across the +1/-1 label sectors.
DoubletReport pair_doublets(const SpectrumResult& spectrum);

struct SecondOrderResidual {
    bool excluded = false;
    double crossing_q = 0.0;  // closest grid point to the E = V crossing when excluded
    double r_plus = 0.0;      // decoupled-component Schroedinger-type equation
    double r_minus = 0.0;     // coupled component, spin-orbit and Darwin terms included
    double r_minus_no_darwin = 0.0;
};

/// Residuals of the second-order equations for the state at `index`.
/// Spin-like profiles check psi_+ against p^2 psi = (E-C)(E-V_+) psi and
/// psi_- against the equation with the (grad V x p).Sigma and Darwin terms;
/// pseudospin-like profiles swap the component roles.
SecondOrderResidual residual_second_order(const Hamiltonian1D& h, const SpectrumResult& spectrum,
                                          int index);

struct BreakingScanRow {
    double epsilon = 0.0;
    double max_splitting = 0.0;
};

struct BreakingScanResult {
    std::vector<BreakingScanRow> rows;
    double slope = 0.0;  // least-squares slope over the smallest 3 nonzero strengths
};

BreakingScanResult breaking_scan(const Grid1D& grid, const PotentialProfile& base,
                                 const CouplingCandidate& coupling, TransverseK k,
                                 const SampledFunction& shape, BreakingStructure structure,
                                 std::vector<double> strengths, double emin, double emax);

}  // namespace diracsym
