#pragma once

#include <complex>
#include <vector>

namespace diracsym::lapack {

/// Eigenvalues (ascending) of a real symmetric matrix, row-major n*n.
/// The input buffer is destroyed.
std::vector<double> sym_eigenvalues(std::vector<double>& a, int n);

/// Eigenvalues of a complex Hermitian matrix, row-major n*n. Destroys input.
std::vector<double> herm_eigenvalues(std::vector<std::complex<double>>& a, int n);

struct RangeEig {
    std::vector<double> values;                        // ascending, inside [vl, vu]
    std::vector<std::vector<double>> vectors;          // one per value (real path)
    std::vector<std::vector<std::complex<double>>> cvectors;  // complex path
};

/// Eigenpairs of a real symmetric matrix with eigenvalues in (vl, vu].
RangeEig sym_eig_range(std::vector<double>& a, int n, double vl, double vu, bool want_vectors);

/// Eigenpairs of a complex Hermitian matrix with eigenvalues in (vl, vu].
RangeEig herm_eig_range(std::vector<std::complex<double>>& a, int n, double vl, double vu,
                        bool want_vectors);

}  // namespace diracsym::lapack
