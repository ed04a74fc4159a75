#pragma once

#include <vector>

namespace diracsym::sturm {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x, by the LDL^T inertia recurrence.
int count_below(const std::vector<double>& diag, const std::vector<double>& off, double x);

}  // namespace diracsym::sturm
