#pragma once

#include <complex>
#include <string>
#include <vector>

namespace diracsym {

enum class Boundary { periodic, box };
enum class CoordLabel { x, z };

const char* to_string(Boundary b);
const char* to_string(CoordLabel c);

/// Uniform 1D grid on [-L/2, L/2). Periodic grids carry n points with
/// spacing L/n; box grids carry n interior points with spacing L/(n+1) and
/// hard walls at +-L/2.
struct Grid1D {
    int n_points;
    double length;
    Boundary boundary;
    CoordLabel label;

    Grid1D(int n, double L, Boundary b, CoordLabel lab);

    double spacing() const;
    std::vector<double> points() const;
};

/// Dense first-derivative matrix d/dq, row-major n*n, real antisymmetric.
/// Periodic grids use trigonometric (spectral) collocation; box grids use
/// second-order central differences with Dirichlet walls.
std::vector<double> derivative_matrix(const Grid1D& grid);

/// y = D v for the dense derivative matrix (column-walk, real coefficients,
/// complex data).
void apply_derivative(const std::vector<double>& d, int n, const std::vector<std::complex<double>>& v,
                      std::vector<std::complex<double>>& out);

}  // namespace diracsym
