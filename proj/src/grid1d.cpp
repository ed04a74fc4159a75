#include "diracsym/grid1d.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace diracsym {

const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "box"; }
const char* to_string(CoordLabel c) { return c == CoordLabel::x ? "x" : "z"; }

Grid1D::Grid1D(int n, double L, Boundary b, CoordLabel lab)
    : n_points(n), length(L), boundary(b), label(lab) {
    if (n < 64) throw std::invalid_argument("grid needs at least 64 points");
    if (L <= 0.0) throw std::invalid_argument("grid length must be positive");
    if (b == Boundary::periodic && n % 2 != 0)
        throw std::invalid_argument("spectral differentiation needs an even point count");
}

double Grid1D::spacing() const {
    return boundary == Boundary::periodic ? length / n_points : length / (n_points + 1);
}

std::vector<double> Grid1D::points() const {
    std::vector<double> q(n_points);
    const double h = spacing();
    for (int j = 0; j < n_points; ++j)
        q[j] = boundary == Boundary::periodic ? -0.5 * length + j * h
                                              : -0.5 * length + (j + 1) * h;
    return q;
}

std::vector<double> derivative_matrix(const Grid1D& grid) {
    const int n = grid.n_points;
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    if (grid.boundary == Boundary::periodic) {
        // Trigonometric collocation for even n; the Nyquist cosine mode is
        // annihilated, which keeps the matrix exactly antisymmetric.
        const double scale = M_PI / grid.length;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                if (j == l) continue;
                const int diff = j - l;
                const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
                d[static_cast<std::size_t>(j) * n + l] =
                    scale * sign / std::tan(M_PI * diff / n);
            }
    } else {
        const double inv2h = 1.0 / (2.0 * grid.spacing());
        for (int j = 0; j + 1 < n; ++j) {
            d[static_cast<std::size_t>(j) * n + j + 1] = inv2h;
            d[static_cast<std::size_t>(j + 1) * n + j] = -inv2h;
        }
    }
    return d;
}

void apply_derivative(const std::vector<double>& d, int n, const std::vector<std::complex<double>>& v,
                      std::vector<std::complex<double>>& out) {
    out.assign(v.size(), 0.0);
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        const double* row = &d[static_cast<std::size_t>(j) * n];
        for (int l = 0; l < n; ++l) acc += row[l] * v[l];
        out[j] = acc;
    }
}

}  // namespace diracsym
