#include "diracsym/sturm.hpp"

#include <cmath>
#include <limits>

namespace diracsym::sturm {

int count_below(const std::vector<double>& diag, const std::vector<double>& off, double x) {
    const std::size_t n = diag.size();
    int count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n; ++i) {
        const double offsq = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
        d = diag[i] - x - offsq / d;
        if (d == 0.0) d = tiny;  // graze: nudge off the singularity
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace diracsym::sturm
