#include "diracsym/oracle1d.hpp"

#include "diracsym/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace diracsym {

namespace {

// Local cubic Lagrange resampling of uniform-grid samples.
double interp_cubic(const std::vector<double>& samples, double q0, double h, double q) {
    const int n = static_cast<int>(samples.size());
    double t = (q - q0) / h;
    int j = static_cast<int>(std::floor(t)) - 1;
    j = std::clamp(j, 0, n - 4);
    const double x = t - j;
    double out = 0.0;
    for (int k = 0; k < 4; ++k) {
        double w = 1.0;
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            w *= (x - l) / (k - l);
        }
        out += w * samples[j + k];
    }
    return out;
}

struct SturmProblem {
    std::vector<double> f;  // potential samples on the box grid
    double h = 0.0;
    double kperp2 = 0.0;
    double C = 0.0;

    // eigenvalue count of A(E) below (E - C) E
    int count(double E) const {
        const int n = static_cast<int>(f.size());
        const double inv_h2 = 1.0 / (h * h);
        const double ec = E - C;
        const double tau = ec * E;
        std::vector<double> diag(n);
        for (int i = 0; i < n; ++i) diag[i] = 2.0 * inv_h2 + kperp2 + ec * f[i] - tau;
        std::vector<double> off(std::max(0, n - 1), -inv_h2);
        return sturm::count_below(diag, off, 0.0);
    }
};

struct LevelRoot {
    bool found = false;
    double energy = 0.0;
    std::string note;
};

// Scan the window once, then bisect every requested level's jump of N(E).
std::vector<LevelRoot> locate_levels(const std::function<int(double)>& N, int level_count,
                                     double emin, double emax, int scan_samples, double tol) {
    std::vector<double> es(scan_samples + 1);
    std::vector<int> ns(scan_samples + 1);
    for (int s = 0; s <= scan_samples; ++s) {
        es[s] = emin + (emax - emin) * s / scan_samples;
        ns[s] = N(es[s]);
    }

    std::vector<LevelRoot> out(level_count);
    for (int m = 0; m < level_count; ++m) {
        const int target = m + 1;
        if (ns[0] >= target) {
            out[m].note = "level " + std::to_string(m) + " lies below the window";
            continue;
        }
        int bracket = -1;
        for (int s = 1; s <= scan_samples; ++s) {
            if (ns[s - 1] < target && ns[s] >= target) {
                bracket = s;
                break;
            }
        }
        if (bracket < 0) {
            out[m].note = "no root for level " + std::to_string(m) + " in window";
            continue;
        }
        double lo = es[bracket - 1], hi = es[bracket];
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (N(mid) >= target)
                hi = mid;
            else
                lo = mid;
        }
        out[m].found = true;
        out[m].energy = 0.5 * (lo + hi);
    }
    return out;
}

std::vector<double> grid_mode_ksq(const Grid1D& grid) {
    std::vector<double> ksq;
    ksq.reserve(grid.n_points);
    if (grid.boundary == Boundary::periodic) {
        const double base = 2.0 * M_PI / grid.length;
        ksq.push_back(0.0);
        for (int j = 1; j < grid.n_points / 2; ++j) {
            const double k = base * j;
            ksq.push_back(k * k);
            ksq.push_back(k * k);
        }
        const double knyq = base * (grid.n_points / 2);
        ksq.push_back(knyq * knyq);
    } else {
        const double base = M_PI / grid.length;
        for (int m = 1; m <= grid.n_points; ++m) {
            const double k = base * m;
            ksq.push_back(k * k);
        }
    }
    std::sort(ksq.begin(), ksq.end());
    return ksq;
}

}  // namespace

OracleResult schrodinger_oracle(const Grid1D& grid, const PotentialProfile& profile, double k_a,
                                double k_b, int level_count, double emin, double emax,
                                const OracleOptions& opts) {
    if (profile.scenario == ScenarioType::Broken)
        throw std::invalid_argument("oracle undefined off-condition");
    if (level_count <= 0) throw std::invalid_argument("level count must be positive");
    if (!(emin < emax)) throw std::invalid_argument("empty energy window");
    if (profile.size() != grid.n_points)
        throw std::invalid_argument("profile is not sampled on the grid");

    const bool spin_like = profile.scenario == ScenarioType::SpinLike;
    const std::vector<double> f = spin_like ? profile.v_plus() : profile.v_minus();
    const double C = profile.C;
    const double kperp2 = k_a * k_a + k_b * k_b;

    OracleResult out;
    out.levels.resize(level_count);
    for (int m = 0; m < level_count; ++m) out.levels[m].m = m;

    double fmax = 0.0, fdev = 0.0;
    for (double v : f) fmax = std::max(fmax, std::abs(v));
    for (double v : f) fdev = std::max(fdev, std::abs(v - f[0]));

    if (fdev <= 1e-14 * std::max(1.0, fmax)) {
        // Constant potential: mu_m(E) = k_m^2 + kperp^2 + (E - C) f0 on the
        // grid's own mode set.
        const std::vector<double> ksq = grid_mode_ksq(grid);
        const double f0 = f[0];
        auto N = [&](double E) {
            const double tau = (E - C) * E - (E - C) * f0 - kperp2;
            int cnt = 0;
            for (double k2 : ksq)
                if (k2 < tau) ++cnt;
            return cnt;
        };
        const auto roots =
            locate_levels(N, level_count, emin, emax, opts.scan_samples, opts.bisection_tol);
        for (int m = 0; m < level_count; ++m) {
            if (roots[m].found)
                out.levels[m].energy = roots[m].energy;
            else
                out.levels[m].note = roots[m].note;
        }
        return out;
    }

    // Independent discretization: Dirichlet box over the same domain.
    const auto solve_on = [&](int n_box) {
        SturmProblem prob;
        prob.h = grid.length / (n_box + 1);
        prob.kperp2 = kperp2;
        prob.C = C;
        prob.f.resize(n_box);
        const auto src_q = grid.points();
        for (int i = 0; i < n_box; ++i) {
            const double q = -0.5 * grid.length + (i + 1) * prob.h;
            prob.f[i] = profile.confining.has_form()
                            ? profile.confining.form(q)
                            : interp_cubic(f, src_q.front(), grid.spacing(), q);
        }
        auto N = [&](double E) { return prob.count(E); };
        return locate_levels(N, level_count, emin, emax, opts.scan_samples, opts.bisection_tol);
    };

    const int n_fine = std::max(opts.grid_points, 4 * grid.n_points - 1);
    const auto fine = solve_on(n_fine);
    if (!opts.richardson) {
        for (int m = 0; m < level_count; ++m) {
            if (fine[m].found)
                out.levels[m].energy = fine[m].energy;
            else
                out.levels[m].note = fine[m].note;
        }
        return out;
    }

    const int n_coarse = (n_fine + 1) / 2 - 1;  // exactly doubles the spacing
    const auto coarse = solve_on(n_coarse);
    for (int m = 0; m < level_count; ++m) {
        if (fine[m].found && coarse[m].found) {
            out.levels[m].energy = (4.0 * fine[m].energy - coarse[m].energy) / 3.0;
        } else if (fine[m].found) {
            out.levels[m].energy = fine[m].energy;
            out.levels[m].note = "coarse-grid companion missing; no extrapolation";
        } else {
            out.levels[m].note = fine[m].note;
        }
    }
    return out;
}

}  // namespace diracsym
