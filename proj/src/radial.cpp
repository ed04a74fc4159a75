#include "diracsym/radial.hpp"

#include "diracsym/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace diracsym {

void KappaChannel::throw_invalid() { throw std::invalid_argument("kappa must be nonzero"); }

const char* to_string(RadialSymmetry s) {
    switch (s) {
        case RadialSymmetry::spin: return "spin";
        case RadialSymmetry::pseudospin: return "pseudospin";
        case RadialSymmetry::none: return "none";
    }
    return "?";
}

RadialGrid::RadialGrid(double R, int n) : r_max(R), n_points(n) {
    if (R <= 0.0) throw std::invalid_argument("r_max must be positive");
    if (n < 256) throw std::invalid_argument("radial grid needs at least 256 points");
}

namespace {

struct ChannelWork {
    const RadialPotentials* pot;
    RadialGrid grid;
    int kappa;
    int l;
    std::vector<double> sigma_half;  // sampled at r = j h/2, j = 1..2n
    std::vector<double> delta_half;

    double sigma_at(int half_index) const { return sigma_half[half_index - 1]; }
    double delta_at(int half_index) const { return delta_half[half_index - 1]; }
};

ChannelWork prepare(const RadialPotentials& pot, const RadialGrid& grid, int kappa) {
    ChannelWork w{&pot, grid, kappa, KappaChannel(kappa).l(), {}, {}};
    const int n2 = 2 * grid.n_points;
    w.sigma_half.resize(n2);
    w.delta_half.resize(n2);
    const double h2 = 0.5 * grid.h();
    for (int j = 1; j <= n2; ++j) {
        const double r = j * h2;
        w.sigma_half[j - 1] = pot.sigma ? pot.sigma(r) : 0.0;
        w.delta_half[j - 1] = pot.delta ? pot.delta(r) : 0.0;
    }
    return w;
}

struct ShootSide {
    double g = 0.0, f = 0.0;  // values at the matching point
    int nodes_g = 0;
    int nodes_f = 0;
};

struct Pair {
    double g, f;
};

// One RK4 step of the linear system at half-grid resolution. dir = +-1.
inline Pair rk4_step(const ChannelWork& w, double E, int half_index_from, int dir, Pair y) {
    const double h = dir * w.grid.h();
    const double kap = w.kappa;
    auto deriv = [&](int hi, const Pair& u) {
        const double r = hi * 0.5 * w.grid.h();
        const double a = E + w.pot->m - w.delta_at(hi);
        const double b = E - w.pot->m - w.sigma_at(hi);
        return Pair{-kap / r * u.g + a * u.f, kap / r * u.f - b * u.g};
    };
    const int mid = half_index_from + dir;
    const int to = half_index_from + 2 * dir;
    const Pair k1 = deriv(half_index_from, y);
    const Pair k2 = deriv(mid, {y.g + 0.5 * h * k1.g, y.f + 0.5 * h * k1.f});
    const Pair k3 = deriv(mid, {y.g + 0.5 * h * k2.g, y.f + 0.5 * h * k2.f});
    const Pair k4 = deriv(to, {y.g + h * k3.g, y.f + h * k3.f});
    return {y.g + h / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g),
            y.f + h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f)};
}

Pair origin_series(const ChannelWork& w, double E) {
    const double r1 = w.grid.h();
    const int l = w.l;
    const double g0 = std::pow(r1, l + 1);
    if (w.kappa > 0) {
        const double denom = E + w.pot->m - w.delta_at(2);
        return {g0, (2.0 * w.kappa + 1.0) * std::pow(r1, l) /
                        (std::abs(denom) > 1e-14 ? denom : 1e-14)};
    }
    return {g0, -(E - w.pot->m - w.sigma_at(2)) * std::pow(r1, l + 2) / (2.0 * l + 3.0)};
}

Pair outer_decay(const ChannelWork& w, double E) {
    const int n = w.grid.n_points;
    const double r = w.grid.r_max;
    const double a = E + w.pot->m - w.delta_at(2 * n);
    const double b = E - w.pot->m - w.sigma_at(2 * n);
    const double lam2 = w.kappa * (w.kappa + 1) / (r * r) - a * b;
    const double lam = std::sqrt(std::max(lam2, 1e-8));
    const double g = 1.0;
    const double gp = -lam;
    const double denom = std::abs(a) > 1e-14 ? a : 1e-14;
    return {g, (gp + w.kappa / r * g) / denom};
}

// Integrates from grid index `from` to `to` (inclusive endpoints), recording
// values when a buffer is supplied. Rescales on overflow; the returned side
// carries matching-point values in the final scaling.
ShootSide integrate(const ChannelWork& w, double E, int from, int to, Pair y,
                    std::vector<double>* gbuf, std::vector<double>* fbuf) {
    const int dir = to >= from ? 1 : -1;
    ShootSide side;
    double prev_g = y.g, prev_f = y.f;
    if (gbuf) {
        (*gbuf)[from - 1] = y.g;
        (*fbuf)[from - 1] = y.f;
    }
    for (int j = from; j != to; j += dir) {
        y = rk4_step(w, E, 2 * j, dir, y);
        const double mag = std::max(std::abs(y.g), std::abs(y.f));
        if (mag > 1e100) {
            const double s = 1.0 / mag;
            y.g *= s;
            y.f *= s;
            prev_g *= s;
            prev_f *= s;
            if (gbuf) {
                for (double& v : *gbuf) v *= s;
                for (double& v : *fbuf) v *= s;
            }
        }
        if (gbuf) {
            (*gbuf)[j + dir - 1] = y.g;
            (*fbuf)[j + dir - 1] = y.f;
        }
        if (prev_g != 0.0 && y.g != 0.0 && (prev_g < 0.0) != (y.g < 0.0)) ++side.nodes_g;
        if (prev_f != 0.0 && y.f != 0.0 && (prev_f < 0.0) != (y.f < 0.0)) ++side.nodes_f;
        prev_g = y.g;
        prev_f = y.f;
    }
    side.g = y.g;
    side.f = y.f;
    return side;
}

int match_index(const ChannelWork& w, double E) {
    // Midpoint of the classically allowed region of the upper-component
    // second-order equation, clamped into the grid interior.
    const int n = w.grid.n_points;
    int outer = -1;
    for (int j = n; j >= 1; --j) {
        const double r = j * w.grid.h();
        const double a = E + w.pot->m - w.delta_at(2 * j);
        const double b = E - w.pot->m - w.sigma_at(2 * j);
        const double k2 = a * b - w.l * (w.l + 1) / (r * r);
        if (k2 > 0.0) {
            outer = j;
            break;
        }
    }
    if (outer < 0) return std::max(16, n / 3);
    return std::clamp(outer / 2, 16, n - 16);
}

struct MatchEval {
    double det = 0.0;
    int nodes_g = 0;
    int nodes_f = 0;
};

MatchEval evaluate(const ChannelWork& w, double E, int jm) {
    const int n = w.grid.n_points;
    const ShootSide out = integrate(w, E, 1, jm, origin_series(w, E), nullptr, nullptr);
    const ShootSide in = integrate(w, E, n, jm, outer_decay(w, E), nullptr, nullptr);
    MatchEval ev;
    const double scale =
        (std::abs(out.g) + std::abs(out.f)) * (std::abs(in.g) + std::abs(in.f));
    ev.det = scale > 0.0 ? (out.g * in.f - in.g * out.f) / scale : 0.0;
    ev.nodes_g = out.nodes_g + in.nodes_g;
    ev.nodes_f = out.nodes_f + in.nodes_f;
    return ev;
}

BoundState build_state(const ChannelWork& w, double E, int jm) {
    const int n = w.grid.n_points;
    std::vector<double> g_out(n, 0.0), f_out(n, 0.0), g_in(n, 0.0), f_in(n, 0.0);
    integrate(w, E, 1, jm, origin_series(w, E), &g_out, &f_out);
    integrate(w, E, n, jm, outer_decay(w, E), &g_in, &f_in);

    // Scale the inward solution onto the outward one at the match point,
    // preferring the larger component for the ratio.
    const double go = g_out[jm - 1], fo = f_out[jm - 1];
    const double gi = g_in[jm - 1], fi = f_in[jm - 1];
    const double s = std::abs(gi) > std::abs(fi) ? go / gi : fo / fi;

    BoundState state;
    state.E = E;
    state.kappa = w.kappa;
    state.match_radius = jm * w.grid.h();
    state.G.resize(n);
    state.F.resize(n);
    for (int j = 0; j < n; ++j) {
        state.G[j] = j + 1 <= jm ? g_out[j] : s * g_in[j];
        state.F[j] = j + 1 <= jm ? f_out[j] : s * f_in[j];
    }

    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) norm2 += state.G[j] * state.G[j] + state.F[j] * state.F[j];
    norm2 *= w.grid.h();
    const double inv = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 1.0;
    for (int j = 0; j < n; ++j) {
        state.G[j] *= inv;
        state.F[j] *= inv;
    }

    double gnorm = 0.0, fnorm = 0.0;
    for (int j = 0; j < n; ++j) {
        gnorm += state.G[j] * state.G[j];
        fnorm += state.F[j] * state.F[j];
    }
    auto nodes_of = [&](const std::vector<double>& v) {
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        int nodes = 0;
        double prev = 0.0;
        bool have = false;
        for (double x : v) {
            if (std::abs(x) < 1e-8 * peak) continue;
            if (have && x * prev < 0.0) ++nodes;
            prev = x;
            have = true;
        }
        return nodes;
    };
    state.nodes_g = nodes_of(state.G);
    state.nodes_f = nodes_of(state.F);
    state.n = gnorm >= fnorm ? state.nodes_g : state.nodes_f;
    return state;
}

}  // namespace

std::vector<BoundState> solve_channel(const RadialPotentials& pot, const RadialGrid& grid,
                                      int kappa, double emin, double emax,
                                      const RadialSolveOptions& opts) {
    if (!(emin < emax)) throw std::invalid_argument("empty energy window");
    const ChannelWork w = prepare(pot, grid, kappa);

    std::vector<BoundState> states;
    const int samples = std::max(16, opts.scan_samples);
    // One matching radius per window; any interior matching point leaves the
    // determinant zeros at the eigenvalues.
    const int jm = match_index(w, 0.5 * (emin + emax));
    double prev_e = emin;
    MatchEval prev = evaluate(w, emin, jm);
    for (int s = 1; s <= samples; ++s) {
        const double e = emin + (emax - emin) * s / samples;
        const MatchEval cur = evaluate(w, e, jm);
        if ((prev.det < 0.0) != (cur.det < 0.0)) {
            double lo = prev_e, hi = e;
            const bool lo_sign = prev.det < 0.0;
            for (int it = 0; it < 200 && hi - lo > opts.bisection_tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                const MatchEval me = evaluate(w, mid, jm);
                if ((me.det < 0.0) == lo_sign)
                    lo = mid;
                else
                    hi = mid;
            }
            states.push_back(build_state(w, 0.5 * (lo + hi), jm));
        }
        prev_e = e;
        prev = cur;
    }

    std::sort(states.begin(), states.end(),
              [](const BoundState& a, const BoundState& b) { return a.E < b.E; });
    states.erase(std::unique(states.begin(), states.end(),
                             [](const BoundState& a, const BoundState& b) {
                                 return std::abs(a.E - b.E) <
                                        1e-8 * std::max(1.0, std::abs(a.E));
                             }),
                 states.end());
    return states;
}

double oscillator_oracle(double a, double m, int n, int kappa, RadialSymmetry which) {
    if (a <= 0.0) throw std::invalid_argument("quadratic coefficient must be positive");
    if (which == RadialSymmetry::none)
        throw std::invalid_argument("oracle needs a symmetry branch");
    const KappaChannel ch(kappa);
    const double orbital = which == RadialSymmetry::spin ? ch.l() : ch.l_tilde();
    const double count = 2.0 * n + orbital + 1.5;

    auto relation = [&](double e) {
        const double shifted = which == RadialSymmetry::spin ? e + m : e - m;
        return e * e - m * m - 2.0 * std::sqrt(std::max(shifted, 0.0) * a) * count;
    };
    double lo = m + 1e-9, hi = std::max(2.0 * m + 1.0, 10.0);
    while (relation(hi) < 0.0) hi *= 2.0;
    if (relation(lo) > 0.0) throw std::runtime_error("no oracle root above the mass shell");
    for (int it = 0; it < 300 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (relation(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RadialDoubletReport doublet_report(const std::map<int, std::vector<BoundState>>& by_channel,
                                   RadialSymmetry mode) {
    if (mode == RadialSymmetry::none)
        throw std::invalid_argument("doublet pairing needs a symmetry mode");
    RadialDoubletReport report;
    auto node_key = [&](const BoundState& s) {
        return mode == RadialSymmetry::spin ? s.nodes_g : s.nodes_f;
    };

    std::vector<std::pair<int, int>> visited;  // (kappa, node)
    for (const auto& [kappa, states] : by_channel) {
        const int partner_kappa = mode == RadialSymmetry::spin
                                      ? KappaChannel::spin_partner(kappa)
                                      : KappaChannel::pseudospin_partner(kappa);
        const auto partner_it = by_channel.find(partner_kappa);
        for (const auto& state : states) {
            const int n = node_key(state);
            if (std::find(visited.begin(), visited.end(), std::pair{partner_kappa, n}) !=
                visited.end())
                continue;  // already paired from the partner's side
            visited.emplace_back(kappa, n);

            const BoundState* partner = nullptr;
            if (partner_it != by_channel.end()) {
                for (const auto& cand : partner_it->second)
                    if (node_key(cand) == n) partner = &cand;
            }
            if (!partner) {
                std::ostringstream os;
                os << "kappa=" << kappa << " n=" << n << " E=" << state.E
                   << " has no partner in kappa=" << partner_kappa;
                report.unmatched.push_back(os.str());
                continue;
            }
            RadialDoublet d;
            d.kappa_a = kappa;
            d.kappa_b = partner_kappa;
            d.n = n;
            d.e_a = state.E;
            d.e_b = partner->E;
            d.splitting = std::abs(state.E - partner->E);
            report.pairs.push_back(d);
            report.max_splitting = std::max(report.max_splitting, d.splitting);
        }
    }
    return report;
}

std::function<double(double)> woods_saxon(double depth, double radius, double diffuseness) {
    if (radius <= 0.0) throw std::invalid_argument("woods-saxon radius must be positive");
    if (diffuseness <= 0.0) throw std::invalid_argument("woods-saxon diffuseness must be positive");
    return [=](double r) { return depth / (1.0 + std::exp((r - radius) / diffuseness)); };
}

std::vector<double> radial_grid_diagonalization(const RadialPotentials& pot,
                                                const RadialGrid& grid, int kappa,
                                                RadialSymmetry which, double C, double emin,
                                                double emax, int level_count) {
    if (which == RadialSymmetry::none)
        throw std::invalid_argument("grid diagonalization cross-check needs a symmetry branch");
    const KappaChannel ch(kappa);
    const int n = grid.n_points;
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const double cent =
        which == RadialSymmetry::spin ? ch.l() * (ch.l() + 1.0) : ch.l_tilde() * (ch.l_tilde() + 1.0);

    std::vector<double> confine(n);
    for (int j = 0; j < n; ++j) {
        const double r = (j + 1) * h;
        confine[j] = which == RadialSymmetry::spin ? (pot.sigma ? pot.sigma(r) : 0.0)
                                                   : (pot.delta ? pot.delta(r) : 0.0);
    }

    auto count = [&](double E) {
        const double pref = which == RadialSymmetry::spin ? E + pot.m - C : E - pot.m - C;
        const double tau = which == RadialSymmetry::spin ? pref * (E - pot.m) : pref * (E + pot.m);
        std::vector<double> diag(n);
        for (int j = 0; j < n; ++j) {
            const double r = (j + 1) * h;
            diag[j] = 2.0 * inv_h2 + cent / (r * r) + pref * confine[j] - tau;
        }
        std::vector<double> off(std::max(0, n - 1), -inv_h2);
        return sturm::count_below(diag, off, 0.0);
    };

    std::vector<double> out;
    for (int m = 0; m < level_count; ++m) {
        const int target = m + 1;
        if (count(emin) >= target) continue;
        if (count(emax) < target) break;
        double lo = emin, hi = emax;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (count(mid) >= target)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace diracsym
