#include "diracsym/solver1d.hpp"

#include "diracsym/lapack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diracsym {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

struct Structure {
    SpinorMatrix matrix;          // numeric 4x4
    std::vector<double> samples;  // coefficient per grid point (constants expanded)
};

int coord_axis(CoordLabel label) { return label == CoordLabel::x ? 0 : 2; }

std::pair<SpinorMatrix, SpinorMatrix> projectors_numeric(const CouplingCandidate& coupling) {
    const SpinorMatrix O = coupling.matrix.to_numeric();
    const SpinorMatrix id = SpinorMatrix::identity(Mode::numeric);
    return {(id + O).scaled(C(0.5)), (id - O).scaled(C(0.5))};
}

// Transverse axis indices (a, b) for a given grid coordinate.
std::pair<int, int> transverse_axes(CoordLabel label) {
    return label == CoordLabel::x ? std::pair{1, 2} : std::pair{0, 1};
}

bool is_unit_ez(const Vec3& v) {
    return std::abs(v[0]) < 1e-12 && std::abs(v[1]) < 1e-12 && std::abs(v[2] - 1.0) < 1e-12;
}

void enforce_constraints(const Grid1D& grid, const CouplingCandidate& coupling, TransverseK k) {
    if (coupling.kind == CouplingKind::SpaceVector) {
        if (!coupling.axis || !is_unit_ez(coupling.axis->numeric))
            throw std::invalid_argument(
                "slab solver supports space-vector couplings along e_z only");
        if (grid.label != CoordLabel::x)
            throw std::invalid_argument(
                "space-vector coupling rejected: profile must vary transverse to the axis "
                "(lambda.p psi = 0 requires an x-grid)");
        if (k.b != 0.0)
            throw std::invalid_argument(
                "space-vector coupling rejected: k_z != 0 violates lambda.p psi = 0");
    }
    if (coupling.kind == CouplingKind::Tensor) {
        if (!coupling.axis || !is_unit_ez(coupling.axis->numeric))
            throw std::invalid_argument("slab solver supports tensor couplings along e_z only");
        if (grid.label != CoordLabel::z)
            throw std::invalid_argument(
                "tensor coupling rejected: profile must vary along the axis "
                "(lambda x p psi = 0 requires a z-grid)");
        if (k.a != 0.0 || k.b != 0.0)
            throw std::invalid_argument(
                "tensor coupling rejected: transverse momentum violates lambda x p psi = 0");
    }
}

std::vector<Structure> build_structures(const Grid1D& grid, const PotentialProfile& profile,
                                        const CouplingCandidate& coupling, TransverseK k) {
    const auto& g = GammaBasis::dirac();
    const int n = grid.n_points;
    auto [ia, ib] = transverse_axes(grid.label);

    std::vector<Structure> out;
    auto all_zero = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };

    if (k.a != 0.0)
        out.push_back({g.alpha[ia].to_numeric(), std::vector<double>(n, k.a)});
    if (k.b != 0.0)
        out.push_back({g.alpha[ib].to_numeric(), std::vector<double>(n, k.b)});
    if (!all_zero(profile.V_O)) out.push_back({coupling.matrix.to_numeric(), profile.V_O});
    if (!all_zero(profile.V_v))
        out.push_back({SpinorMatrix::identity(Mode::numeric), profile.V_v});
    if (profile.scenario == ScenarioType::Broken &&
        profile.structure == BreakingStructure::Pseudoscalar && profile.strength != 0.0) {
        std::vector<double> w(n);
        for (int i = 0; i < n; ++i) w[i] = profile.strength * profile.breaking_shape[i];
        out.push_back({(g.beta * g.gamma5).scaled(ExactComplex::unit_i()).to_numeric(), w});
    }
    return out;
}

// Conserved-involution candidates for the structure set at hand. The first
// Hermitian involution commuting with the kinetic alpha_q and every potential
// structure labels the sectors.
std::vector<SpinorMatrix> label_candidates(const Grid1D& grid, TransverseK k) {
    const auto& g = GammaBasis::dirac();
    const int qi = coord_axis(grid.label);
    auto [ia, ib] = transverse_axes(grid.label);

    const double kn = std::hypot(k.a, k.b);
    SpinorMatrix alpha_t = kn > 0.0 ? (g.alpha[ia].to_numeric().scaled(C(k.a / kn)) +
                                       g.alpha[ib].to_numeric().scaled(C(k.b / kn)))
                                    : g.alpha[ia].to_numeric();
    const SpinorMatrix aq = g.alpha[qi].to_numeric();
    const SpinorMatrix beta = g.beta.to_numeric();
    const SpinorMatrix g5 = g.gamma5.to_numeric();

    return {
        g.sigma[qi].to_numeric(),             // lambda.Sigma along the grid axis
        g5,                                   // chirality-like label
        (beta * alpha_t * aq).scaled(kI),     // planar-momentum spin label, scalar coupling
        alpha_t * aq * beta * g5,             // planar-momentum label, pseudoscalar coupling
    };
}

std::optional<SpinorMatrix> pick_label_operator(const std::vector<SpinorMatrix>& candidates,
                                                const SpinorMatrix& kinetic,
                                                const std::vector<Structure>& structures) {
    for (const auto& m : candidates) {
        if (!m.is_hermitian(1e-13)) continue;
        if (!(m * m).is_identity(1e-13)) continue;
        if (!commutator(m, kinetic).is_zero(1e-13)) continue;
        bool ok = true;
        for (const auto& s : structures)
            if (!commutator(m, s.matrix).is_zero(1e-13)) ok = false;
        if (ok) return m;
    }
    return std::nullopt;
}

using Basis4x2 = std::array<C, 8>;  // basis[c * 4 + i]

// Orthonormal basis of the label-operator eigenspace, rotated so the kinetic
// structure reduces to [[0,1],[1,0]] and phased so the assembled block is
// real whenever the remaining structures allow it.
Basis4x2 sector_basis(const SpinorMatrix& label_op, int sign, const SpinorMatrix& kinetic) {
    // Projector columns -> rank-2 orthonormal set.
    std::array<std::array<C, 4>, 4> proj{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            proj[c][r] = 0.5 * ((r == c ? 1.0 : 0.0) + double(sign) * label_op.value(r, c));

    std::array<std::array<C, 4>, 2> base{};
    int found = 0;
    for (int c = 0; c < 4 && found < 2; ++c) {
        std::array<C, 4> v = proj[c];
        for (int k = 0; k < found; ++k) {
            C overlap = 0.0;
            for (int i = 0; i < 4; ++i) overlap += std::conj(base[k][i]) * v[i];
            for (int i = 0; i < 4; ++i) v[i] -= overlap * base[k][i];
        }
        double nrm = 0.0;
        for (int i = 0; i < 4; ++i) nrm += std::norm(v[i]);
        if (nrm < 1e-20) continue;
        nrm = std::sqrt(nrm);
        for (int i = 0; i < 4; ++i) base[found][i] = v[i] / nrm;
        ++found;
    }
    if (found != 2) throw std::runtime_error("label operator eigenspace is not two-dimensional");

    // Kinetic structure inside the sector.
    std::array<std::array<C, 2>, 2> kin{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            C acc = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    acc += std::conj(base[r][i]) * kinetic.value(i, j) * base[c][j];
            kin[r][c] = acc;
        }

    // kin is a traceless Hermitian involution [[a, b],[conj(b), -a]].
    const double a = kin[0][0].real();
    const C b = kin[0][1];
    std::array<C, 2> vp, vm;
    if (std::abs(b) < 1e-14) {
        vp = a > 0 ? std::array<C, 2>{1.0, 0.0} : std::array<C, 2>{0.0, 1.0};
        vm = a > 0 ? std::array<C, 2>{0.0, 1.0} : std::array<C, 2>{1.0, 0.0};
    } else {
        vp = {b, C(1.0 - a)};
        vm = {b, C(-(1.0 + a))};
    }
    auto canonize = [](std::array<C, 2>& v) {
        double nrm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        for (auto& x : v) x /= nrm;
        const int lead = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
        const C phase = v[lead] / std::abs(v[lead]);
        for (auto& x : v) x /= phase;
    };
    canonize(vp);
    canonize(vm);

    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    std::array<C, 2> b1{(vp[0] + vm[0]) * inv_rt2, (vp[1] + vm[1]) * inv_rt2};
    std::array<C, 2> b2{(vp[0] - vm[0]) * inv_rt2, (vp[1] - vm[1]) * inv_rt2};

    Basis4x2 out{};
    for (int i = 0; i < 4; ++i) {
        out[0 * 4 + i] = base[0][i] * b1[0] + base[1][i] * b1[1];
        out[1 * 4 + i] = kI * (base[0][i] * b2[0] + base[1][i] * b2[1]);
    }
    return out;
}

std::array<C, 4> reduce_structure(const Basis4x2& basis, const SpinorMatrix& s, int comps) {
    // Returns the comps x comps sector block row-major (comps is 2 here; the
    // 4-component fallback skips reduction).
    std::array<C, 4> out{};
    for (int r = 0; r < comps; ++r)
        for (int c = 0; c < comps; ++c) {
            C acc = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    acc += std::conj(basis[r * 4 + i]) * s.value(i, j) * basis[c * 4 + j];
            out[r * 2 + c] = acc;
        }
    return out;
}

double max_imag(const std::array<C, 4>& m) {
    double worst = 0.0;
    for (const auto& e : m) worst = std::max(worst, std::abs(e.imag()));
    return worst;
}

}  // namespace

Hamiltonian1D assemble(const Grid1D& grid, const PotentialProfile& profile,
                       const CouplingCandidate& coupling, TransverseK k) {
    if (profile.size() != grid.n_points)
        throw std::invalid_argument("profile is not sampled on the grid");
    enforce_constraints(grid, coupling, k);

    Hamiltonian1D h{grid, profile, coupling, k, {}, std::nullopt, derivative_matrix(grid), 0.0};

    const auto& g = GammaBasis::dirac();
    const int n = grid.n_points;
    const int qi = coord_axis(grid.label);
    const SpinorMatrix kinetic = g.alpha[qi].to_numeric();
    const std::vector<Structure> structures = build_structures(grid, profile, coupling, k);

    h.label_operator = pick_label_operator(label_candidates(grid, k), kinetic, structures);

    if (h.label_operator) {
        for (int sign : {+1, -1}) {
            SectorBlock block;
            block.label = sign;
            block.comps = 2;
            const Basis4x2 basis = sector_basis(*h.label_operator, sign, kinetic);
            block.basis.assign(basis.begin(), basis.end());

            const std::array<C, 4> kin2 = reduce_structure(basis, kinetic, 2);
            std::vector<std::array<C, 4>> pots;
            pots.reserve(structures.size());
            for (const auto& s : structures) pots.push_back(reduce_structure(basis, s.matrix, 2));

            // -i * kin2 real (kinetic pairs with the antisymmetric derivative)
            // and every potential block real: then the sector matrix is real
            // symmetric.
            bool realifiable = std::abs(kin2[0].real()) < 1e-13 &&
                               std::abs(kin2[3].real()) < 1e-13 &&
                               std::abs(kin2[1].real()) < 1e-13 && std::abs(kin2[2].real()) < 1e-13;
            for (const auto& p : pots) realifiable = realifiable && max_imag(p) < 1e-13;

            const std::size_t dim = static_cast<std::size_t>(2) * n;
            if (realifiable) {
                block.realified = true;
                block.rmat.assign(dim * dim, 0.0);
                // kinetic: D1[g,g'] * Re(-i kin2)
                const double k01 = kin2[1].imag();  // Re(-i z) = Im z
                const double k10 = kin2[2].imag();
                for (int gr = 0; gr < n; ++gr) {
                    const double* drow = &h.deriv[static_cast<std::size_t>(gr) * n];
                    double* row0 = &block.rmat[(static_cast<std::size_t>(2) * gr) * dim];
                    double* row1 = row0 + dim;
                    for (int gc = 0; gc < n; ++gc) {
                        const double d = drow[gc];
                        if (d != 0.0) {
                            row0[2 * gc + 1] += d * k01;
                            row1[2 * gc] += d * k10;
                        }
                    }
                }
                for (std::size_t s = 0; s < structures.size(); ++s) {
                    const auto& p = pots[s];
                    const auto& coeff = structures[s].samples;
                    for (int gr = 0; gr < n; ++gr) {
                        const double v = coeff[gr];
                        if (v == 0.0) continue;
                        double* row0 = &block.rmat[(static_cast<std::size_t>(2) * gr) * dim];
                        double* row1 = row0 + dim;
                        row0[2 * gr] += v * p[0].real();
                        row0[2 * gr + 1] += v * p[1].real();
                        row1[2 * gr] += v * p[2].real();
                        row1[2 * gr + 1] += v * p[3].real();
                    }
                }
            } else {
                block.realified = false;
                block.cmat.assign(dim * dim, C(0.0));
                for (int gr = 0; gr < n; ++gr) {
                    const double* drow = &h.deriv[static_cast<std::size_t>(gr) * n];
                    C* row0 = &block.cmat[(static_cast<std::size_t>(2) * gr) * dim];
                    C* row1 = row0 + dim;
                    for (int gc = 0; gc < n; ++gc) {
                        const double d = drow[gc];
                        if (d != 0.0) {
                            row0[2 * gc] += -kI * d * kin2[0];
                            row0[2 * gc + 1] += -kI * d * kin2[1];
                            row1[2 * gc] += -kI * d * kin2[2];
                            row1[2 * gc + 1] += -kI * d * kin2[3];
                        }
                    }
                }
                for (std::size_t s = 0; s < structures.size(); ++s) {
                    const auto& p = pots[s];
                    const auto& coeff = structures[s].samples;
                    for (int gr = 0; gr < n; ++gr) {
                        const double v = coeff[gr];
                        if (v == 0.0) continue;
                        C* row0 = &block.cmat[(static_cast<std::size_t>(2) * gr) * dim];
                        C* row1 = row0 + dim;
                        row0[2 * gr] += v * p[0];
                        row0[2 * gr + 1] += v * p[1];
                        row1[2 * gr] += v * p[2];
                        row1[2 * gr + 1] += v * p[3];
                    }
                }
            }
            h.sectors.push_back(std::move(block));
        }
    } else {
        // Unlabeled fallback: one 4n x 4n complex Hermitian block.
        SectorBlock block;
        block.label = 0;
        block.comps = 4;
        block.basis.assign(16, C(0.0));
        for (int i = 0; i < 4; ++i) block.basis[i * 4 + i] = 1.0;
        const std::size_t dim = static_cast<std::size_t>(4) * n;
        block.cmat.assign(dim * dim, C(0.0));
        for (int gr = 0; gr < n; ++gr) {
            const double* drow = &h.deriv[static_cast<std::size_t>(gr) * n];
            for (int gc = 0; gc < n; ++gc) {
                const double d = drow[gc];
                if (d == 0.0) continue;
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) {
                        const C v = kinetic.value(r, c);
                        if (v != 0.0)
                            block.cmat[(static_cast<std::size_t>(4) * gr + r) * dim + 4 * gc + c] +=
                                -kI * d * v;
                    }
            }
        }
        for (const auto& s : structures) {
            for (int gr = 0; gr < n; ++gr) {
                const double v = s.samples[gr];
                if (v == 0.0) continue;
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) {
                        const C m = s.matrix.value(r, c);
                        if (m != 0.0)
                            block.cmat[(static_cast<std::size_t>(4) * gr + r) * dim + 4 * gr + c] +=
                                v * m;
                    }
            }
        }
        h.sectors.push_back(std::move(block));
    }

    // Hermiticity residual relative to the largest entry, maximized over
    // sectors.
    double worst = 0.0, scale = 0.0;
    for (const auto& block : h.sectors) {
        const std::size_t dim = static_cast<std::size_t>(block.comps) * n;
        if (block.realified) {
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = r; c < dim; ++c) {
                    worst = std::max(worst,
                                     std::abs(block.rmat[r * dim + c] - block.rmat[c * dim + r]));
                    scale = std::max(scale, std::abs(block.rmat[r * dim + c]));
                }
        } else {
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = r; c < dim; ++c) {
                    worst = std::max(worst, std::abs(block.cmat[r * dim + c] -
                                                     std::conj(block.cmat[c * dim + r])));
                    scale = std::max(scale, std::abs(block.cmat[r * dim + c]));
                }
        }
    }
    h.hermiticity_residual = scale > 0.0 ? worst / scale : 0.0;
    return h;
}

std::vector<std::complex<double>> dense_matrix(const Hamiltonian1D& h) {
    const auto& g = GammaBasis::dirac();
    const int n = h.grid.n_points;
    const int qi = coord_axis(h.grid.label);
    const SpinorMatrix kinetic = g.alpha[qi].to_numeric();
    const std::vector<Structure> structures =
        build_structures(h.grid, h.profile, h.coupling, h.k);

    const std::size_t dim = static_cast<std::size_t>(4) * n;
    std::vector<C> m(dim * dim, C(0.0));
    for (int gr = 0; gr < n; ++gr) {
        const double* drow = &h.deriv[static_cast<std::size_t>(gr) * n];
        for (int gc = 0; gc < n; ++gc) {
            const double d = drow[gc];
            if (d == 0.0) continue;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    const C v = kinetic.value(r, c);
                    if (v != 0.0)
                        m[(static_cast<std::size_t>(4) * gr + r) * dim + 4 * gc + c] += -kI * d * v;
                }
        }
        for (const auto& s : structures) {
            const double v = s.samples[gr];
            if (v == 0.0) continue;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    const C sv = s.matrix.value(r, c);
                    if (sv != 0.0)
                        m[(static_cast<std::size_t>(4) * gr + r) * dim + 4 * gr + c] += v * sv;
                }
        }
    }
    return m;
}

namespace {

int count_nodes(const std::vector<C>& state, int n) {
    // Dominant spinor component, phase-aligned; sign changes of the real part
    // across significant samples.
    std::array<double, 4> comp_norm{};
    for (int gp = 0; gp < n; ++gp)
        for (int c = 0; c < 4; ++c) comp_norm[c] += std::norm(state[4 * gp + c]);
    const int dom =
        std::distance(comp_norm.begin(), std::max_element(comp_norm.begin(), comp_norm.end()));

    double peak = 0.0;
    C phase = 1.0;
    for (int gp = 0; gp < n; ++gp) {
        const double a = std::abs(state[4 * gp + dom]);
        if (a > peak) {
            peak = a;
            phase = state[4 * gp + dom] / a;
        }
    }
    if (peak == 0.0) return 0;

    int nodes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (int gp = 0; gp < n; ++gp) {
        const double u = (state[4 * gp + dom] / phase).real();
        if (std::abs(u) < 1e-8 * peak) continue;
        if (have_prev && u * prev < 0.0) ++nodes;
        prev = u;
        have_prev = true;
    }
    return nodes;
}

}  // namespace

std::vector<std::pair<double, int>> sector_eigenvalues(const Hamiltonian1D& h, double emin,
                                                        double emax) {
    std::vector<std::pair<double, int>> out;
    const int n = h.grid.n_points;
    for (const auto& block : h.sectors) {
        const int dim = block.comps * n;
        if (block.realified) {
            std::vector<double> a = block.rmat;
            const auto eig = lapack::sym_eig_range(a, dim, emin, emax, false);
            for (double e : eig.values) out.emplace_back(e, block.label);
        } else {
            std::vector<C> a = block.cmat;
            const auto eig = lapack::herm_eig_range(a, dim, emin, emax, false);
            for (double e : eig.values) out.emplace_back(e, block.label);
        }
    }
    std::stable_sort(out.begin(), out.end());
    return out;
}

SpectrumResult eigensolve(const Hamiltonian1D& h, double emin, double emax, bool want_vectors) {
    if (!(emin < emax)) throw std::invalid_argument("empty energy window");
    SpectrumResult out;
    out.emin = emin;
    out.emax = emax;
    out.hermiticity_residual = h.hermiticity_residual;

    const int n = h.grid.n_points;
    auto [P_plus, P_minus] = projectors_numeric(h.coupling);

    struct Entry {
        double e;
        int label;
        std::vector<C> state;
    };
    std::vector<Entry> entries;

    for (const auto& block : h.sectors) {
        const int dim = block.comps * n;
        lapack::RangeEig eig;
        if (block.realified) {
            std::vector<double> a = block.rmat;
            eig = lapack::sym_eig_range(a, dim, emin, emax, want_vectors);
        } else {
            std::vector<C> a = block.cmat;
            eig = lapack::herm_eig_range(a, dim, emin, emax, want_vectors);
        }
        for (std::size_t j = 0; j < eig.values.size(); ++j) {
            Entry entry{eig.values[j], block.label, {}};
            if (want_vectors) {
                entry.state.assign(static_cast<std::size_t>(4) * n, C(0.0));
                for (int gp = 0; gp < n; ++gp)
                    for (int c = 0; c < block.comps; ++c) {
                        const C amp = block.realified
                                          ? C(eig.vectors[j][block.comps * gp + c])
                                          : eig.cvectors[j][block.comps * gp + c];
                        if (amp == C(0.0)) continue;
                        for (int i = 0; i < 4; ++i)
                            entry.state[4 * gp + i] += block.basis[c * 4 + i] * amp;
                    }
            }
            entries.push_back(std::move(entry));
        }
    }

    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.e != b.e ? a.e < b.e : a.label > b.label;
    });

    for (auto& entry : entries) {
        LevelInfo info;
        info.E = entry.e;
        info.block_label = entry.label;
        if (want_vectors) {
            std::vector<C> plus_part(entry.state.size()), minus_part(entry.state.size());
            double wplus = 0.0;
            for (int gp = 0; gp < n; ++gp) {
                for (int r = 0; r < 4; ++r) {
                    C acc = 0.0;
                    for (int c = 0; c < 4; ++c)
                        acc += P_plus.value(r, c) * entry.state[4 * gp + c];
                    plus_part[4 * gp + r] = acc;
                    minus_part[4 * gp + r] = entry.state[4 * gp + r] - acc;
                    wplus += std::norm(acc);
                }
            }
            info.p_plus_weight = wplus;
            // Nodes of the dominant projected component: the projector mixes
            // away the small-component admixture that would miscount.
            info.node_count = count_nodes(wplus >= 0.5 ? plus_part : minus_part, n);
            out.states.push_back(std::move(entry.state));
        }
        out.levels.push_back(info);
    }
    return out;
}

DoubletReport pair_doublets(const SpectrumResult& spectrum) {
    std::vector<LevelInfo> plus, minus;
    for (const auto& level : spectrum.levels) {
        if (level.block_label > 0)
            plus.push_back(level);
        else if (level.block_label < 0)
            minus.push_back(level);
        else
            throw std::invalid_argument("doublet pairing needs labeled sectors");
    }

    DoubletReport report;
    std::vector<bool> used_p(plus.size(), false), used_m(minus.size(), false);
    const std::size_t pairs = std::min(plus.size(), minus.size());
    for (std::size_t round = 0; round < pairs; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bp = 0, bm = 0;
        for (std::size_t i = 0; i < plus.size(); ++i) {
            if (used_p[i]) continue;
            for (std::size_t j = 0; j < minus.size(); ++j) {
                if (used_m[j]) continue;
                const double d = std::abs(plus[i].E - minus[j].E);
                if (d < best) {
                    best = d;
                    bp = i;
                    bm = j;
                }
            }
        }
        used_p[bp] = true;
        used_m[bm] = true;
        report.pairs.push_back({plus[bp].E, minus[bm].E, best});
    }
    for (std::size_t i = 0; i < plus.size(); ++i)
        if (!used_p[i]) report.unmatched.push_back(plus[i]);
    for (std::size_t j = 0; j < minus.size(); ++j)
        if (!used_m[j]) report.unmatched.push_back(minus[j]);

    for (const auto& d : report.pairs) {
        report.max_splitting = std::max(report.max_splitting, d.splitting);
        report.mean_splitting += d.splitting;
    }
    if (!report.pairs.empty()) report.mean_splitting /= report.pairs.size();
    std::sort(report.pairs.begin(), report.pairs.end(),
              [](const Doublet& a, const Doublet& b) { return a.e_a < b.e_a; });
    return report;
}

SecondOrderResidual residual_second_order(const Hamiltonian1D& h, const SpectrumResult& spectrum,
                                          int index) {
    if (index < 0 || index >= static_cast<int>(spectrum.levels.size()))
        throw std::invalid_argument("state index out of range");
    if (spectrum.states.empty())
        throw std::invalid_argument("spectrum was solved without eigenvectors");
    if (h.profile.scenario == ScenarioType::Broken)
        throw std::invalid_argument("second-order reduction undefined off-condition");

    const int n = h.grid.n_points;
    const bool spin_like = h.profile.scenario == ScenarioType::SpinLike;
    const double E = spectrum.levels[index].E;
    const double Ceff = h.profile.C;
    const std::vector<double> f = spin_like ? h.profile.v_plus() : h.profile.v_minus();
    const std::vector<C>& state = spectrum.states[index];
    const auto q = h.grid.points();

    SecondOrderResidual out;

    // Exclusion: a grid point too close to the E = f(q) crossing poisons the
    // 1/(E - f) factor.
    std::vector<double> fprime(n);
    if (h.profile.confining.derivative) {
        for (int i = 0; i < n; ++i) fprime[i] = h.profile.confining.derivative(q[i]);
    } else {
        const double inv12h = 1.0 / (12.0 * h.grid.spacing());
        for (int i = 0; i < n; ++i) {
            const auto at = [&](int j) { return f[std::clamp(j, 0, n - 1)]; };
            fprime[i] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) * inv12h;
        }
    }
    double fp_max = 0.0, fmax = 0.0;
    for (int i = 0; i < n; ++i) {
        fp_max = std::max(fp_max, std::abs(fprime[i]));
        fmax = std::max(fmax, std::abs(f[i]));
    }
    // Exclusion threshold: close enough to the crossing that the 1/(E - f)
    // amplification of derivative noise could reach the residual guarantee.
    const double tau = std::max(1e-10 * std::max({1.0, std::abs(E), fmax}),
                                1e-3 * h.grid.spacing() * fp_max);
    int closest = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double gap = std::abs(E - f[i]);
        if (gap < min_gap) {
            min_gap = gap;
            closest = i;
        }
    }
    if (min_gap <= tau) {
        out.excluded = true;
        out.crossing_q = q[closest];
        return out;
    }

    auto [P_plus, P_minus] = projectors_numeric(h.coupling);
    const SpinorMatrix& P_dec = spin_like ? P_plus : P_minus;
    const SpinorMatrix& P_cpl = spin_like ? P_minus : P_plus;

    auto project = [&](const SpinorMatrix& P) {
        std::vector<C> out_state(state.size());
        for (int gp = 0; gp < n; ++gp)
            for (int r = 0; r < 4; ++r) {
                C acc = 0.0;
                for (int c = 0; c < 4; ++c) acc += P.value(r, c) * state[4 * gp + c];
                out_state[4 * gp + r] = acc;
            }
        return out_state;
    };
    const std::vector<C> psi_dec = project(P_dec);
    const std::vector<C> psi_cpl = project(P_cpl);

    const double kperp2 = h.k.a * h.k.a + h.k.b * h.k.b;
    auto p_squared = [&](const std::vector<C>& psi) {
        std::vector<C> compv(n), t1(n), t2(n);
        std::vector<C> out_v(psi.size());
        for (int c = 0; c < 4; ++c) {
            for (int gp = 0; gp < n; ++gp) compv[gp] = psi[4 * gp + c];
            apply_derivative(h.deriv, n, compv, t1);
            apply_derivative(h.deriv, n, t1, t2);
            for (int gp = 0; gp < n; ++gp)
                out_v[4 * gp + c] = -t2[gp] + kperp2 * psi[4 * gp + c];
        }
        return out_v;
    };
    auto d_q = [&](const std::vector<C>& psi) {
        std::vector<C> compv(n), t1(n);
        std::vector<C> out_v(psi.size());
        for (int c = 0; c < 4; ++c) {
            for (int gp = 0; gp < n; ++gp) compv[gp] = psi[4 * gp + c];
            apply_derivative(h.deriv, n, compv, t1);
            for (int gp = 0; gp < n; ++gp) out_v[4 * gp + c] = t1[gp];
        }
        return out_v;
    };
    auto l2 = [](const std::vector<C>& v) {
        double s = 0.0;
        for (const auto& x : v) s += std::norm(x);
        return std::sqrt(s);
    };

    // Decoupled component: p^2 psi = (E - C)(E - f) psi.
    {
        const std::vector<C> p2 = p_squared(psi_dec);
        std::vector<C> res(psi_dec.size());
        for (int gp = 0; gp < n; ++gp) {
            const double rhs = (E - Ceff) * (E - f[gp]);
            for (int c = 0; c < 4; ++c)
                res[4 * gp + c] = p2[4 * gp + c] - rhs * psi_dec[4 * gp + c];
        }
        const double nrm = l2(psi_dec);
        out.r_plus = nrm > 0.0 ? l2(res) / nrm : 0.0;
    }

    // Coupled component: p^2 psi + [f' (e_q x p).Sigma - i f' p_q] psi /(E-f)
    //                    = (E - C)(E - f) psi.
    {
        const auto& g = GammaBasis::dirac();
        // e_q x p over the transverse plane waves; constants multiply Sigma.
        double so1 = 0.0, so2 = 0.0;
        int so1_axis = 0, so2_axis = 0;
        if (h.grid.label == CoordLabel::z) {
            so1 = h.k.a;  // + k_x Sigma_y
            so1_axis = 1;
            so2 = -h.k.b;  // - k_y Sigma_x
            so2_axis = 0;
        } else {
            so1 = h.k.a;  // + k_y Sigma_z
            so1_axis = 2;
            so2 = -h.k.b;  // - k_z Sigma_y
            so2_axis = 1;
        }
        const SpinorMatrix sig1 = g.sigma[so1_axis].to_numeric();
        const SpinorMatrix sig2 = g.sigma[so2_axis].to_numeric();

        const std::vector<C> p2 = p_squared(psi_cpl);
        const std::vector<C> dpsi = d_q(psi_cpl);
        std::vector<C> res(psi_cpl.size()), res_no_darwin(psi_cpl.size());
        for (int gp = 0; gp < n; ++gp) {
            const double inv = 1.0 / (E - f[gp]);
            const double rhs = (E - Ceff) * (E - f[gp]);
            for (int r = 0; r < 4; ++r) {
                C so_term = 0.0;
                if (so1 != 0.0 || so2 != 0.0) {
                    for (int c = 0; c < 4; ++c)
                        so_term += (so1 * sig1.value(r, c) + so2 * sig2.value(r, c)) *
                                   psi_cpl[4 * gp + c];
                    so_term *= fprime[gp];
                }
                const C darwin = -fprime[gp] * dpsi[4 * gp + r];
                const C base = p2[4 * gp + r] - rhs * psi_cpl[4 * gp + r];
                res[4 * gp + r] = base + inv * (so_term + darwin);
                res_no_darwin[4 * gp + r] = base + inv * so_term;
            }
        }
        const double nrm = l2(psi_cpl);
        out.r_minus = nrm > 0.0 ? l2(res) / nrm : 0.0;
        out.r_minus_no_darwin = nrm > 0.0 ? l2(res_no_darwin) / nrm : 0.0;
    }
    return out;
}

BreakingScanResult breaking_scan(const Grid1D& grid, const PotentialProfile& base,
                                 const CouplingCandidate& coupling, TransverseK k,
                                 const SampledFunction& shape, BreakingStructure structure,
                                 std::vector<double> strengths, double emin, double emax) {
    if (std::find(strengths.begin(), strengths.end(), 0.0) == strengths.end())
        throw std::invalid_argument("breaking scan needs the strength 0 reference");

    BreakingScanResult out;
    for (double eps : strengths) {
        const PotentialProfile profile = make_broken_profile(base, eps, shape, structure);
        const Hamiltonian1D h = assemble(grid, profile, coupling, k);
        if (!h.label_operator)
            throw std::invalid_argument("breaking scan needs labeled sectors");
        const auto values = sector_eigenvalues(h, emin, emax);

        SpectrumResult spec;
        spec.emin = emin;
        spec.emax = emax;
        for (const auto& [e, label] : values) {
            LevelInfo info;
            info.E = e;
            info.block_label = label;
            spec.levels.push_back(info);
        }
        const DoubletReport report = pair_doublets(spec);
        out.rows.push_back({eps, report.max_splitting});
    }

    // Slope over the smallest three nonzero strengths.
    std::vector<BreakingScanRow> nonzero;
    for (const auto& row : out.rows)
        if (row.epsilon != 0.0) nonzero.push_back(row);
    std::sort(nonzero.begin(), nonzero.end(),
              [](const BreakingScanRow& a, const BreakingScanRow& b) {
                  return std::abs(a.epsilon) < std::abs(b.epsilon);
              });
    if (nonzero.size() > 3) nonzero.resize(3);
    if (nonzero.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : nonzero) {
            sx += row.epsilon;
            sy += row.max_splitting;
            sxx += row.epsilon * row.epsilon;
            sxy += row.epsilon * row.max_splitting;
        }
        const double m = static_cast<double>(nonzero.size());
        out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return out;
}

}  // namespace diracsym
