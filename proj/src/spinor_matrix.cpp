#include "diracsym/spinor_matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diracsym {

namespace {
constexpr int idx(int r, int c) { return 4 * r + c; }
}

SpinorMatrix SpinorMatrix::zero(Mode mode) {
    SpinorMatrix m(mode);
    return m;
}

SpinorMatrix SpinorMatrix::identity(Mode mode) {
    SpinorMatrix m(mode);
    for (int i = 0; i < dim; ++i) {
        if (mode == Mode::exact)
            m.ex_[idx(i, i)] = ExactComplex(1);
        else
            m.nu_[idx(i, i)] = 1.0;
    }
    return m;
}

SpinorMatrix SpinorMatrix::from_exact(ExactEntries entries) {
    SpinorMatrix m(Mode::exact);
    m.ex_ = std::move(entries);
    return m;
}

SpinorMatrix SpinorMatrix::from_numeric(NumericEntries entries) {
    SpinorMatrix m(Mode::numeric);
    m.nu_ = entries;
    return m;
}

const ExactComplex& SpinorMatrix::exact_at(int r, int c) const {
    if (mode_ != Mode::exact) throw std::invalid_argument("exact_at on numeric-mode matrix");
    return ex_[idx(r, c)];
}

std::complex<double> SpinorMatrix::value(int r, int c) const {
    if (mode_ == Mode::exact) {
        const ExactComplex& e = ex_[idx(r, c)];
        return {e.real_d(), e.imag_d()};
    }
    return nu_[idx(r, c)];
}

SpinorMatrix SpinorMatrix::to_numeric() const {
    if (mode_ == Mode::numeric) return *this;
    SpinorMatrix m(Mode::numeric);
    for (int i = 0; i < 16; ++i) m.nu_[i] = {ex_[i].real_d(), ex_[i].imag_d()};
    return m;
}

SpinorMatrix SpinorMatrix::adjoint() const {
    SpinorMatrix m(mode_);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            if (mode_ == Mode::exact)
                m.ex_[idx(r, c)] = ex_[idx(c, r)].conj();
            else
                m.nu_[idx(r, c)] = std::conj(nu_[idx(c, r)]);
        }
    return m;
}

SpinorMatrix SpinorMatrix::scaled(const ExactComplex& s) const {
    if (mode_ != Mode::exact) throw std::invalid_argument("exact scale on numeric-mode matrix");
    SpinorMatrix m(Mode::exact);
    for (int i = 0; i < 16; ++i) m.ex_[i] = ex_[i] * s;
    return m;
}

SpinorMatrix SpinorMatrix::scaled(std::complex<double> s) const {
    SpinorMatrix src = to_numeric();
    SpinorMatrix m(Mode::numeric);
    for (int i = 0; i < 16; ++i) m.nu_[i] = src.nu_[i] * s;
    return m;
}

void SpinorMatrix::require_same_mode(const SpinorMatrix& a, const SpinorMatrix& b) {
    if (a.mode_ != b.mode_)
        throw std::invalid_argument("spinor-matrix operands have different arithmetic modes");
}

SpinorMatrix operator+(const SpinorMatrix& a, const SpinorMatrix& b) {
    SpinorMatrix::require_same_mode(a, b);
    SpinorMatrix m(a.mode_);
    for (int i = 0; i < 16; ++i) {
        if (a.mode_ == Mode::exact)
            m.ex_[i] = a.ex_[i] + b.ex_[i];
        else
            m.nu_[i] = a.nu_[i] + b.nu_[i];
    }
    return m;
}

SpinorMatrix operator-(const SpinorMatrix& a, const SpinorMatrix& b) {
    SpinorMatrix::require_same_mode(a, b);
    SpinorMatrix m(a.mode_);
    for (int i = 0; i < 16; ++i) {
        if (a.mode_ == Mode::exact)
            m.ex_[i] = a.ex_[i] - b.ex_[i];
        else
            m.nu_[i] = a.nu_[i] - b.nu_[i];
    }
    return m;
}

SpinorMatrix SpinorMatrix::operator-() const {
    SpinorMatrix m(mode_);
    for (int i = 0; i < 16; ++i) {
        if (mode_ == Mode::exact)
            m.ex_[i] = -ex_[i];
        else
            m.nu_[i] = -nu_[i];
    }
    return m;
}

SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b) {
    SpinorMatrix::require_same_mode(a, b);
    SpinorMatrix m(a.mode_);
    for (int r = 0; r < SpinorMatrix::dim; ++r)
        for (int c = 0; c < SpinorMatrix::dim; ++c) {
            if (a.mode_ == Mode::exact) {
                ExactComplex acc;
                for (int k = 0; k < SpinorMatrix::dim; ++k)
                    acc += a.ex_[idx(r, k)] * b.ex_[idx(k, c)];
                m.ex_[idx(r, c)] = acc;
            } else {
                std::complex<double> acc = 0.0;
                for (int k = 0; k < SpinorMatrix::dim; ++k)
                    acc += a.nu_[idx(r, k)] * b.nu_[idx(k, c)];
                m.nu_[idx(r, c)] = acc;
            }
        }
    return m;
}

bool SpinorMatrix::is_zero(double tol) const {
    if (mode_ == Mode::exact) {
        for (const auto& e : ex_)
            if (!e.is_zero()) return false;
        return true;
    }
    for (const auto& e : nu_)
        if (std::abs(e) >= tol) return false;
    return true;
}

bool SpinorMatrix::is_identity(double tol) const {
    return (*this - identity(mode_)).is_zero(tol);
}

bool SpinorMatrix::is_hermitian(double tol) const {
    return (*this - adjoint()).is_zero(tol);
}

double SpinorMatrix::max_abs() const {
    double m = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m = std::max(m, std::abs(value(r, c)));
    return m;
}

bool SpinorMatrix::equals_exact(const SpinorMatrix& other) const {
    if (mode_ != Mode::exact || other.mode_ != Mode::exact)
        throw std::invalid_argument("equals_exact requires exact-mode operands");
    for (int i = 0; i < 16; ++i)
        if (!(ex_[i] == other.ex_[i])) return false;
    return true;
}

std::string SpinorMatrix::dump() const {
    std::ostringstream os;
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            if (c) os << "  ";
            if (mode_ == Mode::exact) {
                os << ex_[idx(r, c)].str();
            } else {
                os << nu_[idx(r, c)].real() << (nu_[idx(r, c)].imag() < 0 ? "-" : "+")
                   << std::abs(nu_[idx(r, c)].imag()) << "*i";
            }
        }
        os << "\n";
    }
    return os.str();
}

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b) {
    return a * b - b * a;
}

SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b) {
    return a * b + b * a;
}

namespace {

// Pauli matrices as 2x2 exact blocks: entries (row-major) over {0,±1,±i}.
struct Pauli2 {
    ExactComplex e00, e01, e10, e11;
};

SpinorMatrix off_diag_pauli(const Pauli2& s) {
    // [[0, s],[s, 0]]
    SpinorMatrix::ExactEntries e{};
    e[idx(0, 2)] = s.e00; e[idx(0, 3)] = s.e01;
    e[idx(1, 2)] = s.e10; e[idx(1, 3)] = s.e11;
    e[idx(2, 0)] = s.e00; e[idx(2, 1)] = s.e01;
    e[idx(3, 0)] = s.e10; e[idx(3, 1)] = s.e11;
    return SpinorMatrix::from_exact(e);
}

SpinorMatrix diag_pauli(const Pauli2& s) {
    // [[s, 0],[0, s]]
    SpinorMatrix::ExactEntries e{};
    e[idx(0, 0)] = s.e00; e[idx(0, 1)] = s.e01;
    e[idx(1, 0)] = s.e10; e[idx(1, 1)] = s.e11;
    e[idx(2, 2)] = s.e00; e[idx(2, 3)] = s.e01;
    e[idx(3, 2)] = s.e10; e[idx(3, 3)] = s.e11;
    return SpinorMatrix::from_exact(e);
}

GammaBasis build_dirac() {
    const ExactComplex one(1), mone(-1), i = ExactComplex::unit_i(), mi = -ExactComplex::unit_i(),
                       zero;
    const Pauli2 s1{zero, one, one, zero};
    const Pauli2 s2{zero, mi, i, zero};
    const Pauli2 s3{one, zero, zero, mone};

    GammaBasis g{
        SpinorMatrix::identity(Mode::exact),
        SpinorMatrix(),
        {off_diag_pauli(s1), off_diag_pauli(s2), off_diag_pauli(s3)},
        SpinorMatrix(),
        {diag_pauli(s1), diag_pauli(s2), diag_pauli(s3)},
    };

    SpinorMatrix::ExactEntries beta{};
    beta[idx(0, 0)] = one; beta[idx(1, 1)] = one;
    beta[idx(2, 2)] = mone; beta[idx(3, 3)] = mone;
    g.beta = SpinorMatrix::from_exact(beta);

    SpinorMatrix::ExactEntries g5{};
    g5[idx(0, 2)] = one; g5[idx(1, 3)] = one;
    g5[idx(2, 0)] = one; g5[idx(3, 1)] = one;
    g.gamma5 = SpinorMatrix::from_exact(g5);
    return g;
}

}  // namespace

const GammaBasis& GammaBasis::dirac() {
    static const GammaBasis g = build_dirac();
    return g;
}

}  // namespace diracsym
