#pragma once

#include "diracsym/rational_complex.hpp"

#include <array>
#include <complex>
#include <string>

namespace diracsym {

enum class Mode { exact, numeric };

/// 4x4 complex matrix in spinor space, either with exact Gaussian-rational
/// entries or with double-precision entries. Arithmetic is mode-homogeneous:
/// mixing modes throws std::invalid_argument. Values are immutable after
/// construction apart from whole-matrix assignment.
class SpinorMatrix {
  public:
    static constexpr int dim = 4;
    using ExactEntries = std::array<ExactComplex, 16>;
    using NumericEntries = std::array<std::complex<double>, 16>;

    SpinorMatrix() : SpinorMatrix(zero(Mode::exact)) {}

    static SpinorMatrix zero(Mode mode);
    static SpinorMatrix identity(Mode mode);
    static SpinorMatrix from_exact(ExactEntries entries);
    static SpinorMatrix from_numeric(NumericEntries entries);

    Mode mode() const { return mode_; }
    bool exact() const { return mode_ == Mode::exact; }

    const ExactComplex& exact_at(int r, int c) const;
    /// Entry as a double-precision complex, valid in both modes.
    std::complex<double> value(int r, int c) const;

    SpinorMatrix to_numeric() const;

    SpinorMatrix adjoint() const;
    SpinorMatrix scaled(const ExactComplex& s) const;
    SpinorMatrix scaled(std::complex<double> s) const;

    friend SpinorMatrix operator+(const SpinorMatrix& a, const SpinorMatrix& b);
    friend SpinorMatrix operator-(const SpinorMatrix& a, const SpinorMatrix& b);
    friend SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b);
    SpinorMatrix operator-() const;

    /// Exact mode: exact decision. Numeric mode: max-entry deviation < tol.
    bool is_zero(double tol = 1e-12) const;
    bool is_identity(double tol = 1e-12) const;
    bool is_hermitian(double tol = 1e-12) const;

    /// Largest entry modulus (exact entries are converted to double).
    double max_abs() const;

    bool equals_exact(const SpinorMatrix& other) const;

    /// Debug dump, row-major entries as "a/b+c/d*i" strings.
    std::string dump() const;

  private:
    SpinorMatrix(Mode m) : mode_(m) {}
    Mode mode_;
    ExactEntries ex_{};
    NumericEntries nu_{};
    static void require_same_mode(const SpinorMatrix& a, const SpinorMatrix& b);
};

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b);
SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b);

/// Gamma-matrix constants in the Dirac (standard) representation, exact mode.
/// beta = gamma^0 = diag(1,1,-1,-1), alpha_i = gamma^0 gamma^i off-diagonal
/// Pauli blocks, gamma5 off-diagonal identity blocks, Sigma_i = gamma5 alpha_i.
/// The representation is fixed; every condition checked downstream is
/// representation-covariant, so one concrete basis suffices.
struct GammaBasis {
    SpinorMatrix identity;
    SpinorMatrix beta;
    std::array<SpinorMatrix, 3> alpha;
    SpinorMatrix gamma5;
    std::array<SpinorMatrix, 3> sigma;

    static const GammaBasis& dirac();
};

}  // namespace diracsym
