#include "diracsym/lapack.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <sstream>
#include <stdexcept>

namespace diracsym::lapack {

namespace {

[[noreturn]] void fail(const char* routine, int info, int n) {
    std::ostringstream os;
    os << routine << " failed with info=" << info << " (matrix dimension " << n << ")";
    throw std::runtime_error(os.str());
}

}  // namespace

std::vector<double> sym_eigenvalues(std::vector<double>& a, int n) {
    std::vector<double> w(n);
    const int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data());
    if (info != 0) fail("dsyev", info, n);
    return w;
}

std::vector<double> herm_eigenvalues(std::vector<std::complex<double>>& a, int n) {
    std::vector<double> w(n);
    const int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'N', 'U', n,
                                   reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    if (info != 0) fail("zheev", info, n);
    return w;
}

RangeEig sym_eig_range(std::vector<double>& a, int n, double vl, double vu, bool want_vectors) {
    std::vector<double> w(n);
    std::vector<double> z;
    std::vector<lapack_int> isuppz(2 * std::max(1, n));
    lapack_int m = 0;
    if (want_vectors) z.assign(static_cast<std::size_t>(n) * n, 0.0);
    const int info = LAPACKE_dsyevr(LAPACK_ROW_MAJOR, want_vectors ? 'V' : 'N', 'V', 'U', n,
                                    a.data(), n, vl, vu, 0, 0, 0.0, &m, w.data(),
                                    want_vectors ? z.data() : nullptr, std::max<lapack_int>(1, n),
                                    isuppz.data());
    if (info != 0) fail("dsyevr", info, n);

    RangeEig out;
    out.values.assign(w.begin(), w.begin() + m);
    if (want_vectors) {
        out.vectors.resize(m);
        for (int j = 0; j < m; ++j) {
            out.vectors[j].resize(n);
            for (int i = 0; i < n; ++i) out.vectors[j][i] = z[static_cast<std::size_t>(i) * n + j];
        }
    }
    return out;
}

RangeEig herm_eig_range(std::vector<std::complex<double>>& a, int n, double vl, double vu,
                        bool want_vectors) {
    std::vector<double> w(n);
    std::vector<std::complex<double>> z;
    std::vector<lapack_int> isuppz(2 * std::max(1, n));
    lapack_int m = 0;
    if (want_vectors) z.assign(static_cast<std::size_t>(n) * n, 0.0);
    const int info = LAPACKE_zheevr(LAPACK_ROW_MAJOR, want_vectors ? 'V' : 'N', 'V', 'U', n,
                                    reinterpret_cast<lapack_complex_double*>(a.data()), n, vl, vu,
                                    0, 0, 0.0, &m, w.data(),
                                    want_vectors
                                        ? reinterpret_cast<lapack_complex_double*>(z.data())
                                        : nullptr,
                                    std::max<lapack_int>(1, n), isuppz.data());
    if (info != 0) fail("zheevr", info, n);

    RangeEig out;
    out.values.assign(w.begin(), w.begin() + m);
    if (want_vectors) {
        out.cvectors.resize(m);
        for (int j = 0; j < m; ++j) {
            out.cvectors[j].resize(n);
            for (int i = 0; i < n; ++i)
                out.cvectors[j][i] = z[static_cast<std::size_t>(i) * n + j];
        }
    }
    return out;
}

}  // namespace diracsym::lapack
