#pragma once

#include <complex>
#include <vector>

#include "mapcones/errors.hpp"

namespace mapcones {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage. The single numeric carrier for
/// everything in this library: density-sized operators, Choi matrices,
/// natural (vectorized) representations, witnesses.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw dimension_error("CMatrix: negative dimension");
    }

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    /// Matrix unit E_{jk} (1 at row j, column k, zero elsewhere).
    static CMatrix unit(int n, int j, int k) {
        CMatrix m(n, n);
        m(j, k) = 1.0;
        return m;
    }
    static CMatrix diag(const std::vector<cplx>& d) {
        CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    size_t size() const { return a_.size(); }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;   // matrix product
    CMatrix operator*(cplx s) const;
    CMatrix operator-() const { return *this * cplx(-1.0); }
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    CMatrix transpose() const;
    CMatrix conjugate() const;
    CMatrix adjoint() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Hermitian within max|M - M*| <= tol * (1 + max|M|).
    bool is_hermitian(double tol = 1e-12) const;
    double hermiticity_defect() const;  // max|M - M*|

    bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

inline CMatrix operator*(cplx s, const CMatrix& m) { return m * s; }
inline CMatrix operator*(double s, const CMatrix& m) { return m * cplx(s); }

/// max entrywise |A - B|; shapes must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

} // namespace mapcones
