#include "mapcones/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mapcones {

namespace {
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (!a.same_shape(b))
        throw dimension_error(std::string("CMatrix ") + op + ": shape mismatch " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}
} // namespace

CMatrix CMatrix::operator+(const CMatrix& o) const {
    require_same_shape(*this, o, "+");
    CMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    require_same_shape(*this, o, "-");
    CMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_shape(*this, o, "+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_shape(*this, o, "-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_)
        throw dimension_error("CMatrix *: inner dimensions " + std::to_string(cols_) + " vs " +
                              std::to_string(o.rows_));
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0)) continue;
            const cplx* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
            cplx* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

CMatrix CMatrix::operator*(cplx s) const {
    CMatrix r = *this;
    r *= s;
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r = *this;
    for (auto& z : r.a_) z = std::conj(z);
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx CMatrix::trace() const {
    if (!is_square()) throw dimension_error("trace: matrix not square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::hermiticity_defect() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

bool CMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    return hermiticity_defect() <= tol * (1.0 + max_abs());
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace mapcones
