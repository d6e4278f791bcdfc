#include "mapcones/superop.hpp"

#include <cmath>

namespace mapcones {

namespace {
void require_n(int n, const CMatrix& m, const char* what) {
    if (m.rows() != n * n || m.cols() != n * n)
        throw dimension_error(std::string(what) + ": expected " + std::to_string(n * n) + "x" +
                              std::to_string(n * n) + ", got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
}
} // namespace

SuperOp SuperOp::from_choi(int n, CMatrix choi) {
    if (n < 1) throw dimension_error("SuperOp: n must be positive");
    require_n(n, choi, "from_choi");
    SuperOp s;
    s.n_ = n;
    s.choi_ = std::move(choi);
    return s;
}

SuperOp SuperOp::from_natural(int n, const CMatrix& natural) {
    require_n(n, natural, "from_natural");
    // C[(j,a),(k,b)] = S(E_jk)(a,b) = N[a + n*b, j + n*k]
    CMatrix c(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int b = 0; b < n; ++b)
                    c(j * n + a, k * n + b) = natural(a + n * b, j + n * k);
    return from_choi(n, std::move(c));
}

CMatrix SuperOp::natural() const {
    const int n = n_;
    CMatrix nat(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int b = 0; b < n; ++b)
                    nat(a + n * b, j + n * k) = choi_(j * n + a, k * n + b);
    return nat;
}

SuperOp SuperOp::from_tensor(int n, const CMatrix& tensor) {
    require_n(n, tensor, "from_tensor");
    // N[j2*n + i1, i2*n + j1] = W[i1*n + i2, j1*n + j2]
    CMatrix nat(n * n, n * n);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2)
                    nat(j2 * n + i1, i2 * n + j1) = tensor(i1 * n + i2, j1 * n + j2);
    return from_natural(n, nat);
}

CMatrix SuperOp::tensor() const {
    const int n = n_;
    CMatrix nat = natural();
    CMatrix w(n * n, n * n);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2)
                    w(i1 * n + i2, j1 * n + j2) = nat(j2 * n + i1, i2 * n + j1);
    return w;
}

SuperOp SuperOp::from_kraus(int n, const std::vector<CMatrix>& kraus) {
    CMatrix c(n * n, n * n);
    for (const CMatrix& l : kraus) {
        if (l.rows() != n || l.cols() != n)
            throw dimension_error("from_kraus: operator is not n x n");
        // S(X) = L^* X L contributes |w><w| with w = vec-by-rows of conj(L)
        CMatrix w(n * n, 1);
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a) w(j * n + a, 0) = std::conj(l(j, a));
        for (int r = 0; r < n * n; ++r)
            for (int cidx = 0; cidx < n * n; ++cidx)
                c(r, cidx) += w(r, 0) * std::conj(w(cidx, 0));
    }
    return from_choi(n, std::move(c));
}

std::vector<CMatrix> SuperOp::kraus(double tol) const {
    if (!choi_.is_hermitian(1e-10))
        throw numeric_error("kraus: Choi matrix is not hermitian (map does not preserve "
                            "hermiticity), defect " +
                            std::to_string(choi_.hermiticity_defect()));
    EigResult e = hermitian_eig((choi_ + choi_.adjoint()) * cplx(0.5, 0.0));
    if (e.values.front() < -tol)
        throw numeric_error("kraus: map is not completely positive, Choi eigenvalue " +
                            std::to_string(e.values.front()));
    std::vector<CMatrix> out;
    const int m = n_ * n_;
    for (int idx = 0; idx < m; ++idx) {
        const double lam = e.values[idx];
        if (lam <= tol) continue;
        const double w = std::sqrt(lam);
        CMatrix l(n_, n_);
        for (int j = 0; j < n_; ++j)
            for (int a = 0; a < n_; ++a) l(j, a) = std::conj(w * e.vectors(j * n_ + a, idx));
        out.push_back(std::move(l));
    }
    return out;
}

SuperOp SuperOp::from_action(int n, const std::function<CMatrix(const CMatrix&)>& f) {
    CMatrix c(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            CMatrix img = f(CMatrix::unit(n, j, k));
            if (img.rows() != n || img.cols() != n)
                throw dimension_error("from_action: image is not n x n");
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) c(j * n + a, k * n + b) = img(a, b);
        }
    return from_choi(n, std::move(c));
}

SuperOp SuperOp::from_tensor_pair(const CMatrix& a, const CMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw dimension_error("from_tensor_pair: factors must be square of equal size");
    const int n = a.rows();
    return from_action(n, [&](const CMatrix& x) { return a * x * b; });
}

SuperOp SuperOp::conjugation(const CMatrix& v) {
    return from_tensor_pair(v, v.adjoint());
}

SuperOp SuperOp::standard_map(char name, int n) {
    if (n < 1) throw dimension_error("standard_map: n must be positive");
    CMatrix c(n * n, n * n);
    switch (name) {
        case 'P':  // C_P = I (x) I / n
            for (int r = 0; r < n * n; ++r) c(r, r) = 1.0 / n;
            break;
        case 'D':  // C_D = sum_j E_jj (x) E_jj
            for (int j = 0; j < n; ++j) c(j * n + j, j * n + j) = 1.0;
            break;
        case 'T':  // C_T = sum_jk E_jk (x) E_kj (the swap)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < n; ++a) c(j * n + a, a * n + j) = 1.0;
            break;
        case 'I':  // C_Id = sum_jk E_jk (x) E_jk
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) c(j * n + j, k * n + k) = 1.0;
            break;
        default:
            throw unsupported_construction(std::string("standard_map: unknown map '") + name +
                                           "', expected P, D, T or I");
    }
    return from_choi(n, std::move(c));
}

SuperOp SuperOp::zero(int n) { return from_choi(n, CMatrix(n * n, n * n)); }

SuperOp identity_superop(int n) { return SuperOp::standard_map('I', n); }

CMatrix SuperOp::apply(const CMatrix& x) const {
    if (x.rows() != n_ || x.cols() != n_)
        throw dimension_error("apply: argument is " + std::to_string(x.rows()) + "x" +
                              std::to_string(x.cols()) + ", expected " + std::to_string(n_) + "x" +
                              std::to_string(n_));
    // S(X)(a,b) = sum_jk X(j,k) C[(j,a),(k,b)]
    CMatrix out(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            cplx acc = 0.0;
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) acc += x(j, k) * choi_(j * n_ + a, k * n_ + b);
            out(a, b) = acc;
        }
    return out;
}

SuperOp SuperOp::star() const {
    // <S*(A), B> = <A, S(B)>  <=>  N(S*) = N(S)^*
    return from_natural(n_, natural().adjoint());
}

SuperOp SuperOp::sharp() const {
    // S#(E_jk) = S(E_kj)^*  <=>  C#[(j,a),(k,b)] = conj(C[(k,b),(j,a)])
    CMatrix c(n_ * n_, n_ * n_);
    for (int r = 0; r < n_ * n_; ++r)
        for (int cidx = 0; cidx < n_ * n_; ++cidx) c(r, cidx) = std::conj(choi_(cidx, r));
    return from_choi(n_, std::move(c));
}

bool SuperOp::is_hermiticity_preserving(double tol) const { return choi_.is_hermitian(tol); }

bool SuperOp::is_unital(double tol) const {
    CMatrix r = apply(CMatrix::identity(n_)) - CMatrix::identity(n_);
    return r.max_abs() <= tol;
}

bool SuperOp::is_zero_on_identity(double tol) const {
    return apply(CMatrix::identity(n_)).max_abs() <= tol;
}

bool SuperOp::is_trace_preserving(double tol) const {
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
            cplx tr = 0.0;
            for (int a = 0; a < n_; ++a) tr += choi_(j * n_ + a, k * n_ + a);
            const cplx want = (j == k) ? cplx(1.0) : cplx(0.0);
            if (std::abs(tr - want) > tol) return false;
        }
    return true;
}

SuperOp SuperOp::operator+(const SuperOp& o) const {
    if (n_ != o.n_) throw dimension_error("SuperOp +: dimension mismatch");
    return from_choi(n_, choi_ + o.choi_);
}

SuperOp SuperOp::operator-(const SuperOp& o) const {
    if (n_ != o.n_) throw dimension_error("SuperOp -: dimension mismatch");
    return from_choi(n_, choi_ - o.choi_);
}

SuperOp SuperOp::operator*(const SuperOp& o) const {
    if (n_ != o.n_) throw dimension_error("SuperOp compose: dimension mismatch");
    return from_natural(n_, natural() * o.natural());
}

SuperOp SuperOp::scaled(cplx s) const { return from_choi(n_, choi_ * s); }

cplx hs_inner(const SuperOp& a, const SuperOp& b) {
    if (a.n() != b.n()) throw dimension_error("hs_inner: dimension mismatch");
    // Tr(N_a^* N_b) = entrywise <N_a, N_b>; the Choi map is an entry
    // permutation of the natural map, so the Choi matrices give the same
    // value.
    cplx acc = 0.0;
    const auto& ca = a.choi().data();
    const auto& cb = b.choi().data();
    for (size_t i = 0; i < ca.size(); ++i) acc += std::conj(ca[i]) * cb[i];
    return acc;
}

double superop_distance(const SuperOp& a, const SuperOp& b) {
    return (a.choi() - b.choi()).frobenius_norm();
}

double superop_norm(const SuperOp& a) { return a.choi().frobenius_norm(); }

CMatrix dagger_tensor(const CMatrix& w) {
    if (!w.is_square()) throw dimension_error("dagger_tensor: matrix not square");
    const int m = w.rows();
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (n * n != m) throw dimension_error("dagger_tensor: dimension is not a perfect square");
    CMatrix out(m, m);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int j1 = 0; j1 < n; ++j1)
                for (int j2 = 0; j2 < n; ++j2)
                    out(i1 * n + i2, j1 * n + j2) = std::conj(w(j2 * n + j1, i2 * n + i1));
    return out;
}

double pairing_with_ray(const SuperOp& s, const CMatrix& v) {
    const int n = s.n();
    if (v.rows() != n || v.cols() != n)
        throw dimension_error("pairing_with_ray: V must be n x n");
    CMatrix u = vec(v);
    cplx acc = 0.0;
    for (int r = 0; r < n * n; ++r) {
        cplx row = 0.0;
        for (int c = 0; c < n * n; ++c) row += s.choi()(r, c) * u(c, 0);
        acc += std::conj(u(r, 0)) * row;
    }
    return std::real(acc);
}

OrthonormalBasis OrthonormalBasis::standard(int n) {
    OrthonormalBasis basis;
    basis.n_ = n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.b_.push_back(CMatrix::identity(n) * cplx(1.0 / std::sqrt(n), 0.0));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            CMatrix sym(n, n), asym(n, n);
            sym(j, k) = sym(k, j) = inv_sqrt2;
            asym(k, j) = cplx(0.0, inv_sqrt2);
            asym(j, k) = cplx(0.0, -inv_sqrt2);
            basis.b_.push_back(std::move(sym));
            basis.b_.push_back(std::move(asym));
        }
    for (int l = 1; l < n; ++l) {
        CMatrix d(n, n);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) d(j, j) = norm;
        d(l, l) = -static_cast<double>(l) * norm;
        basis.b_.push_back(std::move(d));
    }
    return basis;
}

} // namespace mapcones
