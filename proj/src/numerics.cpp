#include "mapcones/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mapcones {

namespace {

int isqrt_exact(int m, const char* what) {
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (n * n != m)
        throw dimension_error(std::string(what) + ": dimension " + std::to_string(m) +
                              " is not a perfect square");
    return n;
}

// One complex Jacobi rotation on the (p, q) plane. G is the 2x2 unitary of
// normalized eigenvectors of the pivot block; applied as A <- G* A G.
struct Rotation {
    cplx g00, g01, g10, g11;
};

Rotation pivot_rotation(double app, double aqq, cplx b) {
    const double absb = std::abs(b);
    const double r = 0.5 * (app - aqq);
    const double d = std::hypot(r, absb);
    double w;  // = lambda_max - app, computed cancellation-free
    if (r >= 0.0)
        w = absb * absb / (d + r);
    else
        w = d - r;
    const double nrm = std::sqrt(absb * absb + w * w);
    // Eigenvectors of [[app, b], [conj(b), aqq]] are (b, w) and (-w, conj(b)).
    // Order the columns so |G_pp| >= 1/sqrt(2): bounded rotation angles keep
    // the cyclic sweep convergent.
    Rotation g;
    if (absb >= w) {
        g.g00 = b / nrm;
        g.g10 = cplx(w / nrm, 0.0);
        g.g01 = cplx(-w / nrm, 0.0);
        g.g11 = std::conj(b) / nrm;
    } else {
        g.g00 = cplx(-w / nrm, 0.0);
        g.g10 = std::conj(b) / nrm;
        g.g01 = b / nrm;
        g.g11 = cplx(w / nrm, 0.0);
    }
    return g;
}

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

} // namespace

EigResult hermitian_eig(const CMatrix& m) {
    if (!m.is_square())
        throw numeric_error("hermitian_eig: matrix is not square (" + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ")");
    if (!m.is_hermitian(1e-12))
        throw numeric_error("hermitian_eig: matrix is not hermitian, max|M - M*| = " +
                            std::to_string(m.hermiticity_defect()));

    const int n = m.rows();
    // Symmetrize to kill representation noise below the hermiticity tolerance.
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(std::real(m(i, i)), 0.0);
        for (int j = i + 1; j < n; ++j) {
            cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    CMatrix u = CMatrix::identity(n);

    const double scale = a.frobenius_norm();
    const double stop = 1e-15 * (1.0 + scale);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > stop; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                if (std::abs(b) <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const Rotation g =
                    pivot_rotation(std::real(a(p, p)), std::real(a(q, q)), b);
                // columns: A <- A G on columns p, q
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * g.g00 + aiq * g.g10;
                    a(i, q) = aip * g.g01 + aiq * g.g11;
                }
                // rows: A <- G* A on rows p, q
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = std::conj(g.g00) * apj + std::conj(g.g10) * aqj;
                    a(q, j) = std::conj(g.g01) * apj + std::conj(g.g11) * aqj;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = cplx(std::real(a(p, p)), 0.0);
                a(q, q) = cplx(std::real(a(q, q)), 0.0);
                // accumulate eigenvectors: U <- U G
                for (int i = 0; i < n; ++i) {
                    const cplx uip = u(i, p), uiq = u(i, q);
                    u(i, p) = uip * g.g00 + uiq * g.g10;
                    u(i, q) = uip * g.g01 + uiq * g.g11;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = std::real(a(order[k], order[k]));
        for (int i = 0; i < n; ++i) res.vectors(i, k) = u(i, order[k]);
    }
    return res;
}

double min_eigenvalue(const CMatrix& hermitian) {
    return hermitian_eig(hermitian).values.front();
}

bool is_psd(const CMatrix& hermitian, double tol) {
    return min_eigenvalue(hermitian) >= -tol;
}

CMatrix expm(const CMatrix& m) {
    if (!m.is_square()) throw numeric_error("expm: matrix is not square");
    const int n = m.rows();
    double nrm = m.frobenius_norm();
    int s = 0;
    while (nrm > 0.25 && s < 64) {
        nrm *= 0.5;
        ++s;
    }
    CMatrix a = m * cplx(std::ldexp(1.0, -s), 0.0);
    CMatrix e = CMatrix::identity(n) + a;
    CMatrix term = a;
    for (int j = 2; j <= 40; ++j) {
        term = term * a * cplx(1.0 / j, 0.0);
        e += term;
        if (term.frobenius_norm() <= 1e-18 * (1.0 + e.frobenius_norm())) break;
    }
    for (int i = 0; i < s; ++i) e = e * e;
    return e;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

CMatrix partial_transpose(const CMatrix& m, PtSide side) {
    if (!m.is_square()) throw dimension_error("partial_transpose: matrix not square");
    const int n = isqrt_exact(m.rows(), "partial_transpose");
    CMatrix r(m.rows(), m.cols());
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int b = 0; b < n; ++b) {
                    if (side == PtSide::Second)
                        r(j * n + a, k * n + b) = m(j * n + b, k * n + a);
                    else
                        r(j * n + a, k * n + b) = m(k * n + a, j * n + b);
                }
    return r;
}

CMatrix vec(const CMatrix& x) {
    if (!x.is_square()) throw dimension_error("vec: matrix not square");
    const int n = x.rows();
    CMatrix v(n * n, 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) v(j * n + i, 0) = x(i, j);
    return v;
}

CMatrix unvec(const CMatrix& v, int n) {
    if (v.rows() != n * n || v.cols() != 1)
        throw dimension_error("unvec: expected " + std::to_string(n * n) + "x1 vector");
    CMatrix x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = v(j * n + i, 0);
    return x;
}

CMatrix gaussian_matrix(Rng& rng, int rows, int cols) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cgauss();
    return m;
}

CMatrix random_hermitian(Rng& rng, int n) {
    CMatrix g = gaussian_matrix(rng, n, n);
    CMatrix h = (g + g.adjoint()) * cplx(0.5, 0.0);
    return h;
}

namespace {
// rank-one |x><y| as a matrix: x y^*
CMatrix rank_one(const CMatrix& x, const CMatrix& y) {
    CMatrix m(x.rows(), y.rows());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.rows(); ++j) m(i, j) = x(i, 0) * std::conj(y(j, 0));
    return m;
}
} // namespace

CMatrix sample_rank_k_traceless(int n, int k, const std::optional<CMatrix>& constraint, Rng& rng) {
    if (k < 1 || k > n)
        throw dimension_error("sample_rank_k_traceless: need 1 <= k <= n, got k=" +
                              std::to_string(k) + ", n=" + std::to_string(n));
    if (constraint && (constraint->rows() != n || constraint->cols() != n))
        throw dimension_error("sample_rank_k_traceless: constraint matrix must be n x n");

    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<CMatrix> xs, ys;
        for (int j = 0; j < k; ++j) {
            xs.push_back(gaussian_matrix(rng, n, 1));
            ys.push_back(gaussian_matrix(rng, n, 1));
        }
        if (!constraint) {
            CMatrix v(n, n);
            for (int j = 0; j < k; ++j) v += rng.cgauss() * rank_one(xs[j], ys[j]);
            if (v.frobenius_norm() > 1e-8) return v;
            continue;
        }
        const CMatrix& kmat = *constraint;
        if (k == 1) {
            // orthogonalize y against K x so that Tr(K |x><y|) = <y|Kx> = 0
            CMatrix kx = kmat * xs[0];
            double kx2 = std::pow(kx.frobenius_norm(), 2);
            if (kx2 < 1e-16) continue;
            cplx overlap = 0.0;
            for (int i = 0; i < n; ++i) overlap += std::conj(kx(i, 0)) * ys[0](i, 0);
            CMatrix y = ys[0] - kx * (overlap / kx2);
            if (y.frobenius_norm() < 1e-8) continue;
            CMatrix v = rank_one(xs[0], y);
            if (v.frobenius_norm() > 1e-8) return v;
            continue;
        }
        // coefficients c_j = Tr(K |x_j><y_j|) = <y_j | K x_j>
        std::vector<cplx> c(k), lam(k);
        for (int j = 0; j < k; ++j) {
            CMatrix kx = kmat * xs[j];
            cplx cj = 0.0;
            for (int i = 0; i < n; ++i) cj += std::conj(ys[j](i, 0)) * kx(i, 0);
            c[j] = cj;
        }
        if (std::abs(c[k - 1]) < 1e-8) continue;  // singular solve, resample
        cplx acc = 0.0;
        for (int j = 0; j < k - 1; ++j) {
            lam[j] = rng.cgauss();
            acc += lam[j] * c[j];
        }
        lam[k - 1] = -acc / c[k - 1];
        CMatrix v(n, n);
        for (int j = 0; j < k; ++j) v += lam[j] * rank_one(xs[j], ys[j]);
        if (v.frobenius_norm() > 1e-8) return v;
    }
    throw numeric_error("sample_rank_k_traceless: failed to draw a nonzero sample");
}

std::vector<double> singular_values(const CMatrix& v) {
    // Jordan-Wielandt embedding [[0, V], [V*, 0]]: eigenvalues are +-sigma_i
    // (plus |rows-cols| zeros), so small singular values keep full precision.
    const int r = v.rows(), c = v.cols();
    CMatrix jw(r + c, r + c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            jw(i, r + j) = v(i, j);
            jw(r + j, i) = std::conj(v(i, j));
        }
    EigResult e = hermitian_eig(jw);
    std::vector<double> s;
    const int want = std::min(r, c);
    for (int i = 0; i < want; ++i) s.push_back(std::max(0.0, e.values[r + c - 1 - i]));
    return s;
}

int numerical_rank(const CMatrix& v, double tol) {
    int r = 0;
    for (double s : singular_values(v))
        if (s > tol) ++r;
    return r;
}

} // namespace mapcones
