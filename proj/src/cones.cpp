#include "mapcones/cones.hpp"

#include <algorithm>
#include <cmath>

namespace mapcones {

std::string to_string(ConeStatus s) {
    switch (s) {
        case ConeStatus::Member: return "Member";
        case ConeStatus::NotMember: return "NotMember";
        default: return "NoWitnessFound";
    }
}

namespace {

void require_hermiticity_preserving(const SuperOp& s, const char* what) {
    if (!s.is_hermiticity_preserving(1e-10))
        throw numeric_error(std::string(what) +
                            ": map does not preserve hermiticity (Choi defect " +
                            std::to_string(s.choi().hermiticity_defect()) + ")");
}

CMatrix symmetrized(const CMatrix& c) { return (c + c.adjoint()) * cplx(0.5, 0.0); }

// Gram-Schmidt on the columns; near-dependent columns are replaced by
// canonical basis vectors completed against the earlier ones.
void orthonormalize_columns(CMatrix& m, Rng& rng) {
    const int rows = m.rows(), cols = m.cols();
    for (int c = 0; c < cols; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cplx overlap = 0.0;
            for (int i = 0; i < rows; ++i) overlap += std::conj(m(i, prev)) * m(i, c);
            for (int i = 0; i < rows; ++i) m(i, c) -= overlap * m(i, prev);
        }
        double nrm = 0.0;
        for (int i = 0; i < rows; ++i) nrm += std::norm(m(i, c));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            for (int i = 0; i < rows; ++i) m(i, c) = rng.cgauss();
            --c;  // redo this column with the fresh draw
            continue;
        }
        for (int i = 0; i < rows; ++i) m(i, c) /= nrm;
    }
}

// Orthonormal basis of the orthogonal complement of g (as columns).
CMatrix hyperplane_basis(const CMatrix& g) {
    const int m = g.rows();
    double nrm = g.frobenius_norm();
    CMatrix u = g * cplx(1.0 / nrm, 0.0);
    cplx phase = std::abs(u(0, 0)) > 1e-300 ? u(0, 0) / std::abs(u(0, 0)) : cplx(1.0);
    CMatrix w = u;
    w(0, 0) += phase;
    const double w2 = std::pow(w.frobenius_norm(), 2);
    // Householder reflector: column 0 is parallel to g, the rest span g-perp
    CMatrix q(m, m - 1);
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            cplx h = (i == j ? cplx(1.0) : cplx(0.0)) - 2.0 * w(i, 0) * std::conj(w(j, 0)) / w2;
            q(i, j - 1) = h;
        }
    }
    return q;
}

struct EigMinResult {
    double value;
    CMatrix vector;
};

// Minimum eigenpair of a hermitian matrix, optionally restricted to the
// hyperplane orthogonal to g.
EigMinResult restricted_min_eig(const CMatrix& h, const CMatrix* g) {
    if (g == nullptr || g->frobenius_norm() < 1e-13) {
        EigResult e = hermitian_eig(symmetrized(h));
        CMatrix v(h.rows(), 1);
        for (int i = 0; i < h.rows(); ++i) v(i, 0) = e.vectors(i, 0);
        return {e.values.front(), v};
    }
    CMatrix q = hyperplane_basis(*g);
    CMatrix b = q.adjoint() * h * q;
    EigResult e = hermitian_eig(symmetrized(b));
    CMatrix u(b.rows(), 1);
    for (int i = 0; i < b.rows(); ++i) u(i, 0) = e.vectors(i, 0);
    CMatrix v = q * u;
    return {e.values.front(), v};
}

// q(V) = Re vec(V)* C vec(V) for unit-Frobenius V.
double ray_value(const CMatrix& choi, const CMatrix& v) {
    CMatrix u = vec(v);
    cplx acc = 0.0;
    const int m = u.rows();
    for (int r = 0; r < m; ++r) {
        cplx row = 0.0;
        for (int c = 0; c < m; ++c) row += choi(r, c) * u(c, 0);
        acc += std::conj(u(r, 0)) * row;
    }
    return std::real(acc);
}

class RayMinimizer {
public:
    RayMinimizer(const CMatrix& choi, int n, int k, const std::optional<CMatrix>& constraint)
        : choi_(choi), n_(n), k_(k), constraint_(constraint) {}

    // ALS over the factors of V = X Y^*: with one factor orthonormalized the
    // other half-step is an exact (possibly hyperplane-restricted) minimum
    // eigenproblem, so each step is globally optimal in its block.
    std::pair<double, CMatrix> refine(const CMatrix& v0, int max_steps, Rng& rng) const {
        auto [x, y] = factor(v0);
        double q = 1e300;
        CMatrix best = v0;
        for (int step = 0; step < max_steps; ++step) {
            orthonormalize_columns(y, rng);
            EigMinResult rx = solve_x(x, y);
            x = unstack(rx.vector);
            orthonormalize_columns(x, rng);
            EigMinResult ry = solve_y(x, y);
            y = unstack(ry.vector).conjugate();
            const double qn = ry.value;
            if (std::abs(q - qn) <= 1e-14 * (1.0 + std::abs(qn))) {
                q = qn;
                break;
            }
            q = qn;
        }
        CMatrix v = x * y.adjoint();
        const double nrm = v.frobenius_norm();
        if (nrm < 1e-14) return {0.0, v0};
        v *= cplx(1.0 / nrm, 0.0);
        return {ray_value(choi_, v), v};
    }

    double value(const CMatrix& v) const { return ray_value(choi_, v); }

private:
    std::pair<CMatrix, CMatrix> factor(const CMatrix& v) const {
        // right factor: top-k eigenvectors of V*V; left factor: V Y
        EigResult e = hermitian_eig(symmetrized(v.adjoint() * v));
        CMatrix y(n_, k_);
        for (int c = 0; c < k_; ++c) {
            const int src = n_ - 1 - c;
            for (int i = 0; i < n_; ++i) y(i, c) = e.vectors(i, src);
        }
        return {v * y, y};
    }

    CMatrix unstack(const CMatrix& s) const {
        CMatrix m(n_, k_);
        for (int c = 0; c < k_; ++c)
            for (int i = 0; i < n_; ++i) m(i, c) = s(c * n_ + i, 0);
        return m;
    }

    // H_Y[(c n + i),(c' n + i')] = sum_{j j'} Y(j,c) C[(j n + i),(j' n + i')] conj(Y(j',c'))
    EigMinResult solve_x(const CMatrix& x, const CMatrix& y) const {
        (void)x;
        const int m = n_ * k_;
        CMatrix h(m, m);
        for (int c = 0; c < k_; ++c)
            for (int cp = 0; cp < k_; ++cp)
                for (int i = 0; i < n_; ++i)
                    for (int ip = 0; ip < n_; ++ip) {
                        cplx acc = 0.0;
                        for (int j = 0; j < n_; ++j)
                            for (int jp = 0; jp < n_; ++jp)
                                acc += y(j, c) * choi_(j * n_ + i, jp * n_ + ip) *
                                       std::conj(y(jp, cp));
                        h(c * n_ + i, cp * n_ + ip) = acc;
                    }
        if (!constraint_) return restricted_min_eig(h, nullptr);
        // Tr(K V) = sum_c y_c^* K x_c -> functional g with g[(c n + i)] =
        // conj(sum_j conj(Y(j,c)) K(j,i))
        CMatrix g(m, 1);
        for (int c = 0; c < k_; ++c)
            for (int i = 0; i < n_; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < n_; ++j) acc += std::conj(y(j, c)) * (*constraint_)(j, i);
                g(c * n_ + i, 0) = std::conj(acc);
            }
        return restricted_min_eig(h, &g);
    }

    // with W = conj(Y):
    // H_X[(c n + j),(c' n + j')] = sum_{i i'} conj(X(i,c)) C[(j n + i),(j' n + i')] X(i',c')
    EigMinResult solve_y(const CMatrix& x, const CMatrix& y) const {
        (void)y;
        const int m = n_ * k_;
        CMatrix h(m, m);
        for (int c = 0; c < k_; ++c)
            for (int cp = 0; cp < k_; ++cp)
                for (int j = 0; j < n_; ++j)
                    for (int jp = 0; jp < n_; ++jp) {
                        cplx acc = 0.0;
                        for (int i = 0; i < n_; ++i)
                            for (int ip = 0; ip < n_; ++ip)
                                acc += std::conj(x(i, c)) * choi_(j * n_ + i, jp * n_ + ip) *
                                       x(ip, cp);
                        h(c * n_ + j, cp * n_ + jp) = acc;
                    }
        if (!constraint_) return restricted_min_eig(h, nullptr);
        // Tr(K V) = sum_{c j} W(j,c) (K X)(j,c) -> g = stacked conj(K X)
        CMatrix kx = (*constraint_) * x;
        CMatrix g(m, 1);
        for (int c = 0; c < k_; ++c)
            for (int j = 0; j < n_; ++j) g(c * n_ + j, 0) = std::conj(kx(j, c));
        return restricted_min_eig(h, &g);
    }

    const CMatrix& choi_;
    int n_, k_;
    std::optional<CMatrix> constraint_;
};

} // namespace

SearchResult minimize_ray_pairing(const CMatrix& choi, int n, int k,
                                  const std::optional<CMatrix>& constraint,
                                  const WitnessOptions& opts) {
    RayMinimizer mini(choi, n, k, constraint);
    Rng rng(opts.seed);

    SearchResult best;
    best.best_value = 1e300;

    auto consider = [&](double q, const CMatrix& v) {
        if (q < best.best_value) {
            best.best_value = q;
            best.best_v = v;
        }
    };

    for (const CMatrix& s : opts.starts) {
        CMatrix v = s;
        const double nrm = v.frobenius_norm();
        if (nrm < 1e-14) continue;
        v *= cplx(1.0 / nrm, 0.0);
        consider(mini.value(v), v);
        auto [q, vr] = mini.refine(v, opts.refine_steps, rng);
        consider(q, vr);
        if (best.best_value < -opts.tol) return best;
    }

    const int rounds = std::max(1, opts.restarts);
    const int chunk = std::max(1, opts.samples / rounds);
    for (int r = 0; r < rounds; ++r) {
        CMatrix round_best_v;
        double round_best_q = 1e300;
        for (int s = 0; s < chunk; ++s) {
            CMatrix v = sample_rank_k_traceless(n, k, constraint, rng);
            v *= cplx(1.0 / v.frobenius_norm(), 0.0);
            const double q = mini.value(v);
            if (q < round_best_q) {
                round_best_q = q;
                round_best_v = v;
            }
        }
        consider(round_best_q, round_best_v);
        auto [q, vr] = mini.refine(round_best_v, opts.refine_steps, rng);
        consider(q, vr);
        if (best.best_value < -opts.tol) return best;
    }
    return best;
}

ConeVerdict is_cp(const SuperOp& s, double tol) {
    require_hermiticity_preserving(s, "is_cp");
    EigResult e = hermitian_eig(symmetrized(s.choi()));
    const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    ConeVerdict v;
    v.cone = "CP";
    v.margin = e.values.front();
    if (e.values.front() >= -tol * (1.0 + scale)) {
        v.status = ConeStatus::Member;
    } else {
        v.status = ConeStatus::NotMember;
        CMatrix w(s.n() * s.n(), 1);
        for (int i = 0; i < s.n() * s.n(); ++i) w(i, 0) = e.vectors(i, 0);
        v.witness = w;
    }
    return v;
}

ConeVerdict is_ppt(const SuperOp& s, double tol) {
    require_hermiticity_preserving(s, "is_ppt");
    EigResult ec = hermitian_eig(symmetrized(s.choi()));
    EigResult ep = hermitian_eig(symmetrized(partial_transpose(s.choi(), PtSide::Second)));
    const double sc = std::max({std::abs(ec.values.front()), std::abs(ec.values.back()),
                                std::abs(ep.values.front()), std::abs(ep.values.back())});
    ConeVerdict v;
    v.cone = "PPT";
    v.margin = std::min(ec.values.front(), ep.values.front());
    if (v.margin >= -tol * (1.0 + sc)) {
        v.status = ConeStatus::Member;
        return v;
    }
    v.status = ConeStatus::NotMember;
    const EigResult& bad = ec.values.front() <= ep.values.front() ? ec : ep;
    CMatrix w(s.n() * s.n(), 1);
    for (int i = 0; i < s.n() * s.n(); ++i) w(i, 0) = bad.vectors(i, 0);
    v.witness = w;
    return v;
}

ConeVerdict is_eb(const SuperOp& s, double tol) {
    require_hermiticity_preserving(s, "is_eb");
    ConeVerdict ppt = is_ppt(s, tol);
    ConeVerdict v;
    v.cone = "EB";
    v.margin = ppt.margin;
    if (ppt.status == ConeStatus::NotMember) {
        v.status = ConeStatus::NotMember;
        v.witness = ppt.witness;
        return v;
    }
    if (s.n() == 2) {
        // PPT is exact for separability on 2 (x) 2
        v.status = ConeStatus::Member;
        return v;
    }
    // sufficient certificate: CP with all canonical Kraus factors of rank one
    if (is_cp(s, tol).status == ConeStatus::Member) {
        try {
            bool rank_one = true;
            for (const CMatrix& l : s.kraus(1e-10 * (1.0 + s.choi().max_abs())))
                if (numerical_rank(l, 1e-10 * (1.0 + l.frobenius_norm())) > 1) {
                    rank_one = false;
                    break;
                }
            if (rank_one) {
                v.status = ConeStatus::Member;
                return v;
            }
        } catch (const numeric_error&) {
            // borderline spectrum: no certificate, fall through
        }
    }
    v.status = ConeStatus::NoWitnessFound;
    return v;
}

ConeVerdict is_k_positive_witnessed(const SuperOp& s, int k, const WitnessOptions& opts) {
    if (k < 1 || k > s.n())
        throw dimension_error("is_k_positive_witnessed: need 1 <= k <= n");
    SearchResult r = minimize_ray_pairing(s.choi(), s.n(), k, std::nullopt, opts);
    ConeVerdict v;
    v.cone = "P_k";
    v.k = k;
    v.margin = r.best_value;
    if (r.best_value < -opts.tol) {
        v.status = ConeStatus::NotMember;
        v.witness = r.best_v;
    } else {
        v.status = ConeStatus::NoWitnessFound;
    }
    return v;
}

int kraus_rank_bound(const SuperOp& s, double tol) {
    std::vector<CMatrix> ls = s.kraus(tol);  // throws for non-CP input
    int bound = 0;
    for (const CMatrix& l : ls) bound = std::max(bound, numerical_rank(l, tol));
    return bound;
}

double dual_pairing(const SuperOp& a, const SuperOp& b) {
    require_hermiticity_preserving(a, "dual_pairing");
    require_hermiticity_preserving(b, "dual_pairing");
    cplx z = hs_inner(a, b);
    if (std::abs(std::imag(z)) > 1e-10 * (1.0 + std::abs(z)))
        throw numeric_error("dual_pairing: pairing has imaginary part " +
                            std::to_string(std::imag(z)));
    return std::real(z);
}

} // namespace mapcones
