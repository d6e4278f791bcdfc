#include "mapcones/generators.hpp"

#include <algorithm>
#include <cmath>

namespace mapcones {

namespace {

CMatrix symmetrized(const CMatrix& c) { return (c + c.adjoint()) * cplx(0.5, 0.0); }

} // namespace

SuperOp build_gksl(const GKSLData& g) {
    if (!g.h.is_square()) throw dimension_error("build_gksl: H is not square");
    const int n = g.h.rows();
    if (!g.h.is_hermitian(1e-12))
        throw numeric_error("build_gksl: H is not hermitian, max|H - H*| = " +
                            std::to_string(g.h.hermiticity_defect()));
    for (const CMatrix& vj : g.v)
        if (vj.rows() != n || vj.cols() != n)
            throw dimension_error("build_gksl: jump operator is not n x n");

    CMatrix vvsum(n, n);
    for (const CMatrix& vj : g.v) vvsum += vj * vj.adjoint();

    return SuperOp::from_action(n, [&](const CMatrix& x) {
        CMatrix out = cplx(0.0, 1.0) * (g.h * x - x * g.h);
        for (const CMatrix& vj : g.v) out += vj * x * vj.adjoint();
        out -= cplx(0.5, 0.0) * (vvsum * x + x * vvsum);
        return out;
    });
}

DMatrix to_dmatrix(const SuperOp& s, const OrthonormalBasis& basis) {
    const int n = s.n();
    if (basis.n() != n) throw dimension_error("to_dmatrix: basis dimension mismatch");
    const int m = n * n;
    CMatrix nat = s.natural();
    CMatrix d(m, m);
    // D_ij = <conj(B_j) (x) B_i, N_S> entrywise
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const CMatrix& bi = basis[i];
            const CMatrix& bj = basis[j];
            cplx acc = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const cplx w = bj(a, b);
                    if (w == cplx(0.0)) continue;
                    for (int c = 0; c < n; ++c)
                        for (int e = 0; e < n; ++e)
                            acc += w * std::conj(bi(c, e)) * nat(a * n + c, b * n + e);
                }
            d(i, j) = acc;
        }
    DMatrix out{basis, std::move(d), 0.0};
    out.kappa = std::real(out.d(0, 0)) / n;
    return out;
}

SuperOp from_dmatrix(const DMatrix& dm) {
    const int n = dm.basis.n();
    return SuperOp::from_action(n, [&](const CMatrix& x) {
        CMatrix out(n, n);
        for (int i = 0; i < dm.d.rows(); ++i)
            for (int j = 0; j < dm.d.cols(); ++j) {
                const cplx c = dm.d(i, j);
                if (c == cplx(0.0)) continue;
                out += c * (dm.basis[i] * x * dm.basis[j].adjoint());
            }
        return out;
    });
}

namespace {

// lower-right (n^2 - 1) block of the D matrix
CMatrix d_submatrix(const CMatrix& d) {
    const int m = d.rows() - 1;
    CMatrix sub(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sub(i, j) = d(i + 1, j + 1);
    return sub;
}

} // namespace

bool is_cp_generator(const SuperOp& s, double tol) {
    DMatrix dm = to_dmatrix(s, OrthonormalBasis::standard(s.n()));
    if (!dm.d.is_hermitian(1e-10)) return false;
    EigResult e = hermitian_eig(symmetrized(d_submatrix(dm.d)));
    const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    return e.values.front() >= -tol * (1.0 + scale);
}

ConeVerdict k_positive_generator_witnessed(const SuperOp& s, int k, const WitnessOptions& opts) {
    const int n = s.n();
    if (k < 1 || k > n) throw dimension_error("k_positive_generator_witnessed: need 1 <= k <= n");
    ConeVerdict v;
    v.cone = "P_k";
    v.k = k;
    if (k == n) {
        // exact: Q over traceless V is the quadratic form of the D submatrix
        OrthonormalBasis basis = OrthonormalBasis::standard(n);
        DMatrix dm = to_dmatrix(s, basis);
        EigResult e = hermitian_eig(symmetrized(d_submatrix(dm.d)));
        const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
        v.margin = e.values.front();
        if (e.values.front() >= -opts.tol * (1.0 + scale)) {
            v.status = ConeStatus::Member;
        } else {
            v.status = ConeStatus::NotMember;
            CMatrix w(n, n);
            for (int i = 0; i < n * n - 1; ++i) w += e.vectors(i, 0) * basis[i + 1];
            v.witness = w;
        }
        return v;
    }
    SearchResult r =
        minimize_ray_pairing(s.choi(), n, k, CMatrix::identity(n), opts);
    v.margin = r.best_value;
    if (r.best_value < -opts.tol) {
        v.status = ConeStatus::NotMember;
        v.witness = r.best_v;
    } else {
        v.status = ConeStatus::NoWitnessFound;
    }
    return v;
}

double isotropic_form_value(const CMatrix& d3, const std::vector<cplx>& v) {
    cplx acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += std::conj(v[i]) * d3(i, j) * v[j];
    return std::real(acc);
}

namespace {

struct IsoPoint {
    double a[3];
    double b[3];
};

double iso_value(const CMatrix& d3, const IsoPoint& p) {
    std::vector<cplx> v(3);
    const double inv = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) v[i] = cplx(p.a[i] * inv, p.b[i] * inv);
    return isotropic_form_value(d3, v);
}

void normalize3(double* x) {
    double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (n < 1e-300) {
        x[0] = 1.0;
        x[1] = x[2] = 0.0;
        return;
    }
    for (int i = 0; i < 3; ++i) x[i] /= n;
}

void retract(IsoPoint& p) {
    normalize3(p.a);
    double dot = p.a[0] * p.b[0] + p.a[1] * p.b[1] + p.a[2] * p.b[2];
    for (int i = 0; i < 3; ++i) p.b[i] -= dot * p.a[i];
    normalize3(p.b);
}

IsoPoint iso_descend(const CMatrix& d3, IsoPoint p, int steps) {
    // f = (a^T R a + b^T R b - 2 a^T J b)/2 on unit a, b with a.b = 0
    double rmat[3][3], jmat[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            rmat[i][j] = std::real(d3(i, j));
            jmat[i][j] = std::imag(d3(i, j));
        }
    double eta = 0.25;
    double f = iso_value(d3, p);
    for (int it = 0; it < steps; ++it) {
        double ga[3], gb[3];
        for (int i = 0; i < 3; ++i) {
            ga[i] = gb[i] = 0.0;
            for (int j = 0; j < 3; ++j) {
                ga[i] += rmat[i][j] * p.a[j] - jmat[i][j] * p.b[j];
                gb[i] += rmat[i][j] * p.b[j] + jmat[i][j] * p.a[j];
            }
        }
        IsoPoint q = p;
        for (int i = 0; i < 3; ++i) {
            q.a[i] -= eta * ga[i];
            q.b[i] -= eta * gb[i];
        }
        retract(q);
        const double fq = iso_value(d3, q);
        if (fq < f - 1e-16) {
            p = q;
            f = fq;
            eta = std::min(0.5, eta * 1.2);
        } else {
            eta *= 0.5;
            if (eta < 1e-12) break;
        }
    }
    return p;
}

} // namespace

std::pair<double, std::vector<cplx>> isotropic_form_min(const CMatrix& d3,
                                                        const WitnessOptions& opts) {
    if (d3.rows() != 3 || d3.cols() != 3)
        throw dimension_error("isotropic_form_min: expected a 3x3 block");
    Rng rng(opts.seed);

    double best = 1e300;
    IsoPoint best_p{};

    auto consider = [&](const IsoPoint& p) {
        const double f = iso_value(d3, p);
        if (f < best) {
            best = f;
            best_p = p;
        }
    };

    // deterministic coordinate-axis starts catch diagonal forms exactly
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            IsoPoint p{};
            p.a[i] = 1.0;
            p.b[j] = 1.0;
            consider(p);
            consider(iso_descend(d3, p, opts.refine_steps));
        }

    const int nsamples = std::max(16, opts.samples / 10);
    for (int s = 0; s < nsamples; ++s) {
        IsoPoint p;
        for (int i = 0; i < 3; ++i) p.a[i] = rng.gauss();
        for (int i = 0; i < 3; ++i) p.b[i] = rng.gauss();
        retract(p);
        consider(p);
        if (s % 64 == 0) consider(iso_descend(d3, p, opts.refine_steps));
    }
    consider(iso_descend(d3, best_p, 4 * opts.refine_steps));

    std::vector<cplx> v(3);
    const double inv = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) v[i] = cplx(best_p.a[i] * inv, best_p.b[i] * inv);
    return {best, v};
}

ConeVerdict positive_generator_m2(const SuperOp& s, const WitnessOptions& opts) {
    if (s.n() != 2)
        throw dimension_error("positive_generator_m2: defined for maps on M_2 only, got n = " +
                              std::to_string(s.n()));
    DMatrix dm = to_dmatrix(s, OrthonormalBasis::standard(2));
    CMatrix d3(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d3(i, j) = dm.d(i + 1, j + 1);
    auto [value, v] = isotropic_form_min(symmetrized(d3), opts);

    ConeVerdict verdict;
    verdict.cone = "P_k";
    verdict.k = 1;
    verdict.margin = value;
    if (value < -opts.tol) {
        verdict.status = ConeStatus::NotMember;
        CMatrix w(3, 1);
        for (int i = 0; i < 3; ++i) w(i, 0) = v[i];
        verdict.witness = w;
    } else {
        verdict.status = ConeStatus::NoWitnessFound;
    }
    return verdict;
}

bool unitality_relations_check(const SuperOp& s, double tol) {
    if (s.n() != 2) throw dimension_error("unitality_relations_check: n = 2 only");
    DMatrix dm = to_dmatrix(s, OrthonormalBasis::standard(2));
    const CMatrix& d = dm.d;
    const double scale = 1.0 + d.max_abs();
    cplx trace_sum = 0.0;
    for (int p = 0; p < 4; ++p) trace_sum += d(p, p);
    if (std::abs(trace_sum) > tol * scale) return false;
    const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (const auto& pqr : cyc) {
        const int p = pqr[0], q = pqr[1], r = pqr[2];
        cplx rel = d(p, 0) + d(0, p) + cplx(0.0, 1.0) * (d(q, r) - d(r, q));
        if (std::abs(rel) > tol * scale) return false;
    }
    return true;
}

GKSLData gksl_decompose(const SuperOp& s, double tol) {
    const int n = s.n();
    const CMatrix psi_id = s.apply(CMatrix::identity(n));
    if (psi_id.max_abs() > 1e-10 * (1.0 + superop_norm(s)))
        throw numeric_error("gksl_decompose: generator does not kill the identity, |Psi(I)| = " +
                            std::to_string(psi_id.max_abs()));
    OrthonormalBasis basis = OrthonormalBasis::standard(n);
    DMatrix dm = to_dmatrix(s, basis);
    if (!dm.d.is_hermitian(1e-10))
        throw numeric_error("gksl_decompose: D matrix is not hermitian, defect " +
                            std::to_string(dm.d.hermiticity_defect()));
    EigResult e = hermitian_eig(symmetrized(d_submatrix(dm.d)));
    const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    if (e.values.front() < -tol * (1.0 + scale))
        throw numeric_error("gksl_decompose: D submatrix is not PSD, min eigenvalue " +
                            std::to_string(e.values.front()));

    const int m = n * n - 1;
    GKSLData out;
    for (int idx = 0; idx < m; ++idx) {
        const double lam = e.values[idx];
        if (lam <= 1e-10 * (1.0 + scale)) continue;
        CMatrix vj(n, n);
        for (int i = 0; i < m; ++i) vj += (std::sqrt(lam) * e.vectors(i, idx)) * basis[i + 1];
        out.v.push_back(std::move(vj));
    }
    // W from the identity-direction column, rescaled to the B_0 -> I gauge
    CMatrix w(n, n);
    for (int i = 1; i < n * n; ++i) w += (dm.d(i, 0) / std::sqrt(double(n))) * basis[i];
    out.h = (w - w.adjoint()) * cplx(0.0, -0.5);
    // enforce exact hermiticity of the recovered H
    out.h = (out.h + out.h.adjoint()) * cplx(0.5, 0.0);
    return out;
}

void IdempotentPair::validate() const {
    if (t0.n() != s.n()) throw dimension_error("IdempotentPair: dimension mismatch");
    const double scale = 1.0 + superop_norm(t0) + superop_norm(s);
    const double r0 = superop_distance(t0 * t0, t0);
    if (r0 > 1e-10 * scale)
        throw numeric_error("IdempotentPair: T0 is not idempotent, ||T0 T0 - T0|| = " +
                            std::to_string(r0));
    const double r1 = superop_distance(s * t0, s);
    const double r2 = superop_distance(t0 * s, s);
    if (r1 > 1e-10 * scale || r2 > 1e-10 * scale)
        throw numeric_error("IdempotentPair: absorption fails, ||S T0 - S|| = " +
                            std::to_string(r1) + ", ||T0 S - S|| = " + std::to_string(r2));
}

SuperOp exp_idempotent(const IdempotentPair& p, double t, double tail_tol) {
    if (t < 0.0) throw numeric_error("exp_idempotent: t must be nonnegative");
    p.validate();
    const int n = p.t0.n();
    const int m = n * n;
    CMatrix nt0 = p.t0.natural();
    CMatrix ns = p.s.natural();
    const double snorm = ns.frobenius_norm();

    int halvings = 0;
    double tt = t;
    while (tt * snorm > 0.5 && halvings < 64) {
        tt *= 0.5;
        ++halvings;
    }

    CMatrix acc = nt0;
    CMatrix term = CMatrix::identity(m);
    double bound = 1.0;
    for (int k = 1; k <= 80; ++k) {
        term = term * ns * cplx(tt / k, 0.0);
        acc += term;
        bound *= tt * snorm / k;
        // converge well below the requested tail so the squaring phase
        // cannot amplify truncation error past it
        if (bound * (tt * snorm) / (k + 1) <= tail_tol * 1e-4) break;
    }
    for (int i = 0; i < halvings; ++i) acc = acc * acc;
    return SuperOp::from_natural(n, acc);
}

ConeVerdict conditional_positivity(const IdempotentPair& p, int k, const WitnessOptions& opts) {
    p.validate();
    const int n = p.t0.n();
    if (k < 1 || k > n) throw dimension_error("conditional_positivity: need 1 <= k <= n");

    ConeVerdict v;
    v.cone = "P_k";
    v.k = k;

    EigResult e = hermitian_eig(symmetrized(p.t0.choi()));
    const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    const double rank_tol = 1e-8 * (1.0 + scale);

    if (e.values.front() >= rank_tol) {
        // <T_{V (x) V*}, T0> = 0 forces V = 0: the condition is vacuous
        v.status = ConeStatus::NoWitnessFound;
        v.margin = 0.0;
        return v;
    }

    int positives = 0;
    for (double lam : e.values)
        if (lam > rank_tol) ++positives;
    if (positives != 1 || e.values.front() < -rank_tol)
        throw unsupported_construction(
            "conditional_positivity: unsupported idempotent (constraint reduction is known for "
            "the identity, compressions X -> P X P, and full-rank Choi matrices only)");

    const int last = n * n - 1;
    CMatrix w(n * n, 1);
    for (int i = 0; i < n * n; ++i) w(i, 0) = std::sqrt(e.values[last]) * e.vectors(i, last);
    CMatrix a = unvec(w, n);
    const cplx tr = a.trace();
    if (std::abs(tr) < 1e-8)
        throw unsupported_construction(
            "conditional_positivity: unsupported idempotent (rank-one Choi with traceless "
            "factor)");
    a *= std::conj(tr) / std::abs(tr);  // make Tr(A) real positive
    if (!a.is_hermitian(1e-8) || max_abs_diff(a * a, a) > 1e-8 * (1.0 + a.max_abs()))
        throw unsupported_construction(
            "conditional_positivity: unsupported idempotent (Choi factor is not an orthogonal "
            "projection)");

    SearchResult r = minimize_ray_pairing(p.s.choi(), n, k, a, opts);
    v.margin = r.best_value;
    if (r.best_value < -opts.tol) {
        v.status = ConeStatus::NotMember;
        v.witness = r.best_v;
    } else {
        v.status = ConeStatus::NoWitnessFound;
    }
    return v;
}

SplitResult semigroup_split(const SuperOp& t0, double tol) {
    const double resid = superop_distance(t0 * t0, t0);
    if (resid > tol * (1.0 + superop_norm(t0)))
        throw numeric_error("semigroup_split: not idempotent, ||T0^2 - T0|| = " +
                            std::to_string(resid));
    const int n = t0.n();
    const double tr = std::real(t0.natural().trace());
    const int dim_im = static_cast<int>(std::lround(tr));
    SplitResult out{t0, identity_superop(n) - t0, dim_im, n * n - dim_im};
    return out;
}

SuperOp compression_idempotent(const CMatrix& p_proj, double tol) {
    if (!p_proj.is_square()) throw dimension_error("compression_idempotent: P is not square");
    if (!p_proj.is_hermitian(tol) ||
        max_abs_diff(p_proj * p_proj, p_proj) > tol * (1.0 + p_proj.max_abs()))
        throw numeric_error("compression_idempotent: P is not an orthogonal projection");
    return SuperOp::from_action(p_proj.rows(),
                                [&](const CMatrix& x) { return p_proj * x * p_proj; });
}

SuperOp lift_block_map(const SuperOp& s, const SuperOp& alpha) {
    if (s.n() != alpha.n()) throw dimension_error("lift_block_map: dimension mismatch");
    if (!alpha.is_hermiticity_preserving(1e-10))
        throw numeric_error("lift_block_map: alpha must preserve hermiticity");
    const int n = s.n();
    return SuperOp::from_action(2 * n, [&](const CMatrix& x) {
        CMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = x(i, j);
        CMatrix sa = s.apply(a);
        CMatrix asa = alpha.apply(sa);
        CMatrix out(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                out(i, j) = sa(i, j);
                out(n + i, n + j) = asa(i, j);
            }
        return out;
    });
}

} // namespace mapcones
