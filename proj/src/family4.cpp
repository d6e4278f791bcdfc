#include "mapcones/family4.hpp"

#include <algorithm>
#include <cmath>

namespace mapcones {

SuperOp FamilyParams::to_superop() const {
    SuperOp p = SuperOp::standard_map('P', n);
    SuperOp d = SuperOp::standard_map('D', n);
    SuperOp t = SuperOp::standard_map('T', n);
    SuperOp id = SuperOp::standard_map('I', n);
    return p.scaled(alpha) + d.scaled(beta) + t.scaled(gamma) + id.scaled(delta);
}

std::vector<std::pair<double, int>> choi_eigs(const FamilyParams& p) {
    const double base = p.alpha / p.n;
    const int n = p.n;
    return {
        {base - p.gamma, (n * n - n) / 2},
        {base + p.gamma, (n * n - n) / 2},
        {base + p.beta + p.gamma, n - 1},
        {base + p.beta + p.gamma + n * p.delta, 1},
    };
}

double family_min_choi_eig(const FamilyParams& p) {
    double m = 1e300;
    for (const auto& [value, mult] : choi_eigs(p))
        if (mult > 0) m = std::min(m, value);
    return m;
}

FamilyParams partial_transpose_family(const FamilyParams& p) {
    return {p.alpha, p.beta, p.delta, p.gamma, p.n};
}

double family_ppt_min_eig(const FamilyParams& p) {
    return family_min_choi_eig(partial_transpose_family(p));
}

bool is_cp_family(const FamilyParams& p) {
    const double n = p.n;
    const double bound = std::max({n * std::abs(p.gamma), -n * (p.beta + p.gamma),
                                   -n * (p.beta + p.gamma) - n * n * p.delta});
    return p.alpha >= bound;
}

bool is_ppt_family(const FamilyParams& p) {
    return family_min_choi_eig(p) >= 0.0 && family_ppt_min_eig(p) >= 0.0;
}

bool is_eb_family(const FamilyParams& p) {
    if (p.n != 2)
        throw unsupported_construction("is_eb_family: exact only on M_2 (PPT = separable)");
    return is_ppt_family(p);
}

namespace {
void require_subfamily(double off1, double off2, const char* what) {
    if (std::abs(off1) > 1e-12 || std::abs(off2) > 1e-12)
        throw unsupported_construction(std::string(what) +
                                       ": parameters are outside the two-coefficient subfamily");
}
} // namespace

bool is_k_positive_10(const FamilyParams& p, int k) {
    if (k < 1 || k > p.n) throw dimension_error("is_k_positive_10: need 1 <= k <= n");
    require_subfamily(p.beta, p.gamma, "is_k_positive_10");
    return p.alpha >= 0.0 && p.delta >= -p.alpha / (k * p.n);
}

bool is_k_positive_01(const FamilyParams& p, int k) {
    if (k < 1 || k > p.n) throw dimension_error("is_k_positive_01: need 1 <= k <= n");
    require_subfamily(p.beta, p.delta, "is_k_positive_01");
    if (k == 1) return p.alpha >= 0.0 && p.alpha >= -p.n * p.gamma;
    return p.alpha >= p.n * std::abs(p.gamma);
}

FamilyParams evolve_family(const FamilyParams& g, double t) {
    FamilyParams out;
    out.n = g.n;
    out.alpha = std::exp(t * (g.beta + g.gamma + g.delta)) * std::expm1(t * g.alpha);
    out.beta = std::exp(t * (g.gamma + g.delta)) * std::expm1(t * g.beta);
    out.gamma = std::exp(t * g.delta) * std::sinh(t * g.gamma);
    out.delta = std::exp(t * g.delta) * std::cosh(t * g.gamma);
    return out;
}

FamilyParams compose_family(const FamilyParams& a, const FamilyParams& b) {
    if (a.n != b.n) throw dimension_error("compose_family: dimension mismatch");
    FamilyParams r;
    r.n = a.n;
    r.alpha = a.alpha * b.alpha + a.alpha * (b.beta + b.gamma + b.delta) +
              (a.beta + a.gamma + a.delta) * b.alpha;
    r.beta = a.beta * b.beta + a.beta * (b.gamma + b.delta) + (a.gamma + a.delta) * b.beta;
    r.gamma = a.gamma * b.delta + a.delta * b.gamma;
    r.delta = a.gamma * b.gamma + a.delta * b.delta;
    return r;
}

FamilyCone parse_family_cone(const std::string& name) {
    if (name == "cp" || name == "CP") return FamilyCone::CP;
    if (name == "eb" || name == "EB") return FamilyCone::EB;
    if (name == "ppt" || name == "PPT") return FamilyCone::PPT;
    throw unsupported_construction("unknown cone '" + name + "', expected cp, eb or ppt");
}

std::string to_string(FamilyCone c) {
    switch (c) {
        case FamilyCone::CP: return "CP";
        case FamilyCone::EB: return "EB";
        default: return "PPT";
    }
}

namespace {

bool family_member(const FamilyParams& g, FamilyCone cone, double t) {
    FamilyParams at = evolve_family(g, t);
    switch (cone) {
        case FamilyCone::CP: return family_min_choi_eig(at) >= 0.0;
        case FamilyCone::EB:
            if (g.n != 2)
                throw unsupported_construction("entry_time: EB predicate exact only at n = 2");
            return is_ppt_family(at);
        default: return is_ppt_family(at);
    }
}

double bisect_crossing(const FamilyParams& g, FamilyCone cone, double lo, double hi, double tol,
                       double* width_out) {
    // invariant: member(lo) != member(hi)
    const bool at_lo = family_member(g, cone, lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (family_member(g, cone, mid) == at_lo)
            lo = mid;
        else
            hi = mid;
    }
    if (width_out) *width_out = hi - lo;
    return 0.5 * (lo + hi);
}

std::optional<double> closed_form_entry(const FamilyParams& g, FamilyCone cone) {
    const double eps = 1e-12;
    const bool beta0 = std::abs(g.beta) <= eps;
    if (!beta0 || g.alpha <= 0.0) return std::nullopt;
    const bool unital = std::abs(g.alpha + g.gamma + g.delta) <= eps;
    if (!unital) return std::nullopt;
    if (std::abs(g.gamma) <= eps) {
        // depolarizing slice L = alpha (P - Id); the trajectory is CP
        // throughout, and its PPT/EB boundary sits where the partially
        // transposed Choi determinant (1-x)^2/4 - x^2 vanishes: x = 1/3.
        if (g.n == 2 && (cone == FamilyCone::EB || cone == FamilyCone::PPT))
            return std::log(3.0) / g.alpha;
        return std::nullopt;
    }
    if (std::abs(g.gamma - g.alpha) <= eps) {
        if (cone == FamilyCone::CP) {
            const double n = g.n;
            return std::log((n + std::sqrt(n * n + 8.0 * n)) / 4.0) / g.alpha;
        }
        if (g.n == 2 && (cone == FamilyCone::EB || cone == FamilyCone::PPT))
            return std::log(cubic_entry_root()) / g.alpha;
    }
    return std::nullopt;
}

} // namespace

double cubic_entry_root() {
    // Newton on x^3 - 2x^2 - 1 from x = 2.2; quadratic convergence
    double x = 2.2;
    for (int i = 0; i < 60; ++i) {
        const double f = x * x * x - 2.0 * x * x - 1.0;
        const double df = 3.0 * x * x - 4.0 * x;
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return x;
}

EntryTimeResult entry_time(const FamilyParams& g, FamilyCone cone, double t_lo, double t_hi,
                           double tol) {
    if (!(t_lo >= 0.0) || !(t_hi > t_lo))
        throw dimension_error("entry_time: need 0 <= t_lo < t_hi");
    EntryTimeResult res;
    res.cone = to_string(cone);
    res.bracket_lo = t_lo;
    res.bracket_hi = t_hi;

    // 64 log-spaced scan points locate every sign change before bisection
    const int npts = 64;
    const double lo_eff = std::max(t_lo, t_hi * 1e-9);
    std::vector<double> grid;
    grid.push_back(t_lo);
    for (int i = 1; i < npts; ++i)
        grid.push_back(lo_eff * std::pow(t_hi / lo_eff, double(i) / (npts - 1)));

    std::vector<bool> member(npts);
    for (int i = 0; i < npts; ++i) member[i] = family_member(g, cone, grid[i]);

    double width = 0.0;
    std::optional<double> first_entry;
    for (int i = 1; i < npts; ++i) {
        if (member[i] == member[i - 1]) continue;
        double w = 0.0;
        const double c = bisect_crossing(g, cone, grid[i - 1], grid[i], tol, &w);
        res.crossings.push_back(c);
        if (!member[i - 1] && member[i] && !first_entry) {
            first_entry = c;
            width = w;
        }
    }

    res.closed_form = closed_form_entry(g, cone);
    if (member[0]) {
        res.status = EntryStatus::Found;
        res.t_star = t_lo;
        res.already_member_at_start = true;
        res.method = "bisection";
        res.residual = 0.0;
        return res;
    }
    if (!first_entry) {
        res.status = EntryStatus::NeverInBracket;
        res.method = res.closed_form ? "closed_form" : "bisection";
        if (res.closed_form) res.t_star = *res.closed_form;
        return res;
    }
    res.status = EntryStatus::Found;
    res.t_star = *first_entry;
    if (res.closed_form) {
        res.method = "both";
        res.residual = std::abs(res.t_star - *res.closed_form);
    } else {
        res.method = "bisection";
        res.residual = width;
    }
    return res;
}

double ppt_determinant_condition(const FamilyParams& g, DetVariant variant, double t) {
    const double eps = 1e-12;
    if (g.n != 2)
        throw unsupported_construction("ppt_determinant_condition: n = 2 only");
    if (variant == DetVariant::Depolarizing) {
        if (std::abs(g.beta) > eps || std::abs(g.gamma) > eps || std::abs(g.delta + g.alpha) > eps)
            throw unsupported_construction(
                "ppt_determinant_condition: generator is not alpha (P - Id)");
        const double x = std::exp(-t * g.alpha);
        return -0.75 * x * x - 2.0 * x + 1.0;
    }
    if (std::abs(g.beta) > eps || std::abs(g.delta + g.alpha + g.gamma) > eps)
        throw unsupported_construction(
            "ppt_determinant_condition: generator is not alpha P + gamma T - (alpha+gamma) Id");
    const double xa = std::exp(-t * g.alpha);
    const double nu = 1.0 - xa;
    const double rho = xa * (1.0 + std::exp(-2.0 * t * g.gamma)) * 0.5;
    return 0.25 * nu * nu - rho * rho;
}

} // namespace mapcones
