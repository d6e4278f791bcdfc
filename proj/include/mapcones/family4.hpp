#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapcones/superop.hpp"

namespace mapcones {

/// Coordinates of the commuting family alpha P + beta D + gamma T + delta Id
/// on M_n. Closed under composition and exponentiation, which makes every
/// cone test on it exact.
struct FamilyParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    int n = 2;

    SuperOp to_superop() const;
};

/// The four Choi eigenvalues with multiplicities
/// ((n^2-n)/2, (n^2-n)/2, n-1, 1):
///   alpha/n - gamma, alpha/n + gamma, alpha/n + beta + gamma,
///   alpha/n + beta + gamma + n delta.
std::vector<std::pair<double, int>> choi_eigs(const FamilyParams& p);

double family_min_choi_eig(const FamilyParams& p);

/// Partial transpose swaps the T and Id coefficients.
FamilyParams partial_transpose_family(const FamilyParams& p);
double family_ppt_min_eig(const FamilyParams& p);

/// Exact CP criterion: alpha >= max{ n|gamma|, -n(beta+gamma),
/// -n(beta+gamma) - n^2 delta }.
bool is_cp_family(const FamilyParams& p);
bool is_ppt_family(const FamilyParams& p);
/// n = 2 only (PPT is exact for separability there).
bool is_eb_family(const FamilyParams& p);

/// k-positivity on the alpha P + delta Id subfamily:
/// alpha >= 0 and delta >= -alpha/(k n). Rejects parameters with beta or
/// gamma present.
bool is_k_positive_10(const FamilyParams& p, int k);
/// k-positivity on the alpha P + gamma T subfamily: 1-positive iff
/// alpha >= 0 and alpha >= -n gamma; k-positive (k >= 2) iff
/// alpha >= n |gamma|. Rejects parameters with beta or delta present.
bool is_k_positive_01(const FamilyParams& p, int k);

/// Coefficients of exp(tL) for the generator L with these coordinates:
///   e^{t(beta+gamma+delta)} (e^{t alpha} - 1) P
/// + e^{t(gamma+delta)} (e^{t beta} - 1) D
/// + e^{t delta} sinh(t gamma) T + e^{t delta} cosh(t gamma) Id.
FamilyParams evolve_family(const FamilyParams& generator, double t);

/// Composition in coefficient space via the algebra relations
/// P^2 = P, D^2 = D, T^2 = Id, PD = DP = PT = TP = P, DT = TD = D.
FamilyParams compose_family(const FamilyParams& a, const FamilyParams& b);

enum class FamilyCone { CP, EB, PPT };
FamilyCone parse_family_cone(const std::string& name);
std::string to_string(FamilyCone c);

enum class EntryStatus { Found, NeverInBracket };

/// First time the semigroup exp(tL) enters the target cone, located by a
/// 64-point log scan of the exact predicate followed by bisection.
/// `crossings` lists every detected boundary crossing (entering and
/// exiting) in the bracket; the worked slices have exactly one.
/// When the generator matches a special slice a closed-form value is
/// emitted as a cross-check (method "both"); bisection remains the primary
/// path. residual = |t_star - closed_form| when both are present, else the
/// final bisection bracket width.
struct EntryTimeResult {
    std::string cone;
    EntryStatus status = EntryStatus::NeverInBracket;
    double t_star = 0.0;
    bool already_member_at_start = false;
    std::string method;  // "bisection", "closed_form", "both"
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
    std::vector<double> crossings;
    std::optional<double> closed_form;
};

EntryTimeResult entry_time(const FamilyParams& generator, FamilyCone cone, double t_lo,
                           double t_hi, double tol = 1e-10);

enum class DetVariant { Depolarizing, DepolTranspose };

/// Scalar determinant conditions for the two worked subfamilies (n = 2):
///  * Depolarizing (L = alpha(P - Id)): -(3/4) e^{-2 t alpha}
///    - 2 e^{-t alpha} + 1. NOTE: this reference polynomial has its root at
///    e^{-t alpha} = (2 sqrt(7) - 4)/3, while the actual PPT boundary of
///    the trajectory is at e^{-t alpha} = 1/3 (block determinant
///    (1-x)^2/4 - x^2), so the sign of this scalar and the exact PPT test
///    disagree on the window in between. See the ppt determinant tests.
///  * DepolTranspose (L = alpha P + gamma T - (alpha+gamma) Id):
///    nu^2/4 - rho^2 with nu = 1 - e^{-t alpha},
///    rho = e^{-t alpha}(1 + e^{-2 t gamma})/2; consistent with the exact
///    test.
double ppt_determinant_condition(const FamilyParams& generator, DetVariant variant, double t);

/// Positive root of x^3 - 2x^2 - 1 (the EB entry constant for the
/// DepolTranspose slice with gamma = alpha at n = 2).
double cubic_entry_root();

} // namespace mapcones
