#pragma once

#include "mapcones/cones.hpp"
#include "mapcones/superop.hpp"

namespace mapcones {

/// Data of a generator in Lindblad form,
///   Psi(X) = i[H, X] + sum_j ( V_j X V_j^* - (1/2)(V_j V_j^* X + X V_j V_j^*) ).
/// This is the identity-killing convention: Psi(I) = 0 by construction, so
/// exp(t Psi) is unital.
struct GKSLData {
    CMatrix h;               // hermitian
    std::vector<CMatrix> v;  // jump operators
};

/// Builds the Lindblad-form generator; rejects non-hermitian H.
SuperOp build_gksl(const GKSLData& g);

/// Coefficient matrix of a map in an orthonormal basis:
///   S(X) = sum_{ij} D_ij B_i X B_j^*.
/// kappa is D_00 / n, the coefficient of X when the identity-direction basis
/// element is rescaled to I (the normalization used by the W-equation in
/// gksl_decompose).
struct DMatrix {
    OrthonormalBasis basis;
    CMatrix d;     // (n^2) x (n^2)
    double kappa;  // Re(D_00) / n
};

DMatrix to_dmatrix(const SuperOp& s, const OrthonormalBasis& basis);
SuperOp from_dmatrix(const DMatrix& d);

/// Exact test: exp(tS) is CP for all t >= 0 iff D is hermitian and the
/// lower-right (n^2-1) block of D is PSD.
bool is_cp_generator(const SuperOp& s, double tol = 1e-9);

/// One-sided witness test over traceless rank-<=k V of
///   Q(V) = <T_{V (x) V*}, S>;
/// Q < -tol certifies that exp(tS) leaves P_k. Exact for k = n (minimum
/// eigenvalue of the D submatrix).
ConeVerdict k_positive_generator_witnessed(const SuperOp& s, int k,
                                           const WitnessOptions& opts = {});

/// Positivity criterion for generators on M_2 in the Pauli basis: samples
/// isotropic vectors v in C^3 (sum v_j^2 = 0, parametrized as a + ib with
/// |a| = |b|, a.b = 0) and minimizes <v|D'v> over them, D' the lower-right
/// 3x3 Pauli coefficient block.
ConeVerdict positive_generator_m2(const SuperOp& s, const WitnessOptions& opts = {});

/// <v|D'v> for a 3x3 hermitian block and v in C^3 (no isotropy check).
double isotropic_form_value(const CMatrix& d3, const std::vector<cplx>& v);

/// Minimum of <v|D'v> over unit isotropic v (sampling + projected descent).
std::pair<double, std::vector<cplx>> isotropic_form_min(const CMatrix& d3,
                                                        const WitnessOptions& opts = {});

/// Identity-preservation relations for a generator on M_2 in the Pauli
/// basis: sum_p D_pp = 0 and (D_p0 + D_0p) + i (D_qr - D_rq) = 0 for cyclic
/// (p,q,r). Must agree with the direct check S(I) = 0.
bool unitality_relations_check(const SuperOp& s, double tol = 1e-9);

/// Constructive inverse of build_gksl for generators with S(I) = 0 and PSD
/// D submatrix: factors the submatrix, reassembles jump operators, and
/// recovers H from the identity-direction column. Only the rebuilt ACTION is
/// contracted to match (the (H, V) data itself is gauge).
GKSLData gksl_decompose(const SuperOp& s, double tol = 1e-8);

/// A semigroup starting point T0 (idempotent) together with a generator S
/// satisfying S T0 = T0 S = S.
struct IdempotentPair {
    SuperOp t0;
    SuperOp s;

    /// Throws numeric_error if the idempotency / absorption residuals exceed
    /// 1e-10.
    void validate() const;
};

/// exp_{T0}(tS) = T0 + sum_{m>=1} t^m S^m / m!, evaluated by scaling and
/// squaring (the series truncated once the factorial tail bound drops below
/// tail_tol). Satisfies the semigroup law exp(s) exp(t) = exp(s+t).
SuperOp exp_idempotent(const IdempotentPair& p, double t, double tail_tol = 1e-12);

/// T0-conditional positivity of S with respect to the cone P_k: searches
/// rank-<=k V with <T_{V (x) V*}, T0> = 0 for <T_{V (x) V*}, S> < -tol.
/// The constraint reduces to Tr(K V) = 0 when the Choi matrix of T0 is rank
/// one with a projection-like reshape (T0 = Id gives K = I, compressions
/// give K = P); a positive-definite Choi matrix makes the constraint
/// vacuous (NoWitnessFound). Anything else is rejected as an unsupported
/// idempotent.
ConeVerdict conditional_positivity(const IdempotentPair& p, int k,
                                   const WitnessOptions& opts = {});

struct SplitResult {
    SuperOp proj_im;
    SuperOp proj_ker;
    int dim_im;
    int dim_ker;
};

/// Spectral split of an idempotent: proj_im = T0, proj_ker = Id - T0,
/// dimensions from the trace of the natural matrix.
SplitResult semigroup_split(const SuperOp& t0, double tol = 1e-10);

/// X -> P X P for an orthogonal projection P.
SuperOp compression_idempotent(const CMatrix& p_proj, double tol = 1e-10);

/// Block embedding of a map on M_n into M_{2n}:
///   [[A, B], [C, D]] -> [[S(A), 0], [0, alpha(S(A))]].
/// lift(S1) o lift(S2) = lift(S1 o S2) for any S1, S2.
SuperOp lift_block_map(const SuperOp& s, const SuperOp& alpha);

} // namespace mapcones
