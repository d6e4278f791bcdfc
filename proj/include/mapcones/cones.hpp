#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapcones/superop.hpp"

namespace mapcones {

enum class ConeStatus { Member, NotMember, NoWitnessFound };

std::string to_string(ConeStatus s);

/// Outcome of a cone membership test. Exact tests (CP, PPT, EB at n=2)
/// return Member / NotMember only; sampled tests can certify NotMember
/// (with a re-verifiable witness) but never Member, and otherwise report
/// NoWitnessFound. A NotMember witness always re-verifies: plugging it into
/// the defining inequality yields a value below -tol.
struct ConeVerdict {
    std::string cone;  // "CP", "PPT", "EB", "P_k", "S_k"
    int k = 0;         // set for P_k / S_k labels
    ConeStatus status = ConeStatus::NoWitnessFound;
    std::optional<CMatrix> witness;
    double margin = 0.0;  // signed distance proxy (min eigenvalue or min pairing)
};

struct WitnessOptions {
    int samples = 20000;
    int refine_steps = 200;
    int restarts = 20;
    double tol = 1e-9;
    Seed seed{42};
    std::vector<CMatrix> starts;  // extra refinement starting points
};

/// Exact CP test: Choi matrix PSD within tol (relative to the spectral
/// scale). The NotMember witness is the eigenvector of the most negative
/// eigenvalue, as an n^2 x 1 column.
ConeVerdict is_cp(const SuperOp& s, double tol = 1e-9);

/// Exact test for the PPT cone: both C and its partial transpose PSD.
ConeVerdict is_ppt(const SuperOp& s, double tol = 1e-9);

/// Entanglement breaking. n = 2: exact via PPT. n >= 3: NotMember when PPT
/// fails; Member when the canonical Kraus factors all have rank one (a
/// sufficient certificate); otherwise NoWitnessFound.
ConeVerdict is_eb(const SuperOp& s, double tol = 1e-9);

/// One-sided k-positivity test: searches rank-<=k matrices V for
/// q(V) = <T_{V (x) V*}, S> < -tol (sampling plus alternating least-squares
/// refinement over the factors of V). q(V) < -tol certifies NotMember.
ConeVerdict is_k_positive_witnessed(const SuperOp& s, int k, const WitnessOptions& opts = {});

/// Max numerical rank over the canonical (eigen-)Kraus factors of a CP map.
/// Certifies membership in S_k for k = bound; sufficient only, since Kraus
/// representations are not unique.
int kraus_rank_bound(const SuperOp& s, double tol = 1e-10);

/// Real part of the Hilbert-Schmidt pairing; throws numeric_error if the
/// imaginary part exceeds 1e-10 (both maps must preserve hermiticity).
double dual_pairing(const SuperOp& a, const SuperOp& b);

// -- shared search kernel (used by cones and generators) --

struct SearchResult {
    double best_value = 0.0;
    CMatrix best_v;  // normalized to Frobenius norm 1
};

/// Minimize q(V) = vec(V)* C vec(V) over rank-<=k matrices V of unit
/// Frobenius norm, optionally restricted to the hyperplane Tr(K V) = 0.
/// Sampling seeds an exact-block ALS descent (each half-step solves a small
/// hermitian eigenproblem, so every refinement step is globally optimal in
/// one factor).
SearchResult minimize_ray_pairing(const CMatrix& choi, int n, int k,
                                  const std::optional<CMatrix>& constraint,
                                  const WitnessOptions& opts);

} // namespace mapcones
