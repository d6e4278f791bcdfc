#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mapcones/numerics.hpp"

namespace mapcones {

/// A linear map on M_n, held canonically as its Choi matrix
///   C = sum_{jk} E_jk (x) S(E_jk),  C[(j,a),(k,b)] = S(E_jk)(a,b).
/// Other representations are materialized on demand by pure index
/// permutations / eigendecompositions, so values are immutable and safe to
/// share across threads.
///
/// Representations and conventions:
///  * natural N: N vec(X) = vec(S(X)) under column-stacking vec;
///    for S = T_W with W = sum A_i (x) B_i (action X -> sum A_i X B_i)
///    this gives N = sum B_i^T (x) A_i.
///  * tensor W: the element of M_n (x) M_n^op representing S, as an
///    n^2 x n^2 matrix with the first factor on the slow index.
///  * kraus: S(X) = sum L_i^* X L_i (left factor adjointed), extracted from
///    the eigendecomposition of a PSD Choi matrix.
class SuperOp {
public:
    SuperOp() = default;

    static SuperOp from_choi(int n, CMatrix choi);
    static SuperOp from_natural(int n, const CMatrix& natural);
    static SuperOp from_tensor(int n, const CMatrix& tensor);
    static SuperOp from_kraus(int n, const std::vector<CMatrix>& kraus);
    /// Build from the action X -> f(X), evaluated on the matrix units.
    static SuperOp from_action(int n, const std::function<CMatrix(const CMatrix&)>& f);
    /// T_{A (x) B}: X -> A X B.
    static SuperOp from_tensor_pair(const CMatrix& a, const CMatrix& b);
    /// X -> V X V^* (completely positive rank-one conjugation).
    static SuperOp conjugation(const CMatrix& v);

    /// The named maps: P (depolarizing, X -> Tr(X) I/n), D (conditional
    /// expectation onto the diagonal), T (transpose), Id.
    static SuperOp standard_map(char name, int n);
    static SuperOp zero(int n);

    int n() const { return n_; }
    const CMatrix& choi() const { return choi_; }
    CMatrix natural() const;
    CMatrix tensor() const;
    /// Kraus factors of a CP map; throws numeric_error reporting the most
    /// negative Choi eigenvalue if the map is not CP within tol.
    std::vector<CMatrix> kraus(double tol = 1e-10) const;

    CMatrix apply(const CMatrix& x) const;

    SuperOp star() const;   // adjoint w.r.t. the Hilbert-Schmidt pairing
    SuperOp sharp() const;  // multiplicative involution S#(A) = S(A*)*

    bool is_hermiticity_preserving(double tol = 1e-12) const;
    bool is_unital(double tol = 1e-10) const;           // S(I) = I
    bool is_trace_preserving(double tol = 1e-10) const; // Tr S(X) = Tr X
    bool is_zero_on_identity(double tol = 1e-10) const; // S(I) = 0

    SuperOp operator+(const SuperOp& o) const;
    SuperOp operator-(const SuperOp& o) const;
    SuperOp operator*(const SuperOp& o) const;  // composition
    SuperOp scaled(cplx s) const;

private:
    int n_ = 0;
    CMatrix choi_;
};

inline SuperOp compose(const SuperOp& a, const SuperOp& b) { return a * b; }
inline SuperOp add(const SuperOp& a, const SuperOp& b) { return a + b; }
inline SuperOp scale(cplx s, const SuperOp& a) { return a.scaled(s); }
SuperOp identity_superop(int n);

/// Hilbert-Schmidt pairing <S1, S2> = Tr(N(S1)^* N(S2)); equals the pairing
/// of the tensor representatives.
cplx hs_inner(const SuperOp& a, const SuperOp& b);

/// Frobenius distance of the Choi matrices (a metric on superoperators).
double superop_distance(const SuperOp& a, const SuperOp& b);
double superop_norm(const SuperOp& a);

/// The involution (A (x) B)^dag = B^* (x) A^*, extended conjugate-linearly,
/// acting on a tensor-representation matrix. T_{W^dag} = (T_W)^#.
CMatrix dagger_tensor(const CMatrix& w);

/// <T_{V (x) V*}, S> = vec(V)^* C_S vec(V); real for hermiticity-preserving
/// S. This is the dual-pairing kernel behind every witness search.
double pairing_with_ray(const SuperOp& s, const CMatrix& v);

/// Hermitian orthonormal basis of M_n with B_0 = I/sqrt(n) and all other
/// elements traceless. For n = 2 this is exactly {I, sx, sy, sz}/sqrt(2).
class OrthonormalBasis {
public:
    static OrthonormalBasis standard(int n);

    int n() const { return n_; }
    int size() const { return static_cast<int>(b_.size()); }
    const CMatrix& operator[](int i) const { return b_[i]; }
    const std::vector<CMatrix>& elements() const { return b_; }

private:
    int n_ = 0;
    std::vector<CMatrix> b_;
};

} // namespace mapcones
