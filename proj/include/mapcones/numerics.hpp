#pragma once

#include <optional>
#include <vector>

#include "mapcones/cmatrix.hpp"
#include "mapcones/rng.hpp"

namespace mapcones {

// Conventions used throughout:
//  * vec is COLUMN-stacking: vec(X)[j*n + i] = X(i, j).
//  * kron(A, B) puts the first factor on the slow index:
//    (A kron B)[(i-1)*rows(B)+k, (j-1)*cols(B)+l] = A(i,j) * B(k,l).

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary, columns are eigenvectors
};

/// Eigendecomposition of a hermitian matrix by cyclic complex Jacobi
/// rotations. M = U diag(values) U*, values ascending.
/// Throws numeric_error naming the violated symmetry for non-square or
/// non-hermitian input.
EigResult hermitian_eig(const CMatrix& m);

double min_eigenvalue(const CMatrix& hermitian);

/// true iff min eigenvalue >= -tol (tol absolute). Input must be hermitian.
bool is_psd(const CMatrix& hermitian, double tol);

/// Matrix exponential by scaling-and-squaring with a truncated series.
CMatrix expm(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

enum class PtSide { First, Second };

/// Partial transpose of an (n*n) x (n*n) matrix viewed as an operator on
/// C^n (x) C^n. Second transposes each inner block in place; First
/// transposes the outer (block) index. Involutive either way.
CMatrix partial_transpose(const CMatrix& m, PtSide side);

/// Column-stacking vectorization and its inverse.
CMatrix vec(const CMatrix& x);                 // n*n -> n^2 x 1
CMatrix unvec(const CMatrix& v, int n);        // n^2 x 1 -> n x n

CMatrix gaussian_matrix(Rng& rng, int rows, int cols);
CMatrix random_hermitian(Rng& rng, int n);

/// Random V with rank(V) <= k, built as sum_{j<=k} lambda_j |x_j><y_j|.
/// When `constraint` K is given, the last coefficient is solved so that
/// Tr(K V) = 0 (for k = 1 the right factor is orthogonalized against K x
/// instead); draws are repeated if the solve is singular. Guarantees V != 0.
CMatrix sample_rank_k_traceless(int n, int k, const std::optional<CMatrix>& constraint, Rng& rng);

/// Singular values (descending), via the eigenvalues of V* V.
std::vector<double> singular_values(const CMatrix& v);

int numerical_rank(const CMatrix& v, double tol = 1e-10);

} // namespace mapcones
