#pragma once

#include "dareal/types.hpp"

namespace dareal {

/// Square root of a Hermitian PSD matrix together with its numerical rank.
struct PsdSqrt {
  ComplexMatrix sqrt;  // Hermitian PSD, sqrt * sqrt == m within eq_tol
  Index rank = 0;      // eigenvalues above rank_tol * (max eigenvalue)
};

/// Eigenvalue-based PSD square root.  Eigenvalues in [-psd_tol, 0] are
/// clamped to zero; anything below -psd_tol raises NotPsd.  The input must
/// be Hermitian within eq_tol (raises NotHermitian otherwise).
PsdSqrt psd_sqrt_and_defect(const ComplexMatrix& m, const Tolerances& tol = {});

/// PSD square root together with its Moore-Penrose inverse.  Both use the
/// same eigenvalue cut at rank_tol * (max eigenvalue), so clamped noise
/// eigenvalues are never inverted.
struct PsdSqrtPinv {
  ComplexMatrix sqrt;
  ComplexMatrix pinv_sqrt;
  Index rank = 0;
};
PsdSqrtPinv psd_sqrt_with_pinv(const ComplexMatrix& m, const Tolerances& tol = {});

enum class BasisMode { Range, Kernel };

/// Orthonormal basis of the column space (Range) or null space (Kernel) of m
/// at the relative cutoff tol.rank_tol.  Output columns carry a fixed phase
/// convention (first significant component real positive), so the basis is
/// reproducible for identical input.
ComplexMatrix orthonormal_basis(const ComplexMatrix& m, BasisMode mode,
                                const Tolerances& tol = {});

/// Polar decomposition t = g * modulus with modulus = (t^* t)^{1/2} and g the
/// partial isometry with initial space Ran(modulus) and Ker g^* = Ker t^*.
struct PolarDecomposition {
  ComplexMatrix partial_isometry;  // g
  ComplexMatrix modulus;           // (t^* t)^{1/2}
};

/// Requires ||t|| <= 1 + eq_tol (raises NormExceedsOne); the callers only
/// ever decompose contractions.
PolarDecomposition polar_partial_isometry(const ComplexMatrix& t,
                                          const Tolerances& tol = {});

/// Largest singular value; 0 for zero-dimensional input.
double operator_norm(const ComplexMatrix& m);

/// Numerical rank at the relative singular-value cutoff.
Index numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

/// Low-rank factor L (n x rank) of a Hermitian PSD matrix with L L^* == m,
/// computed by outer-product Cholesky with diagonal pivoting.  Columns are
/// ordered by the pivot sequence, giving a reproducible representative of
/// the right-unitary family of factors.
ComplexMatrix pivoted_cholesky(const ComplexMatrix& m, const Tolerances& tol = {});

/// Minimum-norm least-squares solution of a * x = b via SVD.
ComplexMatrix lstsq(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermiticity defect max |m - m^*|; 0 for empty matrices.
double hermiticity_defect(const ComplexMatrix& m);

/// true when every entry is finite (vacuously true for empty matrices).
bool all_finite(const ComplexMatrix& m);

}  // namespace dareal
