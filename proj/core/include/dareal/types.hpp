#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace dareal {

using Complex = std::complex<double>;

/// Dense complex matrix, the carrier for every operator in the library.
/// Zero-dimensional matrices (0 rows and/or 0 columns) are legal values;
/// products involving them yield zero-dimensional or zero matrices of the
/// expected shape.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical cutoffs shared by every operation.
///   rank_tol : relative singular-value cutoff for rank decisions
///   psd_tol  : eigenvalue floor below which a Hermitian matrix is rejected
///              as not positive semidefinite (values in [-psd_tol, 0] clamp)
///   eq_tol   : elementwise residual bound for identities expected to hold
///              in exact arithmetic
struct Tolerances {
  double rank_tol = 1e-10;
  double psd_tol = 1e-10;
  double eq_tol = 1e-9;

  void validate() const {
    if (rank_tol <= 0 || psd_tol <= 0 || eq_tol <= 0)
      throw std::invalid_argument("Tolerances: all cutoffs must be strictly positive");
  }
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DAREAL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

DAREAL_DEFINE_ERROR(NotHermitian);
DAREAL_DEFINE_ERROR(NotPsd);
DAREAL_DEFINE_ERROR(NormExceedsOne);
DAREAL_DEFINE_ERROR(SingularResolvent);
DAREAL_DEFINE_ERROR(SingularDenominator);
DAREAL_DEFINE_ERROR(DimensionMismatch);
DAREAL_DEFINE_ERROR(DuplicatePoints);
DAREAL_DEFINE_ERROR(NotContractive);
DAREAL_DEFINE_ERROR(NotContractivePair);
DAREAL_DEFINE_ERROR(RankInstability);
DAREAL_DEFINE_ERROR(LeastSquaresInconsistent);
DAREAL_DEFINE_ERROR(NecessaryConditionsFail);
DAREAL_DEFINE_ERROR(ParameterShapeMismatch);
DAREAL_DEFINE_ERROR(DimUTooSmall);
DAREAL_DEFINE_ERROR(KernelMismatch);
DAREAL_DEFINE_ERROR(DegenerateGram);
DAREAL_DEFINE_ERROR(ParseError);

#undef DAREAL_DEFINE_ERROR

}  // namespace dareal
