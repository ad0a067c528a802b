#pragma once

#include <vector>

#include "dareal/types.hpp"

namespace dareal {

/// A point of the unit ball of C^d (or of its closure when constructed via
/// `closure`, used for analytic-continuation checks past the sphere).
class BallPoint {
 public:
  /// Interior point: requires <lambda,lambda> < 1 strictly.
  static BallPoint interior(std::vector<Complex> coords);
  /// Closure point: permits <lambda,lambda> <= 1.
  static BallPoint closure(std::vector<Complex> coords);
  static BallPoint origin(Index d);

  Index dim() const { return static_cast<Index>(coords_.size()); }
  const std::vector<Complex>& coords() const { return coords_; }
  Complex operator[](Index j) const { return coords_[static_cast<size_t>(j)]; }
  double norm() const;  // sqrt(<lambda,lambda>)

  /// Standard C^d inner product sum_j lambda_j conj(zeta_j).
  static Complex inner(const BallPoint& lambda, const BallPoint& zeta);

  bool same_coordinates(const BallPoint& other) const;

 private:
  explicit BallPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {}
  std::vector<Complex> coords_;
};

/// d-tuple of equal-size square state operators A_1..A_d.
struct OperatorTuple {
  std::vector<ComplexMatrix> blocks;

  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<ComplexMatrix> b);

  Index d() const { return static_cast<Index>(blocks.size()); }
  Index dim_x() const { return blocks.empty() ? 0 : blocks.front().rows(); }

  /// Column stack [A_1; ...; A_d] : X -> X^d.
  ComplexMatrix stacked() const;
  /// Row [A_1^* ... A_d^*] : X^d -> X, the adjoint of the column stack.
  ComplexMatrix adjoint_row() const;
  /// Z(lambda) A = sum_j lambda_j A_j : X -> X.
  ComplexMatrix z_contraction(const BallPoint& lambda) const;
  /// A^* Z(zeta)^* = sum_j conj(zeta_j) A_j^* : X -> X.
  ComplexMatrix z_contraction_adjoint(const BallPoint& zeta) const;
};

/// Output pair (C, A); contractive when sum A_j^* A_j + C^* C <= I.
struct OutputPair {
  ComplexMatrix C;  // dimY x dimX
  OperatorTuple A;

  OutputPair() = default;
  OutputPair(ComplexMatrix c, OperatorTuple a);

  Index d() const { return A.d(); }
  Index dim_x() const { return A.dim_x(); }
  Index dim_y() const { return C.rows(); }

  /// I - sum_j A_j^* A_j - C^* C (Hermitian).
  ComplexMatrix contractivity_defect() const;
  /// (I - A^* Z(zeta)^*)^{-1} C^* : Y -> X, the kernel-section state map.
  ComplexMatrix section_state(const BallPoint& zeta) const;
  /// Observability evaluation C (I - Z(lambda) A)^{-1} x.
  ComplexMatrix observe(const BallPoint& lambda, const ComplexMatrix& x) const;
};

/// Colligation U = [A B; C D] : X (+) U -> X^d (+) Y.
struct Colligation {
  OperatorTuple A;
  std::vector<ComplexMatrix> B;  // d blocks, each dimX x dimU
  ComplexMatrix C;               // dimY x dimX
  ComplexMatrix D;               // dimY x dimU

  Colligation() = default;
  Colligation(OperatorTuple a, std::vector<ComplexMatrix> b, ComplexMatrix c,
              ComplexMatrix d);

  Index d() const { return A.d(); }
  Index dim_x() const { return A.dim_x(); }
  Index dim_u() const { return D.cols(); }
  Index dim_y() const { return D.rows(); }

  OutputPair output_pair() const { return OutputPair(C, A); }
  /// Full block matrix, (d dimX + dimY) x (dimX + dimU).
  ComplexMatrix as_matrix() const;
  /// Z(lambda) B = sum_j lambda_j B_j : U -> X.
  ComplexMatrix z_contraction_b(const BallPoint& lambda) const;
  /// Column stack [B_1; ...; B_d] : U -> X^d.
  ComplexMatrix b_stacked() const;
};

/// Transfer function S(lambda) = D + C (I - Z(lambda) A)^{-1} Z(lambda) B,
/// evaluated by linear solve.  Raises SingularResolvent when I - Z(lambda) A
/// is numerically singular (cannot happen for interior points of a
/// contractive colligation).
ComplexMatrix transfer_eval(const Colligation& c, const BallPoint& lambda);

/// Adjoint form S(zeta)^* = D^* + B^* Z(zeta)^* (I - A^* Z(zeta)^*)^{-1} C^*.
ComplexMatrix transfer_eval_adjoint(const Colligation& c, const BallPoint& zeta);

/// Resolvent row C (I - Z(lambda) A)^{-1} : X -> Y.
ComplexMatrix resolvent_row(const OutputPair& p, const BallPoint& lambda);

/// Operator-class flags with the graded residuals they were decided from.
struct ColligationClass {
  bool contractive = false;
  bool isometric = false;
  bool coisometric = false;
  bool unitary = false;
  double norm_excess = 0.0;         // max(0, ||U|| - 1)
  double isometry_residual = 0.0;   // ||U^* U - I||
  double coisometry_residual = 0.0; // ||U U^* - I||
};

struct PairClass {
  bool contractive_pair = false;
  bool isometric_pair = false;
  double defect_min_eigenvalue = 0.0;
  double defect_norm = 0.0;
};

ColligationClass classify(const Colligation& c, const Tolerances& tol = {});
PairClass classify(const OutputPair& p, const Tolerances& tol = {});

/// Z(lambda) = [lambda_1 I ... lambda_d I] : X^d -> X.
ComplexMatrix z_row(const BallPoint& lambda, Index dim_x);

}  // namespace dareal
