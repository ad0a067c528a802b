#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dareal/colligation.hpp"
#include "dareal/types.hpp"

namespace dareal {

/// Callable source of S(lambda) values with the value at the origin cached.
/// Sources are either a colligation (evaluated through its transfer
/// function, with a genuine adjoint-form route), or an arbitrary closure
/// such as a closed-form expression.
class SchurEvaluator {
 public:
  using EvalFn = std::function<ComplexMatrix(const BallPoint&)>;

  SchurEvaluator() = default;  // empty; assign from a factory before use

  static SchurEvaluator from_colligation(Colligation c);
  static SchurEvaluator from_function(EvalFn fn, Index d, Index dim_u, Index dim_y);

  /// S(lambda) * w for a constant right factor w (dimU x dimF).
  SchurEvaluator right_multiplied(const ComplexMatrix& w) const;

  ComplexMatrix operator()(const BallPoint& lambda) const;
  /// S(zeta)^*; for colligation sources this is evaluated through the
  /// adjoint resolvent rather than by transposing the direct value.
  ComplexMatrix adjoint_at(const BallPoint& zeta) const;

  const ComplexMatrix& at_origin() const { return s0_; }
  Index d() const { return d_; }
  Index dim_u() const { return dim_u_; }
  Index dim_y() const { return dim_y_; }

  /// Set when the evaluator was built from a colligation.
  const Colligation* colligation() const { return colligation_.get(); }

 private:
  EvalFn eval_;
  EvalFn adjoint_eval_;
  ComplexMatrix s0_;
  Index d_ = 0, dim_u_ = 0, dim_y_ = 0;
  std::shared_ptr<const Colligation> colligation_;
};

/// Which kernel to evaluate: the scalar Szego kernel 1/(1 - <lambda,zeta>),
/// the Schur-multiplier kernel (I - S(lambda) S(zeta)^*)/(1 - <lambda,zeta>)
/// or the output-pair kernel C (I - Z(lambda)A)^{-1}(I - A^* Z(zeta)^*)^{-1} C^*.
class KernelSpec {
 public:
  static KernelSpec szego(Index d);
  static KernelSpec schur(SchurEvaluator s);
  static KernelSpec pair(OutputPair p);

  Index d() const { return d_; }
  Index block_size() const { return block_; }
  ComplexMatrix eval(const BallPoint& lambda, const BallPoint& zeta) const;

 private:
  KernelSpec() = default;
  Index d_ = 0, block_ = 1;
  std::optional<SchurEvaluator> s_;
  std::optional<OutputPair> p_;
};

ComplexMatrix eval_kernel(const KernelSpec& k, const BallPoint& lambda,
                          const BallPoint& zeta);

/// Sampled kernel data: points plus the block Gram matrix with (i,j) block
/// K(lambda_i, lambda_j).
struct KernelSample {
  std::vector<BallPoint> points;
  ComplexMatrix gram;
  Index block = 1;
};

KernelSample sample_kernel(const KernelSpec& k, const std::vector<BallPoint>& points,
                           int threads = 1);

/// Residual of the kernel decomposition
///   K_S = K_{C,A} + [row] (I - U U^*)/(1 - <lambda,zeta>) [column]
/// with both sides fully assembled from the colligation.  Zero in exact
/// arithmetic for any contractive colligation.
double defect_identity_residual(const Colligation& c, const BallPoint& lambda,
                                const BallPoint& zeta, const Tolerances& tol = {});

struct GramCertificate {
  bool psd = false;
  double min_eigenvalue = 0.0;
  /// max elementwise |K1 - K2| over all sampled point pairs (when k2 given)
  std::optional<double> max_diff;
};

/// Positivity certificate for k1 on the finite sample, optionally comparing
/// against a second kernel pointwise.  Points must be pairwise distinct.
GramCertificate gram_certify(const KernelSpec& k1, const std::vector<BallPoint>& points,
                             const Tolerances& tol = {},
                             const KernelSpec* k2 = nullptr, int threads = 1);

}  // namespace dareal
