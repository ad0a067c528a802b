#pragma once

#include "dareal/colligation.hpp"
#include "dareal/kernels.hpp"
#include "dareal/sampling.hpp"
#include "dareal/types.hpp"

namespace dareal {

/// A subspace of C^n carried as an orthonormal basis together with an
/// orthonormal basis of its orthocomplement.
struct SubspaceBasis {
  Index ambient_dim = 0;
  ComplexMatrix basis;       // ambient_dim x dim, orthonormal columns
  ComplexMatrix complement;  // ambient_dim x (ambient_dim - dim)

  Index dim() const { return basis.cols(); }
  Index codim() const { return complement.cols(); }

  static SubspaceBasis from_span(const ComplexMatrix& span_columns,
                                 const Tolerances& tol = {});
};

/// Result of computing the canonical subspace D of X^d spanned by the
/// vectors Z(zeta)^* (I - A^* Z(zeta)^*)^{-1} C^* y.
struct DomainSubspace {
  SubspaceBasis space;
  int degree_reached = 0;       // last Taylor degree enumerated
  bool stop_rule_triggered = false;  // two consecutive degrees added no rank
};

/// Computes D from the Taylor coefficients of the generating vectors,
/// increasing the total degree until two consecutive degrees add no rank
/// (hard cap 2 * d * dimX), then cross-checks the rank against generators
/// sampled at cfg.sample_count seeded points.  A rank disagreement raises
/// RankInstability; a non-contractive pair raises NotContractivePair.
DomainSubspace domain_subspace(const OutputPair& p, const SampleConfig& cfg = {},
                               const Tolerances& tol = {});

/// The operator V = [A_V B_V; C_V D_V] : D (+) Y -> X (+) U expressed on the
/// orthonormal basis of D, together with its isometry diagnostics.  V is an
/// isometry exactly when K_S = K_{C,A}.
struct IsometryV {
  ComplexMatrix matrix;       // (dimX + dimU) x (dimD + dimY)
  ComplexMatrix a_v;          // dimX x dimD     A^* restricted to D
  ComplexMatrix b_v;          // dimX x dimY     C^*
  ComplexMatrix c_v;          // dimU x dimD     solved from the generators
  ComplexMatrix d_v;          // dimU x dimY     S(0)^*
  ComplexMatrix range_basis;  // orthonormal basis of R_V in X (+) U
  double lsq_residual = 0.0;      // generator-equation fit residual
  double isometry_residual = 0.0; // ||V^* V - I||
  bool isometric = false;
};

/// Assembles V per its defining relations, solving C_V by least squares over
/// sampled generator equations.  Raises LeastSquaresInconsistent when either
/// the fit residual or the isometry defect exceeds eq_tol - both signal
/// K_S != K_{C,A}.
IsometryV build_V_and_check(const SchurEvaluator& s, const OutputPair& p,
                            const SubspaceBasis& dsub, const SampleConfig& cfg = {},
                            const Tolerances& tol = {});

/// The degeneracy space U0 = { u : S(lambda) u == 0 } computed from stacked
/// samples of S (plus Taylor coefficients when S comes from a colligation).
SubspaceBasis kernel_of_multiplier(const SchurEvaluator& s, const SampleConfig& cfg = {},
                                   const Tolerances& tol = {});

}  // namespace dareal
