#pragma once

#include <functional>
#include <vector>

#include "dareal/colligation.hpp"
#include "dareal/types.hpp"

namespace dareal {

/// A positive kernel sampled at finitely many ball points, together with a
/// pointwise factor F.  All Hilbert-space geometry is carried by the block
/// Gram matrix of the kernel sections at the sample points; the factor
/// induces the pushforward kernel F(lambda) M(lambda,zeta) F(zeta)^* and the
/// multiplication operator M_F between the two section spans.
struct SampledRKHS {
  using KernelFn = std::function<ComplexMatrix(const BallPoint&, const BallPoint&)>;
  using FactorFn = std::function<ComplexMatrix(const BallPoint&)>;

  std::vector<BallPoint> points;
  KernelFn kernel;     // values dim_m x dim_m
  Index dim_m = 0;
  FactorFn factor;     // values dim_f x dim_m
  Index dim_f = 0;
  ComplexMatrix gram;  // block Gram of the kernel at the points

  static SampledRKHS build(std::vector<BallPoint> points, KernelFn kernel, Index dim_m,
                           FactorFn factor, Index dim_f, int threads = 1);
};

/// F(lambda) M(lambda, zeta) F(zeta)^*.
ComplexMatrix pushforward_kernel(const SampledRKHS::KernelFn& kernel,
                                 const SampledRKHS::FactorFn& factor,
                                 const BallPoint& lambda, const BallPoint& zeta);

/// Finite-sample model of the multiplication operator M_F = Psi^*:
///   Psi : M_F(., zeta) x' -> M(., zeta) F(zeta)^* x'
/// is isometric from the pushforward section span into the base span; the
/// overlapping space is Ker M_F inside the base span.
struct OverlapReport {
  double psi_isometry_residual = 0.0;   // ||Psi^* Psi - I||
  double gamma_unitarity_residual = 0.0;  // Gamma = [M_F; P_ker] unitary defect
  double lifted_norm_residual = 0.0;    // | ||M_F f|| - ||Q f|| | over random f
  Index base_rank = 0;                  // dim of the sampled span of M
  Index pushforward_rank = 0;           // dim of the sampled span of M_F
  Index overlap_dim = 0;
  ComplexMatrix overlap_coords;  // orthonormal basis of Ker M_F (base coords)
  /// Values of the overlap basis functions at the sample points, stacked as
  /// (n_points * dim_m) x overlap_dim, for cross-identification.
  ComplexMatrix overlap_values;

  /// Coordinates (base span) of the function with the given stacked values;
  /// second return is the representation residual.
  std::pair<ComplexVector, double> coords_of_values(const ComplexVector& values) const;

  ComplexMatrix value_map;  // (n dim_m) x base_rank: coords -> stacked values
  ComplexMatrix coord_map;  // base_rank x (n dim_m): stacked values -> coords
};

/// Raises DegenerateGram when the base Gram vanishes identically; otherwise
/// the Gram is range-restricted at rank_tol and every identity is checked on
/// the restricted span.
OverlapReport coisometry_and_overlap(const SampledRKHS& srk, const Tolerances& tol = {},
                                     std::uint64_t probe_seed = 1);

}  // namespace dareal
