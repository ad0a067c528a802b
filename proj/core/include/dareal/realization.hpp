#pragma once

#include <map>
#include <optional>

#include "dareal/completion.hpp"
#include "dareal/report.hpp"
#include "dareal/subspaces.hpp"

namespace dareal {

using MultiIndexKey = std::vector<int>;

/// Taylor data of the observability map x -> C (I - Z(lambda) A)^{-1} x.
/// coefficients[beta] is the X -> Y map sending x to the coefficient of
/// lambda^beta; the adjoints satisfy c_beta = sum_j A_j^* c_{beta - e_j}
/// exactly by construction.
struct ObservabilityData {
  OutputPair pair;
  std::map<MultiIndexKey, ComplexMatrix> coefficients;
  ComplexMatrix gram;  // sum_beta coeff^* coeff, kernel = unobservable states
  bool observable = false;
  Index rank = 0;
  int degree_cap = 0;
};

/// Coefficients enumerated with a stop-on-stable-rank rule capped at degree
/// dimX (Krylov spans stabilize by dimension count).
ObservabilityData observability_data(const OutputPair& p, const Tolerances& tol = {});

/// Coisometric realization of a contractive pair: [B; D] is the pivoted
/// Cholesky factor of I - [A; C][A; C]^* padded to dimU columns.
/// Raises DimUTooSmall when dimU is below the defect rank and
/// NotContractivePair when the pair is not contractive.
Colligation realize_from_pair_cholesky(const OutputPair& p, Index dim_u,
                                       const Tolerances& tol = {});

/// Full constrained-completion pipeline: domain subspace, isometry V,
/// completion blocks, Parrott completion with parameter q (default 0).
/// Raises KernelMismatch when K_S != K_{C,A} on the seeded sample.
struct RealizationResult {
  Colligation colligation;
  DomainSubspace domain;
  IsometryV isometry;
  CompletionBlocks blocks;
  Completion completion;
  FamilyReport family;
};

RealizationResult realize_with_pair(const SchurEvaluator& s, const OutputPair& p,
                                    std::optional<CompletionParameter> q = std::nullopt,
                                    const SampleConfig& cfg = {},
                                    const Tolerances& tol = {});

/// Data of the representer construction for a pair (C, A):
/// T = [A^*|D, C^*], its defect (I - T^* T)^{1/2}, and the isometry G
/// carrying the defect range into U.
struct RepresenterData {
  DomainSubspace domain;
  ComplexMatrix t;            // dimX x (dimD + dimY)
  ComplexMatrix defect;       // (I - T^* T)^{1/2}
  ComplexMatrix defect_range; // orthonormal basis of Ran defect
  Index minimal_dim_u = 0;    // rank of the defect
  ComplexMatrix g;            // dimU x (dimD + dimY), isometric on Ran defect
  SchurEvaluator schur;
};

/// Constructs the representer S(lambda) = [C (I-Z(lambda)A)^{-1} Z(lambda)|D,
/// I_Y] (I - T^* T)^{1/2} G^*.  G defaults to the coordinate embedding of the
/// defect range into C^dimU; a caller-supplied G must be isometric on the
/// defect range.  Raises DimUTooSmall when dim_u < minimal_dim_u.
RepresenterData enumerate_representers(const OutputPair& p, Index dim_u,
                                       std::optional<ComplexMatrix> g = std::nullopt,
                                       const Tolerances& tol = {});

/// Gleason-problem diagnostics on the finite-state surrogate f = O_{C,A} x.
struct GleasonReport {
  double shift_identity_residual = 0.0;  // f(lambda) - f(0) - sum lambda_j (A_j f)(lambda)
  bool contractive_inequality = false;   // pair contractivity
  double pair_defect_min_eigenvalue = 0.0;
  double section_match_residual = 0.0;   // kernel sections vs observability images
  bool pass = false;
};

GleasonReport gleason_check(const OutputPair& p, const SampleConfig& cfg = {},
                            const Tolerances& tol = {});
GleasonReport gleason_check(const Colligation& c, const SampleConfig& cfg = {},
                            const Tolerances& tol = {});

/// Observability of both pairs plus unitary equivalence, solved as the
/// least-squares intertwiner with C2 U = C1 and U A_{1,j} = A_{2,j} U and
/// accepted only when the residual and the unitarity defect both pass.
struct EquivalenceReport {
  bool observable1 = false;
  bool observable2 = false;
  bool equivalent = false;
  double intertwine_residual = 0.0;
  double unitarity_residual = 0.0;
  std::optional<ComplexMatrix> witness;
};

EquivalenceReport observability_and_equivalence(const OutputPair& p1,
                                                const OutputPair& p2,
                                                const Tolerances& tol = {});

/// Regression suite over the built-in two-variable example: colligation
/// coisometry, closed-form match, kernel equalities across the gamma family,
/// the contractivity threshold, a full completion run and the
/// non-equivalence grid.  Returns one record per check.
Report example33_suite(const SampleConfig& cfg = {}, const Tolerances& tol = {},
                       int threads = 1);

}  // namespace dareal
