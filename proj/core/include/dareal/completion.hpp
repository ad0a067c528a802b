#pragma once

#include <optional>

#include "dareal/subspaces.hpp"

namespace dareal {

/// Data of the constrained contractive completion problem for a pair (C, A)
/// and multiplier S with K_S = K_{C,A}: blocks of
///   U^* = [T11 T12; X T22] : Dperp (+) (D (+) Y) -> X (+) U,
/// the factors G1, G2, the defect (I - G1 G1^*)^{1/2} whose range carries the
/// free parameter, and the degeneracy space U0 = { u : S u == 0 }.
struct CompletionBlocks {
  SubspaceBasis domain;        // D inside X^d (basis + complement)
  ComplexMatrix t11;           // dimX x dim(Dperp)     A^* on Dperp
  ComplexMatrix t12;           // dimX x (dimD + dimY)  [A^*|D, C^*]
  ComplexMatrix t22;           // dimU x (dimD + dimY)  [C_V, S(0)^*]
  ComplexMatrix g1;            // dim(Dperp) x dimX, supported on Ran(I-T12 T12*)^{1/2}
  ComplexMatrix g2;            // dimU x (dimD + dimY) partial isometry, T22 = G2 |T22|
  ComplexMatrix defect1;       // (I - G1 G1^*)^{1/2} on Dperp coordinates
  ComplexMatrix defect1_range; // orthonormal basis of Ran defect1
  SubspaceBasis u0;            // degeneracy space in U
  ComplexMatrix s0;            // S(0), kept for assembling completions
  Index dim_x = 0, dim_u = 0, dim_y = 0, d = 0;

  Index dim_d() const { return domain.dim(); }
  Index dim_dperp() const { return domain.codim(); }
  /// dim Ran (I - G1 G1^*)^{1/2}, the row size of the free parameter.
  Index defect_rank() const { return defect1_range.cols(); }
  ComplexMatrix c_v() const { return t22.leftCols(dim_d()); }
  /// The particular completion X = -G2 T12^* G1^*.
  ComplexMatrix central_x() const { return -g2 * t12.adjoint() * g1.adjoint(); }
};

/// Free parameter Q : Ran (I - G1 G1^*)^{1/2} -> U0, given in the bases
/// (blocks.defect1_range, blocks.u0.basis).  Must be a contraction.
struct CompletionParameter {
  ComplexMatrix q;  // dim(U0) x defect_rank

  static CompletionParameter zero(const CompletionBlocks& blocks);
  static CompletionParameter from_matrix(ComplexMatrix q, const CompletionBlocks& blocks,
                                         const Tolerances& tol = {});

  bool isometric(const Tolerances& tol = {}) const;
  bool unitary(const Tolerances& tol = {}) const;
};

/// Builds the completion blocks.  The isometry v must have passed its check;
/// failures of the necessary conditions here signal upstream inconsistency
/// and raise NecessaryConditionsFail.
CompletionBlocks build_blocks(const SchurEvaluator& s, const OutputPair& p,
                              const IsometryV& v, const DomainSubspace& dsub,
                              const SampleConfig& cfg = {}, const Tolerances& tol = {});

/// One member of the completion family.
struct Completion {
  ComplexMatrix x;                // dimU x dim(Dperp)
  std::vector<ComplexMatrix> b;   // d blocks, dimX x dimU, in ambient coordinates
  /// ||G2^* Q (I - G1 G1^*)^{1/2}|| - zero for every admissible parameter.
  double orthogonality_residual = 0.0;

  ComplexMatrix b_stacked(Index dim_x, Index d) const;
};

/// X = -G2 T12^* G1^* + Q (I - G1 G1^*)^{1/2} and B = [X^*; C_V^*] expanded
/// back to X^d.  The resulting U^* = [T11 T12; X T22] is a contraction for
/// every contractive Q.
Completion parrott_complete(const CompletionBlocks& blocks,
                            const CompletionParameter& q, const Tolerances& tol = {});

/// Assembles the full colligation [A B; C S(0)] for a completion.
Colligation assemble_colligation(const CompletionBlocks& blocks, const OutputPair& p,
                                 const Completion& completion);

/// Family classification: how large the completion family is and which
/// operator classes it can reach.
struct FamilyReport {
  Index defect_rank = 0;        // dim Ran (I - G1 G1^*)^{1/2}
  Index u0_dim = 0;             // dim U0
  Index ker_a_star_in_dperp = 0;
  bool pair_isometric = false;
  bool coisometric_achievable = false;  // defect_rank <= u0_dim
  bool unitary_achievable = false;      // pair isometric and ker dim == u0_dim
  bool unique = false;                  // defect_rank == 0 or u0_dim == 0
  /// Q is a u0_dim x defect_rank contraction; this is its complex dimension.
  Index parameter_dimension = 0;
  /// Masking check: S W with W the canonical partial isometry admits a
  /// coisometric realization whenever the family is nonempty.
  bool masked_coisometric_check = false;
  Index masked_u0_dim = 0;
};

FamilyReport classify_family(const CompletionBlocks& blocks, const OutputPair& p,
                             const SchurEvaluator& s, const SampleConfig& cfg = {},
                             const Tolerances& tol = {});

}  // namespace dareal
