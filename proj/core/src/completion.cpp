#include "dareal/completion.hpp"

#include <cmath>

#include "dareal/numerics.hpp"

namespace dareal {

CompletionParameter CompletionParameter::zero(const CompletionBlocks& blocks) {
  CompletionParameter p;
  p.q = ComplexMatrix::Zero(blocks.u0.dim(), blocks.defect_rank());
  return p;
}

CompletionParameter CompletionParameter::from_matrix(ComplexMatrix q,
                                                     const CompletionBlocks& blocks,
                                                     const Tolerances& tol) {
  if (q.rows() != blocks.u0.dim() || q.cols() != blocks.defect_rank())
    throw ParameterShapeMismatch(
        "Q must be " + std::to_string(blocks.u0.dim()) + " x " +
        std::to_string(blocks.defect_rank()) + ", got " + std::to_string(q.rows()) +
        " x " + std::to_string(q.cols()));
  if (operator_norm(q) > 1.0 + tol.eq_tol)
    throw NormExceedsOne("completion parameter Q");
  CompletionParameter p;
  p.q = std::move(q);
  return p;
}

bool CompletionParameter::isometric(const Tolerances& tol) const {
  return operator_norm(q.adjoint() * q -
                       ComplexMatrix::Identity(q.cols(), q.cols())) <= tol.eq_tol;
}

bool CompletionParameter::unitary(const Tolerances& tol) const {
  return isometric(tol) &&
         operator_norm(q * q.adjoint() -
                       ComplexMatrix::Identity(q.rows(), q.rows())) <= tol.eq_tol;
}

CompletionBlocks build_blocks(const SchurEvaluator& s, const OutputPair& p,
                              const IsometryV& v, const DomainSubspace& dsub,
                              const SampleConfig& cfg, const Tolerances& tol) {
  tol.validate();
  if (!v.isometric)
    throw NecessaryConditionsFail("build_blocks requires an isometric V");

  CompletionBlocks blocks;
  blocks.domain = dsub.space;
  blocks.dim_x = p.dim_x();
  blocks.dim_u = s.dim_u();
  blocks.dim_y = p.dim_y();
  blocks.d = p.d();
  blocks.s0 = s.at_origin();

  const ComplexMatrix a_row = p.A.adjoint_row();
  blocks.t11 = a_row * dsub.space.complement;
  blocks.t12.resize(blocks.dim_x, dsub.space.dim() + blocks.dim_y);
  blocks.t12 << v.a_v, v.b_v;
  blocks.t22.resize(blocks.dim_u, dsub.space.dim() + blocks.dim_y);
  blocks.t22 << v.c_v, v.d_v;

  // necessary conditions: [T11 T12] contractive (== pair contractive under
  // the identification Dperp (+) D ~ X^d) and [T12; T22] == V isometric
  ComplexMatrix row(blocks.dim_x, blocks.t11.cols() + blocks.t12.cols());
  row << blocks.t11, blocks.t12;
  if (operator_norm(row) > 1.0 + tol.eq_tol)
    throw NecessaryConditionsFail("[T11 T12] is not a contraction");
  ComplexMatrix col(blocks.dim_x + blocks.dim_u, blocks.t12.cols());
  col << blocks.t12, blocks.t22;
  if (operator_norm(col.adjoint() * col - ComplexMatrix::Identity(
                                              col.cols(), col.cols())) > tol.eq_tol)
    throw NecessaryConditionsFail("[T12; T22] is not an isometry");

  // G1 (I - T12 T12^*)^{1/2} = T11^*, zero on the complement of the range
  ComplexMatrix defect_row =
      ComplexMatrix::Identity(blocks.dim_x, blocks.dim_x) -
      blocks.t12 * blocks.t12.adjoint();
  PsdSqrtPinv delta = psd_sqrt_with_pinv(defect_row, tol);
  blocks.g1 = (delta.pinv_sqrt * blocks.t11).adjoint();
  if (operator_norm(blocks.g1 * delta.sqrt - blocks.t11.adjoint()) >
      std::sqrt(tol.eq_tol) * (1.0 + operator_norm(blocks.t11)))
    throw NecessaryConditionsFail("T11^* does not factor through (I - T12 T12^*)^{1/2}");

  // kernel condition Ker G1^* = Ker T11 (holds by construction; assert)
  if (numerical_rank(blocks.g1.adjoint(), tol) != numerical_rank(blocks.t11, tol))
    throw NecessaryConditionsFail("Ker G1^* != Ker T11");

  // G2 from the polar decomposition of T22
  PolarDecomposition polar = polar_partial_isometry(blocks.t22, tol);
  blocks.g2 = polar.partial_isometry;

  ComplexMatrix defect1_sq =
      ComplexMatrix::Identity(blocks.dim_dperp(), blocks.dim_dperp()) -
      blocks.g1 * blocks.g1.adjoint();
  blocks.defect1 = psd_sqrt_and_defect(defect1_sq, tol).sqrt;
  blocks.defect1_range = orthonormal_basis(blocks.defect1, BasisMode::Range, tol);

  blocks.u0 = kernel_of_multiplier(s, cfg, tol);
  // U0 = Ker T22^* must match the sampled kernel of the multiplier
  if (blocks.u0.dim() > 0 &&
      operator_norm(blocks.t22.adjoint() * blocks.u0.basis) > std::sqrt(tol.eq_tol))
    throw NecessaryConditionsFail("sampled U0 is not annihilated by T22^*");
  Index ker_t22_adj = blocks.dim_u - numerical_rank(blocks.t22, tol);
  if (ker_t22_adj != blocks.u0.dim())
    throw NecessaryConditionsFail("dim Ker T22^* != dim U0 from sampling");

  return blocks;
}

Completion parrott_complete(const CompletionBlocks& blocks,
                            const CompletionParameter& q, const Tolerances& tol) {
  tol.validate();
  if (q.q.rows() != blocks.u0.dim() || q.q.cols() != blocks.defect_rank())
    throw ParameterShapeMismatch("parrott_complete: Q shape");
  if (operator_norm(q.q) > 1.0 + tol.eq_tol)
    throw NormExceedsOne("parrott_complete: Q");

  Completion comp;
  // Q acts on Ran defect1: lift through the range basis to Dperp coordinates
  ComplexMatrix q_ambient =
      blocks.u0.basis * q.q * blocks.defect1_range.adjoint();  // dimU x dimDperp
  comp.x = blocks.central_x() + q_ambient * blocks.defect1;
  comp.orthogonality_residual =
      operator_norm(blocks.g2.adjoint() * q_ambient * blocks.defect1);

  // B = [X^*; C_V^*] expanded to ambient X^d coordinates
  ComplexMatrix b_ambient = blocks.domain.complement * comp.x.adjoint() +
                            blocks.domain.basis * blocks.c_v().adjoint();
  comp.b.resize(static_cast<size_t>(blocks.d));
  for (Index j = 0; j < blocks.d; ++j)
    comp.b[static_cast<size_t>(j)] =
        b_ambient.middleRows(j * blocks.dim_x, blocks.dim_x);
  return comp;
}

ComplexMatrix Completion::b_stacked(Index dim_x, Index d) const {
  ComplexMatrix s(d * dim_x, b.empty() ? 0 : b.front().cols());
  for (Index j = 0; j < d; ++j) s.middleRows(j * dim_x, dim_x) = b[static_cast<size_t>(j)];
  return s;
}

Colligation assemble_colligation(const CompletionBlocks& blocks, const OutputPair& p,
                                 const Completion& completion) {
  return Colligation(p.A, completion.b, p.C, blocks.s0);
}

FamilyReport classify_family(const CompletionBlocks& blocks, const OutputPair& p,
                             const SchurEvaluator& s, const SampleConfig& cfg,
                             const Tolerances& tol) {
  tol.validate();
  FamilyReport r;
  r.defect_rank = blocks.defect_rank();
  r.u0_dim = blocks.u0.dim();
  r.pair_isometric = classify(p, tol).isometric_pair;
  // Ker A^* intersected with Dperp, as the null space of A^* on Dperp coords
  r.ker_a_star_in_dperp =
      blocks.dim_dperp() - numerical_rank(blocks.t11, tol);
  r.coisometric_achievable = r.defect_rank <= r.u0_dim;
  r.unitary_achievable = r.pair_isometric && (r.ker_a_star_in_dperp == r.u0_dim);
  r.unique = (r.defect_rank == 0) || (r.u0_dim == 0);
  r.parameter_dimension = r.defect_rank * r.u0_dim;

  // Masking check: with W identity on the complement of U0 and zero on a
  // fresh summand of dimension defect_rank, the masked multiplier S W has a
  // degeneracy space of dimension exactly defect_rank, so a coisometric
  // realization exists for it.
  const Index keep = blocks.u0.codim();
  ComplexMatrix w(blocks.dim_u, keep + r.defect_rank);
  w << blocks.u0.complement, ComplexMatrix::Zero(blocks.dim_u, r.defect_rank);
  SchurEvaluator masked = s.right_multiplied(w);
  SubspaceBasis masked_u0 = kernel_of_multiplier(masked, cfg, tol);
  r.masked_u0_dim = masked_u0.dim();
  r.masked_coisometric_check = r.defect_rank <= r.masked_u0_dim;
  return r;
}

}  // namespace dareal
