#pragma once

#include <map>
#include <vector>

#include "dareal/types.hpp"

namespace dareal::detail {

using MultiIndex = std::vector<int>;

// All multi-indices over d variables with total degree exactly `degree`,
// in lexicographic order.
inline std::vector<MultiIndex> multi_indices_of_degree(Index d, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self, Index pos, int remaining) -> void {
    if (pos == d - 1) {
      cur[static_cast<size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[static_cast<size_t>(pos)] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  if (d > 0) rec(rec, 0, degree);
  return out;
}

// Taylor coefficient maps of the resolvent expansion
// (I - sum_j conj(z_j) A_j^*)^{-1} C^* = sum_beta conj(z)^beta c_beta,
// computed degree by degree via c_beta = sum_j A_j^* c_{beta - e_j}.
class ResolventCoefficients {
 public:
  ResolventCoefficients(const std::vector<ComplexMatrix>& a_blocks,
                        const ComplexMatrix& c_adjoint)
      : a_(a_blocks) {
    coeffs_[MultiIndex(a_blocks.size(), 0)] = c_adjoint;
  }

  // c_beta (computes and caches everything of lower degree on demand)
  const ComplexMatrix& at(const MultiIndex& beta) {
    auto it = coeffs_.find(beta);
    if (it != coeffs_.end()) return it->second;
    ComplexMatrix c;
    for (size_t j = 0; j < beta.size(); ++j) {
      if (beta[j] == 0) continue;
      MultiIndex prev = beta;
      --prev[j];
      ComplexMatrix term = a_[j].adjoint() * at(prev);
      c = (c.size() == 0) ? term : ComplexMatrix(c + term);
    }
    return coeffs_.emplace(beta, std::move(c)).first->second;
  }

 private:
  std::vector<ComplexMatrix> a_;
  std::map<MultiIndex, ComplexMatrix> coeffs_;
};

}  // namespace dareal::detail
