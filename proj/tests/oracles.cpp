#include "oracles.hpp"

#include <cmath>
#include <map>

namespace dareal::oracles {

ComplexMatrix closed_form_s33(const Complex& l1, const Complex& l2) {
  ComplexMatrix s(1, 7);
  const Complex q = 4.0 - l1 * l2;
  s(0, 0) = (12.0 - 4.0 * l1 * l2) / std::sqrt(3.0) / (2.0 * q);
  s(0, 1) = std::sqrt(15.0) * l1 / (2.0 * q);
  s(0, 2) = l1 * l1 / (2.0 * q);
  s(0, 3) = l1 * l2 / std::sqrt(6.0) / (2.0 * q);
  s(0, 4) = std::sqrt(15.0) * l2 / (2.0 * q);
  s(0, 5) = l1 * l2 / std::sqrt(2.0) / (2.0 * q);
  s(0, 6) = l2 * l2 / (2.0 * q);
  return s;
}

ComplexMatrix domain_generators_brute_force(const OutputPair& p, int max_len) {
  const Index d = p.d(), nx = p.dim_x(), ny = p.dim_y();
  // accumulate c_beta = sum over words with abelianization beta
  std::map<std::vector<int>, ComplexMatrix> classes;
  classes[std::vector<int>(static_cast<size_t>(d), 0)] = p.C.adjoint();

  // enumerate words of each length by odometer
  for (int len = 1; len < max_len; ++len) {
    std::vector<int> word(static_cast<size_t>(len), 0);
    while (true) {
      ComplexMatrix prod = p.C.adjoint();
      std::vector<int> ab(static_cast<size_t>(d), 0);
      for (int pos = len - 1; pos >= 0; --pos) {
        prod = p.A.blocks[static_cast<size_t>(word[static_cast<size_t>(pos)])].adjoint() * prod;
        ++ab[static_cast<size_t>(word[static_cast<size_t>(pos)])];
      }
      auto it = classes.find(ab);
      if (it == classes.end())
        classes.emplace(ab, prod);
      else
        it->second += prod;
      // odometer increment
      int pos = 0;
      while (pos < len) {
        if (++word[static_cast<size_t>(pos)] < d) break;
        word[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == len) break;
    }
  }

  // ambient generators v_alpha with j-th component c_{alpha - e_j};
  // every alpha = beta + e_j picks up the class of beta in its j-th slot
  std::map<std::vector<int>, ComplexMatrix> alphas;
  for (const auto& [beta, c] : classes) {
    int total = 0;
    for (int b : beta) total += b;
    if (total >= max_len) continue;
    for (Index j = 0; j < d; ++j) {
      std::vector<int> alpha = beta;
      ++alpha[static_cast<size_t>(j)];
      auto [it, inserted] = alphas.try_emplace(alpha, ComplexMatrix::Zero(d * nx, ny));
      it->second.middleRows(j * nx, nx) = c;
    }
  }
  ComplexMatrix stack(d * nx, static_cast<Index>(alphas.size()) * ny);
  Index col = 0;
  for (const auto& [alpha, v] : alphas) {
    stack.middleCols(col, ny) = v;
    col += ny;
  }
  return stack;
}

Index rank_gram_schmidt(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale <= 0) return 0;
  std::vector<ComplexVector> basis;
  for (Index j = 0; j < m.cols(); ++j) {
    ComplexVector v = m.col(j);
    for (const auto& b : basis) v -= b.dot(v) * b;
    // re-orthogonalize once against drift
    for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > rel_tol * scale * std::sqrt(static_cast<double>(m.rows())))
      basis.push_back(v.normalized());
  }
  return static_cast<Index>(basis.size());
}

ComplexMatrix shifted_observability_coefficient(const OutputPair& p,
                                                const ComplexMatrix& h_stacked,
                                                const std::vector<int>& beta) {
  const Index d = p.d(), nx = p.dim_x(), ny = p.dim_y();
  int total = 0;
  for (int b : beta) total += b;
  ComplexMatrix out = ComplexMatrix::Zero(ny, h_stacked.cols());
  if (total == 0) return out;  // the sum carries a leading zeta_j factor

  // coefficient of zeta^beta in sum_j zeta_j C (I - Z A)^{-1} h_j:
  // sum_j sum_{words w, ab(w) = beta - e_j} C A_{w_1} ... A_{w_k} h_j
  for (Index j = 0; j < d; ++j) {
    if (beta[static_cast<size_t>(j)] == 0) continue;
    std::vector<int> target = beta;
    --target[static_cast<size_t>(j)];
    int len = total - 1;
    ComplexMatrix hj = h_stacked.middleRows(j * nx, nx);
    if (len == 0) {
      out += p.C * hj;
      continue;
    }
    std::vector<int> word(static_cast<size_t>(len), 0);
    while (true) {
      std::vector<int> ab(static_cast<size_t>(d), 0);
      for (int w : word) ++ab[static_cast<size_t>(w)];
      if (ab == target) {
        ComplexMatrix prod = hj;
        for (int pos = len - 1; pos >= 0; --pos)
          prod = p.A.blocks[static_cast<size_t>(word[static_cast<size_t>(pos)])] * prod;
        out += p.C * prod;
      }
      int pos = 0;
      while (pos < len) {
        if (++word[static_cast<size_t>(pos)] < d) break;
        word[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == len) break;
    }
  }
  return out;
}

}  // namespace dareal::oracles
