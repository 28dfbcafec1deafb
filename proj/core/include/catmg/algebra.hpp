#pragma once

#include <functional>
#include <string>
#include <vector>

#include "catmg/errors.hpp"
#include "catmg/linalg.hpp"

namespace catmg::cato {

using SparseVec = std::vector<std::pair<std::size_t, Q>>;

// Linear combination of arrow words; word entries index arrows().
struct PathTerm {
  Q coef;
  std::vector<std::size_t> word;
};

// Basis element of e_left A e_right (a map B(right) -> B(left)).
struct AlgBasis {
  int left = 0;
  int right = 0;
  int degree = 0;
};

// Basic finite-dimensional algebra with a complete set of idempotents e_x,
// given by structure constants in a weight-homogeneous basis.
class FinAlgebra {
 public:
  using Product = std::function<SparseVec(std::size_t, std::size_t)>;

  FinAlgebra() = default;
  // product(a, b) is called only when right(a) == left(b).
  FinAlgebra(int nweights, std::vector<AlgBasis> basis, std::vector<std::size_t> idem, const Product& product);

  std::size_t dim() const { return basis_.size(); }
  int nweights() const { return nw_; }
  const AlgBasis& operator[](std::size_t a) const { return basis_[a]; }
  const std::vector<AlgBasis>& basis() const { return basis_; }
  std::size_t idem(int x) const { return idem_[static_cast<std::size_t>(x)]; }
  const SparseVec& mul(std::size_t a, std::size_t b) const { return table_[a * basis_.size() + b]; }
  Vec mul(const Vec& a, const Vec& b) const;
  const std::vector<std::size_t>& block(int l, int r) const {
    return blocks_[static_cast<std::size_t>(l * nw_ + r)];
  }
  const std::vector<std::size_t>& with_left(int l) const { return left_[static_cast<std::size_t>(l)]; }
  const std::vector<std::size_t>& with_right(int r) const { return right_[static_cast<std::size_t>(r)]; }
  // Position of basis element a inside with_left(left(a)) / with_right(right(a)).
  std::size_t left_index(std::size_t a) const { return lidx_[a]; }
  std::size_t right_index(std::size_t a) const { return ridx_[a]; }
  // Position of a inside block(left(a), right(a)).
  std::size_t block_index(std::size_t a) const { return bidx_[a]; }

  FinAlgebra opposite() const;

  // Violations of associativity, unit and idempotent relations (empty = pass).
  std::vector<std::string> check_axioms() const;
  // Positive-degree basis elements; throws GradingAssertFailed if degree 0 is not spanned by the e_x.
  std::vector<std::size_t> radical_basis() const;
  // Radical of the trace form (characteristic zero), as rows in basis coordinates.
  Mat trace_radical() const;
  // Smallest k with rad^k = 0; throws RadicalNotNilpotent.
  int nilpotency_index() const;
  // Basis elements of rad spanning a complement of rad^2; together with the e_x they generate A.
  const std::vector<std::size_t>& arrows() const { return arrows_; }
  // Every basis element as a combination of arrow words (idempotents: the empty word).
  const std::vector<PathTerm>& paths(std::size_t a) const { return paths_[a]; }

 private:
  void index();
  Mat power_span(const Mat& a, const Mat& b) const;

  int nw_ = 0;
  std::vector<AlgBasis> basis_;
  std::vector<std::size_t> idem_;
  std::vector<SparseVec> table_;
  std::vector<std::vector<std::size_t>> blocks_, left_, right_;
  std::vector<std::size_t> lidx_, ridx_, bidx_;
  std::vector<std::size_t> arrows_;
  std::vector<std::vector<PathTerm>> paths_;
};

}  // namespace catmg::cato
