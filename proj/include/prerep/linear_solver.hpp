#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "prerep/exact_scalar.hpp"

namespace prerep {

using SparseRow = std::map<std::size_t, ExactScalar>;

/// Exact linear system over Q(i), eliminated incrementally into reduced row
/// echelon form as rows arrive.
class SparseLinearSystem {
 public:
  explicit SparseLinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds sum_k row[k] x_k = rhs. Returns false when the row is inconsistent
  /// with the rows already present.
  bool add_row(SparseRow row, ExactScalar rhs = {});

  std::size_t unknowns() const { return unknowns_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t rows_seen() const { return rows_seen_; }
  bool consistent() const { return consistent_; }

  /// Particular solution with every free unknown set to zero.
  std::optional<std::vector<ExactScalar>> particular() const;
  /// Basis of the homogeneous solution space, one vector per free unknown.
  std::vector<std::vector<ExactScalar>> nullspace() const;

 private:
  struct Pivot {
    SparseRow row;  // coefficient of the pivot column is 1
    ExactScalar rhs;
  };
  std::size_t unknowns_;
  std::size_t rows_seen_ = 0;
  bool consistent_ = true;
  std::map<std::size_t, Pivot> pivots_;
};

}  // namespace prerep
