#include "prerep/linear_solver.hpp"

#include "prerep/errors.hpp"

namespace prerep {

namespace {

// row += factor * other, dropping cancelled entries.
void axpy(SparseRow& row, const ExactScalar& factor, const SparseRow& other) {
  for (const auto& [col, c] : other) {
    auto [it, inserted] = row.try_emplace(col, factor * c);
    if (!inserted) {
      it->second += factor * c;
      if (it->second.is_zero()) row.erase(it);
    }
  }
}

}  // namespace

bool SparseLinearSystem::add_row(SparseRow row, ExactScalar rhs) {
  ++rows_seen_;
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns_) throw DomainError("row references unknown outside the system");
    it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }
  // Reduce against existing pivots. Pivot rows are fully reduced, so a single
  // sweep over pivot columns present in the row is enough.
  std::vector<std::size_t> hits;
  for (const auto& [col, c] : row)
    if (pivots_.count(col) != 0) hits.push_back(col);
  for (std::size_t col : hits) {
    auto it = row.find(col);
    if (it == row.end()) continue;
    const ExactScalar factor = -it->second;
    const Pivot& p = pivots_.at(col);
    axpy(row, factor, p.row);
    rhs += factor * p.rhs;
  }
  if (row.empty()) {
    if (!rhs.is_zero()) consistent_ = false;
    return rhs.is_zero();
  }
  const std::size_t col = row.begin()->first;
  const ExactScalar inv = ExactScalar(1) / row.begin()->second;
  for (auto& [k, c] : row) c *= inv;
  rhs *= inv;
  // Eliminate the new pivot column from every existing pivot row.
  for (auto& [pc, p] : pivots_) {
    auto it = p.row.find(col);
    if (it == p.row.end()) continue;
    const ExactScalar factor = -it->second;
    axpy(p.row, factor, row);
    p.rhs += factor * rhs;
  }
  pivots_.emplace(col, Pivot{std::move(row), std::move(rhs)});
  return true;
}

std::optional<std::vector<ExactScalar>> SparseLinearSystem::particular() const {
  if (!consistent_) return std::nullopt;
  std::vector<ExactScalar> x(unknowns_);
  for (const auto& [col, p] : pivots_) x[col] = p.rhs;
  return x;
}

std::vector<std::vector<ExactScalar>> SparseLinearSystem::nullspace() const {
  std::vector<std::vector<ExactScalar>> basis;
  for (std::size_t f = 0; f < unknowns_; ++f) {
    if (pivots_.count(f) != 0) continue;
    std::vector<ExactScalar> x(unknowns_);
    x[f] = 1;
    for (const auto& [col, p] : pivots_) {
      auto it = p.row.find(f);
      if (it != p.row.end()) x[col] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace prerep
