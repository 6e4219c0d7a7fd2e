#pragma once

#include <random>
#include <vector>

#include "prerep/weyl.hpp"

namespace testing_support {

inline std::vector<prerep::VarId> small_alphabet(int count) {
  std::vector<prerep::VarId> out;
  for (int k = 0; out.size() < static_cast<std::size_t>(count); ++k) {
    const int color = k / 8 + 1;
    const int r = k % 8;
    out.emplace_back(1, r % 2 ? prerep::Letter::v : prerep::Letter::u, (r / 2) % 2 + 1, color, r >= 4);
  }
  return out;
}

inline prerep::ExactScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

inline prerep::Monomial random_monomial(std::mt19937_64& rng, const std::vector<prerep::VarId>& vars, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::vector<prerep::Monomial::Entry> entries;
  const int d = deg(rng);
  for (int k = 0; k < d; ++k) entries.emplace_back(vars[pick(rng)], 1);
  return prerep::Monomial::from_entries(entries);
}

inline prerep::PolyFunction random_poly(std::mt19937_64& rng, const std::vector<prerep::VarId>& vars, int terms,
                                        int max_degree) {
  prerep::PolyFunction p;
  for (int k = 0; k < terms; ++k) p.add_term(random_monomial(rng, vars, max_degree), random_scalar(rng));
  return p;
}

inline prerep::WeylOperator random_operator(std::mt19937_64& rng, const std::vector<prerep::VarId>& vars, int terms,
                                            int max_degree) {
  prerep::WeylOperator op;
  for (int k = 0; k < terms; ++k) {
    op.add_term({random_monomial(rng, vars, max_degree), random_monomial(rng, vars, max_degree)}, random_scalar(rng));
  }
  return op;
}

}  // namespace testing_support
