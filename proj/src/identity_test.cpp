#include "prerep/identity_test.hpp"


#include "prerep/errors.hpp"

namespace prerep {

namespace {

// splitmix64: portable, fully specified output sequence
std::uint64_t next_u64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t uniform_in_box(std::uint64_t& state) {
  constexpr std::uint64_t span = 2 * kSampleRadius + 1;
  constexpr std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  std::uint64_t x;
  do {
    x = next_u64(state);
  } while (x >= limit);
  return static_cast<std::int64_t>(x % span) - kSampleRadius;
}

std::vector<VarId> union_vars(const std::set<VarId>& a, const std::set<VarId>& b) {
  std::set<VarId> all = a;
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

template <class Eval>
IdentityVerdict sample(const std::vector<VarId>& vars, const IdentityOptions& opts, Eval&& differs) {
  if (opts.trials < 1) throw DomainError("identity test needs at least one trial");
  IdentityVerdict verdict;
  std::uint64_t state = opts.seed;
  int resamples = 0;
  for (int t = 0; t < opts.trials;) {
    Point p = random_point(vars, state);
    std::optional<bool> d = differs(p);
    if (!d) {
      if (++resamples > opts.max_resamples) {
        throw ArithmeticError("identity test: denominator vanished at too many sampled points");
      }
      continue;
    }
    ++t;
    verdict.trials_run = t;
    if (*d) {
      verdict.witness = std::move(p);
      return verdict;
    }
  }
  verdict.equal = true;
  return verdict;
}

}  // namespace

Point random_point(const std::vector<VarId>& vars, std::uint64_t& state) {
  Point p;
  for (VarId v : vars) p.emplace(v, ExactScalar(uniform_in_box(state)));
  return p;
}

IdentityVerdict poly_identity_test(const PolyFunction& lhs, const PolyFunction& rhs, const IdentityOptions& opts) {
  const auto vars = union_vars(lhs.variables(), rhs.variables());
  auto verdict = sample(vars, opts, [&](const Point& p) -> std::optional<bool> {
    return !(lhs.eval(p) == rhs.eval(p));
  });
  if (verdict.equal && opts.exact) {
    const PolyFunction diff = lhs - rhs;
    verdict.exact_checked = true;
    if (!diff.is_zero()) {
      // Sampling missed a nonzero difference; search further for a witness.
      verdict.equal = false;
      std::uint64_t state = opts.seed ^ 0xA5A5A5A5ULL;
      for (int k = 0; k < 1000 && !verdict.witness; ++k) {
        Point p = random_point(vars, state);
        if (!diff.eval(p).is_zero()) verdict.witness = std::move(p);
      }
    }
  }
  return verdict;
}

IdentityVerdict poly_identity_test(const RationalFunction& lhs, const RationalFunction& rhs,
                                   const IdentityOptions& opts) {
  std::set<VarId> lv = lhs.numerator().variables();
  for (VarId v : lhs.denominator().variables()) lv.insert(v);
  std::set<VarId> rv = rhs.numerator().variables();
  for (VarId v : rhs.denominator().variables()) rv.insert(v);
  const auto vars = union_vars(lv, rv);
  auto verdict = sample(vars, opts, [&](const Point& p) -> std::optional<bool> {
    const ExactScalar ld = lhs.denominator().eval(p);
    const ExactScalar rd = rhs.denominator().eval(p);
    if (ld.is_zero() || rd.is_zero()) return std::nullopt;
    return !(lhs.numerator().eval(p) * rd == rhs.numerator().eval(p) * ld);
  });
  if (verdict.equal && opts.exact) {
    const PolyFunction diff = lhs.cross_difference(rhs);
    verdict.exact_checked = true;
    if (!diff.is_zero()) {
      verdict.equal = false;
      std::uint64_t state = opts.seed ^ 0xA5A5A5A5ULL;
      for (int k = 0; k < 1000 && !verdict.witness; ++k) {
        Point p = random_point(vars, state);
        if (lhs.denominator().eval(p).is_zero() || rhs.denominator().eval(p).is_zero()) continue;
        if (!diff.eval(p).is_zero()) verdict.witness = std::move(p);
      }
    }
  }
  return verdict;
}

}  // namespace prerep
