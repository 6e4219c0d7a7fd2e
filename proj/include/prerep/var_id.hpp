#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace prerep {

enum class Letter : std::uint8_t { u = 0, v = 1 };

/// One underlying complex variable u_{bi}^{(m)} / v_{bi}^{(m)} or its conjugate.
///
/// Conjugated variables are independent symbols. The packed code orders
/// variables lexicographically by (set, conjugated, letter, doublet, color).
class VarId {
 public:
  VarId() = default;
  VarId(int set, Letter letter, int doublet, int color, bool conjugated = false);

  int set() const { return static_cast<int>(code_ >> 40); }
  bool conjugated() const { return ((code_ >> 39) & 1U) != 0; }
  Letter letter() const { return static_cast<Letter>((code_ >> 38) & 1U); }
  int doublet() const { return static_cast<int>((code_ >> 36) & 3U); }
  int color() const { return static_cast<int>(code_ & 0xFFFFFFFFULL); }

  /// The same variable with the conjugation flag flipped.
  VarId partner() const { return VarId(code_ ^ (1ULL << 39)); }

  std::uint64_t code() const { return code_; }
  static VarId from_code(std::uint64_t code) { return VarId(code); }

  /// "u(1,2;1)" for u_{12}^{(1)}, "v*(2,1;3)" for conj(v_{21}^{(3)}).
  std::string name() const;
  /// Inverse of name().
  static VarId parse(const std::string& text);

  friend auto operator<=>(const VarId&, const VarId&) = default;

 private:
  explicit VarId(std::uint64_t code) : code_(code) {}
  std::uint64_t code_ = 0;
};

inline VarId u(int doublet, int color, int set = 1, bool conj = false) {
  return {set, Letter::u, doublet, color, conj};
}
inline VarId v(int doublet, int color, int set = 1, bool conj = false) {
  return {set, Letter::v, doublet, color, conj};
}
inline VarId ubar(int doublet, int color, int set = 1) { return u(doublet, color, set, true); }
inline VarId vbar(int doublet, int color, int set = 1) { return v(doublet, color, set, true); }

}  // namespace prerep

template <>
struct std::hash<prerep::VarId> {
  std::size_t operator()(const prerep::VarId& v) const noexcept { return std::hash<std::uint64_t>{}(v.code()); }
};
