#include "prerep/var_id.hpp"

#include <regex>

#include "prerep/errors.hpp"

namespace prerep {

VarId::VarId(int set, Letter letter, int doublet, int color, bool conjugated) {
  if (set < 1 || set > 0xFFFF) throw DomainError("variable set index out of range: " + std::to_string(set));
  if (doublet < 1 || doublet > 2) throw DomainError("doublet index must be 1 or 2");
  if (color < 1) throw DomainError("color index must be >= 1");
  code_ = (static_cast<std::uint64_t>(set) << 40) | (static_cast<std::uint64_t>(conjugated) << 39) |
          (static_cast<std::uint64_t>(letter) << 38) | (static_cast<std::uint64_t>(doublet) << 36) |
          static_cast<std::uint64_t>(color);
}

std::string VarId::name() const {
  std::string s = letter() == Letter::u ? "u" : "v";
  if (conjugated()) s += '*';
  s += '(' + std::to_string(doublet()) + ',' + std::to_string(color()) + ';' + std::to_string(set()) + ')';
  return s;
}

VarId VarId::parse(const std::string& text) {
  static const std::regex pattern(R"(([uv])(\*?)\((\d+),(\d+);(\d+)\))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw DomainError("bad variable name '" + text + "'");
  return {std::stoi(m[5]), m[1] == "u" ? Letter::u : Letter::v, std::stoi(m[3]), std::stoi(m[4]),
          m[2].length() == 1};
}

}  // namespace prerep
