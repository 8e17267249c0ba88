#ifndef CK_RATIONAL_HPP
#define CK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ck {

/// Arbitrary-precision integers and rationals.  Every verdict-relevant
/// computation uses these; no floating point participates in any decision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<std::vector<Rat>>;

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, lowest
/// terms — cpp_rational already normalizes).
inline std::string rat_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

/// Inverse of rat_string.  Accepts "p" and "p/q"; rejects everything else.
inline std::optional<Rat> rat_parse(std::string_view text) {
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rat(Int(std::string(text)));
    }
    std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    Int d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rat(Int(std::string(num)), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace ck

#endif  // CK_RATIONAL_HPP
