#include "momentweb/lattice.hpp"

#include <cctype>

namespace mweb {

std::string to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string to_string(const Vec2& v) {
  return "(" + v.x.str() + "," + v.y.str() + ")";
}

std::string to_string(const RatVec2& v) {
  return "(" + to_string(v.x) + "," + to_string(v.y) + ")";
}

Rat parse_rational(const std::string& text) {
  auto fail = [&]() -> Rat {
    throw input_error("invalid rational literal \"" + text +
                      "\": expected an integer or \"p/q\" (e.g. \"3/2\"); "
                      "floating point is not accepted");
  };
  std::size_t i = 0;
  auto read_int = [&](bool allow_sign) -> Int {
    bool negative = false;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) {
      negative = text[i] == '-';
      ++i;
    }
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) fail();
    Int value(text.substr(digits, i - digits));
    return negative ? Int(-value) : value;
  };
  Int num = read_int(true);
  Int den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = read_int(false);
    if (den == 0) fail();
  }
  if (i != text.size()) fail();
  return Rat(num, den);
}

}  // namespace mweb
