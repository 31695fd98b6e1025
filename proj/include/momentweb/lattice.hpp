#pragma once

// Exact integer and rational lattice arithmetic. Everything downstream
// (fan validation, moment-web propagation, lifting) works over these
// types; no floating point is used anywhere in the engine.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mweb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed holonomy or cross-check: indicates a bug or corrupted input,
// never a user mistake.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  Int x, y;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const Int& k) const { return {x * k, y * k}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

// Fan rays are recorded by their 2D offset; the third coordinate is
// always 1 and only appears when solving quadrilateral relations.
struct Vec3 {
  Int x, y, z;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct RatVec2 {
  Rat x, y;

  friend bool operator==(const RatVec2&, const RatVec2&) = default;
  RatVec2 operator+(const RatVec2& o) const { return {x + o.x, y + o.y}; }
  RatVec2 operator-(const RatVec2& o) const { return {x - o.x, y - o.y}; }
};

inline Int det2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline Int dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Quarter turn: (x, y) -> (-y, x).
inline Vec2 j2(const Vec2& a) { return {-a.y, a.x}; }

inline RatVec2 scaled_j2(const Rat& t, const Vec2& a) {
  return {Rat(-t * a.y), Rat(t * a.x)};
}

inline Rat dot(const Vec2& a, const RatVec2& b) { return a.x * b.x + a.y * b.y; }

inline bool is_primitive(const Vec2& a) {
  if (a.is_zero()) return false;
  return gcd(abs(a.x), abs(a.y)) == 1;
}

inline bool is_anticlockwise(const Vec2& a, const Vec2& b, const Vec2& c) {
  Int d = det2(b - a, c - a);
  if (d == 0) throw input_error("degenerate triangle");
  return d > 0;
}

std::string to_string(const Rat& r);
std::string to_string(const Vec2& v);
std::string to_string(const RatVec2& v);

// Parses "p/q" or an integer literal; anything else (in particular any
// floating point notation) is rejected.
Rat parse_rational(const std::string& text);

}  // namespace mweb
