#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown by operations that are declared size-limited (Groebner backend,
/// direction cells above n = 3, primitivize re-presentation cases).
struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rat& r) { return r.sign(); }
inline int sign(const Int& z) { return z.sign(); }

/// Serializes as "p" or "p/q"; the exact-rational wire format used everywhere.
inline std::string rat_to_string(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

using QVec = std::vector<Rat>;

inline Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline bool all_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Scales a rational vector to coprime integers, preserving orientation.
inline std::vector<Int> primitive_integer(const QVec& v) {
  Int lcm_den = 1;
  for (const auto& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, rat_den(x));
  std::vector<Int> w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = rat_num(v[i]) * (lcm_den / rat_den(v[i]));
    g = boost::multiprecision::gcd(g, w[i]);
  }
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

}  // namespace ratmeta
