#pragma once

// Exact scalars and vectors. Every number in the library is an arbitrary
// precision integer or rational; there are no tolerances anywhere.

#include "error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toricox {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p())
    throw Error("integer does not fit in a machine word: " + z.get_str());
  return z.get_si();
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "p", "-p", "p/q". Rejects anything else.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw InputRejected("empty rational literal");
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    throw InputRejected("malformed rational literal '" + s + "'");
  if (num.front() == '+') num.erase(0, 1);
  if (den.front() == '+') den.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw InputRejected("zero denominator in '" + s + "'");
  return make_rational(n, d);
}

/// Comma separated list of rationals, e.g. "1,-1" or "2/3, 0, 2/3".
inline RatVec parse_rational_list(std::string_view text) {
  RatVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_rational(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

template <class S, class T>
std::vector<T> scaled(const S& s, const std::vector<T>& a) {
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

template <class A, class B>
auto dot(const std::vector<A>& a, const std::vector<B>& b) {
  using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational, Integer>;
  R s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}
inline bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline Integer content(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_primitive(const IntVec& v) { return content(v) == 1; }

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
inline IntVec primitive_of(const RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Integer(v[i] * l);
  Integer g = content(r);
  if (g == 0) throw Error("primitive_of: zero vector");
  for (auto& x : r) x /= g;
  return r;
}

inline IntVec primitive_of(const IntVec& v) { return primitive_of(to_rational(v)); }

inline IntVec int_vec(std::initializer_list<long> xs) {
  IntVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

inline RatVec rat_vec(std::initializer_list<long> xs) {
  RatVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

template <class T>
std::string vec_to_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

} // namespace toricox
