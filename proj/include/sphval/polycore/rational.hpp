#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sphval/error.hpp"

namespace sphval::polycore {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact coordinate vector. Length is the ambient rank of whatever it lives in.
using RatVec = std::vector<Rational>;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) fail(ErrorKind::InvalidArgument, "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational r;
  if (slash == std::string::npos) {
    if (!valid_int(s)) fail(ErrorKind::InvalidArgument, "bad rational literal '" + s + "'");
    r = Rational(Integer(s, 10));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
      fail(ErrorKind::InvalidArgument, "bad rational literal '" + s + "'");
    Integer d(den, 10);
    if (d == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
    r = Rational(Integer(num, 10), d);
    r.canonicalize();
  }
  return r;
}

/// "p/q" in lowest terms; integers are written without a denominator.
inline std::string format_rational(const Rational& r) { return r.get_str(10); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline RatVec zeros(std::size_t n) { return RatVec(n, Rational(0)); }

inline RatVec unit_vector(std::size_t n, std::size_t i) {
  RatVec v = zeros(n);
  v[i] = 1;
  return v;
}

inline RatVec make_vec(std::initializer_list<long> entries) {
  RatVec v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidArgument, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec operator-(const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline RatVec operator*(const Rational& s, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

inline bool is_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

/// Positive multiple of v with coprime integer entries. Zero stays zero.
inline RatVec primitive(const RatVec& v) {
  if (is_zero(v)) return v;
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(l);
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(Integer(ints[i] / g));
  return r;
}

inline std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
  return r;
}

/// Exact conversion; every finite double is a dyadic rational.
inline Rational from_double(double x) { return Rational(x); }

inline std::string format_vec(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_rational(v[i]);
  }
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RatVec& v) { return os << format_vec(v); }

}  // namespace sphval::polycore
