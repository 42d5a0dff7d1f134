// Exact rational arithmetic for densities and 2-density values.
#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ctlab {

using Rat = boost::rational<long long>;

inline Rat rat_pow(Rat base, int e) {
  if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rat r(1);
  while (e-- > 0) r *= base;
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double rat_double(const Rat& r) {
  return double(r.numerator()) / double(r.denominator());
}

// Accepts "a/b", plain integers, and decimals like "0.015".
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rat_parse: zero denominator");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (tail.size() > 15) tail = tail.substr(0, 15);
  long long den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  long long ip = head.empty() || head == "-" ? 0 : std::stoll(head);
  long long fp = tail.empty() ? 0 : std::stoll(tail);
  long long num = (neg ? -1 : 1) * (std::abs(ip) * den + fp);
  return Rat(num, den);
}

}  // namespace ctlab
