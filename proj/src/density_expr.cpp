#include "ctlab/density_expr.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace ctlab {

Rat parse_density(const std::string& expr, long long n) {
  auto caret = expr.find("n^");
  if (caret == std::string::npos) return rat_parse(expr);
  Rat C(1);
  if (caret > 0) {
    std::string pre = expr.substr(0, caret);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    if (!pre.empty()) C = rat_parse(pre);
  }
  std::string ex = expr.substr(caret + 2);
  if (ex.empty() || ex[0] != '-')
    throw std::invalid_argument("density expression needs a negative exponent");
  Rat e = rat_parse(ex.substr(1));
  long long a = e.numerator(), b = e.denominator();
  if (a <= 0 || n < 2) throw std::invalid_argument("density expression: bad exponent or n");
  using boost::multiprecision::cpp_int;
  cpp_int napow = 1;
  for (long long i = 0; i < a; ++i) napow *= n;
  cpp_int rhs = 1;  // 10^(9b)
  for (long long i = 0; i < 9 * b; ++i) rhs *= 10;
  // largest r with r^b * n^a <= 10^(9b), i.e. r = floor(1e9 * n^(-a/b))
  cpp_int lo = 0, hi = cpp_int(1000000000);
  while (lo < hi) {
    cpp_int mid = (lo + hi + 1) / 2;
    cpp_int pw = 1;
    for (long long i = 0; i < b; ++i) pw *= mid;
    if (pw * napow <= rhs)
      lo = mid;
    else
      hi = mid - 1;
  }
  return C * Rat(lo.convert_to<long long>(), 1000000000LL);
}

}  // namespace ctlab
