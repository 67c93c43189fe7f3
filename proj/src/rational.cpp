#include "iet/rational.hpp"

namespace iet {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s = text;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer p(s);
      return Rational(p);
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("bad rational");
    Integer p(num), q(den);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

std::string rational_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer squarefree_kernel(Integer n) {
  if (n <= 0) throw std::invalid_argument("squarefree_kernel needs n > 0");
  Integer kernel = 1;
  Integer p = 2;
  const Integer trial_limit = 1000000;
  while (n > 1 && p <= trial_limit) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e % 2 == 1) kernel *= p;
    }
    p += (p == 2) ? 1 : 2;
  }
  if (n > 1) {
    // Remainder has no prime factor <= 10^6. Accept it only when it is a
    // perfect square or provably squarefree (below the square of the limit).
    Integer s = sqrt(n);
    if (s * s == n) return kernel;
    if (n < trial_limit * trial_limit) return kernel * n;
    throw std::invalid_argument(
        "radicand too large to certify independence: unfactored part " + n.get_str());
  }
  return kernel;
}

}  // namespace iet
