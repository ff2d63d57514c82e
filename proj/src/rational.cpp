#include "gevrey/rational.hpp"

#include <cctype>

namespace gevrey {

Rational rat_from_long(long n, unsigned long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::optional<Rational> parse_rational(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) return std::nullopt;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  bool slash = false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash || j + 1 == s.size() || !std::isdigit(static_cast<unsigned char>(s[j + 1])))
        return std::nullopt;
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
  }
  Rational r;
  if (r.set_str(s, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;  // guard before canonicalize: "1/0"
  r.canonicalize();
  return r;
}

std::string rational_str(const Rational& r) {
  return r.get_str();  // canonical "p" or "p/q" after canonicalize()
}

long rational_floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q.get_si();
}

}  // namespace gevrey
