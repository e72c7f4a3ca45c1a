#include "sea/rational.hpp"

#include "sea/error.hpp"

#include <cctype>

namespace sea {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  // no leading zeros except "0" itself
  std::size_t first = (s[0] == '-') ? 1 : 0;
  return !(s.size() - first > 1 && s[first] == '0');
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("", "zero denominator in rational \"" + std::string(text) + "\"");
  if (d < 0) throw ParseError("", "negative denominator in rational \"" + std::string(text) + "\"");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw ParseError("", "rational \"" + std::string(text) + "\" is not in lowest terms");
  return Rational(n, d);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational dyadic_sqrt_floor(const Rational& q, unsigned bits) {
  if (!in_unit_interval(q)) throw PreconditionError("dyadic_sqrt_floor: argument outside [0,1]");
  mpz_class scale = 1;
  scale <<= bits;
  // invariant: (lo/scale)^2 <= q < (hi/scale)^2, or hi == scale with q == 1
  mpz_class lo = 0, hi = scale;
  if (q == 1) return Rational(1);
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    Rational m(mid, scale);
    m.canonicalize();
    if (m * m <= q) lo = mid; else hi = mid;
  }
  Rational r(lo, scale);
  r.canonicalize();
  return r;
}

}  // namespace sea
