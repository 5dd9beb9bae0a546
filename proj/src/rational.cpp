#include "kwall/rational.hpp"

#include <cctype>
#include <ostream>

#include "kwall/errors.hpp"

namespace kwall {

namespace {

bool valid_int(std::string_view s, bool allow_sign) {
  size_t i = 0;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational::Rational(long n, long d) {
  if (d == 0) throw DomainError("zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

std::optional<Rational> Rational::try_parse(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto slash = s.find('/');
  std::string_view n = s.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(n, true) || !valid_int(d, false)) return std::nullopt;
  std::string ns(n[0] == '+' ? n.substr(1) : n);
  mpz_class num(ns, 10), den(std::string(d), 10);
  if (den == 0) return std::nullopt;
  return Rational(mpq_class(num, den));
}

Rational Rational::parse(std::string_view s) {
  auto r = try_parse(s);
  if (!r) throw InputError("malformed rational '" + std::string(s) + "'");
  return *r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_class n = v_.get_num(), d = v_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace kwall
