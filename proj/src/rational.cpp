#include "etafano/rational.hpp"

#include <cctype>

#include "etafano/errors.hpp"

namespace etafano {

namespace {

bool looks_like_rational(const std::string& s) {
  // Accepted grammar: [-+]?digits(/digits)?  with no whitespace. GMP's own
  // parser is more permissive (hex, embedded signs), so we pre-screen.
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  return digits > 0 && i == s.size();
}

}  // namespace

Rat rat_parse(const std::string& text) {
  if (!looks_like_rational(text)) {
    throw ValidationError("not a rational literal: \"" + text + "\"");
  }
  Rat v(text, 10);
  if (v.get_den() == 0) {
    throw ValidationError("zero denominator in rational literal: \"" + text + "\"");
  }
  v.canonicalize();
  return v;
}

std::string rat_str(const Rat& v) {
  std::string out = v.get_num().get_str();
  if (v.get_den() != 1) {
    out += "/";
    out += v.get_den().get_str();
  }
  return out;
}

Int rat_floor(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

Int rat_ceil(const Rat& v) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

long rat_floor_long(const Rat& v) {
  Int f = rat_floor(v);
  if (!f.fits_slong_p()) {
    throw ComputationError("rational floor out of long range: " + rat_str(v));
  }
  return f.get_si();
}

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat out;
  mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), exp);
  // base was canonical, so num^e / den^e already is.
  return out;
}

Rat rat_factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

}  // namespace etafano
