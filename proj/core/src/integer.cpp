#include "zslice/integer.hpp"

#include "zslice/errors.hpp"

namespace zslice {

std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw InputError("integer too large: " + x.get_str());
  return x.get_si();
}

Rational frac_mod1(const Rational& q) {
  Integer fl = floor_div(q.get_num(), q.get_den());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace zslice
