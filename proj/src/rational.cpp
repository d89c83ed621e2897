#include "rtorsion/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rtorsion {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational rat_parse(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::size_t num_start = (!text.empty() && text[0] == '-') ? 1 : 0;
  const std::size_t num_end = (slash == std::string::npos) ? text.size() : slash;
  if (!all_digits(text, num_start, num_end)) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
  if (slash != std::string::npos) {
    if (!all_digits(text, slash + 1, text.size())) {
      throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
  }
  Rational value(text, 10);
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + text + "'");
  }
  value.canonicalize();
  return value;
}

std::string rat_str(const Rational& value) { return value.get_str(); }

int rat_sign(const Rational& value) { return sgn(value); }

}  // namespace rtorsion
