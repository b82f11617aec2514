#include "psc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace psc {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  const auto num_text = trim(text.substr(0, slash));
  if (!is_integer_token(num_text)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer num(std::string(num_text[0] == '+' ? num_text.substr(1) : num_text));
  if (slash == std::string_view::npos) return Rational(num);

  const auto den_text = trim(text.substr(slash + 1));
  if (!is_integer_token(den_text) || den_text[0] == '-' || den_text[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer den{std::string(den_text)};
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  const Integer den = denominator_of(value);
  if (den == 1) return numerator_of(value).str();
  return numerator_of(value).str() + "/" + den.str();
}

}  // namespace psc
