#pragma once

// Integer Laurent polynomials in t with half-integer exponents, and
// polynomials in x = s^2 where s = t^{1/2} - t^{-1/2}.
//
// Exponents are stored doubled: t^{1/2} has key 1, t has key 2.

#include "fourcalc/integer.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fourcalc {

class LaurentPolynomial {
 public:
  using Terms = std::map<std::int64_t, Integer>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Terms terms) : terms_(std::move(terms)) { normalize(); }

  static LaurentPolynomial constant(const Integer& c) { return monomial(c, 0); }
  static LaurentPolynomial monomial(const Integer& c, std::int64_t doubled_exponent) {
    LaurentPolynomial p;
    if (c != 0) p.terms_[doubled_exponent] = c;
    return p;
  }
  /// s = t^{1/2} - t^{-1/2}.
  static LaurentPolynomial s() { return LaurentPolynomial(Terms{{1, 1}, {-1, -1}}); }

  static LaurentPolynomial parse(std::string_view text);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Integer coefficient(std::int64_t doubled_exponent) const {
    auto it = terms_.find(doubled_exponent);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  bool has_half_integer_exponents() const {
    for (const auto& [e, c] : terms_)
      if (e % 2 != 0) return true;
    return false;
  }

  Integer at_one() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// p(t) == p(1/t).
  bool symmetric() const {
    for (const auto& [e, c] : terms_)
      if (coefficient(-e) != c) return false;
    return true;
  }
  /// p(1/t) == -p(t).
  bool antisymmetric() const {
    for (const auto& [e, c] : terms_)
      if (coefficient(-e) != -c) return false;
    return true;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    normalize();
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    normalize();
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    Terms out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out[ea + eb] += ca * cb;
    return LaurentPolynomial(std::move(out));
  }
  friend LaurentPolynomial operator*(const Integer& m, const LaurentPolynomial& a) {
    return constant(m) * a;
  }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  /// Canonical text, highest exponent first: "3t^1 - 5 + 3t^-1", "t^1/2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const Integer mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (e == 0) {
        os << mag;
      } else {
        if (mag != 1) os << mag;
        os << "t^";
        if (e % 2 == 0) os << e / 2;
        else os << e << "/2";
      }
      first = false;
    }
    return os.str();
  }

 private:
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0) it = terms_.erase(it);
      else ++it;
    }
  }

  Terms terms_;
};

// Grammar (whitespace ignored):
//   poly     := [sign] term (sign term)*
//   term     := digits ['*'] [power] | power
//   power    := 't' ['^' ['-'] digits ['/2']]
inline LaurentPolynomial LaurentPolynomial::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto digits = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("expected digits", pos);
    return std::string(text.substr(start, pos - start));
  };
  Terms terms;
  bool first = true;
  skip();
  if (pos == text.size()) throw ParseError("empty polynomial", pos);
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sgn = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sgn = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", pos);
    }
    first = false;
    Integer coeff = 1;
    bool had_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = Integer(digits());
      had_coeff = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    std::int64_t doubled = 0;
    if (pos < text.size() && text[pos] == 't') {
      ++pos;
      skip();
      doubled = 2;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        int esign = 1;
        if (pos < text.size() && text[pos] == '-') {
          esign = -1;
          ++pos;
        }
        const std::int64_t e = std::stoll(digits());
        doubled = 2 * e;
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          if (digits() != "2") throw ParseError("only '/2' exponent denominators are allowed", pos);
          doubled = e;
        }
        doubled *= esign;
      }
    } else if (!had_coeff) {
      throw ParseError("expected a coefficient or 't'", pos);
    }
    terms[doubled] += sgn * coeff;
  }
  return LaurentPolynomial(std::move(terms));
}

/// Polynomial with integer coefficients in x = s^2; coeffs[i] multiplies x^i.
class PolynomialInS2 {
 public:
  PolynomialInS2() = default;
  explicit PolynomialInS2(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  Integer coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }

  friend PolynomialInS2 operator*(const PolynomialInS2& a, const PolynomialInS2& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolynomialInS2(std::move(out));
  }
  friend bool operator==(const PolynomialInS2&, const PolynomialInS2&) = default;

  /// x^k expanded back into t: (t - 2 + 1/t)^k.
  LaurentPolynomial to_laurent() const {
    const LaurentPolynomial x = LaurentPolynomial::s() * LaurentPolynomial::s();
    LaurentPolynomial power = LaurentPolynomial::constant(1), out;
    for (const auto& c : coeffs_) {
      out += c * power;
      power = power * x;
    }
    return out;
  }

  /// "n s^4 + (n+1) s^2 + 1" style, highest power first.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Integer& c = coeffs_[k];
      if (c == 0) continue;
      const Integer mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (k == 0) os << mag;
      else {
        if (mag != 1) os << mag;
        os << "s^" << 2 * k;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

/// s^m expanded in t^{1/2}: sum_i C(m,i) (-1)^i t^{(m-2i)/2}.
inline LaurentPolynomial s_power(std::size_t m) {
  LaurentPolynomial::Terms terms;
  Integer binom = 1;
  for (std::size_t i = 0; i <= m; ++i) {
    terms[static_cast<std::int64_t>(m) - 2 * static_cast<std::int64_t>(i)] += (i % 2 ? -binom : binom);
    binom = binom * (m - i) / (i + 1);
  }
  return LaurentPolynomial(std::move(terms));
}

}  // namespace fourcalc
