#pragma once

// Words in the Dehn twists a, b of the torus, evaluated in SL(2, Z) with
//   a -> [[1, 1], [0, 1]],   b -> [[1, 0], [-1, 1]].
// With this choice ab has trace 1 and order 6, and aba = bab.

#include "fourcalc/integer.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fourcalc {

class IntegerMatrix2 {
 public:
  IntegerMatrix2() : IntegerMatrix2(1, 0, 0, 1) {}
  IntegerMatrix2(Integer a, Integer b, Integer c, Integer d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) throw PreconditionError("matrix " + to_string() + " does not have determinant 1");
  }

  static IntegerMatrix2 identity() { return {}; }
  static IntegerMatrix2 twist_a() { return {1, 1, 0, 1}; }
  static IntegerMatrix2 twist_b() { return {1, 0, -1, 1}; }

  const Integer& a() const noexcept { return a_; }
  const Integer& b() const noexcept { return b_; }
  const Integer& c() const noexcept { return c_; }
  const Integer& d() const noexcept { return d_; }

  Integer trace() const { return a_ + d_; }
  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
  IntegerMatrix2 inverse() const { return {d_, -b_, -c_, a_}; }

  IntegerMatrix2 pow(std::int64_t k) const {
    IntegerMatrix2 base = k < 0 ? inverse() : *this, acc;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Smallest k in 1..12 with M^k = I (finite-order elements of SL(2,Z)
  /// have order 1, 2, 3, 4 or 6).
  std::optional<int> order() const {
    IntegerMatrix2 p = *this;
    for (int k = 1; k <= 12; ++k) {
      if (p.is_identity()) return k;
      p = p * *this;
    }
    return std::nullopt;
  }

  /// For trace 2, M != I: M - I = m [[-xy, x^2], [-y^2, xy]] with gcd(x, y) = 1;
  /// returns the signed m. M is then conjugate to a^m.
  std::optional<Integer> twist_multiplicity() const {
    if (trace() != 2 || is_identity()) return std::nullopt;
    const Integer n01 = b_, n10 = c_;
    const Integer g = gcd(gcd(a_ - 1, b_), gcd(c_, d_ - 1));
    const int s = n01 != 0 ? sign(n01) : -sign(n10);
    return s * g;
  }

  friend IntegerMatrix2 operator*(const IntegerMatrix2& x, const IntegerMatrix2& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
            x.c_ * y.b_ + x.d_ * y.d_};
  }
  friend bool operator==(const IntegerMatrix2&, const IntegerMatrix2&) = default;

  std::string to_string() const {
    return "[[" + a_.str() + "," + b_.str() + "],[" + c_.str() + "," + d_.str() + "]]";
  }

 private:
  Integer a_, b_, c_, d_;
};

enum class Letter : char { a = 'a', b = 'b', a_inv = 'A', b_inv = 'B' };

inline Letter invert(Letter l) {
  switch (l) {
    case Letter::a: return Letter::a_inv;
    case Letter::b: return Letter::b_inv;
    case Letter::a_inv: return Letter::a;
    case Letter::b_inv: return Letter::b;
  }
  return l;
}

inline IntegerMatrix2 generator_matrix(Letter l) {
  switch (l) {
    case Letter::a: return IntegerMatrix2::twist_a();
    case Letter::b: return IntegerMatrix2::twist_b();
    case Letter::a_inv: return IntegerMatrix2::twist_a().inverse();
    case Letter::b_inv: return IntegerMatrix2::twist_b().inverse();
  }
  return {};
}

using Letters = std::vector<Letter>;

inline Letters inverse_word(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (auto& l : out) l = invert(l);
  return out;
}

inline Letters power_word(const Letters& w, std::int64_t k) {
  const Letters base = k < 0 ? inverse_word(w) : w;
  Letters out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

/// One top-level atom of a parsed word: `base` raised to `exponent`.
struct WordFactor {
  std::string text;
  Letters base;
  std::int64_t exponent = 1;
  Letters letters() const { return power_word(base, exponent); }
};

class MCGWord {
 public:
  MCGWord() = default;
  explicit MCGWord(std::vector<WordFactor> factors) : factors_(std::move(factors)) {}
  explicit MCGWord(const Letters& letters) {
    for (Letter l : letters) factors_.push_back({std::string(1, static_cast<char>(l)), {l}, 1});
  }

  const std::vector<WordFactor>& factors() const noexcept { return factors_; }
  Letters letters() const {
    Letters out;
    for (const auto& f : factors_) {
      auto l = f.letters();
      out.insert(out.end(), l.begin(), l.end());
    }
    return out;
  }
  bool empty() const { return letters().empty(); }

 private:
  std::vector<WordFactor> factors_;
};

/// Flat letter string using A, B for inverses; reparses to the same letters.
inline std::string print_letters(const Letters& w) {
  std::string out;
  for (Letter l : w) out.push_back(static_cast<char>(l));
  return out;
}

// Grammar (whitespace ignored):
//   word := atom*
//   atom := ('a' | 'b' | 'A' | 'B' | '(' word ')') ['^' ['-'] digits]
inline MCGWord parse_word(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_power = [&]() -> std::int64_t {
    skip();
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    skip();
    int s = 1;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      s = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError("expected an integer exponent", pos);
    return s * std::stoll(std::string(text.substr(start, pos - start)));
  };
  // Returns the flat letters of a word up to `)` or end.
  auto parse_seq = [&](auto&& self, bool nested, std::vector<WordFactor>* top) -> Letters {
    Letters out;
    while (true) {
      skip();
      if (pos >= text.size()) {
        if (nested) throw ParseError("missing ')'", pos);
        break;
      }
      const char ch = text[pos];
      if (ch == ')') {
        if (!nested) throw ParseError("unbalanced ')'", pos);
        break;
      }
      const std::size_t start = pos;
      Letters base;
      if (ch == 'a' || ch == 'b' || ch == 'A' || ch == 'B') {
        base.push_back(static_cast<Letter>(ch));
        ++pos;
      } else if (ch == '(') {
        ++pos;
        skip();
        if (pos < text.size() && text[pos] == ')') throw ParseError("empty parenthesized group", start);
        base = self(self, true, nullptr);
        skip();
        ++pos;  // ')
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", pos);
      }
      const std::int64_t e = parse_power();
      auto letters = power_word(base, e);
      out.insert(out.end(), letters.begin(), letters.end());
      if (top) {
        std::string raw(text.substr(start, pos - start));
        std::string compact;
        for (char c : raw)
          if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
        top->push_back({compact, base, e});
      }
    }
    return out;
  };
  std::vector<WordFactor> factors;
  parse_seq(parse_seq, false, &factors);
  return MCGWord(std::move(factors));
}

inline IntegerMatrix2 evaluate(const Letters& w) {
  IntegerMatrix2 m;
  for (Letter l : w) m = m * generator_matrix(l);
  return m;
}

inline IntegerMatrix2 evaluate(const MCGWord& w) { return evaluate(w.letters()); }

/// "identity", "elliptic of order k", "parabolic I_m", "parabolic -I_m", "hyperbolic".
inline std::string conjugacy_type(const IntegerMatrix2& m) {
  if (m.is_identity()) return "identity";
  const Integer t = m.trace();
  if (abs(t) < 2) return "elliptic of order " + std::to_string(m.order().value_or(0));
  if (t == 2) {
    const Integer k = *m.twist_multiplicity();
    return k > 0 ? "parabolic I_" + k.str() : "parabolic I_" + k.str() + " (negative)";
  }
  if (t == -2) {
    const IntegerMatrix2 neg(-m.a(), -m.b(), -m.c(), -m.d());
    if (neg.is_identity()) return "central -I";
    return "parabolic -I_" + neg.twist_multiplicity()->str();
  }
  return "hyperbolic";
}

struct FactorDiagnostic {
  std::string text;
  std::int64_t exponent = 1;
  IntegerMatrix2 base_matrix;
  IntegerMatrix2 factor_matrix;
  std::string base_type;
  std::string factor_type;
  /// Number of nodal fibers this factor stands for: the exponent when the
  /// base is a single positive Dehn twist (trace 2, multiplicity 1), else 0.
  std::int64_t nodal_count = 0;
  /// I_m when the whole factor is conjugate to a^m, m > 0.
  std::optional<Integer> fiber_multiplicity;
};

struct FactorizationReport {
  IntegerMatrix2 lhs;
  IntegerMatrix2 rhs;
  bool equal = false;
  std::vector<FactorDiagnostic> factors;
};

inline FactorDiagnostic diagnose(const WordFactor& f) {
  FactorDiagnostic d;
  d.text = f.text;
  d.exponent = f.exponent;
  d.base_matrix = evaluate(f.base);
  d.factor_matrix = d.base_matrix.pow(f.exponent);
  d.base_type = conjugacy_type(d.base_matrix);
  d.factor_type = conjugacy_type(d.factor_matrix);
  const auto bm = d.base_matrix.twist_multiplicity();
  if (bm && *bm == 1 && f.exponent > 0) d.nodal_count = f.exponent;
  const auto fm = d.factor_matrix.twist_multiplicity();
  if (fm && *fm > 0) d.fiber_multiplicity = *fm;
  return d;
}

/// Compares the product of `word` with `expected` (identity when absent).
inline FactorizationReport verify_factorization(const MCGWord& word,
                                                const std::optional<MCGWord>& expected = std::nullopt) {
  FactorizationReport r;
  r.lhs = evaluate(word);
  r.rhs = expected ? evaluate(*expected) : IntegerMatrix2::identity();
  r.equal = r.lhs == r.rhs;
  for (const auto& f : word.factors()) r.factors.push_back(diagnose(f));
  return r;
}

}  // namespace fourcalc
