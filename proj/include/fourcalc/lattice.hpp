#pragma once

// Integral lattices with a symmetric bilinear form, and classes in them.
//
// A lattice is an ordered list of basis labels plus a symmetric Gram matrix.
// Classes carry a shared handle to their lattice and an integer coordinate
// vector. Labels are the identity of a basis vector: operations that build a
// new lattice out of an old one (blowups, for instance) keep labels, and
// `transport` moves classes across by label.

#include "fourcalc/integer.hpp"
#include "fourcalc/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fourcalc {

struct Signature {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature counts including the nullity; used for relative lattices.
struct Inertia {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;
};

/// Thrown for degenerate forms; carries one integral vector of the radical.
class DegenerateFormError : public PreconditionError {
 public:
  DegenerateFormError(const std::string& what, std::vector<Integer> radical)
      : PreconditionError(what), radical_(std::move(radical)) {}
  const std::vector<Integer>& radical_vector() const noexcept { return radical_; }

 private:
  std::vector<Integer> radical_;
};

namespace detail {

/// Symmetric Gaussian elimination over Q. Rows of `basis` are the new basis
/// vectors in old coordinates; `diagonal` is their (diagonal) Gram matrix.
/// Pivot rule: first nonzero diagonal entry at or after the current step;
/// failing that, the first nonzero off-diagonal (i, j) is symmetrized by
/// adding row/column j to row/column i, which makes entry (i, i) = 2 a_ij.
struct Diagonalization {
  std::vector<Rational> diagonal;
  RatMatrix basis;
  std::size_t nonzero = 0;  // diagonal[0..nonzero) are nonzero, the rest 0
};

inline Diagonalization diagonalize(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  RatMatrix a = to_rational(gram);
  RatMatrix p = RatMatrix::identity(n);
  auto swap_sym = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_rows(i, j);
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    p.swap_rows(i, j);
  };
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv) == 0) ++piv;
    if (piv == n) {
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = k; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            off = std::make_pair(i, j);
            break;
          }
      if (!off) break;
      const auto [i, j] = *off;
      for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
      for (std::size_t c = 0; c < n; ++c) p(i, c) += p(j, c);
      piv = i;
    }
    swap_sym(k, piv);
    const Rational d = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / d;
      for (std::size_t c = 0; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) -= f * a(r, k);
      for (std::size_t c = 0; c < n; ++c) p(i, c) -= f * p(k, c);
    }
  }
  Diagonalization out;
  out.nonzero = k;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  out.basis = std::move(p);
  return out;
}

inline std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, denominator(x));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    out.push_back(numerator(x * den));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

class IntersectionLattice {
 public:
  /// `relative` admits degenerate forms (plumbing interiors and the like).
  IntersectionLattice(std::string id, std::vector<std::string> labels, IntMatrix gram,
                      bool relative = false)
      : id_(std::move(id)), labels_(std::move(labels)), gram_(std::move(gram)),
        relative_(relative) {
    if (!gram_.square() || gram_.rows() != labels_.size())
      throw StructuralError("gram matrix must be rank x rank for lattice '" + id_ + "'");
    if (!gram_.is_symmetric())
      throw StructuralError("gram matrix of lattice '" + id_ + "' is not symmetric");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw StructuralError("empty basis label");
      if (!index_.emplace(labels_[i], i).second)
        throw StructuralError("duplicate basis label '" + labels_[i] + "'");
    }
    determinant_ = fourcalc::determinant(gram_);
    if (determinant_ == 0 && !relative_) {
      const auto diag = detail::diagonalize(gram_);
      throw DegenerateFormError("degenerate form on lattice '" + id_ + "'",
                                detail::clear_denominators(diag.basis.row(diag.nonzero)));
    }
  }

  const std::string& id() const noexcept { return id_; }
  std::size_t rank() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const IntMatrix& gram() const noexcept { return gram_; }
  const Integer& determinant() const noexcept { return determinant_; }
  bool relative() const noexcept { return relative_; }
  bool nondegenerate() const noexcept { return determinant_ != 0; }
  bool unimodular() const noexcept { return abs(determinant_) == 1; }

  bool has_label(std::string_view label) const {
    return index_.find(std::string(label)) != index_.end();
  }
  std::size_t index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end())
      throw StructuralError("lattice '" + id_ + "' has no basis label '" + std::string(label) + "'");
    return it->second;
  }

  /// Even iff every basis square is even (basis independent).
  bool even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }

  friend bool operator==(const IntersectionLattice& a, const IntersectionLattice& b) {
    return a.labels_ == b.labels_ && a.gram_ == b.gram_;
  }

 private:
  std::string id_;
  std::vector<std::string> labels_;
  IntMatrix gram_;
  bool relative_ = false;
  Integer determinant_;
  std::map<std::string, std::size_t> index_;
};

using LatticePtr = std::shared_ptr<const IntersectionLattice>;

inline LatticePtr make_lattice(std::string id, std::vector<std::string> labels, IntMatrix gram,
                               bool relative = false) {
  return std::make_shared<const IntersectionLattice>(std::move(id), std::move(labels),
                                                     std::move(gram), relative);
}

/// Diagonal lattice with the given labels and basis squares.
inline LatticePtr diagonal_lattice(std::string id, std::vector<std::string> labels,
                                   const std::vector<Integer>& squares) {
  IntMatrix g(labels.size(), labels.size());
  if (squares.size() != labels.size()) throw StructuralError("diagonal_lattice: size mismatch");
  for (std::size_t i = 0; i < squares.size(); ++i) g(i, i) = squares[i];
  return make_lattice(std::move(id), std::move(labels), std::move(g));
}

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  return a && b && (a == b || *a == *b);
}

class HomologyClass {
 public:
  HomologyClass() = default;
  HomologyClass(LatticePtr lattice, std::vector<Integer> coords)
      : lattice_(std::move(lattice)), coords_(std::move(coords)) {
    if (!lattice_) throw StructuralError("class without a lattice");
    if (coords_.size() != lattice_->rank())
      throw StructuralError("class has " + std::to_string(coords_.size()) +
                            " coordinates but lattice '" + lattice_->id() + "' has rank " +
                            std::to_string(lattice_->rank()));
  }

  static HomologyClass zero(const LatticePtr& lattice) {
    return {lattice, std::vector<Integer>(lattice->rank(), Integer(0))};
  }
  static HomologyClass basis(const LatticePtr& lattice, std::string_view label) {
    auto c = zero(lattice);
    c.coords_[lattice->index_of(label)] = 1;
    return c;
  }
  /// Sparse constructor: {{"eta", 3}, {"eps1", -1}, ...}.
  static HomologyClass of(const LatticePtr& lattice,
                          std::initializer_list<std::pair<std::string_view, long long>> terms) {
    auto c = zero(lattice);
    for (const auto& [label, coeff] : terms) c.coords_[lattice->index_of(label)] += coeff;
    return c;
  }

  const LatticePtr& lattice() const noexcept { return lattice_; }
  const std::vector<Integer>& coords() const noexcept { return coords_; }
  const Integer& coord(std::string_view label) const {
    return coords_[lattice_->index_of(label)];
  }
  bool valid() const noexcept { return static_cast<bool>(lattice_); }
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
  }

  HomologyClass operator-() const {
    HomologyClass r = *this;
    for (auto& x : r.coords_) x = -x;
    return r;
  }
  HomologyClass& operator+=(const HomologyClass& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  HomologyClass& operator-=(const HomologyClass& o) { return *this += -o; }
  friend HomologyClass operator+(HomologyClass a, const HomologyClass& b) { return a += b; }
  friend HomologyClass operator-(HomologyClass a, const HomologyClass& b) { return a -= b; }
  friend HomologyClass operator*(const Integer& m, HomologyClass a) {
    for (auto& x : a.coords_) x *= m;
    return a;
  }
  friend HomologyClass operator*(long long m, const HomologyClass& a) { return Integer(m) * a; }

  friend bool operator==(const HomologyClass& a, const HomologyClass& b) {
    return same_lattice(a.lattice_, b.lattice_) && a.coords_ == b.coords_;
  }
  friend bool operator<(const HomologyClass& a, const HomologyClass& b) {
    return a.coords_ < b.coords_;
  }

  /// Human-readable linear combination, e.g. "3eta - eps1 - eps9".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const Integer& c = coords_[i];
      if (c == 0) continue;
      const Integer mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mag != 1) os << mag;
      os << lattice_->labels()[i];
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  void check_same(const HomologyClass& o) const {
    if (!same_lattice(lattice_, o.lattice_))
      throw StructuralError("classes live in different lattices ('" +
                            (lattice_ ? lattice_->id() : std::string("?")) + "' vs '" +
                            (o.lattice_ ? o.lattice_->id() : std::string("?")) + "')");
  }

  LatticePtr lattice_;
  std::vector<Integer> coords_;
};

inline Integer pair(const HomologyClass& x, const HomologyClass& y) {
  if (!same_lattice(x.lattice(), y.lattice()))
    throw StructuralError("pair: classes live in different lattices ('" + x.lattice()->id() +
                          "' vs '" + y.lattice()->id() + "')");
  const auto& g = x.lattice()->gram();
  const auto& a = x.coords();
  const auto& b = y.coords();
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0 && g(i, j) != 0) row += g(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

inline Integer square(const HomologyClass& x) { return pair(x, x); }

/// k . x == x . x (mod 2) for every basis vector x.
inline bool is_characteristic(const HomologyClass& k) {
  const auto& g = k.lattice()->gram();
  const auto& c = k.coords();
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer kx = 0;
    for (std::size_t j = 0; j < c.size(); ++j) kx += g(i, j) * c[j];
    if (mod_floor(kx - g(i, i), 2) != 0) return false;
  }
  return true;
}

inline Inertia inertia(const IntersectionLattice& lattice) {
  const auto diag = detail::diagonalize(lattice.gram());
  Inertia out;
  for (const auto& d : diag.diagonal) {
    if (d > 0) ++out.b_plus;
    else if (d < 0) ++out.b_minus;
    else ++out.b_zero;
  }
  return out;
}

/// (b+, b-) by exact congruence diagonalization; degenerate forms throw with
/// a radical vector.
inline Signature signature_and_betti(const IntersectionLattice& lattice) {
  const auto diag = detail::diagonalize(lattice.gram());
  if (diag.nonzero < lattice.rank()) {
    const auto radical = detail::clear_denominators(diag.basis.row(diag.nonzero));
    std::ostringstream os;
    os << "degenerate form on lattice '" << lattice.id() << "'; radical vector (";
    for (std::size_t i = 0; i < radical.size(); ++i) os << (i ? "," : "") << radical[i];
    os << ")";
    throw DegenerateFormError(os.str(), radical);
  }
  Signature s;
  for (const auto& d : diag.diagonal) (d > 0 ? s.b_plus : s.b_minus)++;
  return s;
}

inline std::int64_t signature_value(const IntersectionLattice& lattice) {
  const auto s = signature_and_betti(lattice);
  return static_cast<std::int64_t>(s.b_plus) - static_cast<std::int64_t>(s.b_minus);
}

/// A sublattice given by ambient basis vectors, with the induced form.
struct Sublattice {
  std::vector<HomologyClass> basis;
  IntMatrix gram;

  std::size_t rank() const noexcept { return basis.size(); }

  /// Standalone lattice on the same Gram matrix, labelled `prefix`1..rank.
  LatticePtr as_lattice(const std::string& id, const std::string& prefix = "c",
                        bool relative = false) const {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back(prefix + std::to_string(i + 1));
    return make_lattice(id, std::move(labels), gram, relative);
  }
};

inline IntMatrix gram_of(const std::vector<HomologyClass>& classes) {
  IntMatrix g(classes.size(), classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i; j < classes.size(); ++j) g(i, j) = g(j, i) = pair(classes[i], classes[j]);
  return g;
}

/// Integral basis of {x : x . u = 0 for all u in classes}.
inline Sublattice orthogonal_complement(const LatticePtr& lattice,
                                        const std::vector<HomologyClass>& classes) {
  const std::size_t r = lattice->rank();
  for (const auto& u : classes)
    if (!same_lattice(u.lattice(), lattice))
      throw StructuralError("orthogonal_complement: class from another lattice");
  IntMatrix coords(classes.size(), r);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) coords(i, j) = classes[i].coords()[j];
  if (rank(coords) != classes.size())
    throw PreconditionError("orthogonal_complement: input classes are linearly dependent");
  Sublattice out;
  if (classes.empty()) {
    for (std::size_t j = 0; j < r; ++j) out.basis.push_back(HomologyClass::basis(lattice, lattice->labels()[j]));
    out.gram = lattice->gram();
    return out;
  }
  const IntMatrix constraints = coords * lattice->gram();
  auto kernel = integer_kernel(constraints);
  size_reduce(kernel);
  for (auto& v : kernel) out.basis.emplace_back(lattice, std::move(v));
  out.gram = gram_of(out.basis);
  return out;
}

/// Some characteristic class, if one exists (always for unimodular lattices).
/// Solves G k == diag(G) over F_2.
inline std::optional<HomologyClass> characteristic_representative(const LatticePtr& lattice) {
  const std::size_t n = lattice->rank();
  std::vector<std::vector<int>> a(n, std::vector<int>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<int>(mod_floor(lattice->gram()(i, j), 2));
    a[i][n] = static_cast<int>(mod_floor(lattice->gram()(i, i), 2));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && a[i][c])
        for (std::size_t j = c; j <= n; ++j) a[i][j] ^= a[r][j];
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (a[i][n]) return std::nullopt;
  std::vector<Integer> k(n, Integer(0));
  for (std::size_t i = 0; i < r; ++i) k[pivots[i]] = a[i][n];
  return HomologyClass(lattice, std::move(k));
}

/// Moves a class into another lattice by matching basis labels. Labels absent
/// from the target must carry a zero coefficient.
inline HomologyClass transport(const HomologyClass& x, const LatticePtr& target) {
  auto out = HomologyClass::zero(target);
  std::vector<Integer> coords = out.coords();
  const auto& labels = x.lattice()->labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (x.coords()[i] == 0) continue;
    if (!target->has_label(labels[i]))
      throw StructuralError("transport: label '" + labels[i] + "' missing from lattice '" +
                            target->id() + "'");
    coords[target->index_of(labels[i])] = x.coords()[i];
  }
  return {target, std::move(coords)};
}

/// Orthogonal sum with one new basis vector of the given square.
inline LatticePtr extend_lattice(const IntersectionLattice& base, const std::string& id,
                                 const std::string& label, const Integer& new_square) {
  const std::size_t r = base.rank();
  IntMatrix g(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = base.gram()(i, j);
  g(r, r) = new_square;
  auto labels = base.labels();
  labels.push_back(label);
  return make_lattice(id, std::move(labels), std::move(g), base.relative());
}

/// Parses linear combinations such as "3eta - eps1 - 2(E0 + E1)" or
/// "S+2T-2*(E0+E1+E2)". Identifiers resolve through `named` first, then
/// against basis labels.
class ClassExpressionParser {
 public:
  using Lookup = std::function<std::optional<HomologyClass>(const std::string&)>;

  ClassExpressionParser(LatticePtr lattice, Lookup named = {})
      : lattice_(std::move(lattice)), named_(std::move(named)) {}

  HomologyClass parse(std::string_view text) {
    text_ = text;
    pos_ = 0;
    auto c = expression();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return c;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  HomologyClass expression() {
    skip_ws();
    int s = 1;
    if (peek('+')) ++pos_;
    else if (peek('-')) { s = -1; ++pos_; }
    HomologyClass acc = Integer(s) * term();
    while (true) {
      if (peek('+')) { ++pos_; acc += term(); }
      else if (peek('-')) { ++pos_; acc -= term(); }
      else break;
    }
    return acc;
  }

  HomologyClass term() {
    skip_ws();
    Integer coeff = 1;
    bool had_number = false;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      coeff = Integer(std::string(text_.substr(start, pos_ - start)));
      had_number = true;
      if (peek('*')) ++pos_;
    }
    skip_ws();
    if (peek('(')) {
      ++pos_;
      auto inner = expression();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return coeff * inner;
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (named_) {
        if (auto c = named_(name)) return coeff * *c;
      }
      if (!lattice_->has_label(name)) throw ParseError("unknown class or label '" + name + "'", start);
      return coeff * HomologyClass::basis(lattice_, name);
    }
    if (had_number)
      throw ParseError("bare integer is not a class", pos_);
    throw ParseError("expected a term", pos_);
  }

  LatticePtr lattice_;
  Lookup named_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline HomologyClass parse_class(const LatticePtr& lattice, std::string_view text,
                                 ClassExpressionParser::Lookup named = {}) {
  return ClassExpressionParser(lattice, std::move(named)).parse(text);
}

}  // namespace fourcalc
