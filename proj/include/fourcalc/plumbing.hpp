#pragma once

// Plumbing graphs (the C_p chains and the affine E6 tree), their lens space
// boundaries, embeddings of configurations in ambient models, characteristic
// lifts, and the rational blowdown of an embedded C_p.

#include "fourcalc/fourmanifold.hpp"
#include "fourcalc/lattice.hpp"
#include "fourcalc/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fourcalc {

class PlumbingChain {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  PlumbingChain(std::vector<Integer> weights, std::vector<Edge> edges, std::string name = {})
      : weights_(std::move(weights)), edges_(std::move(edges)), name_(std::move(name)) {
    const std::size_t n = weights_.size();
    if (n == 0) throw PreconditionError("plumbing graph needs at least one vertex");
    std::set<Edge> seen;
    for (auto [a, b] : edges_) {
      if (a >= n || b >= n || a == b) throw StructuralError("plumbing graph has an invalid edge");
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
        throw StructuralError("plumbing graph has a repeated edge");
    }
    if (edges_.size() != n - 1 || !connected())
      throw PreconditionError("plumbing graph must be a tree");
  }

  /// Linear chain with consecutive vertices joined.
  static PlumbingChain linear(std::vector<Integer> weights, std::string name = {}) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) edges.emplace_back(i, i + 1);
    return PlumbingChain(std::move(weights), std::move(edges), std::move(name));
  }

  const std::vector<Integer>& weights() const noexcept { return weights_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return weights_.size(); }

  bool adjacent(std::size_t a, std::size_t b) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
      return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
  }
  std::size_t degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
      return e.first == v || e.second == v;
    }));
  }
  bool is_linear() const {
    for (std::size_t i = 0; i + 1 < size(); ++i)
      if (!adjacent(i, i + 1)) return false;
    return true;
  }

 private:
  bool connected() const {
    std::vector<std::size_t> parent(weights_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : edges_) parent[find(a)] = find(b);
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(i) != find(0)) return false;
    return true;
  }

  std::vector<Integer> weights_;
  std::vector<Edge> edges_;
  std::string name_;
};

/// u_0 - u_1 - ... - u_{p-2} with weights -(p+2), -2, ..., -2.
inline PlumbingChain cp_chain(std::int64_t p) {
  if (p < 2) throw PreconditionError("C_p needs p >= 2, got " + std::to_string(p));
  std::vector<Integer> w(static_cast<std::size_t>(p - 1), Integer(-2));
  w[0] = -(p + 2);
  return PlumbingChain::linear(std::move(w), "C_" + std::to_string(p));
}

/// Affine E6: vertices S1..S7 (indices 0..6); S1-S2-S3-S4-S5 and S3-S6-S7.
inline PlumbingChain e6_tree() {
  return PlumbingChain(std::vector<Integer>(7, Integer(-2)), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}},
                       "affine E6");
}

inline IntMatrix intersection_matrix(const PlumbingChain& chain) {
  IntMatrix m(chain.size(), chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) m(i, i) = chain.weights()[i];
  for (auto [a, b] : chain.edges()) m(a, b) = m(b, a) = 1;
  return m;
}

struct PlumbingMatrix {
  IntMatrix matrix;
  Integer determinant;
  RatMatrix inverse;
};

inline PlumbingMatrix plumbing_matrix(const PlumbingChain& chain) {
  PlumbingMatrix out;
  out.matrix = intersection_matrix(chain);
  out.determinant = determinant(out.matrix);
  if (out.determinant == 0) throw PreconditionError("plumbing matrix of " + chain.name() + " is singular");
  out.inverse = inverse(out.matrix);
  return out;
}

/// [a_0, a_1, ..., a_k] = a_0 - 1/(a_1 - 1/(... - 1/a_k)).
inline Rational negative_continued_fraction(const std::vector<Integer>& entries) {
  if (entries.empty()) throw PreconditionError("empty continued fraction");
  Rational v = entries.back();
  for (std::size_t i = entries.size() - 1; i-- > 0;) v = Rational(entries[i]) - 1 / v;
  return v;
}

class LensSpace {
 public:
  LensSpace(Integer order, Integer twist) : order_(std::move(order)), twist_(std::move(twist)) {
    if (order_ <= 0) throw PreconditionError("lens space order must be positive");
    if (gcd(order_, twist_) != 1) throw PreconditionError("lens space L(p, q) needs gcd(p, q) = 1");
  }

  const Integer& order() const noexcept { return order_; }
  const Integer& twist() const noexcept { return twist_; }

  /// {+-q, +-q^{-1}} mod p as residues in [0, p).
  std::vector<Integer> residue_orbit() const {
    std::set<Integer> out;
    const Integer q = mod_floor(twist_, order_);
    const Integer qi = mod_inverse(q, order_).value_or(q);
    for (const auto& r : {q, qi}) {
      out.insert(mod_floor(r, order_));
      out.insert(mod_floor(-r, order_));
    }
    return {out.begin(), out.end()};
  }
  /// Whether L(p, other) is L(p, q) up to orientation and the q <-> q^{-1} symmetry.
  bool matches(const Integer& other) const {
    const auto orbit = residue_orbit();
    return std::find(orbit.begin(), orbit.end(), mod_floor(other, order_)) != orbit.end();
  }

  std::string to_string() const { return "L(" + order_.str() + "," + twist_.str() + ")"; }

 private:
  Integer order_;
  Integer twist_;
};

/// Boundary of a linear chain with all weights <= -2: L(p, q) where
/// p/q = [-w_0, ..., -w_k].
inline LensSpace boundary_lens_space(const PlumbingChain& chain) {
  if (!chain.is_linear()) throw PreconditionError("boundary_lens_space needs a linear chain");
  std::vector<Integer> cf;
  for (const auto& w : chain.weights()) {
    if (w > -2) throw PreconditionError("boundary_lens_space: weight " + w.str() + " > -2");
    cf.push_back(-w);
  }
  const Rational v = negative_continued_fraction(cf);
  return LensSpace(numerator(v), denominator(v));
}

/// Pairings of named ambient classes with each vertex, plus the vertex Gram
/// matrix. Names resolve as marked classes first, then basis labels.
struct IntersectionProfile {
  IntMatrix gram;
  std::map<std::string, std::vector<Integer>> pairings;
};

class ConfigurationEmbedding {
 public:
  ConfigurationEmbedding(FourManifoldModel ambient, std::vector<HomologyClass> vertex_classes,
                         std::optional<IntersectionProfile> profile = std::nullopt)
      : ambient_(std::move(ambient)), classes_(std::move(vertex_classes)), profile_(std::move(profile)) {
    for (const auto& c : classes_)
      if (!same_lattice(c.lattice(), ambient_.lattice()))
        throw StructuralError("embedding: vertex class from another lattice");
    if (classes_.empty() && !profile_) throw PreconditionError("embedding needs classes or a profile");
    if (profile_) {
      for (const auto& [name, v] : profile_->pairings)
        if (v.size() != profile_->gram.rows())
          throw StructuralError("profile pairing '" + name + "' has the wrong length");
    }
  }
  ConfigurationEmbedding(FourManifoldModel ambient, IntersectionProfile profile)
      : ConfigurationEmbedding(std::move(ambient), {}, std::move(profile)) {}

  const FourManifoldModel& ambient() const noexcept { return ambient_; }
  const std::vector<HomologyClass>& vertex_classes() const noexcept { return classes_; }
  const std::optional<IntersectionProfile>& profile() const noexcept { return profile_; }
  bool explicit_classes() const noexcept { return !classes_.empty(); }
  std::size_t size() const { return classes_.empty() ? profile_->gram.rows() : classes_.size(); }

  IntMatrix realized_gram() const { return classes_.empty() ? profile_->gram : gram_of(classes_); }

  /// (k . u_i)_i. Without explicit classes, k must be a rational combination
  /// of the profiled classes.
  std::vector<Integer> pairing_vector(const HomologyClass& k) const {
    std::vector<Integer> v;
    if (!classes_.empty()) {
      for (const auto& u : classes_) v.push_back(pair(k, u));
      return v;
    }
    std::vector<std::string> names;
    std::vector<HomologyClass> basis;
    for (const auto& [name, _] : profile_->pairings) {
      names.push_back(name);
      basis.push_back(ambient_.parse(name));
    }
    const std::size_t r = ambient_.lattice()->rank();
    RatMatrix a(r, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) a(i, j) = Rational(basis[j].coords()[i]);
    std::vector<Rational> b(k.coords().begin(), k.coords().end());
    const auto c = solve(a, b);
    if (!c) throw PreconditionError("class " + k.to_string() + " is not determined by the intersection profile");
    std::vector<Rational> acc(size(), Rational(0));
    for (std::size_t j = 0; j < names.size(); ++j)
      for (std::size_t i = 0; i < size(); ++i) acc[i] += (*c)[j] * Rational(profile_->pairings.at(names[j])[i]);
    for (const auto& x : acc) {
      if (!is_integral(x)) throw Error("profile produced a non-integral pairing for " + k.to_string());
      v.push_back(numerator(x));
    }
    return v;
  }

 private:
  FourManifoldModel ambient_;
  std::vector<HomologyClass> classes_;
  std::optional<IntersectionProfile> profile_;
};

struct GramMismatch {
  std::size_t i = 0, j = 0;
  Integer expected, actual;
};

struct EmbeddingReport {
  bool gram_matches = false;
  std::vector<GramMismatch> mismatches;
  /// Affine E6 only: central vertex with three legs of length two.
  std::optional<bool> dynkin_shape;
  /// Affine E6 with explicit classes: every vertex orthogonal to the fiber T.
  std::optional<bool> fiber_orthogonal;
  /// Affine E6 with explicit classes: the null vector (multiplicities) of the
  /// Gram matrix combines the vertex classes into T.
  std::optional<bool> fiber_combination;
  /// Explicit classes and profile agree.
  std::optional<bool> profile_consistent;

  bool ok() const {
    return gram_matches && dynkin_shape.value_or(true) && fiber_orthogonal.value_or(true) &&
           fiber_combination.value_or(true) && profile_consistent.value_or(true);
  }
};

inline bool is_affine_e6_shape(const PlumbingChain& chain) {
  if (chain.size() != 7) return false;
  std::optional<std::size_t> center;
  for (std::size_t v = 0; v < 7; ++v) {
    if (chain.degree(v) > 3) return false;
    if (chain.degree(v) == 3) {
      if (center) return false;
      center = v;
    }
  }
  if (!center) return false;
  // Each neighbor of the center starts a leg: neighbor has degree 2, its other
  // neighbor is a leaf.
  for (auto [a, b] : chain.edges()) {
    if (a != *center && b != *center) continue;
    const std::size_t nb = a == *center ? b : a;
    if (chain.degree(nb) != 2) return false;
    for (auto [c, d] : chain.edges()) {
      if (c != nb && d != nb) continue;
      const std::size_t far = c == nb ? d : c;
      if (far != *center && chain.degree(far) != 1) return false;
    }
  }
  return true;
}

/// Entrywise Gram comparison; extra Dynkin and fiber checks for affine E6.
inline EmbeddingReport verify_embedding(const ConfigurationEmbedding& emb, const PlumbingChain& chain) {
  EmbeddingReport r;
  const IntMatrix expected = intersection_matrix(chain);
  if (emb.size() != chain.size()) {
    r.gram_matches = false;
    return r;
  }
  const IntMatrix actual = emb.realized_gram();
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i; j < chain.size(); ++j)
      if (expected(i, j) != actual(i, j)) r.mismatches.push_back({i, j, expected(i, j), actual(i, j)});
  r.gram_matches = r.mismatches.empty();
  if (chain.size() == 7 && chain.edges().size() == 6 && chain.degree(2) == 3) {
    r.dynkin_shape = is_affine_e6_shape(chain);
    if (emb.explicit_classes() && emb.ambient().has_marked("T")) {
      const auto& t = emb.ambient().marked("T");
      bool orth = true;
      for (const auto& c : emb.vertex_classes()) orth = orth && pair(c, t) == 0;
      r.fiber_orthogonal = orth;
      auto kernel = integer_kernel(expected);
      bool combo = false;
      if (kernel.size() == 1) {
        auto m = kernel.front();
        if (m.front() < 0)
          for (auto& x : m) x = -x;
        auto sum = HomologyClass::zero(emb.ambient().lattice());
        for (std::size_t i = 0; i < m.size(); ++i) sum += m[i] * emb.vertex_classes()[i];
        combo = sum == t;
      }
      r.fiber_combination = combo;
    }
  }
  if (emb.explicit_classes() && emb.profile()) {
    bool consistent = emb.profile()->gram == gram_of(emb.vertex_classes());
    for (const auto& [name, v] : emb.profile()->pairings) {
      const auto x = emb.ambient().parse(name);
      for (std::size_t i = 0; i < v.size() && consistent; ++i)
        consistent = pair(x, emb.vertex_classes()[i]) == v[i];
    }
    r.profile_consistent = consistent;
  }
  return r;
}

/// Self-intersection of the restriction of k to C in the relative form:
/// v^T Q^{-1} v with v = (k . u_i)_i. In the dual basis gamma_i the
/// restriction is sum v_i gamma_i.
inline Rational relative_square_of_restriction(const ConfigurationEmbedding& emb, const HomologyClass& k) {
  const auto v = emb.pairing_vector(k);
  const RatMatrix qinv = inverse(emb.realized_gram());
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += Rational(v[i]) * qinv(i, j) * Rational(v[j]);
  return s;
}

/// Candidates whose restriction to C_p has relative square -(p - 1). For such
/// k the blown-down class K satisfies K^2 = k^2 + (p - 1) while
/// 3 sign + 2 e rises by 3(p-1) - 2(p-1) = p - 1, so d is preserved.
inline std::vector<HomologyClass> find_characteristic_lifts(const ConfigurationEmbedding& emb,
                                                            const std::vector<HomologyClass>& candidates,
                                                            std::int64_t p) {
  std::vector<HomologyClass> out;
  const Rational target = -(p - 1);
  for (const auto& k : candidates) {
    if (!is_characteristic(k))
      throw PreconditionError("lift candidate " + k.to_string() + " is not characteristic");
    if (relative_square_of_restriction(emb, k) == target) out.push_back(k);
  }
  return out;
}

/// Characteristic classes sum c_i g_i with |c_i| <= bound, in lexicographic
/// coefficient order.
inline std::vector<HomologyClass> characteristic_box_candidates(const std::vector<HomologyClass>& generators,
                                                                int bound) {
  std::vector<HomologyClass> out;
  if (generators.empty()) return out;
  std::vector<int> c(generators.size(), -bound);
  while (true) {
    auto k = HomologyClass::zero(generators.front().lattice());
    for (std::size_t i = 0; i < c.size(); ++i) k += Integer(c[i]) * generators[i];
    if (is_characteristic(k)) out.push_back(k);
    std::size_t i = c.size();
    while (i-- > 0) {
      if (c[i] < bound) {
        ++c[i];
        break;
      }
      c[i] = -bound;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

/// A positive class orthogonal to the configuration: N (h - sum c_i u_i)
/// with c = Q^{-1} (h . u), scaled to be integral and primitive.
inline HomologyClass projected_chamber_class(const FourManifoldModel& x, const std::vector<HomologyClass>& u) {
  const auto& h = x.marked("h");
  std::vector<Rational> hv;
  for (const auto& ui : u) hv.push_back(Rational(pair(h, ui)));
  const RatMatrix qinv = inverse(gram_of(u));
  const auto c = qinv * hv;
  std::vector<Rational> coords(h.coords().begin(), h.coords().end());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] -= c[i] * Rational(u[i].coords()[j]);
  return HomologyClass(x.lattice(), detail::clear_denominators(coords));
}

/// The lattice of X_(p): the orthogonal complement of the u_i glued to its
/// index-p overlattice complement + p * dual(complement). The discriminant
/// group of the complement is Z/p^2 and p times it is the order-p subgroup of
/// boundary classes that extend over the rational ball.
class BlowdownLattice {
 public:
  BlowdownLattice(const LatticePtr& ambient, const std::vector<HomologyClass>& u, std::int64_t p,
                  const std::string& id, const std::string& prefix = "x")
      : ambient_(ambient), complement_(orthogonal_complement(ambient, u)) {
    const std::size_t m = complement_.rank();
    const RatMatrix ginv = inverse(complement_.gram);
    Integer den = 1;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) den = lcm(den, denominator(Rational(p) * ginv(i, j)));
    std::vector<std::vector<Integer>> gens;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Integer> e(m, Integer(0));
      e[i] = den;
      gens.push_back(e);
      std::vector<Integer> g(m);
      for (std::size_t j = 0; j < m; ++j) g[j] = numerator(Rational(p) * ginv(i, j) * Rational(den));
      gens.push_back(g);
    }
    auto basis = integer_span_basis(gens);
    size_reduce(basis);
    basis_ = RatMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) basis_(i, j) = Rational(basis[i][j]) / Rational(den);
    const RatMatrix g = basis_ * to_rational(complement_.gram) * basis_.transpose();
    IntMatrix gi(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (!is_integral(g(i, j))) throw Error("glued lattice is not integral");
        gi(i, j) = numerator(g(i, j));
      }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back(prefix + std::to_string(i + 1));
    lattice_ = make_lattice(id, std::move(labels), std::move(gi));
    if (!lattice_->unimodular())
      throw Error("glued lattice has determinant " + lattice_->determinant().str() +
                  "; the ambient lattice must be unimodular and the configuration primitive");
    gram_inverse_ = inverse(lattice_->gram());
  }

  const LatticePtr& lattice() const noexcept { return lattice_; }
  const Sublattice& complement() const noexcept { return complement_; }

  /// Image of an ambient class under orthogonal projection, in the glued
  /// basis; nullopt when the projection is not a lattice point.
  std::optional<HomologyClass> descend(const HomologyClass& x) const {
    const std::size_t m = complement_.rank();
    std::vector<Rational> bx(m);
    for (std::size_t j = 0; j < m; ++j) bx[j] = Rational(pair(complement_.basis[j], x));
    const auto w = basis_ * bx;
    const auto c = gram_inverse_ * w;
    std::vector<Integer> coords;
    for (const auto& ci : c) {
      if (!is_integral(ci)) return std::nullopt;
      coords.push_back(numerator(ci));
    }
    return HomologyClass(lattice_, std::move(coords));
  }

 private:
  LatticePtr ambient_;
  Sublattice complement_;
  RatMatrix basis_;  // rows: glued basis in complement coordinates
  LatticePtr lattice_;
  RatMatrix gram_inverse_;
};

struct BlowdownLift {
  HomologyClass lift;        // in the ambient model
  HomologyClass descended;   // in the blown-down model
  Integer chamber_value;     // SW_{X,H}(lift)
};

struct RationalBlowdown {
  FourManifoldModel model;
  std::vector<BlowdownLift> lifts;
  EmbeddingReport embedding;
  Sublattice complement;
};

struct BlowdownOptions {
  std::string name;
  bool simply_connected = true;
  std::string pi1_justification;
};

/// Replaces an explicitly embedded C_p by the rational ball B_p.
/// SW_{X_(p),H}(K) = SW_{X,H}(K~) for lifts K~ found among the basic classes
/// of X, with H orthogonal to every u_i.
inline RationalBlowdown rational_blowdown(const FourManifoldModel& x, const ConfigurationEmbedding& emb,
                                          std::int64_t p, const HomologyClass& period,
                                          const BlowdownOptions& opts) {
  const auto chain = cp_chain(p);
  auto report = verify_embedding(emb, chain);
  if (!report.ok()) throw PreconditionError("rational_blowdown: embedding does not realize " + chain.name());
  if (!emb.explicit_classes())
    throw PreconditionError("rational_blowdown: lattice transfer needs explicit vertex classes");
  const auto& u = emb.vertex_classes();
  for (const auto& ui : u)
    if (pair(period, ui) != 0)
      throw PreconditionError("rational_blowdown: H = " + period.to_string() + " is not orthogonal to " +
                              ui.to_string());
  const Chamber chamber(x, period);

  const BlowdownLattice glued(x.lattice(), u, p, opts.name);
  FourManifoldModel::Data d;
  d.name = opts.name;
  d.lattice = glued.lattice();
  d.euler = x.euler() - (p - 1);
  d.sign = x.sign() + (p - 1);
  d.simply_connected = opts.simply_connected;
  d.pi1_justification = opts.pi1_justification;
  for (const auto& [n, c] : x.marked()) {
    if (std::any_of(u.begin(), u.end(), [&](const HomologyClass& ui) { return pair(c, ui) != 0; })) continue;
    if (auto dc = glued.descend(c)) d.marked.emplace(n, *dc);
  }
  const auto h = glued.descend(period);
  if (!h) throw Error("rational_blowdown: chamber class does not descend");
  d.marked.erase("h");
  d.marked.emplace("h", *h);
  d.marked.insert_or_assign("H", *h);

  std::vector<HomologyClass> basic;
  for (const auto& e : x.sw().entries()) basic.push_back(e.cls);
  const auto lifts = find_characteristic_lifts(emb, basic, p);

  RationalBlowdown out{FourManifoldModel(FourManifoldModel::Data(d)), {}, report, glued.complement()};
  std::vector<SWTable::Entry> entries;
  for (const auto& k : lifts) {
    const auto kd = glued.descend(k);
    if (!kd) throw Error("rational_blowdown: lift " + k.to_string() + " does not descend");
    const Integer value = chamber_sw(x, k, chamber);
    out.lifts.push_back({k, *kd, value});
    if (value != 0) entries.push_back({*kd, value});
  }
  d.sw = SWTable(glued.lattice(), entries, x.sw().convention_note());
  out.model = FourManifoldModel(std::move(d));
  for (const auto& l : out.lifts)
    if (dimension(out.model, l.descended) != dimension(x, l.lift))
      throw Error("rational_blowdown: dimension not preserved for lift " + l.lift.to_string());
  return out;
}

}  // namespace fourcalc
