#pragma once

// Closed 4-manifold models at the level of homology: a lattice, (e, sign),
// marked classes and a table of Seiberg-Witten values, together with the
// formal rules that act on them (dimension formula, wall crossing for
// b+ = 1, blowup formula, and the blowup-pair minimality test).

#include "fourcalc/laurent.hpp"
#include "fourcalc/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fourcalc {

/// Finite map from characteristic classes to nonzero integers.
/// Closed under k -> -k with |value| preserved.
class SWTable {
 public:
  struct Entry {
    HomologyClass cls;
    Integer value;
  };

  SWTable() = default;
  SWTable(LatticePtr lattice, const std::vector<Entry>& entries, std::string convention_note)
      : lattice_(std::move(lattice)), note_(std::move(convention_note)) {
    for (const auto& e : entries) {
      if (!same_lattice(e.cls.lattice(), lattice_))
        throw StructuralError("SW table entry lives in another lattice");
      if (e.value == 0) continue;
      if (!is_characteristic(e.cls))
        throw PreconditionError("SW table entry " + e.cls.to_string() + " is not characteristic");
      auto [it, inserted] = values_.emplace(e.cls.coords(), e.value);
      if (!inserted) throw StructuralError("duplicate SW table entry " + e.cls.to_string());
    }
    for (const auto& [coords, value] : values_) {
      std::vector<Integer> neg = coords;
      for (auto& x : neg) x = -x;
      auto it = values_.find(neg);
      if (it == values_.end() || abs(it->second) != abs(value))
        throw PreconditionError("SW table is not closed under negation at " +
                                HomologyClass(lattice_, coords).to_string());
    }
  }

  const LatticePtr& lattice() const noexcept { return lattice_; }
  const std::string& convention_note() const noexcept { return note_; }
  bool empty() const noexcept { return values_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }

  Integer value(const HomologyClass& k) const {
    if (values_.empty()) return 0;
    if (!same_lattice(k.lattice(), lattice_)) throw StructuralError("SW lookup in another lattice");
    auto it = values_.find(k.coords());
    return it == values_.end() ? Integer(0) : it->second;
  }
  bool contains(const HomologyClass& k) const { return value(k) != 0; }

  /// Entries in coordinate order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(values_.size());
    for (const auto& [coords, value] : values_) out.push_back({HomologyClass(lattice_, coords), value});
    return out;
  }

  /// Sorted absolute values, one per entry.
  std::vector<Integer> magnitudes() const {
    std::vector<Integer> out;
    for (const auto& [coords, value] : values_) out.push_back(abs(value));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  LatticePtr lattice_;
  std::string note_;
  std::map<std::vector<Integer>, Integer> values_;
};

/// Record of knot surgeries along parallel copies of the elliptic fiber of
/// E(1); present exactly on E(1) and its fiber-sum descendants.
struct FiberSurgeryHistory {
  std::vector<LaurentPolynomial> alexander;
};

class FourManifoldModel {
 public:
  struct Data {
    std::string name;
    LatticePtr lattice;
    std::int64_t euler = 0;
    std::int64_t sign = 0;
    bool simply_connected = false;
    std::string pi1_justification;
    std::map<std::string, HomologyClass> marked;
    SWTable sw;
    std::optional<FiberSurgeryHistory> fiber_history;
  };

  explicit FourManifoldModel(Data data) : d_(std::move(data)) { validate(); }

  const std::string& name() const noexcept { return d_.name; }
  const LatticePtr& lattice() const noexcept { return d_.lattice; }
  std::int64_t euler() const noexcept { return d_.euler; }
  std::int64_t sign() const noexcept { return d_.sign; }
  bool simply_connected() const noexcept { return d_.simply_connected; }
  const std::string& pi1_justification() const noexcept { return d_.pi1_justification; }
  const std::map<std::string, HomologyClass>& marked() const noexcept { return d_.marked; }
  const SWTable& sw() const noexcept { return d_.sw; }
  const std::optional<FiberSurgeryHistory>& fiber_history() const noexcept { return d_.fiber_history; }
  const Signature& betti() const noexcept { return betti_; }
  const Data& data() const noexcept { return d_; }

  bool has_marked(const std::string& name) const { return d_.marked.count(name) != 0; }
  const HomologyClass& marked(const std::string& name) const {
    auto it = d_.marked.find(name);
    if (it == d_.marked.end())
      throw StructuralError("model '" + d_.name + "' has no marked class '" + name + "'");
    return it->second;
  }

  /// Parses a class expression over marked names and basis labels.
  HomologyClass parse(std::string_view expr) const {
    return parse_class(d_.lattice, expr, [this](const std::string& n) -> std::optional<HomologyClass> {
      auto it = d_.marked.find(n);
      if (it == d_.marked.end()) return std::nullopt;
      return it->second;
    });
  }

 private:
  void validate();

  Data d_;
  Signature betti_;
};

/// d(k) = (k^2 - (3 sign + 2 e)) / 4 for characteristic k.
inline Integer dimension(const FourManifoldModel& x, const HomologyClass& k) {
  if (!is_characteristic(k))
    throw PreconditionError("dimension: " + k.to_string() + " is not characteristic");
  const Integer num = square(k) - 3 * Integer(x.sign()) - 2 * Integer(x.euler());
  if (num % 4 != 0)
    throw Error("internal invariant violated: 4 d(" + k.to_string() + ") = " + num.str() +
                " is not divisible by 4 in model '" + x.name() + "'");
  return num / 4;
}

inline void FourManifoldModel::validate() {
  if (!d_.lattice) throw StructuralError("model '" + d_.name + "' has no lattice");
  betti_ = signature_and_betti(*d_.lattice);
  const auto sigma = static_cast<std::int64_t>(betti_.b_plus) - static_cast<std::int64_t>(betti_.b_minus);
  if (sigma != d_.sign)
    throw PreconditionError("model '" + d_.name + "': sign " + std::to_string(d_.sign) +
                            " disagrees with lattice signature " + std::to_string(sigma));
  if (d_.simply_connected && d_.euler != 2 + static_cast<std::int64_t>(d_.lattice->rank()))
    throw PreconditionError("model '" + d_.name + "': euler " + std::to_string(d_.euler) +
                            " != 2 + rank for a simply connected model");
  for (const auto& [n, c] : d_.marked)
    if (!same_lattice(c.lattice(), d_.lattice))
      throw StructuralError("model '" + d_.name + "': marked class '" + n + "' lives in another lattice");
  if (d_.sw.lattice() && !same_lattice(d_.sw.lattice(), d_.lattice))
    throw StructuralError("model '" + d_.name + "': SW table lives in another lattice");
  for (const auto& e : d_.sw.entries()) {
    const Integer dim = dimension(*this, e.cls);
    if (dim < 0 || dim % 2 != 0)
      throw PreconditionError("model '" + d_.name + "': basic class " + e.cls.to_string() +
                              " has dimension " + dim.str());
  }
}

/// SW_{X,H''}(k) - SW_{X,H'}(k) = (-1)^{1 + d(k)/2} when k.H' < 0 < k.H''.
inline Integer wall_crossing_delta(const FourManifoldModel& x, const HomologyClass& k) {
  const Integer d = dimension(x, k);
  if (d < 0 || d % 2 != 0)
    throw PreconditionError("wall_crossing_delta: d(" + k.to_string() + ") = " + d.str() +
                            " must be even and nonnegative");
  return (d / 2) % 2 == 0 ? Integer(-1) : Integer(1);
}

/// A period class H with H^2 > 0 in the forward cone of the model's "h".
class Chamber {
 public:
  Chamber(const FourManifoldModel& x, HomologyClass period) : period_(std::move(period)) {
    if (!same_lattice(period_.lattice(), x.lattice()))
      throw StructuralError("chamber class lives in another lattice");
    if (square(period_) <= 0)
      throw PreconditionError("chamber class " + period_.to_string() + " has nonpositive square");
    if (pair(period_, x.marked("h")) <= 0)
      throw PreconditionError("chamber class " + period_.to_string() + " is not in the forward cone of h");
  }
  const HomologyClass& period_class() const noexcept { return period_; }

 private:
  HomologyClass period_;
};

/// SW_{X,H}(k), from the table (which holds SW_{X,h}) and the wall-crossing
/// formula. The jump is added when moving from the h side of the wall k^perp
/// to the H side. Classes with d(k) < 0 have SW = 0 in every chamber.
inline Integer chamber_sw(const FourManifoldModel& x, const HomologyClass& k, const Chamber& chamber) {
  if (x.betti().b_plus != 1) throw PreconditionError("chamber_sw: model must have b+ = 1");
  if (!is_characteristic(k)) throw PreconditionError("chamber_sw: " + k.to_string() + " is not characteristic");
  const Integer hk = pair(x.marked("h"), k);
  const Integer big_hk = pair(chamber.period_class(), k);
  if (big_hk == 0) throw PreconditionError("chamber_sw: H lies on the wall of " + k.to_string());
  if (hk == 0) throw PreconditionError("chamber_sw: h lies on the wall of " + k.to_string());
  if (dimension(x, k) < 0) return 0;
  const Integer base = x.sw().value(k);
  if (sign(hk) == sign(big_hk)) return base;
  const Integer jump = wall_crossing_delta(x, k);
  return hk < 0 ? base + jump : base - jump;
}

/// Whether SW is chamber independent: b+ > 1, or b+ = 1 with b- <= 9.
inline bool has_well_defined_sw(const FourManifoldModel& x) {
  return x.betti().b_plus > 1 || x.betti().b_minus <= 9;
}

/// X # CP^2-bar with new exceptional class `label`; SW(k +- E) = SW(k).
inline FourManifoldModel blowup(const FourManifoldModel& x, const std::string& label,
                                std::string new_name = {}) {
  if (new_name.empty()) new_name = x.name() + "#CP2bar";
  auto lattice = extend_lattice(*x.lattice(), new_name, label, -1);
  FourManifoldModel::Data d;
  d.name = new_name;
  d.lattice = lattice;
  d.euler = x.euler() + 1;
  d.sign = x.sign() - 1;
  d.simply_connected = x.simply_connected();
  d.pi1_justification = x.pi1_justification();
  for (const auto& [n, c] : x.marked()) d.marked.emplace(n, transport(c, lattice));
  const auto e = HomologyClass::basis(lattice, label);
  d.marked.emplace(label, e);
  // Provisional model to evaluate d(.) for pruning.
  FourManifoldModel::Data probe = d;
  const FourManifoldModel shell(std::move(probe));
  std::vector<SWTable::Entry> entries;
  for (const auto& entry : x.sw().entries()) {
    const auto k = transport(entry.cls, lattice);
    for (const auto& cand : {k + e, k - e})
      if (dimension(shell, cand) >= 0) entries.push_back({cand, entry.value});
  }
  d.sw = SWTable(lattice, entries, x.sw().convention_note());
  return FourManifoldModel(std::move(d));
}

enum class MinimalityVerdictKind { minimal_certified, blowup_pair_found, inconclusive };

inline const char* to_string(MinimalityVerdictKind k) {
  switch (k) {
    case MinimalityVerdictKind::minimal_certified: return "minimal_certified";
    case MinimalityVerdictKind::blowup_pair_found: return "blowup_pair_found";
    case MinimalityVerdictKind::inconclusive: return "inconclusive";
  }
  return "?";
}

struct MinimalityVerdict {
  MinimalityVerdictKind kind = MinimalityVerdictKind::inconclusive;
  /// For blowup_pair_found: a witness pair (k1, k2), with (k1 - k2)^2 = -4.
  std::optional<std::pair<HomologyClass, HomologyClass>> witness;
  Integer e_square = 0;
};

/// Blowup-pair obstruction. If X = X' # CP^2-bar, basic classes come in pairs
/// k +- E with equal SW, so (k1 - k2)^2 = (2E)^2 = -4. Only classes with
/// |SW| >= 2 are examined.
inline MinimalityVerdict minimality_check(const FourManifoldModel& x) {
  std::vector<SWTable::Entry> high;
  for (const auto& e : x.sw().entries())
    if (abs(e.value) >= 2) high.push_back(e);
  MinimalityVerdict out;
  if (high.empty()) return out;
  std::size_t paired = 0;
  for (std::size_t i = 0; i < high.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < high.size(); ++j) {
      if (i == j || abs(high[i].value) != abs(high[j].value)) continue;
      if (square(high[i].cls - high[j].cls) == -4) {
        found = true;
        if (!out.witness) out.witness = std::make_pair(high[i].cls, high[j].cls);
        break;
      }
    }
    if (found) ++paired;
  }
  if (paired == 0) {
    out.kind = MinimalityVerdictKind::minimal_certified;
  } else if (paired == high.size()) {
    out.kind = MinimalityVerdictKind::blowup_pair_found;
    out.e_square = -4;
  } else {
    out.kind = MinimalityVerdictKind::inconclusive;
  }
  return out;
}

struct Fingerprint {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  bool odd = true;
  bool simply_connected = false;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  std::string to_string() const {
    return "(" + std::to_string(b_plus) + ", " + std::to_string(b_minus) + ", " +
           (odd ? "odd" : "even") + ", " + (simply_connected ? "simply connected" : "pi1 unknown") + ")";
  }
};

inline Fingerprint fingerprint(const FourManifoldModel& x) {
  return {x.betti().b_plus, x.betti().b_minus, !x.lattice()->even(), x.simply_connected()};
}

/// Distinct SW magnitude multisets rule out a diffeomorphism.
enum class DiffeomorphismVerdict { not_diffeomorphic, undetermined };

inline DiffeomorphismVerdict compare_sw(const FourManifoldModel& a, const FourManifoldModel& b) {
  return a.sw().magnitudes() != b.sw().magnitudes() ? DiffeomorphismVerdict::not_diffeomorphic
                                                    : DiffeomorphismVerdict::undetermined;
}

}  // namespace fourcalc
