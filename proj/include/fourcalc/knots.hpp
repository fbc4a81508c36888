#pragma once

// Twist knots, Alexander polynomials, and knot surgery on the elliptic
// surface E(1) at the level of homology and SW data.
//
// The SW rule for fiber sums of E(1): write every Alexander polynomial as a
// polynomial in x = s^2 (s = t^{1/2} - t^{-1/2}), multiply them to get P(x),
// and expand Q = (P(x) - P(0)) / s back in powers of t^{1/2}. The coefficient
// of t^{j/2} is the SW value of the class j T. Dropping P(0)/s discards the
// chamber-dependent part of the b+ = 1 invariant.

#include "fourcalc/fourmanifold.hpp"
#include "fourcalc/laurent.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fourcalc {

inline constexpr const char* kSwConventionNote =
    "signed SW values follow the knot-surgery quotient (P(s^2) - P(0))/s with "
    "s = t^{1/2} - t^{-1/2}; the coefficient of t^{j/2} is assigned to j*T; "
    "blowups use SW(k +- E) = SW(k); only absolute values are meaningful";

struct TwistKnot {
  std::int64_t n = 0;
};

/// n t - (2n - 1) + n t^{-1}.
inline LaurentPolynomial alexander_twist(std::int64_t n) {
  return LaurentPolynomial(
      LaurentPolynomial::Terms{{2, Integer(n)}, {0, -(2 * Integer(n) - 1)}, {-2, Integer(n)}});
}

inline LaurentPolynomial alexander(const TwistKnot& k) { return alexander_twist(k.n); }

/// Rewrites a symmetric Laurent polynomial with p(1) = +-1 as a polynomial in s^2.
inline PolynomialInS2 poly_in_s(const LaurentPolynomial& p) {
  if (!p.symmetric()) throw PreconditionError("poly_in_s: " + p.to_string() + " is not symmetric");
  if (abs(p.at_one()) != 1)
    throw PreconditionError("poly_in_s: " + p.to_string() + " has p(1) = " + p.at_one().str() +
                            ", expected +-1");
  if (p.has_half_integer_exponents())
    throw PreconditionError("poly_in_s: " + p.to_string() + " has half-integer exponents");
  // Peel off the top term c t^k with c x^k; x^k = t^k + ... + t^{-k}.
  LaurentPolynomial rest = p;
  const LaurentPolynomial x = LaurentPolynomial::s() * LaurentPolynomial::s();
  std::vector<Integer> coeffs;
  while (!rest.is_zero()) {
    const auto top = rest.terms().rbegin()->first;
    const Integer c = rest.terms().rbegin()->second;
    const auto k = static_cast<std::size_t>(top / 2);
    if (coeffs.size() <= k) coeffs.resize(k + 1, Integer(0));
    coeffs[k] = c;
    LaurentPolynomial xk = LaurentPolynomial::constant(1);
    for (std::size_t i = 0; i < k; ++i) xk = xk * x;
    rest -= c * xk;
  }
  return PolynomialInS2(std::move(coeffs));
}

/// Q = (P - P(0)) / s as a Laurent polynomial in t^{1/2}, P the product of
/// the inputs written in s^2.
inline LaurentPolynomial e1_surgery_generating(std::span<const LaurentPolynomial> alexanders) {
  PolynomialInS2 product(std::vector<Integer>{1});
  for (const auto& a : alexanders) product = product * poly_in_s(a);
  LaurentPolynomial q;
  for (std::size_t j = 1; j < product.coeffs().size(); ++j)
    q += product.coeffs()[j] * s_power(2 * j - 1);
  return q;
}

/// Coefficient of t^{j/2} keyed by j.
inline std::map<std::int64_t, Integer> e1_knot_surgery_coefficients(
    std::span<const LaurentPolynomial> alexanders) {
  std::map<std::int64_t, Integer> out;
  const LaurentPolynomial q = e1_surgery_generating(alexanders);
  for (const auto& [e, c] : q.terms()) out.emplace(e, c);
  return out;
}

inline std::vector<LaurentPolynomial> alexanders_of(std::span<const TwistKnot> knots) {
  std::vector<LaurentPolynomial> out;
  for (const auto& k : knots) out.push_back(alexander(k));
  return out;
}

/// SW table of the fiber sum of E(1) with S^1 x (knot complements), on the
/// lattice of the fiber class `fiber`.
inline SWTable e1_knot_surgery_sw(std::span<const LaurentPolynomial> alexanders,
                                  const HomologyClass& fiber) {
  std::vector<SWTable::Entry> entries;
  for (const auto& [j, c] : e1_knot_surgery_coefficients(alexanders))
    entries.push_back({Integer(j) * fiber, c});
  return SWTable(fiber.lattice(), entries, kSwConventionNote);
}

inline SWTable e1_knot_surgery_sw(std::span<const TwistKnot> knots, const HomologyClass& fiber) {
  const auto a = alexanders_of(knots);
  return e1_knot_surgery_sw(std::span<const LaurentPolynomial>(a), fiber);
}

/// Basis labels of E(1) = CP^2 # 9 CP^2-bar.
inline std::vector<std::string> e1_labels() {
  std::vector<std::string> labels{"eta"};
  for (int i = 1; i <= 9; ++i) labels.push_back("eps" + std::to_string(i));
  return labels;
}

/// E(1) with marked fiber T = 3 eta - sum eps_i, line class h = eta, and the
/// section S = eps9.
inline FourManifoldModel e1_model() {
  std::vector<Integer> squares{1};
  for (int i = 0; i < 9; ++i) squares.push_back(-1);
  auto lattice = diagonal_lattice("E(1)", e1_labels(), squares);
  FourManifoldModel::Data d;
  d.name = "E(1)";
  d.lattice = lattice;
  d.euler = 12;
  d.sign = -8;
  d.simply_connected = true;
  d.pi1_justification = "E(1) = CP^2 # 9 CP^2-bar";
  auto fiber = HomologyClass::basis(lattice, "eta");
  fiber = 3 * fiber;
  for (int i = 1; i <= 9; ++i) fiber -= HomologyClass::basis(lattice, "eps" + std::to_string(i));
  d.marked.emplace("T", fiber);
  d.marked.emplace("F", fiber);
  d.marked.emplace("h", HomologyClass::basis(lattice, "eta"));
  d.marked.emplace("S", HomologyClass::basis(lattice, "eps9"));
  d.sw = SWTable(lattice, {}, kSwConventionNote);
  d.fiber_history = FiberSurgeryHistory{};
  return FourManifoldModel(std::move(d));
}

/// Knot surgery along the square-zero fiber class. Lattice, e and sign are
/// unchanged; the SW table follows the E(1) fiber-sum rule.
inline FourManifoldModel knot_surgery_manifold(const FourManifoldModel& x, const HomologyClass& fiber,
                                               std::span<const LaurentPolynomial> alexanders,
                                               std::string new_name = {}) {
  if (square(fiber) != 0)
    throw PreconditionError("knot surgery: fiber " + fiber.to_string() + " has square " +
                            square(fiber).str() + ", expected 0");
  if (!x.has_marked("T") || !(x.marked("T") == fiber))
    throw PreconditionError("knot surgery: fiber must be the marked class T");
  if (!x.fiber_history())
    throw PreconditionError("knot surgery: SW rule is implemented for fiber sums of E(1) only");
  FourManifoldModel::Data d = x.data();
  auto history = *x.fiber_history();
  for (const auto& a : alexanders) {
    poly_in_s(a);  // validates normalization
    history.alexander.push_back(a);
  }
  d.name = new_name.empty() ? x.name() + "_K" : std::move(new_name);
  d.sw = e1_knot_surgery_sw(std::span<const LaurentPolynomial>(history.alexander), fiber);
  d.fiber_history = std::move(history);
  d.pi1_justification = x.pi1_justification() +
                        "; knot surgery along T preserves pi1 = 1 when X and X - T are simply connected";
  return FourManifoldModel(std::move(d));
}

inline FourManifoldModel knot_surgery_manifold(const FourManifoldModel& x, const HomologyClass& fiber,
                                               const TwistKnot& k, std::string new_name = {}) {
  const LaurentPolynomial a = alexander(k);
  return knot_surgery_manifold(x, fiber, std::span<const LaurentPolynomial>(&a, 1), std::move(new_name));
}

inline FourManifoldModel knot_surgery_manifold(const FourManifoldModel& x, const HomologyClass& fiber,
                                               std::span<const TwistKnot> knots, std::string new_name = {}) {
  const auto a = alexanders_of(knots);
  return knot_surgery_manifold(x, fiber, std::span<const LaurentPolynomial>(a), std::move(new_name));
}

}  // namespace fourcalc
