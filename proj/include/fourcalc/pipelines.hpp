#pragma once

// End-to-end constructions: X_n (C_7 blowdown in E(1)_{T(n)} # 3 CP^2-bar),
// the C_5 and C_3 variants with b- = 7 and 8, and Q_n (C_7 blowdown in a
// double knot surgery with an I_6 fiber, blown up twice). Each builder
// returns the model together with a report of the intermediate checks.

#include "fourcalc/fourmanifold.hpp"
#include "fourcalc/knots.hpp"
#include "fourcalc/lattice.hpp"
#include "fourcalc/monodromy.hpp"
#include "fourcalc/plumbing.hpp"
#include "fourcalc/report.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fourcalc {

struct FamilyResult {
  FourManifoldModel model;
  VerificationReport report;
  std::vector<BlowdownLift> lifts;
};

namespace pipeline_detail {

inline std::string join(const std::vector<std::string>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "]";
}

inline std::string show(const std::vector<Integer>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.str());
  return join(s);
}

inline std::string show_set(const std::vector<HomologyClass>& v) {
  std::set<std::string> s;
  for (const auto& x : v) s.insert(x.to_string());
  return join({s.begin(), s.end()});
}

inline std::vector<Integer> repeated(const Integer& x, std::size_t k) { return std::vector<Integer>(k, x); }

inline void require_n(std::int64_t n, const char* who) {
  if (n < 1) throw PreconditionError(std::string(who) + ": n must be >= 1, got " + std::to_string(n));
}

/// b+ = 1, odd, simply connected, with the given b-.
inline void check_fingerprint(VerificationReport& r, const std::string& id, const FourManifoldModel& x,
                              std::size_t b_minus, Provenance prov) {
  const Fingerprint expected{1, b_minus, true, true};
  r.expect_eq(id, "fingerprint (b+, b-, parity, pi1) of " + x.name(), expected.to_string(),
              fingerprint(x).to_string(), prov, "fingerprint");
}

inline void check_lifts(VerificationReport& r, const std::string& id, const std::string& what,
                        const std::vector<HomologyClass>& lifts, const HomologyClass& expected, Provenance prov) {
  r.add(id, what, show_set({expected, -expected}), show_set(lifts), prov, "characteristic lift");
}

/// The blown-down model with the image of `lift` marked as K0.
inline FourManifoldModel mark_descended(const RationalBlowdown& b, const HomologyClass& lift) {
  auto d = b.model.data();
  for (const auto& l : b.lifts)
    if (l.lift == lift) d.marked.insert_or_assign("K0", l.descended);
  return FourManifoldModel(std::move(d));
}

inline void check_blowdown_dims(VerificationReport& r, const std::string& id, const RationalBlowdown& b) {
  bool ok = !b.lifts.empty();
  for (const auto& l : b.lifts) ok = ok && dimension(b.model, l.descended) == 0;
  r.expect_true(id, "every descended basic class has d = 0", ok, Provenance::derived);
}

}  // namespace pipeline_detail

/// E(1) after knot surgery along the fiber with T(n).
inline FourManifoldModel y_model(std::int64_t n) {
  pipeline_detail::require_n(n, "y_model");
  const auto e1 = e1_model();
  return knot_surgery_manifold(e1, e1.marked("T"), TwistKnot{n}, "Y_" + std::to_string(n));
}

/// Y_n blown up at `count` points, with exceptional classes E0, E1, ...
inline FourManifoldModel blown_up(const FourManifoldModel& y, int count, const std::string& name) {
  FourManifoldModel x = y;
  for (int i = 0; i < count; ++i)
    x = blowup(x, "E" + std::to_string(i), i + 1 == count ? name : x.name() + "#E" + std::to_string(i));
  return x;
}

inline FourManifoldModel z_model(std::int64_t n) { return blown_up(y_model(n), 3, "Z_" + std::to_string(n)); }

/// The seven -2 spheres of the affine E6 fiber of E(1), in e6_tree() order.
inline std::vector<HomologyClass> e6_classes(const FourManifoldModel& x) {
  std::vector<HomologyClass> out;
  for (const char* e : {"eps4 - eps7", "eps1 - eps4", "eta - eps1 - eps2 - eps3", "eps2 - eps5", "eps5 - eps9",
                        "eps3 - eps6", "eps6 - eps8"})
    out.push_back(x.parse(e));
  return out;
}

/// u_0 = S + 2T - 2(E0 + E1 + E2) followed by the E6 arm S5, S4, S3, S2, S1.
inline std::vector<HomologyClass> xn_configuration(const FourManifoldModel& z) {
  const auto s = e6_classes(z);
  return {z.parse("S + 2T - 2(E0 + E1 + E2)"), s[4], s[3], s[2], s[1], s[0]};
}

/// The chamber class 7h - 2 sum e_i - e_3 - E0 - E1 - E2 of Z_n.
inline HomologyClass xn_chamber_class(const FourManifoldModel& z) {
  return z.parse("7h - 2(eps1 + eps2 + eps3 + eps4 + eps5 + eps6 + eps7 + eps8 + eps9) - eps3 - E0 - E1 - E2");
}

/// All classes sum s_i g_i with s_i = +-1.
inline std::vector<HomologyClass> sign_combinations(const std::vector<HomologyClass>& g) {
  std::vector<HomologyClass> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
    auto k = HomologyClass::zero(g.front().lattice());
    for (std::size_t i = 0; i < g.size(); ++i) k += (mask >> i & 1) ? -g[i] : g[i];
    out.push_back(k);
  }
  return out;
}

inline FamilyResult build_Xn(std::int64_t n) {
  using namespace pipeline_detail;
  require_n(n, "build_Xn");
  const std::string tag = "xn[" + std::to_string(n) + "]";
  const Integer nn = n;
  VerificationReport r("X_" + std::to_string(n));

  const auto y = y_model(n);
  r.add(tag + ".y.sw", "|SW_Y(+-T)| after knot surgery with T(n)", show(repeated(nn, 2)), show(y.sw().magnitudes()),
        Provenance::reported, "SW of Y_n");
  r.expect_eq(tag + ".y.h", "h^2 and h.T in Y_n", std::string("1, 3"),
              square(y.marked("h")).str() + ", " + pair(y.marked("h"), y.marked("T")).str(), Provenance::reported,
              "genus 3 class h");

  const auto z = z_model(n);
  const auto t = z.marked("T");
  const auto e0 = z.marked("E0"), e1 = z.marked("E1"), e2 = z.marked("E2");
  const auto sixteen = sign_combinations({t, e0, e1, e2});
  bool all_n = true;
  for (const auto& k : sixteen) all_n = all_n && abs(z.sw().value(k)) == nn;
  r.expect_true(tag + ".z.sw", "|SW_Z(+-T+-E0+-E1+-E2)| = n on all 16 classes and nothing else",
                all_n && z.sw().size() == 16, Provenance::reported, "SW of Z_n");

  const auto u = xn_configuration(z);
  r.expect_eq(tag + ".u0.square", "u0 = S + 2T - 2(E0+E1+E2) has square -9", Integer(-9), square(u[0]),
              Provenance::reported, "u0");
  const auto e6 = e6_classes(z);
  const auto e6_report = verify_embedding(ConfigurationEmbedding(z, e6), e6_tree());
  r.expect_true(tag + ".e6", "E6 classes realize the affine E6 tree and sum to T", e6_report.ok(),
                Provenance::derived);
  const ConfigurationEmbedding emb(z, u);
  r.expect_true(tag + ".c7", "u0..u5 realize C_7", verify_embedding(emb, cp_chain(7)).ok(), Provenance::derived);

  const auto big_h = xn_chamber_class(z);
  const auto& h = z.marked("h");
  const auto lift = t + e0 + e1 + e2;
  std::vector<Integer> hu;
  for (const auto& ui : u) hu.push_back(pair(big_h, ui));
  r.expect_eq(tag + ".H", "H.h, H^2", std::string("7, 5"), pair(big_h, h).str() + ", " + square(big_h).str(),
              Provenance::reported, "chamber class H");
  r.add(tag + ".H.u", "H.u_i for i = 0..5", show(repeated(0, 6)), show(hu), Provenance::reported,
        "chamber class H");
  r.expect_eq(tag + ".H.L", "H.L and h.L for L = T+E0+E1+E2", std::string("5, 3"),
              pair(big_h, lift).str() + ", " + pair(h, lift).str(), Provenance::reported, "chamber class H");
  r.expect_eq(tag + ".L.d", "d(T+E0+E1+E2) in Z_n", Integer(0), dimension(z, lift), Provenance::reported,
              "dimension formula");
  r.add(tag + ".L.restriction", "restriction of L to C_7 in the dual basis", "[7, 0, 0, 0, 0, 0]",
        show(emb.pairing_vector(lift)), Provenance::reported, "7 gamma_0");
  r.expect_eq(tag + ".L.relsq", "relative square of L", std::string("-6"),
              to_string(relative_square_of_restriction(emb, lift)), Provenance::reported, "relative square");
  check_lifts(r, tag + ".lifts", "lifts among the 16 classes", find_characteristic_lifts(emb, sixteen, 7), lift,
              Provenance::reported);

  auto comp = orthogonal_complement(z.lattice(), u);
  const auto cs = signature_and_betti(*comp.as_lattice("complement", "c", false));
  r.expect_eq(tag + ".complement", "rank and (b+, b-) of the complement of C_7", std::string("7 (1, 6)"),
              std::to_string(comp.rank()) + " (" + std::to_string(cs.b_plus) + ", " + std::to_string(cs.b_minus) + ")",
              Provenance::reported, "b+ and b- of X_n");

  BlowdownOptions opts{"X_" + std::to_string(n), true, "asserted: the complement of C_7 carries the pi1 data (input flag)"};
  auto bd = rational_blowdown(z, emb, 7, big_h, opts);
  const auto& x = bd.model;
  r.add(tag + ".euler_sign", "(e, sign) after blowdown", "(9, -5)",
        "(" + std::to_string(x.euler()) + ", " + std::to_string(x.sign()) + ")", Provenance::derived);
  check_fingerprint(r, tag + ".fingerprint", x, 6, Provenance::reported);
  const auto k0 = bd.lifts.empty() ? HomologyClass::zero(x.lattice()) : bd.lifts.front().descended;
  r.expect_eq(tag + ".K0.square", "K0^2", Integer(3), square(k0), Provenance::reported, "K0^2 = 3");
  r.expect_eq(tag + ".K0.d", "d(K0) in X_n", Integer(0), dimension(x, k0), Provenance::reported, "d(K0) = 0");
  r.add(tag + ".sw", "|SW_X(+-K0)|", show(repeated(nn, 2)), show(x.sw().magnitudes()), Provenance::reported,
        "SW of X_n");
  check_blowdown_dims(r, tag + ".dims", bd);
  const auto verdict = minimality_check(x);
  const auto expected_verdict = n >= 2 ? MinimalityVerdictKind::minimal_certified : MinimalityVerdictKind::inconclusive;
  r.add(tag + ".minimal", "blowup-pair minimality test", to_string(expected_verdict), to_string(verdict.kind),
        Provenance::reported, "minimality");
  auto d = bd.model.data();
  d.marked.emplace("K0", k0);
  return {FourManifoldModel(std::move(d)), std::move(r), std::move(bd.lifts)};
}

/// Shared tail of the C_5 and C_3 variants.
inline FamilyResult build_variant(std::int64_t n, int blowups, std::int64_t p, const std::vector<std::string>& u_expr,
                                  std::size_t expected_b_minus, const std::string& family) {
  using namespace pipeline_detail;
  const std::string tag = family + "[" + std::to_string(n) + "]";
  const Integer nn = n;
  VerificationReport r(family + "_" + std::to_string(n));
  const auto w = blown_up(y_model(n), blowups, "Y_" + std::to_string(n) + "#" + std::to_string(blowups) + "CP2bar");
  std::vector<HomologyClass> u;
  for (const auto& e : u_expr) u.push_back(w.parse(e));
  r.expect_eq(tag + ".u0.square", "square of u0 = " + u_expr.front(), Integer(-(p + 2)), square(u[0]),
              Provenance::derived, "u0");
  const ConfigurationEmbedding emb(w, u);
  r.expect_true(tag + ".cp", "configuration realizes C_" + std::to_string(p), verify_embedding(emb, cp_chain(p)).ok(),
                Provenance::derived);

  std::vector<HomologyClass> gens{w.marked("T")};
  for (int i = 0; i < blowups; ++i) gens.push_back(w.marked("E" + std::to_string(i)));
  HomologyClass lift = gens.front();
  for (std::size_t i = 1; i < gens.size(); ++i) lift += gens[i];
  const auto candidates = sign_combinations(gens);
  r.expect_eq(tag + ".L.relsq", "relative square of " + lift.to_string(), to_string(Rational(-(p - 1))),
              to_string(relative_square_of_restriction(emb, lift)), Provenance::derived, "relative square");
  check_lifts(r, tag + ".lifts", "lifts among the basic classes of the blown-up model",
              find_characteristic_lifts(emb, candidates, p), lift, Provenance::derived);

  const auto big_h = projected_chamber_class(w, u);
  BlowdownOptions opts{family + "_" + std::to_string(n), true, "asserted input flag"};
  auto bd = rational_blowdown(w, emb, p, big_h, opts);
  r.expect_true(tag + ".chamber", "projected chamber class agrees with h on the lifts",
                pair(big_h, lift) * pair(w.marked("h"), lift) > 0, Provenance::derived);
  check_fingerprint(r, tag + ".fingerprint", bd.model, expected_b_minus, Provenance::derived);
  r.add(tag + ".sw", "SW magnitudes of the blown-down model", show(repeated(nn, 2)), show(bd.model.sw().magnitudes()),
        Provenance::derived, "SW of the C_" + std::to_string(p) + " variant");
  check_blowdown_dims(r, tag + ".dims", bd);
  r.note("the candidate basic classes and chamber class of the C_5 and C_3 variants are computed, not quoted");
  return {mark_descended(bd, lift), std::move(r), std::move(bd.lifts)};
}

/// Y_n # 2 CP^2-bar with u0 = S + T - 2(E0 + E1) and three E6 spheres; blows down C_5.
inline FamilyResult build_b7_family(std::int64_t n) {
  pipeline_detail::require_n(n, "build_b7_family");
  return build_variant(n, 2, 5, {"S + T - 2(E0 + E1)", "eps5 - eps9", "eps2 - eps5", "eta - eps1 - eps2 - eps3"}, 7,
                       "b7");
}

/// Y_n # CP^2-bar with u0 = S - 2 E0 and one E6 sphere; blows down C_3.
inline FamilyResult build_b8_family(std::int64_t n) {
  pipeline_detail::require_n(n, "build_b8_family");
  auto r = build_variant(n, 1, 3, {"S - 2E0", "eps5 - eps9"}, 8, "b8");
  r.report.note("b8 family: b+ = 1 and b- = 8; a stated 'b+ = 8' for this family is read as b- = 8");
  return r;
}

/// Monodromy of E(1) with an I_6 fiber: a^6 followed by six nodal twists.
inline constexpr const char* kI6Factorization = "a^6(A^3ba^3)(baB)^2b^2(Bab)";
/// Monodromy of E(1) with an affine E6 fiber (ab)^4 and four nodal twists.
inline constexpr const char* kE6Factorization = "(ab)^4a^2(Aba)b";

/// I_6 components of W_n; A5 = 2eta - eps1 - eps2 - eps3 - eps4 - eps7 - eps8
/// closes the cycle and is the component removed.
inline std::vector<HomologyClass> i6_chain_classes(const FourManifoldModel& w) {
  std::vector<HomologyClass> out;
  for (const char* e : {"eta - eps1 - eps6 - eps9", "eps1 - eps2", "eps2 - eps3", "eps3 - eps4", "eps4 - eps5"})
    out.push_back(w.parse(e));
  return out;
}

/// Pairings of T, E0, E1 with u0 followed by the five I_6 components.
inline IntersectionProfile qn_profile() {
  IntersectionProfile p;
  p.gram = intersection_matrix(cp_chain(7));
  std::vector<Integer> t{1, 0, 0, 0, 0, 0}, e{2, 0, 0, 0, 0, 0};
  p.pairings = {{"T", t}, {"E0", e}, {"E1", e}};
  return p;
}

inline FamilyResult build_Qn(std::int64_t n) {
  using namespace pipeline_detail;
  require_n(n, "build_Qn");
  const std::string tag = "qn[" + std::to_string(n) + "]";
  const Integer nn = n;
  VerificationReport r("Q_" + std::to_string(n));

  const auto report = verify_factorization(parse_word(kI6Factorization));
  r.expect_true(tag + ".monodromy", "I_6 factorization evaluates to the identity", report.equal, Provenance::reported,
                "monodromy factorization");
  std::int64_t nodal = 0;
  bool i6 = false;
  for (const auto& f : report.factors) {
    if (f.fiber_multiplicity && *f.fiber_multiplicity == 6 && f.exponent == 6) i6 = true;
    else nodal += f.nodal_count;
  }
  r.expect_true(tag + ".fibers", "factorization has one I_6 fiber and six nodal fibers", i6 && nodal == 6,
                Provenance::derived);

  const auto e1 = e1_model();
  const std::array<TwistKnot, 2> knots{TwistKnot{1}, TwistKnot{n}};
  const auto v = knot_surgery_manifold(e1, e1.marked("T"), std::span<const TwistKnot>(knots), "V_" + std::to_string(n));
  const auto t_v = v.marked("T");
  r.add(tag + ".v.sw", "|SW_V(+-3T)|, |SW_V(+-T)|", show({nn, 2 * nn - 1}),
        show({abs(v.sw().value(3 * t_v)), abs(v.sw().value(t_v))}), Provenance::reported, "SW of V_n");

  const auto w = blown_up(v, 2, "W_" + std::to_string(n));
  const auto t = w.marked("T");
  const auto e0 = w.marked("E0"), e1c = w.marked("E1");
  std::vector<HomologyClass> u{w.parse("S - 2E0 - 2E1")};
  for (const auto& c : i6_chain_classes(w)) u.push_back(c);
  r.expect_eq(tag + ".u0.square", "u0 = S - 2E0 - 2E1 has square -9", Integer(-9), square(u[0]),
              Provenance::reported, "u0");
  const auto a5 = w.parse("2eta - eps1 - eps2 - eps3 - eps4 - eps7 - eps8");
  auto cycle = HomologyClass::zero(w.lattice());
  for (std::size_t i = 1; i < u.size(); ++i) cycle += u[i];
  cycle += a5;
  r.expect_true(tag + ".i6", "I_6 components: square -2, hexagon, sum T, only A0 meets S",
                square(a5) == -2 && cycle == t && pair(a5, u[1]) == 1 && pair(a5, u[5]) == 1 &&
                    pair(w.marked("S"), a5) == 0,
                Provenance::derived);

  const ConfigurationEmbedding profiled(w, qn_profile());
  const ConfigurationEmbedding emb(w, u, qn_profile());
  const auto emb_report = verify_embedding(emb, cp_chain(7));
  r.expect_true(tag + ".c7", "explicit classes realize C_7 and agree with the profile", emb_report.ok(),
                Provenance::derived);

  const auto lift = 3 * t + e0 + e1c;
  std::vector<HomologyClass> candidates = sign_combinations({3 * t, e0, e1c});
  for (const auto& k : sign_combinations({t, e0, e1c})) candidates.push_back(k);
  r.expect_eq(tag + ".L.relsq", "relative square of 3T+E0+E1 from the profile", std::string("-6"),
              to_string(relative_square_of_restriction(profiled, lift)), Provenance::derived, "relative square");
  check_lifts(r, tag + ".lifts", "lifts among +-3T+-E0+-E1 and +-T+-E0+-E1 (profile)",
              find_characteristic_lifts(profiled, candidates, 7), lift, Provenance::reported);
  check_lifts(r, tag + ".lifts.explicit", "lifts using explicit I_6 classes", find_characteristic_lifts(emb, candidates, 7),
              lift, Provenance::derived);

  const auto big_h = projected_chamber_class(w, u);
  BlowdownOptions opts{"Q_" + std::to_string(n), true, "asserted input flag"};
  auto bd = rational_blowdown(w, ConfigurationEmbedding(w, u), 7, big_h, opts);
  r.expect_true(tag + ".chamber", "projected chamber class agrees with h on the lifts",
                pair(big_h, lift) * pair(w.marked("h"), lift) > 0, Provenance::derived);
  r.add(tag + ".euler_sign", "(e, sign) after blowdown", "(8, -4)",
        "(" + std::to_string(bd.model.euler()) + ", " + std::to_string(bd.model.sign()) + ")", Provenance::derived);
  check_fingerprint(r, tag + ".fingerprint", bd.model, 5, Provenance::reported);
  r.add(tag + ".sw", "SW magnitudes of Q_n", show(repeated(nn, 2)), show(bd.model.sw().magnitudes()),
        Provenance::reported, "SW of Q_n");
  check_blowdown_dims(r, tag + ".dims", bd);
  r.note("Q_n homeomorphism type is an invariant-level conclusion from the fingerprint; it is not computed");
  return {mark_descended(bd, lift), std::move(r), std::move(bd.lifts)};
}

/// Modules accepted by verify_paper's filter.
inline const std::vector<std::string>& verification_modules() {
  static const std::vector<std::string> m{"lattice", "fourmanifold", "knots", "monodromy", "plumbing", "pipelines"};
  return m;
}

namespace pipeline_detail {

inline void lattice_checks(VerificationReport& r) {
  const auto z = z_model(1);
  const auto u = xn_configuration(z);
  r.expect_eq("lattice.u0", "square of u0 in Z_n", Integer(-9), square(u[0]), Provenance::reported, "u0");
  std::vector<Integer> sq;
  for (const auto& s : e6_classes(z)) sq.push_back(square(s));
  r.add("lattice.e6", "squares of S1..S7", show(repeated(-2, 7)), show(sq), Provenance::reported, "E6 spheres");
  r.expect_eq("lattice.H", "square of the chamber class H", Integer(5), square(xn_chamber_class(z)),
              Provenance::reported, "chamber class H");
  r.expect_true("lattice.characteristic", "T+E0+E1+E2 is characteristic in Z_n",
                is_characteristic(z.parse("T + E0 + E1 + E2")), Provenance::reported, "characteristic classes");
  const auto comp = orthogonal_complement(z.lattice(), u);
  const auto s = signature_and_betti(*comp.as_lattice("complement", "c", false));
  r.add("lattice.complement", "rank and (b+, b-) of the complement of u0..u5", "7 (1, 6)",
        std::to_string(comp.rank()) + " (" + std::to_string(s.b_plus) + ", " + std::to_string(s.b_minus) + ")",
        Provenance::reported, "b+ and b- of X_n");
}

inline void fourmanifold_checks(VerificationReport& r) {
  for (std::int64_t n : {1, 3}) {
    const std::string tag = "fourmanifold[" + std::to_string(n) + "]";
    const auto z = z_model(n);
    const auto l = z.parse("T + E0 + E1 + E2");
    r.expect_eq(tag + ".d", "d(T+E0+E1+E2) in Z_n", Integer(0), dimension(z, l), Provenance::reported,
                "dimension formula");
    const Chamber c(z, xn_chamber_class(z));
    r.expect_eq(tag + ".chamber", "|SW_{Z,H}(T+E0+E1+E2)|", Integer(n), abs(chamber_sw(z, l, c)),
                Provenance::reported, "SW of Z_n");
    bool sixteen = z.sw().size() == 16;
    for (const auto& k : sign_combinations({z.marked("T"), z.marked("E0"), z.marked("E1"), z.marked("E2")}))
      sixteen = sixteen && abs(z.sw().value(k)) == n;
    r.expect_true(tag + ".blowup", "three blowups of Y_n give exactly +-T+-E0+-E1+-E2 with |SW| = n", sixteen,
                  Provenance::reported, "SW of Z_n");
  }
}

inline void knots_checks(VerificationReport& r) {
  r.add("knots.alexander[1]", "Alexander polynomial of T(1)", "t^1 - 1 + t^-1", alexander_twist(1).to_string(),
        Provenance::reported, "twist knot");
  r.add("knots.alexander[3]", "Alexander polynomial of T(3)", "3t^1 - 5 + 3t^-1", alexander_twist(3).to_string(),
        Provenance::reported, "twist knot");
  const auto e1 = e1_model();
  const auto t = e1.marked("T");
  for (std::int64_t n = 1; n <= 10; ++n) {
    const std::string tag = "knots[" + std::to_string(n) + "]";
    const Integer nn = n;
    const TwistKnot k{n};
    const auto y = knot_surgery_manifold(e1, t, k, "Y_" + std::to_string(n));
    r.add(tag + ".y", "|SW_Y(T)|, |SW_Y(-T)|", show({nn, nn}), show({abs(y.sw().value(t)), abs(y.sw().value(-t))}),
          Provenance::reported, "SW of Y_n");
    const std::array<TwistKnot, 2> two{TwistKnot{1}, TwistKnot{n}};
    const auto sw = e1_knot_surgery_sw(std::span<const TwistKnot>(two), t);
    r.add(tag + ".v", "|SW_V(+-3T)|, |SW_V(+-T)|", show({nn, nn, 2 * nn - 1, 2 * nn - 1}),
          show({abs(sw.value(3 * t)), abs(sw.value(-3 * t)), abs(sw.value(t)), abs(sw.value(-t))}),
          Provenance::reported, "SW of V_n");
  }
  const auto y = y_model(2);
  r.add("knots.y.euler_sign", "(e, sign) of Y_n", "(12, -8)",
        "(" + std::to_string(y.euler()) + ", " + std::to_string(y.sign()) + ")", Provenance::reported, "Y_n");
  r.add("knots.y.h", "h^2 and h.T in Y_n", "1, 3",
        square(y.marked("h")).str() + ", " + pair(y.marked("h"), y.marked("T")).str(), Provenance::reported,
        "genus 3 class h");
}

inline void monodromy_checks(VerificationReport& r) {
  const auto ab = evaluate(parse_word("ab"));
  r.add("monodromy.ab", "trace and order of ab", "1, 6",
        ab.trace().str() + ", " + std::to_string(ab.order().value_or(0)), Provenance::reported, "order of ab");
  r.expect_true("monodromy.braid", "aba = bab", evaluate(parse_word("abaBAB")).is_identity(), Provenance::reported,
                "braid relation");
  const auto e6 = verify_factorization(parse_word(kE6Factorization), parse_word("(ab)^6"));
  r.expect_true("monodromy.e6", std::string(kE6Factorization) + " = (ab)^6", e6.equal, Provenance::reported,
                "affine E6 factorization");
  const auto i6 = verify_factorization(parse_word(kI6Factorization), parse_word("(a^3b)^3"));
  r.expect_true("monodromy.i6", std::string(kI6Factorization) + " = (a^3b)^3", i6.equal, Provenance::reported,
                "I_6 factorization");
  r.expect_true("monodromy.i6.identity", "(a^3b)^3 and " + std::string(kI6Factorization) + " are the identity",
                i6.lhs.is_identity() && i6.rhs.is_identity(), Provenance::reported, "I_6 factorization");
}

inline void plumbing_checks(VerificationReport& r) {
  r.add("plumbing.c7", "weights of C_7", "[-9, -2, -2, -2, -2, -2]", show(cp_chain(7).weights()),
        Provenance::reported, "C_7");
  r.add("plumbing.c3", "weights of C_3", "[-5, -2]", show(cp_chain(3).weights()), Provenance::reported, "C_3");
  const auto lens = boundary_lens_space(cp_chain(7));
  r.expect_true("plumbing.c7.boundary", "boundary of C_7 is L(49, -6)", lens.order() == 49 && lens.matches(-6),
                Provenance::reported, "L(49,-6)");
  for (std::int64_t p = 2; p <= 20; ++p) {
    const auto chain = cp_chain(p);
    const auto pm = plumbing_matrix(chain);
    std::vector<Integer> cf;
    for (const auto& w : chain.weights()) cf.push_back(-w);
    const Integer p2 = p * p;
    r.add("plumbing.cp[" + std::to_string(p) + "]", "det, continued fraction, Q^-1(0,0), boundary order",
          p2.str() + ", " + to_string(Rational(p2, p - 1)) + ", " + to_string(Rational(-(p - 1), p2)) + ", " + p2.str(),
          abs(pm.determinant).str() + ", " + to_string(negative_continued_fraction(cf)) + ", " +
              to_string(pm.inverse(0, 0)) + ", " + boundary_lens_space(chain).order().str(),
          Provenance::derived, "C_p");
  }
  const auto z = z_model(1);
  const ConfigurationEmbedding emb(z, xn_configuration(z));
  const auto l = z.parse("T + E0 + E1 + E2");
  r.add("plumbing.z.restriction", "restriction of T+E0+E1+E2 to C_7", "[7, 0, 0, 0, 0, 0]",
        show(emb.pairing_vector(l)), Provenance::reported, "7 gamma_0");
  r.add("plumbing.z.relsq", "relative square of T+E0+E1+E2", "-6", to_string(relative_square_of_restriction(emb, l)),
        Provenance::reported, "relative square");
  const auto sixteen = sign_combinations({z.marked("T"), z.marked("E0"), z.marked("E1"), z.marked("E2")});
  check_lifts(r, "plumbing.z.lifts", "lifts in Z_n", find_characteristic_lifts(emb, sixteen, 7), l,
              Provenance::reported);
  const auto big_h = xn_chamber_class(z);
  const auto& h = z.marked("h");
  std::vector<Integer> hu;
  for (const auto& ui : emb.vertex_classes()) hu.push_back(pair(big_h, ui));
  r.add("plumbing.H", "H.h, H^2, H.u_i", "7, 5, " + show(repeated(0, 6)),
        pair(big_h, h).str() + ", " + square(big_h).str() + ", " + show(hu), Provenance::reported,
        "chamber class H");
  r.add("plumbing.H.L", "H.L and h.L for L = T+E0+E1+E2", "5, 3", pair(big_h, l).str() + ", " + pair(h, l).str(),
        Provenance::reported, "chamber class H");

  const auto e1 = e1_model();
  const std::array<TwistKnot, 2> two{TwistKnot{1}, TwistKnot{1}};
  const auto w = blown_up(knot_surgery_manifold(e1, e1.marked("T"), std::span<const TwistKnot>(two), "V_1"), 2, "W_1");
  const ConfigurationEmbedding profiled(w, qn_profile());
  const auto lw = w.parse("3T + E0 + E1");
  r.add("plumbing.w.relsq", "relative square of 3T+E0+E1 in W_n", "-6",
        to_string(relative_square_of_restriction(profiled, lw)), Provenance::reported, "relative square");
  std::vector<HomologyClass> candidates = sign_combinations({3 * w.marked("T"), w.marked("E0"), w.marked("E1")});
  for (const auto& k : sign_combinations({w.marked("T"), w.marked("E0"), w.marked("E1")})) candidates.push_back(k);
  check_lifts(r, "plumbing.w.lifts", "lifts in W_n", find_characteristic_lifts(profiled, candidates, 7), lw,
              Provenance::reported);
}

inline void pipelines_checks(VerificationReport& r) {
  std::vector<std::vector<Integer>> xm, qm;
  for (std::int64_t n = 1; n <= 10; ++n) {
    auto x = build_Xn(n);
    r.merge(x.report);
    xm.push_back(x.model.sw().magnitudes());
    auto q = build_Qn(n);
    r.merge(q.report);
    qm.push_back(q.model.sw().magnitudes());
  }
  for (std::int64_t n = 1; n <= 5; ++n) {
    r.merge(build_b7_family(n).report);
    r.merge(build_b8_family(n).report);
  }
  auto distinct = [](const std::vector<std::vector<Integer>>& m) {
    return std::set<std::vector<Integer>>(m.begin(), m.end()).size() == m.size();
  };
  r.expect_true("pipelines.xn.separation", "SW magnitude sets of X_1..X_10 pairwise distinct", distinct(xm),
                Provenance::reported, "no two diffeomorphic");
  r.expect_true("pipelines.qn.separation", "SW magnitude sets of Q_1..Q_10 pairwise distinct", distinct(qm),
                Provenance::reported, "no two diffeomorphic");
}

}  // namespace pipeline_detail

/// Runs the golden checks, optionally restricted to one module. Failures and
/// exceptions become report entries.
inline VerificationReport verify_paper(const std::optional<std::string>& only = std::nullopt) {
  using namespace pipeline_detail;
  if (only && std::find(verification_modules().begin(), verification_modules().end(), *only) ==
                  verification_modules().end())
    throw PreconditionError("unknown module '" + *only + "'");
  VerificationReport r("golden checks");
  const std::vector<std::pair<std::string, void (*)(VerificationReport&)>> steps{
      {"lattice", lattice_checks},     {"fourmanifold", fourmanifold_checks}, {"knots", knots_checks},
      {"monodromy", monodromy_checks}, {"plumbing", plumbing_checks},         {"pipelines", pipelines_checks}};
  for (const auto& [name, fn] : steps) {
    if (only && *only != name) continue;
    try {
      fn(r);
    } catch (const std::exception& e) {
      r.fail(name + ".error", "module " + name + " raised", e.what());
    }
  }
  r.note("SW values are compared by absolute value; signs follow the convention note of each table");
  return r;
}

}  // namespace fourcalc
