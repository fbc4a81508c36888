// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// All comparisons are exact; the only tolerance is the wall-clock budget.

#include "property_suites.hpp"

#include "fourcalc/pipelines.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

using namespace fourcalc;

namespace {

constexpr double kVerifyBudgetSeconds = 5.0;

// Collects the reasons a criterion failed.
struct Criterion {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::string set_of(const std::vector<HomologyClass>& v) {
  std::set<std::string> s;
  for (const auto& x : v) s.insert(x.to_string());
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return "{" + out + "}";
}

bool is_pm(const std::vector<HomologyClass>& v, const HomologyClass& k) { return set_of(v) == set_of({k, -k}); }

std::string n_str(std::int64_t n) { return "n=" + std::to_string(n); }

void criterion1(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = verify_paper();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(r.all_passed(), std::to_string(r.failed()) + " golden checks failed");
  c.expect(secs < kVerifyBudgetSeconds, "verify_paper took " + std::to_string(secs) + " s");
  const auto e1 = e1_model();
  const auto t = e1.marked("T");
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto y = y_model(n);
    c.expect(abs(y.sw().value(t)) == n && abs(y.sw().value(-t)) == n, "|SW_Y(+-T)| != n for " + n_str(n));
    const std::array<TwistKnot, 2> two{TwistKnot{1}, TwistKnot{n}};
    const auto v = knot_surgery_manifold(e1, t, std::span<const TwistKnot>(two));
    c.expect(abs(v.sw().value(3 * t)) == n && abs(v.sw().value(-3 * t)) == n, "|SW_V(+-3T)| != n for " + n_str(n));
    c.expect(abs(v.sw().value(t)) == 2 * n - 1 && abs(v.sw().value(-t)) == 2 * n - 1,
             "|SW_V(+-T)| != 2n-1 for " + n_str(n));
  }
}

void criterion2(Criterion& c) {
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto z = z_model(n);
    const ConfigurationEmbedding emb(z, xn_configuration(z));
    const auto gens = sign_combinations({z.marked("T"), z.marked("E0"), z.marked("E1"), z.marked("E2")});
    c.expect(gens.size() == 16, "candidate count");
    std::vector<HomologyClass> hits;
    for (const auto& k : gens)
      if (relative_square_of_restriction(emb, k) == -6) hits.push_back(k);
    const auto l = z.parse("T + E0 + E1 + E2");
    c.expect(is_pm(hits, l), "relative square -6 attained by " + set_of(hits) + " for " + n_str(n));
    c.expect(is_pm(find_characteristic_lifts(emb, gens, 7), l), "lift search disagrees for " + n_str(n));
    c.expect(emb.pairing_vector(l) == std::vector<Integer>{7, 0, 0, 0, 0, 0}, "restriction is not 7 gamma_0");
  }
}

void criterion3(Criterion& c) {
  std::set<std::vector<Integer>> mags;
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto x = build_Xn(n).model;
    const auto& k0 = x.marked("K0");
    c.expect(fingerprint(x) == Fingerprint{1, 6, true, true}, "fingerprint " + fingerprint(x).to_string());
    c.expect(square(k0) == 3, "K0^2 = " + square(k0).str() + " for " + n_str(n));
    c.expect(dimension(x, k0) == 0, "d(K0) != 0 for " + n_str(n));
    c.expect(abs(x.sw().value(k0)) == n && abs(x.sw().value(-k0)) == n, "|SW(+-K0)| != n for " + n_str(n));
    if (n >= 2)
      c.expect(minimality_check(x).kind == MinimalityVerdictKind::minimal_certified,
               std::string("minimality ") + to_string(minimality_check(x).kind) + " for " + n_str(n));
    mags.insert(x.sw().magnitudes());
  }
  c.expect(mags.size() == 10, "SW magnitude sets of X_1..X_10 not pairwise distinct");
}

void criterion4(Criterion& c) {
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto q = build_Qn(n);
    c.expect(fingerprint(q.model) == Fingerprint{1, 5, true, true}, "fingerprint " + fingerprint(q.model).to_string());
    std::vector<HomologyClass> lifts;
    for (const auto& l : q.lifts) lifts.push_back(l.lift);
    bool lift_ok = lifts.size() == 2;
    if (lift_ok) {
      const auto& wl = lifts.front().lattice();
      const auto t = HomologyClass::of(wl, {{"eta", 3}, {"eps1", -1}, {"eps2", -1}, {"eps3", -1}, {"eps4", -1},
                                            {"eps5", -1}, {"eps6", -1}, {"eps7", -1}, {"eps8", -1}, {"eps9", -1}});
      const auto expected = 3 * t + HomologyClass::basis(wl, "E0") + HomologyClass::basis(wl, "E1");
      lift_ok = is_pm(lifts, expected);
    }
    c.expect(lift_ok, "lift set " + set_of(lifts) + " for " + n_str(n));
    c.expect(q.model.sw().magnitudes() == std::vector<Integer>{n, n}, "SW magnitudes of Q_n for " + n_str(n));
    c.expect(q.report.all_passed(), "Q_n report has failures for " + n_str(n));
  }
}

void criterion5(Criterion& c) {
  c.expect(evaluate(parse_word("aba")) == evaluate(parse_word("bab")), "braid relation");
  const auto ab = evaluate(parse_word("ab"));
  IntegerMatrix2 p;
  for (int k = 1; k <= 24; ++k) {
    p = p * ab;
    c.expect(p.is_identity() == (k % 6 == 0), "(ab)^" + std::to_string(k));
  }
  const auto e6 = verify_factorization(parse_word(kE6Factorization), parse_word("(ab)^6"));
  c.expect(e6.equal && e6.lhs.is_identity(), "affine E6 factorization");
  const auto i6 = verify_factorization(parse_word(kI6Factorization), parse_word("(a^3b)^3"));
  c.expect(i6.equal && i6.lhs.is_identity(), "I_6 factorization");
  // Declared nodal factors: everything but the (ab)^4 block and the a^6 block.
  for (const auto* r : {&e6, &i6})
    for (const auto& f : r->factors) {
      if (f.text == "(ab)^4" || f.text == "a^6") continue;
      c.expect(f.base_matrix.trace() == 2 && !f.base_matrix.is_identity(), "factor " + f.text + " is not nodal");
    }
  c.expect(i6.factors.front().factor_matrix.trace() == 2 && i6.factors.front().fiber_multiplicity == Integer(6),
           "a^6 is not an I_6 parabolic");
}

void criterion6(Criterion& c) {
  for (std::int64_t p = 2; p <= 20; ++p) {
    const auto chain = cp_chain(p);
    const auto pm = plumbing_matrix(chain);
    std::vector<Integer> cf;
    for (const auto& w : chain.weights()) cf.push_back(-w);
    const std::string tag = " for p=" + std::to_string(p);
    c.expect(abs(pm.determinant) == p * p, "det" + tag);
    c.expect(negative_continued_fraction(cf) == Rational(p * p, p - 1), "continued fraction" + tag);
    c.expect(pm.inverse(0, 0) == Rational(-(p - 1), p * p), "Q^-1(0,0)" + tag);
    c.expect(boundary_lens_space(chain).order() == p * p, "boundary order" + tag);
  }
  const auto l = boundary_lens_space(cp_chain(7));
  c.expect(l.residue_orbit() == std::vector<Integer>{6, 8, 41, 43}, "L(49, 6) residue orbit");
  c.expect(l.matches(6) && l.matches(-6), "L(49, +-6) not identified");
}

void criterion7(Criterion& c) {
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto z = z_model(n);
    const auto big_h = xn_chamber_class(z);
    const auto& h = z.marked("h");
    const auto l = z.parse("T + E0 + E1 + E2");
    c.expect(pair(big_h, h) == 7, "H.h");
    c.expect(square(big_h) == 5, "H^2");
    for (const auto& u : xn_configuration(z)) c.expect(pair(big_h, u) == 0, "H.u_i != 0");
    c.expect(pair(big_h, l) == 5, "H.L");
    c.expect(pair(h, l) == 3, "h.L");
  }
}

void criterion8(Criterion& c) {
  using namespace properties;
  for (const auto& r : {pairing_bilinear(), characteristic_mod8(), blowup_doubling(), knot_surgery_invariants(),
                        relative_square_oracle()}) {
    c.expect(r.cases >= kCases, r.name + ": only " + std::to_string(r.cases) + " cases");
    c.expect(r.failures == 0, r.name + ": " + std::to_string(r.failures) + " failures, first " + r.first_failure);
  }
}

void criterion9(Criterion& c) {
  for (std::int64_t n = 1; n <= 5; ++n) {
    for (const auto& [fam, bm, u0sq] : {std::tuple{"b7", 7, -7}, std::tuple{"b8", 8, -5}}) {
      const auto r = std::string(fam) == "b7" ? build_b7_family(n) : build_b8_family(n);
      const std::string tag = std::string(" for ") + fam + " " + n_str(n);
      c.expect(fingerprint(r.model) == Fingerprint{1, static_cast<std::size_t>(bm), true, true},
               "fingerprint " + fingerprint(r.model).to_string() + tag);
      c.expect(r.model.sw().magnitudes() == std::vector<Integer>{n, n}, "SW magnitudes" + tag);
      bool u0 = false, derived = true;
      for (const auto& ch : r.report.checks()) {
        if (ch.id.ends_with(".u0.square")) u0 = ch.pass && ch.computed == std::to_string(u0sq);
        if (ch.id.ends_with(".sw") || ch.id.ends_with(".lifts"))
          derived = derived && ch.provenance == Provenance::derived;
      }
      c.expect(u0, "u0 square" + tag);
      c.expect(derived, "derivations not labeled derived" + tag);
      c.expect(r.report.all_passed(), "report has failures" + tag);
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"verify-paper golden checks within budget; Y_n and V_n SW values", criterion1},
      {"C_7 lift uniqueness in Z_n", criterion2},
      {"X_n pipeline", criterion3},
      {"Q_n pipeline", criterion4},
      {"monodromy identities", criterion5},
      {"C_p plumbing data", criterion6},
      {"chamber class data", criterion7},
      {"property suites", criterion8},
      {"C_5 and C_3 variant pipelines", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.problems.empty();
    failed += ok ? 0 : 1;
    std::printf("criterion %zu: %s - %s\n", i + 1, ok ? "PASS" : "FAIL", criteria[i].first.c_str());
    for (const auto& p : c.problems) std::printf("    %s\n", p.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
