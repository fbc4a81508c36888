#include "fourcalc/plumbing.hpp"
#include "fourcalc/pipelines.hpp"

#include <catch_amalgamated.hpp>

using namespace fourcalc;

namespace {

// Determinant of a tridiagonal matrix via the three-term continuant.
Integer continuant(const std::vector<Integer>& w) {
  Integer prev = 1, cur = w[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    const Integer next = w[i] * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TEST_CASE("C_p chains") {
  const auto c5 = cp_chain(5);
  CHECK(c5.size() == 4);
  CHECK(c5.weights() == std::vector<Integer>{-7, -2, -2, -2});
  CHECK(c5.is_linear());
  CHECK(cp_chain(2).weights() == std::vector<Integer>{-4});
  CHECK_THROWS_AS(cp_chain(1), PreconditionError);
  CHECK_THROWS_AS(cp_chain(-3), PreconditionError);
  CHECK_THROWS_AS(PlumbingChain({-2, -2, -2}, {{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(PlumbingChain({-2, -2}, {{0, 1}, {1, 0}}), StructuralError);
  CHECK_THROWS_AS(PlumbingChain({-2, -2}, {{0, 2}}), StructuralError);
  CHECK_THROWS_AS(PlumbingChain({}, {}), PreconditionError);
}

TEST_CASE("C_p determinants and inverses") {
  for (std::int64_t p = 2; p <= 20; ++p) {
    const auto chain = cp_chain(p);
    const auto pm = plumbing_matrix(chain);
    const Integer sgn = (p - 1) % 2 == 0 ? 1 : -1;
    CHECK(pm.determinant == sgn * p * p);
    CHECK(pm.determinant == continuant(chain.weights()));
    CHECK(to_rational(pm.matrix) * pm.inverse == RatMatrix::identity(chain.size()));
    CHECK(pm.inverse(0, 0) == Rational(-(p - 1), p * p));

    std::vector<Integer> cf;
    for (const auto& w : chain.weights()) cf.push_back(-w);
    CHECK(negative_continued_fraction(cf) == Rational(p * p, p - 1));
    const auto l = boundary_lens_space(chain);
    CHECK(l.order() == p * p);
    CHECK(l.twist() == p - 1);
  }
  CHECK(negative_continued_fraction({7, 2, 2, 2}) == Rational(25, 4));
  CHECK(negative_continued_fraction({5, 2}) == Rational(9, 2));
  CHECK_THROWS_AS(negative_continued_fraction({}), PreconditionError);
  CHECK_THROWS_AS(plumbing_matrix(PlumbingChain::linear({-1, -1})), PreconditionError);
}

TEST_CASE("lens space orbits") {
  const auto l = boundary_lens_space(cp_chain(7));
  CHECK(l.to_string() == "L(49,6)");
  CHECK(l.residue_orbit() == std::vector<Integer>{6, 8, 41, 43});
  CHECK(l.matches(-6));
  CHECK(l.matches(8));
  CHECK_FALSE(l.matches(5));
  CHECK_THROWS_AS(LensSpace(49, 7), PreconditionError);
  CHECK_THROWS_AS(LensSpace(0, 1), PreconditionError);
  CHECK_THROWS_AS(boundary_lens_space(e6_tree()), PreconditionError);
  CHECK_THROWS_AS(boundary_lens_space(PlumbingChain::linear({-2, -1})), PreconditionError);
}

TEST_CASE("affine E6 tree") {
  const auto t = e6_tree();
  CHECK(is_affine_e6_shape(t));
  CHECK(t.degree(2) == 3);
  CHECK_FALSE(t.is_linear());
  CHECK_FALSE(is_affine_e6_shape(PlumbingChain::linear(std::vector<Integer>(7, Integer(-2)))));
  // D-type tree with a legs of length 1, 2, 3 is not affine E6.
  CHECK_FALSE(is_affine_e6_shape(PlumbingChain(std::vector<Integer>(7, Integer(-2)),
                                               {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}})));
  const auto m = intersection_matrix(t);
  CHECK(determinant(m) == 0);
  const auto k = integer_kernel(m);
  REQUIRE(k.size() == 1);
  auto v = k.front();
  if (v[0] < 0)
    for (auto& x : v) x = -x;
  CHECK(v == std::vector<Integer>{1, 2, 3, 2, 1, 2, 1});
}

TEST_CASE("E6 fiber in E(1)") {
  const auto e1 = e1_model();
  const ConfigurationEmbedding emb(e1, e6_classes(e1));
  const auto r = verify_embedding(emb, e6_tree());
  CHECK(r.ok());
  CHECK(r.dynkin_shape == true);
  CHECK(r.fiber_orthogonal == true);
  CHECK(r.fiber_combination == true);
}

TEST_CASE("embedding mismatches are reported") {
  const auto z = z_model(1);
  auto u = xn_configuration(z);
  CHECK(verify_embedding(ConfigurationEmbedding(z, u), cp_chain(7)).ok());
  std::swap(u[1], u[2]);
  const auto r = verify_embedding(ConfigurationEmbedding(z, u), cp_chain(7));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.mismatches.empty());
  const auto small = verify_embedding(ConfigurationEmbedding(z, u), cp_chain(5));
  CHECK_FALSE(small.gram_matches);
  CHECK_THROWS_AS(ConfigurationEmbedding(z, {e1_model().marked("T")}), StructuralError);
  CHECK_THROWS_AS(ConfigurationEmbedding(z, std::vector<HomologyClass>{}), PreconditionError);
  IntersectionProfile bad;
  bad.gram = intersection_matrix(cp_chain(3));
  bad.pairings = {{"T", {1}}};
  CHECK_THROWS_AS(ConfigurationEmbedding(z, bad), StructuralError);
}

TEST_CASE("relative square against direct solve") {
  const auto z = z_model(2);
  const auto u = xn_configuration(z);
  const ConfigurationEmbedding emb(z, u);
  const auto k = z.parse("T + E0 + E1 + E2");
  CHECK(relative_square_of_restriction(emb, k) == -6);
  // Oracle: solve Q c = v and take v . c.
  const auto v = emb.pairing_vector(k);
  const auto c = solve(to_rational(gram_of(u)), std::vector<Rational>(v.begin(), v.end()));
  REQUIRE(c);
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += Rational(v[i]) * (*c)[i];
  CHECK(s == relative_square_of_restriction(emb, k));
  // A class orthogonal to the configuration restricts to zero.
  CHECK(relative_square_of_restriction(emb, xn_chamber_class(z)) == 0);
}

TEST_CASE("characteristic lifts in Z_n") {
  const auto z = z_model(3);
  const ConfigurationEmbedding emb(z, xn_configuration(z));
  std::vector<HomologyClass> basic;
  for (const auto& e : z.sw().entries()) basic.push_back(e.cls);
  const auto lifts = find_characteristic_lifts(emb, basic, 7);
  const auto l = z.parse("T + E0 + E1 + E2");
  REQUIRE(lifts.size() == 2);
  CHECK(((lifts[0] == l && lifts[1] == -l) || (lifts[0] == -l && lifts[1] == l)));
  CHECK_THROWS_AS(find_characteristic_lifts(emb, {z.parse("T")}, 7), PreconditionError);

  CHECK(characteristic_box_candidates({z.marked("T"), z.marked("E0")}, 2).empty());
  const auto box = characteristic_box_candidates({z.marked("T"), z.marked("E0"), z.marked("E1"), z.marked("E2")}, 2);
  // Every coefficient must be odd.
  CHECK(box.size() == 16);
  for (const auto& k : box) CHECK(is_characteristic(k));
  CHECK(characteristic_box_candidates({}, 3).empty());
}

TEST_CASE("lifts from an intersection profile") {
  const auto e1 = e1_model();
  const std::array<TwistKnot, 2> knots{TwistKnot{1}, TwistKnot{2}};
  const auto v = knot_surgery_manifold(e1, e1.marked("T"), std::span<const TwistKnot>(knots));
  const auto wn = blown_up(v, 2, "W_2");
  const ConfigurationEmbedding profiled(wn, qn_profile());
  CHECK(profiled.size() == 6);
  CHECK_FALSE(profiled.explicit_classes());
  const auto lift = wn.parse("3T + E0 + E1");
  CHECK(profiled.pairing_vector(lift) == std::vector<Integer>{7, 0, 0, 0, 0, 0});
  CHECK(relative_square_of_restriction(profiled, lift) == -6);
  CHECK(relative_square_of_restriction(profiled, wn.parse("T + E0 + E1")) == Rational(-150, 49));
  CHECK_THROWS_AS(profiled.pairing_vector(wn.parse("eta")), PreconditionError);
  CHECK(build_Qn(2).lifts.size() == 2);
}

TEST_CASE("blowdown lattice is unimodular and classes descend") {
  const auto z = z_model(2);
  const auto u = xn_configuration(z);
  const BlowdownLattice g(z.lattice(), u, 7, "X");
  CHECK(g.lattice()->rank() == 7);
  CHECK(g.lattice()->unimodular());
  CHECK(abs(determinant(g.complement().gram)) == 49);
  const auto s = signature_and_betti(*g.lattice());
  CHECK(s.b_plus == 1);
  CHECK(s.b_minus == 6);
  const auto l = z.parse("T + E0 + E1 + E2");
  const auto k = g.descend(l);
  REQUIRE(k);
  CHECK(square(*k) == square(l) + 6);
  CHECK(is_characteristic(*k));
  // The chamber class is orthogonal to u, so it descends with the same square.
  const auto h = g.descend(xn_chamber_class(z));
  REQUIRE(h);
  CHECK(square(*h) == square(xn_chamber_class(z)));
  // u0 itself projects to zero.
  CHECK(g.descend(u[0])->is_zero());
}

TEST_CASE("rational blowdown preconditions") {
  const auto z = z_model(1);
  const auto u = xn_configuration(z);
  const ConfigurationEmbedding emb(z, u);
  BlowdownOptions opts{"X", true, "test"};
  CHECK_THROWS_AS(rational_blowdown(z, emb, 7, z.marked("h"), opts), PreconditionError);
  CHECK_THROWS_AS(rational_blowdown(z, emb, 5, xn_chamber_class(z), opts), PreconditionError);
  const auto b = rational_blowdown(z, emb, 7, xn_chamber_class(z), opts);
  CHECK(b.model.euler() == 9);
  CHECK(b.model.sign() == -5);
  CHECK(b.lifts.size() == 2);
  for (const auto& l : b.lifts) CHECK(abs(l.chamber_value) == 1);
}
