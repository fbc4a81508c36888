#include "fourcalc/lattice.hpp"
#include "fourcalc/pipelines.hpp"

#include <catch_amalgamated.hpp>

using namespace fourcalc;

namespace {

LatticePtr e1_lattice() { return e1_model().lattice(); }

}  // namespace

TEST_CASE("pairings on the E(1) lattice") {
  const auto l = e1_lattice();
  const auto eta = HomologyClass::basis(l, "eta");
  const auto eps1 = HomologyClass::basis(l, "eps1");
  CHECK(pair(eta, eta) == 1);
  CHECK(pair(eps1, eps1) == -1);
  const auto f = parse_class(l, "3eta - eps1 - eps2 - eps3 - eps4 - eps5 - eps6 - eps7 - eps8 - eps9");
  CHECK(square(f) == 0);
  CHECK(pair(f, eta) == 3);
}

TEST_CASE("class bookkeeping in Z_n") {
  const auto z = z_model(2);
  const auto u = xn_configuration(z);
  // u0 = eps9 + 2F - 2(E0 + E1 + E2) by hand: (eps9)^2 + 4 eps9.F + 4 F^2 + 4 * 3 * (-1)
  CHECK(square(u[0]) == -1 + 4 + 0 - 12);
  CHECK(pair(u[0], u[1]) == 1);
  for (const auto& s : e6_classes(z)) CHECK(square(s) == -2);
  CHECK(square(xn_chamber_class(z)) == 5);
  CHECK(signature_and_betti(*z.lattice()).b_plus == 1);
  CHECK(signature_and_betti(*z.lattice()).b_minus == 12);
}

TEST_CASE("characteristic classes") {
  const auto l = e1_lattice();
  const auto f = e1_model().marked("T");
  CHECK(is_characteristic(f));
  CHECK_FALSE(is_characteristic(HomologyClass::zero(l)));
  const auto z = z_model(1);
  CHECK(is_characteristic(z.parse("T + E0 + E1 + E2")));
  CHECK_FALSE(is_characteristic(z.parse("T + 2E0 + E1 + E2")));
  const auto k = characteristic_representative(l);
  REQUIRE(k);
  CHECK(is_characteristic(*k));
  // Even lattice: 0 is characteristic.
  const auto h = make_lattice("H", {"a", "b"}, IntMatrix{{0, 1}, {1, 0}});
  CHECK(h->even());
  CHECK(is_characteristic(HomologyClass::zero(h)));
}

TEST_CASE("signature and degeneracy") {
  const auto c7 = make_lattice("C7", {"u0", "u1", "u2", "u3", "u4", "u5"}, intersection_matrix(cp_chain(7)));
  const auto s = signature_and_betti(*c7);
  CHECK(s.b_plus == 0);
  CHECK(s.b_minus == 6);
  CHECK(c7->determinant() == 49);

  // Zero diagonal that needs the symmetrizing row addition.
  const auto hyp = make_lattice("H", {"a", "b"}, IntMatrix{{0, 1}, {1, 0}});
  CHECK(signature_and_betti(*hyp).b_plus == 1);
  CHECK(signature_and_betti(*hyp).b_minus == 1);

  try {
    make_lattice("deg", {"a", "b"}, IntMatrix{{1, 1}, {1, 1}});
    FAIL("expected DegenerateFormError");
  } catch (const DegenerateFormError& e) {
    const auto& r = e.radical_vector();
    REQUIRE(r.size() == 2);
    CHECK(r[0] + r[1] == 0);
    CHECK(r[0] != 0);
  }
  const auto rel = make_lattice("rel", {"a", "b"}, IntMatrix{{1, 1}, {1, 1}}, true);
  CHECK_FALSE(rel->nondegenerate());
  CHECK_THROWS_AS(signature_and_betti(*rel), DegenerateFormError);
}

TEST_CASE("lattice construction errors") {
  CHECK_THROWS_AS(make_lattice("x", {"a", "b"}, IntMatrix{{1, 2}, {3, 1}}), StructuralError);
  CHECK_THROWS_AS(make_lattice("x", {"a", "a"}, IntMatrix{{1, 0}, {0, 1}}), StructuralError);
  CHECK_THROWS_AS(make_lattice("x", {"a"}, IntMatrix{{1, 0}, {0, 1}}), StructuralError);
  const auto a = e1_lattice();
  const auto b = diagonal_lattice("other", {"p", "q"}, {1, -1});
  CHECK_THROWS_AS(pair(HomologyClass::basis(a, "eta"), HomologyClass::basis(b, "p")), StructuralError);
  CHECK_THROWS_AS(HomologyClass(b, {1, 2, 3}), StructuralError);
}

TEST_CASE("orthogonal complements") {
  const auto z = z_model(1);
  const auto u = xn_configuration(z);
  const auto comp = orthogonal_complement(z.lattice(), u);
  CHECK(comp.rank() == 7);
  for (const auto& c : comp.basis)
    for (const auto& ui : u) CHECK(pair(c, ui) == 0);
  const auto s = signature_and_betti(*comp.as_lattice("comp"));
  CHECK(s.b_plus == 1);
  CHECK(s.b_minus == 6);
  CHECK(abs(determinant(comp.gram)) == 49);

  const auto whole = orthogonal_complement(z.lattice(), {});
  CHECK(whole.rank() == 13);
  CHECK(whole.gram == z.lattice()->gram());

  const auto e0 = orthogonal_complement(z.lattice(), {z.marked("E0")});
  CHECK(e0.rank() == 12);
  CHECK(signature_and_betti(*e0.as_lattice("e0")).b_minus == 11);

  CHECK_THROWS_AS(orthogonal_complement(z.lattice(), {u[0], u[0]}), PreconditionError);
}

TEST_CASE("class expression parser") {
  const auto z = z_model(1);
  CHECK(z.parse("S+2T-2*(E0+E1+E2)") == xn_configuration(z)[0]);
  CHECK(z.parse("-eps1 + eps1") == HomologyClass::zero(z.lattice()));
  CHECK(z.parse("2(3eta)").coord("eta") == 6);
  CHECK(z.parse("3 T").to_string() == "9eta - 3eps1 - 3eps2 - 3eps3 - 3eps4 - 3eps5 - 3eps6 - 3eps7 - 3eps8 - 3eps9");
  CHECK_THROWS_AS(z.parse("eta +"), ParseError);
  CHECK_THROWS_AS(z.parse("2"), ParseError);
  CHECK_THROWS_AS(z.parse("(eta"), ParseError);
  CHECK_THROWS_AS(z.parse("eta eps1"), ParseError);
  try {
    z.parse("eta + zeta");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("transport and extension keep labels") {
  const auto y = y_model(1);
  const auto ext = extend_lattice(*y.lattice(), "ext", "E0", -1);
  const auto t = transport(y.marked("T"), ext);
  CHECK(square(t) == 0);
  CHECK(t.coord("E0") == 0);
  CHECK_THROWS_AS(transport(HomologyClass::basis(ext, "E0"), y.lattice()), StructuralError);
}
