#include "fourcalc/io.hpp"
#include "fourcalc/pipelines.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace fourcalc;

namespace {

std::string failures(const VerificationReport& r) {
  std::string out;
  for (const auto& c : r.checks())
    if (!c.pass) out += c.id + ": expected " + c.expected + ", computed " + c.computed + "\n";
  return out;
}

}  // namespace

TEST_CASE("X_n family") {
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto x = build_Xn(n);
    INFO(failures(x.report));
    CHECK(x.report.all_passed());
    CHECK(fingerprint(x.model) == Fingerprint{1, 6, true, true});
    const auto& k0 = x.model.marked("K0");
    CHECK(square(k0) == 3);
    CHECK(dimension(x.model, k0) == 0);
    CHECK(abs(x.model.sw().value(k0)) == n);
    CHECK(abs(x.model.sw().value(-k0)) == n);
    CHECK(x.model.sw().magnitudes() == std::vector<Integer>{n, n});
    REQUIRE(x.lifts.size() == 2);
    const auto& h = x.model.marked("H");
    CHECK(square(h) == 5);
  }
}

TEST_CASE("Q_n family") {
  for (std::int64_t n = 1; n <= 4; ++n) {
    const auto q = build_Qn(n);
    INFO(failures(q.report));
    CHECK(q.report.all_passed());
    CHECK(fingerprint(q.model) == Fingerprint{1, 5, true, true});
    CHECK(q.model.euler() == 8);
    CHECK(q.model.sign() == -4);
    CHECK(q.model.sw().magnitudes() == std::vector<Integer>{n, n});
    for (const auto& l : q.lifts) CHECK(dimension(q.model, l.descended) == 0);
    const auto& k0 = q.model.marked("K0");
    CHECK(abs(q.model.sw().value(k0)) == n);
    CHECK(square(k0) == square(q.lifts.front().lift) + 6);
  }
}

TEST_CASE("C_5 and C_3 variants") {
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto b7 = build_b7_family(n);
    INFO(failures(b7.report));
    CHECK(b7.report.all_passed());
    CHECK(fingerprint(b7.model) == Fingerprint{1, 7, true, true});
    CHECK(b7.model.sw().magnitudes() == std::vector<Integer>{n, n});
    CHECK(abs(b7.model.sw().value(b7.model.marked("K0"))) == n);
    const auto b8 = build_b8_family(n);
    INFO(failures(b8.report));
    CHECK(b8.report.all_passed());
    CHECK(fingerprint(b8.model) == Fingerprint{1, 8, true, true});
    CHECK(b8.model.sw().magnitudes() == std::vector<Integer>{n, n});
    bool noted = false;
    for (const auto& note : b8.report.notes()) noted = noted || note.find("b- = 8") != std::string::npos;
    CHECK(noted);
  }
}

TEST_CASE("family builders reject n < 1") {
  CHECK_THROWS_AS(build_Xn(0), PreconditionError);
  CHECK_THROWS_AS(build_Qn(-1), PreconditionError);
  CHECK_THROWS_AS(build_b7_family(0), PreconditionError);
  CHECK_THROWS_AS(build_b8_family(0), PreconditionError);
  CHECK_THROWS_AS(y_model(0), PreconditionError);
}

TEST_CASE("X_n are pairwise distinguished") {
  std::vector<FourManifoldModel> xs;
  for (std::int64_t n = 1; n <= 5; ++n) xs.push_back(build_Xn(n).model);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      CHECK(compare_sw(xs[i], xs[j]) == DiffeomorphismVerdict::not_diffeomorphic);
}

TEST_CASE("verify_paper") {
  const auto full = verify_paper();
  INFO(failures(full));
  CHECK(full.all_passed());
  CHECK(full.checks().size() > 400);
  std::set<std::string> ids;
  for (const auto& c : full.checks()) CHECK(ids.insert(c.id).second);

  const auto mono = verify_paper("monodromy");
  CHECK(mono.checks().size() == 5);
  CHECK(mono.all_passed());
  CHECK_THROWS_AS(verify_paper("homology"), PreconditionError);
  for (const auto& m : verification_modules()) {
    const auto r = verify_paper(m);
    CHECK_FALSE(r.checks().empty());
  }
}

TEST_CASE("reports are deterministic") {
  const auto a = verify_paper("pipelines").to_json().dump();
  const auto b = verify_paper("pipelines").to_json().dump();
  CHECK(a == b);
  const auto j = nlohmann::ordered_json::parse(a);
  CHECK(j["version"] == 1);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(io::model_to_json(build_Xn(3).model).dump() == io::model_to_json(build_Xn(3).model).dump());
}
