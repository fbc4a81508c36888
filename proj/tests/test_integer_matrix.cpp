#include "fourcalc/integer.hpp"
#include "fourcalc/matrix.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace fourcalc;

namespace {

// Laplace expansion along the first row; exponential but independent of Bareiss.
Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Integer term = m(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(6, 3) == 2);
  CHECK(mod_floor(-6, 49) == 43);
  CHECK(gcd(-12, 18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK(*mod_inverse(6, 49) == 41);
  CHECK_FALSE(mod_inverse(7, 49).has_value());
  CHECK(to_string(Rational(49, 6)) == "49/6");
  CHECK(to_string(Rational(-6)) == "-6");
  CHECK(sign(Integer(-3)) == -1);
  const Integer big = Integer(1) << 80;
  CHECK_FALSE(to_int64(big).has_value());
  CHECK(*to_int64(Integer(-5)) == -5);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(20241);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto m = random_matrix(rng, n, n, -4, 4);
    REQUIRE(determinant(m) == cofactor_det(m));
  }
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix(3, 3)) == 0);
}

TEST_CASE("inverse and solve") {
  std::mt19937_64 rng(77);
  int tested = 0;
  while (tested < 100) {
    const auto m = random_matrix(rng, 4, 4, -3, 3);
    if (determinant(m) == 0) {
      CHECK_THROWS_AS(inverse(m), PreconditionError);
      continue;
    }
    const auto inv = inverse(m);
    CHECK(to_rational(m) * inv == RatMatrix::identity(4));
    std::vector<Rational> b{1, -2, 3, 0};
    const auto x = solve(to_rational(m), b);
    REQUIRE(x.has_value());
    CHECK(to_rational(m) * *x == b);
    ++tested;
  }
  // Inconsistent system.
  CHECK_FALSE(solve(RatMatrix{{1, 1}, {1, 1}}, {Rational(1), Rational(2)}).has_value());
  // Underdetermined system: free variables are zero.
  const auto x = solve(RatMatrix{{1, 2}}, {Rational(4)});
  REQUIRE(x);
  CHECK((*x)[0] == 4);
  CHECK((*x)[1] == 0);
}

TEST_CASE("integer echelon transform is unimodular") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(rng, 2 + trial % 4, 2 + trial % 5, -6, 6);
    const auto e = integer_echelon(a);
    CHECK(abs(determinant(e.transform)) == 1);
    CHECK(e.transform * a == e.echelon);
    CHECK(e.rank == rank(a));
    for (std::size_t i = e.rank; i < e.echelon.rows(); ++i)
      for (std::size_t j = 0; j < e.echelon.cols(); ++j) CHECK(e.echelon(i, j) == 0);
  }
}

TEST_CASE("integer kernel is a saturated basis") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 2, 5, -5, 5);
    const auto k = integer_kernel(m);
    CHECK(k.size() == 5 - rank(m));
    for (const auto& v : k) CHECK(m * v == std::vector<Integer>(2, Integer(0)));
    // Kernel rows extend to a unimodular matrix, hence are saturated: the gcd
    // of the maximal minors of the kernel matrix is 1.
    if (k.size() == 3) {
      const auto km = IntMatrix::from_rows(k);
      Integer g = 0;
      for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
          for (std::size_t c = b + 1; c < 5; ++c) {
            IntMatrix minor(3, 3);
            for (std::size_t i = 0; i < 3; ++i) {
              minor(i, 0) = km(i, a);
              minor(i, 1) = km(i, b);
              minor(i, 2) = km(i, c);
            }
            g = gcd(g, determinant(minor));
          }
      CHECK(g == 1);
    }
  }
}

TEST_CASE("span basis of 2Z + 3Z is Z") {
  const auto b = integer_span_basis({{2}, {3}});
  REQUIRE(b.size() == 1);
  CHECK(b[0][0] == 1);
}

TEST_CASE("matrix shapes are checked") {
  CHECK_THROWS_AS((IntMatrix{{1, 2}, {3}}), StructuralError);
  CHECK_THROWS_AS(IntMatrix(2, 3) * IntMatrix(2, 3), StructuralError);
  CHECK_THROWS_AS(dot(std::vector<Integer>{1}, std::vector<Integer>{1, 2}), StructuralError);
}
