#include <sstream>
#include <tuple>

#include "doctest.h"
#include "perverx/gf.hpp"
#include "support.hpp"

using namespace perverx::gf;

namespace {

Matrix mat(int q, std::size_t r, std::size_t c, std::initializer_list<int> v) {
  const Field& f = Field::get(q);
  Matrix m(f, r, c);
  std::size_t k = 0;
  for (int x : v) {
    m(k / c, k % c) = static_cast<Elem>(x);
    ++k;
  }
  return m;
}

// Independent polynomial arithmetic for the extension fields: pairs (a0, a1) mod p with x^2 = c1 x + c0.
std::pair<int, int> poly_mul(int p, int c1, int c0, std::pair<int, int> a, std::pair<int, int> b) {
  int t0 = a.first * b.first, t1 = a.first * b.second + a.second * b.first, t2 = a.second * b.second;
  return {(t0 + t2 * c0) % p, (t1 + t2 * c1) % p};
}

}  // namespace

TEST_SUITE("gf") {
  TEST_CASE("field axioms hold exhaustively") {
    for (int q : {2, 3, 4, 9}) {
      const Field& f = Field::get(q);
      for (int a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        for (int b = 0; b < q; ++b) {
          CHECK(f.add(a, b) == f.add(b, a));
          CHECK(f.mul(a, b) == f.mul(b, a));
          for (int c = 0; c < q; ++c) {
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          }
        }
      }
    }
  }

  TEST_CASE("extension multiplication agrees with polynomial reduction") {
    for (auto [q, p, c1, c0] : {std::tuple{4, 2, 1, 1}, std::tuple{9, 3, 0, 2}}) {
      const Field& f = Field::get(q);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          auto r = poly_mul(p, c1, c0, {a % p, a / p}, {b % p, b / p});
          CHECK(f.mul(a, b) == r.first + p * r.second);
        }
    }
    const Field& f9 = Field::get(9);
    Elem x = f9.parse("x");
    CHECK(f9.name(f9.mul(x, x)) == "2");
    const Field& f4 = Field::get(4);
    CHECK(f4.name(f4.mul(f4.parse("x"), f4.parse("x"))) == "x+1");
  }

  TEST_CASE("inverse of zero is an error") { CHECK_THROWS(Field::get(3).inv(0)); }

  TEST_CASE("rref examples") {
    auto id = Matrix::identity(Field::get(3), 3);
    auto e = rref(id);
    CHECK(e.m == id);
    CHECK(e.rank() == 3);
    CHECK(rref(mat(3, 2, 2, {1, 2, 2, 1})).rank() == 1);
    auto z = Matrix(Field::get(3), 2, 2);
    CHECK(rref(z).rank() == 0);
    CHECK(rref(z).m.is_zero());
  }

  TEST_CASE("nullspace, solve, kronecker basics") {
    const Field& f = Field::get(3);
    CHECK(nullspace(Matrix::identity(f, 4)).rows() == 0);
    auto m = mat(3, 2, 3, {1, 2, 0, 0, 1, 1});
    auto k = kronecker(mat(3, 1, 1, {2}), m);
    CHECK(k == scale(m, 2));
    auto a = mat(3, 2, 2, {1, 1, 0, 1});
    auto b = mat(3, 2, 1, {2, 1});
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
    CHECK_FALSE(solve(mat(3, 2, 2, {1, 1, 1, 1}), mat(3, 2, 1, {1, 0})).has_value());
  }

  TEST_CASE("text round trip is bit exact") {
    std::mt19937_64 rng(7);
    for (int q : {2, 3, 4, 9}) {
      auto m = testing_support::random_matrix(Field::get(q), 4, 5, rng);
      auto s = to_text(m);
      CHECK(from_text(s) == m);
      CHECK(to_text(from_text(s)) == s);
    }
    CHECK_THROWS(from_text("1 2 9\nx y\n"));
  }

  TEST_CASE("properties on random matrices") {
    std::mt19937_64 rng(11);
    for (int q : {2, 3, 4, 9}) {
      const Field& f = Field::get(q);
      for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9, k = rng() % 5;
        Matrix a = (t % 2) ? testing_support::random_matrix(f, r, c, rng)
                           : testing_support::random_low_rank(f, r, c, k, rng);
        Echelon e = rref(a);
        CHECK(rref(e.m).m == e.m);
        Matrix n = nullspace(a);
        CHECK(e.rank() + n.rows() == c);
        CHECK((a * transpose(n)).is_zero());
        Matrix u = row_basis(testing_support::random_low_rank(f, 4, c, 1 + rng() % 3, rng));
        Matrix v = row_basis(testing_support::random_low_rank(f, 4, c, 1 + rng() % 3, rng));
        Matrix s = subspace_sum(u, v), i = subspace_intersect(u, v);
        CHECK(u.rows() + v.rows() == s.rows() + i.rows());
        CHECK(subspace_contains(u, i));
        CHECK(subspace_contains(v, i));
        CHECK(multiply(a, transpose(a)) == multiply_serial(a, transpose(a)));
        CHECK(rref(a).m == rref_serial(a).m);
      }
    }
  }

  TEST_CASE("parallel kernels agree with serial reference on large inputs") {
    std::mt19937_64 rng(3);
    const Field& f = Field::get(3);
    Matrix a = testing_support::random_low_rank(f, 150, 140, 90, rng);
    Matrix b = testing_support::random_matrix(f, 140, 130, rng);
    CHECK(multiply(a, b) == multiply_serial(a, b));
    Echelon p = rref(a), s = rref_serial(a);
    CHECK(p.m == s.m);
    CHECK(p.pivots == s.pivots);
    CHECK(p.rank() == 90);
  }

  TEST_CASE("inverse") {
    std::mt19937_64 rng(5);
    const Field& f = Field::get(9);
    for (int t = 0; t < 20; ++t) {
      Matrix a = testing_support::random_matrix(f, 5, 5, rng);
      auto inv = inverse(a);
      if (rank(a) == 5) {
        REQUIRE(inv);
        CHECK((a * *inv).is_identity());
      } else {
        CHECK_FALSE(inv);
      }
    }
  }
}
