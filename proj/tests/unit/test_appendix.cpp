#include "doctest.h"
#include "helpers.hpp"
#include "koszulkit/appendix.hpp"

using namespace kt;

namespace {

// multiply a column vector by the matrix over R and reduce
bool kills(const AppendixInstance& A, const PolyMatrix& d, const std::vector<Polynomial>& v) {
  for (int r = 0; r < d.rows(); ++r) {
    Polynomial s(A.ring);
    for (int c = 0; c < d.cols(); ++c) s += d.at(r, c) * v[c];
    if (!A.quotient->normal_form(s).is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("appendix") {
  TEST_CASE("bigraded basis counts") {
    auto A = AppendixInstance::make(Field::prime(32003));
    const QuotientRing& Q = *A.quotient;
    CHECK(Q.bigraded());
    CHECK(Q.dim({2, 0}) == 1);
    CHECK(Q.dim({3, 0}) == 0);
    CHECK(Q.dim({2, 1}) == 0);
    for (int i = 0; i <= 6; ++i) {
      CHECK(Q.dim({1, i}) == 2);
      CHECK(Q.dim({0, i}) == i + 1);
    }
    // x^3 vanishes in R
    CHECK(Q.normal_form(P(A.ring, "x^3")).is_zero());
    auto b = check_basis(A, 8);
    CHECK(b.ok);
    CHECK(b.failures.empty());
  }

  TEST_CASE("displayed differentials over a large prime") {
    auto A = AppendixInstance::make(Field::prime(32003));
    REQUIRE(A.d.size() == 5);
    CHECK(A.d[1].cols() == 3);
    CHECK(A.d[2].cols() == 6);
    CHECK(A.d[3].cols() == 11);
    CHECK(A.d[4].cols() == 20);
    auto rep = verify_differentials(A);
    CHECK(rep.ok);
    CHECK(rep.d4_complete);
    CHECK_FALSE(rep.d4_gap.has_value());
    for (int i = 1; i <= 4; ++i)
      for (int c = 0; c < A.d[i].cols(); ++c) CHECK(kills(A, A.d[i - 1], A.d[i].column(c)));
  }

  TEST_CASE("characteristic two misses a quadratic syzygy") {
    auto A = AppendixInstance::make(Field::prime(2));
    auto rep = verify_differentials(A);
    CHECK(rep.ok);
    CHECK_FALSE(rep.d4_complete);
    REQUIRE(rep.d4_gap.has_value());
    CHECK(*rep.d4_gap == GradeKey{4, 2});
    // (0, ..., 0, x^2) is a syzygy of the third differential
    std::vector<Polynomial> s(A.d[3].cols(), Polynomial(A.ring));
    s.back() = P(A.ring, "x^2");
    CHECK(kills(A, A.d[3], s));
  }

  TEST_CASE("obstruction position per characteristic") {
    for (const char* f : {"F2", "F3", "F7", "F32003", "QQ"}) {
      CAPTURE(f);
      Field k = Field::parse(f);
      auto rep = run_appendix(k);
      CHECK(rep.pass);
      REQUIRE(rep.obstruction);
      const auto& ob = *rep.obstruction;
      if (k.characteristic() == 2) {
        CHECK(ob.hom == 4);
        CHECK(ob.bidegree == GradeKey{4, 2});
        CHECK(ob.total == 6);
      } else {
        CHECK(ob.hom == 5);
        CHECK(ob.bidegree == GradeKey{5, 2});
        CHECK(ob.total == 7);
        REQUIRE(ob.ranks.size() >= 5);
        CHECK(std::vector<int>(ob.ranks.begin(), ob.ranks.begin() + 5) == std::vector<int>{2, 3, 6, 11, 20});
        // all generators through step 4 are linear
        for (int i = 1; i <= 5; ++i)
          for (auto& g : ob.resolution.degrees[i]) CHECK(g.total() == i);
      }
    }
  }

  TEST_CASE("residue field over the model ring is nonlinear") {
    auto two = residue_field_obstruction(AppendixInstance::make(Field::prime(2)), 6);
    REQUIRE(two);
    CHECK(*two == std::pair<int, int>{5, 6});
    auto odd = residue_field_obstruction(AppendixInstance::make(Field::prime(32003)), 6);
    REQUIRE(odd);
    CHECK(*odd == std::pair<int, int>{6, 7});
  }

  TEST_CASE("cached obstruction matches a direct run") {
    Field k = Field::prime(7);
    const auto& a = appendix_obstruction(k);
    const auto& b = appendix_obstruction(k);
    CHECK(&a == &b);
    auto direct = find_obstruction(AppendixInstance::make(k));
    REQUIRE(direct);
    CHECK(direct->hom == a.hom);
    CHECK(direct->bidegree == a.bidegree);
  }
}
