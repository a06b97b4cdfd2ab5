#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace kt;

namespace {

// independent degrevlex: larger degree wins, then the smaller last differing exponent wins
bool oracle_grevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int v : a) da += v;
  for (int v : b) db += v;
  if (da != db) return da > db;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

Monomial mono(const std::vector<int>& e) {
  Monomial m = Monomial::one(static_cast<int>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) m.set(static_cast<int>(i), e[i]);
  return m;
}

Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, int maxdeg, int terms) {
  std::uniform_int_distribution<int> e(0, maxdeg);
  std::uniform_int_distribution<long> c(-5, 5);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m = Monomial::one(r->nvars());
    for (int i = 0; i < r->nvars(); ++i) m.set(i, e(rng) / r->nvars());
    ts.push_back({m, FieldElement(r->field, c(rng))});
  }
  return Polynomial::from_terms(r, ts);
}

}  // namespace

TEST_SUITE("polyring") {
  TEST_CASE("arithmetic examples") {
    RingPtr r = parse_ring("ring QQ [x,y]");
    CHECK((P(r, "x+y") * P(r, "x-y")) == P(r, "x^2-y^2"));
    RingPtr r2 = parse_ring("ring F2 [x,y]");
    CHECK(P(r2, "x+y").pow(2) == P(r2, "x^2+y^2"));
    RingPtr s = parse_ring("ring QQ [a3,b3,b4,a4,x,y]");
    Polynomial lhs = P(s, "(a3*x+b3*y)*b4 - (a4*x+b4*y)*b3");
    CHECK(lhs == P(s, "(a3*b4 - a4*b3)*x"));
    CHECK(P(r, "1/2*x + 1/3*x") == P(r, "5/6*x"));
  }

  TEST_CASE("degrevlex agrees with an exhaustive sort of degree-two monomials") {
    RingPtr r = parse_ring("ring QQ [x,y,z]");
    MonomialOrder ord = MonomialOrder::degrevlex(3);
    std::vector<std::vector<int>> all;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) all.push_back({a, b, 2 - a - b});
    std::vector<std::vector<int>> expected = all, got = all;
    std::sort(expected.begin(), expected.end(), oracle_grevlex_greater);
    std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return ord.compare(mono(a), mono(b)) > 0; });
    CHECK(got == expected);
    CHECK(ord.compare(mono({0, 2, 0}), mono({1, 0, 1})) > 0);  // y^2 > xz
    std::vector<Monomial> listed = monomials_of_degree(3, 2);
    REQUIRE(listed.size() == expected.size());
    for (std::size_t k = 0; k < listed.size(); ++k) CHECK(listed[k] == mono(expected[k]));
  }

  TEST_CASE("permuted deglex") {
    RingPtr r = parse_ring("ring QQ [x,y,a3,b3,b4,a4,z]");
    auto idx = [&](const char* n) { return r->index_of(n); };
    MonomialOrder ord = MonomialOrder::deglex(
        {idx("a3"), idx("b3"), idx("b4"), idx("a4"), idx("x"), idx("y"), idx("z")});
    CHECK(ord.compare(P(r, "a3*x").lead(ord).m, P(r, "b3*y").lead(ord).m) > 0);
    CHECK(ord.compare(P(r, "x").lead(ord).m, P(r, "x").lead(ord).m) == 0);
  }

  TEST_CASE("order axioms on random monomials") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(0, 3);
    const int n = 5;
    auto rnd = [&]() {
      Monomial m = Monomial::one(n);
      for (int i = 0; i < n; ++i) m.set(i, e(rng));
      return m;
    };
    std::vector<int> perm = {3, 1, 4, 0, 2};
    std::vector<MonomialOrder> ords = {MonomialOrder::degrevlex(n), MonomialOrder::deglex(n),
                                       MonomialOrder::degrevlex(perm), MonomialOrder::deglex(perm),
                                       MonomialOrder::elimination(perm, 2)};
    for (auto& ord : ords) {
      for (int k = 0; k < 300; ++k) {
        Monomial a = rnd(), b = rnd(), c = rnd();
        int ab = ord.compare(a, b);
        CHECK(ab == -ord.compare(b, a));
        CHECK((ab == 0) == (a == b));
        if (ab > 0 && ord.compare(b, c) > 0) CHECK(ord.compare(a, c) > 0);
        if (ab != 0) CHECK((ord.compare(a * c, b * c) > 0) == (ab > 0));
        CHECK(ord.compare(a * c, a) >= 0);
        if (ord.degree_compatible() && a.deg < b.deg) CHECK(ab < 0);
      }
    }
  }

  TEST_CASE("linear changes") {
    RingPtr r = parse_ring("ring QQ [x,y]");
    Polynomial f = P(r, "x*y");
    CHECK(LinearChange::identity(r).apply(f) == f);
    LinearChange phi(r, {{FieldElement(r->field, 1), FieldElement(r->field, 1)},
                         {FieldElement(r->field, 0), FieldElement(r->field, 1)}});
    CHECK(phi.apply(f) == P(r, "x*y + y^2"));
    CHECK_THROWS_AS(LinearChange(r, {{FieldElement(r->field, 1), FieldElement(r->field, 1)},
                                     {FieldElement(r->field, 2), FieldElement(r->field, 2)}}),
                    std::invalid_argument);

    RingPtr s = parse_ring("ring F32003 [x,y,z,w]");
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(0, 32002);
    std::vector<std::vector<FieldElement>> m(4, std::vector<FieldElement>(4));
    for (auto& row : m)
      for (auto& c : row) c = FieldElement(s->field, d(rng));
    LinearChange psi(s, m);
    Polynomial x2 = P(s, "x^2");
    CHECK(psi.inverse().apply(psi.apply(x2)) == x2);
    CHECK(psi.apply(psi.inverse().apply(x2)) == x2);
    for (int k = 0; k < 20; ++k) {
      Polynomial a = random_poly(s, rng, 8, 5), b = random_poly(s, rng, 8, 5);
      CHECK(psi.apply(a + b) == psi.apply(a) + psi.apply(b));
      CHECK(psi.apply(a * b) == psi.apply(a) * psi.apply(b));
      if (a.is_homogeneous() && !a.is_zero()) CHECK(psi.apply(a).degree() == a.degree());
    }
  }

  TEST_CASE("bigrading") {
    RingPtr r = parse_ring("ring F2 [x:(1,0), y:(1,0), a:(0,1), b:(0,1)]");
    REQUIRE(r->bigraded());
    CHECK(*P(r, "x*a + y*b").bidegree() == Bidegree{1, 1});
    CHECK_FALSE(P(r, "x^2 + a").bidegree().has_value());
    std::mt19937_64 rng(5);
    std::vector<std::string> samples = {"x*a", "x^2+y^2", "a*b+b^2", "x*a^2+y*b^2", "y"};
    for (auto& s1 : samples)
      for (auto& s2 : samples) {
        auto b1 = *P(r, s1).bidegree(), b2 = *P(r, s2).bidegree();
        Polynomial prod = P(r, s1) * P(r, s2);
        if (!prod.is_zero()) CHECK(*prod.bidegree() == Bidegree{b1[0] + b2[0], b1[1] + b2[1]});
      }
    CHECK(r->declaration() == "ring F2 [x:(1,0), y:(1,0), a:(0,1), b:(0,1)]");
  }

  TEST_CASE("parser errors carry positions") {
    RingPtr r = parse_ring("ring QQ [x,y]");
    try {
      parse_polynomial(r, "x + q", 3);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse_polynomial(r, "x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(r, "x / y"), ParseError);
    CHECK_THROWS_AS(parse_ring("ring QQ [x,x]"), ParseError);
    CHECK_THROWS_AS(parse_ring("ring GF4 [x]"), ParseError);
    CHECK(parse_polynomial(r, "-(x-y)^2") == P(r, "-x^2 + 2*x*y - y^2"));
    CHECK_THROWS_AS(P(r, "x") + P(parse_ring("ring QQ [x,z]"), "x"), std::invalid_argument);
  }

  TEST_CASE("printing round trips") {
    RingPtr r = parse_ring("ring QQ [x,y,z]");
    Polynomial f = P(r, "-3/2*x^2*y + z - 7");
    CHECK(P(r, f.to_string()) == f);
  }
}
