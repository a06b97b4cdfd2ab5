#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "koszulkit/hilbert.hpp"
#include "koszulkit/resolution.hpp"

using namespace kt;

namespace {

PolyMatrix mat(const RingPtr& r, const std::vector<std::vector<std::string>>& rows, std::vector<int> tgt) {
  std::vector<std::vector<Polynomial>> cols(rows[0].size());
  for (auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) cols[c].push_back(P(r, row[c]));
  return PolyMatrix::from_columns(r, FreeModule{std::move(tgt)}, cols);
}

// every column of A lies in the column span of B
bool span_contains(const PolyMatrix& B, const PolyMatrix& A) {
  MatrixSolver s(B);
  for (int c = 0; c < A.cols(); ++c)
    if (!s.solve(A.column(c))) return false;
  return true;
}

void check_resolution(const Ideal& I, const Resolution& res) {
  CHECK(res.complex.is_complex());
  CHECK_FALSE(res.complex.has_unit_entries());
  CHECK(res.betti.alternating_sum() == hilbert_of_quotient(I).kpoly);
}

Polynomial random_quadric(const RingPtr& r, std::mt19937_64& rng, int density) {
  std::uniform_int_distribution<long> c(1, 30);
  std::uniform_int_distribution<int> pick(0, 99);
  Polynomial f(r);
  for (auto& m : monomials_of_degree(r->nvars(), 2))
    if (pick(rng) < density) f += Polynomial::monomial(r, m, FieldElement(r->field, c(rng)));
  return f;
}

const char* kTableIII = "x*z, y*z, a3*x+b3*y, a4*x+b4*y";

}  // namespace

TEST_SUITE("resolution") {
  TEST_CASE("syzygies of small matrices") {
    RingPtr r = parse_ring("ring QQ [x,y]");
    PolyMatrix s = syzygies(PolyMatrix::row(Id(r, "x, y")));
    REQUIRE(s.cols() == 1);
    CHECK(s.source.twists == std::vector<int>{2});
    CHECK((PolyMatrix::row(Id(r, "x, y")) * s).is_zero());
    CHECK(s.at(0, 0) * P(r, "x") == -(s.at(1, 0) * P(r, "y")));
    CHECK(syzygies(PolyMatrix::identity(r, FreeModule{{0, 1}})).cols() == 0);
  }

  TEST_CASE("syzygies of the one-linear-syzygy family") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,a3,b3,a4,b4]");
    PolyMatrix phi1 = PolyMatrix::row(Id(r, kTableIII));
    PolyMatrix phi2 = mat(r,
                          {{"y", "a3", "a4", "0"},
                           {"-x", "b3", "b4", "0"},
                           {"0", "-z", "0", "a4*x+b4*y"},
                           {"0", "0", "-z", "-(a3*x+b3*y)"}},
                          {2, 2, 2, 2});
    CHECK((phi1 * phi2).is_zero());
    PolyMatrix s = syzygies(phi1);
    CHECK((phi1 * s).is_zero());
    CHECK(s.cols() == 4);
    CHECK(span_contains(s, phi2));
    CHECK(span_contains(phi2, s));
    // the last entry of the second syzygy carries a minus sign
    PolyMatrix phi3 = mat(r, {{"a3*b4-a4*b3"}, {"-(a4*x+b4*y)"}, {"a3*x+b3*y"}, {"-z"}}, {3, 3, 3, 4});
    CHECK((phi2 * phi3).is_zero());
    PolyMatrix wrong = mat(r, {{"a3*b4-a4*b3"}, {"-(a4*x+b4*y)"}, {"a3*x+b3*y"}, {"z"}}, {3, 3, 3, 4});
    CHECK_FALSE((phi2 * wrong).is_zero());
  }

  TEST_CASE("Betti tables of standard examples") {
    RingPtr r = parse_ring("ring QQ [x,y,z,w]");
    Ideal five = Id(r, "x*y, x*w, (x-y)*z, z^2, x^2+z*w");
    Resolution a = minimal_resolution(five, 4);
    CHECK(a.betti == BettiTable::from_rows({{1}, {0, 5, 4}, {0, 0, 4, 6, 2}}));
    check_resolution(five, a);

    RingPtr s = parse_ring("ring F32003 [x,y,z,a3,b3,a4,b4]");
    Ideal t3 = Id(s, kTableIII);
    Resolution b = minimal_resolution(t3, 7);
    CHECK(b.betti == BettiTable::from_rows({{1}, {0, 4, 3}, {0, 0, 1, 1}}));
    check_resolution(t3, b);

    RingPtr u = parse_ring("ring F32003 [x0,x1,x2,x3,x4]");
    Ideal h1 = Id(u, "x0*x1, x0*x2, x0*x3, x0*x4");
    Resolution c = minimal_resolution(h1, 5);
    CHECK(c.betti == BettiTable::from_rows({{1}, {0, 4, 6, 4, 1}}));
    check_resolution(h1, c);

    Resolution ci = minimal_resolution(Id(r, "x^2, y^2"), 4);
    CHECK(ci.betti == BettiTable::from_rows({{1}, {0, 2}, {0, 0, 1}}));
    Resolution trunc = minimal_resolution(five, 2);
    CHECK(trunc.complex.length() == 2);
  }

  TEST_CASE("the four height-two families") {
    std::mt19937_64 rng(5);
    RingPtr r = parse_ring("ring F32003 [x,y,z,w,u,v]");
    Ideal t1 = Id(r, "x*z, x*w, y*z, y*w");
    CHECK(minimal_resolution(t1, 6).betti == BettiTable::from_rows({{1}, {0, 4, 4, 1}}));
    Polynomial q = random_quadric(r, rng, 60);
    Ideal t2(r, {P(r, "x*y"), P(r, "x*z"), P(r, "x*w"), q});
    CHECK(minimal_resolution(t2, 6).betti == BettiTable::from_rows({{1}, {0, 4, 3, 1}, {0, 0, 3, 3, 1}}));
    RingPtr s = parse_ring("ring F32003 [x,y,a1,a2,b3,b4]");
    Ideal t4 = Id(s, "a1*x, a2*x, b3*y, b4*y");
    Resolution d = minimal_resolution(t4, 6);
    CHECK(d.betti == BettiTable::from_rows({{1}, {0, 4, 2}, {0, 0, 4, 4, 1}}));
    check_resolution(t4, d);
  }

  TEST_CASE("Betti tables do not depend on the monomial order") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
      RingPtr r = parse_ring(trial % 2 ? "ring F32003 [a,b,c,d,e]" : "ring F101 [a,b,c,d]");
      std::vector<Polynomial> g;
      while (g.size() < 3) {
        Polynomial f = random_quadric(r, rng, 25);
        if (!f.is_zero()) g.push_back(f);
      }
      Ideal I(r, g);
      Resolution a = minimal_resolution(I, r->nvars());
      Resolution b = minimal_resolution(I, r->nvars(), MonomialOrder::deglex(r->nvars()));
      CHECK(a.betti == b.betti);
      check_resolution(I, a);
    }
  }

  TEST_CASE("minimalize removes unit entries") {
    RingPtr r = parse_ring("ring QQ [x,y]");
    // the generator xy and the relation e3 - y e1 are redundant
    PolyMatrix d1 = PolyMatrix::row(Ideal(r, {P(r, "x"), P(r, "y"), P(r, "x*y")}));
    PolyMatrix d2 = mat(r, {{"-y", "y"}, {"x", "0"}, {"0", "-1"}}, {1, 1, 2});
    FreeComplex F;
    F.ring = r;
    F.modules = {d1.target, d1.source, d2.source};
    F.maps = {d1, d2};
    REQUIRE(F.is_complex());
    REQUIRE(F.has_unit_entries());
    FreeComplex G = minimalize(F);
    CHECK(G.is_complex());
    CHECK_FALSE(G.has_unit_entries());
    CHECK(G.betti() == BettiTable::from_rows({{1, 2, 1}}));
    CHECK(G.d(1).cols() == 2);
  }

  TEST_CASE("chain map lifting and mapping cones") {
    RingPtr r = parse_ring("ring F32003 [x,y,a3,b3,a4,b4]");
    Polynomial q4 = P(r, "a4*x+b4*y");
    Ideal J = Id(r, "x^2, b3*x, a3*x+b3*y");
    Ideal C = colon(J, q4);
    Resolution bottom = minimal_resolution(J, 6);
    Resolution top = minimal_resolution(C, 6);
    FreeComplex topt = twist(top.complex, 2);
    PolyMatrix f0(r, FreeModule{{0}}, FreeModule{{2}});
    f0.at(0, 0) = q4;
    auto L = lift_chain_map(f0, topt, bottom.complex);
    for (int i = 1; i < static_cast<int>(L.size()); ++i) {
      if (i <= bottom.complex.length())
        CHECK((bottom.complex.d(i) * L[i]).entries == (L[i - 1] * topt.d(i)).entries);
      CHECK(L[i].is_homogeneous());
    }
    FreeComplex cone = mapping_cone(L, topt, bottom.complex);
    CHECK(cone.is_complex());
    FreeComplex m = minimalize(cone);
    CHECK(m.is_complex());
    BettiTable iv = BettiTable::from_rows({{1}, {0, 4, 2}, {0, 0, 4, 4, 1}});
    CHECK(m.betti() == iv);
    CHECK(minimal_resolution(ideal_sum(J, Ideal(r, {q4})), 6).betti == iv);

    RingPtr s = parse_ring("ring F32003 [x,y,a2,b3,a4,b4]");
    Polynomial p4 = P(s, "a4*x+b4*y");
    Ideal Jb = Id(s, "x*y, a2*x, b3*y");
    Resolution bb = minimal_resolution(Jb, 6);
    FreeComplex tb = twist(minimal_resolution(colon(Jb, p4), 6).complex, 2);
    PolyMatrix g0(s, FreeModule{{0}}, FreeModule{{2}});
    g0.at(0, 0) = p4;
    auto Lb = lift_chain_map(g0, tb, bb.complex);
    FreeComplex coneb = minimalize(mapping_cone(Lb, tb, bb.complex));
    CHECK(coneb.is_complex());
    CHECK(coneb.betti() == iv);
  }

  TEST_CASE("trivial chain maps") {
    RingPtr r = parse_ring("ring QQ [x,y,z]");
    Resolution k = minimal_resolution(Id(r, "x, y, z"), 3);
    PolyMatrix id0 = PolyMatrix::identity(r, k.complex.modules[0]);
    auto L = lift_chain_map(id0, k.complex, k.complex);
    for (int i = 0; i <= k.complex.length(); ++i)
      CHECK(L[i].entries == PolyMatrix::identity(r, k.complex.modules[i]).entries);
    PolyMatrix z0(r, k.complex.modules[0], k.complex.modules[0]);
    auto Z = lift_chain_map(z0, k.complex, k.complex);
    for (auto& m : Z) CHECK(m.is_zero());
    FreeComplex cone = mapping_cone(Z, k.complex, k.complex);
    CHECK(cone.is_complex());
    BettiTable sum = k.betti;
    for (auto& [key, v] : k.betti.entries()) sum.add(key.first + 1, key.second, v);
    CHECK(cone.betti() == sum);
    // a map that does not lift
    PolyMatrix bad(r, FreeModule{{0}}, FreeModule{{0}});
    bad.at(0, 0) = Polynomial::constant(r, 1);
    Resolution xy = minimal_resolution(Id(r, "x*y"), 3);
    CHECK_THROWS_AS(lift_chain_map(bad, k.complex, xy.complex), std::runtime_error);
  }

  TEST_CASE("Buchsbaum-Eisenbud criterion") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,a3,b3,a4,b4]");
    auto build = [&](const std::string& z) {
      std::string q3 = "(a3*x+b3*y)", q4 = "(a4*x+b4*y)";
      FreeComplex F;
      F.ring = r;
      PolyMatrix p1 = mat(r, {{"x*" + z, "y*" + z, q3, q4}}, {0});
      PolyMatrix p2 = mat(r,
                          {{"y", "a3", "a4", "0"},
                           {"-x", "b3", "b4", "0"},
                           {"0", "-" + z, "0", q4},
                           {"0", "0", "-" + z, "-" + q3}},
                          {2, 2, 2, 2});
      PolyMatrix p3 = mat(r, {{"a3*b4-a4*b3"}, {"-" + q4}, {q3}, {"-" + z}}, {3, 3, 3, 4});
      F.modules = {FreeModule{{0}}, FreeModule{{2, 2, 2, 2}}, FreeModule{{3, 3, 3, 4}}, FreeModule{{5}}};
      p2.source = F.modules[2];
      p3.source = F.modules[3];
      F.maps = {p1, p2, p3};
      return F;
    };
    BEReport good = buchsbaum_eisenbud_check(build("z"));
    CHECK(good.acyclic);
    CHECK(good.expected_rank == std::vector<int>{0, 1, 3, 1});
    CHECK(good.minor_height[3] == 3);
    BEReport bad = buchsbaum_eisenbud_check(build("0"));
    CHECK_FALSE(bad.acyclic);
    CHECK(bad.minor_height[3] <= 2);

    RingPtr s = parse_ring("ring QQ [x,y]");
    CHECK(buchsbaum_eisenbud_check(minimal_resolution(Id(s, "x, y"), 2).complex).acyclic);
    // x, x: a complex that is not exact
    FreeComplex K = minimal_resolution(Id(s, "x, y"), 2).complex;
    K.maps[0].at(0, 1) = P(s, "x");
    K.maps[1] = mat(s, {{"-x"}, {"x"}}, {1, 1});
    K.modules[2] = K.maps[1].source;
    CHECK_FALSE(buchsbaum_eisenbud_check(K).acyclic);
  }

  TEST_CASE("annihilators of Ext") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,a3,b3,a4,b4]");
    Ideal I = Id(r, kTableIII);
    Resolution res = minimal_resolution(I, 7);
    Ideal a2 = ann_ext(res, 2);
    Ideal a3 = ann_ext(res, 3);
    CHECK(ideal_equal(a2, Id(r, "x, y")));
    CHECK(ideal_equal(a3, Id(r, "z, a3*x+b3*y, a4*x+b4*y, a3*b4-a4*b3")));
    CHECK(is_subset(ideal_product(a2, a3), I));
    CHECK(ideal_equal(ann_ext(res, 1), Id(r, "1")));
    CHECK(ideal_equal(ann_ext(res, 0), Id(r, "1")));
    CHECK(height(a3) >= 3);
    CHECK_THROWS(ann_ext(res, -1));

    RingPtr s = parse_ring("ring QQ [x,y]");
    Ideal ci = Id(s, "x^2, y^2");
    CHECK(ideal_equal(ann_ext(ci, 2), ci));
    CHECK(ideal_equal(ann_ext(ci, 1), Id(s, "1")));
  }

  TEST_CASE("minors") {
    RingPtr r = parse_ring("ring QQ [a,b,c,d]");
    PolyMatrix m = mat(r, {{"a", "b"}, {"c", "d"}}, {0, 0});
    CHECK(ideal_equal(minors(m, 2), Id(r, "a*d-b*c")));
    CHECK(ideal_equal(minors(m, 1), Id(r, "a,b,c,d")));
    CHECK(minors(m, 3).is_zero());
    CHECK(ideal_equal(minors(m, 0), Id(r, "1")));
  }
}
