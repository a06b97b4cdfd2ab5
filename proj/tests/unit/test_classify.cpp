#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "koszulkit/classify.hpp"
#include "koszulkit/generate.hpp"
#include "koszulkit/hilbert.hpp"
#include "koszulkit/points.hpp"

using namespace kt;

namespace {

const BettiTable kTableI = BettiTable::from_rows({{1}, {0, 4, 4, 1}});
const BettiTable kTableII = BettiTable::from_rows({{1}, {0, 4, 3, 1}, {0, 0, 3, 3, 1}});
const BettiTable kTableIII = BettiTable::from_rows({{1}, {0, 4, 3}, {0, 0, 1, 1}});
const BettiTable kTableIV = BettiTable::from_rows({{1}, {0, 4, 2}, {0, 0, 4, 4, 1}});

const BettiTable& table_of(const std::string& form) {
  if (form == "2i") return kTableI;
  if (form == "2ii") return kTableII;
  if (form == "2iii") return kTableIII;
  return kTableIV;
}

bool regenerates(const ClassificationReport& r) {
  return ideal_equal(Ideal(r.input.ring, template_generators(*r.form, r.witnesses)), r.input);
}

Ideal random_change(const Ideal& I, std::mt19937_64& rng) {
  const int n = I.ring->nvars();
  while (true) {
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n));
    for (auto& row : m)
      for (auto& x : row) x = random_element(I.ring->field, rng);
    try {
      LinearChange phi(I.ring, m);
      Ideal out(I.ring, {});
      for (auto& g : I.gens) out.gens.push_back(phi.apply(g));
      return out;
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("crossed planes are case 2i with a certificate") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w]");
    auto rep = classify(Id(r, "x*z, x*w, y*z, y*w"));
    CHECK(rep.matched_case == "2i");
    CHECK(rep.g == 4);
    CHECK(rep.hgt == 2);
    CHECK(rep.e == 2);
    CHECK(rep.betti == kTableI);
    CHECK(rep.form == Template::Cross);
    CHECK(regenerates(rep));
    CHECK(rep.verdict == Verdict::CertifiedKoszul);
    REQUIRE(rep.certificate.lg);
    CHECK(rep.certificate.lg->valid());
    CHECK(verify_certificate(*rep.certificate.lg, rep.input));
  }

  TEST_CASE("bigraded model ideal is subcase (c) and not Koszul") {
    for (const char* f : {"F32003", "QQ", "F2"}) {
      CAPTURE(f);
      RingPtr r = parse_ring(std::string("ring ") + f + " [x,y,a,b]");
      auto rep = classify(Id(r, "b*x, x*y, a*x-b*y, x^2-y^2"));
      CHECK(rep.matched_case == "2iv-(c)");
      CHECK(rep.betti == kTableIV);
      CHECK(regenerates(rep));
      CHECK(rep.verdict == Verdict::CertifiedNonKoszul);
      CHECK(rep.certificate.kind == "appendix-obstruction");
      REQUIRE(rep.certificate.tor_position);
      std::pair<int, int> want = std::string(f) == "F2" ? std::pair{4, 6} : std::pair{5, 7};
      CHECK(*rep.certificate.tor_position == want);
      // the witnesses span the expected linear forms
      const Polynomial& x = witness(rep.witnesses, "x");
      CHECK(height(Ideal(r, {x, witness(rep.witnesses, "b3"), witness(rep.witnesses, "b4")})) == 3);
    }
  }

  TEST_CASE("transversal products in ten variables are subcase (d)") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w,u,v,t,s,p,m]");
    std::mt19937_64 rng(5);
    auto lin = [&] {
      std::vector<FieldElement> c(10);
      for (auto& e : c) e = random_element(r->field, rng);
      return linear_form(r, c);
    };
    Polynomial x = lin(), y = lin(), a1 = lin(), a2 = lin(), b3 = lin(), b4 = lin();
    Ideal I(r, {a1 * x, a2 * x, b3 * y, b4 * y});
    auto rep = classify(I);
    CHECK(rep.matched_case == "2iv-(d)");
    CHECK(regenerates(rep));
    CHECK(rep.verdict == Verdict::CertifiedKoszul);
    REQUIRE(rep.certificate.lg);
    CHECK(rep.certificate.lg->quadratic);
    CHECK(rep.certificate.lg->regular);
    CHECK(rep.certificate.lg->specializes);
    CHECK(rep.certificate.lg->lift_ring->nvars() == 16);
  }

  TEST_CASE("shared-variable transversal witnesses lift to a fourteen-variable ring") {
    RingPtr r = parse_ring("ring F32003 [x,y,a,b,c,d,e,f]");
    auto rep = classify(Id(r, "x*a+x*y, x*b, y*c, y*d+y*x"));
    CHECK(rep.matched_case == "2iv-(d)");
    REQUIRE(rep.certificate.lg);
    CHECK(rep.certificate.lg->valid());
    CHECK(rep.certificate.lg->lift_ring->nvars() == 14);
  }

  TEST_CASE("linear syzygy counts") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w,u]");
    CHECK(linear_syzygy_matrix(Id(r, "x*u, y*u, x*z, y^2+x*w")).cols() == 3);
    CHECK(linear_syzygy_matrix(Id(r, "x^2, y^2, z^2, w^2")).cols() == 0);
    auto g = generate_form("2iii", Field::prime(32003), 3);
    CHECK(linear_syzygy_matrix(g.ideal).cols() == 3);
    auto h = generate_form("2iv-(d)", Field::prime(32003), 3);
    CHECK(linear_syzygy_matrix(h.ideal).cols() == 2);
    auto M = linear_syzygy_matrix(g.ideal);
    for (int j = 0; j < M.cols(); ++j) {
      Polynomial s(g.ideal.ring);
      for (int i = 0; i < M.rows(); ++i) s += M.at(i, j) * g.ideal.gens[i];
      CHECK(s.is_zero());
    }
  }

  TEST_CASE("generalized zeros") {
    SUBCASE("scroll matrix is 1-generic") {
      RingPtr r = parse_ring("ring F7 [x,y,z,w]");
      PolyMatrix M = PolyMatrix::from_columns(r, FreeModule{{0, 0}},
                                              {{P(r, "x"), P(r, "y")}, {P(r, "y"), P(r, "z")}, {P(r, "z"), P(r, "w")}});
      CHECK_FALSE(find_generalized_zero(M).has_value());
      // brute force over the F_7 grid
      int hits = 0;
      for (int u0 = 0; u0 < 7; ++u0)
        for (int u1 = 0; u1 < 7; ++u1)
          for (int v = 0; v < 343; ++v) {
            if ((u0 == 0 && u1 == 0) || v == 0) continue;
            int vv[3] = {v % 7, (v / 7) % 7, v / 49};
            Polynomial s(r);
            for (int j = 0; j < 3; ++j)
              s += (M.at(0, j) * FieldElement(r->field, u0) + M.at(1, j) * FieldElement(r->field, u1)) *
                   FieldElement(r->field, vv[j]);
            hits += s.is_zero();
          }
      CHECK(hits == 0);
    }
    SUBCASE("literal zero entry") {
      RingPtr r = parse_ring("ring F32003 [x,y,z]");
      PolyMatrix M = PolyMatrix::from_columns(r, FreeModule{{0, 0, 0}},
                                              {{P(r, "x"), P(r, "-y"), P(r, "z")}, {Polynomial(r), P(r, "x"), P(r, "y")}});
      auto z = find_generalized_zero(M);
      REQUIRE(z);
      CHECK_FALSE(z->whole_row);
      CHECK(z->u[0].is_one());
      CHECK(z->v[1].is_one());
    }
    SUBCASE("subcase (a) has a generalized zero row") {
      auto g = generate_form("2iv-(a)", Field::prime(32003), 1);
      auto M = linear_syzygy_matrix(g.ideal);
      auto z = find_generalized_zero(M);
      REQUIRE(z);
      CHECK(z->whole_row);
      for (int j = 0; j < M.cols(); ++j) {
        Polynomial s(g.ideal.ring);
        for (int i = 0; i < M.rows(); ++i) s += M.at(i, j) * z->u[i];
        CHECK(s.is_zero());
      }
    }
    SUBCASE("nonzero pairing found by the bilinear solve") {
      RingPtr r = parse_ring("ring F32003 [x,y,z]");
      PolyMatrix M = PolyMatrix::from_columns(r, FreeModule{{0, 0}}, {{P(r, "x"), P(r, "y")}, {P(r, "y"), P(r, "x")}});
      auto z = find_generalized_zero(M);
      REQUIRE(z);
      Polynomial s(r);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += M.at(i, j) * (z->u[i] * z->v[j]);
      CHECK(s.is_zero());
    }
  }

  TEST_CASE("subcases (a) to (d) on concrete witnesses") {
    RingPtr r = parse_ring("ring F32003 [x,y,a,b,c,d]");
    struct Row {
      const char* ideal;
      char sub;
      bool row;
    };
    for (auto [s, sub, row] : {Row{"x^2, a*x, b*x+a*y, c*x+d*y", 'a', true}, Row{"x*y, a*x, b*y, c*x+d*y", 'b', true},
                               Row{"a*x, b*x, c*x+a*y, d*x+b*y", 'c', false}, Row{"a*x, b*x, c*y, d*y", 'd', false}}) {
      CAPTURE(s);
      Ideal I = Id(r, s);
      auto m = match_form_2iv(I);
      REQUIRE(m.found);
      CHECK(m.subcase == sub);
      CHECK(m.zero_row == row);
      CHECK(ideal_equal(Ideal(r, template_generators(sub == 'a'   ? Template::FourA
                                                     : sub == 'b' ? Template::FourB
                                                     : sub == 'c' ? Template::FourC
                                                                  : Template::FourD,
                                                     m.witnesses)),
                        I));
      auto rep = classify(I);
      CHECK(rep.matched_case == std::string("2iv-(") + sub + ")");
      CHECK(rep.verdict == (sub == 'd' ? Verdict::CertifiedKoszul : Verdict::CertifiedNonKoszul));
      if (sub == 'a' || sub == 'b') {
        CHECK(rep.certificate.kind == "first-syzygy");
        CHECK(rep.certificate.syzygy_witnesses.size() >= 1);
      }
    }
  }

  TEST_CASE("lifting certificate for form 2iii in three variables") {
    RingPtr r = parse_ring("ring F32003 [x,y,z]");
    Polynomial x = P(r, "x"), y = P(r, "y"), z = P(r, "z");
    std::vector<Witness> w = {{"x", x}, {"y", y}, {"z", z}, {"a3", x}, {"b3", z}, {"a4", y}, {"b4", y}};
    Ideal I(r, template_generators(Template::OneLin, w));
    CHECK(height(Ideal(r, {z, P(r, "x^2+y*z"), P(r, "x*y+y^2"), P(r, "x*y-y*z")})) == 3);
    auto rep = classify(I);
    CHECK(rep.matched_case == "2iii");
    CHECK(rep.betti == kTableIII);
    auto cert = lg_quadratic_certificate(I, Template::OneLin, w);
    CHECK(cert.lift_ring->nvars() == 10);
    CHECK(cert.order.kind == OrderKind::Deglex);
    CHECK(cert.gb.elems.size() == 4);
    CHECK(cert.valid());
    CHECK(verify_certificate(cert, I));
  }

  TEST_CASE("forms without a Koszul template refuse a lifting certificate") {
    RingPtr r = parse_ring("ring F32003 [x,y,a,b,c,d]");
    auto rep = classify(Id(r, "x*y, a*x, b*y, c*x+d*y"));
    CHECK_THROWS_AS(lg_quadratic_certificate(rep), ClassificationError);
  }

  TEST_CASE("height one, height three, complete intersections") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w,u]");
    auto a = classify(Id(r, "x*y, x*z, x*w, x*u"));
    CHECK(a.matched_case == "ht1");
    CHECK(a.verdict == Verdict::CertifiedKoszul);
    auto b = classify(Id(r, "x*z, x*w, y^2+u^2, z*w+u^2"));
    CHECK(b.matched_case == "ht3-i");
    CHECK(b.verdict == Verdict::CertifiedKoszul);
    auto c = classify(Id(r, "x*z-y^2, x*w-y*z, y*w-z^2, u^2"));
    CHECK(c.matched_case == "ht3-ii");
    CHECK(c.verdict == Verdict::CertifiedKoszul);
    auto d = classify(Id(r, "x^2, y^2, z^2, w^2"));
    CHECK(d.matched_case == "ht4-CI");
    CHECK(d.verdict == Verdict::CertifiedKoszul);
    auto e = classify(Id(r, "x^2, y*z"));
    CHECK(e.matched_case == "CI");
    for (auto* rep : {&a, &b, &c, &d, &e}) CHECK(regenerates(*rep));
  }

  TEST_CASE("height two with a foreign Betti table") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w]");
    auto rep = classify(Id(r, "x^2, y^2+x*z, y*w, y*z"));
    CHECK(rep.matched_case == "no-Koszul-table");
    CHECK(rep.verdict == Verdict::CertifiedNonKoszul);
    CHECK(rep.betti == BettiTable::from_rows({{1}, {0, 4, 1}, {0, 0, 7, 7, 2}}));
    for (int t = 0; t < 4; ++t) CHECK(rep.betti != koszul_height_two_tables()[t]);
  }

  TEST_CASE("rejections") {
    RingPtr r = parse_ring("ring QQ [x,y,z,w]");
    try {
      classify(Id(r, "x*y, x*w, (x-y)*z, z^2, x^2+z*w"));
      FAIL("accepted five quadrics");
    } catch (const ClassificationError& e) {
      CHECK(std::string(e.what()).find("5 minimal quadric generators") != std::string::npos);
    }
    CHECK_THROWS_AS(classify(Id(r, "x, y^2")), ClassificationError);
    CHECK_THROWS_AS(classify(Id(r, "x^3, y^2")), ClassificationError);
    CHECK_THROWS_AS(classify(Id(r, "x^2+y")), ClassificationError);
  }

  TEST_CASE("generated witnesses classify back and have their tables") {
    for (const char* field : {"F32003", "QQ", "F3"}) {
      Field f = Field::parse(field);
      for (auto& form : generator_forms()) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          CAPTURE(field);
          CAPTURE(form);
          CAPTURE(seed);
          auto g = generate_form(form, f, seed);
          auto rep = classify(g.ideal);
          CHECK(rep.matched_case == form);
          CHECK(regenerates(rep));
          if (form.rfind("2i", 0) == 0) CHECK(rep.betti == table_of(form));
          bool koszul = form != "2iv-(a)" && form != "2iv-(b)" && form != "2iv-(c)";
          CHECK(rep.verdict == (koszul ? Verdict::CertifiedKoszul : Verdict::CertifiedNonKoszul));
        }
      }
    }
  }

  TEST_CASE("generator is deterministic") {
    auto a = generate_form("2iii", Field::prime(32003), 1);
    auto b = generate_form("2iii", Field::prime(32003), 1);
    CHECK(a.ideal.to_string() == b.ideal.to_string());
    auto c = generate_form("2iii", Field::prime(32003), 2);
    CHECK(a.ideal.to_string() != c.ideal.to_string());
  }

  TEST_CASE("classification survives linear changes of coordinates") {
    std::mt19937_64 rng(11);
    for (auto& form : generator_forms()) {
      CAPTURE(form);
      auto g = generate_form(form, Field::prime(32003), 7);
      auto a = classify(g.ideal);
      auto b = classify(random_change(g.ideal, rng));
      CHECK(a.matched_case == b.matched_case);
      CHECK(a.verdict == b.verdict);
    }
  }

  TEST_CASE("point finder") {
    Field q = Field::rationals();
    // (2s - 1)(s + 3)
    UPoly p = {FieldElement(q, -3), FieldElement(q, 5), FieldElement(q, 2)};
    auto roots = univariate_roots(q, p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == FieldElement(q, -3));
    CHECK(roots[1] == FieldElement(q, mpq_class(1, 2)));
    // s^2 - 2 has no rational roots
    CHECK(univariate_roots(q, {FieldElement(q, -2), FieldElement(q, 0), FieldElement(q, 1)}).empty());
    Field f = Field::prime(32003);
    auto fr = univariate_roots(f, {FieldElement(f, -6), FieldElement(f, 1), FieldElement(f, 1)});
    REQUIRE(fr.size() == 2);
    CHECK(fr[0].residue() == 2);
    CHECK(fr[1].residue() == 32000);

    RingPtr r = parse_ring("ring F32003 [s,t,u]");
    std::mt19937_64 rng(3);
    auto pts = projective_points(Id(r, "s*t - u^2, s - t"), rng);
    // points (1:1:1) and (1:1:-1)
    REQUIRE(pts.size() == 2);
    for (auto& pt : pts) {
      CHECK(pt[0].is_one());
      CHECK(pt[1].is_one());
      CHECK((pt[2] * pt[2]).is_one());
    }
  }
}
