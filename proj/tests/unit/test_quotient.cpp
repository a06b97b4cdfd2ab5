#include "doctest.h"
#include "helpers.hpp"
#include "koszulkit/hilbert.hpp"
#include "koszulkit/quotient.hpp"

using namespace kt;

namespace {

const char* kBigraded = "[x:(1,0),y:(1,0),a:(0,1),b:(0,1)]";
const char* kSymIdeal = "b*x, x*y, a*x-b*y, x^2-y^2";

RingPtr sym_ring(const std::string& field) { return parse_ring("ring " + field + " " + kBigraded); }

// sum_i (-1)^i dim F_{i,j} = dim M_j for j inside the window
void check_euler(const QuotientRing& Q, const TruncatedResolution& T, const std::vector<long long>& target) {
  for (int j = 0; j <= std::min(T.hom_bound, T.degree_bound); ++j) {
    long long s = 0;
    for (int i = 0; i <= T.hom_bound; ++i)
      for (auto& k : T.degrees[i])
        if (k.total() <= j) s += (i % 2 ? -1 : 1) * Q.hilbert(j - k.total());
    CHECK(s == target[j]);
  }
}

}  // namespace

TEST_SUITE("quotient") {
  TEST_CASE("standard monomial bases") {
    RingPtr r = parse_ring("ring QQ [x,y,z,w]");
    Ideal I = Id(r, "x*y, x*w, (x-y)*z, z^2, x^2+z*w");
    QuotientRing Q(I);
    auto h = hilbert_of_quotient(I).function(6);
    for (int d = 0; d <= 6; ++d) CHECK(Q.hilbert(d) == h[d]);
    CHECK(Q.nf_monomial(Monomial::var(4, 0, 3)).size() <= 1);

    RingPtr s = sym_ring("F32003");
    QuotientRing B(Id(s, kSymIdeal));
    CHECK(B.bigraded());
    for (int n = 0; n <= 5; ++n) CHECK(B.dim({0, n}) == n + 1);
    for (int n = 0; n <= 5; ++n) CHECK(B.dim({1, n}) == 2);
    CHECK(B.dim({2, 0}) == 1);
    for (int p = 2; p <= 5; ++p)
      for (int q = (p == 2 ? 1 : 0); q <= 4; ++q) CHECK(B.dim({p, q}) == 0);
    CHECK_THROWS(QuotientRing(Id(s, "x + a")));
  }

  TEST_CASE("periodic resolution over k[x]/(x^2)") {
    RingPtr r = parse_ring("ring F7 [x]");
    QuotientRing Q(Id(r, "x^2"));
    TruncatedResolution T = resolve_over_quotient(Q, residue_field(Q), 6, 6);
    for (int i = 0; i <= 6; ++i) {
      CHECK(T.betti().get(i, i) == 1);
      CHECK(T.rank(i) == 1);
    }
    KoszulVerdict v = is_koszul_up_to(Q, 6);
    CHECK(v.linear_so_far);
    CHECK(v.to_string() == "linear-so-far");
    CHECK(froberg_consistency(Q, v, 6).holds);
  }

  TEST_CASE("Koszul examples stay linear") {
    RingPtr r = parse_ring("ring QQ [x,y,z,w]");
    QuotientRing Q(Id(r, "x*y, x*w, (x-y)*z, z^2, x^2+z*w"));
    KoszulVerdict v = is_koszul_up_to(Q, 4);
    CHECK(v.linear_so_far);
    FrobergResult f = froberg_consistency(Q, v, 4);
    CHECK(f.applicable);
    CHECK(f.holds);
    std::vector<long long> delta(6, 0);
    delta[0] = 1;
    check_euler(Q, v.resolution, delta);

    RingPtr s = parse_ring("ring F32003 [x,y]");
    QuotientRing C(Id(s, "x^2, y^2"));
    CHECK(is_koszul_up_to(C, 5).linear_so_far);
    CHECK(froberg_consistency(C, 5).holds);
  }

  TEST_CASE("a non-quadratic ring is detected") {
    RingPtr r = parse_ring("ring F101 [x,y]");
    QuotientRing Q(Id(r, "x^3"));
    KoszulVerdict v = is_koszul_up_to(Q, 3);
    CHECK_FALSE(v.linear_so_far);
    CHECK(v.i == 2);
    CHECK(v.j == 3);
    CHECK_FALSE(froberg_consistency(Q, v, 3).applicable);
  }

  TEST_CASE("order independence") {
    RingPtr r = parse_ring("ring F32003 [x,y,z,w]");
    Ideal I = Id(r, "x*z, x*w, y*z, y*w");
    QuotientRing A(I);
    QuotientRing B(I, MonomialOrder::deglex(4));
    TruncatedResolution ta = resolve_over_quotient(A, residue_field(A), 4, 5);
    TruncatedResolution tb = resolve_over_quotient(B, residue_field(B), 4, 5);
    CHECK(ta.betti() == tb.betti());
    CHECK(ta.betti().total(4) == 58);
    CHECK(ta.betti().total(3) == 24);
  }

  TEST_CASE("resolution of (a, b) over the bigraded symmetric algebra") {
    RingPtr r = sym_ring("F32003");
    Ideal I = Id(r, kSymIdeal);
    QuotientRing Q(I);
    QModule M = cyclic_module(Q, Id(r, "a, b"));
    TruncatedResolution T = resolve_over_quotient(Q, M, 5, 6);
    std::vector<int> ranks{1, 2, 3, 6, 11, 20};
    for (int i = 0; i <= 5; ++i) CHECK(T.rank(i) == ranks[i]);
    CHECK_FALSE(first_nonlinear(T.betti()));
    for (int i = 1; i <= 5; ++i) {
      PolyMatrix d = T.differential(r, i);
      for (auto& row : d.entries)
        for (auto& e : row) CHECK((e.is_zero() || e.degree() == 1));
      if (i >= 2) {
        PolyMatrix dd = T.differential(r, i - 1) * d;
        for (auto& row : dd.entries)
          for (auto& e : row) CHECK(Q.normal_form(e).is_zero());
      }
    }
    // single-graded run on the same ring gives the totalized answer
    QuotientRing S(I, std::nullopt, false);
    TruncatedResolution U = resolve_over_quotient(S, cyclic_module(S, Id(r, "a, b")), 5, 6);
    CHECK(U.betti() == T.betti());
  }

  TEST_CASE("the quadratic syzygy depends on the characteristic") {
    RingPtr r2 = sym_ring("F2");
    QuotientRing Q2(Id(r2, kSymIdeal));
    TruncatedResolution T2 = resolve_over_quotient(Q2, cyclic_module(Q2, Id(r2, "a, b")), 5, 6);
    CHECK(T2.bigraded_betti().count({5, 4, 2}) == 1);
    auto p2 = first_nonlinear(T2.betti());
    REQUIRE(p2);
    CHECK(p2->first == 5);
    CHECK(p2->second == 6);

    RingPtr r = sym_ring("F32003");
    QuotientRing Q(Id(r, kSymIdeal));
    TruncatedResolution T = resolve_over_quotient(Q, cyclic_module(Q, Id(r, "a, b")), 6, 7);
    auto p = first_nonlinear(T.betti());
    REQUIRE(p);
    CHECK(p->first == 6);
    CHECK(p->second == 7);
    CHECK(T.bigraded_betti().count({6, 5, 2}) == 1);
  }

  TEST_CASE("first syzygy criterion") {
    RingPtr r = parse_ring("ring F32003 [x,y,a3,b3,a4,b4]");
    Ideal Ia = Id(r, "x^2, b3*x, a3*x+b3*y, a4*x+b4*y");
    FirstSyzygyResult a = first_syzygy_criterion(Ia);
    CHECK_FALSE(a.passes);
    CHECK(a.linear_syzygies == 2);
    CHECK(a.witnesses.size() == 1);
    std::vector<Polynomial> col5{Polynomial(r), P(r, "-(a3*b4-a4*b3)"), P(r, "b3*b4"), P(r, "-b3^2")};
    PolyMatrix user = PolyMatrix::from_columns(
        r, FreeModule{{2, 2, 2, 2}},
        {{P(r, "b3"), P(r, "-x"), P(r, "0"), P(r, "0")},
         {P(r, "a3"), P(r, "y"), P(r, "-x"), P(r, "0")},
         {P(r, "a4*x+b4*y"), P(r, "0"), P(r, "0"), P(r, "-x^2")},
         {P(r, "0"), P(r, "a4*x+b4*y"), P(r, "0"), P(r, "-b3*x")},
         col5,
         {P(r, "0"), P(r, "0"), P(r, "a4*x+b4*y"), P(r, "-(a3*x+b3*y)")}});
    FirstSyzygyResult au = first_syzygy_criterion(Ia, user);
    CHECK_FALSE(au.passes);
    REQUIRE(au.witnesses.size() == 1);
    CHECK(au.witnesses[0] == col5);

    RingPtr s = parse_ring("ring F32003 [x,y,a2,b3,a4,b4]");
    FirstSyzygyResult b = first_syzygy_criterion(Id(s, "x*y, a2*x, b3*y, a4*x+b4*y"));
    CHECK_FALSE(b.passes);
    CHECK(b.witnesses.size() == 1);

    RingPtr t = parse_ring("ring QQ [x,y,z,w]");
    CHECK(first_syzygy_criterion(Id(t, "x^2, y^2, z^2, w^2")).passes);
    CHECK(first_syzygy_criterion(Id(t, "x*z, x*w, y*z, y*w")).passes);
    CHECK_THROWS(first_syzygy_criterion(Id(t, "x^3")));
  }
}
