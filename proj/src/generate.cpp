#include "koszulkit/generate.hpp"

#include <random>

#include "koszulkit/hilbert.hpp"
#include "koszulkit/points.hpp"

namespace koszulkit {

namespace {

struct Sampler {
  RingPtr r;
  std::mt19937_64 rng;

  Polynomial lin() {
    std::vector<FieldElement> c(r->nvars());
    for (auto& x : c) x = random_element(r->field, rng);
    return linear_form(r, c);
  }
  Polynomial quad() {
    Polynomial q(r);
    for (auto& m : monomials_of_degree(r->nvars(), 2)) q += Polynomial::monomial(r, m, random_element(r->field, rng));
    return q;
  }
};

int hgt(const std::vector<Polynomial>& g) { return height(Ideal(g[0].ring(), g)); }

IntPoly trimmed(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool regular_quadrics(const Ideal& base, const std::vector<Polynomial>& qs) {
  Ideal full = base;
  for (auto& q : qs) full.gens.push_back(q);
  IntPoly want = hilbert_of_quotient(base).kpoly;
  for (std::size_t i = 0; i < qs.size(); ++i) want = ipoly_mul(want, {1, 0, -1});
  return trimmed(want) == trimmed(hilbert_of_quotient(full).kpoly);
}

using W = std::vector<Witness>;

// samples witnesses, returns false when a condition fails
bool sample(const std::string& form, Sampler& s, Template& t, W& w) {
  auto L = [&](std::initializer_list<const char*> names) {
    for (auto n : names) w.push_back({n, s.lin()});
  };
  auto v = [&](const char* n) -> const Polynomial& { return witness(w, n); };
  if (form == "ht1") {
    t = Template::Ht1;
    L({"x", "a1", "a2", "a3", "a4"});
    return hgt({v("a1"), v("a2"), v("a3"), v("a4")}) == 4;
  }
  if (form == "2i-cross" || form == "2i-square") {
    t = form == "2i-cross" ? Template::Cross : Template::Square;
    L({"x", "y", "z", "w"});
    return hgt({v("x"), v("y"), v("z"), v("w")}) == 4;
  }
  if (form == "2i-span" || form == "2ii") {
    t = Template::XSpan;
    L({"x", "y", "z", "w"});
    if (hgt({v("x"), v("y"), v("z"), v("w")}) != 4) return false;
    Ideal K(s.r, {v("x") * v("y"), v("x") * v("z"), v("x") * v("w")});
    if (form == "2ii") {
      w.push_back({"q", s.quad()});
      return ideal_equal(colon(K, v("q")), K);
    }
    w.push_back({"q", v("y") * s.lin() + v("z") * s.lin() + v("w") * s.lin()});
    return !contains(Ideal(s.r, {v("x")}), v("q")) && !contains(K, v("q"));
  }
  if (form == "2iii") {
    t = Template::OneLin;
    L({"x", "y", "z", "a3", "b3", "a4", "b4"});
    Polynomial q3 = v("a3") * v("x") + v("b3") * v("y"), q4 = v("a4") * v("x") + v("b4") * v("y");
    Polynomial d = v("a3") * v("b4") - v("a4") * v("b3");
    return hgt({v("x"), v("y")}) == 2 && hgt({q3, q4}) == 2 && hgt({v("z"), q3, q4, d}) == 3;
  }
  if (form == "2iv-(a)") {
    t = Template::FourA;
    L({"x", "y", "a3", "b3", "a4", "b4"});
    return hgt({v("x"), v("b3"), v("b4")}) == 3 && hgt({v("x"), v("y"), v("a3"), v("b3")}) == 4;
  }
  if (form == "2iv-(b)") {
    t = Template::FourB;
    L({"x", "y", "a2", "b3", "a4", "b4"});
    return hgt({v("x"), v("b3"), v("b4")}) == 3 && hgt({v("y"), v("a2"), v("a4")}) == 3 &&
           hgt({v("x"), v("y"), v("a2"), v("b3")}) == 4;
  }
  if (form == "2iv-(c)") {
    t = Template::FourC;
    L({"x", "y", "a3", "b3", "a4", "b4"});
    Polynomial q3 = v("a3") * v("x") + v("b3") * v("y"), q4 = v("a4") * v("x") + v("b4") * v("y");
    return hgt({v("x"), v("b3"), v("b4")}) == 3 && hgt({v("a3"), v("a4"), v("b3"), v("b4")}) == 4 &&
           hgt({q3, q4}) == 2;
  }
  if (form == "2iv-(d)") {
    t = Template::FourD;
    L({"x", "y", "a1", "a2", "b3", "b4"});
    if (hgt({v("a1"), v("a2")}) != 2 || hgt({v("b3"), v("b4")}) != 2) return false;
    Ideal A(s.r, {v("a1") * v("x"), v("a2") * v("x")}), B(s.r, {v("b3") * v("y"), v("b4") * v("y")});
    return ideal_equal(intersect(A, B), ideal_product(A, B));
  }
  if (form == "ht3-i") {
    t = Template::ThreeI;
    L({"x", "z", "w"});
    w.push_back({"q3", s.quad()});
    w.push_back({"q4", s.quad()});
    if (hgt({v("x"), v("z"), v("w")}) != 3) return false;
    return regular_quadrics(Ideal(s.r, {v("x") * v("z"), v("x") * v("w")}), {v("q3"), v("q4")});
  }
  if (form == "ht3-ii") {
    t = Template::ThreeII;
    L({"m11", "m12", "m21", "m22", "m31", "m32"});
    w.push_back({"q4", s.quad()});
    auto g = template_generators(t, w);
    g.pop_back();
    if (hgt(g) != 2) return false;
    return regular_quadrics(Ideal(s.r, g), {v("q4")});
  }
  if (form == "ht4-CI") {
    t = Template::CI;
    for (int i = 1; i <= 4; ++i) w.push_back({"q" + std::to_string(i), s.quad()});
    return hgt(template_generators(t, w)) == 4;
  }
  throw std::invalid_argument("unknown form " + form);
}

int expected_height(const std::string& form) {
  if (form == "ht1") return 1;
  if (form.rfind("ht3", 0) == 0) return 3;
  if (form == "ht4-CI") return 4;
  return 2;
}

}  // namespace

const std::vector<std::string>& generator_forms() {
  static const std::vector<std::string> f = {"ht1",     "2i",      "2ii",     "2iii",  "2iv-(a)", "2iv-(b)",
                                             "2iv-(c)", "2iv-(d)", "ht3-i",   "ht3-ii", "ht4-CI"};
  return f;
}

int default_variables(const std::string& form) {
  if (form == "2iv-(d)") return 6;
  if (form == "2iii" || form == "ht1") return 5;
  return 4;
}

GeneratedIdeal generate_form(const std::string& form, const RingPtr& r, std::uint64_t seed) {
  std::string f = form;
  if (f == "2i") {
    static const char* shapes[] = {"2i-cross", "2i-square", "2i-span"};
    f = shapes[seed % 3];
  }
  Sampler s{r, std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 17)};
  GeneratedIdeal out;
  out.form = f.rfind("2i-", 0) == 0 ? "2i" : f;
  for (int attempt = 1; attempt <= 200; ++attempt) {
    W w;
    Template t = Template::CI;
    if (!sample(f, s, t, w)) continue;
    Ideal I(r, template_generators(t, w));
    bool zero = false;
    for (auto& q : I.gens) zero = zero || q.is_zero();
    if (zero || mingens(I).gens.size() != I.gens.size()) continue;
    if (height(I) != expected_height(out.form)) continue;
    out.t = t;
    out.witnesses = std::move(w);
    out.ideal = std::move(I);
    out.attempts = attempt;
    return out;
  }
  throw std::runtime_error("no witnesses for " + form + " satisfied the conditions over " + r->field.name() +
                           " in " + std::to_string(r->nvars()) + " variables");
}

GeneratedIdeal generate_form(const std::string& form, const Field& f, std::uint64_t seed) {
  std::string base = form.rfind("2i-", 0) == 0 ? "2i" : form;
  std::vector<std::string> names;
  for (int i = 1; i <= default_variables(base); ++i) names.push_back("x" + std::to_string(i));
  return generate_form(form, make_ring(f, names), seed);
}

}  // namespace koszulkit
