#include "koszulkit/points.hpp"

#include <algorithm>
#include <stdexcept>

#include "koszulkit/hilbert.hpp"
#include "koszulkit/linalg.hpp"

namespace koszulkit {

namespace {

FieldElement zero(const Field& f) { return FieldElement(f, 0); }
FieldElement one(const Field& f) { return FieldElement(f, 1); }

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly monic(UPoly p) {
  p = upoly_trim(std::move(p));
  if (p.empty()) return p;
  FieldElement inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

UPoly sub(const Field& f, UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), zero(f));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return upoly_trim(std::move(a));
}

UPoly mul(const Field& f, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, zero(f));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero())
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return upoly_trim(std::move(r));
}

// a = q b + r
void divmod(const Field& f, const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  r = upoly_trim(a);
  q.assign(std::max(0, deg(r) - deg(b) + 1), zero(f));
  FieldElement inv = b.back().inverse();
  while (!r.empty() && deg(r) >= deg(b)) {
    int shift = deg(r) - deg(b);
    FieldElement c = r.back() * inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
    r = upoly_trim(std::move(r));
  }
  q = upoly_trim(std::move(q));
}

UPoly rem(const Field& f, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(f, a, b, q, r);
  return r;
}

UPoly quo(const Field& f, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(f, a, b, q, r);
  return q;
}

UPoly derivative(const Field& f, const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * FieldElement(f, static_cast<long>(i)));
  return upoly_trim(std::move(d));
}

FieldElement eval(const Field& f, const UPoly& p, const FieldElement& x) {
  FieldElement acc = zero(f);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly powmod(const Field& f, UPoly base, mpz_class e, const UPoly& m) {
  UPoly result{one(f)};
  base = rem(f, base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem(f, mul(f, result, base), m);
    e >>= 1;
    if (e > 0) base = rem(f, mul(f, base, base), m);
  }
  return result;
}

void split_linear(const Field& f, const UPoly& g, std::mt19937_64& rng, std::vector<FieldElement>& out) {
  if (deg(g) <= 0) return;
  if (deg(g) == 1) {
    out.push_back(-g[0] / g[1]);
    return;
  }
  const mpz_class half = (mpz_class(f.characteristic()) - 1) / 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    UPoly shift{random_element(f, rng), one(f)};
    UPoly h = sub(f, powmod(f, shift, half, g), UPoly{one(f)});
    h = upoly_gcd(h, g);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      split_linear(f, h, rng, out);
      split_linear(f, quo(f, g, h), rng, out);
      return;
    }
  }
  throw std::runtime_error("root splitting did not converge");
}

std::vector<FieldElement> roots_mod_p(const Field& f, const UPoly& p0) {
  UPoly p = monic(p0);
  std::vector<FieldElement> out;
  if (deg(p) <= 0) return out;
  const std::uint32_t q = f.characteristic();
  if (q <= 4096) {
    for (std::uint32_t a = 0; a < q; ++a) {
      FieldElement x(f, static_cast<long>(a));
      if (eval(f, p, x).is_zero()) out.push_back(x);
    }
    return out;
  }
  // product of the distinct linear factors: gcd(p, s^q - s)
  UPoly xq = powmod(f, UPoly{zero(f), one(f)}, mpz_class(q), p);
  UPoly g = upoly_gcd(sub(f, xq, UPoly{zero(f), one(f)}), p);
  std::mt19937_64 rng(0x5eed + q);
  split_linear(f, g, rng, out);
  std::sort(out.begin(), out.end(),
            [](const FieldElement& a, const FieldElement& b) { return a.residue() < b.residue(); });
  return out;
}

// a/b with a = b r mod m and |a|, b below sqrt(m/2)
std::optional<mpq_class> rational_reconstruction(const mpz_class& r, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class qq = r0 / r1;
    mpz_class r2 = r0 - qq * r1, t2 = t0 - qq * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpq_class v(r1, t1);
  v.canonicalize();
  return v;
}

std::vector<FieldElement> roots_rational(const Field& f, const UPoly& p0) {
  std::vector<FieldElement> out;
  UPoly p = monic(p0);
  if (deg(p) <= 0) return out;
  // squarefree part
  UPoly g = upoly_gcd(p, derivative(f, p));
  if (deg(g) > 0) p = monic(quo(f, p, g));
  if (p[0].is_zero()) {
    out.push_back(zero(f));
    p.erase(p.begin());
    if (deg(p) <= 0) return out;
  }
  // integer coefficients
  mpz_class den = 1;
  for (auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> z;
  for (auto& c : p) z.push_back(mpz_class(c.rational() * den));
  mpz_class lim = 2 * std::max(abs(z.front()), abs(z.back()));
  lim = lim * lim + 1;
  auto eval_z = [&](const mpz_class& x, const mpz_class& mod) {
    mpz_class acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = (acc * x + *it) % mod;
    return acc;
  };
  auto eval_dz = [&](const mpz_class& x, const mpz_class& mod) {
    mpz_class acc = 0;
    for (std::size_t i = z.size() - 1; i >= 1; --i) acc = (acc * x + z[i] * static_cast<unsigned long>(i)) % mod;
    return acc;
  };
  std::uint32_t prime = 1000003;
  for (int tries = 0; tries < 50; ++tries) {
    do prime += 2;
    while (!is_prime(prime));
    Field fp = Field::prime(prime);
    if (mpz_class(z.back() % prime) == 0) continue;
    UPoly pp;
    for (auto& c : z) pp.push_back(FieldElement(fp, mpq_class(c)));
    if (deg(upoly_gcd(pp, derivative(fp, pp))) > 0) continue;
    for (auto& r : roots_mod_p(fp, pp)) {
      mpz_class x = r.residue(), mod = prime;
      while (mod <= lim) {
        mod *= mod;
        mpz_class fx = eval_z(x, mod), dfx = eval_dz(x, mod), inv;
        if (fx < 0) fx += mod;
        if (dfx < 0) dfx += mod;
        if (!mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t())) break;
        x = (x - fx * inv) % mod;
        if (x < 0) x += mod;
      }
      auto v = rational_reconstruction(x, mod);
      if (v && eval(f, p, FieldElement(f, *v)).is_zero()) out.push_back(FieldElement(f, *v));
    }
    std::sort(out.begin(), out.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.rational() < b.rational(); });
    return out;
  }
  throw std::runtime_error("no suitable prime for rational roots");
}

bool is_unit(const Ideal& J) {
  for (auto& g : J.gens)
    if (g.is_constant() && !g.is_zero()) return true;
  return buchberger(J).is_unit_ideal();
}

Polynomial random_linear(const RingPtr& r, std::mt19937_64& rng) {
  std::vector<FieldElement> c;
  for (int i = 0; i < r->nvars(); ++i) c.push_back(random_element(r->field, rng));
  return linear_form(r, c);
}

void normalize(Point& p) {
  for (auto& c : p)
    if (!c.is_zero()) {
      FieldElement inv = c.inverse();
      for (auto& d : p) d *= inv;
      return;
    }
}

// binary form g(t0, tj) as a polynomial in s = tj / t0
UPoly dehomogenize(const Polynomial& g, int j) {
  const Field& f = g.ring()->field;
  UPoly u;
  for (auto& tm : g.terms()) {
    int e = tm.m[j];
    if (static_cast<int>(u.size()) <= e) u.resize(e + 1, zero(f));
    u[e] += tm.c;
  }
  return upoly_trim(std::move(u));
}

void enumerate(const Ideal& full, const Ideal& K, int j, Point& vals, std::vector<Point>& out) {
  const RingPtr& r = K.ring;
  const int n = r->nvars();
  if (j == n) {
    for (auto& g : full.gens) {
      std::vector<Polynomial> img;
      for (auto& v : vals) img.push_back(Polynomial::constant(r, v));
      if (!g.substitute(img).is_zero()) return;
    }
    out.push_back(vals);
    return;
  }
  std::vector<int> others;
  for (int v = 1; v < n; ++v)
    if (v != j) others.push_back(v);
  Ideal E = eliminate(K, others);
  UPoly g;
  for (auto& p : E.gens) g = upoly_gcd(g, dehomogenize(p, j));
  if (g.empty()) return;  // not zero dimensional along this coordinate
  for (auto& s : univariate_roots(r->field, g)) {
    vals[j] = s;
    Ideal K2 = K;
    K2.gens.push_back(Polynomial::variable(r, j) - Polynomial::variable(r, 0) * s);
    enumerate(full, K2, j + 1, vals, out);
  }
}

}  // namespace

UPoly upoly_trim(UPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

UPoly upoly_gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = upoly_trim(a0), b = upoly_trim(b0);
  if (a.empty()) return monic(b);
  const Field f = a.back().field();
  while (!b.empty()) {
    UPoly r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::vector<FieldElement> univariate_roots(const Field& f, const UPoly& p) {
  if (upoly_trim(p).empty()) throw std::invalid_argument("roots of the zero polynomial");
  return f.is_rational() ? roots_rational(f, p) : roots_mod_p(f, p);
}

FieldElement random_element(const Field& f, std::mt19937_64& rng, bool nonzero) {
  for (;;) {
    FieldElement c;
    if (f.is_rational()) {
      c = FieldElement(f, static_cast<long>(rng() % 41) - 20);
    } else {
      c = FieldElement(f, static_cast<long>(rng() % f.characteristic()));
    }
    if (!nonzero || !c.is_zero()) return c;
  }
}

std::vector<Point> projective_points(const Ideal& J0, std::mt19937_64& rng) {
  const RingPtr& r = J0.ring;
  const int n = r->nvars();
  if (!J0.is_homogeneous()) throw std::invalid_argument("projective_points needs a homogeneous ideal");
  if (is_unit(J0)) return {};
  Ideal J = J0;
  int d = hilbert_of_quotient(J).dim;
  while (d > 1) {
    J.gens.push_back(random_linear(r, rng));
    d = hilbert_of_quotient(J).dim;
  }
  if (d == 0) return {};
  // generic coordinates, so that t0 is nonzero on every point and each
  // coordinate separates them
  std::vector<std::vector<FieldElement>> m;
  for (;;) {
    m.assign(n, {});
    for (auto& row : m)
      for (int k = 0; k < n; ++k) row.push_back(random_element(r->field, rng));
    try {
      LinearChange probe(r, m);
      break;
    } catch (const std::invalid_argument&) {
    }
  }
  LinearChange ch(r, m);
  Ideal Jc(r, {});
  for (auto& g : J.gens) Jc.gens.push_back(ch.apply(g));
  Point vals(n, FieldElement(r->field, 0));
  vals[0] = FieldElement(r->field, 1);
  std::vector<Point> local;
  enumerate(Jc, Jc, 1, vals, local);
  std::vector<Point> out;
  for (auto& p : local) {
    Point q(n, FieldElement(r->field, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) q[i] += m[i][k] * p[k];
    normalize(q);
    out.push_back(q);
  }
  return out;
}

std::vector<Point> linear_kernel(const Field& f, int b, const std::vector<std::vector<FieldElement>>& m) {
  std::vector<SparseRow> cols(b);
  for (std::size_t e = 0; e < m.size(); ++e)
    for (int j = 0; j < b; ++j)
      if (!m[e][j].is_zero()) cols[j].push_back({static_cast<int>(e), m[e][j]});
  std::vector<Point> out;
  for (auto& v : kernel_of_columns(f, cols)) {
    Point p(b, FieldElement(f, 0));
    for (auto& [k, c] : v) p[k] = c;
    out.push_back(p);
  }
  return out;
}

std::vector<Point> bilinear_points(const Field& f, int a, int b,
                                   const std::vector<std::vector<std::vector<FieldElement>>>& eqs,
                                   std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (int i = 0; i < a; ++i) names.push_back("s" + std::to_string(i));
  for (int j = 0; j < b; ++j) names.push_back("t" + std::to_string(j));
  RingPtr u = make_ring(f, names);
  Ideal J(u, {});
  for (auto& e : eqs) {
    Polynomial p(u);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j)
        if (!e[i][j].is_zero())
          p += Polynomial::variable(u, i) * Polynomial::variable(u, a + j) * e[i][j];
    if (!p.is_zero()) J.gens.push_back(p);
  }
  Ideal S(u, {}), T(u, {});
  for (int i = 0; i < a; ++i) S.gens.push_back(Polynomial::variable(u, i));
  for (int j = 0; j < b; ++j) T.gens.push_back(Polynomial::variable(u, a + j));
  std::vector<int> tvars, map(a + b, -1);
  for (int j = 0; j < b; ++j) tvars.push_back(a + j);
  for (int i = 0; i < a; ++i) map[i] = i;
  RingPtr sr = make_ring(f, std::vector<std::string>(names.begin(), names.begin() + a));
  Ideal E(sr, {});
  if (!J.gens.empty()) {
    J = saturate(saturate(J, S), T);
    if (is_unit(J)) return {};
    for (auto& g : eliminate(J, tvars).gens) E.gens.push_back(map_variables(g, sr, map));
  }
  return projective_points(E, rng);
}

}  // namespace koszulkit
