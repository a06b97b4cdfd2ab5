#include "koszulkit/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace koszulkit {

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

IntPoly ipoly_one_minus_t_pow(int k) {
  IntPoly r{1};
  for (int i = 0; i < k; ++i) r = ipoly_mul(r, {1, -1});
  return r;
}

std::string ipoly_to_string(const IntPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) {
    long long c = p[k];
    if (!c) continue;
    std::string mag = std::to_string(c < 0 ? -c : c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (k == 0)
      s += mag;
    else
      s += (mag == "1" ? "" : mag + "*") + (k == 1 ? "t" : "t^" + std::to_string(k));
  }
  return s;
}

namespace {

using Gens = std::vector<Monomial>;

Gens minimalize(Gens g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
  Gens out;
  for (auto& m : g) {
    bool red = false;
    for (auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// K-polynomial of S/(gens), gens minimal
IntPoly kpoly(const Gens& gens) {
  if (gens.empty()) return {1};
  for (auto& g : gens)
    if (g.is_one()) return {};
  // pairwise coprime generators: product of (1 - t^deg)
  bool coprime = true;
  for (std::size_t a = 0; a < gens.size() && coprime; ++a)
    for (std::size_t b = a + 1; b < gens.size() && coprime; ++b)
      if (!gens[a].coprime(gens[b])) coprime = false;
  if (coprime) {
    IntPoly r{1};
    for (auto& g : gens) {
      IntPoly f(g.deg + 1, 0);
      f[0] = 1;
      f[g.deg] -= 1;
      r = ipoly_mul(r, f);
    }
    return r;
  }
  // pivot on the variable occurring in the most generators of degree >= 2
  const int n = gens[0].n;
  int best = -1, count = 0;
  for (int i = 0; i < n; ++i) {
    int c = 0;
    for (auto& g : gens)
      if (g[i] && g.deg > 1) ++c;
    if (c > count) {
      count = c;
      best = i;
    }
  }
  Monomial x = Monomial::var(n, best);
  Gens plus{x}, quot;
  for (auto& g : gens) {
    if (!g[best]) plus.push_back(g);
    quot.push_back(g[best] ? g / x : g);
  }
  // K(M) = K(M + x) + t K(M : x)
  IntPoly a = kpoly(minimalize(plus));
  IntPoly b = kpoly(minimalize(quot));
  b.insert(b.begin(), 0);
  return add(a, b);
}

// smallest set of variables meeting every generator's support
int min_cover(const Gens& gens, std::vector<char>& chosen, int size, int best) {
  if (size >= best) return best;
  const Monomial* open = nullptr;
  for (auto& g : gens) {
    bool hit = false;
    for (int i = 0; i < g.n && !hit; ++i)
      if (g[i] && chosen[i]) hit = true;
    if (!hit && (!open || g.deg < open->deg)) open = &g;
  }
  if (!open) return size;
  for (int i = 0; i < open->n; ++i) {
    if (!(*open)[i]) continue;
    chosen[i] = 1;
    best = std::min(best, min_cover(gens, chosen, size + 1, best));
    chosen[i] = 0;
  }
  return best;
}

}  // namespace

std::vector<long long> HilbertData::function(int upto) const {
  std::vector<long long> h(upto + 1, 0);
  if (numerator.empty()) return h;
  // numerator / (1-t)^dim, coefficient of t^d is sum_k num[k] C(d-k+dim-1, dim-1)
  for (int d = 0; d <= upto; ++d) {
    long long s = 0;
    for (int k = 0; k < static_cast<int>(numerator.size()) && k <= d; ++k) {
      long long binom = 1;
      if (dim == 0) {
        binom = (d == k) ? 1 : 0;
      } else {
        long long top = d - k + dim - 1;
        for (int j = 1; j <= dim - 1; ++j) binom = binom * (top - j + 1) / j;
      }
      s += numerator[k] * binom;
    }
    h[d] = s;
  }
  return h;
}

HilbertData hilbert_from_monomials(int nvars, const std::vector<Monomial>& gens_in) {
  Gens gens = minimalize(gens_in);
  HilbertData h;
  h.nvars = nvars;
  h.kpoly = kpoly(gens);
  if (h.kpoly.empty()) {
    h.dim = -1;
    h.codim = nvars + 1;
    h.e = 0;
    return h;
  }
  std::vector<char> chosen(nvars, 0);
  int cover = min_cover(gens, chosen, 0, nvars + 1);
  h.codim = cover;
  h.dim = nvars - cover;
  // divide out (1-t) as often as possible
  IntPoly p = h.kpoly;
  int c = 0;
  while (true) {
    long long v = 0;
    for (auto x : p) v += x;
    if (v != 0) break;
    // synthetic division by (1 - t): q_k = sum_{j<=k} p_j
    IntPoly q(p.size() - 1, 0);
    long long acc = 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      acc += p[k];
      q[k] = acc;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    p = q;
    ++c;
  }
  if (c != h.codim)
    throw std::logic_error("codimension from the K-polynomial disagrees with the combinatorial count");
  h.numerator = p;
  for (auto x : p) h.e += x;
  return h;
}

HilbertData hilbert_of_quotient(const Ideal& I) {
  if (!I.is_homogeneous()) throw std::invalid_argument("Hilbert series needs a homogeneous ideal");
  const int n = I.ring->nvars();
  if (I.is_zero()) return hilbert_from_monomials(n, {});
  GroebnerBasis G = buchberger(I);
  return hilbert_from_monomials(n, G.leading_monomials());
}

int height(const Ideal& I) { return hilbert_of_quotient(I).codim; }

bool is_regular_sequence_mod(const Ideal& I, const std::vector<Polynomial>& L) {
  HilbertData a = hilbert_of_quotient(I);
  std::vector<Polynomial> g = I.gens;
  g.insert(g.end(), L.begin(), L.end());
  HilbertData b = hilbert_of_quotient(Ideal(I.ring, g));
  return b.kpoly == ipoly_mul(a.kpoly, ipoly_one_minus_t_pow(static_cast<int>(L.size())));
}

}  // namespace koszulkit
