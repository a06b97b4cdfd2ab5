#include "koszulkit/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include "koszulkit/linalg.hpp"

namespace koszulkit {

// ------------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr r, std::vector<Polynomial> g) : ring(std::move(r)) {
  for (auto& f : g) {
    if (!same_ring(f.ring(), ring) && !f.is_zero())
      throw std::invalid_argument("generator from a different ring");
    if (!f.is_zero()) gens.push_back(f.ring() == ring ? f : f.with_ring(ring));
  }
}

Ideal Ideal::parse(const RingPtr& r, std::string_view text, int line) {
  return Ideal(r, parse_polynomial_list(r, text, line));
}

bool Ideal::is_homogeneous() const {
  for (auto& g : gens)
    if (!g.is_homogeneous()) return false;
  return true;
}

bool Ideal::is_zero() const { return gens.empty(); }

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
  return s + ")";
}

// ---------------------------------------------------------- GroebnerBasis

namespace {

ModuleOrder ideal_order(const MonomialOrder& ord) {
  ModuleOrder m;
  m.mono = ord;
  return m;
}

std::shared_ptr<const GBEngine> make_reducer(const RingPtr& r, const MonomialOrder& ord,
                                             const std::vector<Polynomial>& elems) {
  auto e = std::make_shared<GBEngine>(r, ideal_order(ord));
  std::vector<MVec> vs;
  for (auto& f : elems) vs.push_back(to_mvec(f, 0, e->order()));
  e->load_basis(std::move(vs));
  return e;
}

Polynomial from_mvec(const RingPtr& r, const MVec& v) { return mvec_component(r, v, 0); }

}  // namespace

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  std::shared_ptr<const GBEngine> e = engine ? engine : make_reducer(ring, order, elems);
  return from_mvec(ring, e->reduce(to_mvec(f, 0, e->order()), true));
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (auto& g : elems) out.push_back(g.lead(order).m);
  return out;
}

bool GroebnerBasis::is_unit_ideal() const {
  for (auto& g : elems)
    if (g.lead(order).m.is_one()) return true;
  return false;
}

GroebnerBasis buchberger(const Ideal& I, const MonomialOrder& ord, const GBOptions& opt) {
  GBEngine e(I.ring, ideal_order(ord));
  if (opt.abort_degree >= 0) e.set_abort_degree(opt.abort_degree);
  for (auto& g : I.gens) e.add(to_mvec(g, 0, e.order()));
  e.run(opt.degree_limit < 0 ? GBEngine::kNoLimit : opt.degree_limit);
  GroebnerBasis G;
  G.ring = I.ring;
  G.order = ord;
  if (e.aborted()) {
    for (auto& v : e.basis()) G.elems.push_back(from_mvec(I.ring, v));
    return G;
  }
  e.make_reduced();
  for (auto& v : e.basis()) G.elems.push_back(from_mvec(I.ring, v));
  G.reduced = opt.degree_limit < 0;
  G.engine = make_reducer(I.ring, ord, G.elems);
  return G;
}

GroebnerBasis buchberger(const Ideal& I) {
  return buchberger(I, MonomialOrder::degrevlex(I.ring->nvars()));
}

bool verify_gb(const GroebnerBasis& G) {
  const auto& E = G.elems;
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j) {
      const Term& a = E[i].lead(G.order);
      const Term& b = E[j].lead(G.order);
      Monomial l = a.m.lcm(b.m);
      Polynomial s = E[i].mul_term(l / a.m, b.c) - E[j].mul_term(l / b.m, a.c);
      if (!G.normal_form(s).is_zero()) return false;
    }
  return true;
}

bool is_quadratic_gb(const GroebnerBasis& G) {
  for (auto& g : G.elems)
    if (g.degree() != 2 || !g.is_homogeneous()) return false;
  return !G.elems.empty();
}

bool contains(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) return true;
  return buchberger(I).contains(f);
}

bool is_subset(const Ideal& I, const Ideal& J) {
  if (I.is_zero()) return true;
  GroebnerBasis G = buchberger(J);
  for (auto& f : I.gens)
    if (!G.contains(f)) return false;
  return true;
}

bool ideal_equal(const Ideal& I, const Ideal& J) { return is_subset(I, J) && is_subset(J, I); }

Ideal mingens(const Ideal& I) {
  if (!I.is_homogeneous()) return I;
  std::vector<Polynomial> gens = I.gens;
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });
  GBEngine e(I.ring, ideal_order(MonomialOrder::degrevlex(I.ring->nvars())));
  Ideal out;
  out.ring = I.ring;
  for (auto& g : gens) {
    MVec v = to_mvec(g, 0, e.order());
    e.run(g.degree());
    if (e.reduce(v).empty()) continue;
    out.gens.push_back(g);
    e.add(std::move(v));
  }
  return out;
}

// --------------------------------------------------------- ideal operations

Ideal colon(const Ideal& I, const Polynomial& f) {
  const RingPtr& r = I.ring;
  if (f.is_zero()) return Ideal(r, {Polynomial::constant(r, 1)});
  ModuleOrder ord;
  ord.mono = MonomialOrder::degrevlex(r->nvars());
  ord.pot = true;
  ord.shift = {0, std::max(f.degree(), 0)};
  GBEngine e(r, ord);
  MVec first = to_mvec(f, 0, ord);
  MVec one = to_mvec(Polynomial::constant(r, 1), 1, ord);
  e.add(add_mvec(first, one, ord));
  for (auto& g : I.gens) e.add(to_mvec(g, 0, ord));
  e.run();
  e.make_reduced();
  std::vector<Polynomial> gens;
  for (auto& v : e.basis())
    if (v.front().comp == 1) gens.push_back(mvec_component(r, v, 1));
  Ideal res(r, gens);
  return res.is_homogeneous() ? mingens(res) : res;
}

Ideal colon(const Ideal& I, const Ideal& J) {
  if (J.is_zero()) throw std::invalid_argument("colon by the zero ideal");
  Ideal acc = colon(I, J.gens[0]);
  for (std::size_t k = 1; k < J.gens.size(); ++k) acc = intersect(acc, colon(I, J.gens[k]));
  return acc;
}

namespace {

std::string fresh_name(const RingPtr& r, const std::string& base) {
  std::string n = base;
  for (int k = 0; r->index_of(n) >= 0; ++k) n = base + std::to_string(k);
  return n;
}

}  // namespace

Ideal intersect(const Ideal& I, const Ideal& J) {
  const RingPtr& r = I.ring;
  if (I.is_zero() || J.is_zero()) return Ideal(r, {});
  const int n = r->nvars();
  RingPtr rt = extend_ring(r, {fresh_name(r, "t")}, true);
  std::vector<int> up(n);
  for (int i = 0; i < n; ++i) up[i] = i + 1;
  Polynomial t = Polynomial::variable(rt, 0);
  Polynomial one_minus_t = Polynomial::constant(rt, 1) - t;
  std::vector<Polynomial> gens;
  for (auto& g : I.gens) gens.push_back(t * map_variables(g, rt, up));
  for (auto& h : J.gens) gens.push_back(one_minus_t * map_variables(h, rt, up));
  std::vector<int> perm(n + 1);
  for (int i = 0; i <= n; ++i) perm[i] = i;
  GroebnerBasis G = buchberger(Ideal(rt, gens), MonomialOrder::elimination(perm, 1));
  std::vector<int> down(n + 1, -1);
  for (int i = 0; i < n; ++i) down[i + 1] = i;
  std::vector<Polynomial> out;
  for (auto& g : G.elems) {
    bool has_t = false;
    for (auto& tm : g.terms())
      if (tm.m[0]) has_t = true;
    if (!has_t) out.push_back(map_variables(g, r, down));
  }
  Ideal res(r, out);
  return (I.is_homogeneous() && J.is_homogeneous()) ? mingens(res) : res;
}

Ideal eliminate(const Ideal& I, const std::vector<int>& vars) {
  const RingPtr& r = I.ring;
  const int n = r->nvars();
  std::vector<int> perm = vars;
  std::vector<char> in(n, 0);
  for (int v : vars) in[v] = 1;
  for (int i = 0; i < n; ++i)
    if (!in[i]) perm.push_back(i);
  GroebnerBasis G = buchberger(I, MonomialOrder::elimination(perm, static_cast<int>(vars.size())));
  std::vector<Polynomial> out;
  for (auto& g : G.elems) {
    bool uses = false;
    for (auto& tm : g.terms())
      for (int v : vars)
        if (tm.m[v]) uses = true;
    if (!uses) out.push_back(g);
  }
  return Ideal(r, out);
}

Ideal saturate(const Ideal& I, const Ideal& J) {
  Ideal cur = I;
  for (int guard = 0; guard < 64; ++guard) {
    Ideal next = colon(cur, J);
    if (is_subset(next, cur)) return cur;
    cur = next;
  }
  throw std::runtime_error("saturation did not stabilize");
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> g = I.gens;
  g.insert(g.end(), J.gens.begin(), J.gens.end());
  return Ideal(I.ring, g);
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> g;
  for (auto& a : I.gens)
    for (auto& b : J.gens) g.push_back(a * b);
  return Ideal(I.ring, g);
}

std::vector<Polynomial> degree_part(const Ideal& I, int d) {
  const RingPtr& r = I.ring;
  const int n = r->nvars();
  std::vector<Monomial> mons = monomials_of_degree(n, d);
  std::unordered_map<Monomial, int, MonomialHash> col;
  for (std::size_t k = 0; k < mons.size(); ++k) col[mons[k]] = static_cast<int>(k);
  Echelon ech(r->field);
  for (auto& g : I.gens) {
    if (!g.is_homogeneous()) throw std::invalid_argument("degree_part needs a homogeneous ideal");
    int dg = g.degree();
    if (dg > d) continue;
    for (auto& m : monomials_of_degree(n, d - dg)) {
      SparseRow row;
      for (auto& t : g.terms()) row.push_back({col.at(t.m * m), t.c});
      std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
      ech.insert(row);
    }
  }
  std::vector<Polynomial> out;
  for (auto& row : ech.reduced_rows()) {
    std::vector<Term> ts;
    for (auto& [c, v] : row) ts.push_back({mons[c], v});
    out.push_back(Polynomial::from_terms(r, std::move(ts)));
  }
  return out;
}

// ------------------------------------------------------- G-quadratic search

int configured_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("KOSZULKIT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, hw);
  }
  return hw;
}

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

FieldElement random_scalar(const Field& f, std::mt19937_64& rng) {
  if (f.is_rational()) {
    std::uniform_int_distribution<long> d(-9, 9);
    return FieldElement(f, d(rng));
  }
  std::uniform_int_distribution<long> d(0, static_cast<long>(f.characteristic()) - 1);
  return FieldElement(f, d(rng));
}

LinearChange random_change(const RingPtr& r, std::uint64_t seed, int index) {
  if (index == 0) return LinearChange::identity(r);
  auto rng = trial_rng(seed, 1, static_cast<std::uint64_t>(index));
  const int n = r->nvars();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n));
    for (auto& row : m)
      for (auto& c : row) c = random_scalar(r->field, rng);
    try {
      return LinearChange(r, m);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("could not sample an invertible change of coordinates");
}

std::vector<int> random_perm(int n, std::uint64_t seed, int change, int index) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  if (index == 0) return p;
  auto rng = trial_rng(seed, 2 + static_cast<std::uint64_t>(change), static_cast<std::uint64_t>(index));
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

GQuadraticSearch g_quadratic_search(const Ideal& I, const GQSearchOptions& opt) {
  GQuadraticSearch out;
  out.field = I.ring->field.name();
  for (auto& g : I.gens)
    if (g.degree() != 2 || !g.is_homogeneous()) {
      out.message = "input is not generated by quadrics";
      return out;
    }
  const int n = I.ring->nvars();
  const int per_change = opt.permutations * 2;
  const int total = opt.changes * per_change;
  std::atomic<int> next{0};
  std::atomic<int> best{total};
  std::atomic<int> ran{0};
  std::mutex mu;
  std::optional<GQuadraticWitness> found;

  auto worker = [&]() {
    int cached_change = -1;
    std::optional<LinearChange> phi;
    Ideal moved;
    while (true) {
      int t = next.fetch_add(1);
      if (t >= total || t >= best.load()) return;
      int c = t / per_change, p = (t / 2) % opt.permutations, k = t % 2;
      if (c != cached_change) {
        phi = random_change(I.ring, opt.seed, c);
        std::vector<Polynomial> g;
        for (auto& f : I.gens) g.push_back(phi->apply(f));
        moved = Ideal(I.ring, g);
        cached_change = c;
      }
      std::vector<int> perm = random_perm(n, opt.seed, c, p);
      MonomialOrder ord = k == 0 ? MonomialOrder::degrevlex(perm) : MonomialOrder::deglex(perm);
      GBOptions go;
      go.abort_degree = 3;
      GroebnerBasis G = buchberger(moved, ord, go);
      ++ran;
      if (!G.reduced || !is_quadratic_gb(G)) continue;
      std::lock_guard<std::mutex> lock(mu);
      if (t < best.load()) {
        best = t;
        found = GQuadraticWitness{t, *phi, ord, G};
      }
    }
  };
  int threads = opt.threads > 0 ? opt.threads : configured_threads();
  threads = std::max(1, std::min(threads, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  out.witness = found;
  if (found) {
    out.trials_run = found->trial + 1;
    out.message = "witness found at trial " + std::to_string(found->trial) + " over " + out.field;
  } else {
    out.trials_run = total;
    out.message = "no witness found in " + std::to_string(total) + " trials over " + out.field +
                  " (inconclusive)";
  }
  (void)ran;
  return out;
}

}  // namespace koszulkit
