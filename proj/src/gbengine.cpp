#include "koszulkit/gbengine.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszulkit {

int ModuleOrder::compare(const Monomial& a, int ca, const Monomial& b, int cb) const {
  if (pot) {
    if (ca != cb) return ca < cb ? 1 : -1;
    return mono.compare(a, b);
  }
  int da = a.deg + comp_shift(ca), db = b.deg + comp_shift(cb);
  if (mono.degree_compatible() && da != db) return da > db ? 1 : -1;
  int c = mono.compare(a, b);
  if (c) return c;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

MVec sort_mvec(std::vector<MTerm> terms, const ModuleOrder& ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const MTerm& a, const MTerm& b) { return ord.compare(a, b) > 0; });
  MVec out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
      out.back().c += t.c;
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

MVec to_mvec(const Polynomial& f, int comp, const ModuleOrder& ord) {
  std::vector<MTerm> ts;
  ts.reserve(f.size());
  for (auto& t : f.terms()) ts.push_back({t.m, comp, t.c});
  return sort_mvec(std::move(ts), ord);
}

MVec add_mvec(const MVec& a, const MVec& b, const ModuleOrder& ord) {
  MVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a[i], b[j]);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      FieldElement s = a[i].c + b[j].c;
      if (!s.is_zero()) r.push_back({a[i].m, a[i].comp, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

MVec scale_mvec(const MVec& a, const Monomial& m, const FieldElement& c) {
  MVec r;
  if (c.is_zero()) return r;
  r.reserve(a.size());
  for (auto& t : a) r.push_back({t.m * m, t.comp, t.c * c});
  return r;
}

Polynomial mvec_component(const RingPtr& r, const MVec& v, int comp) {
  std::vector<Term> ts;
  for (auto& t : v)
    if (t.comp == comp) ts.push_back({t.m, t.c});
  return Polynomial::from_terms(r, std::move(ts));
}

int mvec_degree(const MVec& v, const ModuleOrder& ord) {
  if (v.empty()) return GBEngine::kNoLimit;
  int d = ord.degree(v.front());
  for (auto& t : v) d = std::max(d, ord.degree(t));
  return d;
}

bool mvec_homogeneous(const MVec& v, const ModuleOrder& ord) {
  for (auto& t : v)
    if (ord.degree(t) != ord.degree(v.front())) return false;
  return true;
}

// ------------------------------------------------------------------ engine

namespace {

bool is_integer(const FieldElement& c) { return c.rational().get_den() == 1; }

FieldElement q_of(const mpz_class& z) { return FieldElement(Field::rationals(), mpq_class(z)); }

// dst = p*dst[0..] with dst[pos] cancelled against q * t * g (g's lead matches dst[pos])
void reduce_step(MVec& h, std::size_t pos, const FieldElement& p, const MVec& g, const Monomial& t,
                 const FieldElement& q, const ModuleOrder& ord) {
  MVec r;
  r.reserve(h.size() + g.size());
  bool scale = !p.is_one();
  for (std::size_t k = 0; k < pos; ++k) r.push_back(scale ? MTerm{h[k].m, h[k].comp, h[k].c * p} : h[k]);
  std::size_t i = pos + 1, j = 1;
  FieldElement nq = -q;
  while (i < h.size() && j < g.size()) {
    Monomial gm = g[j].m * t;
    int c = ord.compare(h[i].m, h[i].comp, gm, g[j].comp);
    if (c > 0) {
      r.push_back(scale ? MTerm{h[i].m, h[i].comp, h[i].c * p} : h[i]);
      ++i;
    } else if (c < 0) {
      r.push_back({gm, g[j].comp, g[j].c * nq});
      ++j;
    } else {
      FieldElement s = (scale ? h[i].c * p : h[i].c) + g[j].c * nq;
      if (!s.is_zero()) r.push_back({gm, g[j].comp, s});
      ++i;
      ++j;
    }
  }
  for (; i < h.size(); ++i) r.push_back(scale ? MTerm{h[i].m, h[i].comp, h[i].c * p} : h[i]);
  for (; j < g.size(); ++j) r.push_back({g[j].m * t, g[j].comp, g[j].c * nq});
  h.swap(r);
}

// multipliers (p, q) with p*a - q*b = 0 for leading coefficients a (of h) and b (of g)
void multipliers(bool rational, const FieldElement& a, const FieldElement& b, FieldElement& p,
                 FieldElement& q) {
  if (rational && is_integer(a) && is_integer(b)) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.rational().get_num_mpz_t(), b.rational().get_num_mpz_t());
    mpz_class pb = b.rational().get_num() / g, qa = a.rational().get_num() / g;
    if (pb < 0) {
      pb = -pb;
      qa = -qa;
    }
    p = q_of(pb);
    q = q_of(qa);
    return;
  }
  p = FieldElement(a.field(), 1);
  q = a / b;
}

}  // namespace

GBEngine::GBEngine(RingPtr r, ModuleOrder ord)
    : ring_(std::move(r)), ord_(std::move(ord)), rational_(ring_->field.is_rational()) {
  if (static_cast<int>(ord_.mono.perm.size()) != ring_->nvars())
    throw std::invalid_argument("monomial order size does not match the ring");
}

void GBEngine::normalize(MVec& v) const {
  if (v.empty()) return;
  if (!rational_) {
    if (v.front().c.is_one()) return;
    FieldElement inv = v.front().c.inverse();
    for (auto& t : v) t.c *= inv;
    return;
  }
  mpz_class den = 1, num = 0;
  for (auto& t : v) {
    const mpq_class& q = t.c.rational();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  for (auto& t : v) {
    mpz_class z = t.c.rational().get_num() * (den / t.c.rational().get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), z.get_mpz_t());
  }
  if (v.front().c.rational() < 0) num = -num;
  mpq_class f(den, num);
  f.canonicalize();
  if (f == 1) return;
  FieldElement fe(Field::rationals(), f);
  for (auto& t : v) t.c *= fe;
}

int GBEngine::find_reducer(const Monomial& m, int comp, std::uint64_t mask) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const MTerm& l = basis_[k].front();
    if (l.comp != comp || (masks_[k] & ~mask)) continue;
    if (l.m.divides(m)) return static_cast<int>(k);
  }
  return -1;
}

MVec GBEngine::reduce(const MVec& v, bool exact) const {
  MVec h = v;
  std::size_t pos = 0;
  FieldElement p, q;
  while (pos < h.size()) {
    const MTerm& t = h[pos];
    int k = find_reducer(t.m, t.comp, t.m.divmask());
    if (k < 0) {
      ++pos;
      continue;
    }
    const MVec& g = basis_[k];
    multipliers(rational_ && !exact, t.c, g.front().c, p, q);
    Monomial mult = t.m / g.front().m;
    reduce_step(h, pos, p, g, mult, q, ord_);
  }
  if (rational_ && !exact) normalize(h);
  return h;
}

MVec GBEngine::spoly(int i, int j) const {
  const MVec& f = basis_[i];
  const MVec& g = basis_[j];
  Monomial l = f.front().m.lcm(g.front().m);
  MVec h = scale_mvec(f, l / f.front().m, FieldElement(f.front().c.field(), 1));
  FieldElement p, q;
  multipliers(rational_, h.front().c, g.front().c, p, q);
  reduce_step(h, 0, p, g, l / g.front().m, q, ord_);
  return h;
}

void GBEngine::add(MVec v) {
  if (v.empty()) return;
  if (!mvec_homogeneous(v, ord_)) homogeneous_ = false;
  for (auto& t : v)
    if (t.comp != 0) rank1_ = false;
  pending_.push_back(std::move(v));
}

void GBEngine::load_basis(std::vector<MVec> v) {
  for (auto& b : v) {
    if (b.empty()) continue;
    masks_.push_back(b.front().m.divmask());
    redundant_.push_back(false);
    basis_.push_back(std::move(b));
  }
}

void GBEngine::insert(MVec h) {
  normalize(h);
  const int k = static_cast<int>(basis_.size());
  const Monomial& mk = h.front().m;
  const int ck = h.front().comp;
  const int shift = ord_.comp_shift(ck);
  const bool rank1 = rank1_;

  // criterion B on existing pairs
  std::vector<Pair> kept;
  kept.reserve(pairs_.size());
  for (auto& pr : pairs_) {
    if (pr.comp == ck && mk.divides(pr.lcm)) {
      Monomial li = basis_[pr.i].front().m.lcm(mk);
      Monomial lj = basis_[pr.j].front().m.lcm(mk);
      if (li != pr.lcm && lj != pr.lcm) {
        ++stats_.criterion_skips;
        continue;
      }
    }
    kept.push_back(pr);
  }
  pairs_.swap(kept);

  struct Cand {
    int i;
    Monomial lcm;
    bool coprime;
    bool dead = false;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < k; ++i) {
    if (redundant_[i]) continue;
    const MTerm& li = basis_[i].front();
    if (li.comp != ck) continue;
    cands.push_back({i, li.m.lcm(mk), rank1 && li.m.coprime(mk)});
  }
  // criterion M
  for (auto& a : cands)
    for (auto& b : cands)
      if (&a != &b && !b.dead && b.lcm != a.lcm && b.lcm.divides(a.lcm)) {
        a.dead = true;
        break;
      }
  // criterion F and the product criterion
  for (std::size_t a = 0; a < cands.size(); ++a) {
    if (cands[a].dead) continue;
    bool any_coprime = cands[a].coprime;
    for (std::size_t b = a + 1; b < cands.size(); ++b)
      if (!cands[b].dead && cands[b].lcm == cands[a].lcm) {
        any_coprime = any_coprime || cands[b].coprime;
        cands[b].dead = true;
      }
    if (any_coprime) cands[a].dead = true;
  }
  for (auto& c : cands) {
    if (c.dead) {
      ++stats_.criterion_skips;
      continue;
    }
    pairs_.push_back({c.i, k, c.lcm, ck, c.lcm.deg + shift, seq_++});
  }
  for (int i = 0; i < k; ++i)
    if (!redundant_[i] && basis_[i].front().comp == ck && mk.divides(basis_[i].front().m))
      redundant_[i] = true;

  masks_.push_back(mk.divmask());
  redundant_.push_back(false);
  int d = ord_.degree(h.front());
  if (!homogeneous_) d = mvec_degree(h, ord_);
  basis_.push_back(std::move(h));
  if (abort_degree_ >= 0 && d >= abort_degree_) aborted_ = true;
}

void GBEngine::run(int degree_limit) {
  while (!aborted_) {
    bool have = false;
    int d = 0;
    for (auto& p : pairs_)
      if (!have || p.degree < d) {
        d = p.degree;
        have = true;
      }
    for (auto& v : pending_) {
      int dv = mvec_degree(v, ord_);
      if (!have || dv < d) {
        d = dv;
        have = true;
      }
    }
    if (!have) break;
    if (degree_limit != kNoLimit && d > degree_limit) break;

    std::vector<MVec> batch;
    if (homogeneous_) {
      std::vector<Pair> rest;
      std::vector<Pair> now;
      for (auto& p : pairs_) (p.degree == d ? now : rest).push_back(p);
      pairs_.swap(rest);
      std::sort(now.begin(), now.end(), [](const Pair& a, const Pair& b) { return a.seq < b.seq; });
      std::vector<MVec> gens, later;
      for (auto& v : pending_) (mvec_degree(v, ord_) == d ? gens : later).push_back(std::move(v));
      pending_.swap(later);
      for (auto& v : gens) batch.push_back(std::move(v));
      for (auto& p : now) {
        ++stats_.pairs;
        batch.push_back(spoly(p.i, p.j));
      }
    } else {
      // one item at a time: generators first, then the pair of least degree
      bool took = false;
      for (std::size_t k = 0; k < pending_.size(); ++k)
        if (mvec_degree(pending_[k], ord_) == d) {
          batch.push_back(std::move(pending_[k]));
          pending_.erase(pending_.begin() + static_cast<long>(k));
          took = true;
          break;
        }
      if (!took) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k)
          if (pairs_[k].degree < pairs_[best].degree ||
              (pairs_[k].degree == pairs_[best].degree && pairs_[k].seq < pairs_[best].seq))
            best = k;
        Pair p = pairs_[best];
        pairs_.erase(pairs_.begin() + static_cast<long>(best));
        ++stats_.pairs;
        batch.push_back(spoly(p.i, p.j));
      }
    }
    for (auto& v : batch) {
      MVec h = reduce(v);
      if (h.empty()) {
        ++stats_.reductions_to_zero;
        continue;
      }
      if (collect_from_ >= 0 && h.front().comp >= collect_from_) {
        collected_.push_back(std::move(h));
        continue;
      }
      insert(std::move(h));
      if (aborted_) return;
    }
  }
}

std::vector<MVec> GBEngine::active_basis() const {
  std::vector<MVec> out;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (!redundant_[k]) out.push_back(basis_[k]);
  return out;
}

void GBEngine::make_reduced() {
  std::vector<MVec> keep;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (redundant_[k]) continue;
    const MTerm& lk = basis_[k].front();
    bool drop = false;
    for (std::size_t j = 0; j < basis_.size() && !drop; ++j) {
      if (j == k || redundant_[j]) continue;
      const MTerm& lj = basis_[j].front();
      if (lj.comp == lk.comp && lj.m.divides(lk.m) && (lj.m != lk.m || j < k)) drop = true;
    }
    if (!drop) keep.push_back(basis_[k]);
  }
  std::sort(keep.begin(), keep.end(),
            [&](const MVec& a, const MVec& b) { return ord_.compare(a.front(), b.front()) < 0; });
  std::vector<MVec> out;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    basis_.clear();
    masks_.clear();
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != k) {
        basis_.push_back(keep[j]);
        masks_.push_back(keep[j].front().m.divmask());
      }
    MVec h = keep[k];
    // the lead is irreducible, so this only touches the tail
    h = reduce(h);
    out.push_back(std::move(h));
  }
  for (auto& v : out) {
    FieldElement inv = v.front().c.inverse();
    for (auto& t : v) t.c *= inv;
  }
  basis_ = std::move(out);
  masks_.clear();
  for (auto& v : basis_) masks_.push_back(v.front().m.divmask());
  redundant_.assign(basis_.size(), false);
  pairs_.clear();
}

}  // namespace koszulkit
