#include "koszulkit/quotient.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszulkit {

std::string GradeKey::to_string() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// ------------------------------------------------------------ QuotientRing

QuotientRing::QuotientRing(const Ideal& I, std::optional<MonomialOrder> ord, std::optional<bool> bigraded)
    : ideal_(I), bigraded_(bigraded.value_or(I.ring->bigraded())) {
  if (!I.is_homogeneous()) throw std::invalid_argument("quotient ring needs a homogeneous ideal");
  if (bigraded_) {
    if (!I.ring->bigraded()) throw std::invalid_argument("ring has no bigrading");
    for (auto& g : I.gens)
      if (!g.bidegree()) throw std::invalid_argument("ideal is not bihomogeneous");
  }
  gb_ = buchberger(I, ord.value_or(MonomialOrder::degrevlex(I.ring->nvars())));
  leads_ = gb_.leading_monomials();
}

GradeKey QuotientRing::key_of(const Monomial& m) const {
  if (!bigraded_) return {m.deg, 0};
  GradeKey k;
  const auto& bd = ring()->bidegrees;
  for (int i = 0; i < m.n; ++i) {
    k.a += m[i] * bd[i][0];
    k.b += m[i] * bd[i][1];
  }
  return k;
}

GradeKey QuotientRing::var_key(int v) const {
  if (!bigraded_) return {1, 0};
  return {ring()->bidegrees[v][0], ring()->bidegrees[v][1]};
}

std::vector<GradeKey> QuotientRing::keys_of_total(int d) const {
  if (!bigraded_) return {{d, 0}};
  std::vector<GradeKey> out;
  for (int p = 0; p <= d; ++p) out.push_back({p, d - p});
  return out;
}

const QuotientRing::Piece& QuotientRing::piece(const GradeKey& k) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = pieces_.find(k);
  if (it != pieces_.end()) return *it->second;
  auto p = std::make_unique<Piece>();
  if (k.valid() && (bigraded_ || k.b == 0)) {
    for (auto& m : monomials_of_degree(ring()->nvars(), k.total())) {
      if (key_of(m) != k) continue;
      bool standard = true;
      for (auto& l : leads_)
        if (l.divides(m)) {
          standard = false;
          break;
        }
      if (!standard) continue;
      p->index[m] = static_cast<int>(p->mons.size());
      p->mons.push_back(m);
    }
  }
  return *(pieces_[k] = std::move(p));
}

const std::vector<Monomial>& QuotientRing::basis(const GradeKey& k) const { return piece(k).mons; }

int QuotientRing::index_of(const Monomial& m) const {
  const Piece& p = piece(key_of(m));
  auto it = p.index.find(m);
  return it == p.index.end() ? -1 : it->second;
}

const SparseRow& QuotientRing::nf_monomial(const Monomial& m) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = nf_.find(m);
  if (it != nf_.end()) return *it->second;
  auto row = std::make_unique<SparseRow>();
  const Piece& p = piece(key_of(m));
  auto direct = p.index.find(m);
  if (direct != p.index.end()) {
    row->push_back({direct->second, FieldElement(field(), 1)});
  } else {
    Polynomial f = gb_.normal_form(Polynomial::monomial(ring(), m, FieldElement(field(), 1)));
    for (auto& t : f.terms()) {
      auto jt = p.index.find(t.m);
      if (jt == p.index.end()) throw std::logic_error("normal form left its graded piece");
      row->push_back({jt->second, t.c});
    }
    std::sort(row->begin(), row->end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return *(nf_[m] = std::move(row));
}

long long QuotientRing::hilbert(int d) const {
  long long s = 0;
  for (auto& k : keys_of_total(d)) s += dim(k);
  return s;
}

QModule cyclic_module(const QuotientRing& Q, const Ideal& U) {
  QModule M;
  M.gens = {GradeKey{}};
  for (auto& u : U.gens) M.relations.push_back({u.ring() == Q.ring() ? u : u.with_ring(Q.ring())});
  return M;
}

QModule residue_field(const QuotientRing& Q) {
  QModule M;
  M.gens = {GradeKey{}};
  for (int v = 0; v < Q.ring()->nvars(); ++v) M.relations.push_back({Polynomial::variable(Q.ring(), v)});
  return M;
}

// ------------------------------------------------------ TruncatedResolution

BettiTable TruncatedResolution::betti() const {
  BettiTable b;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (auto& k : degrees[i]) b.add(static_cast<int>(i), k.total());
  return b;
}

std::map<std::tuple<int, int, int>, long long> TruncatedResolution::bigraded_betti() const {
  std::map<std::tuple<int, int, int>, long long> out;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (auto& k : degrees[i]) ++out[{static_cast<int>(i), k.a, k.b}];
  return out;
}

PolyMatrix TruncatedResolution::differential(const RingPtr& r, int i) const {
  FreeModule tgt, src;
  for (auto& k : degrees.at(i - 1)) tgt.twists.push_back(k.total());
  for (auto& k : degrees.at(i)) src.twists.push_back(k.total());
  PolyMatrix m(r, tgt, src);
  for (std::size_t g = 0; g < columns[i].size(); ++g)
    for (auto& t : columns[i][g]) m.entries[t.gen][g] += Polynomial::monomial(r, t.m, t.c);
  return m;
}

// ------------------------------------------------------------- resolution

namespace {

struct Layout {
  std::vector<int> gen;      // generator index for each block
  std::vector<int> off;      // block start
  std::vector<GradeKey> sub; // degree of the ring coefficient in the block
  std::vector<int> block_of; // by generator, -1 if absent
  int total = 0;
};

class Resolver {
 public:
  Resolver(const QuotientRing& Q, const QModule& M, int hom, int deg, const ResolveOptions& opt)
      : Q_(Q), M_(M), hom_(hom), deg_(deg), opt_(opt) {
    res_.hom_bound = hom;
    res_.degree_bound = deg;
    res_.bigraded = Q.bigraded();
    res_.degrees.resize(hom + 1);
    res_.columns.resize(hom + 1);
    res_.degrees[0] = M.gens;
    res_.columns[0].resize(M.gens.size());
    Z_.resize(hom + 1);
    for (auto& rel : M.relations) prepare_relation(rel);
  }

  TruncatedResolution run() {
    for (int d = 0; d <= deg_ && !res_.incomplete; ++d)
      for (auto& D : Q_.keys_of_total(d))
        for (int i = 1; i <= hom_ && !res_.incomplete; ++i) step(i, D);
    return std::move(res_);
  }

 private:
  const QuotientRing& Q_;
  const QModule& M_;
  int hom_, deg_;
  ResolveOptions opt_;
  TruncatedResolution res_;
  std::map<std::tuple<int, int, int>, Layout> layouts_;
  std::vector<std::map<GradeKey, std::vector<SparseRow>>> Z_;  // Z_[i][D] in layout(i-1, D)
  // relations in normal form: (degree, terms)
  std::vector<std::pair<GradeKey, std::vector<QTerm>>> rels_;

  void prepare_relation(const std::vector<Polynomial>& rel) {
    if (rel.size() != M_.gens.size()) throw std::invalid_argument("relation length mismatch");
    std::vector<QTerm> terms;
    std::optional<GradeKey> key;
    for (std::size_t h = 0; h < rel.size(); ++h) {
      Polynomial f = Q_.normal_form(rel[h]);
      for (auto& t : f.terms()) {
        GradeKey k = Q_.key_of(t.m) + M_.gens[h];
        if (key && *key != k) throw std::invalid_argument("relation is not homogeneous");
        key = k;
        terms.push_back({static_cast<int>(h), t.m, t.c});
      }
    }
    if (key) rels_.push_back({*key, std::move(terms)});
  }

  const Layout& layout(int level, const GradeKey& D) {
    auto key = std::make_tuple(level, D.a, D.b);
    auto it = layouts_.find(key);
    if (it != layouts_.end()) return it->second;
    Layout L;
    const auto& degs = res_.degrees[level];
    L.block_of.assign(degs.size(), -1);
    for (std::size_t g = 0; g < degs.size(); ++g) {
      GradeKey s = D - degs[g];
      if (!s.valid()) continue;
      int dim = Q_.dim(s);
      if (dim == 0) continue;
      L.block_of[g] = static_cast<int>(L.gen.size());
      L.gen.push_back(static_cast<int>(g));
      L.off.push_back(L.total);
      L.sub.push_back(s);
      L.total += dim;
    }
    return layouts_[key] = std::move(L);
  }

  // adds c * nf(m) e_h into acc, coordinates of layout L
  void place(std::vector<std::pair<int, FieldElement>>& acc, const Layout& L, int h, const Monomial& m,
             const FieldElement& c) {
    const SparseRow& nf = Q_.nf_monomial(m);
    if (nf.empty()) return;
    int b = L.block_of[h];
    if (b < 0) throw std::logic_error("module element outside its layout");
    for (auto& [k, v] : nf) acc.push_back({L.off[b] + k, v * c});
  }

  SparseRow collect(std::vector<std::pair<int, FieldElement>> acc) {
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [k, v] : acc) {
      if (!out.empty() && out.back().first == k) {
        out.back().second += v;
        if (out.back().second.is_zero()) out.pop_back();
      } else if (!v.is_zero()) {
        out.push_back({k, v});
      }
    }
    return out;
  }

  // (generator, standard monomial) at coordinate k of layout L
  std::pair<int, const Monomial*> coordinate(const Layout& L, int k) {
    auto it = std::upper_bound(L.off.begin(), L.off.end(), k);
    int b = static_cast<int>(it - L.off.begin()) - 1;
    return {L.gen[b], &Q_.basis(L.sub[b])[k - L.off[b]]};
  }

  SparseRow times_var(const SparseRow& z, const Layout& from, const Layout& to, int v) {
    std::vector<std::pair<int, FieldElement>> acc;
    Monomial x = Monomial::var(Q_.ring()->nvars(), v);
    for (auto& [k, c] : z) {
      auto [h, s] = coordinate(from, k);
      place(acc, to, h, *s * x, c);
    }
    return collect(std::move(acc));
  }

  std::vector<QTerm> to_terms(const SparseRow& z, const Layout& L) {
    std::vector<QTerm> out;
    for (auto& [k, c] : z) {
      auto [h, s] = coordinate(L, k);
      out.push_back({h, *s, c});
    }
    return out;
  }

  // image of every basis element of F_{i-1}(D) in F_{i-2}(D)
  std::vector<SparseRow> differential_columns(int i, const GradeKey& D) {
    const Layout& src = layout(i - 1, D);
    const Layout& tgt = layout(i - 2, D);
    std::vector<SparseRow> cols;
    cols.reserve(src.total);
    for (std::size_t b = 0; b < src.gen.size(); ++b) {
      const auto& col = res_.columns[i - 1][src.gen[b]];
      for (auto& s : Q_.basis(src.sub[b])) {
        std::vector<std::pair<int, FieldElement>> acc;
        for (auto& t : col) place(acc, tgt, t.gen, s * t.m, t.c);
        cols.push_back(collect(std::move(acc)));
      }
    }
    return cols;
  }

  void step(int i, const GradeKey& D) {
    const Layout& Lp = layout(i - 1, D);
    auto& Zi = Z_[i];
    if (Lp.total == 0) {
      Zi[D] = {};
      return;
    }
    // by exactness at F_{i-2}, dim Z_i(D) = dim F_{i-1}(D) - dim Z_{i-1}(D)
    int kernel_dim = -1;
    if (i >= 2) {
      auto prev = Z_[i - 1].find(D);
      if (prev != Z_[i - 1].end()) kernel_dim = Lp.total - static_cast<int>(prev->second.size());
    }
    Echelon E(Q_.field());
    const int n = Q_.ring()->nvars();
    for (int v = 0; v < n && E.rank() != kernel_dim; ++v) {
      GradeKey Dv = D - Q_.var_key(v);
      if (!Dv.valid()) continue;
      auto it = Zi.find(Dv);
      if (it == Zi.end() || it->second.empty()) continue;
      const Layout& Lv = layout(i - 1, Dv);
      for (auto& z : it->second) {
        E.insert(times_var(z, Lv, Lp, v));
        if (E.rank() == kernel_dim) break;
      }
    }
    if (E.rank() == kernel_dim) {
      // no new generators in this degree
      Zi[D] = E.rows();
      return;
    }
    std::vector<SparseRow> cand;
    if (i == 1) {
      for (auto& [k, terms] : rels_) {
        if (k != D) continue;
        std::vector<std::pair<int, FieldElement>> acc;
        for (auto& t : terms) place(acc, Lp, t.gen, t.m, t.c);
        cand.push_back(collect(std::move(acc)));
      }
    } else {
      if (layout(i - 2, D).total == 0) {
        for (int k = 0; k < Lp.total; ++k) cand.push_back({{k, FieldElement(Q_.field(), 1)}});
      } else {
        if (Lp.total > opt_.max_columns) {
          res_.incomplete = true;
          return;
        }
        cand = kernel_of_columns(Q_.field(), differential_columns(i, D));
      }
    }
    for (auto& z : cand) {
      if (z.empty() || !E.insert(z)) continue;
      res_.degrees[i].push_back(D);
      res_.columns[i].push_back(to_terms(z, Lp));
    }
    if (i == 1)
      Zi[D] = E.rows();
    else
      Zi[D] = std::move(cand);
    // Z_i(D) is stored in layout(i-1, D); layouts of level i at D are built afterwards
  }
};

}  // namespace

TruncatedResolution resolve_over_quotient(const QuotientRing& Q, const QModule& target, int hom_bound,
                                          int degree_bound, const ResolveOptions& opt) {
  if (hom_bound < 0 || degree_bound < 0) throw std::invalid_argument("negative bound");
  return Resolver(Q, target, hom_bound, degree_bound, opt).run();
}

// ------------------------------------------------------------- Koszulness

std::optional<std::pair<int, int>> first_nonlinear(const BettiTable& b, int shift) {
  for (auto& [key, v] : b.entries())
    if (v != 0 && key.second != key.first + shift) return key;
  return std::nullopt;
}

std::string KoszulVerdict::to_string() const {
  if (linear_so_far) return "linear-so-far";
  return "nonlinear-at(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

KoszulVerdict is_koszul_up_to(const QuotientRing& Q, int hom_bound) {
  KoszulVerdict v;
  v.resolution = resolve_over_quotient(Q, residue_field(Q), hom_bound, hom_bound + 1);
  if (auto p = first_nonlinear(v.resolution.betti())) {
    v.linear_so_far = false;
    v.i = p->first;
    v.j = p->second;
  }
  return v;
}

FrobergResult froberg_consistency(const QuotientRing& Q, const KoszulVerdict& v, int bound) {
  FrobergResult r;
  if (!v.linear_so_far || v.resolution.hom_bound < bound) return r;
  r.applicable = true;
  BettiTable b = v.resolution.betti();
  std::vector<long long> P(bound + 1), H(bound + 1);
  for (int i = 0; i <= bound; ++i) {
    P[i] = b.get(i, i);
    H[i] = (i % 2 ? -1 : 1) * Q.hilbert(i);
  }
  for (int k = 0; k <= bound; ++k) {
    long long s = 0;
    for (int i = 0; i <= k; ++i) s += P[i] * H[k - i];
    if (s != (k == 0 ? 1 : 0)) return r;
  }
  r.holds = true;
  return r;
}

FrobergResult froberg_consistency(const QuotientRing& Q, int bound) {
  return froberg_consistency(Q, is_koszul_up_to(Q, bound), bound);
}

// ------------------------------------------------------ first syzygies

FirstSyzygyResult first_syzygy_criterion(const Ideal& I, const PolyMatrix& syz) {
  FirstSyzygyResult out;
  out.generators = mingens(I);
  const auto& q = out.generators.gens;
  for (auto& g : q)
    if (g.degree() != 2) throw std::invalid_argument("first syzygy criterion needs quadrics");
  PolyMatrix row = PolyMatrix::row(out.generators);
  if (syz.rows() != row.cols()) throw std::invalid_argument("syzygy matrix does not match the generators");
  out.syzygies = syz;
  std::vector<std::vector<Polynomial>> span;
  for (int c = 0; c < syz.cols(); ++c)
    if (syz.source.twists[c] == 3) {
      span.push_back(syz.column(c));
      ++out.linear_syzygies;
    }
  const int g = static_cast<int>(q.size());
  for (int a = 0; a < g; ++a)
    for (int b = a + 1; b < g; ++b) {
      std::vector<Polynomial> k(g, Polynomial(I.ring));
      k[a] = q[b];
      k[b] = -q[a];
      span.push_back(k);
    }
  PolyMatrix N = PolyMatrix::from_columns(I.ring, row.source, span);
  MatrixSolver solver(N);
  for (int c = 0; c < syz.cols(); ++c)
    if (!solver.solve(syz.column(c))) out.witnesses.push_back(syz.column(c));
  out.passes = out.witnesses.empty();
  return out;
}

FirstSyzygyResult first_syzygy_criterion(const Ideal& I) {
  Ideal g = mingens(I);
  return first_syzygy_criterion(I, syzygies(PolyMatrix::row(g)));
}

}  // namespace koszulkit
