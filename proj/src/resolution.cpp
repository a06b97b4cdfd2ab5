#include "koszulkit/resolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "koszulkit/hilbert.hpp"

namespace koszulkit {

// -------------------------------------------------------------- FreeModule

std::string FreeModule::to_string() const {
  if (twists.empty()) return "0";
  std::map<int, int> count;
  for (int t : twists) ++count[t];
  std::string s;
  for (auto& [t, k] : count) {
    if (!s.empty()) s += " + ";
    s += t == 0 ? "S" : "S(" + std::to_string(-t) + ")";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

// -------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(RingPtr r, FreeModule tgt, FreeModule src)
    : ring(std::move(r)), target(std::move(tgt)), source(std::move(src)) {
  entries.assign(target.rank(), std::vector<Polynomial>(source.rank(), Polynomial(ring)));
}

std::vector<Polynomial> PolyMatrix::column(int c) const {
  std::vector<Polynomial> v;
  for (int r = 0; r < rows(); ++r) v.push_back(entries[r][c]);
  return v;
}

bool PolyMatrix::is_zero() const {
  for (auto& row : entries)
    for (auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_homogeneous() const {
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c) {
      const Polynomial& e = entries[r][c];
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || e.degree() != source.twists[c] - target.twists[r]) return false;
    }
  return true;
}

PolyMatrix PolyMatrix::transpose() const {
  FreeModule tgt, src;
  for (int t : source.twists) tgt.twists.push_back(-t);
  for (int t : target.twists) src.twists.push_back(-t);
  PolyMatrix m(ring, tgt, src);
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c) m.entries[c][r] = entries[r][c];
  return m;
}

std::string PolyMatrix::to_string() const {
  std::string s;
  for (int r = 0; r < rows(); ++r) {
    s += "[";
    for (int c = 0; c < cols(); ++c) s += (c ? ", " : "") + entries[r][c].to_string();
    s += "]\n";
  }
  return s;
}

PolyMatrix PolyMatrix::identity(RingPtr r, FreeModule m) {
  PolyMatrix id(r, m, m);
  for (int k = 0; k < m.rank(); ++k) id.entries[k][k] = Polynomial::constant(r, 1);
  return id;
}

PolyMatrix PolyMatrix::row(const Ideal& I) {
  FreeModule src;
  for (auto& g : I.gens) src.twists.push_back(g.degree());
  PolyMatrix m(I.ring, FreeModule{{0}}, src);
  for (std::size_t c = 0; c < I.gens.size(); ++c) m.entries[0][c] = I.gens[c];
  return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr r, FreeModule tgt,
                                    const std::vector<std::vector<Polynomial>>& cols) {
  FreeModule src;
  for (auto& col : cols) {
    if (static_cast<int>(col.size()) != tgt.rank()) throw std::invalid_argument("column length mismatch");
    int d = 0;
    bool found = false;
    for (int k = 0; k < tgt.rank() && !found; ++k)
      if (!col[k].is_zero()) {
        d = col[k].degree() + tgt.twists[k];
        found = true;
      }
    src.twists.push_back(d);
  }
  PolyMatrix m(r, tgt, src);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int k = 0; k < tgt.rank(); ++k) m.entries[k][c] = cols[c][k];
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix m(a.ring, a.target, b.source);
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const Polynomial& x = a.entries[r][k];
      if (x.is_zero()) continue;
      for (int c = 0; c < b.cols(); ++c)
        if (!b.entries[k][c].is_zero()) m.entries[r][c] += x * b.entries[k][c];
    }
  return m;
}

// ------------------------------------------------------------- FreeComplex

bool FreeComplex::is_complex() const {
  for (int k = 0; k + 1 < length(); ++k)
    if (!(maps[k] * maps[k + 1]).is_zero()) return false;
  return true;
}

bool FreeComplex::has_unit_entries() const {
  for (auto& m : maps)
    for (auto& row : m.entries)
      for (auto& e : row)
        if (!e.is_zero() && e.is_constant()) return true;
  return false;
}

BettiTable FreeComplex::betti() const {
  BettiTable b;
  for (std::size_t i = 0; i < modules.size(); ++i)
    for (int t : modules[i].twists) b.add(static_cast<int>(i), t);
  return b;
}

// ---------------------------------------------------------------- syzygies

namespace {

ModuleOrder pot_order(const MonomialOrder& mono, std::vector<int> shift) {
  ModuleOrder o;
  o.mono = mono;
  o.pot = true;
  o.shift = std::move(shift);
  return o;
}

MVec column_mvec(const PolyMatrix& M, int c, int offset, const ModuleOrder& ord) {
  std::vector<MTerm> ts;
  for (int r = 0; r < M.rows(); ++r)
    for (auto& t : M.entries[r][c].terms()) ts.push_back({t.m, r + offset, t.c});
  return sort_mvec(std::move(ts), ord);
}

MVec vector_mvec(const std::vector<Polynomial>& v, int offset, const ModuleOrder& ord) {
  std::vector<MTerm> ts;
  for (std::size_t r = 0; r < v.size(); ++r)
    for (auto& t : v[r].terms()) ts.push_back({t.m, static_cast<int>(r) + offset, t.c});
  return sort_mvec(std::move(ts), ord);
}

std::vector<Polynomial> mvec_to_vector(const RingPtr& ring, const MVec& v, int offset, int len) {
  std::vector<std::vector<Term>> parts(len);
  for (auto& t : v) {
    int k = t.comp - offset;
    if (k >= 0 && k < len) parts[k].push_back({t.m, t.c});
  }
  std::vector<Polynomial> out;
  for (auto& p : parts) out.push_back(Polynomial::from_terms(ring, std::move(p)));
  return out;
}

// minimal generators among vectors of the free module `mod`, in degree order
std::vector<MVec> module_mingens(const RingPtr& ring, const FreeModule& mod, std::vector<MVec> vs) {
  ModuleOrder ord;
  ord.mono = MonomialOrder::degrevlex(ring->nvars());
  ord.shift = mod.twists;
  for (auto& v : vs) v = sort_mvec(std::move(v), ord);
  std::stable_sort(vs.begin(), vs.end(),
                   [&](const MVec& a, const MVec& b) { return mvec_degree(a, ord) < mvec_degree(b, ord); });
  GBEngine e(ring, ord);
  std::vector<MVec> out;
  for (auto& v : vs) {
    if (v.empty()) continue;
    e.run(mvec_degree(v, ord));
    if (e.reduce(v).empty()) continue;
    out.push_back(v);
    e.add(v);
  }
  return out;
}

PolyMatrix matrix_from_mvecs(const RingPtr& ring, const FreeModule& tgt, const std::vector<MVec>& vs) {
  ModuleOrder ord;
  ord.shift = tgt.twists;
  FreeModule src;
  for (auto& v : vs) src.twists.push_back(mvec_degree(v, ord));
  PolyMatrix m(ring, tgt, src);
  for (std::size_t c = 0; c < vs.size(); ++c) {
    auto col = mvec_to_vector(ring, vs[c], 0, tgt.rank());
    for (int r = 0; r < tgt.rank(); ++r) m.entries[r][c] = col[r];
  }
  return m;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

PolyMatrix syzygies(const PolyMatrix& M, const MonomialOrder& ord) {
  if (!M.is_homogeneous()) throw std::invalid_argument("syzygies need a homogeneous matrix");
  const int R = M.rows(), C = M.cols();
  ModuleOrder mo = pot_order(ord, concat(M.target.twists, M.source.twists));
  GBEngine e(M.ring, mo);
  for (int c = 0; c < C; ++c) {
    MVec v = column_mvec(M, c, 0, mo);
    MVec unit{{Monomial::one(M.ring->nvars()), R + c, FieldElement(M.ring->field, 1)}};
    e.add(add_mvec(v, unit, mo));
  }
  // Schreyer: tracked reductions to zero of the S-pairs generate the syzygies
  e.set_collect_from(R);
  e.run();
  std::vector<MVec> cands;
  for (auto& v : e.collected()) {
    MVec w = v;
    for (auto& t : w) t.comp -= R;
    cands.push_back(std::move(w));
  }
  return matrix_from_mvecs(M.ring, M.source, module_mingens(M.ring, M.source, std::move(cands)));
}

PolyMatrix syzygies(const PolyMatrix& M) { return syzygies(M, MonomialOrder::degrevlex(M.ring->nvars())); }

PolyMatrix minimal_columns(const PolyMatrix& M) {
  ModuleOrder ord;
  ord.mono = MonomialOrder::degrevlex(M.ring->nvars());
  std::vector<MVec> vs;
  for (int c = 0; c < M.cols(); ++c) vs.push_back(column_mvec(M, c, 0, ord));
  return matrix_from_mvecs(M.ring, M.target, module_mingens(M.ring, M.target, std::move(vs)));
}

// ------------------------------------------------------------- resolutions

namespace {

Resolution finish(FreeComplex F) {
  F = minimalize(F);
  F.minimal = true;
  Resolution res;
  res.betti = F.betti();
  res.complex = std::move(F);
  return res;
}

void extend(FreeComplex& F, int max_hom_degree, const MonomialOrder& ord) {
  while (F.length() < max_hom_degree) {
    PolyMatrix s = syzygies(F.maps.back(), ord);
    if (s.cols() == 0) break;
    F.modules.push_back(s.source);
    F.maps.push_back(std::move(s));
  }
}

}  // namespace

Resolution minimal_resolution(const Ideal& I, int max_hom_degree, const MonomialOrder& ord) {
  if (!I.is_homogeneous()) throw std::invalid_argument("resolution needs a homogeneous ideal");
  FreeComplex F;
  F.ring = I.ring;
  F.modules.push_back(FreeModule{{0}});
  Ideal g = mingens(I);
  if (!g.is_zero() && max_hom_degree >= 1) {
    PolyMatrix d1 = PolyMatrix::row(g);
    F.modules.push_back(d1.source);
    F.maps.push_back(std::move(d1));
    extend(F, max_hom_degree, ord);
  }
  return finish(std::move(F));
}

Resolution minimal_resolution(const Ideal& I, int max_hom_degree) {
  return minimal_resolution(I, max_hom_degree, MonomialOrder::degrevlex(I.ring->nvars()));
}

Resolution resolve_cokernel(const PolyMatrix& M, int max_hom_degree) {
  FreeComplex F;
  F.ring = M.ring;
  F.modules.push_back(M.target);
  PolyMatrix d1 = minimal_columns(M);
  if (d1.cols() > 0 && max_hom_degree >= 1) {
    F.modules.push_back(d1.source);
    F.maps.push_back(std::move(d1));
    extend(F, max_hom_degree, MonomialOrder::degrevlex(M.ring->nvars()));
  }
  return finish(std::move(F));
}

FreeComplex twist(const FreeComplex& F, int s) {
  FreeComplex G = F;
  for (auto& m : G.modules)
    for (auto& t : m.twists) t += s;
  for (auto& d : G.maps) {
    for (auto& t : d.target.twists) t += s;
    for (auto& t : d.source.twists) t += s;
  }
  return G;
}

// ------------------------------------------------------------ minimalize

namespace {

void erase_row(PolyMatrix& m, int r) {
  m.entries.erase(m.entries.begin() + r);
  m.target.twists.erase(m.target.twists.begin() + r);
}

void erase_col(PolyMatrix& m, int c) {
  for (auto& row : m.entries) row.erase(row.begin() + c);
  m.source.twists.erase(m.source.twists.begin() + c);
}

}  // namespace

FreeComplex minimalize(const FreeComplex& F) {
  FreeComplex G = F;
  while (true) {
    int bi = -1, br = -1, bc = -1, bdeg = 0;
    for (int i = 1; i <= G.length() && bi < 0; ++i) {
      const PolyMatrix& d = G.maps[i - 1];
      for (int r = 0; r < d.rows(); ++r)
        for (int c = 0; c < d.cols(); ++c) {
          const Polynomial& e = d.entries[r][c];
          if (e.is_zero() || !e.is_constant()) continue;
          int deg = d.source.twists[c];
          if (bi < 0 || deg < bdeg) {
            bi = i;
            br = r;
            bc = c;
            bdeg = deg;
          }
        }
    }
    if (bi < 0) break;
    PolyMatrix& d = G.maps[bi - 1];
    FieldElement uinv = d.entries[br][bc].terms()[0].c.inverse();
    for (int r = 0; r < d.rows(); ++r) {
      if (r == br || d.entries[r][bc].is_zero()) continue;
      Polynomial f = d.entries[r][bc] * uinv;
      for (int c = 0; c < d.cols(); ++c)
        if (c != bc && !d.entries[br][c].is_zero()) d.entries[r][c] -= f * d.entries[br][c];
    }
    erase_row(d, br);
    erase_col(d, bc);
    if (bi < G.length()) erase_row(G.maps[bi], bc);
    if (bi >= 2) erase_col(G.maps[bi - 2], br);
    G.modules[bi].twists.erase(G.modules[bi].twists.begin() + bc);
    G.modules[bi - 1].twists.erase(G.modules[bi - 1].twists.begin() + br);
  }
  while (G.length() > 0 && G.modules.back().rank() == 0) {
    G.modules.pop_back();
    G.maps.pop_back();
  }
  G.minimal = !G.has_unit_entries();
  return G;
}

// ---------------------------------------------------------------- lifting

MatrixSolver::MatrixSolver(const PolyMatrix& M) : ring_(M.ring), rows_(M.rows()), cols_(M.cols()) {
  ModuleOrder mo = pot_order(MonomialOrder::degrevlex(ring_->nvars()), concat(M.target.twists, M.source.twists));
  engine_ = std::make_shared<GBEngine>(ring_, mo);
  for (int c = 0; c < cols_; ++c) {
    MVec v = column_mvec(M, c, 0, mo);
    MVec unit{{Monomial::one(ring_->nvars()), rows_ + c, FieldElement(ring_->field, 1)}};
    engine_->add(add_mvec(v, unit, mo));
  }
  engine_->run();
}

std::optional<std::vector<Polynomial>> MatrixSolver::solve(const std::vector<Polynomial>& v) const {
  if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("right-hand side length mismatch");
  MVec rem = engine_->reduce(vector_mvec(v, 0, engine_->order()), true);
  for (auto& t : rem)
    if (t.comp < rows_) return std::nullopt;
  std::vector<Polynomial> w = mvec_to_vector(ring_, rem, rows_, cols_);
  for (auto& p : w) p = -p;
  return w;
}

std::optional<std::vector<Polynomial>> lift(const PolyMatrix& M, const std::vector<Polynomial>& v) {
  return MatrixSolver(M).solve(v);
}

namespace {

FreeModule module_at(const FreeComplex& F, int i) {
  if (i < 0 || i >= static_cast<int>(F.modules.size())) return {};
  return F.modules[i];
}

}  // namespace

std::vector<PolyMatrix> lift_chain_map(const PolyMatrix& f0, const FreeComplex& top, const FreeComplex& bottom) {
  if (f0.rows() != module_at(bottom, 0).rank() || f0.cols() != module_at(top, 0).rank())
    throw std::invalid_argument("augmentation map does not match the complexes");
  std::vector<PolyMatrix> L{f0};
  for (int i = 1; i <= top.length(); ++i) {
    PolyMatrix prod = L[i - 1] * top.d(i);
    PolyMatrix Li(top.ring, module_at(bottom, i), top.modules[i]);
    if (i > bottom.length()) {
      if (!prod.is_zero()) throw std::runtime_error("chain map lift fails at index " + std::to_string(i));
      L.push_back(std::move(Li));
      continue;
    }
    MatrixSolver solver(bottom.d(i));
    for (int c = 0; c < prod.cols(); ++c) {
      auto w = solver.solve(prod.column(c));
      if (!w) throw std::runtime_error("chain map lift fails at index " + std::to_string(i));
      for (int r = 0; r < Li.rows(); ++r) Li.entries[r][c] = (*w)[r];
    }
    L.push_back(std::move(Li));
  }
  return L;
}

FreeComplex mapping_cone(const std::vector<PolyMatrix>& L, const FreeComplex& top, const FreeComplex& bottom) {
  FreeComplex C;
  C.ring = bottom.ring;
  const int n = std::max(bottom.length(), top.length() + 1);
  auto cone_module = [&](int i) {
    FreeModule m = module_at(bottom, i);
    FreeModule t = module_at(top, i - 1);
    m.twists.insert(m.twists.end(), t.twists.begin(), t.twists.end());
    return m;
  };
  for (int i = 0; i <= n; ++i) C.modules.push_back(cone_module(i));
  for (int i = 1; i <= n; ++i) {
    PolyMatrix d(C.ring, C.modules[i - 1], C.modules[i]);
    const int b_rows = module_at(bottom, i - 1).rank();
    const int b_cols = module_at(bottom, i).rank();
    if (i <= bottom.length()) {
      const PolyMatrix& db = bottom.d(i);
      for (int r = 0; r < db.rows(); ++r)
        for (int c = 0; c < db.cols(); ++c) d.entries[r][c] = db.entries[r][c];
    }
    if (i - 1 < static_cast<int>(L.size())) {
      const PolyMatrix& l = L[i - 1];
      for (int r = 0; r < l.rows(); ++r)
        for (int c = 0; c < l.cols(); ++c) d.entries[r][b_cols + c] = l.entries[r][c];
    }
    if (i >= 2 && i - 1 <= top.length()) {
      const PolyMatrix& dt = top.d(i - 1);
      for (int r = 0; r < dt.rows(); ++r)
        for (int c = 0; c < dt.cols(); ++c) d.entries[b_rows + r][b_cols + c] = -dt.entries[r][c];
    }
    C.maps.push_back(std::move(d));
  }
  while (C.length() > 0 && C.modules.back().rank() == 0) {
    C.modules.pop_back();
    C.maps.pop_back();
  }
  return C;
}

// ------------------------------------------------------------------ minors

namespace {

struct MinorCalc {
  const PolyMatrix& M;
  std::vector<int> rows;
  std::unordered_map<std::uint64_t, Polynomial> memo;

  // determinant of rows[j..] against the column set mask (|mask| = rows.size() - j)
  Polynomial det(std::size_t j, std::uint64_t mask) {
    if (j == rows.size()) return Polynomial::constant(M.ring, 1);
    auto key = mask;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Polynomial s(M.ring);
    int sign = 1;
    for (int c = 0; c < M.cols(); ++c) {
      if (!(mask >> c & 1)) continue;
      const Polynomial& e = M.entries[rows[j]][c];
      if (!e.is_zero()) {
        Polynomial sub = det(j + 1, mask & ~(std::uint64_t{1} << c));
        if (!sub.is_zero()) {
          Polynomial t = e * sub;
          s = sign > 0 ? s + t : s - t;
        }
      }
      sign = -sign;
    }
    memo[key] = s;
    return s;
  }
};

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Ideal minors(const PolyMatrix& M, int k) {
  if (k <= 0) return Ideal(M.ring, {Polynomial::constant(M.ring, 1)});
  if (k > M.rows() || k > M.cols()) return Ideal(M.ring, {});
  if (M.cols() > 64) throw std::invalid_argument("minors: too many columns");
  std::vector<std::vector<int>> rsets, csets;
  std::vector<int> cur;
  subsets(M.rows(), k, 0, cur, rsets);
  subsets(M.cols(), k, 0, cur, csets);
  std::vector<Polynomial> out;
  for (auto& rs : rsets) {
    MinorCalc mc{M, rs, {}};
    for (auto& cs : csets) {
      std::uint64_t mask = 0;
      for (int c : cs) mask |= std::uint64_t{1} << c;
      Polynomial d = mc.det(0, mask);
      if (!d.is_zero()) out.push_back(d);
    }
  }
  Ideal I(M.ring, out);
  return I.is_homogeneous() ? mingens(I) : I;
}

// ------------------------------------------------------ Buchsbaum-Eisenbud

BEReport buchsbaum_eisenbud_check(const FreeComplex& F) {
  BEReport rep;
  const int n = F.length();
  rep.complex_ok = F.is_complex();
  rep.expected_rank.assign(n + 1, 0);
  rep.minor_height.assign(n + 1, 0);
  std::ostringstream os;
  os << (rep.complex_ok ? "d o d = 0\n" : "d o d != 0\n");
  bool ok = rep.complex_ok;
  for (int i = n; i >= 1; --i) {
    int r = 0;
    for (int j = i; j <= n; ++j) r += ((j - i) % 2 ? -1 : 1) * F.modules[j].rank();
    if (r < 0) throw std::logic_error("negative expected rank at index " + std::to_string(i));
    rep.expected_rank[i] = r;
  }
  for (int i = 1; i <= n; ++i) {
    Ideal I = minors(F.d(i), rep.expected_rank[i]);
    int h = I.is_zero() ? 0 : height(I);
    rep.minor_height[i] = h;
    bool good = h >= i;
    ok = ok && good;
    os << "phi_" << i << ": r = " << rep.expected_rank[i] << ", height of minors " << h << " (need " << i
       << ") " << (good ? "ok" : "FAIL") << "\n";
  }
  rep.acyclic = ok;
  rep.text = os.str();
  return rep;
}

// ------------------------------------------------------------- Ext annihilators

Ideal module_colon(const PolyMatrix& B, const std::vector<Polynomial>& v, int v_degree) {
  const RingPtr& ring = B.ring;
  const int R = B.rows();
  std::vector<int> shift = B.target.twists;
  shift.push_back(v_degree);
  ModuleOrder mo = pot_order(MonomialOrder::degrevlex(ring->nvars()), shift);
  GBEngine e(ring, mo);
  MVec unit{{Monomial::one(ring->nvars()), R, FieldElement(ring->field, 1)}};
  e.add(add_mvec(vector_mvec(v, 0, mo), unit, mo));
  for (int c = 0; c < B.cols(); ++c) e.add(column_mvec(B, c, 0, mo));
  e.run();
  e.make_reduced();
  std::vector<Polynomial> gens;
  for (auto& w : e.basis())
    if (w.front().comp == R) gens.push_back(mvec_component(ring, w, R));
  Ideal I(ring, gens);
  return I.is_homogeneous() ? mingens(I) : I;
}

Ideal ann_ext(const Resolution& res, int i) {
  const FreeComplex& F = res.complex;
  const RingPtr& ring = F.ring;
  if (i < 0 || i > ring->nvars()) throw std::invalid_argument("Ext index out of range");
  Ideal unit(ring, {Polynomial::constant(ring, 1)});
  if (i > F.length()) return unit;
  FreeModule dual;
  for (int t : F.modules[i].twists) dual.twists.push_back(-t);
  PolyMatrix K = i < F.length() ? syzygies(F.d(i + 1).transpose()) : PolyMatrix::identity(ring, dual);
  PolyMatrix B = i >= 1 ? F.d(i).transpose() : PolyMatrix(ring, dual, FreeModule{});
  if (K.cols() == 0) return unit;
  std::optional<Ideal> acc;
  for (int c = 0; c < K.cols(); ++c) {
    Ideal a = module_colon(B, K.column(c), K.source.twists[c]);
    acc = acc ? intersect(*acc, a) : a;
  }
  return *acc;
}

Ideal ann_ext(const Ideal& I, int i) { return ann_ext(minimal_resolution(I, I.ring->nvars()), i); }

}  // namespace koszulkit
