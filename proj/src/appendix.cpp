#include "koszulkit/appendix.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "koszulkit/linalg.hpp"

namespace koszulkit {

namespace {

const char* kRing = "[x:(1,0),y:(1,0),a:(0,1),b:(0,1)]";
const char* kIdeal = "b*x, x*y, a*x-b*y, x^2-y^2";

const std::vector<std::vector<const char*>> kD1 = {
    {"x", "0", "b"},
    {"-y", "x", "-a"},
};

const std::vector<std::vector<const char*>> kD2 = {
    {"y", "0", "b", "0", "-b", "-a"},
    {"x", "y", "a", "b", "0", "0"},
    {"0", "0", "0", "0", "x", "y"},
};

const std::vector<std::vector<const char*>> kD3 = {
    {"x", "0", "0", "-b", "0", "0", "b", "b", "a", "0", "0"},
    {"-y", "x", "-b", "-a", "0", "-b", "0", "0", "-b", "0", "0"},
    {"0", "0", "x", "y", "0", "0", "0", "0", "0", "0", "b"},
    {"0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "-a"},
    {"0", "0", "0", "0", "0", "0", "y", "0", "-x", "a", "b"},
    {"0", "0", "0", "0", "0", "0", "0", "x", "y", "-b", "0"},
};

const std::vector<std::vector<const char*>> kD4 = {
    {"y", "0", "b", "0", "-b", "-b", "-a", "0", "0", "-b", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"},
    {"x", "y", "a", "b", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"},
    {"0", "0", "0", "0", "y", "0", "-x", "0", "0", "0", "0", "0", "0", "-b", "-a", "-b", "a", "0", "0", "0"},
    {"0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "0", "0", "0", "b", "0", "-b", "0", "0", "-b"},
    {"0", "0", "0", "0", "0", "0", "0", "y", "0", "-x", "0", "0", "b", "-a", "0", "0", "0", "0", "a", "0"},
    {"0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "b", "0", "0", "0", "0", "0", "a"},
    {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0", "0", "0", "-b", "-a", "0", "-b"},
    {"0", "0", "0", "0", "0", "0", "2*y", "0", "0", "0", "0", "-2*y", "0", "0", "b", "-a", "0", "a", "0", "0"},
    {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "0", "0", "0", "b", "0", "0", "0", "0"},
    {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y", "0", "0"},
    {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "y"},
};

GradeKey key_of_bidegree(const Bidegree& b) { return {b[0], b[1]}; }

// builds the matrix and the bidegrees of its source generators
PolyMatrix build(const RingPtr& r, const std::vector<std::vector<const char*>>& rows,
                 const std::vector<GradeKey>& tgt_degrees, std::vector<GradeKey>& src_degrees) {
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(rows[0].size());
  FreeModule tgt, src;
  for (auto& k : tgt_degrees) tgt.twists.push_back(k.total());
  std::vector<std::vector<Polynomial>> e(nr);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) e[i].push_back(parse_polynomial(r, rows[i][j]));
  src_degrees.assign(nc, GradeKey{-1, -1});
  for (int j = 0; j < nc; ++j) {
    for (int i = 0; i < nr; ++i)
      if (!e[i][j].is_zero()) {
        src_degrees[j] = tgt_degrees[i] + key_of_bidegree(*e[i][j].bidegree());
        break;
      }
    src.twists.push_back(src_degrees[j].total());
  }
  PolyMatrix m(r, tgt, src);
  m.entries = e;
  return m;
}

// the map F_src,D -> F_tgt,D in standard-monomial coordinates, one column per (generator, monomial)
std::vector<SparseRow> graded_piece(const QuotientRing& Q, const PolyMatrix& m,
                                    const std::vector<GradeKey>& tgt, const std::vector<GradeKey>& src,
                                    const GradeKey& D) {
  std::vector<int> offset(tgt.size() + 1, 0);
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    GradeKey k = D - tgt[t];
    offset[t + 1] = offset[t] + (k.valid() ? Q.dim(k) : 0);
  }
  std::vector<SparseRow> cols;
  for (std::size_t g = 0; g < src.size(); ++g) {
    GradeKey k = D - src[g];
    if (!k.valid()) continue;
    for (auto& mu : Q.basis(k)) {
      std::map<int, FieldElement> acc;
      for (std::size_t t = 0; t < tgt.size(); ++t)
        for (auto& tm : m.entries[t][g].terms())
          for (auto& [c, v] : Q.nf_monomial(mu * tm.m)) {
            auto it = acc.emplace(offset[t] + c, FieldElement(Q.field(), 0)).first;
            it->second += v * tm.c;
          }
      SparseRow col;
      for (auto& [c, v] : acc)
        if (!v.is_zero()) col.push_back({c, v});
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

int rank_of(const Field& f, const std::vector<SparseRow>& cols) {
  Echelon e(f);
  for (auto& c : cols) e.insert(c);
  return e.rank();
}

std::vector<GradeKey> keys_up_to(int bound) {
  std::vector<GradeKey> out;
  for (int t = 0; t <= bound; ++t)
    for (int p = 0; p <= t; ++p) out.push_back({p, t - p});
  return out;
}

}  // namespace

AppendixInstance AppendixInstance::make(const Field& f) {
  AppendixInstance A;
  A.field = f;
  A.ring = parse_ring("ring " + f.name() + " " + kRing);
  A.ideal = Ideal::parse(A.ring, kIdeal);
  A.quotient = std::make_shared<QuotientRing>(A.ideal);
  A.U = Ideal::parse(A.ring, "a, b");
  std::vector<GradeKey> r0{GradeKey{0, 0}};
  A.gen_degrees.push_back({{0, 1}, {0, 1}});
  FreeModule one{{0}};
  PolyMatrix d0(A.ring, one, FreeModule{{1, 1}});
  d0.entries = {{A.U.gens[0], A.U.gens[1]}};
  A.d.push_back(d0);
  for (auto* rows : {&kD1, &kD2, &kD3, &kD4}) {
    std::vector<GradeKey> src;
    A.d.push_back(build(A.ring, *rows, A.gen_degrees.back(), src));
    A.gen_degrees.push_back(src);
  }
  return A;
}

BasisCheck check_basis(const AppendixInstance& A, int bound) {
  BasisCheck out;
  const QuotientRing& Q = *A.quotient;
  const RingPtr& r = A.ring;
  auto var = [&](int i) { return Polynomial::variable(r, i); };
  for (auto& D : keys_up_to(bound)) {
    std::vector<Polynomial> listed;
    if (D.a == 0)
      for (int i = 0; i <= D.b; ++i) listed.push_back(var(2).pow(i) * var(3).pow(D.b - i));
    if (D.a == 1) {
      listed.push_back(var(0) * var(2).pow(D.b));
      listed.push_back(var(1) * var(2).pow(D.b));
    }
    if (D.a == 2 && D.b == 0) listed.push_back(var(0).pow(2));
    bool ok = Q.dim(D) == static_cast<int>(listed.size());
    Echelon e(A.field);
    for (auto& f : listed) {
      std::map<int, FieldElement> acc;
      for (auto& tm : f.terms())
        for (auto& [c, v] : Q.nf_monomial(tm.m)) {
          auto it = acc.emplace(c, FieldElement(A.field, 0)).first;
          it->second += v * tm.c;
        }
      SparseRow row;
      for (auto& [c, v] : acc)
        if (!v.is_zero()) row.push_back({c, v});
      if (!e.insert(row)) ok = false;
    }
    if (!ok) {
      out.ok = false;
      out.failures.push_back("bidegree " + D.to_string() + ": dim " + std::to_string(Q.dim(D)) + ", listed " +
                             std::to_string(listed.size()));
    }
  }
  return out;
}

DifferentialReport verify_differentials(const AppendixInstance& A, int bound) {
  DifferentialReport rep;
  const QuotientRing& Q = *A.quotient;
  const bool char2 = A.field.characteristic() == 2;
  std::ostringstream text;
  const std::vector<int> expected_cols{2, 3, 6, 11, 20};
  for (int i = 0; i <= 4; ++i)
    if (A.d[i].cols() != expected_cols[i]) {
      rep.ok = false;
      rep.failures.push_back("d" + std::to_string(i) + " has " + std::to_string(A.d[i].cols()) + " columns");
    }
  for (int i = 1; i <= 4; ++i)
    for (auto& row : A.d[i].entries)
      for (auto& e : row)
        if (!e.is_zero() && e.is_constant()) {
          rep.ok = false;
          rep.failures.push_back("d" + std::to_string(i) + " has a unit entry");
        }
  // composites vanish in R
  for (int i = 0; i < 4; ++i) {
    const PolyMatrix &f = A.d[i], &g = A.d[i + 1];
    for (int r = 0; r < f.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) {
        Polynomial s(A.ring);
        for (int k = 0; k < f.cols(); ++k) s += f.at(r, k) * g.at(k, c);
        if (!Q.normal_form(s).is_zero()) {
          if (i < 3 || !char2) rep.ok = false;
          rep.failures.push_back("d" + std::to_string(i) + "*d" + std::to_string(i + 1) + " nonzero at (" +
                                 std::to_string(r) + "," + std::to_string(c) + ")");
        }
      }
  }
  text << "composites " << (rep.failures.empty() ? "vanish" : "fail") << "\n";
  // exactness in each bidegree: image d_{i+1} = ker d_i
  std::vector<GradeKey> r0{GradeKey{0, 0}};
  rep.d4_complete = true;
  for (int i = 0; i < 4; ++i) {
    const std::vector<GradeKey>& tgt = i == 0 ? r0 : A.gen_degrees[i - 1];
    for (auto& D : keys_up_to(bound)) {
      auto ker_cols = graded_piece(Q, A.d[i], tgt, A.gen_degrees[i], D);
      int ker = static_cast<int>(ker_cols.size()) - rank_of(A.field, ker_cols);
      int img = rank_of(A.field, graded_piece(Q, A.d[i + 1], A.gen_degrees[i], A.gen_degrees[i + 1], D));
      if (ker == img) continue;
      if (i == 3) {
        if (rep.d4_complete) rep.d4_gap = D;
        rep.d4_complete = false;
        if (char2) continue;
      }
      rep.ok = false;
      rep.failures.push_back("ker d" + std::to_string(i) + " has dim " + std::to_string(ker) + " but im d" +
                             std::to_string(i + 1) + " has dim " + std::to_string(img) + " in bidegree " +
                             D.to_string());
    }
  }
  text << "d4 " << (rep.d4_complete ? "generates ker d3" : "misses ker d3 at " + rep.d4_gap->to_string()) << "\n";
  for (auto& f : rep.failures) text << "  " << f << "\n";
  rep.text = text.str();
  return rep;
}

std::string Obstruction::to_string() const {
  std::ostringstream s;
  s << "nonlinear generator at homological degree " << hom << " of U, bidegree " << bidegree.to_string()
    << ", total degree " << total << "; ranks";
  for (int r : ranks) s << " " << r;
  return s.str();
}

std::optional<Obstruction> find_obstruction(const AppendixInstance& A, int max_hom) {
  const QuotientRing& Q = *A.quotient;
  TruncatedResolution T = resolve_over_quotient(Q, cyclic_module(Q, A.U), max_hom + 1, max_hom + 2);
  for (int i = 1; i <= max_hom + 1 && i < static_cast<int>(T.degrees.size()); ++i) {
    std::optional<GradeKey> best;
    for (auto& k : T.degrees[i])
      if (k.total() != i && (!best || k.total() < best->total() || (k.total() == best->total() && k < *best)))
        best = k;
    if (!best) continue;
    Obstruction o;
    o.hom = i - 1;
    o.bidegree = *best;
    o.total = best->total();
    for (int j = 1; j <= max_hom + 1; ++j) o.ranks.push_back(T.rank(j));
    o.resolution = std::move(T);
    return o;
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> residue_field_obstruction(const AppendixInstance& A, int hom_bound) {
  KoszulVerdict v = is_koszul_up_to(*A.quotient, hom_bound);
  if (v.linear_so_far) return std::nullopt;
  return std::make_pair(v.i, v.j);
}

std::string AppendixReport::to_string() const {
  std::ostringstream s;
  s << "field " << field << "\n";
  s << "basis: " << (basis_ok ? "ok" : "FAILED") << "\n";
  s << differentials.text;
  if (obstruction)
    s << obstruction->to_string() << "\n";
  else
    s << "no obstruction found\n";
  s << (pass ? "PASS" : "FAIL") << "\n";
  return s.str();
}

AppendixReport run_appendix(const Field& f) {
  AppendixReport rep;
  rep.field = f.name();
  AppendixInstance A = AppendixInstance::make(f);
  rep.basis_ok = check_basis(A, 8).ok;
  rep.differentials = verify_differentials(A);
  rep.obstruction = find_obstruction(A);
  const bool char2 = f.characteristic() == 2;
  if (rep.obstruction) {
    GradeKey want = char2 ? GradeKey{4, 2} : GradeKey{5, 2};
    rep.obstruction_expected = rep.obstruction->hom == (char2 ? 4 : 5) && rep.obstruction->bidegree == want;
  }
  bool d4_ok = char2 ? !rep.differentials.d4_complete : rep.differentials.d4_complete;
  rep.pass = rep.basis_ok && rep.differentials.ok && d4_ok && rep.obstruction_expected;
  return rep;
}

const Obstruction& appendix_obstruction(const Field& f) {
  static std::mutex mu;
  static std::map<std::string, Obstruction> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(f.name());
  if (it != cache.end()) return it->second;
  auto o = find_obstruction(AppendixInstance::make(f));
  if (!o) throw std::runtime_error("no obstruction found for the appendix ring over " + f.name());
  return cache.emplace(f.name(), std::move(*o)).first->second;
}

}  // namespace koszulkit
