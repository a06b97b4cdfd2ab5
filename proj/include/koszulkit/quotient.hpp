#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "koszulkit/betti.hpp"
#include "koszulkit/groebner.hpp"
#include "koszulkit/linalg.hpp"
#include "koszulkit/resolution.hpp"

namespace koszulkit {

// Degree in the grading used by a QuotientRing: (d, 0) when single graded,
// (p, q) when bigraded.
struct GradeKey {
  int a = 0, b = 0;

  int total() const { return a + b; }
  bool valid() const { return a >= 0 && b >= 0; }
  GradeKey operator+(const GradeKey& o) const { return {a + o.a, b + o.b}; }
  GradeKey operator-(const GradeKey& o) const { return {a - o.a, b - o.b}; }
  bool operator==(const GradeKey& o) const { return a == o.a && b == o.b; }
  bool operator!=(const GradeKey& o) const { return !(*this == o); }
  bool operator<(const GradeKey& o) const { return a != o.a ? a < o.a : b < o.b; }
  std::string to_string() const;
};

// R = S/I with cached standard-monomial bases of its graded pieces.
class QuotientRing {
 public:
  // bigraded defaults to the ring's own declaration
  explicit QuotientRing(const Ideal& I, std::optional<MonomialOrder> ord = std::nullopt,
                        std::optional<bool> bigraded = std::nullopt);

  const RingPtr& ring() const { return ideal_.ring; }
  const Ideal& ideal() const { return ideal_; }
  const GroebnerBasis& gb() const { return gb_; }
  bool bigraded() const { return bigraded_; }
  const Field& field() const { return ideal_.ring->field; }

  GradeKey key_of(const Monomial& m) const;
  GradeKey var_key(int v) const;
  std::vector<GradeKey> keys_of_total(int d) const;

  // standard monomials of degree k, in descending degrevlex order
  const std::vector<Monomial>& basis(const GradeKey& k) const;
  int dim(const GradeKey& k) const { return static_cast<int>(basis(k).size()); }
  // position of a standard monomial in basis(key_of(m)); -1 if not standard
  int index_of(const Monomial& m) const;
  // normal form of a monomial, in coordinates of basis(key_of(m))
  const SparseRow& nf_monomial(const Monomial& m) const;
  Polynomial normal_form(const Polynomial& f) const { return gb_.normal_form(f); }
  // dim_k R_d (total degree)
  long long hilbert(int d) const;

 private:
  struct Piece {
    std::vector<Monomial> mons;
    std::unordered_map<Monomial, int, MonomialHash> index;
  };
  Ideal ideal_;
  GroebnerBasis gb_;
  bool bigraded_;
  std::vector<Monomial> leads_;
  mutable std::recursive_mutex mu_;
  mutable std::map<GradeKey, std::unique_ptr<Piece>> pieces_;
  mutable std::unordered_map<Monomial, std::unique_ptr<SparseRow>, MonomialHash> nf_;

  const Piece& piece(const GradeKey& k) const;
};

// Graded module F_0 / (relations), F_0 free with the given generator degrees.
struct QModule {
  std::vector<GradeKey> gens;
  std::vector<std::vector<Polynomial>> relations;  // vectors of length gens.size()
};

QModule cyclic_module(const QuotientRing& Q, const Ideal& U);  // R/U
QModule residue_field(const QuotientRing& Q);                   // R/R_+

// c * m * e_gen
struct QTerm {
  int gen;
  Monomial m;
  FieldElement c;
};

struct TruncatedResolution {
  int hom_bound = 0;
  int degree_bound = 0;
  bool bigraded = false;
  bool incomplete = false;  // stopped early by the size guard
  // degrees[i][g]: degree of the g-th generator of F_i
  std::vector<std::vector<GradeKey>> degrees;
  // columns[i][g]: image of that generator in F_{i-1} (i >= 1), reduced coefficients
  std::vector<std::vector<std::vector<QTerm>>> columns;

  int rank(int i) const { return i < static_cast<int>(degrees.size()) ? static_cast<int>(degrees[i].size()) : 0; }
  BettiTable betti() const;  // total degrees
  // (i, p, q) -> count
  std::map<std::tuple<int, int, int>, long long> bigraded_betti() const;
  // the differential d_i as a matrix of normal forms over S
  PolyMatrix differential(const RingPtr& r, int i) const;
};

struct ResolveOptions {
  // abandon the computation when a single linear system exceeds this many columns
  long long max_columns = 2000000;
};

TruncatedResolution resolve_over_quotient(const QuotientRing& Q, const QModule& target, int hom_bound,
                                          int degree_bound, const ResolveOptions& opt = {});

struct KoszulVerdict {
  bool linear_so_far = true;
  int i = -1, j = -1;  // first nonlinear position when not linear
  TruncatedResolution resolution;
  std::string to_string() const;  // "linear-so-far" or "nonlinear-at(i,j)"
};

// resolves k over R to hom_bound with degrees up to hom_bound + 1
KoszulVerdict is_koszul_up_to(const QuotientRing& Q, int hom_bound);

// first (i, j) with j != i + shift and beta_{i,j} != 0, scanning i upward
std::optional<std::pair<int, int>> first_nonlinear(const BettiTable& b, int shift = 0);

struct FrobergResult {
  bool applicable = false;  // false when the resolution is not linear
  bool holds = false;
};

// (sum_i beta_{i,i} t^i) * H_R(-t) == 1 mod t^{bound+1}
FrobergResult froberg_consistency(const QuotientRing& Q, int bound);
FrobergResult froberg_consistency(const QuotientRing& Q, const KoszulVerdict& v, int bound);

struct FirstSyzygyResult {
  bool passes = true;
  PolyMatrix syzygies;          // minimal first syzygies of the minimal generators
  Ideal generators;             // the minimal generators used
  int linear_syzygies = 0;
  // minimal generators outside the span of linear and Koszul syzygies
  std::vector<std::vector<Polynomial>> witnesses;
};

// Koszul rings have first syzygies generated by linear and Koszul syzygies.
// A failure certifies non-Koszulness; a pass is inconclusive.
FirstSyzygyResult first_syzygy_criterion(const Ideal& I);
// same, with a caller-supplied generating set of the first syzygies
FirstSyzygyResult first_syzygy_criterion(const Ideal& I, const PolyMatrix& syz);

}  // namespace koszulkit
