#pragma once

#include <cstdint>
#include <vector>

#include "koszulkit/polyring.hpp"

namespace koszulkit {

// A term of a free-module element: coefficient * monomial * e_comp.
struct MTerm {
  Monomial m;
  int comp = 0;
  FieldElement c;
};

// Sorted descending under a ModuleOrder; no zero coefficients.
using MVec = std::vector<MTerm>;

// Position-over-term (lower component index is larger) or
// term-over-position with per-component degree shifts.
struct ModuleOrder {
  MonomialOrder mono;
  bool pot = false;
  std::vector<int> shift;

  int comp_shift(int c) const { return c < static_cast<int>(shift.size()) ? shift[c] : 0; }
  int compare(const Monomial& a, int ca, const Monomial& b, int cb) const;
  int compare(const MTerm& a, const MTerm& b) const { return compare(a.m, a.comp, b.m, b.comp); }
  int degree(const MTerm& t) const { return t.m.deg + comp_shift(t.comp); }
};

MVec to_mvec(const Polynomial& f, int comp, const ModuleOrder& ord);
MVec sort_mvec(std::vector<MTerm> terms, const ModuleOrder& ord);
MVec add_mvec(const MVec& a, const MVec& b, const ModuleOrder& ord);
MVec scale_mvec(const MVec& a, const Monomial& m, const FieldElement& c);
// component comp of v as a polynomial
Polynomial mvec_component(const RingPtr& r, const MVec& v, int comp);
int mvec_degree(const MVec& v, const ModuleOrder& ord);
bool mvec_homogeneous(const MVec& v, const ModuleOrder& ord);

struct GBStats {
  std::size_t pairs = 0;
  std::size_t reductions_to_zero = 0;
  std::size_t criterion_skips = 0;
};

// Buchberger's algorithm on submodules of a free module.
class GBEngine {
 public:
  static constexpr int kNoLimit = -1000000;

  GBEngine(RingPtr r, ModuleOrder ord);

  void add(MVec v);
  // installs v as a basis known to be a Groebner basis (no pairs are formed)
  void load_basis(std::vector<MVec> v);
  // processes pairs and generators of degree <= degree_limit
  void run(int degree_limit = kNoLimit);
  // stop as soon as an element of degree >= d enters the basis
  void set_abort_degree(int d) { abort_degree_ = d; }
  // reduced elements whose leading component is >= comp are recorded in collected()
  // instead of entering the basis (syzygies in the tracking components)
  void set_collect_from(int comp) { collect_from_ = comp; }
  const std::vector<MVec>& collected() const { return collected_; }
  bool aborted() const { return aborted_; }

  // exact: true division, so the remainder is v minus a combination of the basis;
  // otherwise the remainder is determined up to a nonzero scalar
  MVec reduce(const MVec& v, bool exact = false) const;
  // interreduces, drops redundant elements, normalizes leading coefficients to 1
  void make_reduced();

  const std::vector<MVec>& basis() const { return basis_; }
  std::vector<MVec> active_basis() const;
  const ModuleOrder& order() const { return ord_; }
  const RingPtr& ring() const { return ring_; }
  const GBStats& stats() const { return stats_; }
  bool homogeneous() const { return homogeneous_; }

 private:
  struct Pair {
    int i, j;
    Monomial lcm;
    int comp;
    int degree;
    std::uint64_t seq;
  };

  RingPtr ring_;
  ModuleOrder ord_;
  bool rational_;
  bool homogeneous_ = true;
  bool rank1_ = true;
  std::vector<MVec> basis_;
  std::vector<bool> redundant_;
  std::vector<std::uint64_t> masks_;
  std::vector<MVec> pending_;
  std::vector<Pair> pairs_;
  std::uint64_t seq_ = 0;
  int abort_degree_ = -1;
  bool aborted_ = false;
  int collect_from_ = -1;
  std::vector<MVec> collected_;
  GBStats stats_;

  int find_reducer(const Monomial& m, int comp, std::uint64_t mask) const;
  void insert(MVec h);
  MVec spoly(int i, int j) const;
  void normalize(MVec& v) const;
};

}  // namespace koszulkit
