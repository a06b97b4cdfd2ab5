#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koszulkit/betti.hpp"
#include "koszulkit/gbengine.hpp"
#include "koszulkit/groebner.hpp"

namespace koszulkit {

// Graded free module S(-t_1) + ... + S(-t_r), stored by twists t_k.
struct FreeModule {
  std::vector<int> twists;

  int rank() const { return static_cast<int>(twists.size()); }
  std::string to_string() const;  // "S(-2)^4 + S(-3)", twists sorted
};

// Map source -> target; column c is the image of the c-th basis element of source.
// Entry (r, c) is zero or homogeneous of degree source[c] - target[r].
struct PolyMatrix {
  RingPtr ring;
  FreeModule target;  // rows
  FreeModule source;  // columns
  std::vector<std::vector<Polynomial>> entries;  // entries[r][c]

  PolyMatrix() = default;
  PolyMatrix(RingPtr r, FreeModule tgt, FreeModule src);  // zero matrix

  int rows() const { return target.rank(); }
  int cols() const { return source.rank(); }
  Polynomial& at(int r, int c) { return entries[r][c]; }
  const Polynomial& at(int r, int c) const { return entries[r][c]; }

  std::vector<Polynomial> column(int c) const;
  bool is_zero() const;
  bool is_homogeneous() const;  // every entry has the expected degree
  PolyMatrix transpose() const;  // dual map, twists negated
  std::string to_string() const;

  static PolyMatrix identity(RingPtr r, FreeModule m);
  // 1 x g matrix S(-deg g_1) + ... -> S
  static PolyMatrix row(const Ideal& I);
  // columns given as polynomial vectors of length target.rank()
  static PolyMatrix from_columns(RingPtr r, FreeModule tgt, const std::vector<std::vector<Polynomial>>& cols);
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

// F_0 <- F_1 <- ... <- F_n; maps[k] is the differential F_{k+1} -> F_k.
struct FreeComplex {
  RingPtr ring;
  std::vector<FreeModule> modules;
  std::vector<PolyMatrix> maps;
  bool minimal = false;

  int length() const { return static_cast<int>(maps.size()); }
  const PolyMatrix& d(int i) const { return maps.at(i - 1); }  // F_i -> F_{i-1}
  bool is_complex() const;           // consecutive composites vanish
  bool has_unit_entries() const;     // a nonzero constant entry somewhere
  BettiTable betti() const;
};

struct Resolution {
  FreeComplex complex;
  BettiTable betti;
};

// minimal generators of the kernel of M (M homogeneous)
PolyMatrix syzygies(const PolyMatrix& M, const MonomialOrder& ord);
PolyMatrix syzygies(const PolyMatrix& M);

// drops columns that are redundant generators of the column span
PolyMatrix minimal_columns(const PolyMatrix& M);

// minimal graded free resolution of S/I up to homological degree max_hom_degree
Resolution minimal_resolution(const Ideal& I, int max_hom_degree);
Resolution minimal_resolution(const Ideal& I, int max_hom_degree, const MonomialOrder& ord);
// minimal resolution of coker M, starting from a minimal presentation
Resolution resolve_cokernel(const PolyMatrix& M, int max_hom_degree);

// removes unit entries by Gaussian elimination, keeping d o d = 0
FreeComplex minimalize(const FreeComplex& F);

// adds s to every twist
FreeComplex twist(const FreeComplex& F, int s);

// Solves M w = v.  Builds the module basis once for many right-hand sides.
class MatrixSolver {
 public:
  explicit MatrixSolver(const PolyMatrix& M);
  std::optional<std::vector<Polynomial>> solve(const std::vector<Polynomial>& v) const;

 private:
  RingPtr ring_;
  int rows_, cols_;
  std::shared_ptr<GBEngine> engine_;
};

std::optional<std::vector<Polynomial>> lift(const PolyMatrix& M, const std::vector<Polynomial>& v);

// Chain map over f0: top_0 -> bottom_0; returns L_0 = f0, L_1, ..., L_{top.length()}
// with bottom.d(i) L_i = L_{i-1} top.d(i).  Throws std::runtime_error naming the
// failing index if some lift does not exist.
std::vector<PolyMatrix> lift_chain_map(const PolyMatrix& f0, const FreeComplex& top,
                                       const FreeComplex& bottom);

// cone C_i = bottom_i + top_{i-1}, d = [[d_bottom, L], [0, -d_top]]
FreeComplex mapping_cone(const std::vector<PolyMatrix>& L, const FreeComplex& top,
                         const FreeComplex& bottom);

// ideal of k x k minors (k = 0 gives the unit ideal)
Ideal minors(const PolyMatrix& M, int k);

struct BEReport {
  bool acyclic = false;
  bool complex_ok = false;
  std::vector<int> expected_rank;  // index i: r_i for phi_i, i >= 1 (index 0 unused)
  std::vector<int> minor_height;   // height of I_{r_i}(phi_i)
  std::string text;
};

// Buchsbaum-Eisenbud acyclicity criterion; throws std::logic_error if some r_i < 0
BEReport buchsbaum_eisenbud_check(const FreeComplex& F);

// annihilator of Ext^i_S(S/I, S)
Ideal ann_ext(const Ideal& I, int i);
Ideal ann_ext(const Resolution& R, int i);

// { s : s v in span(B) } for v and columns of B in the same free module
Ideal module_colon(const PolyMatrix& B, const std::vector<Polynomial>& v, int v_degree);

}  // namespace koszulkit
