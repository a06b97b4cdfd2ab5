#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/quotient.hpp"
#include "koszulkit/resolution.hpp"

namespace koszulkit {

// R = k[x,y,a,b]/(bx, xy, ax-by, x^2-y^2), bigraded by deg x = deg y = (1,0),
// deg a = deg b = (0,1), with U = (a, b) and the displayed differentials of
// the first steps of the resolution of U.
struct AppendixInstance {
  Field field;
  RingPtr ring;
  Ideal ideal;
  std::shared_ptr<QuotientRing> quotient;
  Ideal U;
  // d[0] = (a b) : F_0 -> R, d[i] : F_i -> F_{i-1} for i = 1..4
  std::vector<PolyMatrix> d;
  // bidegrees of the generators of F_0..F_4 (F_{-1} = R is implicit)
  std::vector<std::vector<GradeKey>> gen_degrees;

  static AppendixInstance make(const Field& f);
};

// Standard-monomial counts of R_(p,q) against {a^i b^j, x a^i, y a^i, x^2}, and
// linear independence of those elements, for p + q <= bound.
struct BasisCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
BasisCheck check_basis(const AppendixInstance& A, int total_degree_bound);

struct DifferentialReport {
  bool ok = true;                    // d1..d3 checks, and d4 unless char 2
  bool d4_complete = false;          // image of d4 equals ker d3 in every checked bidegree
  std::optional<GradeKey> d4_gap;    // first bidegree where it does not
  std::vector<std::string> failures;
  std::string text;
};
// d_i d_{i+1} = 0 over R; entries in R_+; column counts 3, 6, 11, 20; in every
// bidegree of total degree <= bound, image of d_{i+1} equals ker d_i
DifferentialReport verify_differentials(const AppendixInstance& A, int total_degree_bound = 7);

struct Obstruction {
  int hom = -1;          // homological degree in the resolution of U
  GradeKey bidegree;     // internal bidegree of the nonlinear generator
  int total = -1;
  std::vector<int> ranks;  // ranks of the resolution of U, index 0 = generators of U
  TruncatedResolution resolution;  // of R/U over R
  std::string to_string() const;
};
// first nonlinear minimal generator in the resolution of U over R, searched up to
// homological degree max_hom of U; nullopt if none
std::optional<Obstruction> find_obstruction(const AppendixInstance& A, int max_hom = 5);

// k resolved directly over R: first nonlinear position (i, j) within hom_bound
std::optional<std::pair<int, int>> residue_field_obstruction(const AppendixInstance& A, int hom_bound = 6);

struct AppendixReport {
  std::string field;
  bool basis_ok = false;
  DifferentialReport differentials;
  std::optional<Obstruction> obstruction;
  bool obstruction_expected = false;  // position matches the characteristic
  bool pass = false;
  std::string to_string() const;
};
// full run for one characteristic; expected obstruction is (4, (4,2)) in
// characteristic 2 and (5, (5,2)) otherwise
AppendixReport run_appendix(const Field& f);

// cached obstruction for the field, used by the classifier
const Obstruction& appendix_obstruction(const Field& f);

}  // namespace koszulkit
