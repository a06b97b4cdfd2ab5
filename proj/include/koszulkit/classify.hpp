#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/betti.hpp"
#include "koszulkit/groebner.hpp"
#include "koszulkit/resolution.hpp"

namespace koszulkit {

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { CertifiedKoszul, CertifiedNonKoszul, Inconclusive };
std::string to_string(Verdict v);

// A named linear form or quadric realizing a structure template.
struct Witness {
  std::string name;
  Polynomial value;
};

// Structure templates. Each generates its ideal from named witnesses:
//   Ht1      a1x, ..., agx
//   Cross    xz, xw, yz, yw                    ((x,y) meet (z,w))
//   Square   x^2, xy, y^2, xz+yw
//   XSpan    xy, xz, xw, q
//   OneLin   xz, yz, a3x+b3y, a4x+b4y
//   FourA    x^2, b3x, a3x+b3y, a4x+b4y
//   FourB    xy, a2x, b3y, a4x+b4y
//   FourC    b3x, b4x, a3x+b3y, a4x+b4y
//   FourD    a1x, a2x, b3y, b4y
//   ThreeI   xz, xw, q3, q4
//   ThreeII  2x2 minors of (m11 m12; m21 m22; m31 m32), q4
//   CI       q1, ..., qg
enum class Template { Ht1, Cross, Square, XSpan, OneLin, FourA, FourB, FourC, FourD, ThreeI, ThreeII, CI };
std::string template_text(Template t);
std::vector<Polynomial> template_generators(Template t, const std::vector<Witness>& w);
const Polynomial& witness(const std::vector<Witness>& w, const std::string& name);

// Betti tables of height-two ideals of four quadrics defining Koszul algebras,
// in the order (i), (ii), (iii), (iv).
const std::vector<BettiTable>& koszul_height_two_tables();

// Generic lift with fresh variables for the witness linear forms, its quadratic
// Groebner basis, and the specializing linear forms L, regular modulo the lift.
struct LGCertificate {
  RingPtr lift_ring;
  Ideal generic;
  MonomialOrder order;
  GroebnerBasis gb;
  std::vector<Polynomial> specializing;
  // lift variable -> polynomial of the original ring (S variables to themselves)
  std::vector<Polynomial> images;
  bool quadratic = false;
  bool regular = false;
  bool specializes = false;

  bool valid() const { return quadratic && regular && specializes; }
  std::string to_string() const;
};

struct Certificate {
  // "lg-quadratic", "first-syzygy", "nonlinear-tor", "appendix-obstruction", "betti-table", "none"
  std::string kind = "none";
  std::optional<LGCertificate> lg;
  std::vector<std::vector<Polynomial>> syzygy_witnesses;
  std::optional<std::pair<int, int>> tor_position;  // (i, j)
  std::string text;
};

struct ClassificationReport {
  Ideal input;  // minimal generators
  int g = 0;
  int hgt = 0;
  long long e = 0;
  BettiTable betti;
  // ht1, 2i, 2ii, 2iii, 2iv-(a) .. 2iv-(d), ht3-i, ht3-ii, ht4-CI, no-Koszul-table,
  // and for inputs outside the four-quadric classification: CI (g < 4), unclassified,
  // unresolved (no subcase over the computation field)
  std::string matched_case;
  std::optional<Template> form;
  std::vector<Witness> witnesses;
  std::vector<std::string> checks;  // verified conditions
  Verdict verdict = Verdict::Inconclusive;
  Certificate certificate;
  std::string note;

  std::string to_string() const;
};

struct ClassifyOptions {
  // when positive, also resolve k over R up to this homological degree
  int bound = 0;
  std::uint64_t seed = 0;
};

ClassificationReport classify(const Ideal& I, const ClassifyOptions& opt = {});

// columns: a basis of the linear first syzygies of the minimal generators
PolyMatrix linear_syzygy_matrix(const Ideal& I);

struct GeneralizedZero {
  std::vector<FieldElement> u;  // row combination
  std::vector<FieldElement> v;  // column combination
  bool whole_row = false;       // u M = 0
};
// nonzero u, v over the field with u M v = 0, for a matrix of linear forms
std::optional<GeneralizedZero> find_generalized_zero(const PolyMatrix& M, std::uint64_t seed = 0);

struct FourMatch {
  bool found = false;
  char subcase = '?';  // 'a' .. 'd'
  std::vector<Witness> witnesses;
  std::vector<std::string> checks;
  bool zero_row = false;  // linear syzygy matrix has a generalized zero row
  std::string note;       // why nothing matched
};
// requires the Betti table (iv); found = false when no subcase is realized over
// the coefficient field
FourMatch match_form_2iv(const Ideal& I, std::uint64_t seed = 0);

// throws ClassificationError when the case carries no Koszul form
LGCertificate lg_quadratic_certificate(const Ideal& I, Template t, const std::vector<Witness>& w);
LGCertificate lg_quadratic_certificate(const ClassificationReport& r);
bool verify_certificate(const LGCertificate& c, const Ideal& I);

}  // namespace koszulkit
