#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/field.hpp"

namespace koszulkit {

constexpr int kMaxVars = 64;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;
  std::uint8_t n = 0;

  static Monomial one(int nvars);
  static Monomial var(int nvars, int i, int power = 1);

  int operator[](int i) const { return e[i]; }
  int nvars() const { return n; }
  void set(int i, int v);

  bool is_one() const { return deg == 0; }
  bool divides(const Monomial& m) const;
  Monomial operator*(const Monomial& m) const;
  // requires divides(*this)
  Monomial operator/(const Monomial& d) const;
  Monomial lcm(const Monomial& m) const;
  Monomial gcd(const Monomial& m) const;
  bool coprime(const Monomial& m) const;
  std::uint64_t divmask() const;

  bool operator==(const Monomial& m) const;
  bool operator!=(const Monomial& m) const { return !(*this == m); }
  std::size_t hash() const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { Degrevlex, Deglex, Block };

// perm lists variable indices from largest to smallest.
// Block(k): the first k variables of perm form an elimination block compared
// by degree then degrevlex; ties are broken by degrevlex on the rest.
struct MonomialOrder {
  OrderKind kind = OrderKind::Degrevlex;
  std::vector<int> perm;
  int block = 0;

  static MonomialOrder degrevlex(int n);
  static MonomialOrder degrevlex(std::vector<int> perm);
  static MonomialOrder deglex(int n);
  static MonomialOrder deglex(std::vector<int> perm);
  static MonomialOrder elimination(std::vector<int> perm, int block);

  // >0 if a > b, 0 if equal, <0 otherwise
  int compare(const Monomial& a, const Monomial& b) const;
  bool degree_compatible() const { return kind != OrderKind::Block; }
  std::string name() const;
  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && perm == o.perm && block == o.block;
  }
};

using Bidegree = std::array<int, 2>;

struct Ring {
  Field field;
  std::vector<std::string> names;
  // empty in the standard grading
  std::vector<Bidegree> bidegrees;

  int nvars() const { return static_cast<int>(names.size()); }
  bool bigraded() const { return !bidegrees.empty(); }
  int index_of(std::string_view name) const;
  std::string declaration() const;
  bool operator==(const Ring& o) const {
    return field == o.field && names == o.names && bidegrees == o.bidegrees;
  }
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(const Field& f, std::vector<std::string> names,
                  std::vector<Bidegree> bidegrees = {});
// "ring QQ [x,y,z]" or "ring F2 [x:(1,0), y:(1,0), a:(0,1)]"
RingPtr parse_ring(std::string_view decl, int line = 1);
// same names and grading over another field
RingPtr with_field(const RingPtr& r, const Field& f);
// r with extra variables appended (or prepended when front is true)
RingPtr extend_ring(const RingPtr& r, const std::vector<std::string>& extra, bool front);

bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial m;
  FieldElement c;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr r) : ring_(std::move(r)) {}

  static Polynomial constant(RingPtr r, const FieldElement& c);
  static Polynomial constant(RingPtr r, long c);
  static Polynomial variable(RingPtr r, int i);
  static Polynomial monomial(RingPtr r, const Monomial& m, const FieldElement& c);
  // sorts, merges equal monomials and drops zeros
  static Polynomial from_terms(RingPtr r, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  int degree() const;  // -1 for zero
  bool is_homogeneous() const;
  std::optional<Bidegree> bidegree() const;

  // leading term under ord (the stored order is degrevlex)
  const Term& lead(const MonomialOrder& ord) const;
  FieldElement coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& g) const;
  Polynomial operator-(const Polynomial& g) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& g) const;
  Polynomial operator*(const FieldElement& c) const;
  Polynomial mul_term(const Monomial& m, const FieldElement& c) const;
  Polynomial pow(int k) const;
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }

  bool operator==(const Polynomial& g) const;
  bool operator!=(const Polynomial& g) const { return !(*this == g); }

  // leading coefficient (under degrevlex) made one
  Polynomial monic() const;
  // variable i replaced by images[i]; images live in the target ring
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  // same exponents in another ring with the same number of variables
  Polynomial with_ring(const RingPtr& r) const;
  // homogeneous part of degree d
  Polynomial part(int d) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
  void check_ring(const Polynomial& g) const;
};

Polynomial parse_polynomial(const RingPtr& r, std::string_view text, int line = 1, int column0 = 1);
std::vector<Polynomial> parse_polynomial_list(const RingPtr& r, std::string_view text, int line = 1);

// all monomials of total degree d, descending in degrevlex
std::vector<Monomial> monomials_of_degree(int nvars, int d);

// moves variable i of f.ring() to map[i] in target; map[i] < 0 requires exponent zero
Polynomial map_variables(const Polynomial& f, const RingPtr& target, const std::vector<int>& map);

// coefficient vector of a linear form (length nvars)
std::vector<FieldElement> linear_coefficients(const Polynomial& f);
Polynomial linear_form(const RingPtr& r, const std::vector<FieldElement>& coeffs);

// Invertible substitution x_i -> sum_j m[i][j] x_j.
class LinearChange {
 public:
  LinearChange(RingPtr r, std::vector<std::vector<FieldElement>> m);
  static LinearChange identity(RingPtr r);

  const std::vector<std::vector<FieldElement>>& matrix() const { return m_; }
  const RingPtr& ring() const { return ring_; }
  Polynomial apply(const Polynomial& f) const;
  LinearChange inverse() const;

 private:
  RingPtr ring_;
  std::vector<std::vector<FieldElement>> m_;
  std::vector<Polynomial> images_;
};

}  // namespace koszulkit
