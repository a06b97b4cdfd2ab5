#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/gbengine.hpp"
#include "koszulkit/polyring.hpp"

namespace koszulkit {

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> gens;

  Ideal() = default;
  Ideal(RingPtr r, std::vector<Polynomial> g);
  static Ideal parse(const RingPtr& r, std::string_view text, int line = 1);
  bool is_homogeneous() const;
  bool is_zero() const;
  std::string to_string() const;
};

struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order;
  std::vector<Polynomial> elems;
  bool reduced = false;
  // reducer over elems; built by buchberger, rebuilt on demand otherwise
  std::shared_ptr<const GBEngine> engine;

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  std::vector<Monomial> leading_monomials() const;
  bool is_unit_ideal() const;
};

struct GBOptions {
  // stop after an element of degree >= abort_degree appears (-1: never)
  int abort_degree = -1;
  int degree_limit = -1;
};

GroebnerBasis buchberger(const Ideal& I, const MonomialOrder& ord, const GBOptions& opt = {});
GroebnerBasis buchberger(const Ideal& I);  // degrevlex in declared order

// every S-pair of G reduces to zero modulo G
bool verify_gb(const GroebnerBasis& G);
bool is_quadratic_gb(const GroebnerBasis& G);

bool contains(const Ideal& I, const Polynomial& f);
bool is_subset(const Ideal& I, const Ideal& J);
bool ideal_equal(const Ideal& I, const Ideal& J);

// minimal homogeneous generators, chosen greedily in degree then input order
Ideal mingens(const Ideal& I);

Ideal colon(const Ideal& I, const Polynomial& f);
Ideal colon(const Ideal& I, const Ideal& J);
Ideal intersect(const Ideal& I, const Ideal& J);
// I intersected with the subring not involving vars; generators stay in I.ring
Ideal eliminate(const Ideal& I, const std::vector<int>& vars);
Ideal saturate(const Ideal& I, const Ideal& J);
Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);

// degree-d part of I as a row-reduced basis of polynomials (homogeneous I)
std::vector<Polynomial> degree_part(const Ideal& I, int d);

struct GQuadraticWitness {
  int trial = 0;
  LinearChange change;
  MonomialOrder order;
  GroebnerBasis basis;
};

struct GQuadraticSearch {
  std::optional<GQuadraticWitness> witness;
  int trials_run = 0;
  std::string field;
  std::string message;
};

struct GQSearchOptions {
  int changes = 20;
  int permutations = 50;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: from KOSZULKIT_THREADS or 1
};

GQuadraticSearch g_quadratic_search(const Ideal& I, const GQSearchOptions& opt);

// worker count from KOSZULKIT_THREADS (at least 1)
int configured_threads();

}  // namespace koszulkit
