#pragma once

#include <string>
#include <vector>

#include "koszulkit/groebner.hpp"

namespace koszulkit {

// Integer polynomial in t, coefficient of t^k at index k.
using IntPoly = std::vector<long long>;

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_one_minus_t_pow(int k);  // (1-t)^k
std::string ipoly_to_string(const IntPoly& p);

struct HilbertData {
  int nvars = 0;
  // H_{S/I}(t) = kpoly / (1-t)^nvars = numerator / (1-t)^dim
  IntPoly kpoly;
  IntPoly numerator;
  int dim = 0;
  int codim = 0;
  long long e = 0;

  // dim_k (S/I)_d for d = 0..upto
  std::vector<long long> function(int upto) const;
};

HilbertData hilbert_from_monomials(int nvars, const std::vector<Monomial>& gens);
HilbertData hilbert_of_quotient(const Ideal& I);
int height(const Ideal& I);

// H_{S/(I+L)} == (1-t)^{|L|} H_{S/I}
bool is_regular_sequence_mod(const Ideal& I, const std::vector<Polynomial>& L);

}  // namespace koszulkit
