#pragma once

#include <random>
#include <vector>

#include "koszulkit/groebner.hpp"

namespace koszulkit {

// Univariate polynomial, coefficient of s^k at index k.
using UPoly = std::vector<FieldElement>;

UPoly upoly_trim(UPoly p);
UPoly upoly_gcd(const UPoly& a, const UPoly& b);  // monic, or empty when both are zero

// distinct roots in the coefficient field, ascending by residue (F_p) or value (Q)
std::vector<FieldElement> univariate_roots(const Field& f, const UPoly& p);

FieldElement random_element(const Field& f, std::mt19937_64& rng, bool nonzero = false);

using Point = std::vector<FieldElement>;

// Rational points of the projective scheme of a homogeneous ideal. Positive
// dimensional schemes are first cut by random hyperplanes down to finitely many
// points, so only top-dimensional components are represented. Each point is
// scaled so its first nonzero coordinate is one.
std::vector<Point> projective_points(const Ideal& J, std::mt19937_64& rng);

// Bilinear system sum_{i,j} eqs[e][i][j] s_i t_j = 0 for every e.
// Returns rational points s (with some nonzero t solving the system) found by
// projective_points on the projection to the s-space.
std::vector<Point> bilinear_points(const Field& f, int a, int b,
                                   const std::vector<std::vector<std::vector<FieldElement>>>& eqs,
                                   std::mt19937_64& rng);

// basis of {t : sum_j m[e][j] t_j = 0 for all e}
std::vector<Point> linear_kernel(const Field& f, int b, const std::vector<std::vector<FieldElement>>& m);

}  // namespace koszulkit
