#pragma once

#include <string>

#include "koszulkit/groebner.hpp"
#include "koszulkit/polyring.hpp"

namespace kt {

using namespace koszulkit;

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }
inline Ideal Id(const RingPtr& r, const std::string& s) { return Ideal::parse(r, s); }

}  // namespace kt
