#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "koszulkit/classify.hpp"

namespace koszulkit {

struct GeneratedIdeal {
  std::string form;  // a classifier case name
  Template t;
  std::vector<Witness> witnesses;
  Ideal ideal;
  int attempts = 0;  // samples drawn before the conditions held
};

// case names accepted by generate_form
const std::vector<std::string>& generator_forms();

// default number of variables for a form
int default_variables(const std::string& form);

// Random witnesses for the form over r (dense random linear forms and quadrics),
// resampled until the height conditions of the form hold. "2i" picks one of its
// three shapes from the seed; "2i-cross", "2i-square", "2i-span" select one.
GeneratedIdeal generate_form(const std::string& form, const RingPtr& r, std::uint64_t seed);
// same, in the default ring x1..xn over f
GeneratedIdeal generate_form(const std::string& form, const Field& f, std::uint64_t seed);

}  // namespace koszulkit
