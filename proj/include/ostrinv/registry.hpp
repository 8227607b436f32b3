#pragma once

#include <string>
#include <vector>

#include "ostrinv/domain.hpp"

namespace ostrinv {

/// Built-in direction maps, by label:
///   trivial        x - y               on all reals
///   sign_split     x - y if xy >= 0, else y - x
///   nonzero_reals  x - y if xy > 0, else -y;  domain excludes 0
///   double_step    2(x - y)
///   half_step      (x - y)/2
EtaMap eta_map(const std::string& label);
const std::vector<std::string>& eta_map_labels();

/// Built-in test functions, by label:
///   identity, square, cube, quartic_plus_x (x^4 + x), exp, neg_abs (-|x|)
ScalarFn scalar_fn(const std::string& label);
const std::vector<std::string>& scalar_fn_labels();

/// Polynomial in ascending coefficient order; label "poly[c0;c1;...]".
/// Accepts either a coefficient vector or the bracket label itself.
ScalarFn poly_fn(const std::vector<double>& coeffs);
bool is_poly_label(const std::string& label);
ScalarFn fn_from_label(const std::string& label);  // registry or poly[...]

}  // namespace ostrinv
