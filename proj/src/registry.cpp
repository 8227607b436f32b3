#include "ostrinv/registry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ostrinv {

namespace {

EtaMap make_trivial() {
  EtaMap m;
  m.fn = [](double x, double y) { return x - y; };
  m.domain = Domain::all_reals();
  m.label = "trivial";
  m.is_trivial = true;
  return m;
}

EtaMap make_sign_split() {
  EtaMap m;
  m.fn = [](double x, double y) { return x * y >= 0.0 ? x - y : y - x; };
  m.domain = Domain::all_reals();
  m.label = "sign_split";
  return m;
}

EtaMap make_nonzero_reals() {
  EtaMap m;
  m.fn = [](double x, double y) { return x * y > 0.0 ? x - y : -y; };
  m.domain = Domain::reals_except({0.0});
  m.label = "nonzero_reals";
  return m;
}

EtaMap make_double_step() {
  EtaMap m;
  m.fn = [](double x, double y) { return 2.0 * (x - y); };
  m.domain = Domain::all_reals();
  m.label = "double_step";
  return m;
}

EtaMap make_half_step() {
  EtaMap m;
  m.fn = [](double x, double y) { return 0.5 * (x - y); };
  m.domain = Domain::all_reals();
  m.label = "half_step";
  return m;
}

std::vector<double> parse_poly_label(const std::string& label) {
  // poly[c0;c1;...]
  auto lb = label.find('[');
  auto rb = label.rfind(']');
  if (lb == std::string::npos || rb == std::string::npos || rb <= lb) {
    throw std::invalid_argument("malformed polynomial label: " + label);
  }
  std::vector<double> coeffs;
  std::string body = label.substr(lb + 1, rb - lb - 1);
  std::istringstream in(body);
  std::string piece;
  while (std::getline(in, piece, ';')) {
    std::size_t used = 0;
    double c = std::stod(piece, &used);
    if (used != piece.size()) {
      throw std::invalid_argument("bad polynomial coefficient: " + piece);
    }
    coeffs.push_back(c);
  }
  if (coeffs.empty()) {
    throw std::invalid_argument("polynomial label has no coefficients");
  }
  return coeffs;
}

}  // namespace

EtaMap eta_map(const std::string& label) {
  if (label == "trivial") return make_trivial();
  if (label == "sign_split") return make_sign_split();
  if (label == "nonzero_reals") return make_nonzero_reals();
  if (label == "double_step") return make_double_step();
  if (label == "half_step") return make_half_step();
  throw std::invalid_argument("unknown eta map: " + label);
}

const std::vector<std::string>& eta_map_labels() {
  static const std::vector<std::string> labels = {
      "trivial", "sign_split", "nonzero_reals", "double_step", "half_step"};
  return labels;
}

ScalarFn scalar_fn(const std::string& label) {
  ScalarFn fn;
  fn.label = label;
  if (label == "identity") {
    fn.f = [](double x) { return x; };
    fn.df = [](double) { return 1.0; };
    return fn;
  }
  if (label == "square") {
    fn.f = [](double x) { return x * x; };
    fn.df = [](double x) { return 2.0 * x; };
    return fn;
  }
  if (label == "cube") {
    fn.f = [](double x) { return x * x * x; };
    fn.df = [](double x) { return 3.0 * x * x; };
    return fn;
  }
  if (label == "quartic_plus_x") {
    fn.f = [](double x) { return x * x * x * x + x; };
    fn.df = [](double x) { return 4.0 * x * x * x + 1.0; };
    return fn;
  }
  if (label == "exp") {
    fn.f = [](double x) { return std::exp(x); };
    fn.df = [](double x) { return std::exp(x); };
    return fn;
  }
  if (label == "neg_abs") {
    // Derivative left to finite differences; it has a corner at 0.
    fn.f = [](double x) { return -std::abs(x); };
    return fn;
  }
  throw std::invalid_argument("unknown function: " + label);
}

const std::vector<std::string>& scalar_fn_labels() {
  static const std::vector<std::string> labels = {
      "identity", "square", "cube", "quartic_plus_x", "exp", "neg_abs"};
  return labels;
}

ScalarFn poly_fn(const std::vector<double>& coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("polynomial needs at least one coefficient");
  }
  std::ostringstream label;
  label << "poly[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) label << ';';
    label << coeffs[i];
  }
  label << ']';

  ScalarFn fn;
  fn.label = label.str();
  fn.f = [coeffs](double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  fn.df = [coeffs](double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;) {
      acc = acc * x + coeffs[i] * static_cast<double>(i);
    }
    return acc;
  };
  return fn;
}

bool is_poly_label(const std::string& label) {
  return label.rfind("poly[", 0) == 0 && label.back() == ']';
}

ScalarFn fn_from_label(const std::string& label) {
  if (is_poly_label(label)) return poly_fn(parse_poly_label(label));
  return scalar_fn(label);
}

}  // namespace ostrinv
