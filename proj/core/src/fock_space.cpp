#include "focklab/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "focklab/special.hpp"

namespace focklab {

Complex basis_eval(std::size_t n, ComplexPoint z) {
  if (n == 0) return {1.0, 0.0};
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  const double dn = static_cast<double>(n);
  const double log_mod = 0.5 * (dn * std::log(kPi) - log_factorial(n)) + dn * std::log(r);
  return std::polar(std::exp(log_mod), dn * std::arg(z));
}

void basis_values(ComplexPoint z, std::span<Complex> out) {
  if (out.empty()) return;
  out[0] = {1.0, 0.0};
  for (std::size_t n = 1; n < out.size(); ++n) {
    out[n] = out[n - 1] * z * std::sqrt(kPi / static_cast<double>(n));
  }
}

FockFunction::FockFunction(std::size_t truncation) : coeffs_(truncation) {
  if (truncation == 0) throw std::invalid_argument("FockFunction: truncation must be >= 1");
}

FockFunction::FockFunction(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("FockFunction: truncation must be >= 1");
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("FockFunction: non-finite coefficient");
    }
  }
}

FockFunction FockFunction::basis_vector(std::size_t n, std::size_t truncation) {
  if (n >= truncation) throw std::out_of_range("FockFunction::basis_vector: n >= truncation");
  std::vector<Complex> c(truncation);
  c[n] = 1.0;
  return FockFunction(std::move(c));
}

double FockFunction::norm_squared() const {
  CompensatedSum s;
  for (const auto& c : coeffs_) s.add(std::norm(c));
  return s.value();
}

bool FockFunction::is_unit(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

FockFunction FockFunction::normalized() const {
  const double n2 = norm_squared();
  if (n2 == 0.0) throw std::domain_error("FockFunction::normalized: zero function");
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= inv;
  return FockFunction(std::move(c));
}

Complex FockFunction::operator()(ComplexPoint z) const {
  Complex basis{1.0, 0.0};
  Complex sum = coeffs_[0];
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    basis *= z * std::sqrt(kPi / static_cast<double>(n));
    sum += coeffs_[n] * basis;
  }
  return sum;
}

Complex eval(const FockFunction& f, ComplexPoint z) { return f(z); }

Complex inner(const FockFunction& f, const FockFunction& g) {
  const std::size_t n = std::min(f.truncation(), g.truncation());
  Complex sum{};
  for (std::size_t k = 0; k < n; ++k) sum += f.coeffs()[k] * std::conj(g.coeffs()[k]);
  return sum;
}

Complex kernel(ComplexPoint z, ComplexPoint w) { return std::exp(kPi * std::conj(w) * z); }

CoherentState coherent(ComplexPoint w0, std::size_t truncation) {
  if (truncation == 0) throw std::invalid_argument("coherent: truncation must be >= 1");
  const double r = std::abs(w0);
  const double mean = kPi * r * r;
  std::vector<Complex> c(truncation);
  c[0] = std::exp(-0.5 * mean);
  if (r > 0.0) {
    const double log_r = std::log(r);
    const double phase = -std::arg(w0);
    for (std::size_t n = 1; n < truncation; ++n) {
      const double dn = static_cast<double>(n);
      const double log_mod = -0.5 * mean + 0.5 * (dn * std::log(kPi) - log_factorial(n)) + dn * log_r;
      c[n] = std::polar(std::exp(log_mod), dn * phase);
    }
  }
  CoherentState out{FockFunction(std::move(c)), poisson_tail(truncation, mean), false};
  out.under_resolved = out.tail_mass > kCoherentTailThreshold;
  return out;
}

double pointwise_bound_check(const FockFunction& f, std::span<const ComplexPoint> samples) {
  double best = 0.0;
  for (const auto& z : samples) {
    const double v = std::norm(f(z)) * std::exp(-kPi * std::norm(z));
    best = std::max(best, v);
  }
  return best;
}

std::vector<ComplexPoint> square_grid(double extent, std::size_t half_count) {
  std::vector<ComplexPoint> pts;
  const std::size_t side = 2 * half_count + 1;
  pts.reserve(side * side);
  const double h = half_count == 0 ? 0.0 : extent / static_cast<double>(half_count);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      pts.emplace_back((static_cast<double>(i) - static_cast<double>(half_count)) * h,
                       (static_cast<double>(j) - static_cast<double>(half_count)) * h);
    }
  }
  return pts;
}

void to_json(nlohmann::json& j, const FockFunction& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back({c.real(), c.imag()});
  j = nlohmann::json{{"truncation", f.truncation()}, {"coeffs", std::move(coeffs)}};
}

FockFunction fock_function_from_json(const nlohmann::json& j) {
  if (j.contains("weight")) {
    const auto w = j.at("weight").get<std::string>();
    if (w != "exp(-pi|z|^2)") {
      throw std::invalid_argument("FockFunction: unsupported Fock convention '" + w +
                                  "'; only weight exp(-pi|z|^2) is supported");
    }
  }
  const auto n = j.at("truncation").get<std::size_t>();
  if (n == 0) throw std::invalid_argument("FockFunction: truncation must be >= 1");
  const auto& arr = j.at("coeffs");
  if (arr.size() > n) throw std::invalid_argument("FockFunction: more coeffs than truncation");
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& pair = arr.at(k);
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("FockFunction: coeffs entries must be [re, im]");
    }
    c[k] = {pair[0].get<double>(), pair[1].get<double>()};
  }
  return FockFunction(std::move(c));
}

}  // namespace focklab
