#include "cvmi/closed_forms.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace cvmi {

namespace {

double to_base(double nats, LogBase base) {
  return base == LogBase::Bits ? nats / std::log(2.0) : nats;
}

// Optimal squeezed variance for the amplified single-use 1D squeezed scheme.
double squeezed_variance_single(double n, double g) {
  const double q = 4.0 * g * (n + 0.5);
  return (g + std::sqrt(g * g - (1.0 - g - q) * (g - 1.0))) / (g + q - 1.0);
}

// Optimal squeezed variance for the amplified double-use 1D squeezed scheme.
double squeezed_variance_double(double n, double g) {
  const double q = 2.0 * g * (n + 1.0);
  return (g + std::sqrt(g * g - (1.0 - g - q) * (g - 1.0))) / (g + q - 1.0);
}

double eq5_nats(double n, double g) {
  const double v = squeezed_variance_single(n, g);
  const double snr = (4.0 * g * (n + 0.5) - g * v - g / v) / (g * v + g - 1.0);
  return 0.5 * std::log1p(snr);
}

double eq11_nats(double n, double g) {
  const double v = squeezed_variance_double(n, g);
  const double snr = (2.0 * g * (n + 1.0) - g * v - g / v) / (g * v + g - 1.0);
  return std::log1p(snr);
}

double a1_nats(double n) {
  const double root = std::sqrt(n + 1.0);
  const double num = root * (4.0 * n + 3.0) * (4.0 * n + 3.0);
  const double den = 5.0 * root + 4.0 * n * (root + 1.0) + 4.0;
  return 0.5 * std::log(num / den);
}

double a2_nats(double n) {
  const double root = std::sqrt(2.0) * std::sqrt(n + 2.0);
  const double num = root * (2.0 * n + 3.0) * (2.0 * n + 3.0);
  const double den = 2.0 * root * n + 4.0 * n + 5.0 * root + 8.0;
  return std::log(num / den);
}

const std::unordered_map<std::string, std::string>& scheme_aliases() {
  static const std::unordered_map<std::string, std::string> aliases = {
      {"1d_coh_1", "eq4"},   {"1d_sq_1", "eq5"},     {"2d_coh_1", "eq6"},
      {"1d_coh_2", "eq10"},  {"1d_sq_2", "eq11"},    {"2d_coh_2", "eq12"},
      {"epr_disp_2", "eq13"}, {"conj_coh_2", "eq14"}, {"epr_conj_2", "eq15"},
      {"dense_coding", "dense_coding"},
  };
  return aliases;
}

}  // namespace

const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids = {
      "eq1",  "eq2",  "eq3",  "eq4",  "eq5",  "eq6",  "eq7",       "eq8",
      "eq9",  "eq10", "eq11", "eq12", "eq13", "eq14", "eq15",      "dense_coding",
      "a1",   "a2",   "eq4_limit", "eq10_limit"};
  return ids;
}

double formula_mi(const std::string& id, double n, double g, LogBase base) {
  if (n < 0.0) throw std::invalid_argument("photon number must be nonnegative");
  if (g < 1.0) throw std::invalid_argument("gain must be at least 1");
  if (n == 0.0) return 0.0;

  std::string tag = id;
  if (auto it = scheme_aliases().find(id); it != scheme_aliases().end()) tag = it->second;

  double nats;
  if (tag == "eq1")
    nats = 0.5 * std::log1p(4.0 * n);
  else if (tag == "eq2")
    nats = std::log1p(2.0 * n);
  else if (tag == "eq3" || tag == "eq6" || tag == "eq10_limit")
    nats = std::log1p(n);
  else if (tag == "eq4")
    nats = 0.5 * std::log1p(4.0 * g * n / (2.0 * g - 1.0));
  else if (tag == "eq5")
    nats = eq5_nats(n, g);
  else if (tag == "eq7" || tag == "eq14")
    nats = std::log1p(2.0 * n);
  else if (tag == "eq8" || tag == "eq15")
    nats = 2.0 * std::log1p(n);
  else if (tag == "eq9" || tag == "eq12")
    nats = 2.0 * std::log1p(0.5 * n);
  else if (tag == "eq10")
    nats = std::log1p(2.0 * g * n / (2.0 * g - 1.0));
  else if (tag == "eq11")
    nats = eq11_nats(n, g);
  else if (tag == "eq13")
    nats = std::log1p(n + 0.5 * n * n);
  else if (tag == "dense_coding")
    nats = std::log1p(n + n * n);
  else if (tag == "eq4_limit")
    nats = 0.5 * std::log1p(2.0 * n);
  else if (tag == "a1")
    nats = a1_nats(n);
  else if (tag == "a2")
    nats = a2_nats(n);
  else
    throw std::invalid_argument("unknown formula id: " + id);
  return to_base(nats, base);
}

double optimal_variance(const std::string& scheme_id, double n, double g) {
  if (n < 0.0) throw std::invalid_argument("photon number must be nonnegative");
  if (g < 1.0) throw std::invalid_argument("gain must be at least 1");
  if (scheme_id == "1d_sq_1") return squeezed_variance_single(n, g);
  if (scheme_id == "1d_sq_2") return squeezed_variance_double(n, g);
  if (scheme_id == "epr_disp_2" || scheme_id == "epr_conj_2") return 1.0 / (1.0 + n);
  if (scheme_id == "dense_coding") return 1.0 / (2.0 * n + 1.0);
  throw std::invalid_argument("scheme has no free variance: " + scheme_id);
}

double high_gain_limit(const std::string& scheme_id, double n, LogBase base) {
  if (scheme_id == "1d_coh_1") return formula_mi("eq4_limit", n, 1.0, base);
  if (scheme_id == "1d_coh_2") return formula_mi("eq10_limit", n, 1.0, base);
  if (scheme_id == "1d_sq_1") return formula_mi("a1", n, 1.0, base);
  if (scheme_id == "1d_sq_2") return formula_mi("a2", n, 1.0, base);
  throw std::invalid_argument("no high-gain limit for scheme: " + scheme_id);
}

}  // namespace cvmi
