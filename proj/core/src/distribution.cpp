#include "bceaoi/distribution.hpp"

#include <cmath>

#include "bceaoi/errors.hpp"
#include "bceaoi/rng.hpp"
#include "numeric_text.hpp"

namespace bceaoi {

namespace {

void require_non_negative(double v, std::string_view text) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ConfigError("distribution", "parameter must be finite and >= 0 in '" +
                                          std::string(text) + "'");
  }
}

}  // namespace

Distribution Distribution::fixed(double value) {
  require_non_negative(value, "fixed");
  return Distribution(Family::kFixed, value);
}

Distribution Distribution::exponential(double mean) {
  require_non_negative(mean, "exp");
  return Distribution(Family::kExponential, mean);
}

Distribution Distribution::parse(std::string_view text) {
  const std::string_view body = detail::trim(text);
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("distribution",
                      "expected 'fixed:<v>' or 'exp:<mean>', got '" + std::string(body) + "'");
  }
  const std::string_view family = detail::trim(body.substr(0, colon));
  const auto param = detail::parse_double(body.substr(colon + 1));
  if (!param) {
    throw ConfigError("distribution", "bad numeric parameter in '" + std::string(body) + "'");
  }
  if (family == "fixed") return fixed(*param);
  if (family == "exp") return exponential(*param);
  throw ConfigError("distribution", "unknown distribution family '" + std::string(family) + "'");
}

double Distribution::sample(RngStream& rng) const {
  if (family_ == Family::kFixed || mean_ == 0.0) return mean_;
  return rng.sample_exponential(1.0 / mean_);
}

std::string Distribution::to_string() const {
  return (family_ == Family::kFixed ? "fixed:" : "exp:") + detail::format_number(mean_);
}

}  // namespace bceaoi
