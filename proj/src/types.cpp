#include "betamix/types.hpp"

#include <cmath>
#include <string>

#include "betamix/errors.hpp"

namespace betamix {

RealPath::RealPath(std::vector<double> v) : values(std::move(v)) {
  if (values.size() < 2) throw DomainError("sample path needs at least 2 observations");
}

SymbolPath::SymbolPath(std::vector<std::uint32_t> s, std::size_t alphabet)
    : symbols(std::move(s)), alphabet_size(alphabet) {
  if (symbols.size() < 2) throw DomainError("sample path needs at least 2 observations");
  if (alphabet_size == 0) throw DomainError("alphabet size must be positive");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= alphabet_size) {
      throw DomainError("symbol " + std::to_string(symbols[i]) + " at position " +
                        std::to_string(i) + " outside alphabet of size " +
                        std::to_string(alphabet_size));
    }
  }
}

MixingEnvelope::MixingEnvelope(double eta_, double gamma_) : eta(eta_), gamma(gamma_) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("mixing envelope: eta must be > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError("mixing envelope: gamma must be > 0");
}

SmoothnessSpec::SmoothnessSpec(double s_, double besov_bound_) : s(s_), besov_bound(besov_bound_) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("smoothness s must be > 1");
  if (!(besov_bound > 0.0)) throw DomainError("Besov norm bound must be > 0");
  // {s} lies in (0, 1], so integer s splits as (s - 1) + 1.
  const double fl = std::floor(s);
  int_part = static_cast<int>(fl == s ? fl - 1.0 : fl);
  frac_part = s - int_part;
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kde: return "kde";
    case EstimatorKind::finite: return "finite";
    case EstimatorKind::acf: return "acf";
  }
  return "unknown";
}

}  // namespace betamix
