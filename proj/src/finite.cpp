#include "betamix/finite.hpp"

#include <cmath>
#include <string>

#include "betamix/blocks.hpp"
#include "betamix/errors.hpp"

namespace betamix {

namespace {

std::vector<std::uint64_t> marginal_table(const SymbolPath& path, std::size_t k, std::size_t N) {
  std::vector<std::uint64_t> counts(path.alphabet_size, 0);
  for (std::size_t i = 0; i < 2 * N; ++i) ++counts[path[k * i]];
  return counts;
}

BetaEstimate make_estimate(const EmpiricalPairMeasure& emp, std::size_t m, std::size_t k) {
  BetaEstimate est;
  est.m = m;
  est.k = k;
  est.n_pairs = emp.N;
  est.kind = EstimatorKind::finite;
  est.beta_hat = beta_hat_finite(emp);
  est.diagnostics.raw_beta_hat = est.beta_hat;
  if (k == m) est.diagnostics.warnings.push_back("k == m: coupling argument assumes k > m");
  return est;
}

}  // namespace

EmpiricalPairMeasure count_pairs(const SymbolPath& path, std::size_t m, std::size_t k) {
  if (path.size() < 2 * (k + 1) + m) {
    throw DomainError("path length " + std::to_string(path.size()) + " below 2(k+1)+m = " +
                      std::to_string(2 * (k + 1) + m));
  }
  const BlockPlan plan = make_block_plan(k, m, path.size());
  EmpiricalPairMeasure emp;
  emp.alphabet_size = path.alphabet_size;
  emp.pair_counts.assign(path.alphabet_size * path.alphabet_size, 0);
  for (const auto& [a, b] : pair_indices(plan)) {
    ++emp.pair_counts[path[a] * path.alphabet_size + path[b]];
  }
  emp.N = plan.N;
  emp.marginal_counts = marginal_table(path, k, plan.N);
  emp.M = 2 * plan.N;
  return emp;
}

double beta_hat_finite(const EmpiricalPairMeasure& emp) {
  if (emp.N < 1 || emp.M < 1) throw DomainError("empirical measure needs N >= 1 and M >= 1");
  const std::size_t a = emp.alphabet_size;
  const double N = static_cast<double>(emp.N);
  const double M = static_cast<double>(emp.M);
  double total = 0.0;
  for (std::size_t u = 0; u < a; ++u) {
    const double pu = static_cast<double>(emp.marginal_counts[u]) / M;
    for (std::size_t v = 0; v < a; ++v) {
      const double pv = static_cast<double>(emp.marginal_counts[v]) / M;
      const double joint = static_cast<double>(emp.pair_count(u, v)) / N;
      total += std::abs(joint - pu * pv);
    }
  }
  return 0.5 * total;
}

BetaEstimate estimate_beta_finite(const SymbolPath& path, std::size_t m, const FiniteSkip& skip) {
  std::size_t k = 0;
  if (const auto* fixed = std::get_if<std::size_t>(&skip)) {
    k = *fixed;
  } else {
    k = k_star_finite(std::get<MixingEnvelope>(skip), path.alphabet_size, path.size());
  }
  if (m > k) {
    throw DomainError("lag m = " + std::to_string(m) + " exceeds skip length k = " +
                      std::to_string(k));
  }
  return make_estimate(count_pairs(path, m, k), m, k);
}

std::vector<BetaEstimate> estimate_beta_sup(const SymbolPath& path, const FiniteSkip& skip) {
  std::size_t k = 0;
  if (const auto* fixed = std::get_if<std::size_t>(&skip)) {
    k = *fixed;
  } else {
    k = k_dagger(std::get<MixingEnvelope>(skip), path.alphabet_size, path.size());
  }
  const BlockPlan plan = make_block_plan(k, k, path.size());
  const std::size_t a = path.alphabet_size;

  // Block i covers X_{2i(k+1)} .. X_{2i(k+1)+k}; lag m pairs its first element with
  // element m, so every lag reads the same blocks.
  std::vector<EmpiricalPairMeasure> per_lag(k);
  for (auto& emp : per_lag) {
    emp.alphabet_size = a;
    emp.pair_counts.assign(a * a, 0);
    emp.N = plan.N;
  }
  for (std::size_t i = 0; i < plan.N; ++i) {
    const std::size_t start = 2 * i * (k + 1);
    const std::size_t u = path[start];
    for (std::size_t m = 1; m <= k; ++m) ++per_lag[m - 1].pair_counts[u * a + path[start + m]];
  }
  const auto marginals = marginal_table(path, k, plan.N);

  std::vector<BetaEstimate> out;
  out.reserve(k);
  for (std::size_t m = 1; m <= k; ++m) {
    auto& emp = per_lag[m - 1];
    emp.marginal_counts = marginals;
    emp.M = 2 * plan.N;
    out.push_back(make_estimate(emp, m, k));
  }
  return out;
}

}  // namespace betamix
