#include "mcoac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mcoac/errors.hpp"
#include "mcoac/rng.hpp"

namespace mcoac {

namespace {

// Stream `round` field per estimator, so estimators sharing a seed never
// share draws.
enum class Estimator : std::uint64_t { kExpDiff = 1, kEsSuccess = 2, kEdError = 3, kTwoHop = 4 };

double binomial_pmf(int n, int k, double p) {
  double coeff = 1.0;
  for (int j = 1; j <= k; ++j) coeff = coeff * (n - k + j) / j;
  // pow handles the 0^0 = 1 corners exactly.
  return coeff * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{} must lie in [0, 1]", what));
}

McEstimate finish(std::uint64_t hits, std::uint64_t trials) {
  McEstimate est;
  est.trials = trials;
  est.hits = hits;
  est.mean = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

template <class Trial>
std::uint64_t block_hits(std::uint64_t block, std::uint64_t trials, std::uint64_t seed, Estimator which,
                         const Trial& trial) {
  const std::uint64_t begin = block * kMcBlockSize;
  const std::uint64_t end = std::min(trials, begin + kMcBlockSize);
  CounterRng rng(StreamId{seed, static_cast<std::uint64_t>(which), block, Purpose::kMonteCarlo});
  std::uint64_t hits = 0;
  for (std::uint64_t t = begin; t < end; ++t) hits += trial(rng) ? 1 : 0;
  return hits;
}

template <class Trial>
McEstimate run_parallel(std::uint64_t trials, std::uint64_t seed, Estimator which, int workers, const Trial& trial) {
  if (trials == 0) throw InvalidArgument("Monte-Carlo: trials must be >= 1");
  const auto blocks = static_cast<std::int64_t>((trials + kMcBlockSize - 1) / kMcBlockSize);
  std::uint64_t hits = 0;
#pragma omp parallel for num_threads(std::max(workers, 1)) schedule(static) reduction(+ : hits)
  for (std::int64_t b = 0; b < blocks; ++b) {
    hits += block_hits(static_cast<std::uint64_t>(b), trials, seed, which, trial);
  }
  return finish(hits, trials);
}

template <class Trial>
McEstimate run_serial(std::uint64_t trials, std::uint64_t seed, Estimator which, const Trial& trial) {
  if (trials == 0) throw InvalidArgument("Monte-Carlo: trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t b = 0; b * kMcBlockSize < trials; ++b) hits += block_hits(b, trials, seed, which, trial);
  return finish(hits, trials);
}

// Energy-detector decision between Exp(mu_plus) and Exp(mu_minus) draws.
int detector_sign(CounterRng& rng, double mu_plus, double mu_minus) {
  const double delta = exponential(rng, mu_plus) - exponential(rng, mu_minus);
  if (delta > 0.0) return 1;
  if (delta < 0.0) return -1;
  return fair_sign(rng);
}

bool es_correct(CounterRng& rng, double p_i, const ConnectivityParams& cp) {
  const int k_plus = binomial(rng, cp.k_c, p_i);
  const int k_minus = cp.k_c - k_plus;
  return detector_sign(rng, cp.symbol_energy * k_plus + cp.sigma2_es, cp.symbol_energy * k_minus + cp.sigma2_es) > 0;
}

struct EsSuccessTrial {
  double p_i;
  ConnectivityParams cp;
  bool operator()(CounterRng& rng) const { return es_correct(rng, p_i, cp); }
};

struct TwoHopTrial {
  ConnectivityParams cp;
  double p_i;
  bool operator()(CounterRng& rng) const {
    int s_plus = 0;
    for (int s = 0; s < cp.s_c; ++s) s_plus += es_correct(rng, p_i, cp) ? 1 : 0;
    const int s_minus = cp.s_c - s_plus;
    return detector_sign(rng, cp.symbol_energy * s_plus + cp.sigma2_ed, cp.symbol_energy * s_minus + cp.sigma2_ed) < 0;
  }
};

}  // namespace

double expdiff_pdf(double x, const ExpDiffDist& d) {
  if (!(d.mu1 > 0.0) || !(d.mu2 > 0.0)) throw InvalidArgument("expdiff: means must be > 0");
  const double norm = d.mu1 + d.mu2;
  return x > 0.0 ? std::exp(-x / d.mu1) / norm : std::exp(x / d.mu2) / norm;
}

double expdiff_positive_prob(const ExpDiffDist& d) {
  if (!(d.mu1 > 0.0) || !(d.mu2 > 0.0)) throw InvalidArgument("expdiff: means must be > 0");
  return d.mu1 / (d.mu1 + d.mu2);
}

void ConnectivityParams::validate() const {
  if (k_c < 1 || s_c < 1) throw InvalidArgument("connectivity: K_c and S_c must be >= 1");
  if (!(symbol_energy > 0.0)) throw InvalidArgument("connectivity: E_s must be > 0");
  if (sigma2_es < 0.0 || sigma2_ed < 0.0) throw InvalidArgument("connectivity: noise variances must be >= 0");
}

double es_success_prob(double p_i, const ConnectivityParams& cp) {
  cp.validate();
  check_probability(p_i, "p_i");
  const double signal = cp.symbol_energy * cp.k_c;
  return (signal * p_i + cp.sigma2_es) / (signal + 2.0 * cp.sigma2_es);
}

double es_success_prob_sum(double p_i, const ConnectivityParams& cp, Support support) {
  cp.validate();
  check_probability(p_i, "p_i");
  const double denom = cp.symbol_energy * cp.k_c + 2.0 * cp.sigma2_es;
  double total = 0.0;
  for (int k_plus = support == Support::kComplete ? 0 : 1; k_plus <= cp.k_c; ++k_plus) {
    total += (cp.symbol_energy * k_plus + cp.sigma2_es) / denom * binomial_pmf(cp.k_c, k_plus, p_i);
  }
  return total;
}

double ed_error_prob_sum(double p_y, const ConnectivityParams& cp, Support support) {
  cp.validate();
  check_probability(p_y, "p_y");
  const double denom = cp.symbol_energy * cp.s_c + 2.0 * cp.sigma2_ed;
  double total = 0.0;
  for (int s_plus = support == Support::kComplete ? 0 : 1; s_plus <= cp.s_c; ++s_plus) {
    const int s_minus = cp.s_c - s_plus;
    total += (cp.symbol_energy * s_minus + cp.sigma2_ed) / denom * binomial_pmf(cp.s_c, s_plus, p_y);
  }
  return total;
}

double correct_sign_prob(double gradient_snr) {
  if (!(gradient_snr > 0.0)) throw InvalidArgument("gradient SNR must be > 0");
  return 1.0 - std::numbers::sqrt2 / (3.0 * gradient_snr);
}

double ed_error_prob_bound(const ConnectivityParams& cp, double gradient_snr) {
  cp.validate();
  const double p_i = correct_sign_prob(gradient_snr);
  const double es = cp.symbol_energy;
  const double inner = (cp.sigma2_es + es * cp.k_c * p_i) / (es * cp.k_c + 2.0 * cp.sigma2_es);
  return (cp.sigma2_ed + es * cp.s_c * (1.0 - inner)) / (es * cp.s_c + 2.0 * cp.sigma2_ed);
}

double gradient_snr_as_printed(double abs_gradient, double sigma, double batch_size) {
  if (!(sigma > 0.0) || !(batch_size > 0.0)) throw InvalidArgument("gradient SNR: sigma and n_b must be > 0");
  return std::abs(abs_gradient) / (sigma * sigma / std::sqrt(batch_size));
}

double gradient_snr_variance_bound(double abs_gradient, double sigma, double batch_size) {
  if (!(sigma > 0.0) || !(batch_size > 0.0)) throw InvalidArgument("gradient SNR: sigma and n_b must be > 0");
  return std::abs(abs_gradient) / (sigma / std::sqrt(batch_size));
}

AB compute_ab(const ConnectivityParams& cp) {
  cp.validate();
  const double b = cp.s_c * (cp.sigma2_es + cp.symbol_energy * cp.k_c) /
                   (cp.symbol_energy * (cp.s_c + 2.0 * cp.sigma2_ed) * (cp.k_c + 2.0 * cp.sigma2_es));
  return {1.0 / (1.0 + cp.sigma2_ed) - b, b};
}

BoundResult convergence_bound(const BoundInputs& bi, const ConnectivityParams& cp) {
  if (bi.gamma < 1 || bi.rounds < 1 || bi.ed_count < 1) {
    throw InvalidArgument("convergence bound: gamma, T and K must be positive");
  }
  if (bi.initial_gap < 0.0 || bi.l_norm1 < 0.0 || bi.sigma_norm1 < 0.0) {
    throw InvalidArgument("convergence bound: gap and norms must be >= 0");
  }
  const AB ab = compute_ab(cp);
  BoundResult result;
  result.a = ab.a;
  result.b = ab.b;
  const double k = bi.ed_count;
  const double denom = (k - 2.0 * ab.a) * std::sqrt(static_cast<double>(bi.rounds));
  const double numer = bi.initial_gap + 0.5 * k * bi.l_norm1 +
                       2.0 * std::sqrt(static_cast<double>(bi.gamma)) * ab.b * (std::numbers::sqrt2 / 3.0) *
                           bi.sigma_norm1;
  if (k <= 2.0 * ab.a) result.warnings.push_back("nonpositive denominator: K <= 2A");
  if (ab.a < 0.0) result.warnings.push_back(fmt::format("A = {} is negative", ab.a));
  result.value = numer / denom;
  return result;
}

McEstimate mc_expdiff_positive(const ExpDiffDist& d, std::uint64_t trials, std::uint64_t seed, int workers) {
  if (!(d.mu1 > 0.0) || !(d.mu2 > 0.0)) throw InvalidArgument("expdiff: means must be > 0");
  return run_parallel(trials, seed, Estimator::kExpDiff, workers, [d](CounterRng& rng) {
    return exponential(rng, d.mu1) - exponential(rng, d.mu2) > 0.0;
  });
}

McEstimate mc_es_success(double p_i, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed,
                         int workers) {
  cp.validate();
  check_probability(p_i, "p_i");
  return run_parallel(trials, seed, Estimator::kEsSuccess, workers, EsSuccessTrial{p_i, cp});
}

McEstimate mc_ed_error(double p_y, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed,
                       Support support, int workers) {
  cp.validate();
  check_probability(p_y, "p_y");
  return run_parallel(trials, seed, Estimator::kEdError, workers, [cp, p_y, support](CounterRng& rng) {
    const int s_plus = binomial(rng, cp.s_c, p_y);
    if (s_plus == 0 && support == Support::kAsPrinted) return false;
    const int s_minus = cp.s_c - s_plus;
    return detector_sign(rng, cp.symbol_energy * s_plus + cp.sigma2_ed, cp.symbol_energy * s_minus + cp.sigma2_ed) < 0;
  });
}

McEstimate mc_two_hop_error(const ConnectivityParams& cp, double p_i, std::uint64_t trials, std::uint64_t seed,
                            int workers) {
  cp.validate();
  check_probability(p_i, "p_i");
  return run_parallel(trials, seed, Estimator::kTwoHop, workers, TwoHopTrial{cp, p_i});
}

namespace reference {

McEstimate mc_es_success(double p_i, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed) {
  cp.validate();
  return run_serial(trials, seed, Estimator::kEsSuccess, EsSuccessTrial{p_i, cp});
}

McEstimate mc_two_hop_error(const ConnectivityParams& cp, double p_i, std::uint64_t trials, std::uint64_t seed) {
  cp.validate();
  return run_serial(trials, seed, Estimator::kTwoHop, TwoHopTrial{cp, p_i});
}

}  // namespace reference

}  // namespace mcoac
