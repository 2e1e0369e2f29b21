#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mcoac {

/// Difference X = E1 - E2 of independent exponentials with means mu1, mu2.
struct ExpDiffDist {
  double mu1 = 1.0;
  double mu2 = 1.0;
};

double expdiff_pdf(double x, const ExpDiffDist& d);

/// P(X > 0) = mu1 / (mu1 + mu2).
double expdiff_positive_prob(const ExpDiffDist& d);

/// Fixed-connectivity regime: every ES hears K_c EDs and every ED hears S_c
/// ESs, all at unit gain.
struct ConnectivityParams {
  int k_c = 1;
  int s_c = 1;
  double symbol_energy = 2.0;
  double sigma2_es = 0.0;
  double sigma2_ed = 0.0;

  void validate() const;
};

/// Support of the binomial sums. kAsPrinted starts at one correct voter;
/// kComplete also includes the all-wrong term.
enum class Support { kAsPrinted, kComplete };

/// ES correct-decision probability (E_s K_c p + s2) / (E_s K_c + 2 s2).
double es_success_prob(double p_i, const ConnectivityParams& cp);

/// The binomial sum behind es_success_prob, term by term.
double es_success_prob_sum(double p_i, const ConnectivityParams& cp, Support support);

/// ED error probability as a binomial sum over the number S+ of correct ESs.
double ed_error_prob_sum(double p_y, const ConnectivityParams& cp, Support support = Support::kAsPrinted);

/// Per-ED correct-sign probability implied by a gradient SNR: 1 - sqrt(2)/(3 snr).
double correct_sign_prob(double gradient_snr);

/// Upper bound on the ED error probability at the given gradient SNR.
double ed_error_prob_bound(const ConnectivityParams& cp, double gradient_snr);

/// Gradient SNR |g_i| / (sigma_i^2 / sqrt(n_b)), the form used in the bound.
double gradient_snr_as_printed(double abs_gradient, double sigma, double batch_size);

/// Gradient SNR |g_i| / (sigma_i / sqrt(n_b)), matching the variance bound
/// sigma_i^2 / n_b.
double gradient_snr_variance_bound(double abs_gradient, double sigma, double batch_size);

struct AB {
  double a = 0.0;
  double b = 0.0;
};

AB compute_ab(const ConnectivityParams& cp);

struct BoundInputs {
  double initial_gap = 0.0;  // F(w0) - F*
  double l_norm1 = 0.0;
  double sigma_norm1 = 0.0;
  int gamma = 1;
  int rounds = 1;
  int ed_count = 1;
};

struct BoundResult {
  double value = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<std::string> warnings;
};

/// Bound on the mean l1 gradient norm with eta = 1/T and n_b = T/gamma.
BoundResult convergence_bound(const BoundInputs& bi, const ConnectivityParams& cp);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
};

/// Monte-Carlo estimators. Trials run in fixed-size blocks, block b drawing
/// from stream (seed, estimator, b); hit counts are integers, so the result
/// is the same for any worker count.
McEstimate mc_expdiff_positive(const ExpDiffDist& d, std::uint64_t trials, std::uint64_t seed, int workers = 1);

/// K+ ~ B(K_c, p_i); success when Exp(E_s K+ + s2) - Exp(E_s K- + s2) > 0.
McEstimate mc_es_success(double p_i, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed,
                         int workers = 1);

/// S+ ~ B(S_c, p_y); counts the joint event {ED errs and S+ in the support}.
McEstimate mc_ed_error(double p_y, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed,
                       Support support = Support::kAsPrinted, int workers = 1);

/// Full two-hop chain: S_c independent ES decisions from K_c voters each,
/// then the ED energy detector.
McEstimate mc_two_hop_error(const ConnectivityParams& cp, double p_i, std::uint64_t trials, std::uint64_t seed,
                            int workers = 1);

inline constexpr std::uint64_t kMcBlockSize = 1 << 16;

namespace reference {

McEstimate mc_es_success(double p_i, const ConnectivityParams& cp, std::uint64_t trials, std::uint64_t seed);
McEstimate mc_two_hop_error(const ConnectivityParams& cp, double p_i, std::uint64_t trials, std::uint64_t seed);

}  // namespace reference

}  // namespace mcoac
