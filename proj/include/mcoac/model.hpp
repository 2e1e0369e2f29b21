#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcoac/dataset.hpp"
#include "mcoac/oac_codec.hpp"

namespace mcoac {

enum class Architecture {
  kLogistic,  // multinomial logistic regression
  kMlp,       // one tanh hidden layer
};

struct ModelSpec {
  Architecture architecture = Architecture::kLogistic;
  std::size_t inputs = 0;
  std::size_t classes = 0;
  std::size_t hidden = 0;  // MLP only

  /// Logistic: C(D+1). MLP: H(D+1) + C(H+1).
  std::size_t param_count() const noexcept;
};

struct ModelState {
  ModelSpec spec;
  std::vector<double> w;
};

/// Parameters drawn N(0, scale^2) from the given stream.
ModelState init_model(const ModelSpec& spec, const StreamId& stream, double scale = 0.01);

/// Class scores (logits) for one sample.
std::vector<double> logits(const ModelState& model, std::span<const double> x);

int predict(const ModelState& model, std::span<const double> x);

/// Mean cross-entropy over the selected samples.
double batch_loss(const ModelState& model, const Dataset& data, std::span<const std::size_t> batch);

/// Mean cross-entropy gradient over the selected samples.
std::vector<double> stochastic_gradient(const ModelState& model, const Dataset& data,
                                        std::span<const std::size_t> batch);

/// Gradient over the whole dataset.
std::vector<double> full_gradient(const ModelState& model, const Dataset& data);

/// w <- w - eta * mv
ModelState apply_update(ModelState model, double eta, const SignVector& mv);

/// Fraction of correct argmax predictions, optionally restricted to samples
/// whose label is in `label_filter`.
double evaluate(const ModelState& model, const Dataset& test,
                const std::optional<std::vector<int>>& label_filter = std::nullopt);

}  // namespace mcoac
