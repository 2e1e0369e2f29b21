#include "mcoac/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mcoac/errors.hpp"

namespace mcoac {

namespace {

struct Forward {
  std::vector<double> hidden;  // tanh activations (MLP only)
  std::vector<double> scores;
};

Forward forward(const ModelState& model, std::span<const double> x) {
  const auto& spec = model.spec;
  const std::size_t d_in = spec.inputs;
  Forward f;
  f.scores.assign(spec.classes, 0.0);
  if (spec.architecture == Architecture::kLogistic) {
    for (std::size_t c = 0; c < spec.classes; ++c) {
      const double* row = model.w.data() + c * (d_in + 1);
      double z = row[d_in];
      for (std::size_t d = 0; d < d_in; ++d) z += row[d] * x[d];
      f.scores[c] = z;
    }
    return f;
  }
  f.hidden.assign(spec.hidden, 0.0);
  for (std::size_t h = 0; h < spec.hidden; ++h) {
    const double* row = model.w.data() + h * (d_in + 1);
    double a = row[d_in];
    for (std::size_t d = 0; d < d_in; ++d) a += row[d] * x[d];
    f.hidden[h] = std::tanh(a);
  }
  const double* out = model.w.data() + spec.hidden * (d_in + 1);
  for (std::size_t c = 0; c < spec.classes; ++c) {
    const double* row = out + c * (spec.hidden + 1);
    double z = row[spec.hidden];
    for (std::size_t h = 0; h < spec.hidden; ++h) z += row[h] * f.hidden[h];
    f.scores[c] = z;
  }
  return f;
}

// Softmax in place; returns log-sum-exp of the input scores.
double softmax(std::vector<double>& scores) {
  const double peak = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp(s - peak);
    total += s;
  }
  for (double& s : scores) s /= total;
  return peak + std::log(total);
}

void check_batch(const ModelState& model, const Dataset& data, std::span<const std::size_t> batch) {
  if (batch.empty()) throw InvalidArgument("empty batch");
  if (data.dims != model.spec.inputs) {
    throw InvalidArgument(fmt::format("dataset has {} features, model expects {}", data.dims, model.spec.inputs));
  }
}

}  // namespace

std::size_t ModelSpec::param_count() const noexcept {
  if (architecture == Architecture::kLogistic) return classes * (inputs + 1);
  return hidden * (inputs + 1) + classes * (hidden + 1);
}

ModelState init_model(const ModelSpec& spec, const StreamId& stream, double scale) {
  if (spec.inputs == 0 || spec.classes < 2) throw InvalidArgument("init_model: need inputs >= 1, classes >= 2");
  if (spec.architecture == Architecture::kMlp && spec.hidden == 0) {
    throw InvalidArgument("init_model: MLP needs a positive hidden width");
  }
  ModelState model{spec, std::vector<double>(spec.param_count())};
  CounterRng rng(stream);
  for (double& w : model.w) w = scale * standard_normal(rng);
  return model;
}

std::vector<double> logits(const ModelState& model, std::span<const double> x) { return forward(model, x).scores; }

int predict(const ModelState& model, std::span<const double> x) {
  const auto scores = logits(model, x);
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

double batch_loss(const ModelState& model, const Dataset& data, std::span<const std::size_t> batch) {
  check_batch(model, data, batch);
  double total = 0.0;
  for (std::size_t i : batch) {
    auto f = forward(model, data.sample(i));
    const double label_score = f.scores[static_cast<std::size_t>(data.labels[i])];
    total += softmax(f.scores) - label_score;
  }
  return total / static_cast<double>(batch.size());
}

std::vector<double> stochastic_gradient(const ModelState& model, const Dataset& data,
                                        std::span<const std::size_t> batch) {
  check_batch(model, data, batch);
  const auto& spec = model.spec;
  const std::size_t d_in = spec.inputs;
  std::vector<double> grad(model.w.size(), 0.0);
  std::vector<double> back(spec.hidden, 0.0);

  for (std::size_t i : batch) {
    const auto x = data.sample(i);
    auto f = forward(model, x);
    softmax(f.scores);
    f.scores[static_cast<std::size_t>(data.labels[i])] -= 1.0;  // dL/dz
    const auto& dz = f.scores;

    if (spec.architecture == Architecture::kLogistic) {
      for (std::size_t c = 0; c < spec.classes; ++c) {
        double* g = grad.data() + c * (d_in + 1);
        for (std::size_t d = 0; d < d_in; ++d) g[d] += dz[c] * x[d];
        g[d_in] += dz[c];
      }
      continue;
    }

    const std::size_t out_offset = spec.hidden * (d_in + 1);
    std::fill(back.begin(), back.end(), 0.0);
    for (std::size_t c = 0; c < spec.classes; ++c) {
      const double* w_row = model.w.data() + out_offset + c * (spec.hidden + 1);
      double* g = grad.data() + out_offset + c * (spec.hidden + 1);
      for (std::size_t h = 0; h < spec.hidden; ++h) {
        g[h] += dz[c] * f.hidden[h];
        back[h] += w_row[h] * dz[c];
      }
      g[spec.hidden] += dz[c];
    }
    for (std::size_t h = 0; h < spec.hidden; ++h) {
      const double da = back[h] * (1.0 - f.hidden[h] * f.hidden[h]);
      double* g = grad.data() + h * (d_in + 1);
      for (std::size_t d = 0; d < d_in; ++d) g[d] += da * x[d];
      g[d_in] += da;
    }
  }
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (double& g : grad) g *= scale;
  return grad;
}

std::vector<double> full_gradient(const ModelState& model, const Dataset& data) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return stochastic_gradient(model, data, all);
}

ModelState apply_update(ModelState model, double eta, const SignVector& mv) {
  if (mv.size() != model.w.size()) {
    throw InvalidArgument(fmt::format("apply_update: {} votes for {} parameters", mv.size(), model.w.size()));
  }
  for (std::size_t i = 0; i < model.w.size(); ++i) model.w[i] -= eta * mv[i];
  return model;
}

double evaluate(const ModelState& model, const Dataset& test, const std::optional<std::vector<int>>& label_filter) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (label_filter &&
        std::find(label_filter->begin(), label_filter->end(), test.labels[i]) == label_filter->end()) {
      continue;
    }
    ++total;
    if (predict(model, test.sample(i)) == test.labels[i]) ++correct;
  }
  if (total == 0) throw EmptyEvaluationError("evaluate: no test samples after filtering");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace mcoac
