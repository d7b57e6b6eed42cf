#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"
#include "coursekit/kernels.hpp"
#include "coursekit/random.hpp"

namespace coursekit {

namespace {

DenseLayer make_layer(std::size_t inputs, std::size_t outputs) {
  return {inputs, outputs, std::vector<double>(inputs * outputs, 0.0), std::vector<double>(outputs, 0.0)};
}

void glorot_uniform(DenseLayer& layer, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
  for (double& w : layer.weights) w = rng.uniform(-limit, limit);
}

MlpGradients zero_like(const MlpModel& m) {
  MlpGradients g;
  for (std::size_t l = 0; l < 3; ++l) g[l] = make_layer(m.layers[l].inputs, m.layers[l].outputs);
  return g;
}

// Activations for one example, reused across examples.
struct Workspace {
  std::vector<double> z1, a1, z2, a2, z3, p;
  std::vector<double> d3, d2, d1;

  explicit Workspace(const MlpModel& m)
      : z1(m.h1), a1(m.h1), z2(m.h2), a2(m.h2), z3(static_cast<std::size_t>(m.classes)),
        p(static_cast<std::size_t>(m.classes)), d3(p.size()), d2(m.h2), d1(m.h1) {}
};

void softmax(std::span<const double> z, std::span<double> p) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - mx);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
}

void forward(const MlpModel& m, std::span<const double> x, Workspace& ws) {
  const auto& k = kernels::active();
  const auto& [l1, l2, l3] = m.layers;
  k.gemv(l1.weights.data(), x.data(), l1.bias.data(), ws.z1.data(), l1.outputs, l1.inputs);
  for (std::size_t i = 0; i < ws.z1.size(); ++i) ws.a1[i] = std::max(0.0, ws.z1[i]);
  k.gemv(l2.weights.data(), ws.a1.data(), l2.bias.data(), ws.z2.data(), l2.outputs, l2.inputs);
  for (std::size_t i = 0; i < ws.z2.size(); ++i) ws.a2[i] = std::max(0.0, ws.z2[i]);
  k.gemv(l3.weights.data(), ws.a2.data(), l3.bias.data(), ws.z3.data(), l3.outputs, l3.inputs);
  softmax(ws.z3, ws.p);
}

double example_loss(const Workspace& ws, int label) {
  return -std::log(std::max(ws.p[static_cast<std::size_t>(label)], 1e-300));
}

// Adds this example's parameter gradients, scaled by `scale`, into g.
void backward(const MlpModel& m, std::span<const double> x, int label, double scale, Workspace& ws,
              MlpGradients& g) {
  const auto& k = kernels::active();
  const auto& [l1, l2, l3] = m.layers;
  for (std::size_t i = 0; i < ws.p.size(); ++i) {
    ws.d3[i] = (ws.p[i] - (static_cast<int>(i) == label ? 1.0 : 0.0)) * scale;
  }
  for (std::size_t r = 0; r < l3.outputs; ++r) {
    k.axpy(ws.d3[r], ws.a2.data(), g[2].weights.data() + r * l3.inputs, l3.inputs);
    g[2].bias[r] += ws.d3[r];
  }
  k.gemv_t(l3.weights.data(), ws.d3.data(), ws.d2.data(), l3.outputs, l3.inputs);
  for (std::size_t i = 0; i < ws.d2.size(); ++i) {
    if (ws.z2[i] <= 0.0) ws.d2[i] = 0.0;
  }
  for (std::size_t r = 0; r < l2.outputs; ++r) {
    if (ws.d2[r] == 0.0) continue;
    k.axpy(ws.d2[r], ws.a1.data(), g[1].weights.data() + r * l2.inputs, l2.inputs);
    g[1].bias[r] += ws.d2[r];
  }
  k.gemv_t(l2.weights.data(), ws.d2.data(), ws.d1.data(), l2.outputs, l2.inputs);
  for (std::size_t i = 0; i < ws.d1.size(); ++i) {
    if (ws.z1[i] <= 0.0) ws.d1[i] = 0.0;
  }
  for (std::size_t r = 0; r < l1.outputs; ++r) {
    if (ws.d1[r] == 0.0) continue;
    k.axpy(ws.d1[r], x.data(), g[0].weights.data() + r * l1.inputs, l1.inputs);
    g[0].bias[r] += ws.d1[r];
  }
}

void check_features(const MlpModel& m, std::span<const double> x) {
  if (x.size() != m.input_dim) {
    throw ArgumentError("feature length " + std::to_string(x.size()) + " does not match model input " +
                        std::to_string(m.input_dim));
  }
}

void check_example(const MlpModel& m, const Example& e) {
  check_features(m, e.features);
  if (e.label < 0 || e.label >= m.classes) throw ArgumentError("label out of range");
}

}  // namespace

void TrainConfig::validate() const {
  if (h1 == 0 || h2 == 0) throw ArgumentError("hidden sizes must be positive");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (epochs < 1) throw ArgumentError("epochs must be positive");
  if (batch_size == 0) throw ArgumentError("batch size must be positive");
}

MlpModel init_mlp(std::size_t input_dim, int classes, std::size_t h1, std::size_t h2,
                  std::uint64_t seed) {
  if (input_dim == 0 || h1 == 0 || h2 == 0) throw ArgumentError("layer sizes must be positive");
  if (classes < 2) throw ArgumentError("need at least two classes");
  MlpModel m;
  m.classes = classes;
  m.input_dim = input_dim;
  m.h1 = h1;
  m.h2 = h2;
  m.seed = seed;
  m.layers = {make_layer(input_dim, h1), make_layer(h1, h2),
              make_layer(h2, static_cast<std::size_t>(classes))};
  Rng rng(seed);
  for (auto& layer : m.layers) glorot_uniform(layer, rng);
  return m;
}

std::vector<double> forward_probabilities(const MlpModel& m, std::span<const double> features) {
  check_features(m, features);
  Workspace ws(m);
  forward(m, features, ws);
  return ws.p;
}

double mean_cross_entropy(const MlpModel& m, std::span<const Example> batch) {
  if (batch.empty()) throw ArgumentError("empty batch");
  Workspace ws(m);
  double total = 0.0;
  for (const auto& e : batch) {
    check_example(m, e);
    forward(m, e.features, ws);
    total += example_loss(ws, e.label);
  }
  return total / static_cast<double>(batch.size());
}

MlpGradients mean_gradients(const MlpModel& m, std::span<const Example> batch) {
  if (batch.empty()) throw ArgumentError("empty batch");
  Workspace ws(m);
  MlpGradients g = zero_like(m);
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const auto& e : batch) {
    check_example(m, e);
    forward(m, e.features, ws);
    backward(m, e.features, e.label, scale, ws, g);
  }
  return g;
}

MlpModel train_mlp(std::span<const Example> examples, const TrainConfig& cfg, int classes,
                   std::vector<double>* epoch_losses) {
  cfg.validate();
  if (classes < 2) throw ArgumentError("need at least two classes");
  if (examples.empty()) throw DegenerateTrainingError("no training examples");
  std::set<int> labels;
  for (const auto& e : examples) {
    if (e.label < 0 || e.label >= classes) throw ArgumentError("label out of range");
    labels.insert(e.label);
  }
  if (labels.size() < 2) throw DegenerateTrainingError("training data contains a single class");

  MlpModel m = init_mlp(examples.front().features.size(), classes, cfg.h1, cfg.h2, cfg.seed);
  for (const auto& e : examples) check_example(m, e);

  Rng rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  Workspace ws(m);
  MlpGradients g = zero_like(m);
  const auto& k = kernels::active();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
      for (auto& layer : g) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
        std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        const Example& e = examples[order[i]];
        forward(m, e.features, ws);
        backward(m, e.features, e.label, scale, ws, g);
      }
      for (std::size_t l = 0; l < 3; ++l) {
        k.axpy(-cfg.learning_rate, g[l].weights.data(), m.layers[l].weights.data(),
               m.layers[l].weights.size());
        k.axpy(-cfg.learning_rate, g[l].bias.data(), m.layers[l].bias.data(), m.layers[l].bias.size());
      }
    }
    if (epoch_losses) epoch_losses->push_back(mean_cross_entropy(m, examples));
  }
  return m;
}

Prediction predict(const MlpModel& m, std::span<const double> features) {
  Prediction out;
  out.probabilities = forward_probabilities(m, features);
  out.label = static_cast<int>(std::max_element(out.probabilities.begin(), out.probabilities.end()) -
                               out.probabilities.begin());
  return out;
}

}  // namespace coursekit
