#include "entclass/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "entclass/dataset_io.hpp"
#include "entclass/rng.hpp"

namespace entclass {

namespace {

constexpr const char* kModelMagic = "entclass-mlp v1";

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

}  // namespace

void LabeledSet::push_back(std::span<const double> features, int label) {
  if (static_cast<int>(features.size()) != dim)
    throw std::invalid_argument("LabeledSet: feature width mismatch");
  x.insert(x.end(), features.begin(), features.end());
  y.push_back(label);
}

Mlp::Mlp(std::vector<int> layer_sizes, OutputActivation output)
    : sizes_(std::move(layer_sizes)), output_(output) {
  if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least two layers");
  for (int s : sizes_)
    if (s < 1) throw std::invalid_argument("Mlp: layer widths must be positive");
  if (output_ == OutputActivation::Sigmoid && sizes_.back() != 1)
    throw std::invalid_argument("Mlp: sigmoid head needs exactly one output");
  if (output_ == OutputActivation::Softmax && sizes_.back() < 2)
    throw std::invalid_argument("Mlp: softmax head needs at least two outputs");
  std::size_t total = 0;
  for (int l = 0; l < num_weight_layers(); ++l) {
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  params_.assign(total, 0.0);
}

Mlp Mlp::slocc(int n_inputs) {
  return Mlp({n_inputs, 6, 6}, OutputActivation::Softmax);
}

Mlp Mlp::gme(int n_inputs) {
  return Mlp({n_inputs, (n_inputs + n_inputs % 2) / 2, 1}, OutputActivation::Sigmoid);
}

std::size_t Mlp::weight_offset(int layer) const { return offsets_.at(layer); }

std::size_t Mlp::bias_offset(int layer) const {
  return offsets_.at(layer) + static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer];
}

std::span<double> Mlp::weights(int layer) {
  return std::span<double>(params_).subspan(
      weight_offset(layer), static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer]);
}
std::span<const double> Mlp::weights(int layer) const {
  return std::span<const double>(params_).subspan(
      weight_offset(layer), static_cast<std::size_t>(sizes_[layer + 1]) * sizes_[layer]);
}
std::span<double> Mlp::biases(int layer) {
  return std::span<double>(params_).subspan(bias_offset(layer), sizes_[layer + 1]);
}
std::span<const double> Mlp::biases(int layer) const {
  return std::span<const double>(params_).subspan(bias_offset(layer), sizes_[layer + 1]);
}

void Mlp::init_glorot(std::uint64_t seed) {
  Rng rng(seed);
  for (int l = 0; l < num_weight_layers(); ++l) {
    const double limit = std::sqrt(6.0 / (sizes_[l] + sizes_[l + 1]));
    for (double& w : weights(l)) w = rng.uniform(-limit, limit);
    for (double& b : biases(l)) b = 0.0;
  }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_inputs())
    throw std::invalid_argument("Mlp::forward: input width mismatch");
  std::vector<double> a(x.begin(), x.end());
  for (int l = 0; l < num_weight_layers(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const auto w = weights(l);
    const auto b = biases(l);
    std::vector<double> z(out);
    for (int o = 0; o < out; ++o) {
      double s = b[o];
      for (int i = 0; i < in; ++i) s += w[o * in + i] * a[i];
      z[o] = s;
    }
    a = std::move(z);
  }
  if (output_ == OutputActivation::Sigmoid) return {sigmoid(a[0])};
  return softmax(a);
}

int Mlp::predict(std::span<const double> x) const {
  const auto p = forward(x);
  if (output_ == OutputActivation::Sigmoid) return p[0] >= 0.5 ? 1 : 0;
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::size_t true_param_count(const Mlp& model) { return model.num_params(); }

int width_sum_hidden(const Mlp& model) {
  return model.layer_sizes()[0] + model.layer_sizes()[1];
}

int width_sum_output(const Mlp& model) {
  const auto& s = model.layer_sizes();
  return s[s.size() - 2] + s.back();
}

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

double sigmoid(double q) {
  if (q >= 0.0) return 1.0 / (1.0 + std::exp(-q));
  const double e = std::exp(q);
  return e / (1.0 + e);
}

double loss_categorical(std::span<const double> probs, std::span<const int> one_hot) {
  if (probs.size() != one_hot.size())
    throw std::invalid_argument("loss_categorical: size mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (one_hot[i] != 0) loss -= one_hot[i] * std::log(clamp_prob(probs[i]));
  return loss;
}

double loss_categorical(std::span<const double> probs, int label) {
  return -std::log(clamp_prob(probs[label]));
}

double loss_binary(double prob, int flag) {
  const double p = clamp_prob(prob);
  return -(flag * std::log(p) + (1 - flag) * std::log(1.0 - p));
}

double sample_loss(const Mlp& model, std::span<const double> probs, int label) {
  return model.output_activation() == OutputActivation::Sigmoid
             ? loss_binary(probs[0], label)
             : loss_categorical(probs, label);
}

LossAndGradient backward(const Mlp& model, const LabeledSet& data,
                         std::span<const std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("backward: empty batch");
  if (data.dim != model.n_inputs())
    throw std::invalid_argument("backward: data width does not match the model");

  const auto& sizes = model.layer_sizes();
  const int layers = model.num_weight_layers();
  const bool sigmoid_head = model.output_activation() == OutputActivation::Sigmoid;

  LossAndGradient out;
  out.grad.assign(model.num_params(), 0.0);

  std::vector<std::vector<double>> acts(layers + 1);
  for (int l = 0; l <= layers; ++l) acts[l].resize(sizes[l]);
  std::vector<double> delta, prev_delta;
  int correct = 0;

  for (std::size_t idx : indices) {
    const auto x = data.row(idx);
    const int label = data.y[idx];
    std::copy(x.begin(), x.end(), acts[0].begin());
    for (int l = 0; l < layers; ++l) {
      const auto w = model.weights(l);
      const auto b = model.biases(l);
      const int in = sizes[l];
      for (int o = 0; o < sizes[l + 1]; ++o) {
        double s = b[o];
        for (int i = 0; i < in; ++i) s += w[o * in + i] * acts[l][i];
        acts[l + 1][o] = s;
      }
    }

    // dLoss/dlogits is (p - y) for both softmax/CE and sigmoid/BCE.
    const auto& logits = acts[layers];
    delta.assign(sizes[layers], 0.0);
    if (sigmoid_head) {
      const double p = sigmoid(logits[0]);
      out.loss += loss_binary(p, label);
      correct += ((p >= 0.5 ? 1 : 0) == label);
      delta[0] = p - label;
    } else {
      const auto p = softmax(logits);
      out.loss += loss_categorical(p, label);
      correct += (std::max_element(p.begin(), p.end()) - p.begin()) == label;
      for (int k = 0; k < sizes[layers]; ++k) delta[k] = p[k] - (k == label ? 1.0 : 0.0);
    }

    for (int l = layers - 1; l >= 0; --l) {
      const int in = sizes[l];
      const int outw = sizes[l + 1];
      const auto w = model.weights(l);
      double* gw = out.grad.data() + (model.weights(l).data() - model.params().data());
      double* gb = out.grad.data() + (model.biases(l).data() - model.params().data());
      for (int o = 0; o < outw; ++o) {
        gb[o] += delta[o];
        for (int i = 0; i < in; ++i) gw[o * in + i] += delta[o] * acts[l][i];
      }
      if (l > 0) {
        // Linear hidden activation: derivative 1.
        prev_delta.assign(in, 0.0);
        for (int o = 0; o < outw; ++o)
          for (int i = 0; i < in; ++i) prev_delta[i] += w[o * in + i] * delta[o];
        delta.swap(prev_delta);
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(indices.size());
  for (double& g : out.grad) g *= inv;
  out.loss *= inv;
  out.accuracy = correct * inv;
  return out;
}

LossAndGradient backward(const Mlp& model, const LabeledSet& data) {
  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return backward(model, data, all);
}

Evaluation evaluate(const Mlp& model, const LabeledSet& data) {
  if (data.size() == 0) throw std::invalid_argument("evaluate: empty set");
  Evaluation e;
  int correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = model.forward(data.row(i));
    e.loss += sample_loss(model, p, data.y[i]);
    const int pred = model.output_activation() == OutputActivation::Sigmoid
                         ? (p[0] >= 0.5 ? 1 : 0)
                         : static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    correct += pred == data.y[i];
  }
  e.loss /= static_cast<double>(data.size());
  e.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return e;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state, const AdamConfig& config) {
  if (params.size() != grads.size() || state.m.size() != params.size())
    throw std::invalid_argument("adam_step: size mismatch");
  ++state.t;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
    state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps);
  }
}

void save_model(const Mlp& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelFormatError("cannot open " + path.string() + " for writing");
  out << kModelMagic << '\n' << "layers";
  for (int s : model.layer_sizes()) out << ' ' << s;
  out << '\n'
      << "hidden linear\n"
      << "output "
      << (model.output_activation() == OutputActivation::Softmax ? "softmax" : "sigmoid")
      << '\n'
      << "params " << model.num_params() << '\n';
  for (double p : model.params()) out << format_double(p) << '\n';
  if (!out) throw ModelFormatError("write failed: " + path.string());
}

Mlp load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic)
    throw ModelFormatError(path.string() + ": not an entclass model (bad magic)");

  std::getline(in, line);
  std::istringstream layers_line(line);
  std::string key;
  layers_line >> key;
  if (key != "layers") throw ModelFormatError(path.string() + ": missing layers line");
  std::vector<int> sizes;
  for (int s; layers_line >> s;) sizes.push_back(s);

  std::string hidden, output;
  std::getline(in, line);
  if (line != "hidden linear")
    throw ModelFormatError(path.string() + ": unsupported hidden activation");
  std::getline(in, line);
  OutputActivation act;
  if (line == "output softmax") {
    act = OutputActivation::Softmax;
  } else if (line == "output sigmoid") {
    act = OutputActivation::Sigmoid;
  } else {
    throw ModelFormatError(path.string() + ": unsupported output activation");
  }

  Mlp model(sizes, act);
  std::size_t count = 0;
  std::getline(in, line);
  if (std::sscanf(line.c_str(), "params %zu", &count) != 1 || count != model.num_params())
    throw ModelFormatError(path.string() + ": parameter count mismatch");
  for (double& p : model.params()) {
    if (!std::getline(in, line) || !parse_double(line, p))
      throw ModelFormatError(path.string() + ": malformed parameter value");
  }
  return model;
}

}  // namespace entclass
