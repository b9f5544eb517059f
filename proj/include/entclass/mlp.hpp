// Dense feed-forward network with linear hidden layers and a softmax or
// sigmoid head, its losses, exact backpropagation and the Adam update.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace entclass {

/// Row-major feature matrix with one integer label per row. Labels are class
/// indices for a softmax head and 0/1 flags for a sigmoid head.
struct LabeledSet {
  int dim = 0;
  std::vector<double> x;
  std::vector<int> y;

  std::size_t size() const { return y.size(); }
  std::span<const double> row(std::size_t i) const {
    return {x.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  void push_back(std::span<const double> features, int label);
};

enum class HiddenActivation { Linear };
enum class OutputActivation { Softmax, Sigmoid };

class Mlp {
 public:
  /// layer_sizes = {inputs, hidden..., outputs}. A sigmoid head needs one
  /// output, a softmax head at least two.
  Mlp(std::vector<int> layer_sizes, OutputActivation output);

  /// N x 6 x 6, softmax.
  static Mlp slocc(int n_inputs);
  /// N x ceil(N/2) x 1, sigmoid.
  static Mlp gme(int n_inputs);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  int n_inputs() const { return sizes_.front(); }
  int n_outputs() const { return sizes_.back(); }
  int num_weight_layers() const { return static_cast<int>(sizes_.size()) - 1; }
  HiddenActivation hidden_activation() const { return HiddenActivation::Linear; }
  OutputActivation output_activation() const { return output_; }

  std::size_t num_params() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  /// Weights of layer l as an (out x in) row-major block.
  std::span<double> weights(int layer);
  std::span<const double> weights(int layer) const;
  std::span<double> biases(int layer);
  std::span<const double> biases(int layer) const;

  /// Glorot-uniform weights, zero biases.
  void init_glorot(std::uint64_t seed);

  /// Output probabilities for one sample.
  std::vector<double> forward(std::span<const double> x) const;
  /// Class index (softmax argmax, lowest index on ties) or 0/1 flag
  /// (sigmoid >= 0.5).
  int predict(std::span<const double> x) const;

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  std::size_t weight_offset(int layer) const;
  std::size_t bias_offset(int layer) const;

  std::vector<int> sizes_;
  OutputActivation output_;
  std::vector<double> params_;
  std::vector<std::size_t> offsets_;  // start of each layer's weights
};

/// Trainable weights and biases.
std::size_t true_param_count(const Mlp& model);
/// Sum of layer widths feeding and forming the hidden / output layer
/// (the P2 / P3 reporting convention).
int width_sum_hidden(const Mlp& model);
int width_sum_output(const Mlp& model);

inline constexpr double kProbClamp = 1e-12;

std::vector<double> softmax(std::span<const double> logits);
double sigmoid(double q);

double loss_categorical(std::span<const double> probs, std::span<const int> one_hot);
/// Categorical cross-entropy with the one-hot vector given by its index.
double loss_categorical(std::span<const double> probs, int label);
double loss_binary(double prob, int flag);

/// Loss of one sample under the model's head.
double sample_loss(const Mlp& model, std::span<const double> probs, int label);

struct LossAndGradient {
  double loss = 0.0;       // mean over the batch
  double accuracy = 0.0;   // fraction predicted correctly
  std::vector<double> grad;  // same layout as Mlp::params()
};

/// Gradient of the mean batch loss over rows `indices` of `data`.
LossAndGradient backward(const Mlp& model, const LabeledSet& data,
                         std::span<const std::size_t> indices);
LossAndGradient backward(const Mlp& model, const LabeledSet& data);

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

Evaluation evaluate(const Mlp& model, const LabeledSet& data);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update; increments state.t first.
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state, const AdamConfig& config);

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text format: magic line, layer sizes, activation tags, then every
/// parameter in shortest round-trip decimal form.
void save_model(const Mlp& model, const std::filesystem::path& path);
Mlp load_model(const std::filesystem::path& path);

}  // namespace entclass
