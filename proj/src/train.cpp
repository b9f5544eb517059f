#include "entclass/train.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "entclass/rng.hpp"

namespace entclass {

TrainConfig TrainConfig::slocc() {
  TrainConfig c;
  c.batch_size = 1000;
  return c;
}

TrainConfig TrainConfig::gme() {
  TrainConfig c;
  c.batch_size = 500;
  return c;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || epochs < 1 || batch_size < 1 || !(min_delta > 0.0) ||
      patience < 1 || !(adam_beta1 > 0.0) || !(adam_beta2 > 0.0) || !(adam_eps > 0.0))
    throw std::invalid_argument("TrainConfig: all fields must be positive");
  if (adam_beta1 >= 1.0 || adam_beta2 >= 1.0)
    throw std::invalid_argument("TrainConfig: Adam betas must be below 1");
  if (patience > epochs) throw std::invalid_argument("TrainConfig: patience exceeds epochs");
}

namespace {

bool better_epoch(const EpochRecord& a, const EpochRecord& b) {
  if (a.val_loss != b.val_loss) return a.val_loss < b.val_loss;
  return a.val_accuracy > b.val_accuracy;
}

}  // namespace

TrainResult train(Mlp model, const LabeledSet& train_set, const LabeledSet& val_set,
                  const TrainConfig& config) {
  config.validate();
  if (train_set.size() == 0) throw std::invalid_argument("train: empty training set");
  if (val_set.size() == 0) throw std::invalid_argument("train: empty validation set");
  if (train_set.dim != model.n_inputs() || val_set.dim != model.n_inputs())
    throw std::invalid_argument("train: feature width does not match the model");

  const AdamConfig adam{config.learning_rate, config.adam_beta1, config.adam_beta2,
                        config.adam_eps};
  AdamState state(model.num_params());

  TrainResult result{model, {}};
  std::vector<std::size_t> order(train_set.size());
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);

  // Keras-style monitor: improvement means val_loss < reference - min_delta.
  double reference = 0.0;
  int waited = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed({config.seed, static_cast<std::uint64_t>(epoch)}));
    rng.shuffle(std::span<std::size_t>(order));

    EpochRecord rec;
    double loss_sum = 0.0, acc_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t len = std::min(batch, order.size() - start);
      const std::span<const std::size_t> idx(order.data() + start, len);
      const auto lg = backward(model, train_set, idx);
      loss_sum += lg.loss * static_cast<double>(len);
      acc_sum += lg.accuracy * static_cast<double>(len);
      adam_step(model.params(), lg.grad, state, adam);
    }
    rec.train_loss = loss_sum / static_cast<double>(order.size());
    rec.train_accuracy = acc_sum / static_cast<double>(order.size());
    const auto val = evaluate(model, val_set);
    rec.val_loss = val.loss;
    rec.val_accuracy = val.accuracy;
    result.history.epochs.push_back(rec);

    const auto& best = result.history.epochs[result.history.best_epoch];
    if (epoch == 0 || better_epoch(rec, best)) {
      result.history.best_epoch = epoch;
      result.model = model;
    }

    if (epoch == 0 || rec.val_loss < reference - config.min_delta) {
      reference = rec.val_loss;
      waited = 0;
    } else if (++waited >= config.patience) {
      result.history.stopped_early = epoch + 1 < config.epochs;
      break;
    }
  }
  return result;
}

}  // namespace entclass
