// Minibatch Adam training with early stopping on validation loss.
#pragma once

#include <cstdint>
#include <vector>

#include "entclass/mlp.hpp"

namespace entclass {

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 100;
  int batch_size = 1000;
  double min_delta = 0.01;
  int patience = 20;
  std::uint64_t seed = 0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  static TrainConfig slocc();  // batch 1000
  static TrainConfig gme();    // batch 500

  /// Throws std::invalid_argument unless every field is positive and
  /// patience <= epochs.
  void validate() const;
};

struct EpochRecord {
  double train_loss = 0.0;  // mean over the epoch's minibatches, pre-update
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;  // 0-based
  bool stopped_early = false;
};

struct TrainResult {
  Mlp model;  // parameters from best_epoch
  TrainHistory history;
};

/// Trains `model` from its current parameters. Each epoch shuffles the
/// training rows with a permutation seeded by (config.seed, epoch).
TrainResult train(Mlp model, const LabeledSet& train_set, const LabeledSet& val_set,
                  const TrainConfig& config);

}  // namespace entclass
