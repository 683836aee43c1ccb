#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ltr/types.hpp"

namespace ltr::featurize {

struct DaeConfig {
  int code_dim = 32;
  std::vector<int> encoder_widths = {512, 128};  // code_dim closes the encoder
  bool denoising = true;                         // additive uniform [0,1] input noise
  int epochs = 30;
  int batch_size = 128;
  double learning_rate = 0.05;
  double momentum = 0.9;
  double holdout_fraction = 0.1;
};

// 3-layer encoder / mirrored decoder over one-hot attribute rows.
// Rectifier hidden units, logistic output, per-dimension binary
// cross-entropy against the clean input.
struct Autoencoder {
  std::string category;
  std::vector<MatD> enc_w;
  std::vector<VecD> enc_b;
  std::vector<MatD> dec_w;
  std::vector<VecD> dec_b;

  int input_dim() const { return enc_w.empty() ? 0 : static_cast<int>(enc_w.front().cols()); }
  int code_dim() const { return enc_w.empty() ? 0 : static_cast<int>(enc_w.back().rows()); }

  VecD encode(VecRef onehot) const;        // deterministic, noise-free
  VecD reconstruct(VecRef onehot) const;   // decoder(encoder(x)), probabilities
};

struct DaeResult {
  Autoencoder model;
  double untrained_holdout_loss = 0.0;
  std::vector<double> holdout_loss;  // per epoch
};

// Throws std::runtime_error with diagnostics if the loss diverges.
DaeResult dae_train(const RowMatD& onehots, const DaeConfig& config, std::uint64_t seed);

double reconstruction_loss(const Autoencoder& model, const RowMatD& onehots);

nlohmann::json autoencoder_to_json(const Autoencoder& model);
Autoencoder autoencoder_from_json(const nlohmann::json& j);
void save_autoencoder(const Autoencoder& model, const std::string& path);
Autoencoder load_autoencoder(const std::string& path);

}  // namespace ltr::featurize
