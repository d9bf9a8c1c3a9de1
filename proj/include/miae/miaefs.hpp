#pragma once

#include <cstdint>
#include <vector>

#include "miae/miae.hpp"

namespace miae {

// Importance scores of the latent features and the descending-order index
// permutation (ties broken by ascending index).
struct FeatureRanking {
    std::vector<double> scores;       // w_j = sum_k W_fs[j,k]^2, length d_z
    std::vector<std::size_t> order;   // scores[order[0]] >= scores[order[1]] >= ...
};

// MIAE plus a feature-selection layer between z and the decoder:
// h = Tanh(z * W_fs + b_fs) with d_h = round(sqrt(input_dim)) neurons.
// The decoder mirrors the encoder+FS stack, so it runs
// d_h -> d_z -> decoder_hidden... -> input_dim. Training adds
// alpha * ||W_fs||_{2,1} to the reconstruction loss.
struct MiaefsModel {
    MiaeConfig config;
    std::vector<std::vector<Layer>> encoders;
    Layer fs;
    std::vector<Layer> decoder;
    double alpha = 1.0;
    std::size_t bottleneck_dim = 0;  // d_h
};

struct MiaefsGradients {
    std::vector<std::vector<Layer>> encoders;
    Layer fs;
    std::vector<Layer> decoder;
};

MiaefsModel build_fs(const MiaeConfig& config, double alpha);

Matrix encode(const MiaefsModel& model, const BranchView& x);

// Bottleneck activation h from latent rows.
Matrix fs_forward(const MiaefsModel& model, const Matrix& z);

// Reconstruction from bottleneck rows.
Matrix decode(const MiaefsModel& model, const Matrix& h);

// Sum over rows of the Euclidean row norm; a 1e-12 stabilizer inside the
// square root keeps the gradient finite at zero rows.
double l21_norm(const Matrix& w);

// Reconstruction MSE through encoder -> z -> h -> decoder, plus
// alpha * l21_norm(W_fs).
double loss_fs(const MiaefsModel& model, const BranchView& batch);

MiaefsGradients gradients_fs(const MiaefsModel& model, const BranchView& batch);

std::vector<double> train_fs(MiaefsModel& model, const BranchView& data,
                             const TrainHyper& hyper);

FeatureRanking importance_scores(const MiaefsModel& model);

// Number of latent features kept at ratio beta: max(1, round(beta * d_z)).
std::size_t selected_count(double beta, std::size_t d_z);

// The top-k columns of z in ranked order, k = selected_count(beta, d_z).
Matrix select_features(const Matrix& z_rows, const FeatureRanking& ranking, double beta);

// Zeroes every latent coordinate outside the top-k set, then runs the masked
// rows through the FS layer and decoder.
Matrix reconstruct_masked(const MiaefsModel& model, const Matrix& z_rows,
                          const FeatureRanking& ranking, double beta);

// Enumeration order: encoder layers, FS layer, decoder layers; W before b.
std::vector<Matrix*> parameter_list(MiaefsModel& model);
std::vector<const Matrix*> parameter_list(const MiaefsModel& model);
std::vector<Matrix*> parameter_list(MiaefsGradients& grads);

}  // namespace miae
