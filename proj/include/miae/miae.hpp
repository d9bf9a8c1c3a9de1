#pragma once

#include <cstdint>
#include <vector>

#include "miae/dataset.hpp"
#include "miae/matrix.hpp"
#include "miae/rng.hpp"

namespace miae {

// One affine layer; b is a 1 x out row vector. Also reused as the gradient
// holder for a layer (same shapes).
struct Layer {
    Matrix W;
    Matrix b;
};

// Architecture of a multiple-input auto-encoder.
//
// Every sub-encoder runs input -> branch_hidden... -> z_per_branch with Tanh
// throughout; the latent vector z concatenates the branch outputs. The
// decoder runs z -> decoder_hidden... -> sum(branch_dims) with Tanh hidden
// layers and a ReLU output layer. Symmetry requires decoder_hidden to equal
// the reversed per-layer sums of the sub-encoder hidden widths.
struct MiaeConfig {
    std::vector<std::size_t> branch_dims;
    std::vector<std::size_t> branch_hidden;
    std::size_t z_per_branch = 0;
    std::vector<std::size_t> decoder_hidden;
    std::uint64_t seed = 0;

    std::size_t branch_count() const { return branch_dims.size(); }
    std::size_t input_dim() const;
    std::size_t latent_dim() const { return branch_count() * z_per_branch; }

    void validate() const;  // throws ConfigError

    // Fills decoder_hidden with the symmetric widths.
    static MiaeConfig symmetric(std::vector<std::size_t> branch_dims,
                                std::vector<std::size_t> branch_hidden,
                                std::size_t z_per_branch, std::uint64_t seed);
};

struct MiaeModel {
    MiaeConfig config;
    std::vector<std::vector<Layer>> encoders;  // [branch][layer]
    std::vector<Layer> decoder;
};

// Gradients share the model's layer layout.
struct MiaeGradients {
    std::vector<std::vector<Layer>> encoders;
    std::vector<Layer> decoder;
};

struct TrainHyper {
    std::size_t batch_size = 100;
    std::size_t epochs = 1;
    double lr = 1e-4;
    std::uint64_t shuffle_seed = 0;
};

// Glorot-initialized weights, zero biases; deterministic in config.seed.
MiaeModel build(const MiaeConfig& config);

// Batch latent representation: z = e(1) ++ ... ++ e(n), branch order kept.
Matrix encode(const MiaeModel& model, const BranchView& x);

// Batch reconstruction from latent rows.
Matrix decode(const MiaeModel& model, const Matrix& z);

// (1/m) sum_i ||x_i - xhat_i||^2 over the concatenated inputs.
double loss(const MiaeModel& model, const BranchView& batch);

// Backpropagated gradients of loss() at the model's current parameters.
MiaeGradients gradients(const MiaeModel& model, const BranchView& batch);

// Minibatch Adam on the reconstruction loss. Rows are reshuffled every epoch
// from shuffle_seed (full-batch runs keep natural order, so the history does
// not depend on the shuffle seed). Returns per-epoch losses: the mean of
// batch losses weighted by batch size. Throws NumericError when the loss
// stops being finite.
std::vector<double> train(MiaeModel& model, const BranchView& data, const TrainHyper& hyper);

// Deterministic parameter enumeration (encoder layers in branch order, then
// decoder layers; W before b). Used by the optimizer, serialization and
// gradient checks.
std::vector<Matrix*> parameter_list(MiaeModel& model);
std::vector<const Matrix*> parameter_list(const MiaeModel& model);
std::vector<Matrix*> parameter_list(MiaeGradients& grads);

// Shared layer-stack plumbing (also used by the feature-selecting model).
namespace detail {

// Forward through a stack; hidden layers Tanh, last layer `last`.
// When cache is non-null it receives every activation, input first.
Matrix stack_forward(const std::vector<Layer>& layers, const Matrix& x, Activation last,
                     std::vector<Matrix>* cache);

// Backward through a stack given dL/d(output); fills per-layer grads and
// returns dL/d(input). acts must come from stack_forward on the same input.
Matrix stack_backward(const std::vector<Layer>& layers, const std::vector<Matrix>& acts,
                      Activation last, const Matrix& dout, std::vector<Layer>& grads);

std::vector<Layer> build_stack(const std::vector<std::size_t>& widths, Rng& rng);

std::vector<Layer> zero_like(const std::vector<Layer>& layers);

Matrix encode_branches(const std::vector<std::vector<Layer>>& encoders, const BranchView& x,
                       const std::vector<std::size_t>& branch_dims);

}  // namespace detail

}  // namespace miae
