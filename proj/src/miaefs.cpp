#include "miae/miaefs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "miae/error.hpp"
#include "miae/optimizer.hpp"

namespace miae {

namespace {

constexpr double kEpsStab = 1e-12;

void check_beta(double beta) {
    if (!(beta > 0.0) || beta > 1.0) {
        throw ConfigError("beta must be in (0, 1], got " + std::to_string(beta));
    }
}

}  // namespace

MiaefsModel build_fs(const MiaeConfig& config, double alpha) {
    config.validate();
    if (alpha < 0.0) throw ConfigError("alpha must be >= 0");

    MiaefsModel model;
    model.config = config;
    model.alpha = alpha;
    model.bottleneck_dim = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(config.input_dim()))));

    Rng rng(config.seed);
    for (std::size_t j = 0; j < config.branch_count(); ++j) {
        std::vector<std::size_t> widths;
        widths.push_back(config.branch_dims[j]);
        widths.insert(widths.end(), config.branch_hidden.begin(), config.branch_hidden.end());
        widths.push_back(config.z_per_branch);
        model.encoders.push_back(detail::build_stack(widths, rng));
    }
    model.fs.W = glorot_init(config.latent_dim(), model.bottleneck_dim, rng);
    model.fs.b = Matrix(1, model.bottleneck_dim);

    std::vector<std::size_t> dec;
    dec.push_back(model.bottleneck_dim);
    dec.push_back(config.latent_dim());
    dec.insert(dec.end(), config.decoder_hidden.begin(), config.decoder_hidden.end());
    dec.push_back(config.input_dim());
    model.decoder = detail::build_stack(dec, rng);
    return model;
}

Matrix encode(const MiaefsModel& model, const BranchView& x) {
    return detail::encode_branches(model.encoders, x, model.config.branch_dims);
}

Matrix fs_forward(const MiaefsModel& model, const Matrix& z) {
    if (z.cols() != model.config.latent_dim()) {
        throw DimensionError("fs_forward: latent width " + std::to_string(z.cols()) +
                             ", expected " + std::to_string(model.config.latent_dim()));
    }
    return activate(affine_forward(z, model.fs.W, model.fs.b), Activation::Tanh);
}

Matrix decode(const MiaefsModel& model, const Matrix& h) {
    if (h.cols() != model.bottleneck_dim) {
        throw DimensionError("decode: bottleneck width " + std::to_string(h.cols()) +
                             ", expected " + std::to_string(model.bottleneck_dim));
    }
    return detail::stack_forward(model.decoder, h, Activation::Relu, nullptr);
}

double l21_norm(const Matrix& w) {
    double total = 0.0;
    for (std::size_t j = 0; j < w.rows(); ++j) {
        double row = 0.0;
        for (std::size_t k = 0; k < w.cols(); ++k) row += w(j, k) * w(j, k);
        total += std::sqrt(row + kEpsStab);
    }
    return total;
}

double loss_fs(const MiaefsModel& model, const BranchView& batch) {
    if (batch.n_rows() == 0) throw DimensionError("loss_fs: empty batch");
    const Matrix xhat = decode(model, fs_forward(model, encode(model, batch)));
    return mse(batch.concat(), xhat) + model.alpha * l21_norm(model.fs.W);
}

MiaefsGradients gradients_fs(const MiaefsModel& model, const BranchView& batch) {
    const std::size_t m = batch.n_rows();
    if (m == 0) throw DimensionError("gradients_fs: empty batch");

    std::vector<std::vector<Matrix>> enc_acts(model.encoders.size());
    std::vector<Matrix> parts;
    for (std::size_t j = 0; j < model.encoders.size(); ++j) {
        parts.push_back(detail::stack_forward(model.encoders[j], batch.branches[j],
                                              Activation::Tanh, &enc_acts[j]));
    }
    const Matrix z = hconcat(parts);
    const Matrix h = activate(affine_forward(z, model.fs.W, model.fs.b), Activation::Tanh);
    std::vector<Matrix> dec_acts;
    const Matrix xhat = detail::stack_forward(model.decoder, h, Activation::Relu, &dec_acts);

    const Matrix x = batch.concat();

    MiaefsGradients grads;
    grads.encoders.resize(model.encoders.size());
    for (std::size_t j = 0; j < model.encoders.size(); ++j) {
        grads.encoders[j] = detail::zero_like(model.encoders[j]);
    }
    grads.decoder = detail::zero_like(model.decoder);

    Matrix dxhat(xhat.rows(), xhat.cols());
    for (std::size_t i = 0; i < dxhat.size(); ++i) {
        dxhat.data()[i] = 2.0 / static_cast<double>(m) * (xhat.data()[i] - x.data()[i]);
    }
    const Matrix dh =
        detail::stack_backward(model.decoder, dec_acts, Activation::Relu, dxhat, grads.decoder);

    // Through the FS layer: h = tanh(z W + b).
    Matrix dh_pre = dh;
    for (std::size_t i = 0; i < dh_pre.size(); ++i) {
        dh_pre.data()[i] *= 1.0 - h.data()[i] * h.data()[i];
    }
    grads.fs.W = matmul_at_b(z, dh_pre);
    grads.fs.b = column_sums(dh_pre);
    const Matrix dz = matmul_a_bt(dh_pre, model.fs.W);

    // L2,1 penalty: d/dW_jk alpha * sqrt(sum_k W_jk^2 + eps) = alpha * W_jk / row_norm.
    for (std::size_t j = 0; j < model.fs.W.rows(); ++j) {
        double row = 0.0;
        for (std::size_t k = 0; k < model.fs.W.cols(); ++k) {
            row += model.fs.W(j, k) * model.fs.W(j, k);
        }
        const double inv = model.alpha / std::sqrt(row + kEpsStab);
        for (std::size_t k = 0; k < model.fs.W.cols(); ++k) {
            grads.fs.W(j, k) += inv * model.fs.W(j, k);
        }
    }

    std::size_t offset = 0;
    for (std::size_t j = 0; j < model.encoders.size(); ++j) {
        const std::size_t w = model.config.z_per_branch;
        Matrix dzj(dz.rows(), w);
        for (std::size_t i = 0; i < dz.rows(); ++i) {
            std::copy(dz.row(i) + offset, dz.row(i) + offset + w, dzj.row(i));
        }
        detail::stack_backward(model.encoders[j], enc_acts[j], Activation::Tanh, dzj,
                               grads.encoders[j]);
        offset += w;
    }
    return grads;
}

namespace {

template <typename ModelLike, typename MatrixPtr>
std::vector<MatrixPtr> list_parameters_fs(ModelLike& m) {
    std::vector<MatrixPtr> out;
    for (auto& enc : m.encoders) {
        for (auto& layer : enc) {
            out.push_back(&layer.W);
            out.push_back(&layer.b);
        }
    }
    out.push_back(&m.fs.W);
    out.push_back(&m.fs.b);
    for (auto& layer : m.decoder) {
        out.push_back(&layer.W);
        out.push_back(&layer.b);
    }
    return out;
}

}  // namespace

std::vector<Matrix*> parameter_list(MiaefsModel& model) {
    return list_parameters_fs<MiaefsModel, Matrix*>(model);
}

std::vector<const Matrix*> parameter_list(const MiaefsModel& model) {
    return list_parameters_fs<const MiaefsModel, const Matrix*>(model);
}

std::vector<Matrix*> parameter_list(MiaefsGradients& grads) {
    return list_parameters_fs<MiaefsGradients, Matrix*>(grads);
}

std::vector<double> train_fs(MiaefsModel& model, const BranchView& data,
                             const TrainHyper& hyper) {
    const std::size_t n = data.n_rows();
    detail::validate_hyper(hyper, n);

    auto params = parameter_list(model);
    std::vector<AdamState> states;
    states.reserve(params.size());
    for (const Matrix* p : params) states.emplace_back(p->rows(), p->cols(), hyper.lr);

    Rng shuffle_rng(hyper.shuffle_seed);
    std::vector<double> history;
    history.reserve(hyper.epochs);

    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        const std::vector<std::size_t> order =
            detail::epoch_order(n, hyper.batch_size, shuffle_rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0, batch_index = 0; start < n;
             start += hyper.batch_size, ++batch_index) {
            const std::size_t end = std::min(start + hyper.batch_size, n);
            const std::vector<std::size_t> rows(order.begin() + start, order.begin() + end);
            const BranchView batch = data.take_rows(rows);

            const double batch_loss = loss_fs(model, batch);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("train_fs: non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(batch_index));
            }
            epoch_loss += batch_loss * static_cast<double>(rows.size());

            MiaefsGradients grads = gradients_fs(model, batch);
            auto grad_ptrs = parameter_list(grads);
            for (std::size_t p = 0; p < params.size(); ++p) {
                adam_step(*params[p], *grad_ptrs[p], states[p]);
            }
        }
        history.push_back(epoch_loss / static_cast<double>(n));
    }
    return history;
}

FeatureRanking importance_scores(const MiaefsModel& model) {
    FeatureRanking ranking;
    const Matrix& w = model.fs.W;
    ranking.scores.resize(w.rows());
    for (std::size_t j = 0; j < w.rows(); ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < w.cols(); ++k) sum += w(j, k) * w(j, k);
        ranking.scores[j] = sum;
    }
    ranking.order.resize(w.rows());
    std::iota(ranking.order.begin(), ranking.order.end(), std::size_t{0});
    std::stable_sort(ranking.order.begin(), ranking.order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return ranking.scores[a] > ranking.scores[b];
                     });
    return ranking;
}

std::size_t selected_count(double beta, std::size_t d_z) {
    check_beta(beta);
    const auto k = static_cast<std::size_t>(std::llround(beta * static_cast<double>(d_z)));
    return std::max<std::size_t>(1, k);
}

Matrix select_features(const Matrix& z_rows, const FeatureRanking& ranking, double beta) {
    if (ranking.order.size() != z_rows.cols()) {
        throw DimensionError("select_features: ranking covers " +
                             std::to_string(ranking.order.size()) + " features, matrix has " +
                             std::to_string(z_rows.cols()) + " columns");
    }
    const std::size_t k = selected_count(beta, z_rows.cols());
    Matrix out(z_rows.rows(), k);
    for (std::size_t i = 0; i < z_rows.rows(); ++i) {
        for (std::size_t c = 0; c < k; ++c) out(i, c) = z_rows(i, ranking.order[c]);
    }
    return out;
}

Matrix reconstruct_masked(const MiaefsModel& model, const Matrix& z_rows,
                          const FeatureRanking& ranking, double beta) {
    if (z_rows.cols() != model.config.latent_dim()) {
        throw DimensionError("reconstruct_masked: latent width " + std::to_string(z_rows.cols()) +
                             ", expected " + std::to_string(model.config.latent_dim()));
    }
    const std::size_t k = selected_count(beta, z_rows.cols());
    std::vector<bool> keep(z_rows.cols(), false);
    for (std::size_t c = 0; c < k; ++c) keep[ranking.order[c]] = true;

    Matrix masked = z_rows;
    for (std::size_t i = 0; i < masked.rows(); ++i) {
        for (std::size_t j = 0; j < masked.cols(); ++j) {
            if (!keep[j]) masked(i, j) = 0.0;
        }
    }
    return decode(model, fs_forward(model, masked));
}

}  // namespace miae
