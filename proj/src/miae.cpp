#include "miae/miae.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "miae/error.hpp"
#include "miae/optimizer.hpp"

namespace miae {

std::size_t MiaeConfig::input_dim() const {
    return std::accumulate(branch_dims.begin(), branch_dims.end(), std::size_t{0});
}

void MiaeConfig::validate() const {
    if (branch_dims.empty()) throw ConfigError("config: at least one branch required");
    for (std::size_t d : branch_dims) {
        if (d == 0) throw ConfigError("config: zero-width branch input");
    }
    for (std::size_t h : branch_hidden) {
        if (h == 0) throw ConfigError("config: zero-width hidden layer");
    }
    if (z_per_branch == 0) throw ConfigError("config: z_per_branch must be >= 1");
    if (decoder_hidden.size() != branch_hidden.size()) {
        throw ConfigError("config: decoder has " + std::to_string(decoder_hidden.size()) +
                          " hidden layers, sub-encoders have " +
                          std::to_string(branch_hidden.size()));
    }
    const std::size_t n = branch_count();
    for (std::size_t i = 0; i < decoder_hidden.size(); ++i) {
        const std::size_t expected = n * branch_hidden[branch_hidden.size() - 1 - i];
        if (decoder_hidden[i] != expected) {
            throw ConfigError("config: decoder hidden width " + std::to_string(decoder_hidden[i]) +
                              " at layer " + std::to_string(i) + " breaks symmetry (expected " +
                              std::to_string(expected) + ")");
        }
    }
}

MiaeConfig MiaeConfig::symmetric(std::vector<std::size_t> branch_dims,
                                 std::vector<std::size_t> branch_hidden,
                                 std::size_t z_per_branch, std::uint64_t seed) {
    MiaeConfig config;
    config.branch_dims = std::move(branch_dims);
    config.branch_hidden = std::move(branch_hidden);
    config.z_per_branch = z_per_branch;
    config.seed = seed;
    const std::size_t n = config.branch_count();
    for (auto it = config.branch_hidden.rbegin(); it != config.branch_hidden.rend(); ++it) {
        config.decoder_hidden.push_back(n * *it);
    }
    return config;
}

namespace detail {

std::vector<Layer> build_stack(const std::vector<std::size_t>& widths, Rng& rng) {
    std::vector<Layer> layers;
    layers.reserve(widths.size() - 1);
    for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
        Layer layer;
        layer.W = glorot_init(widths[k], widths[k + 1], rng);
        layer.b = Matrix(1, widths[k + 1]);
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::vector<Layer> zero_like(const std::vector<Layer>& layers) {
    std::vector<Layer> out;
    out.reserve(layers.size());
    for (const Layer& l : layers) {
        out.push_back(Layer{Matrix(l.W.rows(), l.W.cols()), Matrix(1, l.b.cols())});
    }
    return out;
}

Matrix stack_forward(const std::vector<Layer>& layers, const Matrix& x, Activation last,
                     std::vector<Matrix>* cache) {
    if (cache) {
        cache->clear();
        cache->push_back(x);
    }
    Matrix a = x;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const Activation act = (k + 1 == layers.size()) ? last : Activation::Tanh;
        a = activate(affine_forward(a, layers[k].W, layers[k].b), act);
        if (cache) cache->push_back(a);
    }
    return a;
}

namespace {

// dL/d(pre-activation) from dL/d(activation), using the activation value
// itself (tanh' = 1 - a^2; relu' = [a > 0]).
Matrix activation_backward(const Matrix& dact, const Matrix& act, Activation kind) {
    Matrix dpre = dact;
    const double* a = act.data();
    double* d = dpre.data();
    if (kind == Activation::Tanh) {
        for (std::size_t i = 0; i < dpre.size(); ++i) d[i] *= 1.0 - a[i] * a[i];
    } else {
        for (std::size_t i = 0; i < dpre.size(); ++i) d[i] = a[i] > 0.0 ? d[i] : 0.0;
    }
    return dpre;
}

}  // namespace

Matrix stack_backward(const std::vector<Layer>& layers, const std::vector<Matrix>& acts,
                      Activation last, const Matrix& dout, std::vector<Layer>& grads) {
    Matrix da = dout;
    for (std::size_t k = layers.size(); k-- > 0;) {
        const Activation act = (k + 1 == layers.size()) ? last : Activation::Tanh;
        const Matrix dpre = activation_backward(da, acts[k + 1], act);
        grads[k].W = matmul_at_b(acts[k], dpre);
        grads[k].b = column_sums(dpre);
        da = matmul_a_bt(dpre, layers[k].W);
    }
    return da;
}

Matrix encode_branches(const std::vector<std::vector<Layer>>& encoders, const BranchView& x,
                       const std::vector<std::size_t>& branch_dims) {
    if (x.branches.size() != encoders.size()) {
        throw DimensionError("encode: got " + std::to_string(x.branches.size()) +
                             " branches, model has " + std::to_string(encoders.size()));
    }
    std::vector<Matrix> parts;
    parts.reserve(encoders.size());
    for (std::size_t j = 0; j < encoders.size(); ++j) {
        if (x.branches[j].cols() != branch_dims[j]) {
            throw DimensionError("encode: branch " + std::to_string(j) + " width " +
                                 std::to_string(x.branches[j].cols()) + ", expected " +
                                 std::to_string(branch_dims[j]));
        }
        parts.push_back(stack_forward(encoders[j], x.branches[j], Activation::Tanh, nullptr));
    }
    return hconcat(parts);
}

}  // namespace detail

MiaeModel build(const MiaeConfig& config) {
    config.validate();
    MiaeModel model;
    model.config = config;
    Rng rng(config.seed);
    for (std::size_t j = 0; j < config.branch_count(); ++j) {
        std::vector<std::size_t> widths;
        widths.push_back(config.branch_dims[j]);
        widths.insert(widths.end(), config.branch_hidden.begin(), config.branch_hidden.end());
        widths.push_back(config.z_per_branch);
        model.encoders.push_back(detail::build_stack(widths, rng));
    }
    std::vector<std::size_t> dec;
    dec.push_back(config.latent_dim());
    dec.insert(dec.end(), config.decoder_hidden.begin(), config.decoder_hidden.end());
    dec.push_back(config.input_dim());
    model.decoder = detail::build_stack(dec, rng);
    return model;
}

Matrix encode(const MiaeModel& model, const BranchView& x) {
    return detail::encode_branches(model.encoders, x, model.config.branch_dims);
}

Matrix decode(const MiaeModel& model, const Matrix& z) {
    if (z.cols() != model.config.latent_dim()) {
        throw DimensionError("decode: latent width " + std::to_string(z.cols()) + ", expected " +
                             std::to_string(model.config.latent_dim()));
    }
    return detail::stack_forward(model.decoder, z, Activation::Relu, nullptr);
}

double loss(const MiaeModel& model, const BranchView& batch) {
    if (batch.n_rows() == 0) throw DimensionError("loss: empty batch");
    return mse(batch.concat(), decode(model, encode(model, batch)));
}

MiaeGradients gradients(const MiaeModel& model, const BranchView& batch) {
    const std::size_t m = batch.n_rows();
    if (m == 0) throw DimensionError("gradients: empty batch");

    // Forward with caches.
    std::vector<std::vector<Matrix>> enc_acts(model.encoders.size());
    std::vector<Matrix> parts;
    for (std::size_t j = 0; j < model.encoders.size(); ++j) {
        parts.push_back(detail::stack_forward(model.encoders[j], batch.branches[j],
                                              Activation::Tanh, &enc_acts[j]));
    }
    const Matrix z = hconcat(parts);
    std::vector<Matrix> dec_acts;
    const Matrix xhat = detail::stack_forward(model.decoder, z, Activation::Relu, &dec_acts);

    const Matrix x = batch.concat();

    MiaeGradients grads;
    grads.encoders.resize(model.encoders.size());
    for (std::size_t j = 0; j < model.encoders.size(); ++j) {
        grads.encoders[j] = detail::zero_like(model.encoders[j]);
    }
    grads.decoder = detail::zero_like(model.decoder);

    // d/dxhat of (1/m) sum_i ||x_i - xhat_i||^2.
    Matrix dxhat(xhat.rows(), xhat.cols());
    for (std::size_t i = 0; i < dxhat.size(); ++i) {
        dxhat.data()[i] = 2.0 / static_cast<double>(m) * (xhat.data()[i] - x.data()[i]);
    }

    const Matrix dz =
        detail::stack_backward(model.decoder, dec_acts, Activation::Relu, dxhat, grads.decoder);

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
std::vector<MatrixPtr> list_parameters(ModelLike& m) {
    std::vector<MatrixPtr> out;
    for (auto& enc : m.encoders) {
        for (auto& layer : enc) {
            out.push_back(&layer.W);
            out.push_back(&layer.b);
        }
    }
    for (auto& layer : m.decoder) {
        out.push_back(&layer.W);
        out.push_back(&layer.b);
    }
    return out;
}

}  // namespace

std::vector<Matrix*> parameter_list(MiaeModel& model) {
    return list_parameters<MiaeModel, Matrix*>(model);
}

std::vector<const Matrix*> parameter_list(const MiaeModel& model) {
    return list_parameters<const MiaeModel, const Matrix*>(model);
}

std::vector<Matrix*> parameter_list(MiaeGradients& grads) {
    return list_parameters<MiaeGradients, Matrix*>(grads);
}

namespace detail {

void validate_hyper(const TrainHyper& hyper, std::size_t n_rows) {
    if (n_rows == 0) throw DimensionError("train: empty dataset");
    if (hyper.batch_size == 0) throw ConfigError("train: batch_size must be >= 1");
    if (hyper.epochs == 0) throw ConfigError("train: epochs must be >= 1");
    if (!(hyper.lr > 0.0)) throw ConfigError("train: learning rate must be > 0");
}

// Row order for one epoch: permuted minibatches, except that a full-batch
// epoch keeps natural order (the single batch is order-insensitive anyway,
// and this keeps the history independent of the shuffle seed).
std::vector<std::size_t> epoch_order(std::size_t n, std::size_t batch_size, Rng& rng) {
    if (batch_size >= n) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return idx;
    }
    return shuffle_indices(n, rng);
}

}  // namespace detail

std::vector<double> train(MiaeModel& model, const BranchView& data, const TrainHyper& hyper) {
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

            const double batch_loss = loss(model, batch);
            if (!std::isfinite(batch_loss)) {
                throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch " + std::to_string(batch_index));
            }
            epoch_loss += batch_loss * static_cast<double>(rows.size());

            MiaeGradients grads = gradients(model, batch);
            auto grad_ptrs = parameter_list(grads);
            for (std::size_t p = 0; p < params.size(); ++p) {
                adam_step(*params[p], *grad_ptrs[p], states[p]);
            }
        }
        history.push_back(epoch_loss / static_cast<double>(n));
    }
    return history;
}

}  // namespace miae
