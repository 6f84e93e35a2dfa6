#include "paire/autoencoder.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace paire {

namespace {

using SparseCols = Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>;

// Applies f to the matching parameter block of every argument, in a fixed
// order. All arguments must share the ModelParams layout.
template <class F, class... Ps>
void zip_blocks(F&& f, Ps&... ps) {
    f(ps.self_encoder.first.weight...);
    f(ps.self_encoder.first.bias...);
    f(ps.self_encoder.second.weight...);
    f(ps.self_encoder.second.bias...);
    f(ps.agg_encoder.first.weight...);
    f(ps.agg_encoder.first.bias...);
    f(ps.agg_encoder.second.weight...);
    f(ps.agg_encoder.second.bias...);
    f(ps.embedding.weight...);
    f(ps.embedding.bias...);
    f(ps.self_decoder.hidden.weight...);
    f(ps.self_decoder.hidden.bias...);
    f(ps.self_decoder.output.weight...);
    f(ps.self_decoder.output.bias...);
    f(ps.agg_decoder.hidden.weight...);
    f(ps.agg_decoder.hidden.bias...);
    f(ps.agg_decoder.output.weight...);
    f(ps.agg_decoder.output.bias...);
}

constexpr const char* kBlockNames[] = {
    "self_encoder.first.weight",  "self_encoder.first.bias",  "self_encoder.second.weight",
    "self_encoder.second.bias",   "agg_encoder.first.weight", "agg_encoder.first.bias",
    "agg_encoder.second.weight",  "agg_encoder.second.bias",  "embedding.weight",
    "embedding.bias",             "self_decoder.hidden.weight", "self_decoder.hidden.bias",
    "self_decoder.output.weight", "self_decoder.output.bias", "agg_decoder.hidden.weight",
    "agg_decoder.hidden.bias",    "agg_decoder.output.weight", "agg_decoder.output.bias",
};

DenseLayer zero_layer(std::size_t out, std::size_t in) {
    return {Matrix::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
            Vector::Zero(static_cast<Eigen::Index>(out))};
}

void init_layer(DenseLayer& layer, std::mt19937_64& rng) {
    const auto fan_out = static_cast<std::size_t>(layer.weight.rows());
    const auto fan_in = static_cast<std::size_t>(layer.weight.cols());
    std::uniform_real_distribution<double> dist(-init_bound(fan_in, fan_out), init_bound(fan_in, fan_out));
    // Column-major fill order keeps the draw sequence independent of Eigen internals.
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
            layer.weight(r, c) = dist(rng);
        }
    }
    layer.bias.setZero();
}

Matrix affine(const DenseLayer& layer, const Matrix& x) {
    Matrix out = layer.weight * x;
    out.colwise() += layer.bias;
    return out;
}

Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

Matrix relu_mask(const Matrix& pre, const Matrix& grad) {
    return (pre.array() > 0.0).select(grad, 0.0);
}

BranchCache run_branch(const EncoderBranch& b, const SparseCols& x) {
    const Eigen::Index n = x.rows();
    const Eigen::Index h = b.first.weight.rows();
    BranchCache c;
    c.pre1 = b.first.weight * x;
    c.pre1.colwise() += b.first.bias;
    c.act1 = relu(c.pre1);
    c.pre2 = b.second.weight.leftCols(n) * x;
    c.pre2.noalias() += b.second.weight.rightCols(h) * c.act1;
    c.pre2.colwise() += b.second.bias;
    c.act2 = relu(c.pre2);
    return c;
}

Matrix embed_from(const ModelParams& m, const BranchCache& s, const BranchCache& a) {
    const Eigen::Index h = s.act2.rows();
    Matrix z = m.embedding.weight.leftCols(h) * s.act2;
    z.noalias() += m.embedding.weight.rightCols(h) * a.act2;
    z.colwise() += m.embedding.bias;
    return z;
}

void check_batch(const ModelParams& m, const Batch& batch) {
    if (batch.size() == 0) {
        throw ContractError("empty batch");
    }
    if (batch.agg.cols() != batch.self.cols()) {
        throw ContractError("self and aggregated batches differ in size");
    }
    const auto n = static_cast<Eigen::Index>(m.input_dim());
    if (batch.self.rows() != n || batch.agg.rows() != n) {
        throw ContractError("batch width " + std::to_string(batch.self.rows()) +
                            " does not match model input width " + std::to_string(n));
    }
}

/// Gradients of one encoder branch given dL/d(act2).
void branch_backward(const EncoderBranch& b, const SparseCols& x, const BranchCache& c,
                     const Matrix& d_act2, EncoderBranch& g) {
    const Eigen::Index n = x.rows();
    const Eigen::Index h = b.first.weight.rows();
    const Matrix d_pre2 = relu_mask(c.pre2, d_act2);
    g.second.weight.leftCols(n) = d_pre2 * x.transpose();
    g.second.weight.rightCols(h).noalias() = d_pre2 * c.act1.transpose();
    g.second.bias = d_pre2.rowwise().sum();
    const Matrix d_act1 = b.second.weight.rightCols(h).transpose() * d_pre2;
    const Matrix d_pre1 = relu_mask(c.pre1, d_act1);
    g.first.weight = d_pre1 * x.transpose();
    g.first.bias = d_pre1.rowwise().sum();
}

/// Gradients of one decoder branch given dL/dH; returns dL/dz.
Matrix decoder_backward(const DecoderBranch& d, const Matrix& z, const Matrix& pre,
                        const Matrix& act, const Matrix& d_logits, DecoderBranch& g) {
    g.output.weight.noalias() = d_logits * act.transpose();
    g.output.bias = d_logits.rowwise().sum();
    const Matrix d_act = d.output.weight.transpose() * d_logits;
    const Matrix d_pre = relu_mask(pre, d_act);
    g.hidden.weight.noalias() = d_pre * z.transpose();
    g.hidden.bias = d_pre.rowwise().sum();
    return d.hidden.weight.transpose() * d_pre;
}

Matrix logits_gradient(const Matrix& q, const SparseCols& p, double weight) {
    Matrix d = q;
    d -= Matrix(p);
    d *= weight;
    return d;
}

}  // namespace

void TrainConfig::validate() const {
    if (embedding_dim == 0) throw ConfigError("embedding_dim must be positive");
    if (hidden_width == 0) throw ConfigError("hidden_width must be positive");
    if (batch_size == 0) throw ConfigError("batch_size must be positive");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning_rate must be positive");
    }
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
        throw ConfigError("moment decays must lie in (0, 1)");
    }
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(self_weight > 0.0) || !(agg_weight > 0.0)) {
        throw ConfigError("loss weights must be positive");
    }
}

void ModelParams::for_each(const std::function<void(const std::string&, Eigen::Ref<Matrix>)>& fn) {
    std::size_t i = 0;
    auto visit = [&](auto& block) {
        Eigen::Map<Matrix> view(block.data(), block.rows(), block.cols());
        fn(kBlockNames[i++], view);
    };
    zip_blocks(visit, *this);
}

void ModelParams::for_each(
    const std::function<void(const std::string&, Eigen::Ref<const Matrix>)>& fn) const {
    std::size_t i = 0;
    auto visit = [&](const auto& block) {
        Eigen::Map<const Matrix> view(block.data(), block.rows(), block.cols());
        fn(kBlockNames[i++], view);
    };
    zip_blocks(visit, *this);
}

std::size_t ModelParams::parameter_count() const {
    std::size_t n = 0;
    zip_blocks([&](const auto& block) { n += static_cast<std::size_t>(block.size()); }, *this);
    return n;
}

bool ModelParams::all_finite() const {
    bool ok = true;
    zip_blocks([&](const auto& block) { ok = ok && block.allFinite(); }, *this);
    return ok;
}

ModelParams ModelParams::zeros(std::size_t input_dim, std::size_t hidden_width,
                               std::size_t embedding_dim) {
    if (input_dim == 0 || hidden_width == 0 || embedding_dim == 0) {
        throw ConfigError("model dimensions must be positive");
    }
    ModelParams m;
    m.self_encoder = {zero_layer(hidden_width, input_dim), zero_layer(hidden_width, input_dim + hidden_width)};
    m.agg_encoder = {zero_layer(hidden_width, input_dim), zero_layer(hidden_width, input_dim + hidden_width)};
    m.embedding = zero_layer(embedding_dim, 2 * hidden_width);
    m.self_decoder = {zero_layer(hidden_width, embedding_dim), zero_layer(input_dim, hidden_width)};
    m.agg_decoder = {zero_layer(hidden_width, embedding_dim), zero_layer(input_dim, hidden_width)};
    return m;
}

double init_bound(std::size_t fan_in, std::size_t fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

ModelParams init_model(const TrainConfig& cfg, std::size_t input_dim) {
    cfg.validate();
    ModelParams m = ModelParams::zeros(input_dim, cfg.hidden_width, cfg.embedding_dim);
    std::mt19937_64 rng(cfg.seed);
    init_layer(m.self_encoder.first, rng);
    init_layer(m.self_encoder.second, rng);
    init_layer(m.agg_encoder.first, rng);
    init_layer(m.agg_encoder.second, rng);
    init_layer(m.embedding, rng);
    init_layer(m.self_decoder.hidden, rng);
    init_layer(m.self_decoder.output, rng);
    init_layer(m.agg_decoder.hidden, rng);
    init_layer(m.agg_decoder.output, rng);
    return m;
}

Batch make_batch(const PairInputs& inputs, std::span<const std::size_t> rows) {
    auto gather = [&](const SparseRows& src) {
        SparseCols out(src.cols(), static_cast<Eigen::Index>(rows.size()));
        std::int64_t nnz = 0;
        for (std::size_t r : rows) {
            if (r >= static_cast<std::size_t>(src.rows())) {
                throw LookupError("input row " + std::to_string(r) + " out of range");
            }
            nnz += src.outerIndexPtr()[r + 1] - src.outerIndexPtr()[r];
        }
        out.reserve(nnz);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            out.startVec(col);
            for (SparseRows::InnerIterator it(src, static_cast<Eigen::Index>(rows[j])); it; ++it) {
                out.insertBack(it.col(), col) = it.value();
            }
        }
        out.finalize();
        return out;
    };
    return {gather(inputs.self), gather(inputs.agg)};
}

Batch make_batch(const PairInputs& inputs) {
    std::vector<std::size_t> rows(inputs.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return make_batch(inputs, rows);
}

Batch make_batch(const Matrix& self_cols, const Matrix& agg_cols) {
    return {self_cols.sparseView(), agg_cols.sparseView()};
}

Matrix softmax_columns(const Matrix& logits) {
    Matrix q(logits.rows(), logits.cols());
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
        const double mx = logits.col(j).maxCoeff();
        q.col(j) = (logits.col(j).array() - mx).exp();
        q.col(j) /= q.col(j).sum();
    }
    return q;
}

ForwardResult forward(const ModelParams& m, const Batch& batch) {
    check_batch(m, batch);
    ForwardResult r;
    r.self_branch = run_branch(m.self_encoder, batch.self);
    r.agg_branch = run_branch(m.agg_encoder, batch.agg);
    r.embeddings = embed_from(m, r.self_branch, r.agg_branch);

    r.dec_self_pre = affine(m.self_decoder.hidden, r.embeddings);
    r.dec_self_act = relu(r.dec_self_pre);
    r.h_self = affine(m.self_decoder.output, r.dec_self_act);
    r.q_self = softmax_columns(r.h_self);

    r.dec_agg_pre = affine(m.agg_decoder.hidden, r.embeddings);
    r.dec_agg_act = relu(r.dec_agg_pre);
    r.h_agg = affine(m.agg_decoder.output, r.dec_agg_act);
    r.q_agg = softmax_columns(r.h_agg);
    return r;
}

double kl_loss(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) {
        throw ContractError("kl_loss: p and q differ in shape");
    }
    double total = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            const double pi = p(i, j);
            if (pi > 0.0) {
                total += pi * (std::log(pi) - std::log(std::max(q(i, j), kMinProbability)));
            }
        }
    }
    return total;
}

double kl_loss(const SparseCols& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) {
        throw ContractError("kl_loss: p and q differ in shape");
    }
    double total = 0.0;
    for (Eigen::Index j = 0; j < p.outerSize(); ++j) {
        for (SparseCols::InnerIterator it(p, j); it; ++it) {
            const double pi = it.value();
            if (pi > 0.0) {
                total += pi * (std::log(pi) - std::log(std::max(q(it.row(), j), kMinProbability)));
            }
        }
    }
    return total;
}

double objective(const Batch& batch, const ForwardResult& fwd, const LossWeights& weights) {
    return weights.self_weight * kl_loss(batch.self, fwd.q_self) +
           weights.agg_weight * kl_loss(batch.agg, fwd.q_agg);
}

Gradients backward(const ModelParams& m, const Batch& batch, const ForwardResult& fwd,
                   const LossWeights& weights) {
    check_batch(m, batch);
    Gradients g = ModelParams::zeros(m.input_dim(), m.hidden_width(), m.embedding_dim());

    const Matrix d_h_self = logits_gradient(fwd.q_self, batch.self, weights.self_weight);
    const Matrix d_h_agg = logits_gradient(fwd.q_agg, batch.agg, weights.agg_weight);

    Matrix d_z = decoder_backward(m.self_decoder, fwd.embeddings, fwd.dec_self_pre,
                                  fwd.dec_self_act, d_h_self, g.self_decoder);
    d_z += decoder_backward(m.agg_decoder, fwd.embeddings, fwd.dec_agg_pre, fwd.dec_agg_act,
                            d_h_agg, g.agg_decoder);

    const Eigen::Index h = static_cast<Eigen::Index>(m.hidden_width());
    g.embedding.weight.leftCols(h).noalias() = d_z * fwd.self_branch.act2.transpose();
    g.embedding.weight.rightCols(h).noalias() = d_z * fwd.agg_branch.act2.transpose();
    g.embedding.bias = d_z.rowwise().sum();

    const Matrix d_act2_self = m.embedding.weight.leftCols(h).transpose() * d_z;
    const Matrix d_act2_agg = m.embedding.weight.rightCols(h).transpose() * d_z;
    branch_backward(m.self_encoder, batch.self, fwd.self_branch, d_act2_self, g.self_encoder);
    branch_backward(m.agg_encoder, batch.agg, fwd.agg_branch, d_act2_agg, g.agg_encoder);
    return g;
}

AdamOptimizer::AdamOptimizer(const ModelParams& shape, double learning_rate, double beta1,
                             double beta2, double epsilon)
    : m_(ModelParams::zeros(shape.input_dim(), shape.hidden_width(), shape.embedding_dim())),
      v_(m_),
      lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon) {}

void AdamOptimizer::step(ModelParams& params, const Gradients& grads) {
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    auto update = [&](auto& p, const auto& g, auto& m, auto& v) {
        m.array() = beta1_ * m.array() + (1.0 - beta1_) * g.array();
        v.array() = beta2_ * v.array() + (1.0 - beta2_) * g.array().square();
        p.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
    };
    zip_blocks(update, params, grads, m_, v_);
}

namespace {

Matrix encode(const ModelParams& m, const Batch& batch) {
    check_batch(m, batch);
    return embed_from(m, run_branch(m.self_encoder, batch.self), run_branch(m.agg_encoder, batch.agg));
}

}  // namespace

RowMatrix embed(const ModelParams& m, const PairInputs& inputs, std::size_t batch_size) {
    if (batch_size == 0) {
        throw ConfigError("batch_size must be positive");
    }
    RowMatrix out(static_cast<Eigen::Index>(inputs.size()), static_cast<Eigen::Index>(m.embedding_dim()));
    std::vector<std::size_t> rows;
    for (std::size_t start = 0; start < inputs.size(); start += batch_size) {
        const std::size_t stop = std::min(inputs.size(), start + batch_size);
        rows.resize(stop - start);
        std::iota(rows.begin(), rows.end(), start);
        const Matrix z = encode(m, make_batch(inputs, rows));
        out.middleRows(static_cast<Eigen::Index>(start), z.cols()) = z.transpose();
    }
    return out;
}

TrainResult train(const PairInputs& inputs, const TrainConfig& cfg, const EpochCallback& on_epoch) {
    cfg.validate();
    if (inputs.size() == 0) {
        throw ConfigError("no training samples");
    }
    if (inputs.agg.rows() != inputs.self.rows() || inputs.agg.cols() != inputs.self.cols()) {
        throw ContractError("self and aggregated inputs differ in shape");
    }

    TrainResult result;
    result.model = init_model(cfg, inputs.dim());
    AdamOptimizer adam(result.model, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon);
    const LossWeights weights{cfg.self_weight, cfg.agg_weight};

    // Separate stream from the initializer so the shuffle order does not
    // depend on the parameter count.
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_total = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_index) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            const Batch batch = make_batch(inputs, std::span(order).subspan(start, stop - start));
            const ForwardResult fwd = forward(result.model, batch);
            result.pair_forwards += batch.size();
            const double loss = objective(batch, fwd, weights);
            if (!std::isfinite(loss)) {
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                    std::to_string(batch_index));
            }
            epoch_total += loss;
            adam.step(result.model, backward(result.model, batch, fwd, weights));
        }
        const double mean = epoch_total / static_cast<double>(inputs.size());
        result.epoch_loss.push_back(mean);
        if (on_epoch) {
            on_epoch(epoch, mean);
        }
    }

    result.embeddings = embed(result.model, inputs, cfg.batch_size);
    return result;
}

}  // namespace paire
