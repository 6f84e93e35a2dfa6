#pragma once

#include "paire/features.hpp"
#include "paire/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace paire {

/// Hyperparameters of the autoencoder and its training loop.
struct TrainConfig {
    std::size_t embedding_dim = 128;
    std::size_t hidden_width = 256;
    std::size_t epochs = 30;
    std::size_t batch_size = 1024;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double self_weight = 1.0;
    double agg_weight = 1.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError when a field is out of range. `epochs` may be 0.
    void validate() const;
};

/// y = W x + b, with W stored out x in.
struct DenseLayer {
    Matrix weight;
    Vector bias;
};

/// One encoder branch. `second` consumes the branch input concatenated with
/// the output of `first` (skip connection), so its input width is in + h.
struct EncoderBranch {
    DenseLayer first;
    DenseLayer second;
};

struct DecoderBranch {
    DenseLayer hidden;
    DenseLayer output;
};

/// All trainable parameters. The same shape doubles as a gradient set.
///
/// Layout per sample x (self or aggregated branch, width n):
///   a1 = relu(W1 x + b1)                 h
///   a2 = relu(W2 [x; a1] + b2)           h
///   z  = We [a2_self; a2_agg] + be       d   (linear)
///   g  = relu(D1 z + c1)                 h   (per decoder)
///   H  = D2 g + c2,  Q = softmax(H)      n   (per decoder)
struct ModelParams {
    EncoderBranch self_encoder;
    EncoderBranch agg_encoder;
    DenseLayer embedding;
    DecoderBranch self_decoder;
    DecoderBranch agg_decoder;

    std::size_t input_dim() const { return static_cast<std::size_t>(self_encoder.first.weight.cols()); }
    std::size_t hidden_width() const { return static_cast<std::size_t>(self_encoder.first.weight.rows()); }
    std::size_t embedding_dim() const { return static_cast<std::size_t>(embedding.weight.rows()); }

    /// Visits every parameter block in a fixed order as (name, matrix view).
    void for_each(const std::function<void(const std::string&, Eigen::Ref<Matrix>)>& fn);
    void for_each(const std::function<void(const std::string&, Eigen::Ref<const Matrix>)>& fn) const;

    std::size_t parameter_count() const;
    bool all_finite() const;

    /// Zero-filled parameters of the given shape.
    static ModelParams zeros(std::size_t input_dim, std::size_t hidden_width, std::size_t embedding_dim);
};

using Gradients = ModelParams;

/// Glorot-uniform weights, zero biases, drawn from a generator seeded with
/// cfg.seed. The same seed yields bit-identical parameters.
ModelParams init_model(const TrainConfig& cfg, std::size_t input_dim);

/// Half-width of the uniform initialization range for a fan_in x fan_out layer.
double init_bound(std::size_t fan_in, std::size_t fan_out);

/// A minibatch in column layout: column j is sample j.
struct Batch {
    Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t> self;
    Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t> agg;

    std::size_t size() const noexcept { return static_cast<std::size_t>(self.cols()); }
};

Batch make_batch(const PairInputs& inputs, std::span<const std::size_t> rows);
Batch make_batch(const PairInputs& inputs);
/// Batch from dense columns (one sample per column).
Batch make_batch(const Matrix& self_cols, const Matrix& agg_cols);

/// Intermediate activations kept for the backward pass.
struct BranchCache {
    Matrix pre1;
    Matrix act1;
    Matrix pre2;
    Matrix act2;
};

struct ForwardResult {
    Matrix embeddings;  // d x B
    Matrix h_self;      // n x B, decoder logits
    Matrix h_agg;
    Matrix q_self;      // n x B, column-wise softmax of h_self
    Matrix q_agg;
    BranchCache self_branch;
    BranchCache agg_branch;
    Matrix dec_self_pre;
    Matrix dec_self_act;
    Matrix dec_agg_pre;
    Matrix dec_agg_act;
};

ForwardResult forward(const ModelParams& m, const Batch& batch);

/// Column-wise softmax.
Matrix softmax_columns(const Matrix& logits);

/// Lower clamp applied to q inside the logarithm.
inline constexpr double kMinProbability = 1e-12;

/// Sum over columns of KL(p_col || q_col) with 0 ln 0 = 0 and q clamped
/// below at kMinProbability. Each column is one distribution.
double kl_loss(const Matrix& p, const Matrix& q);
double kl_loss(const Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>& p, const Matrix& q);

struct LossWeights {
    double self_weight = 1.0;
    double agg_weight = 1.0;
};

/// Weighted objective self_weight * KL(P_self||Q_self) + agg_weight * KL(P_agg||Q_agg).
double objective(const Batch& batch, const ForwardResult& fwd, const LossWeights& weights);

/// Exact gradient of `objective` with respect to every parameter, using
/// dL/dH = w (Q - P) per column for the softmax+KL composite.
Gradients backward(const ModelParams& m, const Batch& batch, const ForwardResult& fwd,
                   const LossWeights& weights);

/// First-order adaptive moment optimizer over ModelParams.
class AdamOptimizer {
public:
    AdamOptimizer(const ModelParams& shape, double learning_rate, double beta1, double beta2,
                  double epsilon);

    void step(ModelParams& params, const Gradients& grads);
    std::uint64_t steps() const noexcept { return t_; }

private:
    ModelParams m_;
    ModelParams v_;
    double lr_;
    double beta1_;
    double beta2_;
    double eps_;
    std::uint64_t t_ = 0;
};

struct TrainResult {
    ModelParams model;
    /// Final full forward pass, one row per input sample.
    RowMatrix embeddings;
    /// Mean per-sample objective of each epoch.
    std::vector<double> epoch_loss;
    /// Sample-forward evaluations performed inside the training loop.
    std::uint64_t pair_forwards = 0;
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

/// Minibatch training: every epoch shuffles the sample order with the seeded
/// generator and visits each sample exactly once; the final short batch is
/// kept. Throws TrainingError on a non-finite loss.
TrainResult train(const PairInputs& inputs, const TrainConfig& cfg, const EpochCallback& on_epoch = {});

/// Embedding-layer activations for every input row, computed in batches.
RowMatrix embed(const ModelParams& m, const PairInputs& inputs, std::size_t batch_size = 1024);

}  // namespace paire
