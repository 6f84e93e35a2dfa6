#pragma once

#include "paire/types.hpp"

#include <span>
#include <vector>

namespace paire {

struct LogRegConfig {
    /// Inverse L2 strength, as in the usual C parameterization:
    /// minimize 0.5 |w|^2 / C + sum of log-losses. The intercept is not penalized.
    double inverse_l2 = 1.0;
    std::size_t max_iter = 500;
    /// Stop once the max-norm of the per-sample gradient falls below this.
    double tolerance = 1e-6;
    /// Z-score features with training-set statistics before fitting.
    bool standardize = true;
};

/// L2-regularized binary logistic model fitted by accelerated full-batch
/// gradient descent.
class BinaryLogReg {
public:
    void fit(const RowMatrix& x, std::span<const double> targets, const LogRegConfig& config);
    /// P(y = 1 | x) per row.
    Vector predict_proba(const RowMatrix& x) const;

    const Vector& weights() const noexcept { return weights_; }
    double intercept() const noexcept { return intercept_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    Vector weights_;
    double intercept_ = 0.0;
    Vector mean_;
    Vector scale_;
    std::size_t iterations_ = 0;
};

/// One binary model per class.
class OneVsRestLogReg {
public:
    explicit OneVsRestLogReg(LogRegConfig config = {}) : config_(config) {}

    /// Single-label fit. Throws ClassifierError when fewer than two classes occur.
    void fit(const RowMatrix& x, std::span<const int> labels);
    /// Multi-label fit over an n x K 0/1 indicator matrix.
    void fit_multilabel(const RowMatrix& x, const Eigen::MatrixXi& indicators);

    /// n x K per-class probabilities, columns ordered as `classes()`.
    RowMatrix predict_proba(const RowMatrix& x) const;
    /// Argmax class per row (single-label).
    std::vector<int> predict(const RowMatrix& x) const;
    /// Per-class 0.5 threshold (multi-label), as an indicator matrix.
    Eigen::MatrixXi predict_multilabel(const RowMatrix& x) const;

    const std::vector<int>& classes() const noexcept { return classes_; }
    const std::vector<BinaryLogReg>& models() const noexcept { return models_; }

private:
    LogRegConfig config_;
    std::vector<int> classes_;
    std::vector<BinaryLogReg> models_;
};

struct LogRegOutput {
    RowMatrix scores;
    std::vector<int> predictions;
    std::vector<int> classes;
};

/// Fit on (train_x, train_y), score test_x.
LogRegOutput logreg_ovr(const RowMatrix& train_x, std::span<const int> train_y,
                        const RowMatrix& test_x, const LogRegConfig& config = {});

}  // namespace paire
