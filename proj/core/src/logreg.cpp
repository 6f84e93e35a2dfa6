#include "paire/logreg.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace paire {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// Largest eigenvalue of [X 1]^T [X 1] by power iteration.
double gram_spectral_norm(const RowMatrix& x) {
    const Eigen::Index d = x.cols();
    Vector v = Vector::Ones(d + 1);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 50; ++it) {
        const Vector xv = x * v.head(d) + Vector::Constant(x.rows(), v[d]);
        Vector w(d + 1);
        w.head(d) = x.transpose() * xv;
        w[d] = xv.sum();
        const double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        lambda = norm;
        v = w / norm;
    }
    return lambda;
}

}  // namespace

void BinaryLogReg::fit(const RowMatrix& x_raw, std::span<const double> targets, const LogRegConfig& config) {
    const Eigen::Index n = x_raw.rows();
    const Eigen::Index d = x_raw.cols();
    if (n == 0 || static_cast<std::size_t>(n) != targets.size()) {
        throw ContractError("logistic regression: feature rows and targets differ in count");
    }
    if (!(config.inverse_l2 > 0.0)) {
        throw ConfigError("inverse_l2 must be positive");
    }
    mean_ = Vector::Zero(d);
    scale_ = Vector::Ones(d);
    if (config.standardize) {
        mean_ = x_raw.colwise().mean().transpose();
        for (Eigen::Index j = 0; j < d; ++j) {
            const double var = (x_raw.col(j).array() - mean_[j]).square().mean();
            scale_[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
        }
    }
    const RowMatrix x = (x_raw.rowwise() - mean_.transpose()).array().rowwise() / scale_.transpose().array();
    const Eigen::Map<const Vector> y(targets.data(), n);

    const double inv_n = 1.0 / static_cast<double>(n);
    const double reg = inv_n / config.inverse_l2;
    const double lipschitz = 0.25 * inv_n * gram_spectral_norm(x) * 1.05 + reg;
    const double step = 1.0 / std::max(lipschitz, 1e-12);

    // Parameter vector: weights followed by the intercept.
    Vector theta = Vector::Zero(d + 1);
    Vector prev = theta;
    Vector grad(d + 1);
    auto gradient = [&](const Vector& t, Vector& g) {
        Vector z = x * t.head(d);
        z.array() += t[d];
        Vector r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            r[i] = sigmoid(z[i]) - y[i];
        }
        g.head(d) = inv_n * (x.transpose() * r) + reg * t.head(d);
        g[d] = inv_n * r.sum();
    };

    double momentum_k = 1.0;
    iterations_ = 0;
    for (std::size_t it = 0; it < config.max_iter; ++it) {
        const double beta = (momentum_k - 1.0) / (momentum_k + 2.0);
        const Vector look = theta + beta * (theta - prev);
        gradient(look, grad);
        iterations_ = it + 1;
        if (grad.lpNorm<Eigen::Infinity>() < config.tolerance) {
            prev = theta;
            theta = look;
            break;
        }
        Vector next = look - step * grad;
        // Adaptive restart when the step opposes the momentum direction.
        if (grad.dot(next - theta) > 0.0) {
            momentum_k = 1.0;
        } else {
            momentum_k += 1.0;
        }
        prev = theta;
        theta = std::move(next);
    }
    weights_ = theta.head(d);
    intercept_ = theta[d];
}

Vector BinaryLogReg::predict_proba(const RowMatrix& x_raw) const {
    if (x_raw.cols() != weights_.size()) {
        throw ContractError("logistic regression: feature width mismatch");
    }
    const RowMatrix x = (x_raw.rowwise() - mean_.transpose()).array().rowwise() / scale_.transpose().array();
    Vector z = x * weights_;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z[i] = sigmoid(z[i] + intercept_);
    }
    return z;
}

void OneVsRestLogReg::fit(const RowMatrix& x, std::span<const int> labels) {
    if (static_cast<std::size_t>(x.rows()) != labels.size()) {
        throw ContractError("one-vs-rest: feature rows and labels differ in count");
    }
    std::set<int> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) {
        throw ClassifierError("one-vs-rest needs at least two classes in the training data");
    }
    classes_.assign(distinct.begin(), distinct.end());
    models_.assign(classes_.size(), BinaryLogReg{});
    std::vector<double> target(labels.size());
    for (std::size_t k = 0; k < classes_.size(); ++k) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            target[i] = labels[i] == classes_[k] ? 1.0 : 0.0;
        }
        models_[k].fit(x, target, config_);
    }
}

void OneVsRestLogReg::fit_multilabel(const RowMatrix& x, const Eigen::MatrixXi& indicators) {
    if (x.rows() != indicators.rows()) {
        throw ContractError("one-vs-rest: feature rows and label rows differ in count");
    }
    if (indicators.cols() < 1 || indicators.rows() == 0) {
        throw ClassifierError("multi-label fit needs at least one class and one sample");
    }
    classes_.resize(static_cast<std::size_t>(indicators.cols()));
    models_.assign(classes_.size(), BinaryLogReg{});
    std::vector<double> target(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index k = 0; k < indicators.cols(); ++k) {
        classes_[static_cast<std::size_t>(k)] = static_cast<int>(k);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            target[static_cast<std::size_t>(i)] = indicators(i, k) != 0 ? 1.0 : 0.0;
        }
        models_[static_cast<std::size_t>(k)].fit(x, target, config_);
    }
}

RowMatrix OneVsRestLogReg::predict_proba(const RowMatrix& x) const {
    if (models_.empty()) {
        throw ClassifierError("classifier is not fitted");
    }
    RowMatrix out(x.rows(), static_cast<Eigen::Index>(models_.size()));
    for (std::size_t k = 0; k < models_.size(); ++k) {
        out.col(static_cast<Eigen::Index>(k)) = models_[k].predict_proba(x);
    }
    return out;
}

std::vector<int> OneVsRestLogReg::predict(const RowMatrix& x) const {
    const RowMatrix p = predict_proba(x);
    std::vector<int> out(static_cast<std::size_t>(p.rows()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        Eigen::Index best = 0;
        p.row(i).maxCoeff(&best);
        out[static_cast<std::size_t>(i)] = classes_[static_cast<std::size_t>(best)];
    }
    return out;
}

Eigen::MatrixXi OneVsRestLogReg::predict_multilabel(const RowMatrix& x) const {
    const RowMatrix p = predict_proba(x);
    return (p.array() >= 0.5).cast<int>();
}

LogRegOutput logreg_ovr(const RowMatrix& train_x, std::span<const int> train_y, const RowMatrix& test_x,
                        const LogRegConfig& config) {
    OneVsRestLogReg clf(config);
    clf.fit(train_x, train_y);
    LogRegOutput out;
    out.scores = clf.predict_proba(test_x);
    out.predictions = clf.predict(test_x);
    out.classes = clf.classes();
    return out;
}

}  // namespace paire
