#include "paire/metrics.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace paire {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw ContractError("roc_auc: scores and labels differ in length");
    }
    std::size_t n_pos = 0;
    for (int l : labels) {
        if (l != 0 && l != 1) {
            throw MetricError("roc_auc: labels must be 0 or 1");
        }
        n_pos += static_cast<std::size_t>(l);
    }
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw MetricError("roc_auc: both classes must be present");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of mid-ranks (1-based) of the positives.
    double rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) {
            ++j;
        }
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum += mid;
            }
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

double f1(double tp, double fp, double fn) {
    const double denom = 2.0 * tp + fp + fn;
    return denom > 0.0 ? 2.0 * tp / denom : 0.0;
}

}  // namespace

F1Scores classification_metrics(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) {
        throw ContractError("classification_metrics: length mismatch");
    }
    if (truth.empty()) {
        throw MetricError("classification_metrics: no samples");
    }
    std::set<int> classes(truth.begin(), truth.end());
    classes.insert(predicted.begin(), predicted.end());
    std::map<int, std::array<double, 3>> counts;  // tp, fp, fn
    for (int c : classes) counts[c] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] == truth[i]) {
            counts[truth[i]][0] += 1.0;
        } else {
            counts[predicted[i]][1] += 1.0;
            counts[truth[i]][2] += 1.0;
        }
    }
    double tp = 0.0, fp = 0.0, fn = 0.0, macro = 0.0;
    for (const auto& [c, k] : counts) {
        tp += k[0];
        fp += k[1];
        fn += k[2];
        macro += f1(k[0], k[1], k[2]);
    }
    return {f1(tp, fp, fn), macro / static_cast<double>(counts.size())};
}

F1Scores classification_metrics(const Eigen::MatrixXi& predicted, const Eigen::MatrixXi& truth) {
    if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
        throw ContractError("classification_metrics: indicator shapes differ");
    }
    if (truth.rows() == 0 || truth.cols() == 0) {
        throw MetricError("classification_metrics: no samples");
    }
    double tp = 0.0, fp = 0.0, fn = 0.0, macro = 0.0;
    for (Eigen::Index k = 0; k < truth.cols(); ++k) {
        double ctp = 0.0, cfp = 0.0, cfn = 0.0;
        for (Eigen::Index i = 0; i < truth.rows(); ++i) {
            const bool p = predicted(i, k) != 0;
            const bool t = truth(i, k) != 0;
            ctp += (p && t) ? 1.0 : 0.0;
            cfp += (p && !t) ? 1.0 : 0.0;
            cfn += (!p && t) ? 1.0 : 0.0;
        }
        tp += ctp;
        fp += cfp;
        fn += cfn;
        macro += f1(ctp, cfp, cfn);
    }
    return {f1(tp, fp, fn), macro / static_cast<double>(truth.cols())};
}

std::vector<int> max_weight_assignment(const Matrix& weights) {
    const Eigen::Index rows = weights.rows();
    const Eigen::Index cols = weights.cols();
    if (rows == 0 || cols == 0) {
        return std::vector<int>(static_cast<std::size_t>(rows), -1);
    }
    const Eigen::Index n = std::max(rows, cols);
    const double top = weights.maxCoeff();
    // Square cost matrix, 1-based, padding cells at cost `top` (weight 0).
    auto cost = [&](Eigen::Index i, Eigen::Index j) {
        return (i < rows && j < cols) ? top - weights(i, j) : top;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<Eigen::Index> p(n + 1, 0), way(n + 1, 0);
    for (Eigen::Index i = 1; i <= n; ++i) {
        p[0] = i;
        Eigen::Index j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const Eigen::Index i0 = p[j0];
            double delta = inf;
            Eigen::Index j1 = 0;
            for (Eigen::Index j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Eigen::Index j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const Eigen::Index j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> out(static_cast<std::size_t>(rows), -1);
    for (Eigen::Index j = 1; j <= n; ++j) {
        const Eigen::Index i = p[j] - 1;
        if (i < rows && j - 1 < cols) {
            out[static_cast<std::size_t>(i)] = static_cast<int>(j - 1);
        }
    }
    return out;
}

ClusteringScores clustering_metrics(std::span<const int> assignments, std::span<const int> truth) {
    if (assignments.size() != truth.size()) {
        throw ContractError("clustering_metrics: length mismatch");
    }
    if (truth.empty()) {
        throw MetricError("clustering_metrics: no samples");
    }
    std::map<int, Eigen::Index> cluster_ids, class_ids;
    for (int a : assignments) cluster_ids.emplace(a, 0);
    for (int t : truth) class_ids.emplace(t, 0);
    Eigen::Index k = 0;
    for (auto& [c, id] : cluster_ids) id = k++;
    k = 0;
    for (auto& [c, id] : class_ids) id = k++;

    Matrix table = Matrix::Zero(static_cast<Eigen::Index>(cluster_ids.size()),
                                static_cast<Eigen::Index>(class_ids.size()));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        table(cluster_ids[assignments[i]], class_ids[truth[i]]) += 1.0;
    }
    const double n = static_cast<double>(truth.size());
    const Vector a = table.rowwise().sum();
    const Vector b = table.colwise().sum().transpose();

    auto entropy = [n](const Vector& counts) {
        double h = 0.0;
        for (Eigen::Index i = 0; i < counts.size(); ++i) {
            if (counts[i] > 0.0) {
                const double p = counts[i] / n;
                h -= p * std::log(p);
            }
        }
        return h;
    };
    double mi = 0.0;
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        for (Eigen::Index j = 0; j < table.cols(); ++j) {
            const double nij = table(i, j);
            if (nij > 0.0) {
                mi += nij / n * std::log(n * nij / (a[i] * b[j]));
            }
        }
    }
    const double ha = entropy(a);
    const double hb = entropy(b);
    ClusteringScores out;
    if (ha == 0.0 && hb == 0.0) {
        out.nmi = 1.0;
    } else {
        out.nmi = std::clamp(mi / (0.5 * (ha + hb)), 0.0, 1.0);
    }

    const std::vector<int> match = max_weight_assignment(table);
    double correct = 0.0;
    for (std::size_t i = 0; i < match.size(); ++i) {
        if (match[i] >= 0) {
            correct += table(static_cast<Eigen::Index>(i), match[i]);
        }
    }
    out.acc = correct / n;
    return out;
}

}  // namespace paire
