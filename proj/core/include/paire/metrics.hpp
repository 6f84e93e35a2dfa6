#pragma once

#include "paire/types.hpp"

#include <span>
#include <vector>

namespace paire {

/// Rank-based ROC AUC: the probability that a random positive outscores a
/// random negative, ties counting one half. Labels are 0/1.
/// Throws MetricError unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct F1Scores {
    double micro = 0.0;
    double macro = 0.0;
};

/// Single-label F1. Macro-F1 averages over every class that appears in
/// either argument; a class with no true positives contributes 0.
F1Scores classification_metrics(std::span<const int> predicted, std::span<const int> truth);

/// Multi-label F1 over n x K 0/1 indicator matrices. Macro-F1 averages over
/// all K columns.
F1Scores classification_metrics(const Eigen::MatrixXi& predicted, const Eigen::MatrixXi& truth);

struct ClusteringScores {
    double nmi = 0.0;
    double acc = 0.0;
};

/// NMI normalized by the arithmetic mean of the two entropies (1 when both
/// partitions are trivial), and accuracy under the best one-to-one mapping
/// of clusters to classes.
ClusteringScores clustering_metrics(std::span<const int> assignments, std::span<const int> truth);

/// Maximum-weight assignment of rows to columns of a non-negative weight
/// matrix (Hungarian method). Returns, per row, the matched column or -1
/// when the row is left unmatched (more rows than columns).
std::vector<int> max_weight_assignment(const Matrix& weights);

}  // namespace paire
