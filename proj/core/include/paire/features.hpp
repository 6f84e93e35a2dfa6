#pragma once

#include "paire/graph.hpp"
#include "paire/pair_set.hpp"
#include "paire/types.hpp"

#include <span>
#include <vector>

namespace paire {

/// L1-normalize a non-negative vector onto the probability simplex. A zero
/// vector maps to the uniform distribution.
/// Throws DomainError on a negative or non-finite entry.
std::vector<double> normalize_to_distribution(std::span<const double> x);

/// Element-wise mean of the feature rows of `u`'s neighbours (excluding `u`);
/// the zero vector for an isolated node.
Vector mean_aggregate(const Graph& g, const FeatureMatrix& fm, NodeId u);

/// Mean aggregation applied `depth` times to every node. depth 0 returns the
/// input rows unchanged.
FeatureMatrix aggregate_features(const Graph& g, const FeatureMatrix& fm, int depth = 1);

enum class Normalization {
    /// One distribution over the whole concatenated vector.
    joint,
    /// Each half normalized on its own, then both scaled by 1/2.
    per_half,
};

struct FeatureOptions {
    int aggregation_depth = 1;
    Normalization normalization = Normalization::joint;
};

/// Dense copy of one autoencoder sample.
struct PairInput {
    Vector self_dist;
    Vector agg_dist;
};

/// Autoencoder samples, one row per pair (or per node in the node-level
/// ablation). Each row of `self` and `agg` is a probability distribution.
struct PairInputs {
    SparseRows self;
    SparseRows agg;

    std::size_t size() const noexcept { return static_cast<std::size_t>(self.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(self.cols()); }
    PairInput at(std::size_t i) const;
};

/// Inputs for every pair of `ps`, in pair-id order: self = X_u || X_v and
/// agg = M(u) || M(v), each normalized to a distribution.
PairInputs build_pair_inputs(const Graph& g, const FeatureMatrix& fm, const PairSet& ps,
                             const FeatureOptions& options = {});

/// Inputs for arbitrary ordered node pairs (need not be edges of `g`). Context
/// comes from `g`'s adjacency.
PairInputs build_pair_inputs(const Graph& g, std::span<const NodePair> pairs,
                             const FeatureOptions& options = {});

/// Node-level inputs of length F (self row and mean-aggregated row) for the
/// node-embedding ablation.
PairInputs build_node_inputs(const Graph& g, const FeatureOptions& options = {});

}  // namespace paire
