#pragma once

#include "paire/graph.hpp"

#include <cstdint>
#include <vector>

namespace paire {

/// Held-out edge split for link prediction.
///
/// `residual_graph` keeps the original component count. Train negatives are
/// non-edges of the residual graph, test negatives non-edges of the original;
/// each negative list matches its positive list in size.
struct LinkSplit {
    Graph residual_graph;
    std::vector<NodePair> train_pos;
    std::vector<NodePair> train_neg;
    std::vector<NodePair> test_pos;
    std::vector<NodePair> test_neg;
    std::uint64_t seed = 0;
};

/// Removes ceil(holdout_fraction * |E|) edges picked in random order among
/// those whose removal keeps connectivity. Throws SplitError, carrying the
/// fraction that was achievable, when too many edges are bridges.
LinkSplit make_link_split(const Graph& g, double holdout_fraction, std::uint64_t seed);

/// `count` distinct unordered node pairs that are not adjacent in `reference`,
/// each returned in a random orientation.
std::vector<NodePair> sample_non_edges(const Graph& reference, std::size_t count,
                                       std::uint64_t seed);

struct LabeledPairs {
    std::vector<NodePair> pairs;
    std::vector<int> labels;

    std::size_t size() const noexcept { return pairs.size(); }
};

struct PairwiseOptions {
    /// Total pairs; 0 means min(4 |E|, 20000).
    std::size_t size = 0;
    double train_fraction = 0.8;
};

struct PairwiseDataset {
    LabeledPairs train;
    LabeledPairs test;
};

/// Balanced same-class (label 1) / different-class (label 0) node pairs,
/// sampled uniformly among distinct unordered pairs of labeled nodes,
/// shuffled and split into train and test.
PairwiseDataset make_pairwise_dataset(const Graph& g, std::uint64_t seed,
                                      const PairwiseOptions& options = {});

}  // namespace paire
