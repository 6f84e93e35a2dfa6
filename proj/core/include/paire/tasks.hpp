#pragma once

#include "paire/autoencoder.hpp"
#include "paire/embedding.hpp"
#include "paire/features.hpp"
#include "paire/graph.hpp"
#include "paire/kmeans.hpp"
#include "paire/link_split.hpp"
#include "paire/logreg.hpp"
#include "paire/pair_set.hpp"
#include "paire/translate.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paire {

enum class Task { link_prediction, pairwise, node_classification, clustering };

/// CLI names: link-pred, pairwise, node-class, cluster.
std::string to_string(Task task);
std::optional<Task> parse_task(std::string_view name);

struct ProtocolConfig {
    std::size_t runs = 10;
    /// Run i uses seed base_seed + i.
    std::uint64_t base_seed = 0;
    double holdout_fraction = 0.2;
    std::vector<double> train_ratios{0.3, 0.5, 0.7};
    LogRegConfig logreg;
    KMeansConfig kmeans;
    PairwiseOptions pairwise;
    /// L2-normalize embedding rows before k-means.
    bool normalize_for_clustering = false;
    std::string dataset;
};

/// Feature vectors for node pairs, derived from embeddings learned on one
/// graph.
class PairFeaturizer {
public:
    virtual ~PairFeaturizer() = default;
    /// One row per pair.
    virtual RowMatrix featurize(std::span<const NodePair> pairs) const = 0;
};

/// Builds a featurizer from the graph visible at training time.
using EmbedderFactory =
    std::function<std::unique_ptr<PairFeaturizer>(const Graph& visible, std::uint64_t seed)>;

/// Trained pair model plus the pair set it was trained on.
struct PairModel {
    PairSet pairs;
    TrainResult result;
};

/// Trains the autoencoder on the symmetrized pairs of `g`.
PairModel train_pair_model(const Graph& g, const TrainConfig& cfg, const FeatureOptions& options = {},
                           const EpochCallback& on_epoch = {});

/// Trains the autoencoder on per-node inputs (node-level ablation).
TrainResult train_node_model(const Graph& g, const TrainConfig& cfg, const FeatureOptions& options = {},
                             const EpochCallback& on_epoch = {});

/// Pair embeddings: a trained pair keeps its own row; any other candidate is
/// embedded by a forward pass over its freshly built input on the visible
/// graph. The run seed replaces cfg.seed.
EmbedderFactory paire_embedder(TrainConfig cfg, FeatureOptions options = {});

/// Node-level ablation; pairs are represented by concatenated node rows.
EmbedderFactory node_ablation_embedder(TrainConfig cfg, FeatureOptions options = {});

/// Concatenation over a fixed node table (for embeddings produced elsewhere).
/// The visible graph is ignored, so the protocol is not inductive.
EmbedderFactory fixed_node_embedder(EmbeddingTable nodes);

/// emb(u) || emb(v) from a node table. Throws LookupError for an unknown id.
Vector concat_edge_embedding(const EmbeddingTable& nodes, NodeId u, NodeId v);

/// Per-run values of one metric.
struct MetricRuns {
    std::string name;
    std::vector<double> values;

    double mean() const;
};

struct EvalReport {
    Task task = Task::link_prediction;
    std::string dataset;
    std::vector<std::uint64_t> seeds;
    std::vector<MetricRuns> metrics;

    /// Throws LookupError for an unknown metric name.
    const MetricRuns& metric(std::string_view name) const;
    double mean(std::string_view name) const;
};

/// Held-out edges and sampled non-edges scored by a logistic model over
/// featurized pairs; metric "auc".
EvalReport run_link_prediction(const Graph& g, const EmbedderFactory& embedder, const ProtocolConfig& cfg);

/// Same-class versus different-class node pairs; metric "auc".
EvalReport run_pairwise(const Graph& g, const EmbedderFactory& embedder, const ProtocolConfig& cfg);

/// Random node split per train ratio r; metrics "micro_f1@r" and "macro_f1@r".
EvalReport run_node_classification(const Graph& g, const EmbeddingTable& nodes, const ProtocolConfig& cfg);

/// k-means with k = number of classes; metrics "nmi" and "acc".
EvalReport run_clustering(const Graph& g, const EmbeddingTable& nodes, const ProtocolConfig& cfg);

/// Dispatch. Pair tasks need `embedder`, node tasks need `nodes`; a missing
/// one raises TaskError.
EvalReport run_task(Task task, const Graph& g, const EmbedderFactory* embedder,
                    const EmbeddingTable* nodes, const ProtocolConfig& cfg);

}  // namespace paire
