#include "paire/tasks.hpp"

#include "paire/error.hpp"
#include "paire/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace paire {

std::string to_string(Task task) {
    switch (task) {
        case Task::link_prediction: return "link-pred";
        case Task::pairwise: return "pairwise";
        case Task::node_classification: return "node-class";
        case Task::clustering: return "cluster";
    }
    return "unknown";
}

std::optional<Task> parse_task(std::string_view name) {
    if (name == "link-pred") return Task::link_prediction;
    if (name == "pairwise") return Task::pairwise;
    if (name == "node-class") return Task::node_classification;
    if (name == "cluster") return Task::clustering;
    return std::nullopt;
}

PairModel train_pair_model(const Graph& g, const TrainConfig& cfg, const FeatureOptions& options,
                           const EpochCallback& on_epoch) {
    PairSet ps = PairSet::build(g, true);
    if (ps.size() == 0) {
        throw TaskError("graph has no edges to embed");
    }
    PairInputs inputs = build_pair_inputs(g, g.features(), ps, options);
    TrainResult result = train(inputs, cfg, on_epoch);
    return {std::move(ps), std::move(result)};
}

TrainResult train_node_model(const Graph& g, const TrainConfig& cfg, const FeatureOptions& options,
                             const EpochCallback& on_epoch) {
    return train(build_node_inputs(g, options), cfg, on_epoch);
}

namespace {

class PairModelFeaturizer final : public PairFeaturizer {
public:
    PairModelFeaturizer(Graph g, PairModel model, FeatureOptions options, std::size_t batch)
        : g_(std::move(g)), model_(std::move(model)), options_(options), batch_(batch) {}

    RowMatrix featurize(std::span<const NodePair> pairs) const override {
        const auto& known = model_.result.embeddings;
        RowMatrix out(static_cast<Eigen::Index>(pairs.size()), known.cols());
        std::vector<NodePair> unseen;
        std::vector<Eigen::Index> unseen_rows;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& p = pairs[i];
            if (p.source >= g_.num_nodes() || p.target >= g_.num_nodes()) {
                throw LookupError("pair (" + std::to_string(p.source) + ", " + std::to_string(p.target) +
                                  ") names an unknown node");
            }
            if (auto id = model_.pairs.find(p.source, p.target)) {
                out.row(static_cast<Eigen::Index>(i)) = known.row(*id);
            } else {
                unseen.push_back(p);
                unseen_rows.push_back(static_cast<Eigen::Index>(i));
            }
        }
        if (!unseen.empty()) {
            RowMatrix fresh = embed(model_.result.model, build_pair_inputs(g_, unseen, options_), batch_);
            for (std::size_t i = 0; i < unseen.size(); ++i) {
                out.row(unseen_rows[i]) = fresh.row(static_cast<Eigen::Index>(i));
            }
        }
        return out;
    }

private:
    Graph g_;
    PairModel model_;
    FeatureOptions options_;
    std::size_t batch_;
};

class NodeConcatFeaturizer final : public PairFeaturizer {
public:
    explicit NodeConcatFeaturizer(EmbeddingTable nodes) : nodes_(std::move(nodes)) {}

    RowMatrix featurize(std::span<const NodePair> pairs) const override {
        RowMatrix out(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(2 * nodes_.dim()));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            out.row(static_cast<Eigen::Index>(i)) = concat_edge_embedding(nodes_, pairs[i].source, pairs[i].target);
        }
        return out;
    }

private:
    EmbeddingTable nodes_;
};

}  // namespace

EmbedderFactory paire_embedder(TrainConfig cfg, FeatureOptions options) {
    return [cfg, options](const Graph& visible, std::uint64_t seed) -> std::unique_ptr<PairFeaturizer> {
        TrainConfig run = cfg;
        run.seed = seed;
        PairModel model = train_pair_model(visible, run, options);
        return std::make_unique<PairModelFeaturizer>(visible, std::move(model), options, run.batch_size);
    };
}

EmbedderFactory node_ablation_embedder(TrainConfig cfg, FeatureOptions options) {
    return [cfg, options](const Graph& visible, std::uint64_t seed) -> std::unique_ptr<PairFeaturizer> {
        TrainConfig run = cfg;
        run.seed = seed;
        TrainResult result = train_node_model(visible, run, options);
        return std::make_unique<NodeConcatFeaturizer>(EmbeddingTable::for_nodes(std::move(result.embeddings)));
    };
}

EmbedderFactory fixed_node_embedder(EmbeddingTable nodes) {
    if (nodes.kind() != EmbeddingKind::node) {
        throw ContractError("fixed_node_embedder needs a node table");
    }
    auto shared = std::make_shared<const EmbeddingTable>(std::move(nodes));
    return [shared](const Graph& visible, std::uint64_t) -> std::unique_ptr<PairFeaturizer> {
        if (shared->size() != visible.num_nodes()) {
            throw ContractError("node table has " + std::to_string(shared->size()) + " rows for " +
                                std::to_string(visible.num_nodes()) + " nodes");
        }
        return std::make_unique<NodeConcatFeaturizer>(*shared);
    };
}

Vector concat_edge_embedding(const EmbeddingTable& nodes, NodeId u, NodeId v) {
    if (nodes.kind() != EmbeddingKind::node) {
        throw ContractError("concat_edge_embedding needs a node table");
    }
    const auto d = static_cast<Eigen::Index>(nodes.dim());
    Vector out(2 * d);
    out.head(d) = nodes.row(u);
    out.tail(d) = nodes.row(v);
    return out;
}

double MetricRuns::mean() const {
    if (values.empty()) {
        throw MetricError("metric " + name + " has no runs");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

const MetricRuns& EvalReport::metric(std::string_view name) const {
    for (const auto& m : metrics) {
        if (m.name == name) {
            return m;
        }
    }
    throw LookupError("report has no metric '" + std::string(name) + "'");
}

double EvalReport::mean(std::string_view name) const {
    return metric(name).mean();
}

namespace {

void check_protocol(const ProtocolConfig& cfg) {
    if (cfg.runs == 0) {
        throw ConfigError("protocol needs at least one run");
    }
}

MetricRuns& slot(EvalReport& report, const std::string& name) {
    for (auto& m : report.metrics) {
        if (m.name == name) {
            return m;
        }
    }
    report.metrics.push_back({name, {}});
    return report.metrics.back();
}

/// Probability of label 1 from a two-class logistic model.
std::vector<double> binary_scores(const RowMatrix& train_x, const std::vector<int>& train_y,
                                  const RowMatrix& test_x, const LogRegConfig& cfg) {
    LogRegOutput out = logreg_ovr(train_x, train_y, test_x, cfg);
    const auto it = std::find(out.classes.begin(), out.classes.end(), 1);
    if (it == out.classes.end()) {
        throw ClassifierError("no positive class in training data");
    }
    const auto col = static_cast<Eigen::Index>(it - out.classes.begin());
    std::vector<double> scores(static_cast<std::size_t>(out.scores.rows()));
    for (Eigen::Index i = 0; i < out.scores.rows(); ++i) {
        scores[static_cast<std::size_t>(i)] = out.scores(i, col);
    }
    return scores;
}

double score_pairs(const PairFeaturizer& f, const LabeledPairs& train, const LabeledPairs& test,
                   const LogRegConfig& cfg) {
    const std::vector<double> scores = binary_scores(f.featurize(train.pairs), train.labels,
                                                     f.featurize(test.pairs), cfg);
    return roc_auc(scores, test.labels);
}

LabeledPairs labeled(const std::vector<NodePair>& pos, const std::vector<NodePair>& neg) {
    LabeledPairs out;
    out.pairs = pos;
    out.pairs.insert(out.pairs.end(), neg.begin(), neg.end());
    out.labels.assign(pos.size(), 1);
    out.labels.resize(pos.size() + neg.size(), 0);
    return out;
}

std::string ratio_suffix(double r) {
    std::ostringstream s;
    s << r;
    return "@" + s.str();
}

}  // namespace

EvalReport run_link_prediction(const Graph& g, const EmbedderFactory& embedder, const ProtocolConfig& cfg) {
    check_protocol(cfg);
    EvalReport report{Task::link_prediction, cfg.dataset, {}, {}};
    for (std::size_t i = 0; i < cfg.runs; ++i) {
        const std::uint64_t seed = cfg.base_seed + i;
        LinkSplit split = make_link_split(g, cfg.holdout_fraction, seed);
        auto featurizer = embedder(split.residual_graph, seed);
        const double auc = score_pairs(*featurizer, labeled(split.train_pos, split.train_neg),
                                       labeled(split.test_pos, split.test_neg), cfg.logreg);
        report.seeds.push_back(seed);
        slot(report, "auc").values.push_back(auc);
    }
    return report;
}

EvalReport run_pairwise(const Graph& g, const EmbedderFactory& embedder, const ProtocolConfig& cfg) {
    check_protocol(cfg);
    EvalReport report{Task::pairwise, cfg.dataset, {}, {}};
    for (std::size_t i = 0; i < cfg.runs; ++i) {
        const std::uint64_t seed = cfg.base_seed + i;
        PairwiseDataset data = make_pairwise_dataset(g, seed, cfg.pairwise);
        auto featurizer = embedder(g, seed);
        report.seeds.push_back(seed);
        slot(report, "auc").values.push_back(score_pairs(*featurizer, data.train, data.test, cfg.logreg));
    }
    return report;
}

namespace {

RowMatrix gather_rows(const RowMatrix& x, std::span<const std::size_t> rows) {
    RowMatrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

Eigen::MatrixXi indicators(const Labels& labels, std::span<const std::size_t> rows) {
    Eigen::MatrixXi out = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(labels.num_classes));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int c : labels.sets[rows[i]]) {
            out(static_cast<Eigen::Index>(i), c) = 1;
        }
    }
    return out;
}

void check_node_table(const Graph& g, const EmbeddingTable& nodes) {
    if (nodes.kind() != EmbeddingKind::node) {
        throw TaskError("node task needs node embeddings; translate the pair table first");
    }
    if (nodes.size() != g.num_nodes()) {
        throw TaskError("node table has " + std::to_string(nodes.size()) + " rows for " +
                        std::to_string(g.num_nodes()) + " nodes");
    }
    if (!g.has_labels()) {
        throw TaskError("graph has no labels");
    }
}

}  // namespace

EvalReport run_node_classification(const Graph& g, const EmbeddingTable& nodes, const ProtocolConfig& cfg) {
    check_protocol(cfg);
    check_node_table(g, nodes);
    const Labels& labels = g.labels();
    const std::size_t n = g.num_nodes();
    EvalReport report{Task::node_classification, cfg.dataset, {}, {}};
    for (double r : cfg.train_ratios) {
        if (!(r > 0.0 && r < 1.0)) {
            throw ConfigError("train ratio must lie in (0, 1)");
        }
    }
    for (std::size_t i = 0; i < cfg.runs; ++i) {
        const std::uint64_t seed = cfg.base_seed + i;
        report.seeds.push_back(seed);
        for (double r : cfg.train_ratios) {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::mt19937_64 rng(seed);
            std::shuffle(order.begin(), order.end(), rng);
            const auto n_train = static_cast<std::size_t>(std::llround(r * static_cast<double>(n)));
            if (n_train == 0 || n_train >= n) {
                throw TaskError("train ratio leaves an empty split");
            }
            std::span<const std::size_t> train_rows(order.data(), n_train);
            std::span<const std::size_t> test_rows(order.data() + n_train, n - n_train);
            const RowMatrix train_x = gather_rows(nodes.values(), train_rows);
            const RowMatrix test_x = gather_rows(nodes.values(), test_rows);

            F1Scores f1;
            if (labels.multi_label) {
                OneVsRestLogReg model(cfg.logreg);
                model.fit_multilabel(train_x, indicators(labels, train_rows));
                f1 = classification_metrics(model.predict_multilabel(test_x), indicators(labels, test_rows));
            } else {
                std::vector<int> train_y, test_y;
                for (auto u : train_rows) train_y.push_back(labels.single(static_cast<NodeId>(u)));
                for (auto u : test_rows) test_y.push_back(labels.single(static_cast<NodeId>(u)));
                LogRegOutput out = logreg_ovr(train_x, train_y, test_x, cfg.logreg);
                f1 = classification_metrics(out.predictions, test_y);
            }
            const std::string suffix = ratio_suffix(r);
            slot(report, "micro_f1" + suffix).values.push_back(f1.micro);
            slot(report, "macro_f1" + suffix).values.push_back(f1.macro);
        }
    }
    return report;
}

EvalReport run_clustering(const Graph& g, const EmbeddingTable& nodes, const ProtocolConfig& cfg) {
    check_protocol(cfg);
    check_node_table(g, nodes);
    const Labels& labels = g.labels();
    if (labels.multi_label) {
        throw TaskError("clustering needs single-label classes");
    }
    const std::vector<int> truth = labels.single_classes();
    RowMatrix x = nodes.values();
    if (cfg.normalize_for_clustering) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const double norm = x.row(i).norm();
            if (norm > 0.0) x.row(i) /= norm;
        }
    }
    EvalReport report{Task::clustering, cfg.dataset, {}, {}};
    for (std::size_t i = 0; i < cfg.runs; ++i) {
        const std::uint64_t seed = cfg.base_seed + i;
        KMeansResult km = kmeans_cluster(x, labels.num_classes, seed, cfg.kmeans);
        ClusteringScores s = clustering_metrics(km.assignments, truth);
        report.seeds.push_back(seed);
        slot(report, "nmi").values.push_back(s.nmi);
        slot(report, "acc").values.push_back(s.acc);
    }
    return report;
}

EvalReport run_task(Task task, const Graph& g, const EmbedderFactory* embedder, const EmbeddingTable* nodes,
                    const ProtocolConfig& cfg) {
    switch (task) {
        case Task::link_prediction:
        case Task::pairwise:
            if (embedder == nullptr || !*embedder) {
                throw TaskError(to_string(task) + " needs an embedder");
            }
            return task == Task::link_prediction ? run_link_prediction(g, *embedder, cfg)
                                                 : run_pairwise(g, *embedder, cfg);
        case Task::node_classification:
        case Task::clustering:
            if (nodes == nullptr) {
                throw TaskError(to_string(task) + " needs node embeddings");
            }
            return task == Task::node_classification ? run_node_classification(g, *nodes, cfg)
                                                     : run_clustering(g, *nodes, cfg);
    }
    throw TaskError("unknown task");
}

}  // namespace paire
