#include "paire/error.hpp"
#include "paire/report.hpp"
#include "paire/tasks.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace paire;
using namespace paire::testing;

namespace {

TrainConfig quick_train() {
    TrainConfig cfg;
    cfg.embedding_dim = 8;
    cfg.hidden_width = 16;
    cfg.batch_size = 256;
    cfg.epochs = 2;
    return cfg;
}

ProtocolConfig quick_protocol(std::size_t runs = 2) {
    ProtocolConfig p;
    p.runs = runs;
    p.base_seed = 5;
    p.dataset = "synthetic";
    p.logreg.max_iter = 200;
    p.kmeans.restarts = 3;
    return p;
}

Graph small_graph() {
    SyntheticSpec spec;
    spec.nodes = 120;
    spec.edges = 360;
    spec.features = 30;
    return synthetic_graph(spec);
}

void expect_unit_range(const EvalReport& r) {
    for (const auto& m : r.metrics) {
        EXPECT_EQ(m.values.size(), r.seeds.size()) << m.name;
        for (double v : m.values) {
            EXPECT_GE(v, 0.0) << m.name;
            EXPECT_LE(v, 1.0) << m.name;
        }
    }
}

}  // namespace

TEST(TaskNames, RoundTrip) {
    for (Task t : {Task::link_prediction, Task::pairwise, Task::node_classification, Task::clustering}) {
        EXPECT_EQ(parse_task(to_string(t)), t);
    }
    EXPECT_FALSE(parse_task("ranking").has_value());
}

TEST(ConcatEdgeEmbedding, OrderedConcatenation) {
    RowMatrix v(2, 2);
    v << 1, 2, 3, 4;
    const EmbeddingTable t = EmbeddingTable::for_nodes(v);
    EXPECT_EQ(concat_edge_embedding(t, 0, 1), (Vector(4) << 1, 2, 3, 4).finished());
    EXPECT_EQ(concat_edge_embedding(t, 1, 0), (Vector(4) << 3, 4, 1, 2).finished());
    EXPECT_THROW(concat_edge_embedding(t, 0, 2), LookupError);
}

TEST(PaireEmbedder, KnownPairsUseTrainedRowsAndUnseenPairsAreForwarded) {
    Graph g = small_graph();
    TrainConfig cfg = quick_train();
    cfg.seed = 3;
    const auto featurizer = paire_embedder(cfg)(g, 3);
    const PairModel model = train_pair_model(g, cfg);

    const NodePair known = model.pairs.at(7);
    NodePair unseen{0, 1};
    for (NodeId v = 1; g.adjacent(0, v); ++v) unseen.target = v + 1;
    ASSERT_FALSE(model.pairs.find(unseen.source, unseen.target).has_value());

    const std::vector<NodePair> query{known, unseen};
    const RowMatrix f = featurizer->featurize(query);
    EXPECT_EQ(f.row(0), model.result.embeddings.row(7));
    const RowMatrix fresh = embed(model.result.model, build_pair_inputs(g, std::vector<NodePair>{unseen}, {}));
    EXPECT_EQ(f.row(1), fresh.row(0));
}

TEST(RunTask, LinkPrediction) {
    Graph g = small_graph();
    const EvalReport r = run_link_prediction(g, paire_embedder(quick_train()), quick_protocol());
    EXPECT_EQ(r.task, Task::link_prediction);
    EXPECT_EQ(r.seeds, (std::vector<std::uint64_t>{5, 6}));
    ASSERT_EQ(r.metrics.size(), 1u);
    EXPECT_EQ(r.metrics[0].name, "auc");
    expect_unit_range(r);
}

TEST(RunTask, PairwiseWithNodeAblation) {
    Graph g = small_graph();
    ProtocolConfig p = quick_protocol();
    p.pairwise.size = 400;
    const EvalReport r = run_pairwise(g, node_ablation_embedder(quick_train()), p);
    EXPECT_EQ(r.metric("auc").values.size(), 2u);
    expect_unit_range(r);
}

TEST(RunTask, NodeClassificationRatios) {
    Graph g = small_graph();
    TrainConfig cfg = quick_train();
    cfg.epochs = 40;
    cfg.learning_rate = 5e-3;
    const PairModel m = train_pair_model(g, cfg);
    const EmbeddingTable nodes = translate(m.pairs, m.result.embeddings, TranslatorMode::sum);
    const EvalReport r = run_node_classification(g, nodes, quick_protocol(3));
    for (const char* name : {"micro_f1@0.3", "macro_f1@0.3", "micro_f1@0.5", "macro_f1@0.5", "micro_f1@0.7",
                             "macro_f1@0.7"}) {
        EXPECT_EQ(r.metric(name).values.size(), 3u) << name;
    }
    expect_unit_range(r);
    // Features are strongly class-specific, so the embeddings carry the labels.
    EXPECT_GT(r.mean("micro_f1@0.5"), 0.8);
}

TEST(RunTask, ClusteringUsesClassCount) {
    Graph g = small_graph();
    const PairModel m = train_pair_model(g, quick_train());
    const EmbeddingTable nodes = translate(m.pairs, m.result.embeddings, TranslatorMode::sum);
    const EvalReport r = run_task(Task::clustering, g, nullptr, &nodes, quick_protocol());
    EXPECT_EQ(r.metric("nmi").values.size(), 2u);
    EXPECT_EQ(r.metric("acc").values.size(), 2u);
    expect_unit_range(r);
    // ACC under the optimal matching is at least the largest class share.
    EXPECT_GE(r.mean("acc"), 1.0 / 3.0 - 1e-12);
}

TEST(RunTask, MissingPrerequisitesAreTaskErrors) {
    Graph g = small_graph();
    EXPECT_THROW(run_task(Task::link_prediction, g, nullptr, nullptr, quick_protocol()), TaskError);
    EXPECT_THROW(run_task(Task::clustering, g, nullptr, nullptr, quick_protocol()), TaskError);
    std::vector<std::vector<double>> x(3, {1.0});
    Graph unlabeled = make_graph(3, {{0, 1}}, x);
    const EmbeddingTable nodes = EmbeddingTable::for_nodes(RowMatrix::Ones(3, 2));
    EXPECT_THROW(run_node_classification(unlabeled, nodes, quick_protocol()), TaskError);
    const EmbeddingTable pairs = EmbeddingTable::for_pairs({{0, 1}}, RowMatrix::Ones(1, 2));
    EXPECT_THROW(run_clustering(g, pairs, quick_protocol()), TaskError);
}

TEST(Report, RecordsAndMeans) {
    EvalReport r{Task::clustering, "toy", {0, 1}, {{"nmi", {0.25, 0.75}}, {"acc", {0.5, 1.0}}}};
    EXPECT_DOUBLE_EQ(r.mean("nmi"), 0.5);
    EXPECT_THROW(r.metric("auc"), LookupError);
    std::ostringstream s;
    write_records(s, r);
    EXPECT_EQ(s.str(),
              "task=cluster dataset=toy seed=0 metric=nmi value=0.25\n"
              "task=cluster dataset=toy seed=1 metric=nmi value=0.75\n"
              "task=cluster dataset=toy seed=mean metric=nmi value=0.5\n"
              "task=cluster dataset=toy seed=0 metric=acc value=0.5\n"
              "task=cluster dataset=toy seed=1 metric=acc value=1\n"
              "task=cluster dataset=toy seed=mean metric=acc value=0.75\n");
    std::ostringstream table;
    write_table(table, r);
    EXPECT_NE(table.str().find("0.5000"), std::string::npos);
}
