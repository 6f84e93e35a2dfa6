#include "paire/embedding.hpp"
#include "paire/error.hpp"
#include "paire/translate.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace paire;
using namespace paire::testing;

namespace {

RowMatrix random_rows(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    RowMatrix x(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = normal(rng) * std::pow(10.0, static_cast<double>(j % 7) - 3);
    return x;
}

/// Per-node reduction by explicit loops over every pair.
RowMatrix brute_translate(const PairSet& ps, const RowMatrix& pe, TranslatorMode mode) {
    RowMatrix out = RowMatrix::Zero(static_cast<Eigen::Index>(ps.num_nodes()), pe.cols());
    for (NodeId u = 0; u < ps.num_nodes(); ++u) {
        std::vector<PairId> mine;
        for (PairId p = 0; p < ps.size(); ++p)
            if (ps.at(p).source == u) mine.push_back(p);
        if (mine.empty()) continue;
        for (Eigen::Index j = 0; j < pe.cols(); ++j) {
            double acc = pe(mine[0], j);
            for (std::size_t k = 1; k < mine.size(); ++k) {
                const double v = pe(mine[k], j);
                switch (mode) {
                    case TranslatorMode::sum:
                    case TranslatorMode::mean: acc += v; break;
                    case TranslatorMode::max: acc = std::max(acc, v); break;
                    case TranslatorMode::min: acc = std::min(acc, v); break;
                }
            }
            if (mode == TranslatorMode::mean) acc /= static_cast<double>(mine.size());
            out(u, j) = acc;
        }
    }
    return out;
}

}  // namespace

TEST(EmbeddingFile, PairRoundTripIsExact) {
    std::vector<Pair> keys{{0, 1}, {1, 0}, {2, 5}};
    EmbeddingTable t = EmbeddingTable::for_pairs(keys, random_rows(3, 9, 1));
    std::stringstream s;
    write_embeddings(s, t);
    EmbeddingTable back = read_embeddings(s);
    EXPECT_EQ(back, t);
    std::stringstream again;
    write_embeddings(again, back);
    std::stringstream first;
    write_embeddings(first, t);
    EXPECT_EQ(again.str(), first.str());
    EXPECT_EQ(back.find_pair(2, 5), std::size_t{2});
    EXPECT_FALSE(back.find_pair(5, 2).has_value());
}

TEST(EmbeddingFile, NodeHeaderAndRows) {
    RowMatrix v(2, 2);
    v << 0.5, -1.0, 1e-300, 3.0;
    std::stringstream s;
    write_embeddings(s, EmbeddingTable::for_nodes(v));
    EXPECT_EQ(s.str(), "NODE 2 2\n0 0.5 -1\n1 1e-300 3\n");
}

TEST(EmbeddingFile, FileRoundTripAndNoTempLeft) {
    TempDir dir("emb");
    EmbeddingTable t = EmbeddingTable::for_nodes(random_rows(5, 3, 2));
    write_embedding_file(dir / "n.txt", t);
    EXPECT_EQ(read_embedding_file(dir / "n.txt"), t);
    EXPECT_FALSE(std::filesystem::exists(dir / "n.txt.tmp"));
    EXPECT_THROW(read_embedding_file(dir / "missing.txt"), LoadError);
}

TEST(EmbeddingFile, MalformedInputNamesLine) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::stringstream s(text);
        try {
            read_embeddings(s);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_EQ(line_of("EDGE 1 1\n0 1\n"), 1u);
    EXPECT_EQ(line_of("PAIR 2 2\n0 1 0.1 0.2\n1 0 0.3\n"), 3u);
    EXPECT_EQ(line_of("NODE 2 1\n0 0.1\n1 abc\n"), 3u);
    EXPECT_EQ(line_of("NODE 2 1\n0 0.1\n"), 3u);
    EXPECT_EQ(line_of("NODE 1 1\n1 0.1\n"), 2u);
    EXPECT_EQ(line_of("NODE 1 1\n0 0.1\n0 0.2\n"), 3u);
    EXPECT_EQ(line_of("PAIR 2 1\n0 1 0.1\n0 1 0.2\n"), 3u);
}

TEST(Translate, SingletonEqualsPairRowForEveryMode) {
    std::vector<Pair> keys{{2, 0}};
    RowMatrix v(1, 3);
    v << 1.5, -2.0, 0.25;
    const EmbeddingTable pe = EmbeddingTable::for_pairs(keys, v);
    const PairSet ps = pe.pair_set(4);
    for (auto mode : {TranslatorMode::sum, TranslatorMode::mean, TranslatorMode::max, TranslatorMode::min}) {
        const EmbeddingTable ne = translate(ps, pe, mode);
        EXPECT_EQ(ne.kind(), EmbeddingKind::node);
        ASSERT_EQ(ne.size(), 4u);
        EXPECT_EQ(ne.row(2), v.row(0).transpose());
        EXPECT_TRUE(ne.row(0).isZero(0.0));
        EXPECT_TRUE(ne.row(3).isZero(0.0));
    }
}

TEST(Translate, ElementwiseReductions) {
    std::vector<Pair> keys{{0, 1}, {0, 2}};
    RowMatrix v(2, 2);
    v << 1, 2, 3, 4;
    const EmbeddingTable pe = EmbeddingTable::for_pairs(keys, v);
    const PairSet ps = pe.pair_set(3);
    auto row0 = [&](TranslatorMode m) { return translate(ps, pe, m).row(0); };
    EXPECT_EQ(row0(TranslatorMode::sum), (Vector(2) << 4, 6).finished());
    EXPECT_EQ(row0(TranslatorMode::mean), (Vector(2) << 2, 3).finished());
    EXPECT_EQ(row0(TranslatorMode::max), (Vector(2) << 3, 4).finished());
    EXPECT_EQ(row0(TranslatorMode::min), (Vector(2) << 1, 2).finished());
}

TEST(Translate, MatchesBruteForceOnRandomGraph) {
    Graph g = random_graph(10, 0.35, 2, 6);
    PairSet ps = PairSet::build(g, true);
    const RowMatrix pe = random_rows(static_cast<Eigen::Index>(ps.size()), 5, 3);
    for (auto mode : {TranslatorMode::sum, TranslatorMode::mean, TranslatorMode::max, TranslatorMode::min}) {
        EXPECT_EQ(translate(ps, pe, mode).values(), brute_translate(ps, pe, mode)) << to_string(mode);
    }
}

TEST(Translate, PermutationInvariant) {
    Graph g = synthetic_graph({});
    PairSet ps = PairSet::build(g, true);
    const RowMatrix pe = random_rows(static_cast<Eigen::Index>(ps.size()), 6, 4);
    std::vector<Pair> keys = ps.pairs();
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
    std::vector<Pair> shuffled_keys;
    RowMatrix shuffled(pe.rows(), pe.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        shuffled_keys.push_back(keys[order[i]]);
        shuffled.row(static_cast<Eigen::Index>(i)) = pe.row(static_cast<Eigen::Index>(order[i]));
    }
    const EmbeddingTable table = EmbeddingTable::for_pairs(shuffled_keys, shuffled);
    const PairSet shuffled_ps = table.pair_set(g.num_nodes());
    for (auto mode : {TranslatorMode::sum, TranslatorMode::mean, TranslatorMode::max, TranslatorMode::min}) {
        const RowMatrix a = translate(ps, pe, mode).values();
        const RowMatrix b = translate(shuffled_ps, table, mode).values();
        EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-9) << to_string(mode);
    }
}

TEST(Translate, NonIsolatedNodesGetReductions) {
    Graph g = random_graph(12, 0.3, 2, 8);
    PairSet ps = PairSet::build(g, true);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        EXPECT_EQ(ps.out_pairs(u).size(), g.degree(u));
    }
}

TEST(Translate, ContractErrors) {
    std::vector<Pair> keys{{0, 1}};
    const EmbeddingTable pe = EmbeddingTable::for_pairs(keys, RowMatrix::Ones(1, 2));
    const PairSet bigger = PairSet::from_pairs(2, {{0, 1}, {1, 0}});
    EXPECT_THROW(translate(bigger, pe, TranslatorMode::sum), ContractError);
    EXPECT_THROW(translate(bigger, RowMatrix::Ones(1, 2), TranslatorMode::sum), ContractError);
}

TEST(Translate, ParseNames) {
    EXPECT_EQ(parse_translator("max"), TranslatorMode::max);
    EXPECT_FALSE(parse_translator("median").has_value());
    EXPECT_EQ(to_string(TranslatorMode::sum), "sum");
}
