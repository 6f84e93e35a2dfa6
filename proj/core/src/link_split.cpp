#include "paire/link_split.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace paire {

namespace {

NodePair unordered(NodePair p) {
    return {std::min(p.source, p.target), std::max(p.source, p.target)};
}

class MutableAdjacency {
public:
    explicit MutableAdjacency(const Graph& g) : lists_(g.num_nodes()), seen_(g.num_nodes(), 0) {
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
            auto n = g.neighbors(u);
            lists_[u].assign(n.begin(), n.end());
        }
    }

    void remove(NodeId u, NodeId v) {
        std::erase(lists_[u], v);
        std::erase(lists_[v], u);
    }

    void add(NodeId u, NodeId v) {
        lists_[u].push_back(v);
        lists_[v].push_back(u);
    }

    bool reachable(NodeId from, NodeId to) {
        ++epoch_;
        if (epoch_ == 0) {
            std::fill(seen_.begin(), seen_.end(), 0);
            epoch_ = 1;
        }
        stack_.clear();
        stack_.push_back(from);
        seen_[from] = epoch_;
        while (!stack_.empty()) {
            const NodeId u = stack_.back();
            stack_.pop_back();
            for (NodeId w : lists_[u]) {
                if (w == to) {
                    return true;
                }
                if (seen_[w] != epoch_) {
                    seen_[w] = epoch_;
                    stack_.push_back(w);
                }
            }
        }
        return false;
    }

private:
    std::vector<std::vector<NodeId>> lists_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t epoch_ = 0;
    std::vector<NodeId> stack_;
};

}  // namespace

std::vector<NodePair> sample_non_edges(const Graph& reference, std::size_t count, std::uint64_t seed) {
    const std::size_t n = reference.num_nodes();
    const std::size_t possible = n < 2 ? 0 : n * (n - 1) / 2;
    const std::size_t existing = reference.num_edges();
    if (possible < existing + count) {
        throw SplitError("not enough non-edges to sample " + std::to_string(count) + " negatives", 0.0);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    std::set<NodePair> taken;
    std::vector<NodePair> out;
    out.reserve(count);
    while (out.size() < count) {
        const NodePair p{pick(rng), pick(rng)};
        if (p.source == p.target || reference.adjacent(p.source, p.target)) {
            continue;
        }
        if (taken.insert(unordered(p)).second) {
            out.push_back(p);
        }
    }
    return out;
}

LinkSplit make_link_split(const Graph& g, double holdout_fraction, std::uint64_t seed) {
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
        throw ConfigError("holdout fraction must lie in (0, 1)");
    }
    const std::size_t total = g.num_edges();
    const auto target = static_cast<std::size_t>(
        std::ceil(holdout_fraction * static_cast<double>(total) - 1e-9));
    if (total == 0 || target == 0) {
        throw SplitError("graph has no edges to hold out", 0.0);
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    MutableAdjacency adj(g);
    std::vector<char> removed(total, 0);
    std::size_t count = 0;
    for (std::size_t idx : order) {
        if (count == target) {
            break;
        }
        const NodePair e = g.edges()[idx];
        adj.remove(e.source, e.target);
        if (adj.reachable(e.source, e.target)) {
            removed[idx] = 1;
            ++count;
        } else {
            adj.add(e.source, e.target);
        }
    }
    if (count < target) {
        const double achievable = static_cast<double>(count) / static_cast<double>(total);
        throw SplitError("only " + std::to_string(count) + " of " + std::to_string(target) +
                             " edges can be removed without disconnecting the graph (achievable fraction " +
                             std::to_string(achievable) + ")",
                         achievable);
    }

    std::vector<NodePair> kept;
    std::vector<NodePair> held;
    kept.reserve(total - count);
    held.reserve(count);
    for (std::size_t i = 0; i < total; ++i) {
        (removed[i] ? held : kept).push_back(g.edges()[i]);
    }

    LinkSplit split{g.with_edges(kept), kept, {}, held, {}, seed};
    split.train_neg = sample_non_edges(split.residual_graph, split.train_pos.size(), seed ^ 0x5bd1e995ULL);
    split.test_neg = sample_non_edges(g, split.test_pos.size(), seed ^ 0x1b873593ULL);
    return split;
}

PairwiseDataset make_pairwise_dataset(const Graph& g, std::uint64_t seed, const PairwiseOptions& options) {
    const Labels& labels = g.labels();
    if (labels.multi_label) {
        throw TaskError("pairwise classification needs single-label classes");
    }
    if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie in (0, 1)");
    }
    const std::vector<int> cls = labels.single_classes();
    const std::size_t n = g.num_nodes();

    std::vector<std::size_t> class_size(labels.num_classes, 0);
    for (int c : cls) ++class_size[static_cast<std::size_t>(c)];
    std::size_t same_pairs = 0;
    std::size_t total_pairs = n * (n - 1) / 2;
    for (std::size_t s : class_size) same_pairs += s * (s - 1) / 2;
    const std::size_t diff_pairs = total_pairs - same_pairs;
    if (same_pairs == 0 || diff_pairs == 0) {
        throw TaskError("cannot balance pairwise dataset: " + std::to_string(same_pairs) +
                        " same-class and " + std::to_string(diff_pairs) + " different-class pairs");
    }

    std::size_t size = options.size != 0 ? options.size : std::min<std::size_t>(4 * g.num_edges(), 20000);
    size -= size % 2;
    const std::size_t half = size / 2;
    if (half == 0 || half > same_pairs || half > diff_pairs) {
        throw TaskError("cannot draw " + std::to_string(half) + " pairs of each kind");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    std::set<NodePair> taken;
    LabeledPairs all;
    std::size_t pos = 0;
    std::size_t neg = 0;
    while (pos < half || neg < half) {
        const NodePair p{pick(rng), pick(rng)};
        if (p.source == p.target) {
            continue;
        }
        const bool same = cls[p.source] == cls[p.target];
        if ((same && pos == half) || (!same && neg == half)) {
            continue;
        }
        if (!taken.insert(unordered(p)).second) {
            continue;
        }
        all.pairs.push_back(p);
        all.labels.push_back(same ? 1 : 0);
        (same ? pos : neg) += 1;
    }

    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(options.train_fraction * static_cast<double>(size)));
    PairwiseDataset out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        LabeledPairs& dst = i < n_train ? out.train : out.test;
        dst.pairs.push_back(all.pairs[order[i]]);
        dst.labels.push_back(all.labels[order[i]]);
    }
    return out;
}

}  // namespace paire
