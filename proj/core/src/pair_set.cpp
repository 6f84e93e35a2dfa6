#include "paire/pair_set.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <set>

namespace paire {

PairSet PairSet::build(const Graph& g, bool symmetrize) {
    std::vector<Pair> pairs;
    if (!symmetrize) {
        pairs = g.edges();
        return PairSet(g.num_nodes(), std::move(pairs));
    }
    pairs.reserve(2 * g.num_edges());
    std::set<NodePair> seen;
    for (const auto& e : g.edges()) {
        NodePair key{std::min(e.source, e.target), std::max(e.source, e.target)};
        if (!seen.insert(key).second) {
            continue;
        }
        pairs.push_back(e);
        pairs.push_back(e.reversed());
    }
    return PairSet(g.num_nodes(), std::move(pairs));
}

PairSet PairSet::from_pairs(std::size_t num_nodes, std::vector<Pair> pairs) {
    std::set<NodePair> seen;
    for (const auto& p : pairs) {
        if (p.source >= num_nodes || p.target >= num_nodes) {
            throw ContractError("pair endpoint out of range");
        }
        if (p.source == p.target) {
            throw ContractError("pair endpoints must differ");
        }
        if (!seen.insert(p).second) {
            throw ContractError("duplicate pair (" + std::to_string(p.source) + ", " +
                                std::to_string(p.target) + ")");
        }
    }
    return PairSet(num_nodes, std::move(pairs));
}

PairSet::PairSet(std::size_t num_nodes, std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    out_offsets_.assign(num_nodes + 1, 0);
    inc_offsets_.assign(num_nodes + 1, 0);
    for (const auto& p : pairs_) {
        ++out_offsets_[p.source + 1];
        ++inc_offsets_[p.source + 1];
        ++inc_offsets_[p.target + 1];
    }
    for (std::size_t u = 0; u < num_nodes; ++u) {
        out_offsets_[u + 1] += out_offsets_[u];
        inc_offsets_[u + 1] += inc_offsets_[u];
    }
    out_.resize(out_offsets_.back());
    inc_.resize(inc_offsets_.back());
    std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> inc_fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
    // Ids are visited in ascending order, so every index list comes out sorted.
    for (PairId id = 0; id < pairs_.size(); ++id) {
        const auto& p = pairs_[id];
        out_[out_fill[p.source]++] = id;
        inc_[inc_fill[p.source]++] = id;
        inc_[inc_fill[p.target]++] = id;
    }
}

const Pair& PairSet::at(PairId p) const {
    if (p >= pairs_.size()) {
        throw LookupError("unknown pair id " + std::to_string(p));
    }
    return pairs_[p];
}

std::span<const PairId> PairSet::out_pairs(NodeId u) const {
    if (u >= num_nodes()) {
        throw LookupError("node " + std::to_string(u) + " out of range");
    }
    return {out_.data() + out_offsets_[u], out_.data() + out_offsets_[u + 1]};
}

std::span<const PairId> PairSet::incident_pairs(NodeId u) const {
    if (u >= num_nodes()) {
        throw LookupError("node " + std::to_string(u) + " out of range");
    }
    return {inc_.data() + inc_offsets_[u], inc_.data() + inc_offsets_[u + 1]};
}

std::optional<PairId> PairSet::find(NodeId source, NodeId target) const {
    if (source >= num_nodes() || target >= num_nodes()) {
        return std::nullopt;
    }
    for (PairId id : out_pairs(source)) {
        if (pairs_[id].target == target) {
            return id;
        }
    }
    return std::nullopt;
}

std::vector<PairId> PairSet::neighborhood(PairId p) const {
    const Pair& pair = at(p);
    auto a = incident_pairs(pair.source);
    auto b = incident_pairs(pair.target);
    std::vector<PairId> merged;
    merged.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
    // Drop every pair that touches both endpoints: p itself and its reverse.
    std::erase_if(merged, [&](PairId id) {
        const Pair& q = pairs_[id];
        const bool has_source = q.source == pair.source || q.target == pair.source;
        const bool has_target = q.source == pair.target || q.target == pair.target;
        return has_source && has_target;
    });
    return merged;
}

}  // namespace paire
