#pragma once

#include "paire/graph.hpp"
#include "paire/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace paire {

using Pair = NodePair;

/// The ordered pairs of a graph with stable ids and per-node indexes.
class PairSet {
public:
    /// Pairs of `g`. With `symmetrize`, each edge {u,v} yields (u,v) with id 2e
    /// and (v,u) with id 2e+1; otherwise pairs mirror the stored edges.
    static PairSet build(const Graph& g, bool symmetrize);

    /// Pair set over an explicit list of distinct ordered pairs.
    static PairSet from_pairs(std::size_t num_nodes, std::vector<Pair> pairs);

    std::size_t size() const noexcept { return pairs_.size(); }
    std::size_t num_nodes() const noexcept { return out_offsets_.size() - 1; }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    const Pair& at(PairId p) const;

    /// Ids of pairs with `u` as source, ascending.
    std::span<const PairId> out_pairs(NodeId u) const;
    /// Ids of pairs containing `u` at either end, ascending.
    std::span<const PairId> incident_pairs(NodeId u) const;

    std::optional<PairId> find(NodeId source, NodeId target) const;

    /// Pairs sharing exactly one node with pair `p`, ascending.
    std::vector<PairId> neighborhood(PairId p) const;

private:
    PairSet(std::size_t num_nodes, std::vector<Pair> pairs);

    std::vector<Pair> pairs_;
    std::vector<std::size_t> out_offsets_;
    std::vector<PairId> out_;
    std::vector<std::size_t> inc_offsets_;
    std::vector<PairId> inc_;
};

inline std::vector<PairId> pair_neighborhood(const PairSet& ps, PairId p) {
    return ps.neighborhood(p);
}

}  // namespace paire
