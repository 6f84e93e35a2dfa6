#pragma once

#include "paire/types.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paire {

/// Node feature rows, stored sparse. Entries are non-negative once the matrix
/// has passed through `FeatureMatrix::from_rows` or `make_non_negative`.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    explicit FeatureMatrix(SparseRows rows);

    static FeatureMatrix from_dense(const RowMatrix& dense);

    std::size_t num_rows() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(rows_.cols()); }
    const SparseRows& rows() const noexcept { return rows_; }
    Vector row(NodeId u) const;

    bool has_negative() const;

private:
    SparseRows rows_;
};

/// Per-column min-max rescale to [0, 1] when any entry is negative; identity
/// otherwise. Constant columns map to 0.
FeatureMatrix make_non_negative(const FeatureMatrix& fm);

/// Node class memberships. Single-label graphs hold exactly one class per node.
struct Labels {
    std::size_t num_classes = 0;
    std::vector<std::string> names;
    std::vector<std::vector<int>> sets;
    bool multi_label = false;

    std::size_t size() const noexcept { return sets.size(); }
    /// Class of node `u` in a single-label graph.
    int single(NodeId u) const;
    std::vector<int> single_classes() const;

    static Labels from_classes(std::vector<int> classes, std::vector<std::string> names = {});
};

/// Attributed graph with dense node ids 0..N-1.
///
/// Edges are stored once each. For an undirected graph the orientation of an
/// edge is the one first seen at load time and (u,v)/(v,u) count as the same
/// edge. Self-loops and duplicates are rejected by the constructor; the loader
/// drops them before construction.
class Graph {
public:
    Graph(std::size_t num_nodes, std::vector<NodePair> edges,
          std::shared_ptr<const FeatureMatrix> features,
          std::optional<Labels> labels = std::nullopt, bool directed = false);

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<NodePair>& edges() const noexcept { return edges_; }
    bool directed() const noexcept { return directed_; }

    const FeatureMatrix& features() const noexcept { return *features_; }
    const std::shared_ptr<const FeatureMatrix>& features_ptr() const noexcept { return features_; }

    bool has_labels() const noexcept { return labels_.has_value(); }
    const Labels& labels() const;
    const std::optional<Labels>& maybe_labels() const noexcept { return labels_; }

    /// 1-hop neighbourhood of `u` under the symmetrized adjacency, sorted.
    std::span<const NodeId> neighbors(NodeId u) const;
    std::size_t degree(NodeId u) const { return neighbors(u).size(); }

    /// True when u and v are adjacent in either direction.
    bool adjacent(NodeId u, NodeId v) const;

    /// Same nodes, features and labels over a different edge list.
    Graph with_edges(std::vector<NodePair> edges) const;

    std::size_t count_components() const;

private:
    std::size_t num_nodes_;
    std::vector<NodePair> edges_;
    std::shared_ptr<const FeatureMatrix> features_;
    std::optional<Labels> labels_;
    bool directed_;
    std::vector<std::size_t> adj_offsets_;
    std::vector<NodeId> adj_;
};

/// Neighbour set of `u` (free-function form of `Graph::neighbors`).
std::vector<NodeId> neighbors(const Graph& g, NodeId u);

struct LoadOptions {
    bool directed = false;
    /// Drop cites rows naming a key missing from the content file instead of
    /// failing. Off by default; the raw Citeseer release needs it.
    bool skip_unknown_edges = false;
};

/// Load a `.content` / `.cites` pair of tab-separated files.
///
/// Content rows are `key <F feature values> label`; cites rows are two node
/// keys. Node ids follow content-file order, class ids follow the sorted order
/// of the distinct label strings.
Graph load_graph(const std::filesystem::path& content_path,
                 const std::filesystem::path& cites_path,
                 const LoadOptions& options = {});

}  // namespace paire
