#include "paire/graph.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string_view>
#include <unordered_map>

namespace paire {

FeatureMatrix::FeatureMatrix(SparseRows rows) : rows_(std::move(rows)) {
    rows_.makeCompressed();
}

FeatureMatrix FeatureMatrix::from_dense(const RowMatrix& dense) {
    return FeatureMatrix(SparseRows(dense.sparseView()));
}

Vector FeatureMatrix::row(NodeId u) const {
    if (u >= num_rows()) {
        throw LookupError("feature row " + std::to_string(u) + " out of range");
    }
    return Vector(rows_.row(u).transpose());
}

bool FeatureMatrix::has_negative() const {
    const double* values = rows_.valuePtr();
    return std::any_of(values, values + rows_.nonZeros(), [](double v) { return v < 0.0; });
}

FeatureMatrix make_non_negative(const FeatureMatrix& fm) {
    if (!fm.has_negative()) {
        return fm;
    }
    RowMatrix dense = RowMatrix(fm.rows());
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
        const double lo = dense.col(c).minCoeff();
        const double hi = dense.col(c).maxCoeff();
        if (hi > lo) {
            dense.col(c) = (dense.col(c).array() - lo) / (hi - lo);
        } else {
            dense.col(c).setZero();
        }
    }
    return FeatureMatrix::from_dense(dense);
}

int Labels::single(NodeId u) const {
    if (multi_label) {
        throw TaskError("single-label class requested from a multi-label graph");
    }
    if (u >= sets.size() || sets[u].size() != 1) {
        throw LookupError("node " + std::to_string(u) + " has no single class label");
    }
    return sets[u].front();
}

std::vector<int> Labels::single_classes() const {
    std::vector<int> out(sets.size());
    for (std::size_t u = 0; u < sets.size(); ++u) {
        out[u] = single(static_cast<NodeId>(u));
    }
    return out;
}

Labels Labels::from_classes(std::vector<int> classes, std::vector<std::string> names) {
    Labels labels;
    int max_class = -1;
    labels.sets.reserve(classes.size());
    for (int c : classes) {
        if (c < 0) {
            throw ConfigError("negative class id");
        }
        max_class = std::max(max_class, c);
        labels.sets.push_back({c});
    }
    labels.num_classes = static_cast<std::size_t>(max_class + 1);
    if (names.empty()) {
        for (std::size_t c = 0; c < labels.num_classes; ++c) {
            names.push_back(std::to_string(c));
        }
    }
    labels.names = std::move(names);
    return labels;
}

Graph::Graph(std::size_t num_nodes, std::vector<NodePair> edges,
             std::shared_ptr<const FeatureMatrix> features, std::optional<Labels> labels,
             bool directed)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      directed_(directed) {
    if (!features_) {
        throw ContractError("graph requires a feature matrix");
    }
    if (features_->num_rows() != num_nodes_) {
        throw ContractError("feature matrix has " + std::to_string(features_->num_rows()) +
                            " rows for " + std::to_string(num_nodes_) + " nodes");
    }
    if (features_->dim() == 0) {
        throw ContractError("feature dimension must be positive");
    }
    if (labels_ && labels_->size() != num_nodes_) {
        throw ContractError("label count does not match node count");
    }

    std::set<NodePair> seen;
    for (const auto& e : edges_) {
        if (e.source >= num_nodes_ || e.target >= num_nodes_) {
            throw ContractError("edge endpoint out of range");
        }
        if (e.source == e.target) {
            throw ContractError("self-loop on node " + std::to_string(e.source));
        }
        NodePair key = directed_ ? e : NodePair{std::min(e.source, e.target), std::max(e.source, e.target)};
        if (!seen.insert(key).second) {
            throw ContractError("duplicate edge (" + std::to_string(e.source) + ", " +
                                std::to_string(e.target) + ")");
        }
    }

    // Symmetrized adjacency. A directed graph may hold both (u,v) and (v,u);
    // the neighbour lists are deduplicated after sorting.
    std::vector<std::vector<NodeId>> lists(num_nodes_);
    for (const auto& e : edges_) {
        lists[e.source].push_back(e.target);
        lists[e.target].push_back(e.source);
    }
    adj_offsets_.assign(num_nodes_ + 1, 0);
    for (std::size_t u = 0; u < num_nodes_; ++u) {
        auto& l = lists[u];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        adj_offsets_[u + 1] = adj_offsets_[u] + l.size();
    }
    adj_.reserve(adj_offsets_.back());
    for (const auto& l : lists) {
        adj_.insert(adj_.end(), l.begin(), l.end());
    }
}

const Labels& Graph::labels() const {
    if (!labels_) {
        throw TaskError("graph has no labels");
    }
    return *labels_;
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
    if (u >= num_nodes_) {
        throw LookupError("node " + std::to_string(u) + " out of range");
    }
    return {adj_.data() + adj_offsets_[u], adj_.data() + adj_offsets_[u + 1]};
}

bool Graph::adjacent(NodeId u, NodeId v) const {
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
}

Graph Graph::with_edges(std::vector<NodePair> edges) const {
    return Graph(num_nodes_, std::move(edges), features_, labels_, directed_);
}

std::size_t Graph::count_components() const {
    std::vector<char> seen(num_nodes_, 0);
    std::vector<NodeId> stack;
    std::size_t components = 0;
    for (NodeId s = 0; s < num_nodes_; ++s) {
        if (seen[s]) {
            continue;
        }
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
    }
    return components;
}

std::vector<NodeId> neighbors(const Graph& g, NodeId u) {
    auto n = g.neighbors(u);
    return {n.begin(), n.end()};
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        // Fields are tab-separated; runs of spaces are tolerated in cites files.
        std::size_t end = line.find_first_of("\t ", start);
        if (end == std::string_view::npos) {
            end = line.size();
        }
        if (end > start) {
            out.push_back(line.substr(start, end - start));
        }
        start = end + 1;
    }
    return out;
}

std::string_view trim_cr(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.remove_suffix(1);
    }
    return line;
}

}  // namespace

Graph load_graph(const std::filesystem::path& content_path,
                 const std::filesystem::path& cites_path, const LoadOptions& options) {
    std::ifstream content(content_path);
    if (!content) {
        throw LoadError("cannot open content file " + content_path.string());
    }
    std::ifstream cites(cites_path);
    if (!cites) {
        throw LoadError("cannot open cites file " + cites_path.string());
    }
    const std::string content_name = content_path.string();
    const std::string cites_name = cites_path.string();

    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> raw_labels;
    std::vector<Eigen::Triplet<double, std::int64_t>> triplets;
    std::size_t dim = 0;
    bool have_dim = false;

    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(content, buffer)) {
        ++line_no;
        std::string_view line = trim_cr(buffer);
        if (line.empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() < 3) {
            throw ParseError(content_name, line_no, "expected key, features and label");
        }
        const std::size_t row_dim = fields.size() - 2;
        if (!have_dim) {
            dim = row_dim;
            have_dim = true;
        } else if (row_dim != dim) {
            throw ParseError(content_name, line_no,
                             "expected " + std::to_string(dim) + " features, found " +
                                 std::to_string(row_dim));
        }
        const NodeId id = static_cast<NodeId>(ids.size());
        if (!ids.emplace(std::string(fields.front()), id).second) {
            throw ParseError(content_name, line_no,
                             "duplicate node key '" + std::string(fields.front()) + "'");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            std::string_view f = fields[j + 1];
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(value)) {
                throw ParseError(content_name, line_no,
                                 "bad feature value '" + std::string(f) + "'");
            }
            if (value != 0.0) {
                triplets.emplace_back(id, static_cast<std::int64_t>(j), value);
            }
        }
        raw_labels.emplace_back(fields.back());
    }
    if (ids.empty()) {
        throw LoadError("content file " + content_name + " has no rows");
    }

    const std::size_t n = ids.size();
    SparseRows rows(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    rows.setFromTriplets(triplets.begin(), triplets.end());
    auto features = std::make_shared<const FeatureMatrix>(make_non_negative(FeatureMatrix(std::move(rows))));

    std::map<std::string, int> class_ids;
    for (const auto& l : raw_labels) {
        class_ids.emplace(l, 0);
    }
    std::vector<std::string> names;
    for (auto& [name, id] : class_ids) {
        id = static_cast<int>(names.size());
        names.push_back(name);
    }
    std::vector<int> classes;
    classes.reserve(n);
    for (const auto& l : raw_labels) {
        classes.push_back(class_ids.at(l));
    }
    Labels labels = Labels::from_classes(std::move(classes), std::move(names));

    std::vector<NodePair> edges;
    std::set<NodePair> seen;
    line_no = 0;
    while (std::getline(cites, buffer)) {
        ++line_no;
        std::string_view line = trim_cr(buffer);
        if (line.empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw ParseError(cites_name, line_no, "expected two node keys");
        }
        auto a = ids.find(std::string(fields[0]));
        auto b = ids.find(std::string(fields[1]));
        if (a == ids.end() || b == ids.end()) {
            if (options.skip_unknown_edges) {
                continue;
            }
            const auto& missing = a == ids.end() ? fields[0] : fields[1];
            throw LoadError(cites_name + ":" + std::to_string(line_no) + ": unknown node key '" +
                            std::string(missing) + "'");
        }
        NodePair e{a->second, b->second};
        if (e.source == e.target) {
            continue;
        }
        NodePair key = options.directed
                           ? e
                           : NodePair{std::min(e.source, e.target), std::max(e.source, e.target)};
        if (seen.insert(key).second) {
            edges.push_back(e);
        }
    }

    return Graph(n, std::move(edges), std::move(features), std::move(labels), options.directed);
}

}  // namespace paire
