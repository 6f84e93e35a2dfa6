#include "paire/features.hpp"

#include "paire/error.hpp"

#include <cmath>

namespace paire {

namespace {

using Triplet = Eigen::Triplet<double, std::int64_t>;

void check_entry(double v) {
    if (!std::isfinite(v)) {
        throw DomainError("non-finite feature value");
    }
    if (v < 0.0) {
        throw DomainError("negative feature value " + std::to_string(v));
    }
}

double row_sum(const SparseRows& m, Eigen::Index r) {
    double s = 0.0;
    for (SparseRows::InnerIterator it(m, r); it; ++it) {
        check_entry(it.value());
        s += it.value();
    }
    return s;
}

void append_scaled(std::vector<Triplet>& out, std::int64_t row, std::int64_t col_offset,
                   const SparseRows& m, Eigen::Index r, double scale) {
    for (SparseRows::InnerIterator it(m, r); it; ++it) {
        out.emplace_back(row, col_offset + it.col(), it.value() * scale);
    }
}

void append_uniform(std::vector<Triplet>& out, std::int64_t row, std::int64_t col_offset,
                    std::int64_t width, double value) {
    for (std::int64_t j = 0; j < width; ++j) {
        out.emplace_back(row, col_offset + j, value);
    }
}

/// Row `row` of the output holds the distribution of a(ra) || b(rb).
void append_concat_distribution(std::vector<Triplet>& out, std::int64_t row,
                                const SparseRows& a, Eigen::Index ra, const SparseRows& b,
                                Eigen::Index rb, Normalization mode) {
    const std::int64_t width_a = a.cols();
    const std::int64_t width_b = b.cols();
    const double sa = row_sum(a, ra);
    const double sb = row_sum(b, rb);
    if (mode == Normalization::joint) {
        const double total = sa + sb;
        if (total > 0.0) {
            append_scaled(out, row, 0, a, ra, 1.0 / total);
            append_scaled(out, row, width_a, b, rb, 1.0 / total);
        } else {
            const double u = 1.0 / static_cast<double>(width_a + width_b);
            append_uniform(out, row, 0, width_a + width_b, u);
        }
        return;
    }
    if (sa > 0.0) {
        append_scaled(out, row, 0, a, ra, 0.5 / sa);
    } else {
        append_uniform(out, row, 0, width_a, 0.5 / static_cast<double>(width_a));
    }
    if (sb > 0.0) {
        append_scaled(out, row, width_a, b, rb, 0.5 / sb);
    } else {
        append_uniform(out, row, width_a, width_b, 0.5 / static_cast<double>(width_b));
    }
}

void append_distribution(std::vector<Triplet>& out, std::int64_t row, const SparseRows& a,
                         Eigen::Index ra) {
    const double s = row_sum(a, ra);
    if (s > 0.0) {
        append_scaled(out, row, 0, a, ra, 1.0 / s);
    } else {
        append_uniform(out, row, 0, a.cols(), 1.0 / static_cast<double>(a.cols()));
    }
}

SparseRows from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
    SparseRows m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

/// Row-stochastic neighbour-mean operator of g.
SparseRows mean_operator(const Graph& g) {
    std::vector<Triplet> t;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        auto n = g.neighbors(u);
        for (NodeId v : n) {
            t.emplace_back(u, v, 1.0 / static_cast<double>(n.size()));
        }
    }
    return from_triplets(g.num_nodes(), g.num_nodes(), t);
}

void check_sizes(const Graph& g, const FeatureMatrix& fm) {
    if (fm.num_rows() != g.num_nodes()) {
        throw ContractError("feature matrix rows do not match node count");
    }
}

}  // namespace

std::vector<double> normalize_to_distribution(std::span<const double> x) {
    if (x.empty()) {
        throw DomainError("cannot normalize an empty vector");
    }
    double s = 0.0;
    for (double v : x) {
        check_entry(v);
        s += v;
    }
    std::vector<double> out(x.size());
    if (s > 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = x[i] / s;
        }
    } else {
        std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(x.size()));
    }
    return out;
}

Vector mean_aggregate(const Graph& g, const FeatureMatrix& fm, NodeId u) {
    check_sizes(g, fm);
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(fm.dim()));
    auto n = g.neighbors(u);
    if (n.empty()) {
        return acc;
    }
    for (NodeId v : n) {
        for (SparseRows::InnerIterator it(fm.rows(), v); it; ++it) {
            acc[it.col()] += it.value();
        }
    }
    return acc / static_cast<double>(n.size());
}

FeatureMatrix aggregate_features(const Graph& g, const FeatureMatrix& fm, int depth) {
    check_sizes(g, fm);
    if (depth < 0) {
        throw ConfigError("aggregation depth must be non-negative");
    }
    if (depth == 0) {
        return fm;
    }
    const SparseRows op = mean_operator(g);
    SparseRows current = fm.rows();
    for (int i = 0; i < depth; ++i) {
        current = (op * current).pruned();
    }
    return FeatureMatrix(std::move(current));
}

PairInput PairInputs::at(std::size_t i) const {
    if (i >= size()) {
        throw LookupError("input row " + std::to_string(i) + " out of range");
    }
    const auto r = static_cast<Eigen::Index>(i);
    return {Vector(self.row(r).transpose()), Vector(agg.row(r).transpose())};
}

PairInputs build_pair_inputs(const Graph& g, const FeatureMatrix& fm, const PairSet& ps,
                             const FeatureOptions& options) {
    check_sizes(g, fm);
    if (ps.num_nodes() != g.num_nodes()) {
        throw ContractError("pair set and graph disagree on node count");
    }
    const FeatureMatrix agg = aggregate_features(g, fm, options.aggregation_depth);
    std::vector<Triplet> ts;
    std::vector<Triplet> ta;
    for (PairId id = 0; id < ps.size(); ++id) {
        const Pair& p = ps.pairs()[id];
        append_concat_distribution(ts, id, fm.rows(), p.source, fm.rows(), p.target,
                                   options.normalization);
        append_concat_distribution(ta, id, agg.rows(), p.source, agg.rows(), p.target,
                                   options.normalization);
    }
    const std::size_t width = 2 * fm.dim();
    return {from_triplets(ps.size(), width, ts), from_triplets(ps.size(), width, ta)};
}

PairInputs build_pair_inputs(const Graph& g, std::span<const NodePair> pairs,
                             const FeatureOptions& options) {
    const FeatureMatrix& fm = g.features();
    const FeatureMatrix agg = aggregate_features(g, fm, options.aggregation_depth);
    std::vector<Triplet> ts;
    std::vector<Triplet> ta;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        if (p.source >= g.num_nodes() || p.target >= g.num_nodes()) {
            throw LookupError("candidate pair references an unknown node");
        }
        const auto row = static_cast<std::int64_t>(i);
        append_concat_distribution(ts, row, fm.rows(), p.source, fm.rows(), p.target,
                                   options.normalization);
        append_concat_distribution(ta, row, agg.rows(), p.source, agg.rows(), p.target,
                                   options.normalization);
    }
    const std::size_t width = 2 * fm.dim();
    return {from_triplets(pairs.size(), width, ts), from_triplets(pairs.size(), width, ta)};
}

PairInputs build_node_inputs(const Graph& g, const FeatureOptions& options) {
    const FeatureMatrix& fm = g.features();
    const FeatureMatrix agg = aggregate_features(g, fm, options.aggregation_depth);
    std::vector<Triplet> ts;
    std::vector<Triplet> ta;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        append_distribution(ts, u, fm.rows(), u);
        append_distribution(ta, u, agg.rows(), u);
    }
    return {from_triplets(g.num_nodes(), fm.dim(), ts), from_triplets(g.num_nodes(), fm.dim(), ta)};
}

}  // namespace paire
