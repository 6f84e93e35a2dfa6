#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <compare>
#include <cstdint>

namespace paire {

using NodeId = std::uint32_t;
using PairId = std::uint32_t;

/// Ordered pair of node ids. Used both for graph edges and for candidate pairs
/// that are not (yet) edges.
struct NodePair {
    NodeId source = 0;
    NodeId target = 0;

    NodePair reversed() const noexcept { return {target, source}; }
    friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int64_t>;

}  // namespace paire
