#pragma once

#include "paire/types.hpp"

#include <cstdint>
#include <vector>

namespace paire {

struct KMeansConfig {
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
};

struct KMeansResult {
    std::vector<int> assignments;
    RowMatrix centers;
    double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding; the restart with the lowest
/// inertia wins. Deterministic for a fixed seed.
/// Throws ConfigError when k < 2 or k exceeds the number of rows.
KMeansResult kmeans_cluster(const RowMatrix& x, std::size_t k, std::uint64_t seed,
                            const KMeansConfig& config = {});

}  // namespace paire
