#include "paire/kmeans.hpp"

#include "paire/error.hpp"

#include <limits>
#include <random>

namespace paire {

namespace {

double squared_distance(const RowMatrix& x, Eigen::Index i, const RowMatrix& c, Eigen::Index k) {
    return (x.row(i) - c.row(k)).squaredNorm();
}

/// k-means++: first centre uniform, later ones drawn with probability
/// proportional to the squared distance to the nearest chosen centre.
RowMatrix seed_centers(const RowMatrix& x, std::size_t k, std::mt19937_64& rng) {
    const Eigen::Index n = x.rows();
    RowMatrix centers(static_cast<Eigen::Index>(k), x.cols());
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    centers.row(0) = x.row(first(rng));
    Vector nearest(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        nearest[i] = squared_distance(x, i, centers, 0);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t c = 1; c < k; ++c) {
        const double total = nearest.sum();
        Eigen::Index chosen = 0;
        if (total > 0.0) {
            double r = unit(rng) * total;
            chosen = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                r -= nearest[i];
                if (r < 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = first(rng);
        }
        centers.row(static_cast<Eigen::Index>(c)) = x.row(chosen);
        for (Eigen::Index i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(x, i, centers, static_cast<Eigen::Index>(c)));
        }
    }
    return centers;
}

KMeansResult lloyd(const RowMatrix& x, RowMatrix centers, std::size_t max_iter) {
    const Eigen::Index n = x.rows();
    const Eigen::Index k = centers.rows();
    KMeansResult r;
    r.assignments.assign(static_cast<std::size_t>(n), -1);
    Vector dist(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Index best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (Eigen::Index c = 0; c < k; ++c) {
                const double d = squared_distance(x, i, centers, c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            dist[i] = best_d;
            if (r.assignments[static_cast<std::size_t>(i)] != static_cast<int>(best)) {
                r.assignments[static_cast<std::size_t>(i)] = static_cast<int>(best);
                changed = true;
            }
        }
        if (!changed && it > 0) {
            break;
        }
        RowMatrix sums = RowMatrix::Zero(k, x.cols());
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int a = r.assignments[static_cast<std::size_t>(i)];
            sums.row(a) += x.row(i);
            ++counts[static_cast<std::size_t>(a)];
        }
        for (Eigen::Index c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
                continue;
            }
            // Empty cluster: move it onto the point farthest from its centre,
            // unless every point already sits on a centre.
            Eigen::Index far = 0;
            if (dist.maxCoeff(&far) > 0.0) {
                centers.row(c) = x.row(far);
                dist[far] = 0.0;
            }
        }
    }
    r.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        r.inertia += squared_distance(x, i, centers, r.assignments[static_cast<std::size_t>(i)]);
    }
    r.centers = std::move(centers);
    return r;
}

}  // namespace

KMeansResult kmeans_cluster(const RowMatrix& x, std::size_t k, std::uint64_t seed, const KMeansConfig& config) {
    if (k < 2) {
        throw ConfigError("k-means needs k >= 2");
    }
    if (k > static_cast<std::size_t>(x.rows())) {
        throw ConfigError("k-means: k = " + std::to_string(k) + " exceeds " + std::to_string(x.rows()) + " rows");
    }
    if (config.restarts == 0 || config.max_iter == 0) {
        throw ConfigError("k-means needs at least one restart and one iteration");
    }
    std::mt19937_64 rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < config.restarts; ++r) {
        KMeansResult run = lloyd(x, seed_centers(x, k, rng), config.max_iter);
        if (run.inertia < best.inertia) {
            best = std::move(run);
        }
    }
    return best;
}

}  // namespace paire
