#include "synthetic.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace paire::testing {

Graph synthetic_graph(const SyntheticSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<int> classes(spec.nodes);
    for (std::size_t i = 0; i < spec.nodes; ++i) classes[i] = static_cast<int>(i % spec.classes);
    std::shuffle(classes.begin(), classes.end(), rng);

    const std::size_t vocab = spec.features / spec.classes;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> any_word(0, spec.features - 1);
    std::uniform_int_distribution<std::size_t> topic_word(0, vocab - 1);
    RowMatrix x = RowMatrix::Zero(static_cast<Eigen::Index>(spec.nodes), static_cast<Eigen::Index>(spec.features));
    for (std::size_t i = 0; i < spec.nodes; ++i) {
        for (std::size_t w = 0; w < spec.words_per_node; ++w) {
            const std::size_t j = unit(rng) < spec.topic_strength
                                      ? static_cast<std::size_t>(classes[i]) * vocab + topic_word(rng)
                                      : any_word(rng);
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
        }
    }

    std::vector<double> activity(spec.nodes);
    std::exponential_distribution<double> expo(spec.degree_shape);
    for (auto& a : activity) a = std::exp(expo(rng));  // Pareto(shape) with scale 1
    std::discrete_distribution<std::size_t> pick(activity.begin(), activity.end());

    std::set<NodePair> seen;
    std::vector<NodePair> edges;
    while (edges.size() < spec.edges) {
        const auto u = static_cast<NodeId>(pick(rng));
        const auto v = static_cast<NodeId>(pick(rng));
        if (u == v) continue;
        if (classes[u] != classes[v] && unit(rng) < spec.homophily) continue;
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) continue;
        edges.push_back({u, v});
    }
    auto fm = std::make_shared<const FeatureMatrix>(FeatureMatrix::from_dense(x));
    return Graph(spec.nodes, std::move(edges), std::move(fm), Labels::from_classes(classes, {}));
}

Graph make_graph(std::size_t n, const std::vector<NodePair>& edges,
                 const std::vector<std::vector<double>>& features, std::vector<int> classes) {
    const std::size_t f = features.empty() ? 1 : features.front().size();
    RowMatrix x = RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = 0; j < f; ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = features[i][j];
        }
    }
    std::optional<Labels> labels;
    if (!classes.empty()) labels = Labels::from_classes(std::move(classes), {});
    return Graph(n, edges, std::make_shared<const FeatureMatrix>(FeatureMatrix::from_dense(x)), labels);
}

Graph random_graph(std::size_t n, double edge_probability, std::size_t features, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<NodePair> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (unit(rng) < edge_probability) {
                edges.push_back(unit(rng) < 0.5 ? NodePair{u, v} : NodePair{v, u});
            }
        }
    }
    std::vector<std::vector<double>> x(n, std::vector<double>(features, 0.0));
    std::uniform_int_distribution<int> count(0, 3);
    for (auto& row : x) {
        for (auto& value : row) value = count(rng);
    }
    return make_graph(n, edges, x);
}

Graph path_graph(std::size_t n) {
    std::vector<NodePair> edges;
    for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
    std::vector<std::vector<double>> x(n, std::vector<double>{1.0, 0.0});
    return make_graph(n, edges, x);
}

void write_dataset(const Graph& g, const std::filesystem::path& dir, const std::string& name) {
    std::ofstream content(dir / (name + ".content"));
    const auto& rows = g.features().rows();
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        content << 'k' << u;
        for (Eigen::Index j = 0; j < rows.cols(); ++j) content << '\t' << rows.coeff(u, j);
        content << "\tc" << (g.has_labels() ? g.labels().single(u) : 0) << '\n';
    }
    std::ofstream cites(dir / (name + ".cites"));
    for (const auto& e : g.edges()) cites << 'k' << e.source << "\tk" << e.target << '\n';
}

TempDir::TempDir(const std::string& tag) {
    std::random_device rd;
    for (int attempt = 0;; ++attempt) {
        path_ = std::filesystem::temp_directory_path() / ("paire-" + tag + "-" + std::to_string(rd()));
        if (std::filesystem::create_directory(path_)) break;
        if (attempt > 100) throw std::runtime_error("cannot create temp dir");
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace paire::testing
