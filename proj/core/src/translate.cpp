#include "paire/translate.hpp"

#include "paire/error.hpp"

namespace paire {

std::string to_string(TranslatorMode mode) {
    switch (mode) {
        case TranslatorMode::sum: return "sum";
        case TranslatorMode::mean: return "mean";
        case TranslatorMode::max: return "max";
        case TranslatorMode::min: return "min";
    }
    return "?";
}

std::optional<TranslatorMode> parse_translator(std::string_view name) {
    if (name == "sum") return TranslatorMode::sum;
    if (name == "mean") return TranslatorMode::mean;
    if (name == "max") return TranslatorMode::max;
    if (name == "min") return TranslatorMode::min;
    return std::nullopt;
}

EmbeddingTable translate(const PairSet& ps, const RowMatrix& pairs, TranslatorMode mode) {
    if (static_cast<std::size_t>(pairs.rows()) != ps.size()) {
        throw ContractError("translate: " + std::to_string(pairs.rows()) + " embeddings for " +
                            std::to_string(ps.size()) + " pairs");
    }
    const Eigen::Index d = pairs.cols();
    RowMatrix nodes = RowMatrix::Zero(static_cast<Eigen::Index>(ps.num_nodes()), d);
    for (NodeId u = 0; u < ps.num_nodes(); ++u) {
        auto out = ps.out_pairs(u);
        if (out.empty()) {
            continue;
        }
        auto acc = nodes.row(u);
        acc = pairs.row(out.front());
        for (std::size_t k = 1; k < out.size(); ++k) {
            const auto e = pairs.row(out[k]);
            switch (mode) {
                case TranslatorMode::sum:
                case TranslatorMode::mean: acc += e; break;
                case TranslatorMode::max: acc = acc.cwiseMax(e); break;
                case TranslatorMode::min: acc = acc.cwiseMin(e); break;
            }
        }
        if (mode == TranslatorMode::mean) {
            acc /= static_cast<double>(out.size());
        }
    }
    return EmbeddingTable::for_nodes(std::move(nodes));
}

EmbeddingTable translate(const PairSet& ps, const EmbeddingTable& pair_table, TranslatorMode mode) {
    if (pair_table.kind() != EmbeddingKind::pair) {
        throw ContractError("translate expects a pair-level table");
    }
    RowMatrix ordered(static_cast<Eigen::Index>(ps.size()), static_cast<Eigen::Index>(pair_table.dim()));
    for (PairId id = 0; id < ps.size(); ++id) {
        const Pair& p = ps.pairs()[id];
        auto row = pair_table.find_pair(p.source, p.target);
        if (!row) {
            throw ContractError("no embedding for pair (" + std::to_string(p.source) + ", " +
                                std::to_string(p.target) + ")");
        }
        ordered.row(id) = pair_table.values().row(static_cast<Eigen::Index>(*row));
    }
    return translate(ps, ordered, mode);
}

}  // namespace paire
