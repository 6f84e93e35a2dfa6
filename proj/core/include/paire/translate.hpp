#pragma once

#include "paire/embedding.hpp"
#include "paire/pair_set.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace paire {

enum class TranslatorMode { sum, mean, max, min };

std::string to_string(TranslatorMode mode);
std::optional<TranslatorMode> parse_translator(std::string_view name);

/// Node embeddings from pair embeddings: node u gets the element-wise
/// reduction of the embeddings of the pairs that start at u. Nodes without
/// outgoing pairs get the zero vector.
///
/// `pairs` row i is the embedding of pair id i of `ps`.
EmbeddingTable translate(const PairSet& ps, const RowMatrix& pairs, TranslatorMode mode);

/// Same, reading the pair ids from a pair-level table's keys.
EmbeddingTable translate(const PairSet& ps, const EmbeddingTable& pair_table, TranslatorMode mode);

}  // namespace paire
