#pragma once

#include "paire/pair_set.hpp"
#include "paire/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace paire {

enum class EmbeddingKind { pair, node };

std::string to_string(EmbeddingKind kind);

/// Dense id -> vector table. Pair tables also carry the (source, target) key
/// of every row.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    static EmbeddingTable for_pairs(std::vector<Pair> keys, RowMatrix values);
    static EmbeddingTable for_nodes(RowMatrix values);

    EmbeddingKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    const RowMatrix& values() const noexcept { return values_; }
    Vector row(std::size_t id) const;

    /// Pair keys, one per row. Empty for node tables.
    const std::vector<Pair>& pair_keys() const noexcept { return keys_; }
    std::optional<std::size_t> find_pair(NodeId source, NodeId target) const;

    /// PairSet over the stored keys, for a graph of `num_nodes` nodes.
    PairSet pair_set(std::size_t num_nodes) const;
    /// One past the largest node id mentioned by the table.
    std::size_t implied_node_count() const;

    friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b);

private:
    EmbeddingKind kind_ = EmbeddingKind::node;
    RowMatrix values_;
    std::vector<Pair> keys_;
    std::vector<std::pair<Pair, std::size_t>> index_;
};

/// Text format: a `KIND N D` header (KIND is PAIR or NODE) followed by one
/// line per row, `src tgt v1 .. vD` for pairs and `node v1 .. vD` for nodes.
/// Values use the shortest decimal that round-trips exactly.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);
EmbeddingTable read_embeddings(std::istream& in, const std::string& source = "<stream>");

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write leaves no partial file behind.
void write_embedding_file(const std::filesystem::path& path, const EmbeddingTable& table);
EmbeddingTable read_embedding_file(const std::filesystem::path& path);

}  // namespace paire
