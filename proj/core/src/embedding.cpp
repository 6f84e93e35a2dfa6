#include "paire/embedding.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace paire {

std::string to_string(EmbeddingKind kind) {
    return kind == EmbeddingKind::pair ? "PAIR" : "NODE";
}

EmbeddingTable EmbeddingTable::for_pairs(std::vector<Pair> keys, RowMatrix values) {
    if (keys.size() != static_cast<std::size_t>(values.rows())) {
        throw ContractError("pair keys and embedding rows differ in count");
    }
    EmbeddingTable t;
    t.kind_ = EmbeddingKind::pair;
    t.values_ = std::move(values);
    t.keys_ = std::move(keys);
    t.index_.reserve(t.keys_.size());
    for (std::size_t i = 0; i < t.keys_.size(); ++i) {
        t.index_.emplace_back(t.keys_[i], i);
    }
    std::sort(t.index_.begin(), t.index_.end());
    auto dup = std::adjacent_find(t.index_.begin(), t.index_.end(),
                                  [](const auto& a, const auto& b) { return a.first == b.first; });
    if (dup != t.index_.end()) {
        throw ContractError("duplicate pair key in embedding table");
    }
    return t;
}

EmbeddingTable EmbeddingTable::for_nodes(RowMatrix values) {
    EmbeddingTable t;
    t.kind_ = EmbeddingKind::node;
    t.values_ = std::move(values);
    return t;
}

Vector EmbeddingTable::row(std::size_t id) const {
    if (id >= size()) {
        throw LookupError("embedding id " + std::to_string(id) + " out of range");
    }
    return values_.row(static_cast<Eigen::Index>(id)).transpose();
}

std::optional<std::size_t> EmbeddingTable::find_pair(NodeId source, NodeId target) const {
    const Pair key{source, target};
    auto it = std::lower_bound(index_.begin(), index_.end(), key,
                               [](const auto& entry, const Pair& k) { return entry.first < k; });
    if (it == index_.end() || it->first != key) {
        return std::nullopt;
    }
    return it->second;
}

PairSet EmbeddingTable::pair_set(std::size_t num_nodes) const {
    if (kind_ != EmbeddingKind::pair) {
        throw ContractError("node table has no pair keys");
    }
    return PairSet::from_pairs(num_nodes, keys_);
}

std::size_t EmbeddingTable::implied_node_count() const {
    if (kind_ == EmbeddingKind::node) {
        return size();
    }
    std::size_t n = 0;
    for (const auto& p : keys_) {
        n = std::max<std::size_t>(n, std::max(p.source, p.target) + std::size_t{1});
    }
    return n;
}

bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.kind_ == b.kind_ && a.keys_ == b.keys_ && a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
}

namespace {

void put_double(std::ostream& out, double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw Error("cannot format value");
    }
    out.write(buf.data(), ptr - buf.data());
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view tok, const std::string& source, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(source, line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return value;
}

}  // namespace

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
    out << to_string(table.kind()) << ' ' << table.size() << ' ' << table.dim() << '\n';
    const auto& v = table.values();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.kind() == EmbeddingKind::pair) {
            out << table.pair_keys()[i].source << ' ' << table.pair_keys()[i].target;
        } else {
            out << i;
        }
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            out << ' ';
            put_double(out, v(static_cast<Eigen::Index>(i), j));
        }
        out << '\n';
    }
}

EmbeddingTable read_embeddings(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw ParseError(source, line_no, "missing header");
    }
    auto header = tokens(line);
    if (header.size() != 3) {
        throw ParseError(source, line_no, "header must be 'KIND N D'");
    }
    EmbeddingKind kind;
    if (header[0] == "PAIR") {
        kind = EmbeddingKind::pair;
    } else if (header[0] == "NODE") {
        kind = EmbeddingKind::node;
    } else {
        throw ParseError(source, line_no, "unknown kind '" + std::string(header[0]) + "'");
    }
    const auto n = parse_number<std::size_t>(header[1], source, line_no, "row count");
    const auto d = parse_number<std::size_t>(header[2], source, line_no, "dimension");
    const std::size_t key_width = kind == EmbeddingKind::pair ? 2 : 1;

    RowMatrix values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::vector<Pair> keys;
    keys.reserve(kind == EmbeddingKind::pair ? n : 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++line_no;
        if (!std::getline(in, line)) {
            throw ParseError(source, line_no, "expected " + std::to_string(n) + " rows, found " +
                                                  std::to_string(i));
        }
        auto tok = tokens(line);
        if (tok.size() != key_width + d) {
            throw ParseError(source, line_no, "expected " + std::to_string(key_width + d) +
                                                  " fields, found " + std::to_string(tok.size()));
        }
        if (kind == EmbeddingKind::pair) {
            keys.push_back({parse_number<NodeId>(tok[0], source, line_no, "node id"),
                            parse_number<NodeId>(tok[1], source, line_no, "node id")});
        } else if (parse_number<std::size_t>(tok[0], source, line_no, "node id") != i) {
            throw ParseError(source, line_no, "node rows must be numbered 0..N-1 in order");
        }
        for (std::size_t j = 0; j < d; ++j) {
            const double v = parse_number<double>(tok[key_width + j], source, line_no, "value");
            if (!std::isfinite(v)) {
                throw ParseError(source, line_no, "non-finite value");
            }
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!tokens(line).empty()) {
            throw ParseError(source, line_no, "trailing data after " + std::to_string(n) + " rows");
        }
    }
    if (kind == EmbeddingKind::pair) {
        try {
            return EmbeddingTable::for_pairs(std::move(keys), std::move(values));
        } catch (const ContractError& e) {
            throw ParseError(source, line_no, e.what());
        }
    }
    return EmbeddingTable::for_nodes(std::move(values));
}

void write_embedding_file(const std::filesystem::path& path, const EmbeddingTable& table) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        write_embeddings(out, table);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

EmbeddingTable read_embedding_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LoadError("cannot open embedding file " + path.string());
    }
    return read_embeddings(in, path.string());
}

}  // namespace paire
