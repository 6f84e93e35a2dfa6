#pragma once

#include "paire/paire.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace paire::cli {

enum class Mode { paire, node_ablation };

struct RunConfig {
    /// Dataset directory holding <name>.content and <name>.cites, or the
    /// common path prefix of the two files.
    std::filesystem::path dataset;
    std::filesystem::path content;
    std::filesystem::path cites;
    bool directed = false;

    TrainConfig train;
    Mode mode = Mode::paire;
    TranslatorMode translator = TranslatorMode::sum;
    std::vector<Task> tasks;
    std::size_t runs = 10;

    std::filesystem::path out;
    std::filesystem::path embeddings;
    bool verbose = false;

    /// Content and cites paths after applying the dataset shorthand.
    std::pair<std::filesystem::path, std::filesystem::path> dataset_files() const;
    /// Name used in reports: the dataset stem, or "-".
    std::string dataset_name() const;
};

/// Trains embeddings and writes them to cfg.out: a pair table in paire mode,
/// a node table in node-ablation mode.
EmbeddingTable cmd_embed(const RunConfig& cfg, std::ostream& log);

/// Reads the pair table cfg.embeddings and writes its node translation to
/// cfg.out. The node count comes from the dataset when one is given.
EmbeddingTable cmd_translate(const RunConfig& cfg);

/// Runs every selected task, prints a table per task to `out`, and writes
/// the records to cfg.out when set.
std::vector<EvalReport> cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Entry point. Returns 0 on success, 1 on a usage error, 2 on a runtime failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace paire::cli
