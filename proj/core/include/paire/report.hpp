#pragma once

#include "paire/tasks.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>

namespace paire {

/// Line-delimited records, one per run and one mean per metric:
///   task=link-pred dataset=cora seed=3 metric=auc value=0.91
///   task=link-pred dataset=cora seed=mean metric=auc value=0.92
void write_records(std::ostream& out, const EvalReport& report);

/// Aligned table: one row per metric with its mean and per-seed values.
void write_table(std::ostream& out, const EvalReport& report);

/// Records of every report, written atomically (temporary file then rename).
void write_report_file(const std::filesystem::path& path, std::span<const EvalReport> reports);

}  // namespace paire
