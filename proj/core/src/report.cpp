#include "paire/report.hpp"

#include "paire/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace paire {

namespace {

std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw Error("cannot format value");
    }
    return {buf.data(), ptr};
}

std::string fixed4(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4f", v);
    return buf.data();
}

std::string dataset_name(const EvalReport& r) {
    return r.dataset.empty() ? "-" : r.dataset;
}

}  // namespace

void write_records(std::ostream& out, const EvalReport& report) {
    const std::string head = "task=" + to_string(report.task) + " dataset=" + dataset_name(report);
    for (const auto& m : report.metrics) {
        for (std::size_t i = 0; i < m.values.size(); ++i) {
            const std::string seed = i < report.seeds.size() ? std::to_string(report.seeds[i]) : "?";
            out << head << " seed=" << seed << " metric=" << m.name << " value=" << shortest(m.values[i])
                << '\n';
        }
        out << head << " seed=mean metric=" << m.name << " value=" << shortest(m.mean()) << '\n';
    }
}

void write_table(std::ostream& out, const EvalReport& report) {
    std::size_t width = 6;
    for (const auto& m : report.metrics) width = std::max(width, m.name.size());
    out << to_string(report.task) << " on " << dataset_name(report) << " (" << report.seeds.size()
        << " runs)\n";
    out << std::string(width - 6, ' ') << "metric    mean    runs\n";
    for (const auto& m : report.metrics) {
        out << std::string(width - m.name.size(), ' ') << m.name << "  " << fixed4(m.mean()) << " ";
        for (double v : m.values) out << ' ' << fixed4(v);
        out << '\n';
    }
}

void write_report_file(const std::filesystem::path& path, std::span<const EvalReport> reports) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        for (const auto& r : reports) write_records(out, r);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace paire
