#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "real.hpp"

namespace semipred {

// Fixed decimal rendering for CSV cells: deterministic given value and
// precision, locale-independent.
inline std::string format_real(const Real& v, unsigned digits = 18) {
    std::ostringstream out;
    out << std::setprecision(static_cast<int>(digits)) << v;
    return out.str();
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
        return out.str();
    }
};

// FNV-1a 64-bit content digest, hex text; used to pin output determinism
// in the run manifest.
inline std::string fnv1a_digest(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::create_directories(path.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << data;
}

// Accumulates the per-experiment artifacts (CSV series, plot script,
// manifest) and writes them with content digests recorded in the manifest.
class RunWriter {
public:
    RunWriter(std::filesystem::path out_dir, std::string experiment)
        : dir_(std::move(out_dir)), experiment_(std::move(experiment)) {
        std::filesystem::create_directories(dir_);
        manifest_["experiment"] = experiment_;
        manifest_["outputs"] = nlohmann::json::array();
    }

    nlohmann::json& manifest() { return manifest_; }

    // column_docs: one description per CSV column, recorded in the manifest.
    void write_csv(const std::string& stem, const CsvTable& table,
                   const std::vector<std::string>& column_docs) {
        std::string data = table.render();
        std::string file = experiment_ + "_" + stem + ".csv";
        write_text_file(dir_ / file, data);
        nlohmann::json cols = nlohmann::json::array();
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            cols.push_back({{"name", table.columns[i]},
                            {"doc", i < column_docs.size() ? column_docs[i] : ""}});
        manifest_["outputs"].push_back(
            {{"file", file}, {"kind", "csv"}, {"columns", cols},
             {"rows", table.rows.size()}, {"digest", fnv1a_digest(data)}});
    }

    // A plain text file of plotting commands reading the CSVs; no plotting
    // runtime is linked or executed here.
    void write_plot_script(const std::string& commands) {
        std::string file = experiment_ + "_plot.txt";
        write_text_file(dir_ / file, commands);
        manifest_["outputs"].push_back(
            {{"file", file}, {"kind", "plot-script"}, {"digest", fnv1a_digest(commands)}});
    }

    void finish() {
        std::string data = manifest_.dump(2) + "\n";
        write_text_file(dir_ / (experiment_ + "_manifest.json"), data);
    }

private:
    std::filesystem::path dir_;
    std::string experiment_;
    nlohmann::json manifest_;
};

}  // namespace semipred
