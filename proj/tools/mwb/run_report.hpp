#pragma once

#include <mwb/json_io.hpp>

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace mwb::cli {

std::string sha256_hex(std::string_view bytes);

/// Collects everything a report needs: the command line, digests of the
/// files read, and named artifacts. Artifacts go to files when an output
/// directory is set and are inlined in the report otherwise.
class Run {
public:
    Run(std::vector<std::string> argv, std::string out_dir, std::string format);

    std::string read_input(const std::string& path);
    FiniteStructure structure(const std::string& path);
    Json json_file(const std::string& path);
    /// Read from the file if `arg` names one, parsed as formula text otherwise.
    Formula formula(const std::string& arg);

    void artifact(const std::string& name, std::string text);

    /// Prints (and with an output directory, writes) the report. Returns
    /// the exit status: 0 when `verdict` holds, 1 otherwise.
    int finish(const Json& payload, bool verdict, const std::string& status = {});

    /// For generators: the bare structure file goes to stdout or out/structure.json.
    int emit_structure(const FiniteStructure& s);

private:
    std::vector<std::string> argv_;
    std::filesystem::path out_;
    std::string format_;
    Json inputs_ = Json::array();
    Json artifacts_ = Json::object();
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace mwb::cli
