#include "run_report.hpp"

#include <mwb/parser.hpp>
#include <mwb/structure_io.hpp>

#include <openssl/evp.h>

#include <iomanip>
#include <iostream>
#include <sstream>

namespace mwb::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

Run::Run(std::vector<std::string> argv, std::string out_dir, std::string format)
    : argv_(std::move(argv)), out_(std::move(out_dir)), format_(std::move(format)) {
    if (!out_.empty()) std::filesystem::create_directories(out_);
}

std::string Run::read_input(const std::string& path) {
    std::string text = read_text_file(path);
    inputs_.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
    return text;
}

FiniteStructure Run::structure(const std::string& path) { return parse_structure(read_input(path)); }

Json Run::json_file(const std::string& path) {
    std::string text = read_input(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

Formula Run::formula(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return parse_formula(read_input(arg));
    return parse_formula(arg);
}

void Run::artifact(const std::string& name, std::string text) {
    if (out_.empty()) {
        artifacts_[name] = std::move(text);
        return;
    }
    write_text_file(out_ / name, text);
    artifacts_[name] = {{"path", (out_ / name).string()}, {"sha256", sha256_hex(text)}};
}

int Run::finish(const Json& payload, bool verdict, const std::string& status) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    Json report = {{"command", argv_},
                   {"inputs", inputs_},
                   {"payload", payload},
                   {"verdict", verdict},
                   {"status", status.empty() ? (verdict ? "verified" : "unverified") : status},
                   {"artifacts", artifacts_},
                   {"wall_time_ms", ms}};
    if (!out_.empty()) write_text_file(out_ / "report.json", dump(report));
    if (format_ == "text") {
        std::cout << "status: " << report["status"].get<std::string>() << "\n";
        if (payload.is_object())
            for (const auto& [k, v] : payload.items()) std::cout << k << ": " << v.dump() << "\n";
        for (const auto& [k, v] : artifacts_.items())
            std::cout << "artifact " << k << ": "
                      << (v.is_string() ? std::to_string(v.get<std::string>().size()) + " bytes" : v.dump()) << "\n";
        std::cout << "wall time: " << ms << " ms\n";
    } else {
        std::cout << dump(report);
    }
    return verdict ? 0 : 1;
}

int Run::emit_structure(const FiniteStructure& s) {
    std::string text = to_canonical_json(s);
    if (out_.empty()) std::cout << text;
    else write_text_file(out_ / "structure.json", text);
    return 0;
}

} // namespace mwb::cli
