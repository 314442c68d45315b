#include <mwb/structure_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace mwb {

using nlohmann::json;

namespace {

Element to_element(const json& v, std::size_t n, const std::string& rel) {
    if (!v.is_number_integer()) throw Error("relation '" + rel + "': tuple entries must be integers");
    auto x = v.get<std::int64_t>();
    if (x < 0 || static_cast<std::uint64_t>(x) >= n)
        throw Error("relation '" + rel + "': entry " + std::to_string(x) + " outside universe of size " +
                    std::to_string(n));
    return static_cast<Element>(x);
}

} // namespace

FiniteStructure parse_structure(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("structure file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("universe") || !doc["universe"].is_number_integer())
        throw Error("structure file needs an integer \"universe\"");
    auto n_signed = doc["universe"].get<std::int64_t>();
    if (n_signed <= 0) throw Error("\"universe\" must be positive");
    const auto n = static_cast<std::size_t>(n_signed);

    RelationMap rels;
    if (doc.contains("relations")) {
        const json& rj = doc["relations"];
        if (!rj.is_object()) throw Error("\"relations\" must be an object");
        for (const auto& [name, body] : rj.items()) {
            if (!body.is_object() || !body.contains("arity") || !body["arity"].is_number_integer() ||
                !body.contains("tuples") || !body["tuples"].is_array())
                throw Error("relation '" + name + "' needs integer \"arity\" and array \"tuples\"");
            auto k = body["arity"].get<std::int64_t>();
            if (k < 1) throw Error("relation '" + name + "' has arity < 1");
            std::vector<Tuple> tuples;
            for (const auto& tj : body["tuples"]) {
                if (!tj.is_array() || tj.size() != static_cast<std::size_t>(k))
                    throw Error("relation '" + name + "': every tuple must be an array of length " +
                                std::to_string(k));
                Tuple t;
                for (const auto& v : tj) t.push_back(to_element(v, n, name));
                tuples.push_back(std::move(t));
            }
            try {
                rels.emplace(name, Relation(n, static_cast<std::size_t>(k), std::move(tuples)));
            } catch (const Error& e) {
                throw Error("relation '" + name + "': " + e.what());
            }
        }
    }
    return FiniteStructure(n, std::move(rels));
}

std::string to_canonical_json(const FiniteStructure& s) {
    std::ostringstream out;
    out << "{\n  \"universe\": " << s.universe_size() << ",\n  \"relations\": {";
    bool first_rel = true;
    for (const auto& [name, rel] : s.relations()) {
        out << (first_rel ? "\n" : ",\n");
        first_rel = false;
        out << "    " << json(name).dump() << ": {\"arity\": " << rel.arity() << ", \"tuples\": [";
        for (std::size_t id = 0; id < rel.size(); ++id) {
            out << (id ? ",[" : "[");
            auto t = rel.tuple(id);
            for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
            out << ']';
        }
        out << "]}";
    }
    out << (first_rel ? "}\n}\n" : "\n  }\n}\n");
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

FiniteStructure read_structure_file(const std::filesystem::path& path) {
    return parse_structure(read_text_file(path));
}

void write_structure_file(const std::filesystem::path& path, const FiniteStructure& s) {
    write_text_file(path, to_canonical_json(s));
}

} // namespace mwb
