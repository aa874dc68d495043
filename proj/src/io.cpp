#include "spreadlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spreadlab {

Hypergraph read_instance_json(const std::string& text, bool allow_empty_edges) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("instance parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::runtime_error("instance must be an object with fields 'n' and 'edges'");
    int n = j.at("n").get<int>();
    std::vector<std::vector<int>> edges;
    for (const auto& e : j.at("edges")) edges.push_back(e.get<std::vector<int>>());
    return make_hypergraph(n, edges, allow_empty_edges);
}

Hypergraph load_instance(const std::string& path, bool allow_empty_edges) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_instance_json(ss.str(), allow_empty_edges);
}

std::string instance_to_json(const Hypergraph& h) {
    nlohmann::json j;
    j["n"] = h.n;
    auto edges = nlohmann::json::array();
    for (const auto& e : h.edges) edges.push_back(e.to_vector());
    j["edges"] = edges;
    return j.dump();
}

std::string certificate_to_json(const SpreadCertificate& cert) {
    nlohmann::json j;
    j["kappa"] = cert.kappa;
    j["witness"] = cert.witness.to_vector();
    auto table = nlohmann::json::array();
    for (std::size_t s = 1; s < cert.ratio_table.size(); ++s)
        table.push_back(cert.ratio_table[s]);
    j["ratio_table"] = table;
    return j.dump();
}

std::string spread_measure_to_json(const SpreadMeasure& m) {
    nlohmann::json j;
    j["q"] = m.q;
    auto support = nlohmann::json::array();
    for (const auto& s : m.support) support.push_back(s.to_vector());
    j["support"] = support;
    auto mass = nlohmann::json::array();
    for (const auto& q : m.mass) mass.push_back(q.get_d());
    j["mass"] = mass;
    return j.dump();
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ",";
        out += fields[i];
    }
    return out;
}

std::string config_hash(const std::string& canonical_config) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_config) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace spreadlab
