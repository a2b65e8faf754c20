#include "swp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace swp {

namespace {

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string piece;
    while (std::getline(is, piece, sep)) out.push_back(piece);
    return out;
}

}  // namespace

MultiIndex parse_kappa_spec(const std::string& spec) {
    MultiIndex b;
    if (spec.empty()) return b;
    for (const auto& piece : split(spec, ',')) {
        const auto colon = piece.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("kappa spec entry '" + piece +
                                        "' is not of the form index:count");
        const int index = parse_int(piece.substr(0, colon), "kappa index");
        const int count = parse_int(piece.substr(colon + 1), "kappa count");
        if (index < 1) throw std::invalid_argument("kappa index must be >= 1");
        if (count < 1) throw std::invalid_argument("kappa count must be >= 1");
        b.set(index, b.count(index) + count);
    }
    return b;
}

std::vector<int> parse_psi_spec(const std::string& spec) {
    std::vector<int> psi;
    if (spec.empty()) return psi;
    for (const auto& piece : split(spec, ',')) {
        const int d = parse_int(piece, "psi exponent");
        if (d < 0) throw std::invalid_argument("psi exponent must be >= 0");
        psi.push_back(d);
    }
    return psi;
}

std::vector<CacheRecord> load_cache_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cache file '" + path + "'");
    std::vector<CacheRecord> records;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            MultiIndex kappa;
            for (const auto& pair : j.at("kappa")) {
                const int index = pair.at(0).get<int>();
                const int count = pair.at(1).get<int>();
                kappa.set(index, kappa.count(index) + count);
            }
            std::vector<int> psi = j.at("psi").get<std::vector<int>>();
            records.push_back(
                CacheRecord{CorrelatorKey::make(j.at("g").get<int>(), std::move(kappa),
                                                std::move(psi)),
                            ExactRational::from_string(j.at("value").get<std::string>())});
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": malformed cache record: " + e.what());
        }
    }
    return records;
}

std::size_t preload_cache(CorrelatorEngine& engine, const std::vector<CacheRecord>& records) {
    for (const auto& r : records) engine.preload(r.key, r.value);
    return records.size();
}

void save_cache_file(const std::string& path, const CorrelatorEngine& engine) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file '" + path + "'");
    for (const auto& [key, value] : engine.snapshot()) {
        nlohmann::json j;
        j["g"] = key.genus;
        auto kappa = nlohmann::json::array();
        for (const auto& [i, c] : key.kappa.entries()) kappa.push_back({i, c});
        j["kappa"] = std::move(kappa);
        j["psi"] = key.psi;
        j["value"] = value.to_string();
        out << j.dump() << "\n";
    }
}

}  // namespace swp
