#pragma once

// Cache files and command-line value parsing.
//
// A cache file stores one correlator per line as a small JSON object:
//   {"g":2,"kappa":[[1,1]],"psi":[0],"value":"9/128"}
// kappa is the multi-index as (index, count) pairs, psi the non-increasing
// list of exponents, value an exact rational. Loading a file into an engine
// preloads every record; a record that contradicts either another record or
// an already computed value is a hard error (StrategyDisagreementError).

#include <string>
#include <utility>
#include <vector>

#include "swp/correlator.hpp"
#include "swp/multi_index.hpp"
#include "swp/rational.hpp"

namespace swp {

// "1:2,3:1" -> {1 -> 2, 3 -> 1}; "" -> empty. Throws std::invalid_argument.
MultiIndex parse_kappa_spec(const std::string& spec);

// "0,0,1" -> {0, 0, 1}; "" -> empty. Throws std::invalid_argument.
std::vector<int> parse_psi_spec(const std::string& spec);

struct CacheRecord {
    CorrelatorKey key;
    ExactRational value;
};

// Reads every record of a JSON-lines cache file. Throws std::invalid_argument
// on malformed content, std::runtime_error if the file cannot be opened.
std::vector<CacheRecord> load_cache_file(const std::string& path);

// Preloads the records; returns the number inserted. Conflicting records
// raise StrategyDisagreementError.
std::size_t preload_cache(CorrelatorEngine& engine, const std::vector<CacheRecord>& records);

// Writes the engine's memo table; one record per line, deterministic order.
void save_cache_file(const std::string& path, const CorrelatorEngine& engine);

}  // namespace swp
