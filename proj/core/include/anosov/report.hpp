#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anosov/birkhoff.hpp"
#include "anosov/hyperbolicity.hpp"
#include "anosov/sections.hpp"

namespace anosov {

using Json = nlohmann::json;

/// JSON encodings of the library's records. Object keys are sorted, so identical
/// inputs serialize to identical bytes.
Json to_json(const ModelParams& params);
Json to_json(const CocycleWord& word);
Json to_json(const Interval& iv);
Json to_json(const WeakConeConstants& c);
Json to_json(const StrongConeConstants& c);
Json to_json(const ConstantsReport& report);
Json to_json(const CheckReport& report);
Json to_json(const SearchResult& result);
Json to_json(const TransversalityReport& report);
Json to_json(const SplittingResult& result);
Json to_json(const BirkhoffBoundaryData& data);
Json to_json(const CombinatoricsRow& row);
Json to_json(const FixtureReport& report);

/// Reads a word written by to_json. Throws ConfigError on malformed input.
CocycleWord word_from_json(const Json& j);

/// Writes `content` to `path` through a temporary file in the same directory followed by
/// a rename, so readers never observe a partial report. Throws ConfigError on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace anosov
