#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "oscatter/radiating.hpp"
#include "oscatter/two_scale.hpp"

namespace oscatter {

using Json = nlohmann::json;

// FNV-1a over bytes; stable across runs and platforms.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(const Json& j);

Json to_json(const SlowGrid& g);
Json to_json(const SlowField& f);
Json to_json(const CellSpectrum& s);
Json to_json(const Amplitude& a);
Json to_json(const TwoScalePotential& q);
Json to_json(const AsymptoticSolution& sol);

SlowGrid grid_from_json(const Json& j);
SlowField field_from_json(const Json& j);
CellSpectrum spectrum_from_json(const Json& j);
Amplitude amplitude_from_json(const Json& j);
TwoScalePotential potential_from_json(const Json& j);
AsymptoticSolution solution_from_json(const Json& j);

// Cache key for an expansion: potential hash + energy + order + kind (+khat).
std::string expansion_cache_key(const AsymptoticSolution& sol);

}  // namespace oscatter
