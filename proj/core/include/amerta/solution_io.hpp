#pragma once

#include "amerta/encoding.hpp"
#include "amerta/model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amerta {

/// {global_seq, robots:[{energy_kJ, time_s, charging_positions, executed}], objectives}.
/// Metrics are written only for evaluated solutions.
std::string solution_to_json(const Solution& solution, int indent = 2);

/// {"solutions": [...]} with one entry per solution.
std::string solutions_to_json(std::span<const Solution> solutions, int indent = 2);

/// Accepts a single solution document or a {"solutions": [...]} wrapper.
/// Only global_seq is read; metrics are recomputed by the caller.
/// Throws ConfigError on malformed JSON, EncodingError on a bad sequence.
std::vector<Solution> solutions_from_json(std::string_view text, const Instance& instance);

} // namespace amerta
