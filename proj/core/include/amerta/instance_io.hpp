#pragma once

#include "amerta/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace amerta {

struct InstanceWriteOptions {
    /// Write the full distance matrix instead of the "recompute" marker.
    bool embed_distances = false;
};

std::string instance_to_json(const Instance& instance, const InstanceWriteOptions& options = {});

/// Parses an instance document; "recompute" distances are rebuilt from the recorded mode.
/// Throws ConfigError on schema problems.
Instance instance_from_json(std::string_view text);

void save_instance(const Instance& instance, const std::filesystem::path& path,
                   const InstanceWriteOptions& options = {});
Instance load_instance(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace amerta
