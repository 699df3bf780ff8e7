#pragma once

#include <stdexcept>
#include <string>

namespace amerta {

/// Bad generator / run configuration (grid too small, yield range outside (0, Q], ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed separator sequence or task coverage problem.
class EncodingError : public std::runtime_error {
public:
    EncodingError(const std::string& what, int task_id = 0)
        : std::runtime_error(what), task_id_(task_id) {}

    int task_id() const noexcept { return task_id_; }

private:
    int task_id_;
};

/// A route handed to the simulator violates the load capacity.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Some task cannot be served even by a robot leaving the depot fully charged.
class InfeasibleInstance : public std::runtime_error {
public:
    InfeasibleInstance(const std::string& what, int task_id)
        : std::runtime_error(what), task_id_(task_id) {}

    int task_id() const noexcept { return task_id_; }

private:
    int task_id_;
};

} // namespace amerta
