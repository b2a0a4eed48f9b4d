#pragma once

#include <stdexcept>
#include <string>

namespace dof {

/// Unusable input: missing or malformed files, mismatched dimensions,
/// out-of-range configuration values. Maps to CLI exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The pipeline cannot proceed on otherwise well-formed inputs
/// (e.g. no salient pixels survive thresholding). Maps to CLI exit code 3.
class pipeline_error : public std::runtime_error {
public:
    explicit pipeline_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dof
