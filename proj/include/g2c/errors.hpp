#pragma once

#include <stdexcept>
#include <string>

namespace g2c {

// Exit-code mapping used by the CLI: input_error -> 2, math_refusal -> 3,
// internal_error -> 4.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct math_refusal : std::runtime_error {
    explicit math_refusal(const std::string& what) : std::runtime_error(what) {}
};

struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace g2c
