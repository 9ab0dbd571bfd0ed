#pragma once

#include <stdexcept>
#include <string>

namespace nmc {

// Bad parameters or malformed input; the CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A randomized construction could not be realized; exit code 3.
struct BuildError : std::runtime_error {
    explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

// File/serialization trouble; exit code 4.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nmc
