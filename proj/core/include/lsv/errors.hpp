#pragma once

#include <stdexcept>
#include <string>

namespace lsv {

// Requested model/operation combination is not implemented (e.g. a
// non-monotone local volatility where an inverse is needed).
class UnsupportedError : public std::logic_error {
public:
    explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lsv
