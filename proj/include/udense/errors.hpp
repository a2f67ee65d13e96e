#pragma once

#include <stdexcept>
#include <string>

namespace udense {

// A requested object cannot be built from the given inputs (the inputs
// themselves are structurally valid, but the search or recursion they drive
// has no solution). The message names the offending piece.
struct construction_error : std::runtime_error {
    explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation gave up against a configured cap (index bound, step cap,
// allocation guard). The message reports how far it got.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace udense
