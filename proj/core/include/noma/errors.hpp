#pragma once

#include <stdexcept>
#include <string>

namespace noma {

// Bad user input: rejected config keys, out-of-range parameters, malformed
// files. The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A request outside the implemented model family (e.g. DPA closed forms with
// m != 1). Subtype of validation_error so generic handlers treat it as input.
class unsupported_error : public validation_error {
public:
    explicit unsupported_error(const std::string& what) : validation_error(what) {}
};

// Internal numerical contract broken (e.g. a closed form produced a value
// below -1e-12). The CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace noma
