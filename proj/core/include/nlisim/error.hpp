#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nli {

/// Exception carrying a stable machine-readable kind tag next to the
/// human-readable message. The CLI maps the kind into its JSON diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
    throw Error(std::move(kind), message);
}

}  // namespace nli
