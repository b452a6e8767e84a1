#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace laughtrack {

// Base for every error the engine reports on purpose. Anything else escaping
// a call is an internal fault.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input rejected by a pipeline stage. `stage` is the module name
// ("ingest", "lexicon", "context-graph", ...); `line` is 1-based when the
// rejection points at a line of an input document.
class ValidationError : public Error {
public:
    ValidationError(std::string stage, const std::string& message,
                    std::optional<std::size_t> line = std::nullopt);

    const std::string& stage() const noexcept { return stage_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    // Message without the "stage: " / "line N: " decoration.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string stage_;
    std::string detail_;
    std::optional<std::size_t> line_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

// Resource existed once but is no longer retained (e.g. audio dropped).
class Gone : public Error {
public:
    using Error::Error;
};

}  // namespace laughtrack
