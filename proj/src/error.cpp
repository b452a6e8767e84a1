#include "laughtrack/error.hpp"

namespace laughtrack {

namespace {

std::string decorate(const std::string& stage, const std::string& message,
                     std::optional<std::size_t> line) {
    std::string out = stage + ": ";
    if (line) out += "line " + std::to_string(*line) + ": ";
    return out + message;
}

}  // namespace

ValidationError::ValidationError(std::string stage, const std::string& message,
                                 std::optional<std::size_t> line)
    : Error(decorate(stage, message, line)),
      stage_(std::move(stage)),
      detail_(message),
      line_(line) {}

}  // namespace laughtrack
