#include "commlab/errors.hpp"

namespace commlab {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::io: return 1;
        case ErrorKind::parse: return 2;
        case ErrorKind::validation: return 2;
        case ErrorKind::undefined_math: return 3;
    }
    return 1;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(ErrorKind::parse, line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

}  // namespace commlab
