#pragma once

#include <stdexcept>
#include <string>

namespace qhom {

// Error kinds map onto the CLI exit codes.
enum class ErrorKind {
    parse = 2,       // malformed input text
    invariant = 3,   // a structural invariant failed to hold
    resource = 4,    // an explicit budget was exhausted
    inconclusive = 5 // certainty was requested but not reached
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

struct ParseError : Error {
    int line = 0, col = 0;
    ParseError(int line_, int col_, const std::string& msg)
        : Error(ErrorKind::parse,
                "parse error at line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct InvariantError : Error {
    explicit InvariantError(const std::string& msg) : Error(ErrorKind::invariant, msg) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error(ErrorKind::resource, msg) {}
};

} // namespace qhom
