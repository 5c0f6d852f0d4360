#ifndef SYNCHECK_ERRORS_HPP
#define SYNCHECK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace syncheck {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed protocol description (duplicate letter, self-loop channel,
// foreign action, unknown state, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Text input that does not follow the file grammar. Line numbers are 1-based;
// line 0 means "no location".
struct ParseError : Error {
    ParseError(int line_, const std::string& what_)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_ : what_),
          line(line_) {}
    int line = 0;
};

// step() on an action that is not enabled in the given configuration.
struct NotEnabledError : Error {
    using Error::Error;
};

// Exploration hit the configured state ceiling.
struct StateLimitError : Error {
    using Error::Error;
};

// An operation was invoked outside its stated precondition
// (e.g. ring-only decision procedures on a non-ring topology).
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace syncheck

#endif
