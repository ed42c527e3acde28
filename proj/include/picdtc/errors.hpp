#pragma once

#include <stdexcept>
#include <string>

namespace picdtc {

// Invalid octal text or malformed numeric input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated configuration invariant (polynomial degrees, divisibility, ranges).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Contradictory channel knowledge. Impossible on a true erasure channel, so
// it signals corrupted input or a harness bug.
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed serialized stream; the message names the byte offset.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine failed to reach its tolerance.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace picdtc
