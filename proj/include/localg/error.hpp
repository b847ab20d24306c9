#pragma once

#include <stdexcept>
#include <string>

namespace localg {

/// Every failed precondition or malformed input is reported through this type.
/// `kind` is a stable machine-readable tag; `message` names the violated rule.
struct Error : std::runtime_error {
    std::string kind;

    Error(std::string k, const std::string& msg)
        : std::runtime_error(msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
    throw Error(kind, msg);
}

// Tags used across the library.
//   "parse"         malformed textual/JSON input
//   "semantic"      well-formed input violating a document invariant
//   "ring-mismatch" operands live over different rings
//   "shape"         matrix/complex dimension mismatch
//   "non-unit"      inversion of a non-invertible element
//   "sigma"         sigma-set membership or validation failure
//   "singular"      linear system has no (unique) solution where one is required
//   "unsupported"   operation outside the implemented backends
//   "bound"         configured search bound exceeded

} // namespace localg
