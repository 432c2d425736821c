#pragma once

#include <stdexcept>
#include <string>

namespace scode {

enum class Errc {
    SumNotOne,
    NegativeProbability,
    DuplicateLabel,
    Empty,
    ExtensionTooLarge,
    BadRadix,
    EmptyInput,
    TooManySequences,
    BadOmega,
    AllZero,
    KraftViolation,
    ShapeMismatch,
    BadFamily,
    BadShape,
    UnknownSymbol,
    TrailingGarbage,
    UnknownPrefix,
    ParseError,
    LabelNotByte,
    IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace scode
