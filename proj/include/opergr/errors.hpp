#pragma once

#include <stdexcept>
#include <string>

namespace opergr {

// Violated preconditions map to CLI exit code 3, internal invariant breaches
// to 4 and parse errors to 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

#define OPERGR_PRECONDITION_ERROR(Name)                                        \
    class Name : public PreconditionError {                                    \
    public:                                                                    \
        explicit Name(const std::string &what) : PreconditionError(#Name ": " + what) {} \
    }

OPERGR_PRECONDITION_ERROR(PoleOverflow);
OPERGR_PRECONDITION_ERROR(NotInvertible);
OPERGR_PRECONDITION_ERROR(TailOverflow);
OPERGR_PRECONDITION_ERROR(NotMonic);
OPERGR_PRECONDITION_ERROR(BadArgument);
OPERGR_PRECONDITION_ERROR(BadMiuraInput);
OPERGR_PRECONDITION_ERROR(NotOperForm);
OPERGR_PRECONDITION_ERROR(WindowOverflow);
OPERGR_PRECONDITION_ERROR(DegenerateFrame);
OPERGR_PRECONDITION_ERROR(ChargeMismatch);
OPERGR_PRECONDITION_ERROR(SingularPair);
OPERGR_PRECONDITION_ERROR(NotCommuting);
OPERGR_PRECONDITION_ERROR(Unsupported);
OPERGR_PRECONDITION_ERROR(TruncationExhausted);

#undef OPERGR_PRECONDITION_ERROR

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string &msg)
        : Error("ParseError at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line_(line), col_(col)
    {
    }
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

/// Well-formed text that does not fit an input schema; exit code 2 like a parse error.
class InputError : public Error {
public:
    explicit InputError(const std::string &what) : Error("InputError: " + what) {}
};

} // namespace opergr
