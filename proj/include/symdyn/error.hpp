#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Every library failure is a symdyn::Error whose message starts with the
// module name, e.g. "shiftspace: empty SFT".
class Error : public std::runtime_error {
public:
    Error(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(module) {}
    const std::string& module() const { return module_; }

private:
    std::string module_;
};

#define SYMDYN_ERROR(Name)                                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        using Error::Error;                                                  \
    }

SYMDYN_ERROR(EmptySftError);
SYMDYN_ERROR(NotMixingError);
SYMDYN_ERROR(RangeError);
SYMDYN_ERROR(PreconditionError);
SYMDYN_ERROR(ReducibleError);
SYMDYN_ERROR(NoConnectorError);
SYMDYN_ERROR(NoMarkerError);
SYMDYN_ERROR(MarkerNotFoundError);
SYMDYN_ERROR(NoReturnError);
SYMDYN_ERROR(CapacityError);
SYMDYN_ERROR(HallDegreeError);
SYMDYN_ERROR(InfeasibleError);
SYMDYN_ERROR(InseparableError);
SYMDYN_ERROR(CertificationError);
SYMDYN_ERROR(InternalError);

#undef SYMDYN_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, int col, const std::string& what)
        : Error("parse", source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + what),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

}  // namespace symdyn
