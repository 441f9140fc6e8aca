#pragma once

#include <stdexcept>
#include <string>

namespace ccem {

// Exit-code categories used by the CLI.
enum class ErrorKind {
    Validation = 1,     // malformed or inconsistent input data
    NoSolution = 2,     // no admissible solution for the given case
    Tolerance  = 3,     // a numeric check exceeded its tolerance
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}
    ErrorKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define CCEM_DEFINE_ERROR(Name, Kind)                                        \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what)                               \
            : Error(ErrorKind::Kind, #Name, what) {}                         \
    }

CCEM_DEFINE_ERROR(NonUnitFirstCharge, Validation);
CCEM_DEFINE_ERROR(ZeroCharge, Validation);
CCEM_DEFINE_ERROR(FirstFactorNotProjective, Validation);
CCEM_DEFINE_ERROR(BadExternal, Validation);
CCEM_DEFINE_ERROR(BadConfig, Validation);
CCEM_DEFINE_ERROR(NoAdmissibleCase, NoSolution);
CCEM_DEFINE_ERROR(NegativeDiscriminant, NoSolution);
CCEM_DEFINE_ERROR(RestrictionViolated, NoSolution);
CCEM_DEFINE_ERROR(NotNegative, NoSolution);
CCEM_DEFINE_ERROR(NotExact, NoSolution);
CCEM_DEFINE_ERROR(OutOfDomain, Validation);
CCEM_DEFINE_ERROR(WrongDimension, Validation);
CCEM_DEFINE_ERROR(WrongParity, Validation);
CCEM_DEFINE_ERROR(LogTermPresent, Tolerance);
CCEM_DEFINE_ERROR(QuadratureFailure, Tolerance);
CCEM_DEFINE_ERROR(ConvergenceFailure, Tolerance);
CCEM_DEFINE_ERROR(SeriesBlowup, Tolerance);

#undef CCEM_DEFINE_ERROR

} // namespace ccem
