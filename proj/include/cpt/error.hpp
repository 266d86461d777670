// Error types shared by the cpt-shift library.

#ifndef CPT_ERROR_HPP
#define CPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cpt {

enum class ErrorKind
{
    InvalidParams,
    SingularSystem,
    IllConditioned,
    StepTooLarge,
    DegenerateReduction,
    ZeroDrive,
    Unsupported,
    FitDegenerate,
    NoZeroInWindow,
    NoRealRootInWindow,
    PolynomialIllConditioned,
    NoExtremum,
    ResonanceAbsent,
    FitIllConditioned,
    Config,
    Io
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          m_kind(kind)
    {
    }

    ErrorKind kind() const { return m_kind; }

private:
    ErrorKind m_kind;
};

}

#endif
