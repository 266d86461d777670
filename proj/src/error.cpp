#include <cpt/error.hpp>

namespace cpt {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::DegenerateReduction: return "DegenerateReduction";
    case ErrorKind::ZeroDrive: return "ZeroDrive";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::FitDegenerate: return "FitDegenerate";
    case ErrorKind::NoZeroInWindow: return "NoZeroInWindow";
    case ErrorKind::NoRealRootInWindow: return "NoRealRootInWindow";
    case ErrorKind::PolynomialIllConditioned: return "PolynomialIllConditioned";
    case ErrorKind::NoExtremum: return "NoExtremum";
    case ErrorKind::ResonanceAbsent: return "ResonanceAbsent";
    case ErrorKind::FitIllConditioned: return "FitIllConditioned";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}
