#include "basmajian/errors.hpp"

namespace basmajian {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParabolicOrElliptic: return "ParabolicOrElliptic";
        case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorKind::Diverging: return "Diverging";
        case ErrorKind::LostTrack: return "LostTrack";
        case ErrorKind::NonLoxodromic: return "NonLoxodromic";
        case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NoSignChange: return "NoSignChange";
    }
    return "Unknown";
}

}  // namespace basmajian
