#include "refl/error.hpp"

namespace refl {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Input: return 2;
        case ErrorKind::Numerical: return 3;
        case ErrorKind::Resonance: return 4;
    }
    return 3;
}

}  // namespace refl
