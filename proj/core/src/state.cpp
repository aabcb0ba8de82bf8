#include "qdrive/state.hpp"

#include <cmath>

#include "qdrive/errors.hpp"

namespace qdrive {

QuantumState QuantumState::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) {
        throw invalid_parameter("cannot normalize the zero state");
    }
    return {c0 / n, c1 / n};
}

}  // namespace qdrive
