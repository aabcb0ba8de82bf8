#ifndef QDRIVE_ERRORS_HPP
#define QDRIVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdrive {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_parameter : error {
    using error::error;
};

// tau (or another bounded argument) outside its valid range
struct domain_error : error {
    using error::error;
};

// Gamma = omega = 0: no eigenbasis is defined
struct degenerate_hamiltonian : error {
    using error::error;
};

struct derivative_unavailable : error {
    using error::error;
};

// superadiabatic transform applied where omega(tau) = 0
struct singular_transformation : error {
    using error::error;
};

// a fidelity search could not bracket its target
struct non_bracketable : error {
    using error::error;
};

// grid-refinement check failed; carries both estimates
struct non_convergence : error {
    non_convergence(const std::string& msg, double coarse_value, double fine_value)
        : error(msg), coarse(coarse_value), fine(fine_value) {}
    double coarse;
    double fine;
};

}  // namespace qdrive

#endif
