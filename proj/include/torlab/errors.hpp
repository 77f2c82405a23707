//
// torlab/errors.hpp -- exception types shared by all modules
//
#pragma once

#include <stdexcept>
#include <string>

namespace torlab {

// Evaluation requested exactly on a singular abscissa of a spectral density.
struct SingularAbscissa : std::domain_error {
    explicit SingularAbscissa(const std::string& what) : std::domain_error(what) {}
};

struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct CovarianceNotPSD : std::runtime_error {
    explicit CovarianceNotPSD(const std::string& what) : std::runtime_error(what) {}
};

struct EigDidNotConverge : std::runtime_error {
    double worst_residual;
    explicit EigDidNotConverge(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), worst_residual(residual) {}
};

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& what) : std::runtime_error(what) {}
};

struct RootBracketError : std::runtime_error {
    explicit RootBracketError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torlab
