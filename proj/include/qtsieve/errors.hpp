#pragma once

#include <stdexcept>
#include <string>

namespace qtsieve {

// Thrown when an enumeration / matrix / group size exceeds its cap.
// The CLI maps this to exit code 4.
class resource_cap_error : public std::runtime_error {
  public:
    explicit resource_cap_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact identity from the proofs failed. Carries a witness description;
// the CLI maps this to exit code 3.
class identity_failure : public std::runtime_error {
  public:
    explicit identity_failure(const std::string& what) : std::runtime_error(what) {}
};

// Numeric iteration did not converge (power iteration cap).
class numeric_error : public std::runtime_error {
  public:
    numeric_error(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

} // namespace qtsieve
