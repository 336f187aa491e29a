#pragma once

#include <stdexcept>

namespace asymtun {

/// Invalid model parameters, grid specs, or other rejected inputs.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A matrix that was required to be square is not.
struct NonSquareError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Eigenvalue gap below the degeneracy threshold; biorthogonal
/// normalization would amplify roundoff beyond usable accuracy.
struct DegenerateSpectrumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Norm factor is not real positive; renormalization is impossible.
struct NonPositiveNormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integrator step too coarse to resolve the oscillation period.
struct StepTooLargeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Averaging window shorter than the required number of periods.
struct WindowTooShortError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Output file could not be opened or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace asymtun
