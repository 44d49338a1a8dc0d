#ifndef HOINET_ERRORS_HPP
#define HOINET_ERRORS_HPP

#include <stdexcept>

namespace hoinet {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A factorization of a covariance matrix hit a non-positive pivot.
struct NotPositiveDefinite : Error { using Error::Error; };

/// Spectral radius of the system matrix is at or above the stability limit.
struct UnstableSystem : Error { using Error::Error; };

/// A linear system was numerically singular or too ill-conditioned to trust.
struct SingularSolve : Error { using Error::Error; };

/// An iterative scheme exhausted its iteration budget.
struct NonConvergence : Error { using Error::Error; };

/// Regression design matrix is rank deficient (collinear or constant columns).
struct RankDeficientRegressors : Error { using Error::Error; };

/// A series column has no variance to normalize by.
struct ZeroVariance : Error { using Error::Error; };

/// Values passed together do not have consistent dimensions.
struct DimensionMismatch : Error { using Error::Error; };

/// An argument or configuration value is outside its allowed range.
struct InvalidArgument : Error { using Error::Error; };

/// A file could not be read, written, or parsed.
struct IoError : Error { using Error::Error; };

}  // namespace hoinet

#endif
