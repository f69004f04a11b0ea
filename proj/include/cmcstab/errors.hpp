#pragma once

#include <stdexcept>
#include <string>

namespace cmcstab {

/// Requested mean curvature lies outside the existence range of rotational
/// CMC spheres for the given ambient space. The message names the threshold.
class NoSuchSphereError : public std::domain_error {
 public:
  explicit NoSuchSphereError(const std::string& what) : std::domain_error(what) {}
};

/// A spectral result could not be certified (e.g. the mode cutoff m_max is
/// too small to pin down the second eigenvalue).
class CertificationError : public std::runtime_error {
 public:
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

/// A hypothesis of the volume-constrained stability criterion fails beyond
/// numerical tolerance. Carries the measured quantities.
class HypothesisViolationError : public std::runtime_error {
 public:
  HypothesisViolationError(const std::string& what, double lambda1, double lambda2)
      : std::runtime_error(what), lambda1(lambda1), lambda2(lambda2) {}
  double lambda1;
  double lambda2;
};

/// An iterative numerical procedure failed to converge or produced an
/// inconsistent result. The message carries diagnostics.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmcstab
