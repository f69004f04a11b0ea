#pragma once

#include <json.hpp>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cmcstab {

/// Settings in which a genus bound for compact stable CMC surfaces is
/// evaluated: a simply connected conformally flat ambient 3-manifold with
/// nonnegative Ricci or scalar curvature, or one of the two product spaces.
enum class Scenario {
  ConformallyFlatRicciNonneg,
  ConformallyFlatScalarNonneg,
  H2xR,
  S2xR,
};

std::string to_string(Scenario scenario);

enum class CurvatureAssumption { RicciNonneg, ScalarNonneg };

/// The three right-hand sides of the genus inequality chain, as exact
/// integer multiples of pi (value = coefficient * pi). No floating point
/// enters their evaluation.
struct RhsValues {
  long long rhs_holo1;  // 8 (2 - g + floor((g+1)/2))
  long long rhs_g23;    // 8 (1 - g + floor((g+1)/2))
  long long rhs_neg;    // 8 (    - g + floor((g+1)/2))
};

/// One applied inequality: which bound, at which genus, what stands on the
/// left, and the right-hand side in units of pi. Re-evaluating the recorded
/// rows reproduces the reported genus bound.
struct InequalityStep {
  std::string id;
  int genus = 0;
  std::string lhs;
  long long rhs_pi = 0;
};

struct GenusBoundReport {
  enum class Kind { MaxGenus, SphereOnly, Nonexistence };

  Scenario scenario = Scenario::H2xR;
  /// Mean curvature for the product-space scenarios, NaN otherwise.
  double H = std::numeric_limits<double>::quiet_NaN();
  /// Embeddedness assumption where one was supplied; empty when the bound
  /// does not condition on it.
  std::optional<bool> embedded;
  Kind kind = Kind::MaxGenus;
  /// Valid when kind == MaxGenus; always within {0, 1, 2, 3}.
  int max_genus = 0;
  /// Set when the input mean curvature matched the threshold 1/sqrt(3)
  /// within 1e-12, where the bound comes from an equality analysis that
  /// floating-point inputs cannot otherwise reach.
  bool exact_threshold = false;
  std::vector<InequalityStep> inequality_trace;
  std::string theorem_case;
};

/// Degree bound for the induced holomorphic map on a genus-g surface:
/// 1 + floor((g+1)/2). Throws std::invalid_argument for g < 0.
int degree_bound(int g);

/// Exact right-hand sides of the inequality chain at genus g >= 0.
RhsValues rhs_values(int g);

/// Genus bound for compact stable CMC surfaces in a simply connected
/// conformally flat 3-manifold under the stated curvature assumption.
GenusBoundReport genus_bound_conformally_flat(CurvatureAssumption assumption, bool embedded);

/// Genus bound for compact stable CMC surfaces of mean curvature H in
/// H2xR: nonexistence at H <= 1/2, genus <= 3 on (1/2, 1/sqrt(3)) (an
/// extension of the chain, labeled as such), genus <= 2 at exactly
/// 1/sqrt(3), genus <= 1 on (1/sqrt(3), 1/sqrt(2)), rotational spheres
/// only from 1/sqrt(2) on. Throws std::invalid_argument for H <= 0.
GenusBoundReport genus_bound_h2r(double H);

/// The two-alternative classification of compact stable CMC surfaces in
/// S2xR, with the critical mean curvature evaluated from the closed-form
/// area derivative.
struct S2rStableClassification {
  double critical_H = 0.0;
  std::vector<std::string> alternatives;
  std::string corollary;
};

S2rStableClassification classify_s2r_compact_stable();

void to_json(nlohmann::json& j, const InequalityStep& step);
void to_json(nlohmann::json& j, const GenusBoundReport& report);
void to_json(nlohmann::json& j, const S2rStableClassification& classification);

}  // namespace cmcstab
