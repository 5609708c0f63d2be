#ifndef TDLC_SCALE_HPP
#define TDLC_SCALE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tdlc/models.hpp"
#include "tdlc/portrait.hpp"

namespace tdlc {

// Sizes of the suborbits |(alpha g^n) G_alpha| for n = 0..N.
struct GrowthSequence {
  std::vector<std::uint64_t> sizes;  // sizes[0] = 1
};

// Orbit sizes along the powers of a portrait, measured from the ball root.
GrowthSequence orbit_growth(const GroupModel& m, const TreeAutomorphism& t,
                            int steps, int radius);
// Oracle variant: g is an element of the finite group of a FiniteOracle.
GrowthSequence orbit_growth_oracle(const GroupModel& m, const Perm& g, int steps);

struct ScaleEstimate {
  std::uint64_t value = 1;
  bool converged = false;
  int window = 3;
};

// Ratio-window estimate: converged when the last `window` consecutive
// quotients agree (integrally); a flat window detects the bounded case with
// value 1. No extrapolation beyond the computed sizes.
ScaleEstimate scale_estimate(const GrowthSequence& s, int window = 3);

struct TidyCertificate {
  std::uint64_t p = 1;  // |U : U cap g^{-1} U g|
  std::uint64_t q = 1;  // |U : U cap g U g^{-1}|
  bool coprime = false;
  std::uint64_t scale = 0;                    // = p when coprime
  bool highly_arc_transitive_digraph = false;  // the coprime arc-orbit digraph
};

// Certificate from the two suborbit indices of an arc class of the model:
// p is the orbit size of the class representative, q of its reverse.
TidyCertificate tidy_coprime_certificate(const GroupModel& m, int radius,
                                         int arc_class = 0);
// Oracle variant for an explicit group element.
TidyCertificate tidy_coprime_certificate_oracle(const GroupModel& m, const Perm& g);

struct QuotientScaleCheck {
  GrowthSequence product_growth;
  GrowthSequence quotient_growth;
  ScaleEstimate product_scale;
  ScaleEstimate quotient_scale;
  bool equal = false;
};

// For a ProductWithFinite model: growth of (base translation, finite factor
// step) in the product action versus the action on the orbits of the compact
// normal factor.
QuotientScaleCheck quotient_scale_check(const GroupModel& product_model,
                                        int translation_length, int steps,
                                        int radius, int window = 3);

// Largest prime dividing any converged scale sample, plus one; 0 when every
// sample is 1.
std::uint64_t md_lower_bound_scale(const std::vector<ScaleEstimate>& samples);

}  // namespace tdlc

#endif  // TDLC_SCALE_HPP
