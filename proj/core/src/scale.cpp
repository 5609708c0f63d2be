#include "tdlc/scale.hpp"

#include <numeric>
#include <stdexcept>

namespace tdlc {

GrowthSequence orbit_growth(const GroupModel& m, const TreeAutomorphism& t,
                            int steps, int radius) {
  auto R = m.realize(radius);
  GrowthSequence out;
  int v = R->ball.root;
  out.sizes.push_back(1);
  for (int n = 1; n <= steps; ++n) {
    v = t.apply_power(v, 1);
    if (v < 0) {
      throw std::runtime_error("orbit_growth: portrait depth insufficient");
    }
    out.sizes.push_back(R->orbit_size_of_vertex(v));
  }
  return out;
}

GrowthSequence orbit_growth_oracle(const GroupModel& m, const Perm& g, int steps) {
  if (m.family() != ModelFamily::FiniteOracle) {
    throw std::invalid_argument("orbit_growth_oracle: needs a finite oracle model");
  }
  auto R = m.realize(0);
  GrowthSequence out;
  int v = R->ball.root;
  out.sizes.push_back(1);
  for (int n = 1; n <= steps; ++n) {
    v = g[v];
    out.sizes.push_back(R->orbit_size_of_vertex(v));
  }
  return out;
}

ScaleEstimate scale_estimate(const GrowthSequence& s, int window) {
  if (s.sizes.size() < 3) {
    throw std::invalid_argument("scale_estimate: need at least three sizes");
  }
  ScaleEstimate out;
  out.window = window;
  int n = static_cast<int>(s.sizes.size());
  if (n - 1 < window) return out;  // not enough ratios: not converged

  // last `window` consecutive quotients must agree exactly
  bool stable = true;
  for (int i = n - window; i + 1 < n && stable; ++i) {
    // sizes[i+1]/sizes[i] == sizes[n-1]/sizes[n-2], cross-multiplied
    stable = static_cast<unsigned long long>(s.sizes[i + 1]) * s.sizes[n - 2] ==
             static_cast<unsigned long long>(s.sizes[n - 1]) * s.sizes[i];
  }
  if (!stable) return out;
  if (s.sizes[n - 1] % s.sizes[n - 2] != 0) return out;  // non-integral ratio
  out.value = s.sizes[n - 1] / s.sizes[n - 2];
  out.converged = true;
  return out;
}

TidyCertificate tidy_coprime_certificate(const GroupModel& m, int radius,
                                         int arc_class) {
  auto R = m.realize(radius);
  if (arc_class < 0 || arc_class >= static_cast<int>(R->arc_classes.size())) {
    throw std::invalid_argument("tidy_coprime_certificate: bad arc class");
  }
  const auto& cls = R->arc_classes[arc_class];
  TidyCertificate cert;
  cert.p = R->orbit_size_of_vertex(cls.rep_target);
  cert.q = R->orbit_size_of_vertex(cls.reverse_target);
  cert.coprime = std::gcd(cert.p, cert.q) == 1;
  if (cert.coprime) {
    cert.scale = cert.p;
    cert.highly_arc_transitive_digraph = true;
  }
  return cert;
}

TidyCertificate tidy_coprime_certificate_oracle(const GroupModel& m, const Perm& g) {
  if (m.family() != ModelFamily::FiniteOracle) {
    throw std::invalid_argument("tidy_coprime_certificate_oracle: needs an oracle");
  }
  auto R = m.realize(0);
  TidyCertificate cert;
  cert.p = R->orbit_size_of_vertex(g[R->ball.root]);
  cert.q = R->orbit_size_of_vertex(g.inverse()[R->ball.root]);
  cert.coprime = std::gcd(cert.p, cert.q) == 1;
  if (cert.coprime) {
    cert.scale = cert.p;
    cert.highly_arc_transitive_digraph = true;
  }
  return cert;
}

QuotientScaleCheck quotient_scale_check(const GroupModel& product_model,
                                        int translation_length, int steps,
                                        int radius, int window) {
  if (product_model.family() != ModelFamily::ProductWithFinite) {
    throw std::invalid_argument("quotient_scale_check: needs a product_finite model");
  }
  const GroupModel* base = product_model.base_model();
  auto PR = product_model.realize(radius);
  auto BR = base->realize(radius);
  int m = PR->fibre_size;

  // base translation, stepped together with right translation by the first
  // non-identity element of the finite factor (when there is one)
  TreeAutomorphism t = TreeAutomorphism::axis_translation(*BR, translation_length);
  std::vector<Perm> felems = product_model.finite_group()->elements(100000);
  std::vector<int> fstep(m);
  {
    // position map of x -> x * felems[1]
    auto key_of = [](const Perm& p) {
      std::string s;
      for (int i : p.images()) {
        s += std::to_string(i);
        s += ',';
      }
      return s;
    };
    std::unordered_map<std::string, int> index_of;
    for (int x = 0; x < m; ++x) index_of[key_of(felems[x])] = x;
    const Perm& c = m >= 2 ? felems[1] : felems[0];
    for (int x = 0; x < m; ++x) fstep[x] = index_of.at(key_of(felems[x] * c));
  }

  QuotientScaleCheck out;
  out.product_growth.sizes.push_back(1);
  out.quotient_growth.sizes.push_back(1);
  int bv = BR->ball.root;
  int fx = 0;
  for (int n = 1; n <= steps; ++n) {
    bv = t.apply_power(bv, 1);
    if (bv < 0) throw std::runtime_error("quotient_scale_check: depth insufficient");
    fx = fstep[fx];
    out.product_growth.sizes.push_back(PR->orbit_size_of_vertex(bv * m + fx));
    // the quotient by the fibres is the base action
    out.quotient_growth.sizes.push_back(BR->orbit_size_of_vertex(bv));
  }
  out.product_scale = scale_estimate(out.product_growth, window);
  out.quotient_scale = scale_estimate(out.quotient_growth, window);
  if (!out.product_scale.converged || !out.quotient_scale.converged) {
    throw std::runtime_error("quotient_scale_check: estimates did not converge");
  }
  out.equal = out.product_scale.value == out.quotient_scale.value;
  return out;
}

std::uint64_t md_lower_bound_scale(const std::vector<ScaleEstimate>& samples) {
  std::uint64_t largest_prime = 0;
  for (const auto& s : samples) {
    if (!s.converged) {
      throw std::invalid_argument("md_lower_bound_scale: unconverged sample");
    }
    std::uint64_t v = s.value;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
      while (v % d == 0) {
        largest_prime = std::max(largest_prime, d);
        v /= d;
      }
    }
    if (v > 1) largest_prime = std::max(largest_prime, v);
  }
  return largest_prime == 0 ? 0 : largest_prime + 1;
}

}  // namespace tdlc
