// Brute-force oracles used by the tests. Everything here is deliberately
// independent of the stabilizer-chain machinery it checks.
#ifndef TDLC_TESTS_ORACLES_HPP
#define TDLC_TESTS_ORACLES_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "tdlc/perm.hpp"
#include "tdlc/perm_group.hpp"
#include "tdlc/qlattice.hpp"

namespace tdlc_tests {

// Every element of the group by plain closure of the generator set.
inline std::vector<tdlc::Perm> brute_force_elements(const tdlc::PermGroup& g) {
  std::set<tdlc::Perm> seen;
  std::vector<tdlc::Perm> out{tdlc::Perm(g.degree())};
  seen.insert(out[0]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : g.generators()) {
      tdlc::Perm next = out[i] * s;
      if (seen.insert(next).second) out.push_back(next);
    }
  }
  return out;
}

inline std::uint64_t brute_force_order(const tdlc::PermGroup& g) {
  return brute_force_elements(g).size();
}

// Order of the point stabilizer by filtering the element list.
inline std::uint64_t brute_force_stabilizer_order(const tdlc::PermGroup& g, int p) {
  std::uint64_t count = 0;
  for (const auto& e : brute_force_elements(g)) {
    if (e[p] == p) ++count;
  }
  return count;
}

// Least n such that the symmetric group S_n has an element of order divisible
// by the prime p (equivalently: contains C_p as a subquotient).
inline int brute_force_min_symmetric_degree_for_prime(int p) {
  for (int n = 1; n <= p; ++n) {
    auto elems = brute_force_elements(tdlc::PermGroup::symmetric(n));
    for (const auto& e : elems) {
      // order of e divisible by p?
      tdlc::Perm power = e;
      int ord = 1;
      while (!power.is_identity()) {
        power = power * e;
        ++ord;
      }
      if (ord % p == 0) return n;
    }
  }
  return p;
}

// Exhaustive minimal generating cost of a lattice: plain enumeration over
// multisets of fractions with total cost at most `cap`, no pruning.
inline std::uint64_t brute_force_min_cost(const tdlc::QPlusLattice& target,
                                          std::uint64_t cap) {
  std::vector<tdlc::PositiveRational> fractions;
  for (std::uint64_t p = 1; p + 1 <= cap; ++p) {
    for (std::uint64_t q = 1; p + q <= cap; ++q) {
      auto r = tdlc::PositiveRational::from_fraction(p, q);
      if (!r.is_one()) fractions.push_back(r);
    }
  }
  std::uint64_t best = UINT64_MAX;
  std::vector<tdlc::PositiveRational> chosen;
  auto rec = [&](auto&& self, std::size_t start, std::uint64_t cost) -> void {
    if (cost > cap) return;
    if (!chosen.empty() && tdlc::QPlusLattice::generated_by(chosen) == target) {
      best = std::min(best, cost);
    }
    for (std::size_t i = start; i < fractions.size(); ++i) {
      std::uint64_t c = fractions[i].cost();
      if (cost + c > cap) continue;
      chosen.push_back(fractions[i]);
      self(self, i + 1, cost + c);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace tdlc_tests

#endif
