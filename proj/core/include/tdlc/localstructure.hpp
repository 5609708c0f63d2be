#ifndef TDLC_LOCALSTRUCTURE_HPP
#define TDLC_LOCALSTRUCTURE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tdlc/graph.hpp"
#include "tdlc/models.hpp"
#include "tdlc/perm_group.hpp"

namespace tdlc {

// Increasing subgraph exhaustion of a ball: step 0 is the root alone, step i
// adjoins the neighbourhood of the i-th pivot. Pivots lie in the previous
// subgraph and have a neighbour outside it; together they cover the ball.
struct Exhaustion {
  std::vector<int> pivots;
  std::vector<std::vector<int>> cumulative_vertices;  // index i = V(Gamma_i)
  std::vector<std::vector<int>> new_vertices;         // added at step i (1-based)
};

// Deterministic BFS pivot order.
Exhaustion build_exhaustion(const BallGraph& ball);
// Same pivots with each pivot's new neighbours adjoined in reverse order,
// and pivots taken in reversed order within each depth layer.
Exhaustion build_exhaustion_alternate(const BallGraph& ball);

// Step groups: the pointwise stabilizer of Gamma_{i-1} acting on the new
// vertices of step i, with the kernel quotient taken (a faithful image on
// at most the canonical degree many points).
std::vector<PermGroup> exhaustion_factors(const ModelRealization& R,
                                          const Exhaustion& e);

struct SimpleContentReport {
  std::vector<FactorMultiset> step_factors;
  std::set<SimpleId> stable_factors;  // in every step from the second on
  std::set<std::uint64_t> primes;     // dividing the stable factor orders
  int depth = 0;
  int steps = 0;
};

SimpleContentReport local_simple_content(const GroupModel& m, int depth,
                                         std::uint64_t order_bound = 10000000);

// Degree bound from the stable simple content: one more than the least n
// such that S_n contains every stable factor as a subquotient. Empty content
// gives 1; unidentified factors give no value.
std::optional<int> md_lower_bound_lsc(const SimpleContentReport& r);

// Degree bound from the local prime content: largest stable prime plus one;
// 0 when the prime set is empty (no information).
int md_lower_bound_prime(const SimpleContentReport& r);

enum class DiscretenessVerdict { Regular, FreeOnArcs, Inconclusive };
std::string to_string(DiscretenessVerdict v);

// Trivial local action forces a regular induced action on the graph; a free
// local action forces a free action on arcs.
DiscretenessVerdict local_action_discreteness(const PermGroup& local_action);

struct QuotientDegreeCheck {
  int degree_before = 0;
  int degree_after = 0;
  // pair of distinct vertices at distance <= 2 in one class, when one exists
  std::optional<std::pair<int, int>> witness;
};

// Degree comparison for a quotient by a vertex partition: the degree can
// only drop, and it is preserved exactly when no two vertices at distance
// at most 2 share a class.
QuotientDegreeCheck quotient_degree_check(const FiniteGraph& g, const QuotientMap& q);

}  // namespace tdlc

#endif  // TDLC_LOCALSTRUCTURE_HPP
