#ifndef TDLC_PERM_GROUP_HPP
#define TDLC_PERM_GROUP_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/perm.hpp"

namespace tdlc {

using BigInt = boost::multiprecision::cpp_int;

// Identification tag for a finite simple group. Only cyclic and alternating
// groups are recognized; anything else is reported by its order.
struct SimpleId {
  enum class Kind { Cyclic, Alternating, Other };
  Kind kind;
  std::uint64_t param;  // prime, alternating degree, or order

  static SimpleId cyclic(std::uint64_t p) { return {Kind::Cyclic, p}; }
  static SimpleId alternating(std::uint64_t k) { return {Kind::Alternating, k}; }
  static SimpleId other(std::uint64_t order) { return {Kind::Other, order}; }

  std::uint64_t order() const;
  std::string name() const;

  friend bool operator<(const SimpleId& a, const SimpleId& b) {
    return std::tie(a.kind, a.param) < std::tie(b.kind, b.param);
  }
  friend bool operator==(const SimpleId& a, const SimpleId& b) {
    return a.kind == b.kind && a.param == b.param;
  }
};

using FactorMultiset = std::map<SimpleId, int>;

std::string to_string(const FactorMultiset& factors);

// Least n such that the given simple group is a subquotient of S_n:
// p for Cyclic(p), k for Alternating(k). Empty for Other.
std::optional<int> min_symmetric_subquotient_degree(const SimpleId& s);

// Stabilizer chain computed by a deterministic Schreier--Sims pass.
// The base starts with the caller-supplied hint (every hint point gets a
// level, even a redundant one), so pointwise stabilizers of hint prefixes
// can be read off the chain directly.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Perm>& gens,
                  const std::vector<int>& base_hint = {});

  BigInt order() const;
  bool contains(const Perm& g) const;
  // Generators of the subgroup fixing base()[0..k-1] pointwise.
  std::vector<Perm> stabilizer_gens(int k) const;
  const std::vector<int>& base() const { return base_; }
  int degree() const { return degree_; }

 private:
  struct Level {
    int point = -1;
    std::vector<Perm> gens;
    std::vector<int> orbit;
    std::vector<int> orbit_pos;   // point -> orbit index, -1 outside
    std::vector<Perm> transversal;  // u with point . u = orbit[i]
  };

  void recompute_orbit(int i);
  std::pair<Perm, int> strip(Perm g, int from) const;
  void schreier_sims(int i);
  void add_level(int point);

  int degree_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

// A finite permutation group given by generators on {0, ..., degree-1}.
// Immutable; the stabilizer chain is built lazily and shared.
class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(int degree) : degree_(degree) {}
  PermGroup(int degree, std::vector<Perm> generators);

  static PermGroup trivial(int degree) { return PermGroup(degree); }
  static PermGroup symmetric(int n);
  static PermGroup alternating(int n);
  static PermGroup cyclic_rotation(int n);  // <(0 1 ... n-1)>

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  bool has_generators() const { return !generators_.empty(); }

  std::vector<int> orbit(int p) const;
  std::vector<std::vector<int>> orbits() const;
  BigInt order() const;
  bool is_trivial() const { return order() == 1; }
  bool contains(const Perm& g) const;
  bool is_transitive() const;

  // Schreier generators (reduced) of the stabilizer of p.
  PermGroup point_stabilizer(int p) const;
  // Pointwise stabilizer of a vertex set, in the given order.
  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;

  // Image of the restriction to an invariant subset (points relabelled
  // 0..|subset|-1 in the given order) plus faithfulness of the restriction.
  struct InducedAction;
  InducedAction induced_action(const std::vector<int>& subset) const;

  PermGroup normal_closure(const std::vector<Perm>& elems) const;

  // All elements, aborting with an exception past `limit`.
  std::vector<Perm> elements(std::uint64_t limit) const;

  // Multiset of composition factors; throws if order() exceeds order_bound.
  FactorMultiset composition_factors(std::uint64_t order_bound = 10000000) const;

  const StabilizerChain& chain() const;

 private:
  int degree_ = 0;
  std::vector<Perm> generators_;
  mutable std::shared_ptr<StabilizerChain> chain_;
};

struct PermGroup::InducedAction {
  PermGroup image;
  bool kernel_is_trivial;
};

// Construction of a coset graph: vertices are the right cosets of `sub` in
// `group`, edges the union of the group orbits of {U, U g} for g in elems.
// Returned as (edges on coset indices, coset count, index of the coset U).
struct CosetGraphResult {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Perm> vertex_action;  // action of group generators on cosets
};
CosetGraphResult coset_graph(const PermGroup& group, const PermGroup& sub,
                             const std::vector<Perm>& elems);

// JSON round-trip for the group text format: {"points": n, "generators": [...]}.
std::string perm_group_to_json(const PermGroup& g);
PermGroup perm_group_from_json(const std::string& text);

}  // namespace tdlc

#endif  // TDLC_PERM_GROUP_HPP
