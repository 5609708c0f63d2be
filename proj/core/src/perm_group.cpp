#include "tdlc/perm_group.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace tdlc {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

std::uint64_t half_factorial(int k) {  // k!/2
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f / 2;
}

}  // namespace

std::uint64_t SimpleId::order() const {
  switch (kind) {
    case Kind::Cyclic:
      return param;
    case Kind::Alternating:
      return half_factorial(static_cast<int>(param));
    case Kind::Other:
      return param;
  }
  return 0;
}

std::string SimpleId::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Cyclic:
      out << 'C' << param;
      break;
    case Kind::Alternating:
      out << 'A' << param;
      break;
    case Kind::Other:
      out << "Other(" << param << ')';
      break;
  }
  return out.str();
}

std::string to_string(const FactorMultiset& factors) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [id, mult] : factors) {
    if (!first) out << ", ";
    first = false;
    out << id.name() << ':' << mult;
  }
  out << '}';
  return out.str();
}

std::optional<int> min_symmetric_subquotient_degree(const SimpleId& s) {
  switch (s.kind) {
    case SimpleId::Kind::Cyclic:
      return static_cast<int>(s.param);
    case SimpleId::Kind::Alternating:
      return static_cast<int>(s.param);
    case SimpleId::Kind::Other:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(int degree, const std::vector<Perm>& gens,
                                 const std::vector<int>& base_hint)
    : degree_(degree) {
  for (int p : base_hint) {
    if (p < 0 || p >= degree_) {
      throw std::invalid_argument("StabilizerChain: base point out of range");
    }
    if (std::find(base_.begin(), base_.end(), p) == base_.end()) add_level(p);
  }

  std::vector<Perm> clean;
  for (const Perm& g : gens) {
    if (g.degree() != degree_) {
      throw std::invalid_argument("StabilizerChain: generator degree mismatch");
    }
    if (!g.is_identity()) clean.push_back(g);
  }

  // Every generator must move some base point.
  for (const Perm& g : clean) {
    bool moves = false;
    for (int b : base_) {
      if (g[b] != b) {
        moves = true;
        break;
      }
    }
    if (!moves) {
      for (int p = 0; p < degree_; ++p) {
        if (g[p] != p) {
          add_level(p);
          break;
        }
      }
    }
  }

  // Distribute: a generator belongs to every level down to the first base
  // point it moves.
  for (const Perm& g : clean) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      levels_[i].gens.push_back(g);
      if (g[levels_[i].point] != levels_[i].point) break;
    }
  }

  for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) {
    schreier_sims(i);
  }
}

void StabilizerChain::add_level(int point) {
  Level lv;
  lv.point = point;
  lv.orbit_pos.assign(degree_, -1);
  base_.push_back(point);
  levels_.push_back(std::move(lv));
}

void StabilizerChain::recompute_orbit(int i) {
  Level& lv = levels_[i];
  lv.orbit.clear();
  lv.transversal.clear();
  std::fill(lv.orbit_pos.begin(), lv.orbit_pos.end(), -1);
  lv.orbit.push_back(lv.point);
  lv.orbit_pos[lv.point] = 0;
  lv.transversal.push_back(Perm(degree_));
  for (std::size_t idx = 0; idx < lv.orbit.size(); ++idx) {
    int p = lv.orbit[idx];
    for (const Perm& s : lv.gens) {
      int q = s[p];
      if (lv.orbit_pos[q] == -1) {
        lv.orbit_pos[q] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.transversal.push_back(lv.transversal[idx] * s);
      }
    }
  }
}

std::pair<Perm, int> StabilizerChain::strip(Perm g, int from) const {
  for (int l = from; l < static_cast<int>(levels_.size()); ++l) {
    if (g.is_identity()) return {g, static_cast<int>(levels_.size())};
    int x = g[levels_[l].point];
    int pos = levels_[l].orbit_pos[x];
    if (pos == -1) return {g, l};
    g = g * levels_[l].transversal[pos].inverse();
  }
  return {g, static_cast<int>(levels_.size())};
}

void StabilizerChain::schreier_sims(int i) {
  recompute_orbit(i);
  // levels_ may reallocate inside the recursion below, so index rather than
  // hold references; level i itself only ever gains deeper neighbours.
  for (std::size_t oi = 0; oi < levels_[i].orbit.size(); ++oi) {
    for (std::size_t si = 0; si < levels_[i].gens.size(); ++si) {
      int p = levels_[i].orbit[oi];
      Perm s = levels_[i].gens[si];
      int ps = s[p];
      Perm schreier = levels_[i].transversal[oi] * s *
                      levels_[i].transversal[levels_[i].orbit_pos[ps]].inverse();
      if (schreier.is_identity()) continue;
      auto [y, j] = strip(std::move(schreier), i + 1);
      if (y.is_identity()) continue;
      if (j == static_cast<int>(levels_.size())) {
        for (int q = 0; q < degree_; ++q) {
          if (y[q] != q) {
            add_level(q);
            break;
          }
        }
      }
      for (int l = i + 1; l <= j && l < static_cast<int>(levels_.size()); ++l) {
        levels_[l].gens.push_back(y);
      }
      for (int l = std::min(j, static_cast<int>(levels_.size()) - 1); l >= i + 1;
           --l) {
        schreier_sims(l);
      }
    }
  }
}

BigInt StabilizerChain::order() const {
  BigInt n = 1;
  for (const Level& lv : levels_) n *= static_cast<unsigned>(lv.orbit.size());
  return n;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [y, j] = strip(g, 0);
  (void)j;
  return y.is_identity();
}

std::vector<Perm> StabilizerChain::stabilizer_gens(int k) const {
  if (k < 0 || k > static_cast<int>(levels_.size())) {
    if (k >= static_cast<int>(levels_.size())) return {};
    throw std::invalid_argument("StabilizerChain: bad stabilizer depth");
  }
  if (k == static_cast<int>(levels_.size())) return {};
  std::vector<Perm> out;
  std::unordered_set<Perm, PermHash> seen;
  for (const Perm& g : levels_[k].gens) {
    if (g.is_identity()) continue;
    if (seen.insert(g).second) out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const Perm& g : generators_) {
    if (g.degree() != degree_) {
      throw std::invalid_argument("PermGroup: generator degree mismatch");
    }
  }
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    if (n >= 3) {
      std::vector<int> full(n);
      for (int i = 0; i < n; ++i) full[i] = i;
      gens.push_back(Perm::from_cycles(n, {full}));
    }
  }
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::alternating(int n) {
  std::vector<Perm> gens;
  if (n >= 3) {
    gens.push_back(Perm::from_cycles(n, {{0, 1, 2}}));
    if (n >= 4) {
      std::vector<int> cyc;
      if (n % 2 == 1) {
        for (int i = 0; i < n; ++i) cyc.push_back(i);
      } else {
        for (int i = 1; i < n; ++i) cyc.push_back(i);
      }
      gens.push_back(Perm::from_cycles(n, {cyc}));
    }
  }
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::cyclic_rotation(int n) {
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i;
  return PermGroup(n, {Perm::from_cycles(n, {full})});
}

const StabilizerChain& PermGroup::chain() const {
  if (!chain_) {
    chain_ = std::make_shared<StabilizerChain>(degree_, generators_);
  }
  return *chain_;
}

std::vector<int> PermGroup::orbit(int p) const {
  if (p < 0 || p >= degree_) {
    throw std::invalid_argument("PermGroup::orbit: point out of range");
  }
  std::vector<int> orb{p};
  std::vector<bool> seen(degree_, false);
  seen[p] = true;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (const Perm& g : generators_) {
      int q = g[orb[i]];
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  }
  return orb;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(degree_, false);
  for (int p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    auto orb = orbit(p);
    for (int q : orb) seen[q] = true;
    out.push_back(std::move(orb));
  }
  return out;
}

BigInt PermGroup::order() const { return chain().order(); }

bool PermGroup::contains(const Perm& g) const { return chain().contains(g); }

bool PermGroup::is_transitive() const {
  return degree_ == 0 || static_cast<int>(orbit(0).size()) == degree_;
}

PermGroup PermGroup::point_stabilizer(int p) const {
  if (p < 0 || p >= degree_) {
    throw std::invalid_argument("PermGroup::point_stabilizer: point out of range");
  }
  StabilizerChain chain(degree_, generators_, {p});
  return PermGroup(degree_, chain.stabilizer_gens(1));
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  std::vector<int> uniq;
  for (int p : points) {
    if (p < 0 || p >= degree_) {
      throw std::invalid_argument("PermGroup::pointwise_stabilizer: point out of range");
    }
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  }
  StabilizerChain chain(degree_, generators_, uniq);
  return PermGroup(degree_, chain.stabilizer_gens(static_cast<int>(uniq.size())));
}

PermGroup::InducedAction PermGroup::induced_action(const std::vector<int>& subset) const {
  std::vector<int> pos(degree_, -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    int p = subset[i];
    if (p < 0 || p >= degree_ || pos[p] != -1) {
      throw std::invalid_argument("PermGroup::induced_action: bad subset");
    }
    pos[p] = static_cast<int>(i);
  }
  std::vector<Perm> restricted;
  for (const Perm& g : generators_) {
    std::vector<int> img(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      int q = g[subset[i]];
      if (pos[q] == -1) {
        throw std::invalid_argument("PermGroup::induced_action: subset not invariant");
      }
      img[i] = pos[q];
    }
    Perm r(std::move(img));
    if (!r.is_identity()) restricted.push_back(std::move(r));
  }
  PermGroup image(static_cast<int>(subset.size()), std::move(restricted));
  bool faithful = pointwise_stabilizer(subset).order() == 1;
  return {std::move(image), faithful};
}

PermGroup PermGroup::normal_closure(const std::vector<Perm>& elems) const {
  std::vector<Perm> hgens;
  for (const Perm& e : elems) {
    if (e.degree() != degree_) {
      throw std::invalid_argument("PermGroup::normal_closure: degree mismatch");
    }
    if (!e.is_identity()) hgens.push_back(e);
  }
  auto chain = std::make_unique<StabilizerChain>(degree_, hgens);
  for (std::size_t i = 0; i < hgens.size(); ++i) {
    for (const Perm& s : generators_) {
      Perm c = s.inverse() * hgens[i] * s;
      if (!chain->contains(c)) {
        hgens.push_back(std::move(c));
        chain = std::make_unique<StabilizerChain>(degree_, hgens);
      }
    }
  }
  return PermGroup(degree_, std::move(hgens));
}

std::vector<Perm> PermGroup::elements(std::uint64_t limit) const {
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> out;
  out.push_back(Perm(degree_));
  seen.insert(out.back());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Perm& g : generators_) {
      Perm next = out[i] * g;
      if (seen.insert(next).second) {
        if (out.size() + 1 > limit) {
          throw std::runtime_error("PermGroup::elements: enumeration limit exceeded");
        }
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

namespace {

// Normal closure of a single element, aborting as soon as the closure order
// reaches `abort_at`. Returns the closure order, or nullopt when aborted.
std::optional<BigInt> bounded_closure_order(const PermGroup& g, const Perm& x,
                                            const BigInt& abort_at,
                                            std::vector<Perm>* gens_out) {
  std::vector<Perm> hgens{x};
  auto chain = std::make_unique<StabilizerChain>(g.degree(), hgens);
  if (chain->order() >= abort_at) return std::nullopt;
  for (std::size_t i = 0; i < hgens.size(); ++i) {
    for (const Perm& s : g.generators()) {
      Perm c = s.inverse() * hgens[i] * s;
      if (!chain->contains(c)) {
        hgens.push_back(std::move(c));
        chain = std::make_unique<StabilizerChain>(g.degree(), hgens);
        if (chain->order() >= abort_at) return std::nullopt;
      }
    }
  }
  if (gens_out) *gens_out = hgens;
  return chain->order();
}

// Right-coset action of g on cosets of the normal subgroup n.
PermGroup quotient_coset_action(const PermGroup& g, const PermGroup& n) {
  std::vector<Perm> reps{Perm(g.degree())};
  auto coset_index = [&](const Perm& x) -> int {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (n.contains(x * reps[i].inverse())) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Perm& s : g.generators()) {
      Perm c = reps[i] * s;
      if (coset_index(c) == -1) reps.push_back(std::move(c));
    }
  }
  int index = static_cast<int>(reps.size());
  std::vector<Perm> action;
  for (const Perm& s : g.generators()) {
    std::vector<int> img(index);
    for (int i = 0; i < index; ++i) img[i] = coset_index(reps[i] * s);
    Perm a(std::move(img));
    if (!a.is_identity()) action.push_back(std::move(a));
  }
  return PermGroup(index, std::move(action));
}

// Attempts to certify that a simple group of order k!/2 is Alternating(k) by
// exhibiting a faithful action on k points.
bool find_alternating_action(const PermGroup& g, std::uint64_t order, int k) {
  for (const auto& orb : g.orbits()) {
    if (static_cast<int>(orb.size()) != k) continue;
    auto induced = g.induced_action(orb);
    if (induced.kernel_is_trivial && induced.image.order() == order) return true;
  }
  // Search for an index-k subgroup generated by two random elements; its
  // coset action is then a faithful k-point action (the group is simple).
  std::uint64_t target = order / static_cast<std::uint64_t>(k);
  std::uint64_t enum_limit = 1u << 22;
  if (order > enum_limit) return false;
  std::vector<Perm> elems;
  try {
    elems = g.elements(order);
  } catch (const std::runtime_error&) {
    return false;
  }
  std::mt19937 rng(20210623);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    const Perm& a = elems[pick(rng)];
    const Perm& b = elems[pick(rng)];
    StabilizerChain sub(g.degree(), {a, b});
    if (sub.order() == target) return true;
  }
  return false;
}

SimpleId identify_simple(const PermGroup& g, std::uint64_t order) {
  if (is_prime_u64(order)) return SimpleId::cyclic(order);
  for (int k = 5; half_factorial(k) <= order; ++k) {
    if (half_factorial(k) == order) {
      if (find_alternating_action(g, order, k)) return SimpleId::alternating(k);
      break;
    }
  }
  return SimpleId::other(order);
}

void composition_factors_rec(const PermGroup& g, FactorMultiset& out) {
  BigInt ord_big = g.order();
  std::uint64_t n = ord_big.convert_to<std::uint64_t>();
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[SimpleId::cyclic(n)] += 1;
    return;
  }

  // Proper nontrivial normal subgroup of minimal order among normal closures
  // of single elements, scanning elements in breadth-first order.
  std::uint64_t scan_budget = 12000000ull / std::max(1, g.degree());
  if (n > scan_budget) {
    throw std::runtime_error(
        "composition_factors: group too large to scan for normal subgroups");
  }
  std::vector<Perm> elems = g.elements(n);
  BigInt best_order = ord_big;
  std::vector<Perm> best_gens;
  std::uint64_t floor_order = smallest_prime_factor(n);
  for (const Perm& x : elems) {
    if (x.is_identity()) continue;
    std::vector<Perm> gens;
    auto closure = bounded_closure_order(g, x, best_order, &gens);
    if (closure && *closure > 1 && *closure < best_order) {
      best_order = *closure;
      best_gens = std::move(gens);
      if (best_order == floor_order) break;
    }
  }

  if (best_gens.empty()) {
    out[identify_simple(g, n)] += 1;
    return;
  }
  PermGroup nsub(g.degree(), best_gens);
  composition_factors_rec(nsub, out);
  composition_factors_rec(quotient_coset_action(g, nsub), out);
}

}  // namespace

FactorMultiset PermGroup::composition_factors(std::uint64_t order_bound) const {
  if (order() > order_bound) {
    throw std::runtime_error("composition_factors: order bound exceeded");
  }
  FactorMultiset out;
  composition_factors_rec(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Coset graphs (vertices = right cosets, edges = G-orbits of {U, Ug})

CosetGraphResult coset_graph(const PermGroup& group, const PermGroup& sub,
                             const std::vector<Perm>& elems) {
  if (sub.degree() != group.degree()) {
    throw std::invalid_argument("coset_graph: subgroup degree mismatch");
  }
  for (const Perm& s : sub.generators()) {
    if (!group.contains(s)) {
      throw std::invalid_argument("coset_graph: U is not a subgroup of G");
    }
  }
  for (const Perm& e : elems) {
    if (!group.contains(e)) {
      throw std::invalid_argument("coset_graph: element not in G");
    }
  }

  std::vector<Perm> reps{Perm(group.degree())};
  auto coset_index = [&](const Perm& x) -> int {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (sub.contains(x * reps[i].inverse())) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Perm& s : group.generators()) {
      Perm c = reps[i] * s;
      if (coset_index(c) == -1) reps.push_back(std::move(c));
    }
  }
  int nverts = static_cast<int>(reps.size());

  CosetGraphResult result;
  result.vertex_count = nverts;
  for (const Perm& s : group.generators()) {
    std::vector<int> img(nverts);
    for (int i = 0; i < nverts; ++i) img[i] = coset_index(reps[i] * s);
    result.vertex_action.push_back(Perm(std::move(img)));
  }

  std::set<std::pair<int, int>> edges;
  for (const Perm& e : elems) {
    int j = coset_index(e);
    if (j == 0) continue;  // {U, U} is not an edge
    std::vector<std::pair<int, int>> todo{{0, j}};
    std::set<std::pair<int, int>> seen{{0, j}};
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      edges.insert({std::min(a, b), std::max(a, b)});
      for (const Perm& act : result.vertex_action) {
        int a2 = act[a];
        int b2 = act[b];
        auto key = std::make_pair(std::min(a2, b2), std::max(a2, b2));
        if (seen.insert(key).second) todo.push_back(key);
      }
    }
  }
  result.edges.assign(edges.begin(), edges.end());
  return result;
}

// ---------------------------------------------------------------------------
// JSON

std::string perm_group_to_json(const PermGroup& g) {
  nlohmann::ordered_json j;
  j["points"] = g.degree();
  auto gens = nlohmann::ordered_json::array();
  for (const Perm& p : g.generators()) gens.push_back(p.images());
  j["generators"] = gens;
  return j.dump();
}

PermGroup perm_group_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int n = j.at("points").get<int>();
  std::vector<Perm> gens;
  for (const auto& arr : j.at("generators")) {
    gens.push_back(Perm(arr.get<std::vector<int>>()));
  }
  return PermGroup(n, std::move(gens));
}

}  // namespace tdlc
