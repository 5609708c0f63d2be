#ifndef TDLC_MODELS_HPP
#define TDLC_MODELS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdlc/graph.hpp"
#include "tdlc/perm_group.hpp"

namespace tdlc {

enum class ModelFamily {
  FiniteOracle,
  FullAut,        // Aut(T_d) on the d-regular tree
  AutPlus,        // index-2 subgroup of Aut(T_d), on the line graph of T_d
  EndStab,        // end stabilizer of T_{d,d'}, on its derived tree
  BMUniversal,    // universal group with prescribed local action F
  ProductWithFinite,
  DirectedTree,   // regular digraph tree, out-degree p / in-degree q
  RedBlueTree,    // two-coloured directed tree: p red / q blue out, one in each
  CartesianTrees  // Cartesian product of in-degree-1 directed trees
};

std::string family_name(ModelFamily f);

// A group model realized on a finite ball: the canonical Cayley--Abels ball,
// the root stabilizer as an explicit permutation group on ball vertices
// (whose orbits equal the true suborbits at this radius), the orbit table,
// and structural data for arc classification.
struct ModelRealization {
  ModelFamily family = ModelFamily::FullAut;
  BallGraph ball;
  PermGroup stabilizer;

  std::vector<int> orbit_of;              // vertex -> orbit id under stabilizer
  std::vector<std::uint64_t> orbit_sizes;  // orbit id -> size

  // Orbits of ordered adjacent vertex pairs (traversal classes). Every
  // adjacent ordered pair of the ball is assigned a class.
  struct ArcClass {
    std::string name;
    int rep_target;      // neighbour of root reached by this class
    int reverse_target;  // root . g^{-1} for some g taking root to rep_target
  };
  std::vector<ArcClass> arc_classes;

  // Rooted tree structure (empty for FiniteOracle).
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> child_colour;  // BMUniversal: edge colours
  std::vector<std::vector<int>> child_block;   // EndStab: intermediate blocks
  std::vector<int> tree_up;                    // EndStab: step toward the end

  int pair_class(int u, int v) const;  // class of the ordered pair (u, v)
  std::uint64_t orbit_size_of_vertex(int v) const { return orbit_sizes[orbit_of[v]]; }

  std::unordered_map<long long, int> pair_class_map;

  bool has_group = false;  // structure-only realizations omit the stabilizer

  // ProductWithFinite bookkeeping: vertex = base_vertex * fibre_size + slot.
  int fibre_size = 1;
  int product_base_vertices = 0;
  std::vector<Perm> normal_factor_gens;  // action of the compact normal factor
};

class GroupModel {
 public:
  static GroupModel full_aut(int d);
  static GroupModel aut_plus(int d);
  static GroupModel end_stab(int d, int dprime);
  static GroupModel bm_universal(const PermGroup& local_group);
  static GroupModel finite_oracle(const PermGroup& group, const FiniteGraph& graph);
  static GroupModel product_with_finite(const GroupModel& base, const PermGroup& finite);
  static GroupModel directed_tree(int out_degree, int in_degree);
  static GroupModel red_blue_tree(int red_out, int blue_out);
  static GroupModel cartesian_trees(const std::vector<int>& out_degrees);

  ModelFamily family() const { return family_; }
  std::string name() const;

  // Degree of the canonical Cayley--Abels graph.
  int canonical_degree() const;

  // Canonical Cayley--Abels ball of the given radius, with the stabilizer
  // realization. Realizations are cached per radius.
  std::shared_ptr<const ModelRealization> realize(int radius) const;
  // Ball and arc classification only, no stabilizer; this is the form large
  // balls are labelled through (orbit data comes from a smaller radius).
  std::shared_ptr<const ModelRealization> realize_structure(int radius) const;
  BallGraph canonical_cayley_abels(int radius) const {
    return realize_structure(radius)->ball;
  }

  // The local action on the neighbours of a vertex, with canonical point
  // numbering (one representative of the conjugacy class).
  PermGroup local_action() const;

  PermGroup stabilizer_in_ball(int radius) const { return realize(radius)->stabilizer; }

  // Exact |beta G_alpha| within the given radius. For tree families the pair
  // is transferred to the root along the model's symmetries; finite oracles
  // are computed directly.
  std::uint64_t suborbit_size(int radius, int alpha, int beta) const;

  // Parameters (meaning depends on the family).
  int param1() const { return p1_; }
  int param2() const { return p2_; }
  const std::vector<int>& out_degrees() const { return degrees_; }
  const PermGroup* finite_group() const { return fgroup_ ? &*fgroup_ : nullptr; }
  const GroupModel* base_model() const { return base_.get(); }
  const FiniteGraph* oracle_graph() const {
    return oracle_graph_ ? &*oracle_graph_ : nullptr;
  }

 private:
  GroupModel() = default;

  std::shared_ptr<const ModelRealization> build_realization(int radius,
                                                            bool with_group) const;

  ModelFamily family_ = ModelFamily::FullAut;
  int p1_ = 0, p2_ = 0;
  std::vector<int> degrees_;
  std::optional<PermGroup> fgroup_;
  std::optional<FiniteGraph> oracle_graph_;
  std::shared_ptr<GroupModel> base_;

  struct Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const ModelRealization>> full;
    std::map<int, std::shared_ptr<const ModelRealization>> structure;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Group-spec JSON: {"family": "...", parameters...}. See the README for the
// per-family fields.
GroupModel model_from_json(const std::string& text);
std::string model_to_json(const GroupModel& m);

}  // namespace tdlc

#endif  // TDLC_MODELS_HPP
