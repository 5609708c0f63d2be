#ifndef TDLC_PORTRAIT_HPP
#define TDLC_PORTRAIT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdlc/graph.hpp"
#include "tdlc/models.hpp"

namespace tdlc {

// Finite-depth portrait of a tree automorphism: a partial injective vertex
// map on a ball that is a graph morphism on its domain (image -1 where the
// automorphism leaves the ball).
class TreeAutomorphism {
 public:
  static TreeAutomorphism identity(const BallGraph& ball);
  // Translation by `length` along the canonical two-way line through the
  // root of a model ball (off-line subtrees follow canonically).
  static TreeAutomorphism axis_translation(const ModelRealization& R, int length);
  // Inversion across the edge from the root to its first child.
  static TreeAutomorphism edge_inversion(const ModelRealization& R);
  // Cyclic rotation of all branches around a vertex; fixes only that vertex
  // when the rotation is a full cycle of its branches.
  static TreeAutomorphism vertex_rotation(const BallGraph& ball, int vertex);
  static TreeAutomorphism from_images(std::vector<int> images, int depth);

  int degree() const { return static_cast<int>(img_.size()); }
  int image(int v) const { return img_[v]; }
  bool defined(int v) const { return img_[v] >= 0; }
  int declared_depth() const { return depth_; }

  // Right-action composition: this first, then other.
  TreeAutomorphism then(const TreeAutomorphism& other) const;
  // v . g^n, or -1 once the orbit leaves the domain.
  int apply_power(int v, int n) const;

  std::string to_json() const;
  static TreeAutomorphism from_json(const std::string& text);

 private:
  std::vector<int> img_;
  int depth_ = 0;
};

// Tits classification of a tree automorphism.
struct AutType {
  enum class Kind { Elliptic, Inversion, Translation };
  Kind kind;
  std::vector<int> fixed_vertices;           // Elliptic
  std::pair<int, int> inverted_edge{-1, -1};  // Inversion
  std::vector<int> axis_segment;             // Translation: path within ball
  int translation_length = 0;

  std::string to_string() const;
};

// Classifies the portrait, or throws with "deepen portrait" when the depth
// cannot witness the type.
AutType classify_automorphism(const TreeAutomorphism& t, const BallGraph& ball);

// Composite of two elliptics: elliptic when the fixed trees meet, otherwise
// a translation whose axis contains the connecting arc between them.
AutType product_of_elliptics(const TreeAutomorphism& g, const TreeAutomorphism& h,
                             const BallGraph& ball);

// Distance within a ball that is a tree.
int tree_distance(const BallGraph& ball, int u, int v);

}  // namespace tdlc

#endif  // TDLC_PORTRAIT_HPP
