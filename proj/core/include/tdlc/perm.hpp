#ifndef TDLC_PERM_HPP
#define TDLC_PERM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tdlc {

// A permutation of {0, ..., n-1}, stored as its image array.
// Composition is left-to-right: (p * q)[i] = q[p[i]], matching the
// right-action convention used throughout (point.apply(g).apply(h)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(int n);                       // identity on n points
  explicit Perm(std::vector<int> images);     // validates bijectivity

  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  int apply(int i) const { return images_[i]; }

  bool is_identity() const;
  Perm inverse() const;
  Perm operator*(const Perm& other) const;    // this first, then other

  bool operator==(const Perm& other) const { return images_ == other.images_; }
  bool operator!=(const Perm& other) const { return !(*this == other); }
  bool operator<(const Perm& other) const { return images_ < other.images_; }

  const std::vector<int>& images() const { return images_; }
  std::string to_cycle_string() const;

 private:
  std::vector<int> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace tdlc

#endif  // TDLC_PERM_HPP
