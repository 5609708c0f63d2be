#include "tdlc/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tdlc {

Perm::Perm(int n) : images_(n) {
  std::iota(images_.begin(), images_.end(), 0);
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[x]) {
      throw std::invalid_argument("Perm: image array is not a bijection");
    }
    seen[x] = true;
  }
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int from = c[i];
      int to = c[(i + 1) % c.size()];
      if (from < 0 || from >= n || to < 0 || to >= n) {
        throw std::invalid_argument("Perm::from_cycles: point out of range");
      }
      img[from] = to;
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  Perm p;
  p.images_ = std::move(inv);
  return p;
}

Perm Perm::operator*(const Perm& other) const {
  if (degree() != other.degree()) {
    throw std::invalid_argument("Perm: degree mismatch in product");
  }
  std::vector<int> img(images_.size());
  for (int i = 0; i < degree(); ++i) img[i] = other.images_[images_[i]];
  Perm p;
  p.images_ = std::move(img);
  return p;
}

std::string Perm::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    out << '(' << i;
    seen[i] = true;
    for (int j = images_[i]; j != i; j = images_[j]) {
      out << ' ' << j;
      seen[j] = true;
    }
    out << ')';
  }
  if (!any) out << "()";
  return out.str();
}

}  // namespace tdlc
