#include "tdlc/qlattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tdlc {

namespace {

void factorize_into(std::uint64_t n, int sign,
                    std::map<std::uint64_t, int>& exps) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      exps[d] += sign;
      n /= d;
    }
  }
  if (n > 1) exps[n] += sign;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > UINT64_MAX / b) {
    throw std::overflow_error("PositiveRational: fraction too large");
  }
  return a * b;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

PositiveRational PositiveRational::from_fraction(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) {
    throw std::invalid_argument("PositiveRational: p, q must be >= 1");
  }
  std::map<std::uint64_t, int> exps;
  factorize_into(p, +1, exps);
  factorize_into(q, -1, exps);
  PositiveRational r;
  for (auto [prime, e] : exps) {
    if (e != 0) r.exponents_.push_back({prime, e});
  }
  return r;
}

PositiveRational PositiveRational::inverse() const {
  PositiveRational r;
  for (auto [p, e] : exponents_) r.exponents_.push_back({p, -e});
  return r;
}

PositiveRational PositiveRational::operator*(const PositiveRational& other) const {
  std::map<std::uint64_t, int> exps;
  for (auto [p, e] : exponents_) exps[p] += e;
  for (auto [p, e] : other.exponents_) exps[p] += e;
  PositiveRational r;
  for (auto [p, e] : exps) {
    if (e != 0) r.exponents_.push_back({p, e});
  }
  return r;
}

PositiveRational PositiveRational::pow(int k) const {
  PositiveRational r;
  if (k == 0) return r;
  for (auto [p, e] : exponents_) r.exponents_.push_back({p, e * k});
  return r;
}

std::pair<std::uint64_t, std::uint64_t> PositiveRational::as_fraction() const {
  std::uint64_t num = 1, den = 1;
  for (auto [p, e] : exponents_) {
    if (e > 0) {
      num = checked_mul(num, ipow(p, e));
    } else {
      den = checked_mul(den, ipow(p, -e));
    }
  }
  return {num, den};
}

std::uint64_t PositiveRational::cost() const {
  auto [p, q] = as_fraction();
  return p + q;
}

std::string PositiveRational::to_string() const {
  auto [p, q] = as_fraction();
  std::ostringstream out;
  out << p;
  if (q != 1) out << '/' << q;
  return out.str();
}

// ---------------------------------------------------------------------------
// Hermite normal form over the integers (row lattice, canonical form)

namespace {

// In-place row HNF: pivots positive, entries above a pivot reduced into
// [0, pivot). Zero rows are removed. Columns are indexed by the support.
void hermite_normal_form(std::vector<std::vector<long long>>& rows, int cols) {
  int pivot_row = 0;
  for (int c = 0; c < cols && pivot_row < static_cast<int>(rows.size()); ++c) {
    // Euclid on the column below pivot_row.
    while (true) {
      int best = -1;
      for (int r = pivot_row; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][c] != 0 &&
            (best == -1 || std::llabs(rows[r][c]) < std::llabs(rows[best][c]))) {
          best = r;
        }
      }
      if (best == -1) break;
      std::swap(rows[pivot_row], rows[best]);
      bool cleared = true;
      for (int r = pivot_row + 1; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][c] == 0) continue;
        long long q = rows[r][c] / rows[pivot_row][c];
        for (int j = 0; j < cols; ++j) rows[r][j] -= q * rows[pivot_row][j];
        if (rows[r][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (rows[pivot_row][c] == 0) continue;
    if (rows[pivot_row][c] < 0) {
      for (int j = 0; j < cols; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
    }
    for (int r = 0; r < pivot_row; ++r) {
      long long q = rows[r][c] / rows[pivot_row][c];
      if (rows[r][c] % rows[pivot_row][c] < 0) q -= 1;  // floor division
      if (q != 0) {
        for (int j = 0; j < cols; ++j) rows[r][j] -= q * rows[pivot_row][j];
      }
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
}

}  // namespace

QPlusLattice QPlusLattice::generated_by(const std::vector<PositiveRational>& gens) {
  std::vector<std::uint64_t> primes;
  for (const auto& g : gens) {
    for (auto [p, e] : g.exponents()) {
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
        primes.push_back(p);
      }
    }
  }
  std::sort(primes.begin(), primes.end());
  int cols = static_cast<int>(primes.size());

  std::vector<std::vector<long long>> rows;
  for (const auto& g : gens) {
    if (g.is_one()) continue;
    std::vector<long long> row(cols, 0);
    for (auto [p, e] : g.exponents()) {
      int c = static_cast<int>(
          std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
      row[c] = e;
    }
    rows.push_back(std::move(row));
  }
  hermite_normal_form(rows, cols);

  // Drop primes whose column is identically zero, keeping the form canonical
  // for the subgroup rather than for the particular generators.
  std::vector<int> keep;
  for (int c = 0; c < cols; ++c) {
    for (const auto& row : rows) {
      if (row[c] != 0) {
        keep.push_back(c);
        break;
      }
    }
  }
  QPlusLattice lat;
  for (int c : keep) lat.primes_.push_back(primes[c]);
  for (const auto& row : rows) {
    std::vector<long long> r;
    for (int c : keep) r.push_back(row[c]);
    lat.basis_.push_back(std::move(r));
  }
  return lat;
}

std::vector<PositiveRational> QPlusLattice::basis_rationals() const {
  std::vector<PositiveRational> out;
  for (const auto& row : basis_) {
    PositiveRational r;
    for (std::size_t c = 0; c < primes_.size(); ++c) {
      if (row[c] != 0) {
        r = r * PositiveRational::from_integer(primes_[c]).pow(static_cast<int>(row[c]));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<std::vector<long long>> QPlusLattice::coordinates(
    const PositiveRational& r) const {
  std::vector<long long> v(primes_.size(), 0);
  for (auto [p, e] : r.exponents()) {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return std::nullopt;
    v[it - primes_.begin()] = e;
  }
  std::vector<long long> coords;
  std::vector<long long> res = v;
  for (const auto& row : basis_) {
    int pivot_col = -1;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) {
        pivot_col = static_cast<int>(c);
        break;
      }
    }
    if (pivot_col == -1) continue;
    long long q = res[pivot_col] / row[pivot_col];
    if (res[pivot_col] % row[pivot_col] != 0) return std::nullopt;
    for (std::size_t c = 0; c < row.size(); ++c) res[c] -= q * row[c];
    coords.push_back(q);
  }
  for (long long x : res) {
    if (x != 0) return std::nullopt;
  }
  return coords;
}

bool QPlusLattice::contains(const PositiveRational& r) const {
  return coordinates(r).has_value();
}

std::string QPlusLattice::to_string() const {
  std::ostringstream out;
  out << "primes [";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) out << ' ';
    out << primes_[i];
  }
  out << "] basis <";
  auto rats = basis_rationals();
  for (std::size_t i = 0; i < rats.size(); ++i) {
    if (i) out << ", ";
    out << rats[i].to_string();
  }
  out << '>';
  return out.str();
}

// ---------------------------------------------------------------------------
// min(A) search

namespace {

// All nonzero elements of H with cost at most `cap`, sorted by cost.
std::vector<PositiveRational> lattice_elements_up_to_cost(const QPlusLattice& H,
                                                          std::uint64_t cap) {
  const auto& primes = H.primes();
  std::vector<PositiveRational> out;
  std::vector<int> exps(primes.size(), 0);
  // Enumerate exponent vectors whose numerator and denominator both stay
  // within cap, then keep the lattice members.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t num,
                 std::uint64_t den) -> void {
    if (num + den > cap) return;
    if (i == primes.size()) {
      PositiveRational r;
      for (std::size_t j = 0; j < primes.size(); ++j) {
        if (exps[j] != 0) {
          r = r * PositiveRational::from_integer(primes[j]).pow(exps[j]);
        }
      }
      if (!r.is_one() && r.cost() <= cap && H.contains(r)) out.push_back(r);
      return;
    }
    std::uint64_t p = primes[i];
    exps[i] = 0;
    self(self, i + 1, num, den);
    std::uint64_t pw = 1;
    for (int e = 1;; ++e) {
      if (pw > cap / p) break;
      pw *= p;
      if (num * pw + den > cap) break;
      exps[i] = e;
      self(self, i + 1, num * pw, den);
    }
    pw = 1;
    for (int e = 1;; ++e) {
      if (pw > cap / p) break;
      pw *= p;
      if (num + den * pw > cap) break;
      exps[i] = -e;
      self(self, i + 1, num, den * pw);
    }
    exps[i] = 0;
  };
  rec(rec, 0, 1, 1);
  std::stable_sort(out.begin(), out.end(),
                   [](const PositiveRational& a, const PositiveRational& b) {
                     return a.cost() < b.cost();
                   });
  return out;
}

}  // namespace

MinAResult md_lower_bound_modular(const QPlusLattice& H,
                                  std::optional<std::uint64_t> cost_cap) {
  if (H.is_trivial()) return {0, true, {}};

  std::uint64_t defining_cost = 0;
  for (const auto& r : H.basis_rationals()) defining_cost += r.cost();
  std::uint64_t cap = std::min(cost_cap.value_or(defining_cost), defining_cost);

  auto candidates = lattice_elements_up_to_cost(H, cap);

  std::uint64_t best = UINT64_MAX;
  std::vector<PositiveRational> best_set;
  std::vector<PositiveRational> current;

  auto search = [&](auto&& self, std::size_t start, std::uint64_t cost) -> void {
    if (cost >= best) return;
    QPlusLattice sub = QPlusLattice::generated_by(current);
    if (sub == H) {
      best = cost;
      best_set = current;
      return;
    }
    int deficit = std::max(1, H.rank() - sub.rank());
    for (std::size_t i = start; i < candidates.size(); ++i) {
      std::uint64_t c = candidates[i].cost();
      if (cost + static_cast<std::uint64_t>(deficit) * c >= best) break;
      if (sub.contains(candidates[i])) continue;  // adds nothing
      current.push_back(candidates[i]);
      self(self, i + 1, cost + c);
      current.pop_back();
    }
  };
  search(search, 0, 0);

  if (best == UINT64_MAX) {
    // Nothing generates H within the cap; report the cap with the flag unset.
    return {cap, false, {}};
  }
  return {best, true, best_set};
}

}  // namespace tdlc
