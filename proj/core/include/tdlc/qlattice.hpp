#ifndef TDLC_QLATTICE_HPP
#define TDLC_QLATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tdlc {

// A positive rational stored as a finitely supported prime -> exponent map,
// so that products, inverses and subgroup membership are exact integer
// arithmetic. No floating point anywhere.
class PositiveRational {
 public:
  PositiveRational() = default;  // the rational 1
  static PositiveRational from_fraction(std::uint64_t p, std::uint64_t q);
  static PositiveRational from_integer(std::uint64_t n) { return from_fraction(n, 1); }

  bool is_one() const { return exponents_.empty(); }
  PositiveRational inverse() const;
  PositiveRational operator*(const PositiveRational& other) const;
  PositiveRational pow(int k) const;

  // Coprime (numerator, denominator) display pair.
  std::pair<std::uint64_t, std::uint64_t> as_fraction() const;
  // Degree cost p + q of the display pair.
  std::uint64_t cost() const;

  const std::vector<std::pair<std::uint64_t, int>>& exponents() const {
    return exponents_;
  }

  bool operator==(const PositiveRational& o) const { return exponents_ == o.exponents_; }
  bool operator!=(const PositiveRational& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  // sorted by prime, exponents nonzero
  std::vector<std::pair<std::uint64_t, int>> exponents_;
};

// A finitely generated subgroup of the positive rationals, represented as an
// integer lattice of exponent vectors over an ordered prime support, with a
// row Hermite normal form basis (unique per subgroup).
class QPlusLattice {
 public:
  QPlusLattice() = default;  // trivial subgroup {1}

  static QPlusLattice generated_by(const std::vector<PositiveRational>& gens);

  int rank() const { return static_cast<int>(basis_.size()); }
  bool is_trivial() const { return basis_.empty(); }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<std::vector<long long>>& basis() const { return basis_; }
  std::vector<PositiveRational> basis_rationals() const;

  bool contains(const PositiveRational& r) const;
  // Integral coordinates of r with respect to the basis rows, if r lies in
  // the lattice.
  std::optional<std::vector<long long>> coordinates(const PositiveRational& r) const;

  bool operator==(const QPlusLattice& o) const {
    return primes_ == o.primes_ && basis_ == o.basis_;
  }
  bool operator!=(const QPlusLattice& o) const { return !(*this == o); }

  // "prime support + basis rows" printout; rationals printed as "p/q".
  std::string to_string() const;

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<long long>> basis_;
};

// Least value of sum(p_i + q_i) over multisets of fractions p_i/q_i that
// generate exactly the subgroup H, found by cost-ordered branch and bound
// over reduced fractions in H. The search is complete below the incumbent,
// so `value` is the exact minimum whenever `exact` is set. A trivial H
// yields {0, true}: the degree bound then carries no information.
struct MinAResult {
  std::uint64_t value = 0;
  bool exact = false;
  std::vector<PositiveRational> witness;
};
MinAResult md_lower_bound_modular(const QPlusLattice& H,
                                  std::optional<std::uint64_t> cost_cap = {});

}  // namespace tdlc

#endif  // TDLC_QLATTICE_HPP
