#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace germscan {

/// Exponent vector of a monomial in n variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  explicit MultiIndex(std::vector<unsigned> entries) : e_(std::move(entries)) {}
  MultiIndex(std::initializer_list<unsigned> entries) : e_(entries) {}

  static MultiIndex unit(std::size_t n, std::size_t j) {
    MultiIndex m(n);
    m.e_.at(j) = 1;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  unsigned degree() const;
  bool is_zero() const { return degree() == 0; }

  unsigned operator[](std::size_t j) const { return e_[j]; }
  unsigned& operator[](std::size_t j) { return e_[j]; }
  const std::vector<unsigned>& entries() const { return e_; }

  /// Componentwise a <= b, i.e. the monomial z^a divides z^b.
  bool divides(const MultiIndex& other) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> e_;
};

std::string to_string(const MultiIndex& m);

/// All multi-indices of size n with total degree exactly k, in lexicographic order.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned k);

}  // namespace germscan
