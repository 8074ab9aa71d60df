#include "germscan/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "germscan/errors.hpp"

namespace germscan {

unsigned MultiIndex::degree() const { return std::accumulate(e_.begin(), e_.end(), 0U); }

bool MultiIndex::divides(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("multi-indices of different length");
  for (std::size_t j = 0; j < e_.size(); ++j) {
    if (e_[j] > other.e_[j]) return false;
  }
  return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DimensionMismatch("multi-indices of different length");
  MultiIndex out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out.e_[j] = a.e_[j] + b.e_[j];
  return out;
}

std::string to_string(const MultiIndex& m) {
  std::string s = "(";
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(m[j]);
  }
  return s + ")";
}

namespace {

void fill(std::size_t pos, unsigned remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned a = remaining + 1; a-- > 0;) {
    cur[pos] = a;
    fill(pos + 1, remaining - a, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned k) {
  std::vector<MultiIndex> out;
  if (n == 0) return out;
  MultiIndex cur(n);
  fill(0, k, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace germscan
