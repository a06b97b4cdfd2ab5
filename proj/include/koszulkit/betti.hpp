#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace koszulkit {

// beta_{i,j}: homological index i, internal degree j.
class BettiTable {
 public:
  void add(int i, int j, long long v = 1);
  long long get(int i, int j) const;
  // beta_{i,i+row}
  long long at_row(int i, int row) const { return get(i, i + row); }
  long long total(int i) const;
  bool empty() const;
  int max_index() const;
  int regularity() const;  // throws on an empty table
  // sum_i (-1)^i sum_j beta_{i,j} t^j, low degree first
  std::vector<long long> alternating_sum() const;
  const std::map<std::pair<int, int>, long long>& entries() const { return b_; }
  // rows are j - i, columns i, "--" for zero
  std::string to_string() const;
  // rows as lists of column values starting at column 0
  std::vector<std::vector<long long>> rows() const;

  bool operator==(const BettiTable& o) const;
  bool operator!=(const BettiTable& o) const { return !(*this == o); }

  // from rows given in display form: rows[r][i] = beta_{i,i+r}
  static BettiTable from_rows(const std::vector<std::vector<long long>>& rows);

 private:
  std::map<std::pair<int, int>, long long> b_;
};

}  // namespace koszulkit
