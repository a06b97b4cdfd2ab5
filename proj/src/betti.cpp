#include "koszulkit/betti.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszulkit {

void BettiTable::add(int i, int j, long long v) {
  if (v == 0) return;
  long long& e = b_[{i, j}];
  e += v;
  if (e == 0) b_.erase({i, j});
}

long long BettiTable::get(int i, int j) const {
  auto it = b_.find({i, j});
  return it == b_.end() ? 0 : it->second;
}

long long BettiTable::total(int i) const {
  long long s = 0;
  for (auto& [k, v] : b_)
    if (k.first == i) s += v;
  return s;
}

bool BettiTable::empty() const { return b_.empty(); }

int BettiTable::max_index() const {
  int m = -1;
  for (auto& [k, v] : b_) m = std::max(m, k.first);
  return m;
}

int BettiTable::regularity() const {
  if (b_.empty()) throw std::invalid_argument("regularity of an empty Betti table");
  int r = 0;
  bool first = true;
  for (auto& [k, v] : b_) {
    int row = k.second - k.first;
    if (first || row > r) r = row;
    first = false;
  }
  return r;
}

std::vector<long long> BettiTable::alternating_sum() const {
  std::vector<long long> p;
  for (auto& [k, v] : b_) {
    if (k.second < 0) throw std::invalid_argument("negative internal degree");
    if (static_cast<int>(p.size()) <= k.second) p.resize(k.second + 1, 0);
    p[k.second] += (k.first % 2 ? -v : v);
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

std::vector<std::vector<long long>> BettiTable::rows() const {
  if (b_.empty()) return {};
  int maxi = max_index();
  int minrow = 0, maxrow = 0;
  bool first = true;
  for (auto& [k, v] : b_) {
    int row = k.second - k.first;
    if (first) minrow = maxrow = row;
    minrow = std::min(minrow, row);
    maxrow = std::max(maxrow, row);
    first = false;
  }
  minrow = std::min(minrow, 0);
  std::vector<std::vector<long long>> out;
  for (int r = 0; r <= maxrow; ++r) {
    std::vector<long long> row(maxi + 1, 0);
    for (int i = 0; i <= maxi; ++i) row[i] = at_row(i, r);
    out.push_back(row);
  }
  return out;
}

std::string BettiTable::to_string() const {
  auto rs = rows();
  if (rs.empty()) return "(empty)\n";
  const int ncol = static_cast<int>(rs[0].size());
  std::vector<std::size_t> width(ncol, 2);
  for (int i = 0; i < ncol; ++i) {
    width[i] = std::max(width[i], std::to_string(i).size());
    for (auto& r : rs) width[i] = std::max(width[i], std::to_string(r[i]).size());
  }
  std::size_t lw = std::to_string(rs.size() - 1).size() + 1;
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
  std::string out = std::string(lw, ' ');
  for (int i = 0; i < ncol; ++i) out += " " + pad(std::to_string(i), width[i]);
  out += "\n";
  for (std::size_t r = 0; r < rs.size(); ++r) {
    out += pad(std::to_string(r) + ":", lw);
    for (int i = 0; i < ncol; ++i)
      out += " " + pad(rs[r][i] ? std::to_string(rs[r][i]) : "--", width[i]);
    out += "\n";
  }
  return out;
}

bool BettiTable::operator==(const BettiTable& o) const { return b_ == o.b_; }

BettiTable BettiTable::from_rows(const std::vector<std::vector<long long>>& rows) {
  BettiTable t;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i)
      t.add(static_cast<int>(i), static_cast<int>(i + r), rows[r][i]);
  return t;
}

}  // namespace koszulkit
