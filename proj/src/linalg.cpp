#include "koszulkit/linalg.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace koszulkit {

SparseRow scale_row(const SparseRow& r, const FieldElement& c) {
  SparseRow out;
  if (c.is_zero()) return out;
  out.reserve(r.size());
  for (auto& [k, v] : r) out.push_back({k, v * c});
  return out;
}

SparseRow add_rows(const SparseRow& a, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      FieldElement s = a[i].second + b[j].second;
      if (!s.is_zero()) out.push_back({a[i].first, s});
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

// Dense accumulator over one field, indexed by column.
struct Acc {
  const Field& f;
  std::vector<std::uint64_t> mod;
  std::vector<mpq_class> q;
  std::vector<int> touched;
  std::vector<char> live;

  explicit Acc(const Field& fld) : f(fld) {}

  void ensure(int n) {
    if (static_cast<int>(live.size()) >= n) return;
    live.resize(n, 0);
    if (f.is_rational())
      q.resize(n);
    else
      mod.resize(n, 0);
  }
  void load(const SparseRow& r) {
    for (auto& [c, v] : r) {
      ensure(c + 1);
      touch(c);
      if (f.is_rational())
        q[c] = v.rational();
      else
        mod[c] = v.residue();
    }
  }
  void touch(int c) {
    if (!live[c]) {
      live[c] = 1;
      touched.push_back(c);
    }
  }
  bool nonzero(int c) const {
    if (c >= static_cast<int>(live.size()) || !live[c]) return false;
    return f.is_rational() ? q[c] != 0 : mod[c] != 0;
  }
  FieldElement get(int c) const {
    if (f.is_rational()) return FieldElement(f, q[c]);
    return FieldElement(f, static_cast<long>(mod[c]));
  }
  // acc -= s * row
  void axpy(const FieldElement& s, const SparseRow& row) {
    if (f.is_rational()) {
      const mpq_class& sq = s.rational();
      for (auto& [c, v] : row) {
        ensure(c + 1);
        touch(c);
        q[c] -= sq * v.rational();
      }
    } else {
      const std::uint64_t p = f.characteristic();
      const std::uint64_t ns = (p - s.residue()) % p;
      for (auto& [c, v] : row) {
        ensure(c + 1);
        touch(c);
        mod[c] = (mod[c] + ns * v.residue()) % p;
      }
    }
  }
  SparseRow take() {
    std::sort(touched.begin(), touched.end());
    SparseRow out;
    for (int c : touched) {
      if (nonzero(c)) out.push_back({c, get(c)});
      live[c] = 0;
      if (f.is_rational())
        q[c] = 0;
      else
        mod[c] = 0;
    }
    touched.clear();
    return out;
  }
};

// Dense accumulator over F_p with Barrett reduction.
struct ModAcc {
  std::uint64_t p, m;
  std::vector<std::uint32_t> v;
  std::vector<int> touched;
  std::vector<char> live;

  explicit ModAcc(std::uint32_t prime) : p(prime), m(~std::uint64_t{0} / prime) {}

  std::uint32_t red(std::uint64_t a) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * m) >> 64);
    std::uint64_t r = a - q * p;
    while (r >= p) r -= p;
    return static_cast<std::uint32_t>(r);
  }
  void ensure(int n) {
    if (static_cast<int>(live.size()) >= n) return;
    std::size_t sz = std::max<std::size_t>(n, 2 * live.size());
    live.resize(sz, 0);
    v.resize(sz, 0);
  }
  void touch(int c) {
    if (!live[c]) {
      live[c] = 1;
      touched.push_back(c);
    }
  }
  template <class Row>
  void load(const Row& r) {
    if (!r.empty()) ensure(r.back().first + 1);
    for (auto& [c, x] : r) {
      touch(c);
      v[c] = x;
    }
  }
  // acc -= s * row
  template <class Row>
  void axpy(std::uint32_t s, const Row& row) {
    if (!row.empty()) ensure(row.back().first + 1);
    const std::uint64_t ns = (p - s) % p;
    for (auto& [c, x] : row) {
      touch(c);
      v[c] = red(v[c] + ns * x);
    }
  }
  std::vector<std::pair<int, std::uint32_t>> take() {
    std::sort(touched.begin(), touched.end());
    std::vector<std::pair<int, std::uint32_t>> out;
    for (int c : touched) {
      if (v[c]) out.push_back({c, v[c]});
      live[c] = 0;
      v[c] = 0;
    }
    touched.clear();
    return out;
  }
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

}  // namespace

Echelon::ModRow Echelon::to_mod(const SparseRow& r) const {
  ModRow out;
  out.reserve(r.size());
  for (auto& [c, x] : r) out.push_back({c, x.residue()});
  return out;
}

SparseRow Echelon::from_mod(const ModRow& r) const {
  SparseRow out;
  out.reserve(r.size());
  for (auto& [c, x] : r) out.push_back({c, FieldElement(field_, static_cast<long>(x))});
  return out;
}

std::vector<SparseRow> Echelon::rows() const {
  if (!modp_) return rows_;
  std::vector<SparseRow> out;
  out.reserve(mrows_.size());
  for (auto& r : mrows_) out.push_back(from_mod(r));
  return out;
}

void Echelon::reduce_mod(const ModRow& r, const ModRow* combo_in, ModRow& rem, ModRow& combo) const {
  ModAcc acc(field_.characteristic()), cacc(field_.characteristic());
  acc.load(r);
  if (track_ && combo_in) cacc.load(*combo_in);
  // pivot rows only add columns to the right, so one pass over the pivot columns suffices
  const int end = static_cast<int>(pivot_row_.size());
  for (int c = r.empty() ? end : r.front().first; c < end; ++c) {
    if (pivot_row_[c] < 0 || c >= static_cast<int>(acc.v.size()) || !acc.v[c]) continue;
    const int k = pivot_row_[c];
    const std::uint32_t s = acc.v[c];
    acc.axpy(s, mrows_[k]);
    if (track_) cacc.axpy(s, mcombos_[k]);
  }
  rem = acc.take();
  if (track_) combo = cacc.take();
}

Echelon::Result Echelon::reduce_impl(const SparseRow& r, const SparseRow* combo_in) const {
  if (modp_) {
    ModRow rem, combo, cin;
    if (combo_in) cin = to_mod(*combo_in);
    reduce_mod(to_mod(r), combo_in ? &cin : nullptr, rem, combo);
    return {from_mod(rem), from_mod(combo)};
  }
  Acc acc(field_), cacc(field_);
  acc.load(r);
  if (track_ && combo_in) cacc.load(*combo_in);
  // pivot rows only add columns to the right, so one pass over the pivot columns suffices
  const int end = static_cast<int>(pivot_row_.size());
  for (int c = r.empty() ? end : r.front().first; c < end; ++c) {
    if (pivot_row_[c] < 0 || !acc.nonzero(c)) continue;
    const int k = pivot_row_[c];
    const SparseRow& row = rows_[k];
    FieldElement s = acc.get(c) / row.front().second;
    acc.axpy(s, row);
    if (track_) cacc.axpy(s, combos_[k]);
  }
  Result res;
  res.remainder = acc.take();
  if (track_) res.combo = cacc.take();
  return res;
}

Echelon::Result Echelon::reduce(const SparseRow& r) const {
  Result res = reduce_impl(r, nullptr);
  if (track_) res.combo = scale_row(res.combo, FieldElement(field_, -1));
  return res;
}

bool Echelon::insert(const SparseRow& r) {
  const int tag = inserted_++;
  if (modp_) {
    ModRow self, rem, combo;
    if (track_) self.push_back({tag, 1});
    reduce_mod(to_mod(r), &self, rem, combo);
    if (rem.empty()) {
      relation_ = from_mod(combo);
      return false;
    }
    const std::uint64_t p = field_.characteristic();
    const std::uint64_t inv = inverse_mod(rem.front().second, field_.characteristic());
    for (auto& [c, x] : rem) x = static_cast<std::uint32_t>(x * inv % p);
    for (auto& [c, x] : combo) x = static_cast<std::uint32_t>(x * inv % p);
    int piv = rem.front().first;
    if (static_cast<int>(pivot_row_.size()) <= piv) pivot_row_.resize(piv + 1, -1);
    pivot_row_[piv] = static_cast<int>(mrows_.size());
    mrows_.push_back(std::move(rem));
    if (track_) mcombos_.push_back(std::move(combo));
    relation_.clear();
    return true;
  }
  SparseRow self;
  if (track_) self.push_back({tag, FieldElement(field_, 1)});
  Result res = reduce_impl(r, &self);
  if (res.remainder.empty()) {
    relation_ = std::move(res.combo);
    return false;
  }
  int piv = res.remainder.front().first;
  if (static_cast<int>(pivot_row_.size()) <= piv) pivot_row_.resize(piv + 1, -1);
  pivot_row_[piv] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(res.remainder));
  if (track_) combos_.push_back(std::move(res.combo));
  relation_.clear();
  return true;
}

std::vector<SparseRow> Echelon::reduced_rows() const {
  const std::vector<SparseRow> stored = rows();
  std::vector<int> order(stored.size());
  for (std::size_t k = 0; k < stored.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return stored[a].front().first < stored[b].front().first; });
  std::vector<SparseRow> out;
  Echelon back(field_);
  // reduce from the last pivot backwards
  std::vector<SparseRow> red(stored.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const SparseRow& row = stored[*it];
    SparseRow head{row.front()};
    SparseRow tail(row.begin() + 1, row.end());
    Result t = back.reduce_impl(tail, nullptr);
    SparseRow full = add_rows(head, t.remainder);
    full = scale_row(full, full.front().second.inverse());
    red[*it] = full;
    back.insert(full);
  }
  for (int k : order) out.push_back(red[k]);
  return out;
}

std::vector<SparseRow> kernel_of_columns(const Field& f, const std::vector<SparseRow>& cols) {
  Echelon e(f, true);
  std::vector<SparseRow> ker;
  for (auto& c : cols) {
    if (!e.insert(c)) {
      // c - sum combo = 0  => relation vector with +1 at c's index
      SparseRow rel = e.last_relation();
      ker.push_back(std::move(rel));
    }
  }
  return ker;
}

std::optional<SparseRow> solve_columns(const Field& f, const std::vector<SparseRow>& cols,
                                       const SparseRow& target) {
  Echelon e(f, true);
  for (auto& c : cols) e.insert(c);
  Echelon::Result r = e.reduce(target);
  if (!r.remainder.empty()) return std::nullopt;
  // remainder = target - sum combo * col = 0
  return r.combo;
}

}  // namespace koszulkit
